#include "remlab/parallel.hpp"

#include <omp.h>

namespace remlab::detail {

void run_chunks(std::int64_t nchunks, const ParallelPlan& plan,
                void* ctx, void (*body)(void*, std::int64_t)) {
  if (plan.serial || nchunks == 1) {
    for (std::int64_t c = 0; c < nchunks; ++c) body(ctx, c);
    return;
  }
  if (plan.workers > 0) {
#pragma omp parallel for schedule(dynamic) num_threads(plan.workers)
    for (std::int64_t c = 0; c < nchunks; ++c) body(ctx, c);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < nchunks; ++c) body(ctx, c);
  }
}

}  // namespace remlab::detail
