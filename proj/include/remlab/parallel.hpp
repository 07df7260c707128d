#pragma once

#include <cstdint>
#include <vector>

namespace remlab {

// Execution plan for the data-parallel kernels. Work is split into fixed
// chunks and chunk partials are combined in index order, so the result is
// bit-identical for any worker count and for the serial reference path.
struct ParallelPlan {
  int workers = 0;           // 0 = OpenMP default
  std::int64_t chunk = 256;  // indices per chunk; part of the reproducibility contract
  bool serial = false;       // serial reference path (same chunking, no threads)
};

namespace detail {
void run_chunks(std::int64_t nchunks, const ParallelPlan& plan,
                void* ctx, void (*body)(void*, std::int64_t));
}

// Applies fn(chunk_begin, chunk_end, chunk_index) over [0, n) and lets the
// caller own per-chunk storage. fn must only write to its chunk's slot.
template <class Fn>
void for_chunks(std::int64_t n, const ParallelPlan& plan, Fn&& fn) {
  if (n <= 0) return;
  const std::int64_t chunk = plan.chunk > 0 ? plan.chunk : 256;
  const std::int64_t nchunks = (n + chunk - 1) / chunk;
  struct Ctx {
    Fn* fn;
    std::int64_t n, chunk;
  } ctx{&fn, n, chunk};
  detail::run_chunks(nchunks, plan, &ctx, [](void* p, std::int64_t c) {
    auto* x = static_cast<Ctx*>(p);
    const std::int64_t lo = c * x->chunk;
    const std::int64_t hi = lo + x->chunk < x->n ? lo + x->chunk : x->n;
    (*x->fn)(lo, hi, c);
  });
}

// Ordered-reduction sum of fn(i) over [0, n).
template <class Fn>
double parallel_sum(std::int64_t n, const ParallelPlan& plan, Fn&& fn) {
  if (n <= 0) return 0.0;
  const std::int64_t chunk = plan.chunk > 0 ? plan.chunk : 256;
  const std::int64_t nchunks = (n + chunk - 1) / chunk;
  std::vector<double> partial(static_cast<std::size_t>(nchunks), 0.0);
  for_chunks(n, plan, [&](std::int64_t lo, std::int64_t hi, std::int64_t c) {
    double s = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) s += fn(i);
    partial[static_cast<std::size_t>(c)] = s;
  });
  double total = 0.0;
  for (double p : partial) total += p;  // fixed order
  return total;
}

// Ordered-reduction count of pred(i) over [0, n).
template <class Pred>
std::int64_t parallel_count(std::int64_t n, const ParallelPlan& plan, Pred&& pred) {
  if (n <= 0) return 0;
  const std::int64_t chunk = plan.chunk > 0 ? plan.chunk : 256;
  const std::int64_t nchunks = (n + chunk - 1) / chunk;
  std::vector<std::int64_t> partial(static_cast<std::size_t>(nchunks), 0);
  for_chunks(n, plan, [&](std::int64_t lo, std::int64_t hi, std::int64_t c) {
    std::int64_t s = 0;
    for (std::int64_t i = lo; i < hi; ++i) s += pred(i) ? 1 : 0;
    partial[static_cast<std::size_t>(c)] = s;
  });
  std::int64_t total = 0;
  for (auto p : partial) total += p;
  return total;
}

}  // namespace remlab
