#pragma once

#include <functional>
#include <span>

namespace fisherflow {

/// Resolves a worker-count request: 0 means "all hardware threads".
int resolve_workers(int workers);

/// Runs row_fn(row) for every row in [0, n_rows) on `workers` threads.
///
/// Each row is processed start-to-finish by exactly one thread. Callers
/// accumulate into per-row slots and reduce those slots serially afterwards,
/// so results are bit-identical for any worker count.
void parallel_rows(int n_rows, int workers, const std::function<void(int)>& row_fn);

/// Deterministic recursive pairwise sum (fixed association order).
double pairwise_sum(std::span<const double> values);

}  // namespace fisherflow
