#include "fisherflow/parallel.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>
#include <vector>

namespace fisherflow {

int resolve_workers(int workers) {
  if (workers < 0) throw std::invalid_argument("worker count must be >= 0");
  if (workers == 0) {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
  }
  return workers;
}

void parallel_rows(int n_rows, int workers, const std::function<void(int)>& row_fn) {
  workers = resolve_workers(workers);
  if (workers <= 1 || n_rows <= 1) {
    for (int row = 0; row < n_rows; ++row) row_fn(row);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int row = next.fetch_add(1);
        if (row >= n_rows) return;
        row_fn(row);
      }
    });
  }
  for (auto& th : pool) th.join();
}

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace fisherflow
