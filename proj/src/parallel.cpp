#include "gpev/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace gpev {
namespace {
std::atomic<int> g_threads{1};
}

void set_threads(int n) { g_threads.store(std::max(1, n)); }
int threads() { return g_threads.load(); }

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  const std::size_t n = end > begin ? end - begin : 0;
  const int nt = std::min<std::size_t>(threads(), n ? n : 1);
  if (nt <= 1 || n < 2) {
    if (n) fn(begin, end);
    return;
  }
  const std::size_t chunk = (n + nt - 1) / nt;
  std::vector<std::thread> pool;
  pool.reserve(nt - 1);
  for (int t = 1; t < nt; ++t) {
    std::size_t lo = begin + t * chunk;
    if (lo >= end) break;
    pool.emplace_back(fn, lo, std::min(end, lo + chunk));
  }
  fn(begin, std::min(end, begin + chunk));
  for (auto& th : pool) th.join();
}

}  // namespace gpev
