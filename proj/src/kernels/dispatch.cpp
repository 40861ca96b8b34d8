#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "gpev/kernels.hpp"

namespace gpev::kernels {
namespace {

std::atomic<const Ops*> g_active{nullptr};

bool cpu_has_avx2() {
#if defined(__x86_64__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Ops* pick_auto() {
  if (const char* env = std::getenv("GPEV_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return &scalar_ops();
    if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2() && avx2_ops())
      return avx2_ops();
  }
  if (cpu_has_avx2() && avx2_ops()) return avx2_ops();
  return &scalar_ops();
}

}  // namespace

const Ops& active() {
  const Ops* p = g_active.load(std::memory_order_acquire);
  if (!p) {
    p = pick_auto();
    g_active.store(p, std::memory_order_release);
  }
  return *p;
}

void select(const char* name) {
  if (std::strcmp(name, "scalar") == 0) {
    g_active.store(&scalar_ops(), std::memory_order_release);
    return;
  }
  if (std::strcmp(name, "avx2") == 0) {
    if (!cpu_has_avx2() || !avx2_ops())
      throw std::invalid_argument("avx2 kernels unavailable on this CPU/build");
    g_active.store(avx2_ops(), std::memory_order_release);
    return;
  }
  throw std::invalid_argument(std::string("unknown kernel backend: ") + name);
}

void select_auto() { g_active.store(pick_auto(), std::memory_order_release); }

}  // namespace gpev::kernels
