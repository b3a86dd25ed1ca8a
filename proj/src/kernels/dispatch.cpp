#include <cstdlib>
#include <stdexcept>
#include <string>

#include "afc/kernels.hpp"

namespace afc::kernels {

const KernelTable& scalar_table();
#if defined(__x86_64__) || defined(__i386__)
const KernelTable& avx2_table();
#endif
#if defined(__aarch64__)
const KernelTable& neon_table();
#endif

bool backend_available(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#if defined(__x86_64__) || defined(__i386__)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::neon:
#if defined(__aarch64__)
      return true;  // NEON is baseline on aarch64
#else
      return false;
#endif
  }
  return false;
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "?";
}

const KernelTable& table(Backend b) {
  if (!backend_available(b))
    throw std::invalid_argument(std::string("kernel backend unavailable: ") +
                                backend_name(b));
  switch (b) {
#if defined(__x86_64__) || defined(__i386__)
    case Backend::avx2: return avx2_table();
#endif
#if defined(__aarch64__)
    case Backend::neon: return neon_table();
#endif
    default: return scalar_table();
  }
}

namespace {

Backend pick_default() {
  if (const char* env = std::getenv("AFC_KERNELS")) {
    const std::string s(env);
    if (s == "scalar") return Backend::scalar;
    if (s == "avx2" && backend_available(Backend::avx2)) return Backend::avx2;
    if (s == "neon" && backend_available(Backend::neon)) return Backend::neon;
    // unknown or unavailable request falls through to auto-pick
  }
  if (backend_available(Backend::avx2)) return Backend::avx2;
  if (backend_available(Backend::neon)) return Backend::neon;
  return Backend::scalar;
}

Backend g_active = pick_default();

}  // namespace

Backend active_backend() { return g_active; }

void set_active_backend(Backend b) {
  if (!backend_available(b))
    throw std::invalid_argument(std::string("kernel backend unavailable: ") +
                                backend_name(b));
  g_active = b;
}

const KernelTable& ops() { return table(g_active); }

}  // namespace afc::kernels
