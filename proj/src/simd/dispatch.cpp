#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "cyclic/simd/kernels.hpp"

namespace cyclic::simd {

namespace detail {
bool avx2_compiled();
}

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& table_for(Isa isa) {
  return isa == Isa::avx2 ? avx2::table() : scalar::table();
}

Isa detect() {
  if (const char* env = std::getenv("CYCLIC_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return Isa::scalar;
    if (want == "avx2" && isa_available(Isa::avx2)) return Isa::avx2;
  }
  return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

struct Dispatch {
  std::atomic<Isa> isa;
  std::atomic<const KernelTable*> table;
  Dispatch() : isa(detect()), table(&table_for(isa.load())) {}
};

Dispatch& dispatch() {
  static Dispatch d;
  return d;
}

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  if (isa == Isa::scalar) return true;
  static const bool ok = detail::avx2_compiled() && cpu_has_avx2();
  return ok;
}

Isa active_isa() { return dispatch().isa.load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument("simd variant not available: " + std::string(to_string(isa)));
  }
  dispatch().isa.store(isa);
  dispatch().table.store(&table_for(isa));
}

const KernelTable& active_table() { return *dispatch().table.load(std::memory_order_relaxed); }

}  // namespace cyclic::simd
