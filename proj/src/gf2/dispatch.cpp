#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qs/gf2.hpp"

namespace qs::gf2 {

namespace {

using XorFn = void (*)(std::uint64_t*, const std::uint64_t*, std::size_t);

Isa detect() {
  if (const char* env = std::getenv("QS_GF2_ISA"); env && std::string(env) == "scalar") return Isa::Scalar;
  return isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

XorFn kernel_for(Isa isa) { return isa == Isa::Avx2 ? &avx2::xor_into : &scalar::xor_into; }

struct State {
  std::atomic<Isa> isa;
  std::atomic<XorFn> xor_fn;
  State() : isa(detect()), xor_fn(kernel_for(isa.load())) {}
};

State& state() {
  static State s;
  return s;
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) {
  if (isa == Isa::Scalar) return true;
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() { return state().isa.load(); }

void set_isa(Isa isa) {
  if (!isa_supported(isa)) throw std::runtime_error("GF(2) kernel " + std::string(isa_name(isa)) + " not supported");
  state().isa.store(isa);
  state().xor_fn.store(kernel_for(isa));
}

void xor_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  state().xor_fn.load(std::memory_order_relaxed)(dst, src, words);
}

}  // namespace qs::gf2
