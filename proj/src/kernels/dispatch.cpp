#include <atomic>
#include <cstdlib>
#include <string>

#include "gtf/error.hpp"
#include "gtf/kernels.hpp"

namespace gtf::kernels {

namespace {

constexpr Table kScalar{Isa::scalar, scalar::squared_distance, scalar::dot, scalar::axpy,
                        scalar::nearest_row};
#if defined(GTF_HAVE_AVX2)
constexpr Table kAvx2{Isa::avx2, avx2::squared_distance, avx2::dot, avx2::axpy, avx2::nearest_row};
#endif

bool cpu_has_avx2() {
#if defined(GTF_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa initial_isa() {
  if (const char* env = std::getenv("GTF_ISA"); env != nullptr && *env != '\0') {
    const Isa requested = parse_isa(env);
    if (supported(requested)) return requested;
  }
  return detected();
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> table{&kernels::table(initial_isa())};
  return table;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

Isa parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::scalar;
  if (name == "avx2") return Isa::avx2;
  fail(ErrorCode::InvalidArgument, "unknown instruction set '" + std::string(name) + "'");
}

bool supported(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2: {
      static const bool has = cpu_has_avx2();
      return has;
    }
  }
  return false;
}

Isa detected() { return supported(Isa::avx2) ? Isa::avx2 : Isa::scalar; }

const Table& table(Isa isa) {
#if defined(GTF_HAVE_AVX2)
  if (isa == Isa::avx2 && supported(Isa::avx2)) return kAvx2;
#endif
  if (isa != Isa::scalar) fail(ErrorCode::InvalidArgument, "instruction set not supported here");
  return kScalar;
}

const Table& table() { return *current().load(std::memory_order_acquire); }

Isa active() { return table().isa; }

void set_active(Isa isa) { current().store(&table(isa), std::memory_order_release); }

}  // namespace gtf::kernels
