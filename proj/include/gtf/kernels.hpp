#pragma once

// Inner-loop arithmetic kernels with a scalar reference implementation and
// an AVX2/FMA variant chosen at runtime. Callers go through table() so the
// active variant can be switched (e.g. forced to scalar) for equivalence
// testing or debugging.

#include <cstddef>
#include <span>
#include <string_view>

namespace gtf::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

struct Table {
  Isa isa;
  /// sum_i (a_i - b_i)^2
  double (*squared_distance)(const double* a, const double* b, std::size_t n);
  /// sum_i a_i b_i
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  /// Index of the row of `centroids` (k rows of `dim`, row-major) closest
  /// to `point`; ties go to the smaller index. Writes the distance.
  std::size_t (*nearest_row)(const double* point, const double* centroids, std::size_t k,
                             std::size_t dim, double* best_distance);
};

namespace scalar {
double squared_distance(const double* a, const double* b, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
std::size_t nearest_row(const double* point, const double* centroids, std::size_t k,
                        std::size_t dim, double* best_distance);
}  // namespace scalar

#if defined(GTF_HAVE_AVX2)
namespace avx2 {
double squared_distance(const double* a, const double* b, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
std::size_t nearest_row(const double* point, const double* centroids, std::size_t k,
                        std::size_t dim, double* best_distance);
}  // namespace avx2
#endif

/// Whether a variant was compiled in and the CPU supports it.
bool supported(Isa isa);
/// Best supported variant on this machine.
Isa detected();
/// Variant currently in use. Defaults to detected(), or to the value of the
/// GTF_ISA environment variable ("scalar" / "avx2") when set.
Isa active();
/// Select a variant; throws gtf::Error(InvalidArgument) if unsupported.
void set_active(Isa isa);
Isa parse_isa(std::string_view name);

const Table& table();
const Table& table(Isa isa);

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  return table().squared_distance(a.data(), b.data(), a.size());
}
inline double dot(std::span<const double> a, std::span<const double> b) {
  return table().dot(a.data(), b.data(), a.size());
}

/// RAII override of the active variant.
class ScopedIsa {
 public:
  explicit ScopedIsa(Isa isa) : previous_(active()) { set_active(isa); }
  ~ScopedIsa() { set_active(previous_); }
  ScopedIsa(const ScopedIsa&) = delete;
  ScopedIsa& operator=(const ScopedIsa&) = delete;

 private:
  Isa previous_;
};

}  // namespace gtf::kernels
