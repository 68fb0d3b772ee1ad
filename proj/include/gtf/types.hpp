#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace gtf {

/// Row-major so that each node's signal vector is contiguous; the SIMD
/// kernels operate directly on row pointers.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Signal matrix Y (n x d), rows are node signals.
using SignalMatrix = Matrix;

using Rng = std::mt19937_64;

/// Derive an independent stream seed from a base seed and a tag (splitmix64).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace gtf
