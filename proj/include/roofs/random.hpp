#pragma once

#include <cstdint>
#include <random>

#include "roofs/linalg.hpp"

namespace roofs {

/// Counter-based seed splitting. Every derived stream is a pure function of
/// (seed, stream), so parallel consumers never share generator state.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0);
  double normal();
  cplx complex_normal();

  /// Ginibre matrix with i.i.d. standard complex Gaussian entries.
  CMatrix ginibre(int rows, int cols);

  /// Haar-distributed rows x cols isometry (cols <= rows).
  CMatrix haar_isometry(int rows, int cols);

  CMatrix haar_unitary(int dim) { return haar_isometry(dim, dim); }

  /// Haar-random unit vector (Gaussian then normalize).
  CVector haar_vector(int dim);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace roofs
