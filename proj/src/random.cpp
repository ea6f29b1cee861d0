#include "roofs/random.hpp"

#include <cmath>

namespace roofs {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over a mixed (seed, stream) counter
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Draws are built from raw engine output rather than std::*_distribution so
// the streams are identical across standard library implementations.
double Rng::uniform(double lo, double hi) {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

double Rng::normal() {
  // Box-Muller, one value per call.
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

cplx Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

CMatrix Rng::ginibre(int rows, int cols) {
  CMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = complex_normal();
  return g;
}

CMatrix Rng::haar_isometry(int rows, int cols) {
  const CMatrix g = ginibre(rows, cols);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
  const CMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  // Fix the phase freedom of QR so the distribution is exactly Haar.
  for (int k = 0; k < cols; ++k) {
    const double a = std::abs(r(k, k));
    if (a > 0.0) q.col(k) *= r(k, k) / a;
  }
  return q;
}

CVector Rng::haar_vector(int dim) {
  CVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = complex_normal();
  return v / v.norm();
}

}  // namespace roofs
