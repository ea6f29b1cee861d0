#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "roofs/linalg.hpp"

namespace roofs {

namespace tol {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kPsd = -1e-9;
inline constexpr double kNorm = 1e-12;
inline constexpr double kRank = 1e-10;
inline constexpr double kWeight = 1e-12;
inline constexpr double kIsometry = 1e-10;
}  // namespace tol

/// Hermitian, positive semi-definite, trace-one matrix. Construction
/// validates; a DensityOperator that exists is always valid.
class DensityOperator {
 public:
  explicit DensityOperator(const CMatrix& m);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const CMatrix& matrix() const { return matrix_; }

  /// Eigenvalues, descending.
  const RVector& eigenvalues() const { return eigenvalues_; }
  /// Columns are eigenvectors matching eigenvalues().
  const CMatrix& eigenvectors() const { return eigenvectors_; }

  /// Count of eigenvalues above tol::kRank.
  int rank() const;

 private:
  CMatrix matrix_;
  RVector eigenvalues_;
  CMatrix eigenvectors_;
};

class PureState {
 public:
  /// Requires a unit vector within tol::kNorm.
  explicit PureState(const CVector& v);

  /// Normalizes first; throws ZeroState for a null vector.
  static PureState normalized(const CVector& v);

  int dim() const { return static_cast<int>(vector_.size()); }
  const CVector& vector() const { return vector_; }
  CMatrix projector() const { return vector_ * vector_.adjoint(); }

 private:
  CVector vector_;
};

/// Weights p_j with pure members pi_j; sum_j p_j pi_j is the represented state.
struct PureDecomposition {
  std::vector<double> weights;
  std::vector<PureState> states;

  std::size_t size() const { return weights.size(); }
  CMatrix reconstruct() const;

  /// sum_j p_j g(pi_j).
  double average(const std::function<double(const CVector&)>& g) const;
};

/// Frobenius distance between a decomposition's mixture and a target.
double reconstruction_error(const PureDecomposition& dec, const CMatrix& target);

struct BlochVector {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  double norm() const;
};

DensityOperator validate_density(const CMatrix& m);

/// Hermitian PSD square root; negative rounding eigenvalues are clipped.
CMatrix psd_sqrt(const DensityOperator& omega);

/// Eigen-ensemble, weights descending, zero weights (<= tol::kRank) dropped.
PureDecomposition spectral_decomposition(const DensityOperator& omega);

/// Decomposition generated by an L x r isometry acting on the spectral
/// ensemble: phi_j = sum_k V_jk sqrt(q_k) e_k.
PureDecomposition decomposition_from_isometry(const DensityOperator& omega, const CMatrix& v);

DensityOperator random_density(int dim, int rank, std::uint64_t seed);
PureState random_pure(int dim, std::uint64_t seed);

BlochVector qubit_to_bloch(const DensityOperator& omega);
DensityOperator bloch_to_qubit(const BlochVector& b);

/// Hermitian trace-one matrix (not necessarily positive) from Bloch data.
CMatrix bloch_matrix(double x0, double x1, double x2, double x3);

}  // namespace roofs
