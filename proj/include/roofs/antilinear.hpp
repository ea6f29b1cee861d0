#pragma once

#include <vector>

#include "roofs/core_states.hpp"
#include "roofs/linalg.hpp"

namespace roofs {

/// Anti-linear Hermitian operator psi -> A conj(psi), A complex symmetric.
class AntiLinearHermitian {
 public:
  explicit AntiLinearHermitian(const CMatrix& a);

  int dim() const { return static_cast<int>(a_.rows()); }
  const CMatrix& matrix() const { return a_; }

  CVector apply(const CVector& psi) const { return a_ * psi.conjugate(); }

  /// <psi, theta psi>.
  cplx expectation(const CVector& psi) const { return psi.dot(apply(psi)); }

  /// True when the operator squares to the identity (a conjugation).
  bool is_conjugation(double tolerance = 1e-10) const;

 private:
  CMatrix a_;
};

/// Applies any anti-linear operator given by its matrix: a * conj(psi).
inline CVector apply_antilinear(const CMatrix& a, const CVector& psi) { return a * psi.conjugate(); }

/// Matrix of the qubit spin flip, [[0, 1], [-1, 0]]. It is anti-Hermitian,
/// so it is returned as a bare matrix rather than an AntiLinearHermitian.
CMatrix spin_flip();

/// Spin flip tensor spin flip on two qubits.
AntiLinearHermitian wootters_conjugation();

/// 1/2 (A1^dagger F conj(A2) - A2^dagger F conj(A1)) for 2 x d Kraus operators.
/// For a channel with exactly these two Kraus operators,
/// sqrt(det T(|psi><psi|)) = |<psi, theta psi>|.
AntiLinearHermitian theta_from_kraus_pair(const CMatrix& a1, const CMatrix& a2);

/// The matrix of theta_omega = sqrt(omega) theta sqrt(omega): B = R A R^T.
CMatrix sandwiched_matrix(const AntiLinearHermitian& theta, const DensityOperator& omega);

/// Eigenvalues of |sqrt(omega) theta sqrt(omega)|, descending; exactly dim values.
std::vector<double> lambda_spectrum(const AntiLinearHermitian& theta, const DensityOperator& omega);

struct RoofValues {
  double convex = 0.0;
  double concave = 0.0;
};

RoofValues roof_values(const AntiLinearHermitian& theta, const DensityOperator& omega);
RoofValues roof_values_from_spectrum(const std::vector<double>& lambdas);

/// B = sum_j lambda_j eps_j phi_j phi_j^T with orthonormal phi_j.
struct TakagiFactorization {
  std::vector<double> lambdas;
  std::vector<cplx> phases;
  CMatrix basis;  // columns phi_j

  CMatrix reconstruct() const;
};

TakagiFactorization takagi(const CMatrix& b);

/// Sylvester Hadamard matrix; n must be a power of two.
Eigen::MatrixXi real_hadamard(int n);

enum class RoofMode { Convex, Concave };

/// Optimal decomposition whose members all share the roof value, built from
/// the Takagi basis of theta_omega, a real Hadamard mixing on the padded space
/// (next power of two) and a final real rotation equalizing the members.
PureDecomposition flat_optimal_decomposition(const AntiLinearHermitian& theta, const DensityOperator& omega,
                                             RoofMode mode);

/// Unimodular phases with sum_j eps_j lambda_j = 0, eps_0 = 1. Requires
/// lambda descending with lambda_0 <= sum_{j>0} lambda_j.
std::vector<cplx> cancelling_phases(const std::vector<double>& lambdas);

/// Real orthogonal O such that O n O^T has zero diagonal; n real symmetric
/// with zero trace.
RMatrix zero_diagonal_rotation(const RMatrix& n);

}  // namespace roofs
