#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace roofs {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

/// Largest absolute entry of a matrix; the "max" norm used by the tolerances.
double max_abs(const CMatrix& m);

/// Max-entry deviation of m from its adjoint.
double hermiticity_defect(const CMatrix& m);

/// Max-entry deviation of m from its transpose.
double symmetry_defect(const CMatrix& m);

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Eigenvalues (ascending) of the Hermitian part of m.
RVector hermitian_eigenvalues(const CMatrix& m);

/// Singular values, descending.
RVector singular_values(const CMatrix& m);

/// Closest isometry (polar factor) to a tall matrix with full column rank.
CMatrix polar_isometry(const CMatrix& m);

/// Trace over the second factor of a (da*db)-dimensional operator.
CMatrix partial_trace_second(const CMatrix& m, int da, int db);

/// Pauli matrices sigma_1..sigma_3 (index 0 is the identity).
const CMatrix& pauli(int k);

/// -x log x with the continuous extension eta(0) = 0; natural log.
double eta(double x);

/// Shannon entropy of a probability list, natural log. Entries within
/// rounding of zero or slightly negative contribute nothing.
double shannon_entropy(const std::vector<double>& p);

/// von Neumann entropy of a Hermitian PSD matrix, natural log.
double von_neumann_entropy(const CMatrix& m);

}  // namespace roofs
