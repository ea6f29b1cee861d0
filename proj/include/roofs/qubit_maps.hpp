#pragma once

#include <variant>
#include <vector>

#include "roofs/antilinear.hpp"
#include "roofs/core_states.hpp"
#include "roofs/linalg.hpp"

namespace roofs {

/// The axial-symmetric standard form:
///   [[a x00 + (1 - g) x11, b x01], [b x10, g x11 + (1 - a) x00]].
struct AxialParams {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;

  /// 1 + 2 a g - a - g + 2 sqrt(a (1 - a) g (1 - g)); positivity bound on beta^2.
  double beta_sq_max() const;
  /// 1 + 2 a g - a - g - 2 sqrt(a (1 - a) g (1 - g)); already on the beta^2 scale.
  double beta_crit() const;
  /// beta^2 <= a g.
  bool completely_positive() const { return beta * beta <= alpha * gamma + 1e-12; }
};

/// Trace-preserving positive map on 2 x 2 matrices in one of three
/// representations. Construction validates trace preservation and positivity.
class QubitMap {
 public:
  struct Kraus {
    std::vector<CMatrix> ops;
  };
  using Affine = Eigen::Matrix4d;

  static QubitMap kraus(std::vector<CMatrix> ops);
  static QubitMap axial(double alpha, double beta, double gamma);
  static QubitMap affine(const Affine& m);

  /// Identity, the dephasing ("diagonal") channel and the hh-family map
  /// x -> [[x00 + (1 - g) x11, 0], [0, g x11]].
  static QubitMap identity() { return axial(1.0, 1.0, 1.0); }
  static QubitMap diagonal() { return axial(1.0, 0.0, 1.0); }
  static QubitMap decay_family(double gamma) { return axial(1.0, 0.0, gamma); }

  CMatrix apply(const CMatrix& x) const;

  /// Real 4 x 4 action on (x0, x1, x2, x3), X = (x0 + sum x_k sigma_k) / 2.
  Affine to_affine() const;

  bool is_axial() const { return std::holds_alternative<AxialParams>(rep_); }
  bool is_kraus() const { return std::holds_alternative<Kraus>(rep_); }
  const AxialParams& axial_params() const { return std::get<AxialParams>(rep_); }
  const Kraus& kraus_ops() const { return std::get<Kraus>(rep_); }

 private:
  using Rep = std::variant<Kraus, AxialParams, Affine>;
  explicit QubitMap(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

/// Pair of real symmetric 4 x 4 forms with x^T q_t x = det T(X) and
/// x^T q_det x = det X.
struct QuadraticFormPencil {
  Eigen::Matrix4d q_t;
  Eigen::Matrix4d q_det;

  Eigen::Matrix4d at(double w) const { return q_t - w * q_det; }
  double min_eigenvalue(double w) const;
};

/// Admissible interval [w_lo, w_hi] of the subtraction weight; w = w_lo.
struct SubtractionWeight {
  double w_lo = 0.0;
  double w_hi = 0.0;
  double w = 0.0;
};

CMatrix apply_map(const QubitMap& t, const CMatrix& x);

/// Determinant of a 2 x 2 matrix.
cplx det2(const CMatrix& m);

/// Polarized from ten evaluations of det T on Bloch basis combinations.
QuadraticFormPencil det_t_form(const QubitMap& t);

SubtractionWeight subtraction_weight(const QubitMap& t);
SubtractionWeight subtraction_weight(const QuadraticFormPencil& pencil);

/// C_T(rho)^2 = 4 (det T(rho) - w det rho), clamped at zero.
double concurrence_sq(const QubitMap& t, const DensityOperator& rho);
double concurrence_sq(const QubitMap& t, const SubtractionWeight& w, const DensityOperator& rho);

/// Closed-form weight max{beta^2, beta_crit} for axial maps.
double axial_concurrence_weight(double alpha, double beta, double gamma);

/// Closed-form tangle tau_T(rho) = 4 (det T(rho) - w_tau det rho) with
/// w_tau = max{beta^2, (a + g - 1)^2}, normalized so tau = 4 det T on pure states.
double axial_tangle(double alpha, double beta, double gamma, const DensityOperator& rho);

enum class TangleCase { A, B, C };
TangleCase axial_tangle_case(double alpha, double beta, double gamma);

/// Hilbert seminorm 2 sqrt((X, X)_w) of the two-Kraus channel in standard form
/// A = diag(a00, a11), B = antidiag(b01, b10). On states it is C_T.
double two_kraus_seminorm(const CMatrix& a, const CMatrix& b, const CMatrix& x);

/// 2 | |b10 a00| x00 + |b01 a11| x11 + z x10 - z* x01 |, z^2 = a00* a11 b01 b10*.
/// Agrees with two_kraus_seminorm only when a00 b10 a11 b01 = 0.
double two_kraus_linear_formula(const CMatrix& a, const CMatrix& b, const CMatrix& x);

/// C_T = 2 |lambda_1 - lambda_2| for a qubit-input theta.
double concurrence_general_two_kraus(const AntiLinearHermitian& theta, const DensityOperator& omega);

/// 2 sqrt(Tr(B conj(B)) - 2 det(omega) |det A|), the quadratic-equation route.
double concurrence_two_kraus_trace_form(const AntiLinearHermitian& theta, const DensityOperator& omega);

struct LengthTwoResult {
  PureDecomposition decomposition;
  bool degenerate_pencil = false;
};

/// Two pure states on the line through rho along a null direction of the
/// pencil at w_lo; the average of 2 sqrt(det T) over them is C_T(rho).
LengthTwoResult length_two_decomposition(const QubitMap& t, const DensityOperator& rho);

}  // namespace roofs
