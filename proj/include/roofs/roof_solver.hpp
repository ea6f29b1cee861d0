#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "roofs/antilinear.hpp"
#include "roofs/core_states.hpp"
#include "roofs/qubit_maps.hpp"

namespace roofs {

/// A real function on unit vectors of C^dim. evaluate must be continuous and
/// safe to call from several threads at once.
struct RoofObjective {
  int dim = 0;
  std::function<double(const CVector&)> evaluate;
};

/// Channel from C^d to 2 x 2 matrices, X -> sum A_k X A_k^dagger, with 2 x d
/// Kraus operators.
class QubitOutputChannel {
 public:
  explicit QubitOutputChannel(std::vector<CMatrix> ops);
  /// Trace over the second factor of C^2 (x) C^db.
  static QubitOutputChannel partial_trace(int db);

  int input_dim() const { return static_cast<int>(ops_.front().cols()); }
  const std::vector<CMatrix>& ops() const { return ops_; }
  CMatrix apply(const CMatrix& x) const;
  CMatrix apply_pure(const CVector& psi) const;
  /// det T(psi psi^dag) as a sum of squared 2 x 2 minors (Cauchy-Binet).
  double pure_det(const CVector& psi) const;

 private:
  std::vector<CMatrix> ops_;
};

RoofObjective sqrt_det_objective(const QubitOutputChannel& t);
RoofObjective sqrt_det_objective(const QubitMap& t);
RoofObjective det_objective(const QubitOutputChannel& t);
RoofObjective det_objective(const QubitMap& t);
RoofObjective output_entropy_objective(const QubitOutputChannel& t);
RoofObjective output_entropy_objective(const QubitMap& t);
/// psi -> S(diag |psi><psi|).
RoofObjective diag_entropy_objective(int dim);
/// psi -> |<psi, theta psi>|.
RoofObjective antilinear_abs_objective(const AntiLinearHermitian& theta);
/// psi -> f(g(psi)).
RoofObjective compose(const RoofObjective& g, std::function<double(double)> f);

struct SolverConfig {
  int length = 0;  // 0 selects dim^2
  int restarts = 32;
  int max_iters = 2000;
  double tol = 1e-10;
  int stall_iters = 50;
  std::uint64_t seed = 0;
};

struct RoofResult {
  double value = 0.0;
  PureDecomposition decomposition;
};

/// Best sum p_j g(pi_j) found over decompositions of omega: an upper bound on
/// the convex roof. Restarts run in parallel; the result does not depend on
/// the thread count.
RoofResult minimize_roof(const RoofObjective& g, const DensityOperator& omega, const SolverConfig& cfg);
/// Mirror image: a lower bound on the concave roof.
RoofResult maximize_roof(const RoofObjective& g, const DensityOperator& omega, const SolverConfig& cfg);

namespace serial {
RoofResult minimize_roof(const RoofObjective& g, const DensityOperator& omega, const SolverConfig& cfg);
RoofResult maximize_roof(const RoofObjective& g, const DensityOperator& omega, const SolverConfig& cfg);
}  // namespace serial

bool verify_roof_point(double g_value, const PureDecomposition& dec, const RoofObjective& g, double tol);
/// Spread of g over members with weight above tol::kWeight.
double flatness_spread(const PureDecomposition& dec, const RoofObjective& g);
bool flatness_check(const PureDecomposition& dec, const RoofObjective& g, double tol);

/// Smooth cost on rows x cols isometries, minimized by Riemannian conjugate
/// gradient with a polar retraction.
struct StiefelProblem {
  int rows = 0;
  int cols = 0;
  std::function<double(const CMatrix&)> cost;
  /// Euclidean gradient d cost / d Re V + i d cost / d Im V. Left empty, a
  /// central-difference estimate over all entries is used.
  std::function<CMatrix(const CMatrix&)> gradient;
};

struct StiefelResult {
  double value = 0.0;
  CMatrix point;
  int iterations = 0;
};

StiefelResult optimize_stiefel(const StiefelProblem& problem, const CMatrix& start, const SolverConfig& cfg);

/// Central-difference Euclidean gradient with step h.
CMatrix numeric_gradient(const std::function<double(const CMatrix&)>& cost, const CMatrix& v, double h = 1e-6);

}  // namespace roofs
