#include "roofs/measures.hpp"

#include <cmath>

#include "roofs/antilinear.hpp"
#include "roofs/error.hpp"

namespace roofs {

double xi(double x) {
  const double c = std::min(1.0, std::abs(x));
  const double y = std::sqrt(std::max(0.0, 1.0 - c * c));
  return eta(0.5 * (1.0 - y)) + eta(0.5 * (1.0 + y));
}

const char* to_string(Method m) { return m == Method::ClosedForm ? "closed_form" : "solver"; }

AntiLinearHermitian partial_trace_theta() { return AntiLinearHermitian(0.5 * wootters_conjugation().matrix()); }

MeasureReport concurrence_2qubit(const DensityOperator& rho) {
  if (rho.dim() != 4) throw Error(ErrorKind::DimMismatch, "two-qubit concurrence needs a 4 x 4 state");
  MeasureReport r;
  r.quantity = "concurrence";
  r.value = 2.0 * roof_values(partial_trace_theta(), rho).convex;
  return r;
}

MeasureReport eof_2qubit(const DensityOperator& rho) {
  MeasureReport r = concurrence_2qubit(rho);
  r.quantity = "eof";
  r.value = xi(r.value);
  return r;
}

double map_concurrence(const QubitMap& t, const DensityOperator& omega) {
  return std::sqrt(concurrence_sq(t, omega));
}

MeasureReport channel_entanglement(const QubitMap& t, const DensityOperator& omega, const SolverConfig& cfg) {
  if (omega.dim() != 2) throw Error(ErrorKind::DimMismatch, "qubit map needs a qubit state");
  MeasureReport r;
  r.quantity = "entropy-out";
  r.method = Method::Solver;
  RoofResult res = minimize_roof(output_entropy_objective(t), omega, cfg);
  r.value = res.value;
  r.decomposition = std::move(res.decomposition);
  const double lower = xi(map_concurrence(t, omega));
  r.bounds = Bounds{lower, von_neumann_entropy(t.apply(omega.matrix()))};
  r.flat = std::abs(r.value - lower) < 1e-3;
  return r;
}

BoundSuiteReport bound_suite(const QubitMap& t, const DensityOperator& omega, const SolverConfig& cfg) {
  if (omega.dim() != 2) throw Error(ErrorKind::DimMismatch, "qubit map needs a qubit state");
  BoundSuiteReport r;
  r.concurrence_sq = concurrence_sq(t, omega);
  if (t.is_axial()) {
    const AxialParams& p = t.axial_params();
    r.tangle = axial_tangle(p.alpha, p.beta, p.gamma, omega);
  } else {
    r.tangle = 4.0 * minimize_roof(det_objective(t), omega, cfg).value;
  }
  r.xi_concurrence = xi(std::sqrt(r.concurrence_sq));
  r.entanglement = minimize_roof(output_entropy_objective(t), omega, cfg).value;
  r.tangle_bound = r.tangle >= r.concurrence_sq - 1e-9;
  r.entanglement_bound = r.entanglement >= r.xi_concurrence - 5e-3;
  return r;
}

}  // namespace roofs
