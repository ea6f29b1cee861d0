#pragma once

#include <optional>
#include <string>

#include "roofs/core_states.hpp"
#include "roofs/qubit_maps.hpp"
#include "roofs/roof_solver.hpp"

namespace roofs {

/// xi(x) = eta((1 - y) / 2) + eta((1 + y) / 2), y = sqrt(1 - x^2).
double xi(double x);

enum class Method { ClosedForm, Solver };
const char* to_string(Method m);

struct Bounds {
  double lower = 0.0;
  double upper = 0.0;
};

struct MeasureReport {
  std::string quantity;
  double value = 0.0;
  Method method = Method::ClosedForm;
  std::optional<PureDecomposition> decomposition;
  std::optional<Bounds> bounds;
  /// |closed form - solver| when both were computed.
  std::optional<double> discrepancy;
  /// Set when value meets its lower bound within 1e-3.
  bool flat = false;
};

/// Wootters conjugation scaled so that sqrt(det Tr_2 |psi><psi|) = |<psi, theta psi>|.
AntiLinearHermitian partial_trace_theta();

/// 2 max{0, l1 - l2 - l3 - l4} over the lambda spectrum of partial_trace_theta().
MeasureReport concurrence_2qubit(const DensityOperator& rho);
MeasureReport eof_2qubit(const DensityOperator& rho);

/// Solver value of the convex roof of S(T(.)) with the xi(C_T) lower bound.
MeasureReport channel_entanglement(const QubitMap& t, const DensityOperator& omega, const SolverConfig& cfg);

/// C_T(omega) = sqrt of concurrence_sq.
double map_concurrence(const QubitMap& t, const DensityOperator& omega);

struct BoundSuiteReport {
  double concurrence_sq = 0.0;
  double tangle = 0.0;
  double xi_concurrence = 0.0;
  double entanglement = 0.0;
  bool tangle_bound = false;       // tau >= C^2 - 1e-9
  bool entanglement_bound = false; // E >= xi(C) - 5e-3
};

/// Axial maps use the closed-form tangle; other maps minimize 4 det T.
BoundSuiteReport bound_suite(const QubitMap& t, const DensityOperator& omega, const SolverConfig& cfg);

}  // namespace roofs
