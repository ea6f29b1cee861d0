// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "roofs/diagonal_sym.hpp"
#include "roofs/error.hpp"
#include "roofs/measures.hpp"
#include "roofs/random.hpp"
#include "roofs/verify.hpp"

using namespace roofs;

namespace {

const double kLog2 = std::log(2.0);

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

SolverConfig solver(std::uint64_t seed, int restarts = 8) {
  SolverConfig cfg;
  cfg.restarts = restarts;
  cfg.seed = seed;
  return cfg;
}

DensityOperator projector(const CVector& v) { return DensityOperator(v * v.adjoint() / v.squaredNorm()); }

DensityOperator two_qubit_state(int i) { return random_density(4, 1 + i % 4, derive_seed(2024, i)); }

QubitMap random_axial(Rng& rng) {
  const double a = rng.uniform(), g = rng.uniform();
  const double bmax = std::sqrt(AxialParams{a, 0.0, g}.beta_sq_max());
  return QubitMap::axial(a, rng.uniform(-1.0, 1.0) * bmax, g);
}

DensityOperator random_qubit(Rng& rng, double radius = 0.98) {
  Eigen::Vector3d n(rng.normal(), rng.normal(), rng.normal());
  n.normalize();
  const double r = radius * std::cbrt(rng.uniform());
  return bloch_to_qubit({r * n(0), r * n(1), r * n(2)});
}

Outcome wootters_anchors() {
  CVector b = CVector::Zero(4);
  b(0) = b(3) = 1.0 / std::sqrt(2.0);
  const DensityOperator bell = projector(b);
  double err = std::max(std::abs(concurrence_2qubit(bell).value - 1.0), std::abs(eof_2qubit(bell).value - kLog2));
  for (std::uint64_t s = 0; s < 10; ++s) {
    const DensityOperator prod = projector(kron(random_pure(2, 2 * s).vector(), random_pure(2, 2 * s + 1).vector()));
    err = std::max({err, std::abs(concurrence_2qubit(prod).value), std::abs(eof_2qubit(prod).value)});
  }
  return {err <= 1e-10, "max error " + fmt("%.3e", err)};
}

Outcome closed_form_vs_solver() {
  const RoofObjective g = sqrt_det_objective(QubitOutputChannel::partial_trace(2));
  double worst = 0.0, beat = 0.0;
  for (int i = 0; i < 50; ++i) {
    const DensityOperator rho = two_qubit_state(i);
    const double c = concurrence_2qubit(rho).value;
    const double s = 2.0 * minimize_roof(g, rho, solver(i)).value;
    worst = std::max(worst, std::abs(c - s));
    beat = std::max(beat, c - s);
  }
  return {worst <= 2e-3 && beat <= 1e-10,
          "max |C - solver| " + fmt("%.3e", worst) + ", max (C - solver) " + fmt("%.3e", beat)};
}

Outcome flat_decompositions() {
  const RoofObjective g = compose(sqrt_det_objective(QubitOutputChannel::partial_trace(2)), [](double v) { return 2 * v; });
  double rec = 0.0, avg = 0.0;
  bool flat = true;
  for (int i = 0; i < 50; ++i) {
    const DensityOperator rho = two_qubit_state(i);
    const PureDecomposition dec = flat_optimal_decomposition(partial_trace_theta(), rho, RoofMode::Convex);
    rec = std::max(rec, reconstruction_error(dec, rho.matrix()));
    flat = flat && flatness_check(dec, g, 1e-8);
    avg = std::max(avg, std::abs(dec.average(g.evaluate) - concurrence_2qubit(rho).value));
  }
  return {rec <= 1e-8 && flat && avg <= 1e-8, "reconstruction " + fmt("%.3e", rec) + ", average error " +
                                                   fmt("%.3e", avg) + (flat ? ", all flat" : ", flatness failed")};
}

Outcome diagonal_channel() {
  const RoofObjective g = diag_entropy_objective(2);
  double lo = 0.0, hi = 0.0, formula = 0.0;
  int i = 0;
  for (double x1 : {0.0, 0.35, 0.7}) {
    for (double x3 : {-0.5, 0.0, 0.6}) {
      const DensityOperator w = bloch_to_qubit({x1, 0.2 * x1, x3});
      const double y = std::sqrt(1.0 - x1 * x1 - 0.04 * x1 * x1);
      const double ed = ed_qubit(w);
      formula = std::max(formula, std::abs(ed - (eta((1 + y) / 2) + eta((1 - y) / 2))));
      lo = std::max(lo, std::abs(minimize_roof(g, w, solver(i)).value - ed));
      hi = std::max(hi, std::abs(maximize_roof(g, w, solver(i)).value - diag_entropy(w)));
      ++i;
    }
  }
  return {formula <= 1e-12 && lo <= 2e-3 && hi <= 2e-3, "closed form " + fmt("%.3e", formula) + ", convex " +
                                                            fmt("%.3e", lo) + ", concave " + fmt("%.3e", hi)};
}

Outcome subtraction_weights() {
  double werr = 0.0;
  for (int k = 1; k <= 9; ++k) {
    const double g = k / 10.0;
    werr = std::max(werr, std::abs(subtraction_weight(QubitMap::decay_family(g)).w - g));
  }
  Rng rng(55);
  double worst = 0.0;
  int samples = 0;
  for (int m = 0; m < 100; ++m) {
    const QubitMap t = m < 9 ? QubitMap::decay_family((m + 1) / 10.0) : random_axial(rng);
    const double w = subtraction_weight(t).w;
    for (int s = 0; s < 100; ++s, ++samples) {
      const double scale = rng.uniform(0.0, 3.0);
      const CMatrix x = bloch_matrix(1.0, scale * rng.normal(), scale * rng.normal(), scale * rng.normal());
      worst = std::min(worst, (det2(apply_map(t, x)) - w * det2(x)).real());
    }
  }
  return {werr <= 1e-10 && samples == 10000 && worst >= -1e-9,
          "max |w - gamma| " + fmt("%.3e", werr) + ", min pencil value " + fmt("%.3e", worst)};
}

Outcome axial_grid() {
  int total = 0, agree = 0;
  for (int i = 0; i <= 8; ++i) {
    for (int j = 0; j <= 8; ++j) {
      for (int k = 0; k <= 8; ++k) {
        const double a = i / 8.0, g = j / 8.0;
        const AxialParams p{a, 0.0, g};
        const double b = (k / 8.0) * std::sqrt(p.beta_sq_max());
        ++total;
        try {
          if (std::abs(axial_concurrence_weight(a, b, g) - subtraction_weight(QubitMap::axial(a, b, g)).w_lo) <= 1e-8)
            ++agree;
        } catch (const Error&) {
        }
      }
    }
  }
  Rng rng(66);
  double tangle = 0.0;
  for (int n = 0; n < 30; ++n) {
    const QubitMap t = random_axial(rng);
    const DensityOperator rho = random_qubit(rng);
    const AxialParams& p = t.axial_params();
    const double solved = 4.0 * minimize_roof(det_objective(t), rho, solver(n)).value;
    tangle = std::max(tangle, std::abs(axial_tangle(p.alpha, p.beta, p.gamma, rho) - solved));
  }
  const std::vector<SuiteReport> rep = run_verify("subtraction", 5, 1);
  bool printed = false;
  for (const std::string& line : rep.front().notes) printed = printed || line.rfind("resolved tangle", 0) == 0;
  return {agree * 100 >= 99 * total && tangle <= 5e-3 && printed,
          std::to_string(agree) + "/" + std::to_string(total) + " grid points, max tangle error " + fmt("%.3e", tangle) +
              (printed ? ", readings printed" : ", readings missing")};
}

Outcome bound_inequalities() {
  Rng rng(77);
  double gap = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const QubitMap t = random_axial(rng);
    const DensityOperator rho = random_qubit(rng);
    const AxialParams& p = t.axial_params();
    gap = std::min(gap, axial_tangle(p.alpha, p.beta, p.gamma, rho) - concurrence_sq(t, rho));
  }
  double ent = 0.0;
  for (int n = 0; n < 100; ++n) {
    const QubitMap t = random_axial(rng);
    const DensityOperator rho = random_qubit(rng);
    ent = std::min(ent, channel_entanglement(t, rho, solver(n, 4)).value - xi(map_concurrence(t, rho)));
  }
  CMatrix hh3(2, 2);
  hh3 << 0.5, 0.25, 0.25, 0.5;
  const BoundSuiteReport r = bound_suite(QubitMap::decay_family(0.5), DensityOperator(hh3), solver(0));
  const double strict = r.tangle - r.concurrence_sq;
  return {gap >= -1e-9 && ent >= -5e-3 && strict > 1e-6, "min tau - C^2 " + fmt("%.3e", gap) + ", min E - xi(C) " +
                                                             fmt("%.3e", ent) + ", gap at test state " +
                                                             fmt("%.4f", strict)};
}

Outcome embedding_relation() {
  const EmbeddingSpec spec = qubit_qutrit_embedding();
  Rng rng(88);
  double worst = 0.0;
  for (int n = 0; n < 20; ++n) {
    const DensityOperator w = random_qubit(rng);
    const double lhs = minimize_roof(diag_entropy_objective(3), embed_state(spec, w), solver(n)).value;
    const double rhs = minimize_roof(diag_entropy_objective(2), w, solver(n)).value + w.matrix()(1, 1).real() * kLog2;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  const double a0 = std::sqrt(1.0 / 3.0), a1 = std::sqrt(2.0 / 3.0);
  CVector p(2), q(2);
  p << a0, a1;
  q << a1, a0;
  const CMatrix pi0 = embed_state(spec, projector(p)).matrix(), pi1 = embed_state(spec, projector(q)).matrix();
  const double d0[3] = {1.0 / 3, 1.0 / 3, 1.0 / 3}, d1[3] = {2.0 / 3, 1.0 / 6, 1.0 / 6};
  double diag = 0.0;
  for (int k = 0; k < 3; ++k)
    diag = std::max({diag, std::abs(pi0(k, k).real() - d0[k]), std::abs(pi1(k, k).real() - d1[k])});
  return {worst <= 5e-3 && diag <= 1e-15,
          "max relation error " + fmt("%.3e", worst) + ", diagonal error " + fmt("%.3e", diag)};
}

Outcome h0_experiment() {
  const double d2 = h0_min_entropy_experiment(2, h0_default_config()).value;
  const double d3 = h0_min_entropy_experiment(3, h0_default_config()).value;
  const double d4 = h0_min_entropy_experiment(4, h0_default_config()).value;
  const bool probe = d4 >= kLog2 - 1e-3;
  return {std::abs(d2 - kLog2) <= 1e-15 && std::abs(d3 - kLog2) <= 1e-3,
          "d=2 " + fmt("%.15f", d2) + ", d=3 " + fmt("%.9f", d3) + ", d=4 " + fmt("%.9f", d4) +
              (probe ? " (>= log 2 - 1e-3)" : " (below log 2 - 1e-3, non-fatal)")};
}

Outcome determinism() {
  const std::string a = format_reports(run_verify("all", 50, 7));
  const std::string b = format_reports(run_verify("all", 50, 7));
  return {a == b && !a.empty(), std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Wootters anchors", wootters_anchors},
      {"closed form vs solver", closed_form_vs_solver},
      {"flat decomposition contract", flat_decompositions},
      {"diagonal qubit channel", diagonal_channel},
      {"subtraction weights", subtraction_weights},
      {"axial grid cross-validation", axial_grid},
      {"bound inequalities", bound_inequalities},
      {"embedding relation", embedding_relation},
      {"H0 experiment", h0_experiment},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
