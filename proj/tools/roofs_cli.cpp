// roofs: entanglement roofs from the command line.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>

#include "roofs/antilinear.hpp"
#include "roofs/diagonal_sym.hpp"
#include "roofs/error.hpp"
#include "roofs/json_io.hpp"
#include "roofs/measures.hpp"
#include "roofs/qubit_maps.hpp"
#include "roofs/random.hpp"
#include "roofs/roof_solver.hpp"
#include "roofs/verify.hpp"

using namespace roofs;
using io::json;

namespace {

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse:
    case ErrorKind::ConfigError:
      return 2;
    case ErrorKind::DimMismatch:
    case ErrorKind::ShapeMismatch:
      return 3;
    default:
      return 4;
  }
}

std::string g12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw Error(ErrorKind::Parse, "cannot write " + out_path);
  out << text;
}

struct SolverFlags {
  int restarts = 32;
  int length = 0;
  int max_iters = 2000;
  std::uint64_t seed = 0;

  void attach(CLI::App* app) {
    app->add_option("--restarts", restarts, "Random restarts")->capture_default_str();
    app->add_option("--length", length, "Decomposition length (0: dim^2)")->capture_default_str();
    app->add_option("--max-iters", max_iters, "Iterations per restart")->capture_default_str();
    app->add_option("--seed", seed, "Seed for all randomness")->capture_default_str();
  }
  SolverConfig config() const {
    SolverConfig cfg;
    cfg.restarts = restarts;
    cfg.length = length;
    cfg.max_iters = max_iters;
    cfg.seed = seed;
    return cfg;
  }
};

std::optional<QubitMap> load_map(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return io::map_from_json(io::read_json_file(path));
}

MeasureReport run_measure(const DensityOperator& rho, const std::optional<QubitMap>& map,
                          const std::string& quantity, const SolverConfig& cfg) {
  if (quantity == "concurrence") {
    if (map) {
      if (rho.dim() != 2) throw Error(ErrorKind::DimMismatch, "qubit map needs a qubit state");
      return {"concurrence", map_concurrence(*map, rho)};
    }
    return concurrence_2qubit(rho);
  }
  if (quantity == "tangle") {
    if (!map) {
      MeasureReport r = concurrence_2qubit(rho);
      r.quantity = "tangle";
      r.value *= r.value;
      return r;
    }
    if (rho.dim() != 2) throw Error(ErrorKind::DimMismatch, "qubit map needs a qubit state");
    if (map->is_axial()) {
      const AxialParams& p = map->axial_params();
      return {"tangle", axial_tangle(p.alpha, p.beta, p.gamma, rho)};
    }
    MeasureReport r{"tangle", 0.0, Method::Solver};
    RoofResult res = minimize_roof(det_objective(*map), rho, cfg);
    r.value = 4.0 * res.value;
    r.decomposition = std::move(res.decomposition);
    return r;
  }
  if (quantity == "eof") {
    if (map) return channel_entanglement(*map, rho, cfg);
    return eof_2qubit(rho);
  }
  if (quantity == "ed") {
    if (rho.dim() == 2) {
      MeasureReport r{"ed", ed_qubit(rho)};
      r.decomposition = ed_qubit_flat_pair(rho);
      return r;
    }
    MeasureReport r{"ed", 0.0, Method::Solver};
    RoofResult res = minimize_roof(diag_entropy_objective(rho.dim()), rho, cfg);
    r.value = res.value;
    r.decomposition = std::move(res.decomposition);
    r.bounds = Bounds{0.0, diag_entropy(rho)};
    return r;
  }
  if (!map) throw Error(ErrorKind::ConfigError, "entropy-out needs --map");
  return channel_entanglement(*map, rho, cfg);
}

int cmd_measure(const std::string& state_path, const std::string& map_path, const std::string& quantity,
                const std::string& base, const SolverConfig& cfg) {
  const DensityOperator rho = io::state_from_json(io::read_json_file(state_path));
  MeasureReport r = run_measure(rho, load_map(map_path), quantity, cfg);
  const bool entropic = quantity == "eof" || quantity == "ed" || quantity == "entropy-out";
  if (entropic && base == "2") {
    const double s = 1.0 / std::numbers::ln2;
    r.value *= s;
    if (r.bounds) r.bounds = Bounds{r.bounds->lower * s, r.bounds->upper * s};
  }
  json out = io::report_to_json(r);
  if (entropic) out["base"] = base;
  std::cout << out.dump(2) << "\n";
  return 0;
}

RoofObjective pick_objective(const std::string& name, const std::optional<QubitMap>& map, int dim) {
  if (name == "diag-entropy") return diag_entropy_objective(dim);
  if (map) {
    if (name == "sqrt-det") return sqrt_det_objective(*map);
    if (name == "det") return det_objective(*map);
    return output_entropy_objective(*map);
  }
  if (dim % 2 != 0) throw Error(ErrorKind::DimMismatch, "without --map the state must live on C^2 (x) C^k");
  const QubitOutputChannel pt = QubitOutputChannel::partial_trace(dim / 2);
  if (name == "sqrt-det") return sqrt_det_objective(pt);
  if (name == "det") return det_objective(pt);
  return output_entropy_objective(pt);
}

int cmd_solve(const std::string& state_path, const std::string& map_path, const std::string& objective,
              const std::string& mode, const SolverConfig& cfg) {
  const DensityOperator rho = io::state_from_json(io::read_json_file(state_path));
  const RoofObjective g = pick_objective(objective, load_map(map_path), rho.dim());
  const RoofResult res = mode == "max" ? maximize_roof(g, rho, cfg) : minimize_roof(g, rho, cfg);
  json out = {{"objective", objective}, {"mode", mode}, {"value", res.value},
              {"decomposition", io::decomposition_to_json(res.decomposition)}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_decompose(const std::string& state_path, const std::string& map_path, const std::string& kind) {
  const DensityOperator rho = io::state_from_json(io::read_json_file(state_path));
  PureDecomposition dec;
  json out = {{"kind", kind}};
  if (kind == "wootters" || kind == "wootters-concave") {
    if (rho.dim() != 4) throw Error(ErrorKind::DimMismatch, "Wootters decompositions need a 4 x 4 state");
    dec = flat_optimal_decomposition(partial_trace_theta(), rho,
                                     kind == "wootters" ? RoofMode::Convex : RoofMode::Concave);
  } else if (kind == "length-two") {
    const std::optional<QubitMap> map = load_map(map_path);
    if (!map) throw Error(ErrorKind::ConfigError, "length-two needs --map");
    const LengthTwoResult r = length_two_decomposition(*map, rho);
    dec = r.decomposition;
    out["degenerate_pencil"] = r.degenerate_pencil;
  } else {
    dec = ed_qubit_flat_pair(rho);
  }
  out["decomposition"] = io::decomposition_to_json(dec);
  out["reconstruction_error"] = reconstruction_error(dec, rho.matrix());
  std::cout << out.dump(2) << "\n";
  return 0;
}

int pencil_rank(const QuadraticFormPencil& pen, double w) {
  const Eigen::Matrix4d q = pen.at(w);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(q, Eigen::EigenvaluesOnly);
  const double cut = 1e-9 * std::max(1.0, q.cwiseAbs().maxCoeff());
  int rank = 0;
  for (int k = 0; k < 4; ++k) rank += std::abs(es.eigenvalues()(k)) > cut ? 1 : 0;
  return rank;
}

int cmd_sweep_axial(double alpha, double gamma, int steps, const std::string& state_path, const std::string& out_path) {
  if (steps < 1) throw Error(ErrorKind::ConfigError, "--beta-steps must be >= 1");
  const DensityOperator rho = io::state_from_json(io::read_json_file(state_path));
  if (rho.dim() != 2) throw Error(ErrorKind::DimMismatch, "axial sweeps need a qubit state");
  const double bmax = std::sqrt(AxialParams{alpha, 0.0, gamma}.beta_sq_max());
  std::vector<std::string> rows(static_cast<std::size_t>(steps));
  // Build every map up front so parameter errors surface before any output.
  std::vector<QubitMap> maps;
  for (int k = 0; k < steps; ++k)
    maps.push_back(QubitMap::axial(alpha, steps == 1 ? 0.0 : bmax * k / (steps - 1), gamma));
#pragma omp parallel for schedule(static)
  for (int k = 0; k < steps; ++k) {
    const QubitMap& t = maps[static_cast<std::size_t>(k)];
    const double beta = t.axial_params().beta;
    const QuadraticFormPencil pen = det_t_form(t);
    const SubtractionWeight w = subtraction_weight(pen);
    const double c = std::sqrt(concurrence_sq(t, w, rho));
    const double tau = axial_tangle(alpha, beta, gamma, rho);
    rows[static_cast<std::size_t>(k)] = g12(beta) + "," + g12(w.w) + "," + g12(c) + "," + g12(tau) + "," +
                                        (pencil_rank(pen, w.w) <= 1 ? "1" : "0") + "\n";
  }
  std::string csv = "beta,w,concurrence,tangle,affine\n";
  for (const std::string& r : rows) csv += r;
  emit(csv, out_path);
  return 0;
}

int cmd_sweep_isotropic(int dim, int steps, const std::string& base, const SolverConfig& cfg,
                        const std::string& out_path) {
  if (steps < 1) throw Error(ErrorKind::ConfigError, "--steps must be >= 1");
  const double scale = base == "2" ? 1.0 / std::numbers::ln2 : 1.0;
  std::string csv = "fidelity,x,ed,diag_entropy\n";
  for (int k = 0; k < steps; ++k) {
    const double f = steps == 1 ? 1.0 : static_cast<double>(k) / (steps - 1);
    const IsotropicState iso = isotropic_state(dim, f);
    SolverConfig c = cfg;
    c.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(k));
    const double ed = minimize_roof(diag_entropy_objective(dim), iso.state, c).value;
    csv += g12(f) + "," + g12(iso.x) + "," + g12(ed * scale) + "," + g12(diag_entropy(iso.state) * scale) + "\n";
    std::cerr << "sweep-isotropic: F = " << g12(f) << " done\n";
  }
  emit(csv, out_path);
  return 0;
}

int cmd_verify(const std::string& suite, int trials, std::uint64_t seed) {
  const std::vector<SuiteReport> reports = run_verify(suite, trials, seed);
  std::cout << format_reports(reports);
  for (const SuiteReport& r : reports)
    if (r.failures() > 0) return 1;
  return 0;
}

int cmd_h0(int dim, const SolverConfig& cfg) {
  const H0Result r = h0_min_entropy_experiment(dim, cfg);
  json state = json::array();
  for (Eigen::Index k = 0; k < r.argmin.vector().size(); ++k)
    state.push_back({r.argmin.vector()(k).real(), r.argmin.vector()(k).imag()});
  json out = {{"dim", dim}, {"value", r.value}, {"log2", std::numbers::ln2}, {"gap", r.value - std::numbers::ln2},
              {"argmin", state}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex and concave roofs: concurrence, tangle, entanglement of formation"};
  app.require_subcommand(1);

  std::string state_path, map_path, quantity = "concurrence", base = "e", out_path;
  std::string objective = "sqrt-det", mode = "min", kind = "wootters", suite = "all";
  double alpha = 1.0, gamma = 1.0;
  int steps = 11, trials = 100, dim = 3;
  std::uint64_t seed = 0;
  SolverFlags solver;

  auto* measure = app.add_subcommand("measure", "Compute one measure and print a JSON report");
  measure->add_option("--state", state_path, "State JSON")->required();
  measure->add_option("--map", map_path, "Map JSON");
  measure->add_option("--quantity", quantity)
      ->check(CLI::IsMember({"concurrence", "tangle", "eof", "ed", "entropy-out"}))
      ->capture_default_str();
  measure->add_option("--base", base, "Logarithm base for entropies")->check(CLI::IsMember({"e", "2"}))->capture_default_str();
  solver.attach(measure);

  auto* solve = app.add_subcommand("solve", "Run the roof solver");
  solve->add_option("--state", state_path, "State JSON")->required();
  solve->add_option("--map", map_path, "Map JSON (default: trace over the second factor)");
  solve->add_option("--objective", objective)
      ->check(CLI::IsMember({"sqrt-det", "det", "entropy-out", "diag-entropy"}))
      ->capture_default_str();
  solve->add_option("--mode", mode)->check(CLI::IsMember({"min", "max"}))->capture_default_str();
  solver.attach(solve);

  auto* decompose = app.add_subcommand("decompose", "Print an optimal decomposition");
  decompose->add_option("--state", state_path, "State JSON")->required();
  decompose->add_option("--map", map_path, "Map JSON (length-two only)");
  decompose->add_option("--kind", kind)
      ->check(CLI::IsMember({"wootters", "wootters-concave", "length-two", "ed-pair"}))
      ->capture_default_str();

  auto* sweep_axial = app.add_subcommand("sweep-axial", "CSV sweep over beta for an axial map");
  sweep_axial->add_option("--alpha", alpha)->required();
  sweep_axial->add_option("--gamma", gamma)->required();
  sweep_axial->add_option("--beta-steps", steps)->required();
  sweep_axial->add_option("--state", state_path, "Qubit state JSON")->required();
  sweep_axial->add_option("--out", out_path, "CSV path (default: stdout)");

  auto* sweep_iso = app.add_subcommand("sweep-isotropic", "CSV sweep of E_D over the fidelity of isotropic states");
  sweep_iso->add_option("--dim", dim)->capture_default_str();
  sweep_iso->add_option("--steps", steps)->capture_default_str();
  sweep_iso->add_option("--base", base)->check(CLI::IsMember({"e", "2"}))->capture_default_str();
  sweep_iso->add_option("--out", out_path, "CSV path (default: stdout)");
  solver.attach(sweep_iso);

  auto* verify = app.add_subcommand("verify", "Run property suites");
  verify->add_option("--suite", suite)
      ->check(CLI::IsMember({"wootters", "subtraction", "diagonal", "bounds", "all"}))
      ->capture_default_str();
  verify->add_option("--trials", trials)->capture_default_str();
  verify->add_option("--seed", seed)->capture_default_str();

  auto* h0 = app.add_subcommand("h0-experiment", "Minimal diagonal entropy on the sum-zero subspace");
  h0->add_option("--dim", dim)->capture_default_str();
  SolverFlags h0_solver;
  h0_solver.restarts = 64;
  h0_solver.attach(h0);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*measure) return cmd_measure(state_path, map_path, quantity, base, solver.config());
    if (*solve) return cmd_solve(state_path, map_path, objective, mode, solver.config());
    if (*decompose) return cmd_decompose(state_path, map_path, kind);
    if (*sweep_axial) return cmd_sweep_axial(alpha, gamma, steps, state_path, out_path);
    if (*sweep_iso) return cmd_sweep_isotropic(dim, steps, base, solver.config(), out_path);
    if (*verify) return cmd_verify(suite, trials, seed);
    return cmd_h0(dim, h0_solver.config());
  } catch (const Error& e) {
    std::cerr << "roofs: " << e.what() << "\n";
    return exit_code(e.kind());
  }
}
