#include "roofs/roof_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "roofs/error.hpp"
#include "roofs/random.hpp"

namespace roofs {

QubitOutputChannel::QubitOutputChannel(std::vector<CMatrix> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw Error(ErrorKind::ShapeMismatch, "Kraus list is empty");
  const Eigen::Index d = ops_.front().cols();
  CMatrix sum = CMatrix::Zero(d, d);
  for (const CMatrix& a : ops_) {
    if (a.rows() != 2 || a.cols() != d) throw Error(ErrorKind::ShapeMismatch, "Kraus operators must all be 2 x d");
    sum += a.adjoint() * a;
  }
  const double dev = max_abs(sum - CMatrix::Identity(d, d));
  if (dev > 1e-10) {
    std::ostringstream os;
    os << "sum A^dagger A deviates from identity by " << dev;
    throw Error(ErrorKind::NotTracePreserving, os.str());
  }
}

QubitOutputChannel QubitOutputChannel::partial_trace(int db) {
  if (db < 1) throw Error(ErrorKind::DimMismatch, "second factor needs dimension >= 1");
  std::vector<CMatrix> ops;
  for (int k = 0; k < db; ++k) {
    CMatrix a = CMatrix::Zero(2, 2 * db);
    a(0, k) = 1.0;
    a(1, db + k) = 1.0;
    ops.push_back(a);
  }
  return QubitOutputChannel(std::move(ops));
}

CMatrix QubitOutputChannel::apply(const CMatrix& x) const {
  if (x.rows() != input_dim() || x.cols() != input_dim())
    throw Error(ErrorKind::DimMismatch, "input does not match the channel's input dimension");
  CMatrix y = CMatrix::Zero(2, 2);
  for (const CMatrix& a : ops_) y += a * x * a.adjoint();
  return y;
}

CMatrix QubitOutputChannel::apply_pure(const CVector& psi) const {
  CMatrix y = CMatrix::Zero(2, 2);
  for (const CMatrix& a : ops_) {
    const CVector v = a * psi;
    y += v * v.adjoint();
  }
  return y;
}

double QubitOutputChannel::pure_det(const CVector& psi) const {
  CMatrix m(2, static_cast<Eigen::Index>(ops_.size()));
  for (std::size_t k = 0; k < ops_.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = ops_[k] * psi;
  double det = 0.0;
  for (Eigen::Index i = 0; i < m.cols(); ++i)
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) det += std::norm(m(0, i) * m(1, j) - m(0, j) * m(1, i));
  return det;
}

namespace {

double qubit_entropy(const CMatrix& y) {
  const double t = y.trace().real();
  const double disc = std::sqrt(std::max(0.0, t * t - 4.0 * det2(y).real()));
  return eta(0.5 * (t + disc)) + eta(0.5 * (t - disc));
}

void check_dim(const CVector& psi, int dim) {
  if (psi.size() != dim) throw Error(ErrorKind::DimMismatch, "objective evaluated on a vector of the wrong dimension");
}

}  // namespace

RoofObjective sqrt_det_objective(const QubitOutputChannel& t) {
  return {t.input_dim(), [t](const CVector& psi) { return std::sqrt(t.pure_det(psi)); }};
}

RoofObjective sqrt_det_objective(const QubitMap& t) {
  return {2, [t](const CVector& psi) {
            check_dim(psi, 2);
            return std::sqrt(std::max(0.0, det2(t.apply(psi * psi.adjoint())).real()));
          }};
}

RoofObjective det_objective(const QubitOutputChannel& t) {
  return {t.input_dim(), [t](const CVector& psi) { return t.pure_det(psi); }};
}

RoofObjective det_objective(const QubitMap& t) {
  return {2, [t](const CVector& psi) {
            check_dim(psi, 2);
            return det2(t.apply(psi * psi.adjoint())).real();
          }};
}

RoofObjective output_entropy_objective(const QubitOutputChannel& t) {
  return {t.input_dim(), [t](const CVector& psi) { return qubit_entropy(t.apply_pure(psi)); }};
}

RoofObjective output_entropy_objective(const QubitMap& t) {
  return {2, [t](const CVector& psi) {
            check_dim(psi, 2);
            return qubit_entropy(t.apply(psi * psi.adjoint()));
          }};
}

RoofObjective diag_entropy_objective(int dim) {
  return {dim, [](const CVector& psi) {
            double s = 0.0;
            for (Eigen::Index j = 0; j < psi.size(); ++j) s += eta(std::norm(psi(j)));
            return s;
          }};
}

RoofObjective antilinear_abs_objective(const AntiLinearHermitian& theta) {
  return {theta.dim(), [theta](const CVector& psi) { return std::abs(theta.expectation(psi)); }};
}

RoofObjective compose(const RoofObjective& g, std::function<double(double)> f) {
  return {g.dim, [g, f = std::move(f)](const CVector& psi) { return f(g.evaluate(psi)); }};
}

namespace {

double inner(const CMatrix& a, const CMatrix& b) { return (a.adjoint() * b).trace().real(); }

/// Tangent projection at an isometry v: x - v sym(v^dagger x).
CMatrix project_tangent(const CMatrix& v, const CMatrix& x) {
  const CMatrix m = v.adjoint() * x;
  return x - v * (0.5 * (m + m.adjoint()));
}

void check_config(const SolverConfig& cfg) {
  std::ostringstream os;
  if (cfg.restarts < 1) os << "restarts must be >= 1, got " << cfg.restarts;
  else if (cfg.max_iters < 1) os << "max_iters must be >= 1, got " << cfg.max_iters;
  else if (cfg.length < 0) os << "length must be >= 0, got " << cfg.length;
  else if (!(cfg.tol >= 0.0)) os << "tol must be >= 0";
  else if (cfg.stall_iters < 1) os << "stall_iters must be >= 1, got " << cfg.stall_iters;
  if (!os.str().empty()) throw Error(ErrorKind::ConfigError, os.str());
}

/// Everything a single restart needs; immutable once built.
struct RoofSetup {
  RoofObjective g;
  double sign = 1.0;
  CMatrix s;  // dim x r, columns sqrt(q_k) e_k
  int length = 0;
  int rank = 0;

  double term(const CVector& phi) const {
    const double n2 = phi.squaredNorm();
    if (n2 < 1e-300) return 0.0;
    return sign * n2 * g.evaluate(phi / std::sqrt(n2));
  }

  double cost(const CMatrix& v) const {
    const CMatrix phi = s * v.transpose();
    double total = 0.0;
    for (Eigen::Index j = 0; j < phi.cols(); ++j) total += term(phi.col(j));
    return total;
  }

  // Each row of v feeds exactly one member, so differences are taken row by row.
  CMatrix gradient(const CMatrix& v) const {
    constexpr double h = 1e-6;
    CMatrix grad(v.rows(), v.cols());
    for (Eigen::Index j = 0; j < v.rows(); ++j) {
      CVector row = v.row(j).transpose();
      for (Eigen::Index k = 0; k < v.cols(); ++k) {
        const cplx keep = row(k);
        row(k) = keep + h;
        const double fp = term(s * row);
        row(k) = keep - h;
        const double fm = term(s * row);
        row(k) = keep + kI * h;
        const double gp = term(s * row);
        row(k) = keep - kI * h;
        const double gm = term(s * row);
        row(k) = keep;
        grad(j, k) = cplx((fp - fm) / (2.0 * h), (gp - gm) / (2.0 * h));
      }
    }
    return grad;
  }
};

RoofSetup make_setup(const RoofObjective& g, const DensityOperator& omega, const SolverConfig& cfg, double sign) {
  check_config(cfg);
  if (g.dim != omega.dim()) {
    std::ostringstream os;
    os << "objective dimension " << g.dim << " does not match state dimension " << omega.dim();
    throw Error(ErrorKind::DimMismatch, os.str());
  }
  RoofSetup st;
  st.g = g;
  st.sign = sign;
  st.rank = omega.rank();
  st.length = cfg.length == 0 ? omega.dim() * omega.dim() : cfg.length;
  if (st.length < st.rank) {
    std::ostringstream os;
    os << "length " << st.length << " is below the rank " << st.rank;
    throw Error(ErrorKind::ConfigError, os.str());
  }
  st.s.resize(omega.dim(), st.rank);
  for (int k = 0; k < st.rank; ++k)
    st.s.col(k) = std::sqrt(std::max(0.0, omega.eigenvalues()(k))) * omega.eigenvectors().col(k);
  return st;
}

StiefelResult run_restart(const RoofSetup& st, const SolverConfig& cfg, int index) {
  Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(index)));
  const CMatrix start = rng.haar_isometry(st.length, st.rank);
  StiefelProblem problem;
  problem.rows = st.length;
  problem.cols = st.rank;
  problem.cost = [&st](const CMatrix& v) { return st.cost(v); };
  problem.gradient = [&st](const CMatrix& v) { return st.gradient(v); };
  return optimize_stiefel(problem, start, cfg);
}

RoofResult pure_result(const RoofObjective& g, const DensityOperator& omega) {
  RoofResult out;
  out.decomposition = spectral_decomposition(omega);
  out.value = out.decomposition.average(g.evaluate);
  return out;
}

RoofResult finish(const RoofSetup& st, const DensityOperator& omega, const CMatrix& v) {
  RoofResult out;
  out.decomposition = decomposition_from_isometry(omega, v);
  out.value = out.decomposition.average(st.g.evaluate);
  return out;
}

// Lowest cost wins; ties go to the lower restart index.
std::size_t best_index(const std::vector<StiefelResult>& runs) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (runs[i].value < runs[best].value) best = i;
  return best;
}

RoofResult solve_parallel(const RoofObjective& g, const DensityOperator& omega, const SolverConfig& cfg, double sign) {
  const RoofSetup st = make_setup(g, omega, cfg, sign);
  if (st.rank == 1) return pure_result(g, omega);
  std::vector<StiefelResult> runs(static_cast<std::size_t>(cfg.restarts));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < cfg.restarts; ++i) runs[static_cast<std::size_t>(i)] = run_restart(st, cfg, i);
  return finish(st, omega, runs[best_index(runs)].point);
}

RoofResult solve_serial(const RoofObjective& g, const DensityOperator& omega, const SolverConfig& cfg, double sign) {
  const RoofSetup st = make_setup(g, omega, cfg, sign);
  if (st.rank == 1) return pure_result(g, omega);
  std::vector<StiefelResult> runs;
  runs.reserve(static_cast<std::size_t>(cfg.restarts));
  for (int i = 0; i < cfg.restarts; ++i) runs.push_back(run_restart(st, cfg, i));
  return finish(st, omega, runs[best_index(runs)].point);
}

}  // namespace

RoofResult minimize_roof(const RoofObjective& g, const DensityOperator& omega, const SolverConfig& cfg) {
  return solve_parallel(g, omega, cfg, 1.0);
}

RoofResult maximize_roof(const RoofObjective& g, const DensityOperator& omega, const SolverConfig& cfg) {
  return solve_parallel(g, omega, cfg, -1.0);
}

namespace serial {

RoofResult minimize_roof(const RoofObjective& g, const DensityOperator& omega, const SolverConfig& cfg) {
  return solve_serial(g, omega, cfg, 1.0);
}

RoofResult maximize_roof(const RoofObjective& g, const DensityOperator& omega, const SolverConfig& cfg) {
  return solve_serial(g, omega, cfg, -1.0);
}

}  // namespace serial

bool verify_roof_point(double g_value, const PureDecomposition& dec, const RoofObjective& g, double tol) {
  return std::abs(dec.average(g.evaluate) - g_value) <= tol;
}

double flatness_spread(const PureDecomposition& dec, const RoofObjective& g) {
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (std::size_t j = 0; j < dec.size(); ++j) {
    if (dec.weights[j] <= tol::kWeight) continue;
    const double v = g.evaluate(dec.states[j].vector());
    lo = any ? std::min(lo, v) : v;
    hi = any ? std::max(hi, v) : v;
    any = true;
  }
  return hi - lo;
}

bool flatness_check(const PureDecomposition& dec, const RoofObjective& g, double tol) {
  return flatness_spread(dec, g) <= tol;
}

CMatrix numeric_gradient(const std::function<double(const CMatrix&)>& cost, const CMatrix& v, double h) {
  CMatrix grad(v.rows(), v.cols());
  CMatrix w = v;
  for (Eigen::Index j = 0; j < v.rows(); ++j) {
    for (Eigen::Index k = 0; k < v.cols(); ++k) {
      const cplx keep = w(j, k);
      w(j, k) = keep + h;
      const double fp = cost(w);
      w(j, k) = keep - h;
      const double fm = cost(w);
      w(j, k) = keep + kI * h;
      const double gp = cost(w);
      w(j, k) = keep - kI * h;
      const double gm = cost(w);
      w(j, k) = keep;
      grad(j, k) = cplx((fp - fm) / (2.0 * h), (gp - gm) / (2.0 * h));
    }
  }
  return grad;
}

StiefelResult optimize_stiefel(const StiefelProblem& problem, const CMatrix& start, const SolverConfig& cfg) {
  if (start.rows() != problem.rows || start.cols() != problem.cols)
    throw Error(ErrorKind::ShapeMismatch, "start point does not match the problem shape");
  auto grad = [&](const CMatrix& v) {
    return problem.gradient ? problem.gradient(v) : numeric_gradient(problem.cost, v);
  };

  StiefelResult out;
  CMatrix v = polar_isometry(start);
  double f = problem.cost(v);
  CMatrix xi = project_tangent(v, grad(v));
  CMatrix dir = -xi;
  double step = 1.0;
  int stall = 0;
  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    const double g2 = inner(xi, xi);
    if (g2 < 1e-28) break;
    double slope = inner(xi, dir);
    if (slope >= 0.0) {
      dir = -xi;
      slope = -g2;
    }

    double t = step;
    CMatrix vn;
    double fn = f;
    bool accepted = false;
    for (int ls = 0; ls < 50; ++ls) {
      vn = polar_isometry(v + t * dir);
      fn = problem.cost(vn);
      if (fn <= f + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      if (slope == -g2) break;
      dir = -xi;
      ++stall;
      if (stall >= cfg.stall_iters) break;
      continue;
    }

    const double gain = f - fn;
    v = vn;
    f = fn;
    step = std::min(4.0 * t, 1e3);
    const CMatrix xin = project_tangent(v, grad(v));
    const CMatrix xi_moved = project_tangent(v, xi);
    const double beta = std::max(0.0, inner(xin, xin - xi_moved) / g2);
    dir = -xin + beta * project_tangent(v, dir);
    xi = xin;

    stall = gain < cfg.tol ? stall + 1 : 0;
    if (stall >= cfg.stall_iters) break;
  }
  out.value = f;
  out.point = v;
  out.iterations = it;
  return out;
}

}  // namespace roofs
