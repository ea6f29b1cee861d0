#include "roofs/qubit_maps.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "roofs/error.hpp"
#include "roofs/random.hpp"

namespace roofs {

namespace {

constexpr double kParamTol = 1e-12;
constexpr int kPositivitySamples = 200;
constexpr std::uint64_t kPositivitySeed = 0x51A7E5EEDULL;

Eigen::Vector4d bloch_coords(const CMatrix& x) {
  Eigen::Vector4d v;
  for (int k = 0; k < 4; ++k) v(k) = (pauli(k) * x).trace().real();
  return v;
}

CVector bloch_pure_vector(const Eigen::Vector3d& n) {
  const CMatrix p = bloch_matrix(1.0, n(0), n(1), n(2));
  // The column with the larger norm is a nonzero multiple of the eigenvector.
  const Eigen::Index col = p.col(0).norm() >= p.col(1).norm() ? 0 : 1;
  const CVector v = p.col(col);
  return v / v.norm();
}

}  // namespace

double AxialParams::beta_sq_max() const {
  return 1.0 + 2.0 * alpha * gamma - alpha - gamma +
         2.0 * std::sqrt(std::max(0.0, alpha * (1.0 - alpha) * gamma * (1.0 - gamma)));
}

double AxialParams::beta_crit() const {
  return 1.0 + 2.0 * alpha * gamma - alpha - gamma -
         2.0 * std::sqrt(std::max(0.0, alpha * (1.0 - alpha) * gamma * (1.0 - gamma)));
}

QubitMap QubitMap::kraus(std::vector<CMatrix> ops) {
  if (ops.empty()) throw Error(ErrorKind::ShapeMismatch, "Kraus list is empty");
  CMatrix sum = CMatrix::Zero(2, 2);
  for (const CMatrix& a : ops) {
    if (a.rows() != 2 || a.cols() != 2) throw Error(ErrorKind::ShapeMismatch, "qubit Kraus operators must be 2 x 2");
    sum += a.adjoint() * a;
  }
  const double dev = max_abs(sum - CMatrix::Identity(2, 2));
  if (dev > 1e-10) {
    std::ostringstream os;
    os << "sum A^dagger A deviates from identity by " << dev;
    throw Error(ErrorKind::NotTracePreserving, os.str());
  }
  return QubitMap(Kraus{std::move(ops)});
}

QubitMap QubitMap::axial(double alpha, double beta, double gamma) {
  AxialParams p{alpha, beta, gamma};
  std::ostringstream os;
  if (alpha < -kParamTol || alpha > 1.0 + kParamTol) os << "alpha outside [0, 1]: " << alpha;
  else if (gamma < -kParamTol || gamma > 1.0 + kParamTol) os << "gamma outside [0, 1]: " << gamma;
  else if (beta * beta > p.beta_sq_max() + kParamTol)
    os << "beta^2 = " << beta * beta << " exceeds beta_max^2 = " << p.beta_sq_max();
  if (!os.str().empty()) throw Error(ErrorKind::InvalidAxial, os.str());
  p.alpha = std::clamp(alpha, 0.0, 1.0);
  p.gamma = std::clamp(gamma, 0.0, 1.0);
  return QubitMap(p);
}

QubitMap QubitMap::affine(const Affine& m) {
  const Eigen::RowVector4d trace_row(1.0, 0.0, 0.0, 0.0);
  const double dev = (m.row(0) - trace_row).cwiseAbs().maxCoeff();
  if (dev > 1e-10) {
    std::ostringstream os;
    os << "first row must be (1, 0, 0, 0); deviation " << dev;
    throw Error(ErrorKind::NotTracePreserving, os.str());
  }
  QubitMap t(m);
  Rng rng(kPositivitySeed);
  for (int i = 0; i < kPositivitySamples; ++i) {
    const CVector psi = rng.haar_vector(2);
    const double ev = hermitian_eigenvalues(t.apply(psi * psi.adjoint()))(0);
    if (ev < -1e-9) {
      std::ostringstream os;
      os << "output of a pure input has eigenvalue " << ev;
      throw Error(ErrorKind::NotPositive, os.str());
    }
  }
  return t;
}

CMatrix QubitMap::apply(const CMatrix& x) const {
  if (x.rows() != 2 || x.cols() != 2) throw Error(ErrorKind::DimMismatch, "qubit maps act on 2 x 2 matrices");
  if (const auto* k = std::get_if<Kraus>(&rep_)) {
    CMatrix y = CMatrix::Zero(2, 2);
    for (const CMatrix& a : k->ops) y += a * x * a.adjoint();
    return y;
  }
  if (const auto* p = std::get_if<AxialParams>(&rep_)) {
    CMatrix y(2, 2);
    y(0, 0) = p->alpha * x(0, 0) + (1.0 - p->gamma) * x(1, 1);
    y(1, 1) = p->gamma * x(1, 1) + (1.0 - p->alpha) * x(0, 0);
    y(0, 1) = p->beta * x(0, 1);
    y(1, 0) = p->beta * x(1, 0);
    return y;
  }
  const Affine& m = std::get<Affine>(rep_);
  Eigen::Vector4cd xin;
  for (int k = 0; k < 4; ++k) xin(k) = (pauli(k) * x).trace();
  const Eigen::Vector4cd yout = m.cast<cplx>() * xin;
  CMatrix y = CMatrix::Zero(2, 2);
  for (int k = 0; k < 4; ++k) y += 0.5 * yout(k) * pauli(k);
  return y;
}

QubitMap::Affine QubitMap::to_affine() const {
  if (const auto* m = std::get_if<Affine>(&rep_)) return *m;
  Affine out;
  for (int k = 0; k < 4; ++k) out.col(k) = bloch_coords(apply(0.5 * pauli(k)));
  return out;
}

CMatrix apply_map(const QubitMap& t, const CMatrix& x) { return t.apply(x); }

cplx det2(const CMatrix& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

double QuadraticFormPencil::min_eigenvalue(double w) const {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(at(w), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

QuadraticFormPencil det_t_form(const QubitMap& t) {
  auto f = [&](const Eigen::Vector4d& x) {
    return det2(t.apply(bloch_matrix(x(0), x(1), x(2), x(3)))).real();
  };
  QuadraticFormPencil pen;
  std::array<double, 4> diag{};
  for (int i = 0; i < 4; ++i) diag[i] = f(Eigen::Vector4d::Unit(i));
  for (int i = 0; i < 4; ++i) {
    pen.q_t(i, i) = diag[i];
    for (int j = i + 1; j < 4; ++j) {
      const double v = 0.5 * (f(Eigen::Vector4d::Unit(i) + Eigen::Vector4d::Unit(j)) - diag[i] - diag[j]);
      pen.q_t(i, j) = v;
      pen.q_t(j, i) = v;
    }
  }
  pen.q_det = Eigen::Vector4d(0.25, -0.25, -0.25, -0.25).asDiagonal();
  return pen;
}

SubtractionWeight subtraction_weight(const QuadraticFormPencil& pen) {
  constexpr int kIters = 80;
  // lambda_min(w) is concave; its slope is -v^T q_det v for the bottom eigenvector v.
  auto slope = [&](double w) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(pen.at(w));
    const Eigen::Vector4d v = es.eigenvectors().col(0);
    return -v.dot(pen.q_det * v);
  };
  double peak;
  if (slope(0.0) <= 0.0) {
    peak = 0.0;
  } else if (slope(1.0) >= 0.0) {
    peak = 1.0;
  } else {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < kIters; ++i) {
      const double mid = 0.5 * (lo + hi);
      (slope(mid) > 0.0 ? lo : hi) = mid;
    }
    peak = 0.5 * (lo + hi);
  }

  const double scale = std::max(1.0, pen.q_t.cwiseAbs().maxCoeff());
  const double top = pen.min_eigenvalue(peak);
  if (top < -1e-9 * scale) {
    std::ostringstream os;
    os << "q_T - w q_det is not PSD for any w in [0, 1]; best minimum eigenvalue " << top;
    throw Error(ErrorKind::EmptyInterval, os.str());
  }
  // A touching (single-point) interval: the peak itself is the weight.
  if (top <= 1e-14 * scale) return {peak, peak, peak};

  SubtractionWeight out;
  if (pen.min_eigenvalue(0.0) >= 0.0) {
    out.w_lo = 0.0;
  } else {
    double lo = 0.0, hi = peak;
    for (int i = 0; i < kIters; ++i) {
      const double mid = 0.5 * (lo + hi);
      (pen.min_eigenvalue(mid) >= 0.0 ? hi : lo) = mid;
    }
    out.w_lo = hi;
  }
  if (pen.min_eigenvalue(1.0) >= 0.0) {
    out.w_hi = 1.0;
  } else {
    double lo = peak, hi = 1.0;
    for (int i = 0; i < kIters; ++i) {
      const double mid = 0.5 * (lo + hi);
      (pen.min_eigenvalue(mid) >= 0.0 ? lo : hi) = mid;
    }
    out.w_hi = lo;
  }
  out.w = out.w_lo;
  return out;
}

SubtractionWeight subtraction_weight(const QubitMap& t) { return subtraction_weight(det_t_form(t)); }

double concurrence_sq(const QubitMap& t, const SubtractionWeight& w, const DensityOperator& rho) {
  if (rho.dim() != 2) throw Error(ErrorKind::DimMismatch, "qubit map needs a qubit state");
  const double v = det2(t.apply(rho.matrix())).real() - w.w * det2(rho.matrix()).real();
  return 4.0 * std::max(0.0, v);
}

double concurrence_sq(const QubitMap& t, const DensityOperator& rho) {
  return concurrence_sq(t, subtraction_weight(t), rho);
}

double axial_concurrence_weight(double alpha, double beta, double gamma) {
  const AxialParams p{alpha, beta, gamma};
  return std::max(beta * beta, p.beta_crit());
}

TangleCase axial_tangle_case(double alpha, double beta, double gamma) {
  const double b = std::abs(alpha + gamma - 1.0);
  const double gap = std::abs(beta) - b;
  if (std::abs(gap) <= 1e-12) return TangleCase::B;
  return gap > 0.0 ? TangleCase::A : TangleCase::C;
}

double axial_tangle(double alpha, double beta, double gamma, const DensityOperator& rho) {
  const BlochVector x = qubit_to_bloch(rho);
  const double a = alpha - gamma;
  const double b = alpha + gamma - 1.0;
  const double b2 = beta * beta;
  double tau = 0.0;
  switch (axial_tangle_case(alpha, beta, gamma)) {
    case TangleCase::A:
      tau = 1.0 - b2 - a * a - 2.0 * a * b * x.x3 + (b2 - b * b) * x.x3 * x.x3;
      break;
    case TangleCase::B:
      tau = 1.0 - b2 - a * a - 2.0 * a * b * x.x3;
      break;
    case TangleCase::C:
      tau = 1.0 - b * b - a * a - 2.0 * a * b * x.x3 + (b * b - b2) * (x.x1 * x.x1 + x.x2 * x.x2);
      break;
  }
  return std::max(0.0, tau);
}

namespace {

void check_standard_form(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != 2 || a.cols() != 2 || b.rows() != 2 || b.cols() != 2)
    throw Error(ErrorKind::ShapeMismatch, "standard-form Kraus pair must be 2 x 2");
  const double off = std::max({std::abs(a(0, 1)), std::abs(a(1, 0)), std::abs(b(0, 0)), std::abs(b(1, 1))});
  if (off > 1e-12) {
    std::ostringstream os;
    os << "need A diagonal and B anti-diagonal; stray entry magnitude " << off;
    throw Error(ErrorKind::NotStandardForm, os.str());
  }
  const double dev = max_abs(a.adjoint() * a + b.adjoint() * b - CMatrix::Identity(2, 2));
  if (dev > 1e-10) {
    std::ostringstream os;
    os << "A^dagger A + B^dagger B deviates from identity by " << dev;
    throw Error(ErrorKind::NotTracePreserving, os.str());
  }
}

}  // namespace

double two_kraus_seminorm(const CMatrix& a, const CMatrix& b, const CMatrix& x) {
  check_standard_form(a, b);
  if (x.rows() != 2 || x.cols() != 2) throw Error(ErrorKind::DimMismatch, "argument must be 2 x 2");
  const QubitMap t = QubitMap::kraus({a, b});
  const QuadraticFormPencil pen = det_t_form(t);
  const SubtractionWeight w = subtraction_weight(pen);
  const Eigen::Vector4d v = bloch_coords(0.5 * (x + x.adjoint()));
  return 2.0 * std::sqrt(std::max(0.0, v.dot(pen.at(w.w) * v)));
}

double two_kraus_linear_formula(const CMatrix& a, const CMatrix& b, const CMatrix& x) {
  check_standard_form(a, b);
  const cplx a00 = a(0, 0), a11 = a(1, 1), b01 = b(0, 1), b10 = b(1, 0);
  const cplx z = std::sqrt(std::conj(a00) * a11 * b01 * std::conj(b10));
  const cplx v = std::abs(b10 * a00) * x(0, 0) + std::abs(b01 * a11) * x(1, 1) + z * x(1, 0) - std::conj(z) * x(0, 1);
  return 2.0 * std::abs(v);
}

double concurrence_general_two_kraus(const AntiLinearHermitian& theta, const DensityOperator& omega) {
  if (omega.dim() != 2) throw Error(ErrorKind::DimMismatch, "two-eigenvalue formula is for qubit inputs");
  const std::vector<double> lam = lambda_spectrum(theta, omega);
  return 2.0 * std::abs(lam[0] - lam[1]);
}

double concurrence_two_kraus_trace_form(const AntiLinearHermitian& theta, const DensityOperator& omega) {
  if (omega.dim() != 2) throw Error(ErrorKind::DimMismatch, "two-eigenvalue formula is for qubit inputs");
  const CMatrix bm = sandwiched_matrix(theta, omega);
  const double tr = (bm * bm.conjugate()).trace().real();
  const double dets = det2(omega.matrix()).real() * std::abs(det2(theta.matrix()));
  return 2.0 * std::sqrt(std::max(0.0, tr - 2.0 * dets));
}

LengthTwoResult length_two_decomposition(const QubitMap& t, const DensityOperator& rho) {
  if (rho.dim() != 2) throw Error(ErrorKind::DimMismatch, "qubit map needs a qubit state");
  LengthTwoResult out;
  if (rho.rank() == 1) {
    out.decomposition.weights = {1.0};
    out.decomposition.states = {PureState::normalized(rho.eigenvectors().col(0))};
    return out;
  }

  const QuadraticFormPencil pen = det_t_form(t);
  const SubtractionWeight w = subtraction_weight(pen);
  const Eigen::Matrix4d q = pen.at(w.w);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(q);
  const double null_tol = 1e-9 * std::max(1.0, q.cwiseAbs().maxCoeff());
  int null_dim = 0;
  while (null_dim < 4 && std::abs(es.eigenvalues()(null_dim)) <= null_tol) ++null_dim;

  Eigen::Vector4d nu = es.eigenvectors().col(0);
  if (null_dim > 1) {
    // Prefer a traceless null direction: the form is then constant along the line.
    out.degenerate_pencil = true;
    const Eigen::Vector4d n0 = es.eigenvectors().col(0);
    const Eigen::Vector4d n1 = es.eigenvectors().col(1);
    nu = n1(0) * n0 - n0(0) * n1;
    if (nu.norm() < 1e-12) nu = n0;
    nu.normalize();
  }

  const BlochVector rb = qubit_to_bloch(rho);
  const Eigen::Vector3d r(rb.x1, rb.x2, rb.x3);
  Eigen::Vector3d dir;
  if (std::abs(nu(0)) <= 1e-12) {
    dir = nu.tail<3>();
  } else {
    dir = nu.tail<3>() / nu(0) - r;
  }
  if (dir.norm() < 1e-12) {
    // rho sits on the null point itself; any chord through it is a leaf of C = 0.
    out.degenerate_pencil = true;
    dir = Eigen::Vector3d::UnitZ();
  }

  const double qa = dir.squaredNorm();
  const double qb = 2.0 * r.dot(dir);
  const double qc = r.squaredNorm() - 1.0;
  const double disc = std::sqrt(std::max(0.0, qb * qb - 4.0 * qa * qc));
  const double s_plus = (-qb + disc) / (2.0 * qa);
  const double s_minus = (-qb - disc) / (2.0 * qa);
  const Eigen::Vector3d p_plus = r + s_plus * dir;
  const Eigen::Vector3d p_minus = r + s_minus * dir;
  const double weight_plus = -s_minus / (s_plus - s_minus);

  out.decomposition.weights = {weight_plus, 1.0 - weight_plus};
  out.decomposition.states = {PureState(bloch_pure_vector(p_plus.normalized())),
                              PureState(bloch_pure_vector(p_minus.normalized()))};
  return out;
}

}  // namespace roofs
