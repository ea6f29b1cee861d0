#include "roofs/antilinear.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "roofs/error.hpp"

namespace roofs {

AntiLinearHermitian::AntiLinearHermitian(const CMatrix& a) : a_(a) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw Error(ErrorKind::NotSquare, "anti-linear operator matrix must be square");
  const double dev = symmetry_defect(a);
  if (dev > 1e-10) {
    std::ostringstream os;
    os << "Hermitian anti-linear operators need A = A^T (max deviation " << dev << ")";
    throw Error(ErrorKind::NotSymmetric, os.str());
  }
  a_ = 0.5 * (a + a.transpose());
}

bool AntiLinearHermitian::is_conjugation(double tolerance) const {
  return max_abs(a_ * a_.conjugate() - CMatrix::Identity(dim(), dim())) < tolerance;
}

CMatrix spin_flip() {
  CMatrix f(2, 2);
  f << 0, 1, -1, 0;
  return f;
}

AntiLinearHermitian wootters_conjugation() {
  return AntiLinearHermitian(kron(spin_flip(), spin_flip()));
}

AntiLinearHermitian theta_from_kraus_pair(const CMatrix& a1, const CMatrix& a2) {
  if (a1.rows() != 2 || a2.rows() != 2 || a1.cols() != a2.cols() || a1.cols() == 0) {
    std::ostringstream os;
    os << "Kraus pair must both be 2 x d, got " << a1.rows() << "x" << a1.cols() << " and " << a2.rows() << "x"
       << a2.cols();
    throw Error(ErrorKind::ShapeMismatch, os.str());
  }
  const CMatrix f = spin_flip();
  const CMatrix m = 0.5 * (a1.adjoint() * f * a2.conjugate() - a2.adjoint() * f * a1.conjugate());
  return AntiLinearHermitian(m);
}

CMatrix sandwiched_matrix(const AntiLinearHermitian& theta, const DensityOperator& omega) {
  if (theta.dim() != omega.dim()) throw Error(ErrorKind::DimMismatch, "operator and state dimensions differ");
  const CMatrix r = psd_sqrt(omega);
  return r * theta.matrix() * r.transpose();
}

std::vector<double> lambda_spectrum(const AntiLinearHermitian& theta, const DensityOperator& omega) {
  const RVector s = singular_values(sandwiched_matrix(theta, omega));
  std::vector<double> out(s.data(), s.data() + s.size());
  out.resize(theta.dim(), 0.0);
  return out;
}

RoofValues roof_values_from_spectrum(const std::vector<double>& lambdas) {
  if (lambdas.empty()) return {};
  const double total = std::accumulate(lambdas.begin(), lambdas.end(), 0.0);
  const double lead = lambdas.front();
  return {std::max(0.0, lead - (total - lead)), total};
}

RoofValues roof_values(const AntiLinearHermitian& theta, const DensityOperator& omega) {
  return roof_values_from_spectrum(lambda_spectrum(theta, omega));
}

CMatrix TakagiFactorization::reconstruct() const {
  const Eigen::Index n = basis.rows();
  CMatrix out = CMatrix::Zero(n, n);
  for (std::size_t j = 0; j < lambdas.size(); ++j)
    out += lambdas[j] * phases[j] * basis.col(j) * basis.col(j).transpose();
  return out;
}

namespace {

// Symmetric unitary s = o d o^T with o real orthogonal: the real and imaginary
// parts of s commute, so a generic real combination diagonalizes both.
RMatrix diagonalize_symmetric_unitary(const CMatrix& s) {
  const RMatrix re = 0.5 * (s.real() + s.real().transpose());
  const RMatrix im = 0.5 * (s.imag() + s.imag().transpose());
  Eigen::SelfAdjointEigenSolver<RMatrix> es(re + 0.6180339887498949 * im);
  return es.eigenvectors();
}

}  // namespace

TakagiFactorization takagi(const CMatrix& b) {
  if (b.rows() != b.cols()) throw Error(ErrorKind::NotSquare, "Takagi factorization needs a square matrix");
  const double dev = symmetry_defect(b);
  if (dev > 1e-8) {
    std::ostringstream os;
    os << "matrix is not complex symmetric (max |B - B^T| = " << dev << ")";
    throw Error(ErrorKind::NotSymmetric, os.str());
  }
  const Eigen::Index n = b.rows();
  const CMatrix bs = 0.5 * (b + b.transpose());
  Eigen::JacobiSVD<CMatrix> svd(bs, Eigen::ComputeFullU);
  const RVector sigma = svd.singularValues();
  const CMatrix& u = svd.matrixU();
  const double scale = std::max(1.0, n > 0 ? sigma(0) : 0.0);
  const double cluster_tol = 1e-10 * scale;
  const double zero_tol = 1e-13 * scale;

  TakagiFactorization out;
  out.basis = CMatrix::Zero(n, n);
  out.lambdas.assign(n, 0.0);
  out.phases.assign(n, cplx(1.0, 0.0));

  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && sigma(stop - 1) - sigma(stop) <= cluster_tol) ++stop;
    const Eigen::Index k = stop - start;
    const CMatrix ub = u.middleCols(start, k);
    double mean = 0.0;
    for (Eigen::Index j = start; j < stop; ++j) mean += sigma(j);
    mean /= static_cast<double>(k);

    if (mean <= zero_tol) {
      out.basis.middleCols(start, k) = ub;
    } else {
      const CMatrix s = ub.adjoint() * bs * ub.conjugate() / mean;
      const RMatrix o = diagonalize_symmetric_unitary(s);
      out.basis.middleCols(start, k) = ub * o.cast<cplx>();
    }
    start = stop;
  }

  for (Eigen::Index j = 0; j < n; ++j) {
    const CVector phi = out.basis.col(j);
    const cplx v = phi.dot(bs * phi.conjugate());
    out.lambdas[j] = sigma(j);
    if (sigma(j) > zero_tol && std::abs(v) > 0.0) out.phases[j] = v / std::abs(v);
  }
  return out;
}

Eigen::MatrixXi real_hadamard(int n) {
  if (n < 1 || (n & (n - 1)) != 0) {
    std::ostringstream os;
    os << "Sylvester construction only covers powers of two, got " << n;
    throw Error(ErrorKind::UnsupportedOrder, os.str());
  }
  Eigen::MatrixXi h(1, 1);
  h(0, 0) = 1;
  while (h.rows() < n) {
    const Eigen::Index m = h.rows();
    Eigen::MatrixXi next(2 * m, 2 * m);
    next << h, h, h, -h;
    h = next;
  }
  return h;
}

std::vector<cplx> cancelling_phases(const std::vector<double>& lambdas) {
  const std::size_t n = lambdas.size();
  std::vector<cplx> eps(n, cplx(1.0, 0.0));
  if (n < 2) return eps;
  const double a = lambdas[0];
  const double total = std::accumulate(lambdas.begin() + 1, lambdas.end(), 0.0);
  if (a <= 0.0) return eps;

  // Group members 1..m-1 into side b and the rest into side c so that the
  // three lengths (a, b, c) close a triangle; each jump of b - c is at most 2a.
  std::size_t m = 1;
  double b = 0.0;
  double c = total;
  while (b - c < -a && m < n) {
    b += lambdas[m];
    c -= lambdas[m];
    ++m;
  }
  c = std::max(c, 0.0);

  // a + u + v = 0 with |u| = b, |v| = c.
  cplx u, v;
  if (c <= 0.0) {
    u = -a;
    v = 0.0;
  } else if (b <= 0.0) {
    u = 0.0;
    v = -a;
  } else {
    const double re_v = std::clamp((b * b - a * a - c * c) / (2.0 * a), -c, c);
    const double im_v = std::sqrt(std::max(0.0, c * c - re_v * re_v));
    v = cplx(re_v, im_v);
    u = -a - v;
  }
  const cplx eb = b > 0.0 ? u / std::abs(u) : cplx(1.0, 0.0);
  const cplx ec = c > 0.0 ? v / std::abs(v) : cplx(1.0, 0.0);
  for (std::size_t j = 1; j < n; ++j) eps[j] = j < m ? eb : ec;
  return eps;
}

RMatrix zero_diagonal_rotation(const RMatrix& n) {
  const Eigen::Index dim = n.rows();
  RMatrix o = RMatrix::Identity(dim, dim);
  RMatrix m = 0.5 * (n + n.transpose());
  const double eps = 1e-15 * std::max(1.0, m.cwiseAbs().maxCoeff());

  for (Eigen::Index i = 0; i + 1 < dim; ++i) {
    const double mii = m(i, i);
    if (std::abs(mii) <= eps) continue;
    Eigen::Index partner = -1;
    for (Eigen::Index j = i + 1; j < dim; ++j)
      if (m(j, j) * mii < 0.0 && (partner < 0 || std::abs(m(j, j)) > std::abs(m(partner, partner)))) partner = j;
    if (partner < 0) break;
    const Eigen::Index j = partner;
    // mii + 2 t mij + t^2 mjj = 0 has real roots because mii mjj < 0.
    const double mij = m(i, j);
    const double mjj = m(j, j);
    const double disc = std::sqrt(mij * mij - mii * mjj);
    const double t = mij >= 0.0 ? -mii / (mij + disc) : mii / (disc - mij);
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    RMatrix g = RMatrix::Identity(dim, dim);
    g(i, i) = c;
    g(i, j) = s;
    g(j, i) = -s;
    g(j, j) = c;
    m = g * m * g.transpose();
    m(i, i) = 0.0;
    o = g * o;
  }
  return o;
}

PureDecomposition flat_optimal_decomposition(const AntiLinearHermitian& theta, const DensityOperator& omega,
                                             RoofMode mode) {
  if (theta.dim() != omega.dim()) throw Error(ErrorKind::DimMismatch, "operator and state dimensions differ");
  // Work on the support: psi = S chi with S = V_r diag(sqrt q), so members
  // never pick up directions from rounding-level eigenvalues.
  const int d = omega.rank();
  CMatrix s(omega.dim(), d);
  for (int k = 0; k < d; ++k) s.col(k) = std::sqrt(omega.eigenvalues()(k)) * omega.eigenvectors().col(k);
  CMatrix bmat = s.adjoint() * theta.matrix() * s.conjugate();
  bmat = 0.5 * (bmat + bmat.transpose()).eval();
  TakagiFactorization tk = takagi(bmat);
  int padded = 1;
  while (padded < d) padded *= 2;

  const std::vector<double>& lam = tk.lambdas;
  const double total = std::accumulate(lam.begin(), lam.end(), 0.0);
  std::vector<cplx> target(d, cplx(1.0, 0.0));
  bool cancelling = false;
  if (mode == RoofMode::Convex) {
    if (lam[0] - (total - lam[0]) >= 0.0) {
      for (int j = 1; j < d; ++j) target[j] = -1.0;
    } else {
      target = cancelling_phases(lam);
      cancelling = true;
    }
  }

  // Rotating phi_j by e^{i alpha} turns eps_j into eps_j e^{-2 i alpha}.
  CMatrix phi = CMatrix::Zero(d, padded);
  for (int j = 0; j < d; ++j) {
    const double alpha = 0.5 * (std::arg(tk.phases[j]) - std::arg(target[j]));
    phi.col(j) = tk.basis.col(j) * std::polar(1.0, alpha);
  }

  const RMatrix h = real_hadamard(padded).cast<double>() / std::sqrt(static_cast<double>(padded));
  CMatrix chi = phi * h.transpose().cast<cplx>();

  if (!cancelling && total > 0.0) {
    double value = 0.0;
    for (int j = 0; j < d; ++j) value += lam[j] * target[j].real();
    const RMatrix tau = (chi.adjoint() * bmat * chi.conjugate()).real();
    const RMatrix gram = (chi.adjoint() * s.adjoint() * s * chi).real();
    const RMatrix o = zero_diagonal_rotation(tau - value * gram);
    chi = chi * o.transpose().cast<cplx>();
  }

  PureDecomposition dec;
  for (int k = 0; k < padded; ++k) {
    const CVector psi = s * chi.col(k);
    const double p = psi.squaredNorm();
    if (p < tol::kWeight) continue;
    dec.weights.push_back(p);
    dec.states.push_back(PureState::normalized(psi));
  }
  return dec;
}

}  // namespace roofs
