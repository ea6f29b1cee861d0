#include "roofs/core_states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "roofs/error.hpp"
#include "roofs/random.hpp"

namespace roofs {

namespace {

std::string fmt_dev(const char* what, double value) {
  std::ostringstream os;
  os.precision(3);
  os << what << " (measured " << std::scientific << value << ")";
  return os.str();
}

}  // namespace

DensityOperator::DensityOperator(const CMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw Error(ErrorKind::NotSquare, "density operator must be a non-empty square matrix");
  if (!m.allFinite()) throw Error(ErrorKind::NotHermitian, "matrix has non-finite entries");
  const double herm = hermiticity_defect(m);
  if (herm > tol::kHermitian)
    throw Error(ErrorKind::NotHermitian, fmt_dev("max |m - m^dagger| exceeds 1e-10", herm));
  const double tr_dev = std::abs(m.trace() - cplx(1.0, 0.0));
  if (tr_dev > tol::kTrace)
    throw Error(ErrorKind::TraceNotOne, fmt_dev("|Tr m - 1| exceeds 1e-10", tr_dev));

  matrix_ = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(matrix_);
  const RVector& ev = es.eigenvalues();
  if (ev(0) < tol::kPsd)
    throw Error(ErrorKind::NotPSD, fmt_dev("minimum eigenvalue below -1e-9", ev(0)));

  const int d = dim();
  eigenvalues_.resize(d);
  eigenvectors_.resize(d, d);
  for (int k = 0; k < d; ++k) {
    eigenvalues_(k) = ev(d - 1 - k);
    eigenvectors_.col(k) = es.eigenvectors().col(d - 1 - k);
  }
}

int DensityOperator::rank() const {
  return static_cast<int>((eigenvalues_.array() > tol::kRank).count());
}

PureState::PureState(const CVector& v) : vector_(v) {
  if (v.size() == 0) throw Error(ErrorKind::NotNormalized, "empty state vector");
  const double dev = std::abs(v.norm() - 1.0);
  if (dev > tol::kNorm) throw Error(ErrorKind::NotNormalized, fmt_dev("|norm - 1| exceeds 1e-12", dev));
}

PureState PureState::normalized(const CVector& v) {
  const double n = v.norm();
  if (!(n > 0.0)) throw Error(ErrorKind::ZeroState, "cannot normalize a null vector");
  return PureState(v / n);
}

CMatrix PureDecomposition::reconstruct() const {
  if (states.empty()) return CMatrix();
  const int d = states.front().dim();
  CMatrix out = CMatrix::Zero(d, d);
  for (std::size_t j = 0; j < size(); ++j) {
    const CVector& v = states[j].vector();
    out.noalias() += weights[j] * (v * v.adjoint());
  }
  return out;
}

double PureDecomposition::average(const std::function<double(const CVector&)>& g) const {
  double s = 0.0;
  for (std::size_t j = 0; j < size(); ++j) s += weights[j] * g(states[j].vector());
  return s;
}

double reconstruction_error(const PureDecomposition& dec, const CMatrix& target) {
  return (dec.reconstruct() - target).norm();
}

double BlochVector::norm() const { return std::sqrt(x1 * x1 + x2 * x2 + x3 * x3); }

DensityOperator validate_density(const CMatrix& m) { return DensityOperator(m); }

CMatrix psd_sqrt(const DensityOperator& omega) {
  const RVector& ev = omega.eigenvalues();
  const CMatrix& u = omega.eigenvectors();
  RVector root(ev.size());
  // Rounding-level eigenvalues would otherwise contribute O(1e-8) after the root.
  for (Eigen::Index k = 0; k < ev.size(); ++k) root(k) = ev(k) > 1e-13 ? std::sqrt(ev(k)) : 0.0;
  return u * root.cast<cplx>().asDiagonal() * u.adjoint();
}

PureDecomposition spectral_decomposition(const DensityOperator& omega) {
  PureDecomposition dec;
  for (int k = 0; k < omega.dim(); ++k) {
    const double p = omega.eigenvalues()(k);
    if (p <= tol::kRank) break;
    dec.weights.push_back(p);
    dec.states.push_back(PureState::normalized(omega.eigenvectors().col(k)));
  }
  return dec;
}

PureDecomposition decomposition_from_isometry(const DensityOperator& omega, const CMatrix& v) {
  const int r = omega.rank();
  if (v.cols() != r) {
    std::ostringstream os;
    os << "isometry must have rank(omega) = " << r << " columns, got " << v.cols();
    throw Error(ErrorKind::NotIsometry, os.str());
  }
  if (v.rows() < r) throw Error(ErrorKind::NotIsometry, "isometry needs at least rank(omega) rows");
  const double dev = max_abs(v.adjoint() * v - CMatrix::Identity(r, r));
  if (dev > tol::kIsometry) throw Error(ErrorKind::NotIsometry, fmt_dev("|V^dagger V - 1| exceeds 1e-10", dev));

  // Columns of s are sqrt(q_k) e_k.
  CMatrix s = omega.eigenvectors().leftCols(r);
  for (int k = 0; k < r; ++k) s.col(k) *= std::sqrt(omega.eigenvalues()(k));
  const CMatrix phi = s * v.transpose();

  PureDecomposition dec;
  for (Eigen::Index j = 0; j < phi.cols(); ++j) {
    const double p = phi.col(j).squaredNorm();
    if (p < tol::kWeight) continue;
    dec.weights.push_back(p);
    dec.states.push_back(PureState::normalized(phi.col(j)));
  }
  return dec;
}

DensityOperator random_density(int dim, int rank, std::uint64_t seed) {
  if (dim < 1 || rank < 1 || rank > dim) {
    std::ostringstream os;
    os << "need 1 <= rank <= dim, got dim=" << dim << " rank=" << rank;
    throw Error(ErrorKind::BadRank, os.str());
  }
  Rng rng(seed);
  const CMatrix g = rng.ginibre(dim, rank);
  CMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityOperator(m);
}

PureState random_pure(int dim, std::uint64_t seed) {
  if (dim < 1) throw Error(ErrorKind::BadRank, "dimension must be positive");
  Rng rng(seed);
  return PureState(rng.haar_vector(dim));
}

BlochVector qubit_to_bloch(const DensityOperator& omega) {
  if (omega.dim() != 2) throw Error(ErrorKind::DimMismatch, "Bloch coordinates need a qubit state");
  const CMatrix& m = omega.matrix();
  return {(pauli(1) * m).trace().real(), (pauli(2) * m).trace().real(), (pauli(3) * m).trace().real()};
}

CMatrix bloch_matrix(double x0, double x1, double x2, double x3) {
  return 0.5 * (x0 * pauli(0) + x1 * pauli(1) + x2 * pauli(2) + x3 * pauli(3));
}

DensityOperator bloch_to_qubit(const BlochVector& b) {
  if (b.norm() > 1.0 + 1e-10) throw Error(ErrorKind::OutsideBall, fmt_dev("|b| exceeds 1", b.norm()));
  return DensityOperator(bloch_matrix(1.0, b.x1, b.x2, b.x3));
}

}  // namespace roofs
