#include "roofs/linalg.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace roofs {

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const CMatrix& m) {
  return max_abs(m - m.adjoint());
}

double symmetry_defect(const CMatrix& m) {
  return max_abs(m - m.transpose());
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

RVector hermitian_eigenvalues(const CMatrix& m) {
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

RVector singular_values(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues();
}

CMatrix polar_isometry(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

CMatrix partial_trace_second(const CMatrix& m, int da, int db) {
  CMatrix out = CMatrix::Zero(da, da);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
  return out;
}

const CMatrix& pauli(int k) {
  static const CMatrix mats[4] = {
      (CMatrix(2, 2) << 1, 0, 0, 1).finished(),
      (CMatrix(2, 2) << 0, 1, 1, 0).finished(),
      (CMatrix(2, 2) << 0, -kI, kI, 0).finished(),
      (CMatrix(2, 2) << 1, 0, 0, -1).finished(),
  };
  return mats[k];
}

double eta(double x) {
  return x <= 0.0 ? 0.0 : -x * std::log(x);
}

double shannon_entropy(const std::vector<double>& p) {
  double s = 0.0;
  for (double x : p) s += eta(x);
  return s;
}

double von_neumann_entropy(const CMatrix& m) {
  const RVector ev = hermitian_eigenvalues(m);
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) s += eta(ev(i));
  return s;
}

}  // namespace roofs
