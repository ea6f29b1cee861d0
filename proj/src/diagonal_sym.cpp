#include "roofs/diagonal_sym.hpp"

#include <cmath>
#include <sstream>

#include "roofs/error.hpp"
#include "roofs/random.hpp"

namespace roofs {

double diag_entropy(const DensityOperator& omega) {
  double s = 0.0;
  for (int j = 0; j < omega.dim(); ++j) s += eta(omega.matrix()(j, j).real());
  return s;
}

namespace {

void require_qubit(const DensityOperator& omega) {
  if (omega.dim() != 2) throw Error(ErrorKind::DimMismatch, "expected a qubit state");
}

double vertical_half_chord(const BlochVector& b) {
  return std::sqrt(std::max(0.0, 1.0 - b.x1 * b.x1 - b.x2 * b.x2));
}

}  // namespace

double ed_qubit(const DensityOperator& omega) {
  require_qubit(omega);
  const double s = vertical_half_chord(qubit_to_bloch(omega));
  return eta(0.5 * (1.0 + s)) + eta(0.5 * (1.0 - s));
}

PureDecomposition ed_qubit_flat_pair(const DensityOperator& omega) {
  require_qubit(omega);
  if (omega.rank() == 1) return spectral_decomposition(omega);
  const BlochVector b = qubit_to_bloch(omega);
  const double s = vertical_half_chord(b);
  const double p = 0.5 * (1.0 + b.x3 / s);
  PureDecomposition dec;
  for (double sign : {1.0, -1.0}) {
    const DensityOperator pi = bloch_to_qubit({b.x1, b.x2, sign * s});
    dec.states.push_back(PureState::normalized(pi.eigenvectors().col(0)));
  }
  dec.weights = {p, 1.0 - p};
  return dec;
}

bool concave_leaf_membership(const DensityOperator& omega, const DensityOperator& rho) {
  if (omega.dim() != rho.dim()) throw Error(ErrorKind::DimMismatch, "states have different dimensions");
  for (int j = 0; j < omega.dim(); ++j)
    if (std::abs(omega.matrix()(j, j) - rho.matrix()(j, j)) > 1e-10) return false;
  return true;
}

CVector uniform_superposition(int dim) {
  return CVector::Constant(dim, cplx(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
}

IsotropicState isotropic_state(int dim, double fidelity) {
  if (dim < 2) throw Error(ErrorKind::OutOfRange, "isotropic states need d >= 2");
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
    std::ostringstream os;
    os << "fidelity " << fidelity << " outside [0, 1]";
    throw Error(ErrorKind::OutOfRange, os.str());
  }
  const double x = (dim * fidelity - 1.0) / (dim - 1.0);
  CMatrix m = CMatrix::Constant(dim, dim, cplx(x / dim, 0.0));
  m.diagonal().setConstant(1.0 / dim);
  return {dim, fidelity, x, DensityOperator(m)};
}

int EmbeddingSpec::target_dim() const {
  int t = 0;
  for (int m : blocks) t += m;
  return t;
}

void validate_embedding(const EmbeddingSpec& spec) {
  if (spec.blocks.empty()) throw Error(ErrorKind::ShapeMismatch, "embedding needs at least one block");
  if (spec.amplitudes.size() != spec.blocks.size())
    throw Error(ErrorKind::ShapeMismatch, "one amplitude row per block is required");
  for (std::size_t j = 0; j < spec.blocks.size(); ++j) {
    if (spec.blocks[j] < 1 || static_cast<int>(spec.amplitudes[j].size()) != spec.blocks[j]) {
      std::ostringstream os;
      os << "block " << j << " has size " << spec.blocks[j] << " but " << spec.amplitudes[j].size() << " amplitudes";
      throw Error(ErrorKind::ShapeMismatch, os.str());
    }
    double n2 = 0.0;
    for (const cplx& y : spec.amplitudes[j]) n2 += std::norm(y);
    if (std::abs(n2 - 1.0) > 1e-12) {
      std::ostringstream os;
      os << "amplitude row " << j << " has squared norm " << n2;
      throw Error(ErrorKind::NotNormalized, os.str());
    }
  }
}

EmbeddingSpec trivial_embedding(int dim) {
  EmbeddingSpec spec;
  spec.blocks.assign(static_cast<std::size_t>(dim), 1);
  spec.amplitudes.assign(static_cast<std::size_t>(dim), {cplx(1.0, 0.0)});
  return spec;
}

EmbeddingSpec qubit_qutrit_embedding() {
  const double h = 1.0 / std::sqrt(2.0);
  return {{1, 2}, {{cplx(1.0, 0.0)}, {cplx(h, 0.0), cplx(h, 0.0)}}};
}

CMatrix embedding_isometry(const EmbeddingSpec& spec) {
  validate_embedding(spec);
  CMatrix v = CMatrix::Zero(spec.target_dim(), spec.source_dim());
  int offset = 0;
  for (int j = 0; j < spec.source_dim(); ++j) {
    for (int k = 0; k < spec.blocks[static_cast<std::size_t>(j)]; ++k)
      v(offset + k, j) = spec.amplitudes[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    offset += spec.blocks[static_cast<std::size_t>(j)];
  }
  return v;
}

DensityOperator embed_state(const EmbeddingSpec& spec, const DensityOperator& omega) {
  if (omega.dim() != spec.source_dim()) {
    std::ostringstream os;
    os << "embedding expects dimension " << spec.source_dim() << ", state has " << omega.dim();
    throw Error(ErrorKind::DimMismatch, os.str());
  }
  const CMatrix v = embedding_isometry(spec);
  return DensityOperator(v * omega.matrix() * v.adjoint());
}

double embedding_offset(const EmbeddingSpec& spec, const DensityOperator& omega) {
  validate_embedding(spec);
  if (omega.dim() != spec.source_dim()) throw Error(ErrorKind::DimMismatch, "state does not match the embedding");
  double l = 0.0;
  for (int j = 0; j < spec.source_dim(); ++j) {
    double row = 0.0;
    for (const cplx& y : spec.amplitudes[static_cast<std::size_t>(j)]) row += eta(std::norm(y));
    l += omega.matrix()(j, j).real() * row;
  }
  return l;
}

SolverConfig h0_default_config() {
  SolverConfig cfg;
  cfg.restarts = 64;
  return cfg;
}

H0Result h0_min_entropy_experiment(int dim, const SolverConfig& cfg) {
  if (dim < 2) throw Error(ErrorKind::ConfigError, "the H0 experiment needs d >= 2");
  if (cfg.restarts < 1) throw Error(ErrorKind::ConfigError, "restarts must be >= 1");

  // Columns 1..d-1 of a Householder QR of the uniform vector span its complement.
  const CVector u = uniform_superposition(dim);
  const CMatrix q = Eigen::HouseholderQR<CMatrix>(u).householderQ() * CMatrix::Identity(dim, dim);
  const CMatrix basis = q.rightCols(dim - 1);
  const RoofObjective g = diag_entropy_objective(dim);

  auto state_of = [&basis](const CMatrix& c) -> CVector {
    const CVector psi = basis * c.col(0);
    return psi / psi.norm();
  };
  StiefelProblem problem;
  problem.rows = dim - 1;
  problem.cols = 1;
  problem.cost = [&](const CMatrix& c) { return g.evaluate(state_of(c)); };

  std::vector<StiefelResult> runs(static_cast<std::size_t>(cfg.restarts));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < cfg.restarts; ++i) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    runs[static_cast<std::size_t>(i)] = optimize_stiefel(problem, rng.haar_isometry(dim - 1, 1), cfg);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (runs[i].value < runs[best].value) best = i;
  const CVector psi = state_of(runs[best].point);
  return {g.evaluate(psi), PureState(psi)};
}

}  // namespace roofs
