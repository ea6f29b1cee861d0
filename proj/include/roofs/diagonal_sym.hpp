#pragma once

#include <vector>

#include "roofs/core_states.hpp"
#include "roofs/roof_solver.hpp"

namespace roofs {

/// S(D(omega)) = sum_j eta(<j|omega|j>), natural log.
double diag_entropy(const DensityOperator& omega);

/// Entanglement of the diagonal channel for a qubit: H((1 + s) / 2) with
/// s = sqrt(1 - x1^2 - x2^2).
double ed_qubit(const DensityOperator& omega);

/// The two pure states (x1, x2, +-s) on the vertical chord through omega,
/// weighted to reproduce omega. A pure input comes back as a single term.
PureDecomposition ed_qubit_flat_pair(const DensityOperator& omega);

/// True iff diag(rho) = diag(omega) entrywise within 1e-10.
bool concave_leaf_membership(const DensityOperator& omega, const DensityOperator& rho);

/// Basis-permutation-invariant state: <j|w|j> = 1/d, <j|w|k> = x/d, with
/// fidelity F = (1 + (d - 1) x) / d against the uniform superposition.
struct IsotropicState {
  int dim = 0;
  double fidelity = 0.0;
  double x = 0.0;
  DensityOperator state;
};

IsotropicState isotropic_state(int dim, double fidelity);
/// (|0> + ... + |d-1>) / sqrt(d).
CVector uniform_superposition(int dim);

/// |j> -> sum_k y_jk |j, k>, where |j, k> runs over a block of size m_j of
/// the target space. Rows of amplitudes have unit norm.
struct EmbeddingSpec {
  std::vector<int> blocks;
  std::vector<std::vector<cplx>> amplitudes;

  int source_dim() const { return static_cast<int>(blocks.size()); }
  int target_dim() const;
};

void validate_embedding(const EmbeddingSpec& spec);
EmbeddingSpec trivial_embedding(int dim);
/// Qubit into qutrit: |0> -> |0>, |1> -> (|1> + |2>) / sqrt 2.
EmbeddingSpec qubit_qutrit_embedding();
/// Target-by-source isometry V.
CMatrix embedding_isometry(const EmbeddingSpec& spec);
DensityOperator embed_state(const EmbeddingSpec& spec, const DensityOperator& omega);
/// l(omega) = sum_j <j|omega|j> sum_k eta(|y_jk|^2).
double embedding_offset(const EmbeddingSpec& spec, const DensityOperator& omega);

struct H0Result {
  double value = 0.0;
  PureState argmin;
};

/// Solver settings for the H0 search: 64 restarts.
SolverConfig h0_default_config();

/// Minimum of S(diag pi) over pure states in {sum_j a_j |j> : sum_j a_j = 0}.
H0Result h0_min_entropy_experiment(int dim, const SolverConfig& cfg);

}  // namespace roofs
