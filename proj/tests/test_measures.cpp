#include <doctest.h>

#include <cmath>

#include "roofs/diagonal_sym.hpp"
#include "roofs/error.hpp"
#include "roofs/measures.hpp"
#include "roofs/random.hpp"

using namespace roofs;

namespace {

const double kLog2 = std::log(2.0);

DensityOperator bell() {
  CVector v = CVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return DensityOperator(v * v.adjoint());
}

DensityOperator werner(double p) {
  return DensityOperator(p * bell().matrix() + (1.0 - p) * CMatrix::Identity(4, 4) / 4.0);
}

DensityOperator product(std::uint64_t seed) {
  const CVector a = random_pure(2, seed).vector(), b = random_pure(2, seed + 1).vector();
  const CVector v = kron(a, b);
  return DensityOperator(v * v.adjoint());
}

// Independent oracle: sqrt-eigenvalues of rho (y x y) rho* (y x y).
double wootters_oracle(const DensityOperator& rho) {
  const CMatrix yy = kron(pauli(2), pauli(2));
  const CMatrix r = rho.matrix() * yy * rho.matrix().conjugate() * yy;
  Eigen::ComplexEigenSolver<CMatrix> es(r);
  std::vector<double> l;
  // Null eigenvalues of low-rank R are rounding noise; drop them before the root.
  for (int k = 0; k < 4; ++k) {
    const double e = es.eigenvalues()(k).real();
    l.push_back(e > 1e-13 ? std::sqrt(e) : 0.0);
  }
  std::sort(l.rbegin(), l.rend());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

SolverConfig quick(std::uint64_t seed = 1) {
  SolverConfig cfg;
  cfg.restarts = 8;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_SUITE("measures") {
  TEST_CASE("xi") {
    CHECK(xi(0.0) == 0.0);
    CHECK(xi(1.0) == doctest::Approx(kLog2).epsilon(1e-15));
    CHECK(xi(0.6) == doctest::Approx(eta(0.1) + eta(0.9)).epsilon(1e-15));
    CHECK(xi(1.0 + 1e-13) == doctest::Approx(kLog2).epsilon(1e-15));
    Rng rng(1);
    for (int t = 0; t < 100; ++t) {
      const double a = rng.uniform(), b = rng.uniform();
      CHECK(xi(0.5 * (a + b)) <= 0.5 * (xi(a) + xi(b)) + 1e-12);
    }
  }

  TEST_CASE("concurrence anchors") {
    CHECK(std::abs(concurrence_2qubit(bell()).value - 1.0) <= 1e-10);
    CHECK(std::abs(eof_2qubit(bell()).value - kLog2) <= 1e-10);
    for (std::uint64_t s : {1, 5, 9}) {
      CHECK(std::abs(concurrence_2qubit(product(s)).value) <= 1e-10);
      CHECK(std::abs(eof_2qubit(product(s)).value) <= 1e-10);
    }
    CHECK(eof_2qubit(DensityOperator(CMatrix::Identity(4, 4) / 4.0)).value == 0.0);
  }

  TEST_CASE("Werner family") {
    for (double p : {0.2, 1.0 / 3.0, 0.5, 0.9}) {
      CHECK(concurrence_2qubit(werner(p)).value == doctest::Approx(std::max(0.0, (3 * p - 1) / 2)).epsilon(1e-10));
    }
    // xi(0.85), numpy.
    CHECK(eof_2qubit(werner(0.9)).value == doctest::Approx(0.547139165670382).epsilon(1e-10));
  }

  TEST_CASE("agreement with the standard Wootters formula") {
    for (int t = 0; t < 40; ++t) {
      const DensityOperator rho = random_density(4, 1 + t % 4, 500 + t);
      CHECK(std::abs(concurrence_2qubit(rho).value - wootters_oracle(rho)) <= 1e-9);
    }
  }

  TEST_CASE("local-unitary invariance and convexity") {
    Rng rng(2);
    for (int t = 0; t < 30; ++t) {
      const DensityOperator rho = random_density(4, 1 + t % 4, 600 + t);
      const CMatrix u = kron(rng.haar_unitary(2), rng.haar_unitary(2));
      const double c = concurrence_2qubit(rho).value;
      CHECK(std::abs(concurrence_2qubit(DensityOperator(u * rho.matrix() * u.adjoint())).value - c) <= 1e-9);
      const DensityOperator other = random_density(4, 2, 700 + t);
      const DensityOperator mid(0.5 * (rho.matrix() + other.matrix()));
      CHECK(concurrence_2qubit(mid).value <= 0.5 * (c + concurrence_2qubit(other).value) + 1e-9);
      const double lam = rng.uniform();
      const DensityOperator mixed(lam * rho.matrix() + (1 - lam) * CMatrix::Identity(4, 4) / 4.0);
      CHECK(eof_2qubit(mixed).value <= lam * eof_2qubit(rho).value + 1e-9);
    }
  }

  TEST_CASE("flat Wootters points give the entanglement of formation") {
    const RoofObjective entropy = output_entropy_objective(QubitOutputChannel::partial_trace(2));
    for (int t = 0; t < 3; ++t) {
      const DensityOperator rho = random_density(4, 2, 800 + t);
      const PureDecomposition dec = flat_optimal_decomposition(partial_trace_theta(), rho, RoofMode::Convex);
      const double e = eof_2qubit(rho).value;
      CHECK(dec.average(entropy.evaluate) == doctest::Approx(e).epsilon(1e-8));
      CHECK(std::abs(minimize_roof(entropy, rho, quick(t)).value - e) <= 5e-3);
    }
  }

  TEST_CASE("channel entanglement") {
    const QubitMap diag = QubitMap::diagonal();
    const DensityOperator w = bloch_to_qubit({0.4, -0.3, 0.5});
    const MeasureReport r = channel_entanglement(diag, w, quick());
    CHECK(std::abs(r.value - ed_qubit(w)) <= 2e-3);
    CHECK(r.flat);
    REQUIRE(r.bounds.has_value());
    CHECK(r.value >= r.bounds->lower - 1e-9);

    const CVector psi = random_pure(2, 3).vector();
    const DensityOperator pure(psi * psi.adjoint());
    const QubitMap hh = QubitMap::decay_family(0.5);
    CHECK(channel_entanglement(hh, pure, quick()).value == doctest::Approx(von_neumann_entropy(hh.apply(pure.matrix()))).epsilon(1e-14));

    const DensityOperator mixed = bloch_to_qubit({0.3, 0.2, -0.1});
    const MeasureReport m = channel_entanglement(hh, mixed, quick());
    CHECK(m.value >= m.bounds->lower - 1e-9);
  }

  TEST_CASE("bound suite") {
    CMatrix hh3(2, 2);
    hh3 << 0.5, 0.25, 0.25, 0.5;
    const BoundSuiteReport r = bound_suite(QubitMap::decay_family(0.5), DensityOperator(hh3), quick());
    CHECK(r.concurrence_sq == doctest::Approx(0.375).epsilon(1e-12));
    CHECK(r.tangle == doctest::Approx(0.5625).epsilon(1e-12));
    CHECK(r.tangle > r.concurrence_sq + 0.1);
    CHECK(r.tangle_bound);
    CHECK(r.entanglement_bound);

    const CVector psi = random_pure(2, 4).vector();
    const BoundSuiteReport p = bound_suite(QubitMap::axial(0.7, 0.4, 0.8), DensityOperator(psi * psi.adjoint()), quick());
    CHECK(p.tangle == doctest::Approx(p.concurrence_sq).epsilon(1e-10));
    CHECK(p.entanglement == doctest::Approx(p.xi_concurrence).epsilon(1e-10));

    const BoundSuiteReport d = bound_suite(QubitMap::diagonal(), bloch_to_qubit({0.2, 0.5, 0.1}), quick());
    CHECK(std::abs(d.entanglement - d.xi_concurrence) <= 2e-3);

    const QubitMap kr = QubitMap::kraus({std::sqrt(0.7) * CMatrix::Identity(2, 2), std::sqrt(0.3) * pauli(1)});
    const BoundSuiteReport k = bound_suite(kr, bloch_to_qubit({0.1, 0.4, 0.3}), quick());
    CHECK(k.tangle_bound);
    CHECK(k.entanglement_bound);
  }

  TEST_CASE("dimension checks") {
    try {
      concurrence_2qubit(DensityOperator(CMatrix::Identity(2, 2) / 2.0));
      FAIL("expected DimMismatch");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DimMismatch);
    }
  }
}
