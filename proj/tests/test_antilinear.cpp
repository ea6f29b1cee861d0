#include <doctest.h>

#include <cmath>
#include <numeric>

#include "roofs/antilinear.hpp"
#include "roofs/error.hpp"
#include "roofs/measures.hpp"
#include "roofs/random.hpp"

using namespace roofs;

namespace {

// Fixed Ginibre factors shared with tests/oracles/generate.py.
DensityOperator fixed_state(const std::vector<cplx>& g, int rank) {
  CMatrix m(4, rank);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < rank; ++k) m(i, k) = g[static_cast<std::size_t>(i * rank + k)];
  CMatrix r = m * m.adjoint();
  return DensityOperator(r / r.trace().real());
}

const cplx I{0.0, 1.0};

DensityOperator g1() { return fixed_state({1.0 + I, 0.5, -0.25 * I, 2.0, 0.3 - 0.7 * I, 1.0, 0.0, 0.8 * I}, 2); }
DensityOperator g2() {
  return fixed_state({1.0, 0.2 * I, 0.1, -0.4, 0.5 + 0.5 * I, 0.1, 0.3, I, 0.9, -0.2, 0.6 * I, 0.7 - 0.1 * I}, 3);
}

CMatrix random_symmetric(Rng& rng, int n) {
  const CMatrix g = rng.ginibre(n, n);
  return g + g.transpose();
}

}  // namespace

TEST_SUITE("antilinear") {
  TEST_CASE("construction requires a symmetric matrix") {
    CHECK_THROWS_AS(AntiLinearHermitian{spin_flip()}, Error);
    CHECK_NOTHROW(AntiLinearHermitian(CMatrix::Identity(3, 3)));
  }

  TEST_CASE("Hermiticity of the anti-linear form") {
    Rng rng(1);
    const AntiLinearHermitian theta(random_symmetric(rng, 3));
    const CVector phi = rng.haar_vector(3), psi = rng.haar_vector(3);
    CHECK(std::abs(phi.dot(theta.apply(psi)) - psi.dot(theta.apply(phi))) <= 1e-12);
  }

  TEST_CASE("Wootters conjugation") {
    const AntiLinearHermitian tw = wootters_conjugation();
    CVector e00 = CVector::Zero(4);
    e00(0) = 1.0;
    const CVector img = tw.apply(e00);
    CHECK(std::abs(img(3) - cplx(1.0, 0.0)) <= 1e-15);
    CHECK(tw.is_conjugation());
    CHECK(symmetry_defect(spin_flip() + spin_flip().transpose()) == 0.0);
  }

  TEST_CASE("partial-trace Kraus pair gives half the Wootters conjugation") {
    CMatrix a1 = CMatrix::Zero(2, 4), a2 = CMatrix::Zero(2, 4);
    a1(0, 0) = a1(1, 2) = 1.0;
    a2(0, 1) = a2(1, 3) = 1.0;
    const CMatrix th = theta_from_kraus_pair(a1, a2).matrix();
    const CMatrix half = 0.5 * wootters_conjugation().matrix();
    CHECK(std::min(max_abs(th - half), max_abs(th + half)) <= 1e-15);
  }

  TEST_CASE("Kraus pair identity sqrt det T(pi) = |<psi, theta psi>|") {
    Rng rng(2);
    for (int d : {2, 3, 4}) {
      const CMatrix v = rng.haar_isometry(4, d);
      const CMatrix a1 = v.topRows(2), a2 = v.bottomRows(2);
      const AntiLinearHermitian theta = theta_from_kraus_pair(a1, a2);
      for (int t = 0; t < 5; ++t) {
        const CVector psi = rng.haar_vector(d);
        const CMatrix out = a1 * psi * psi.adjoint() * a1.adjoint() + a2 * psi * psi.adjoint() * a2.adjoint();
        const double det = (out(0, 0) * out(1, 1) - out(0, 1) * out(1, 0)).real();
        CHECK(std::sqrt(std::max(0.0, det)) == doctest::Approx(std::abs(theta.expectation(psi))).epsilon(1e-10));
      }
    }
    CHECK_THROWS_AS(theta_from_kraus_pair(CMatrix::Zero(2, 3), CMatrix::Zero(2, 4)), Error);
  }

  TEST_CASE("lambda spectrum is invariant under unitary transport") {
    Rng rng(3);
    const AntiLinearHermitian theta(random_symmetric(rng, 3));
    const DensityOperator w = random_density(3, 3, 11);
    const CMatrix u = rng.haar_unitary(3);
    const AntiLinearHermitian moved(u * theta.matrix() * u.transpose());
    const DensityOperator wm(u * w.matrix() * u.adjoint());
    const std::vector<double> a = lambda_spectrum(theta, w), b = lambda_spectrum(moved, wm);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-10));
  }

  TEST_CASE("roof values against the standard Wootters formula") {
    const AntiLinearHermitian th = partial_trace_theta();
    // Oracle: sqrt-eigenvalues of rho (y x y) rho* (y x y), numpy.
    const RoofValues v1 = roof_values(th, g1());
    CHECK(2.0 * v1.convex == doctest::Approx(0.506684313514331).epsilon(1e-10));
    CHECK(v1.concave == doctest::Approx(0.400578795207983).epsilon(1e-10));
    const RoofValues v2 = roof_values(th, g2());
    CHECK(2.0 * v2.convex == doctest::Approx(0.198258371010416).epsilon(1e-10));
    CHECK(v2.concave == doctest::Approx(0.374325806358256).epsilon(1e-10));

    const RoofValues mixed = roof_values(wootters_conjugation(), DensityOperator(CMatrix::Identity(4, 4) / 4.0));
    CHECK(mixed.concave == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mixed.convex == doctest::Approx(0.0).epsilon(1e-12));
  }

  TEST_CASE("roof values from a spectrum") {
    const RoofValues a = roof_values_from_spectrum({0.5, 0.1, 0.1});
    CHECK(a.convex == doctest::Approx(0.3));
    CHECK(a.concave == doctest::Approx(0.7));
    CHECK(roof_values_from_spectrum({0.3, 0.2, 0.2}).convex == 0.0);
  }

  TEST_CASE("Takagi factorization") {
    Rng rng(4);
    for (int n : {1, 2, 3, 5}) {
      const CMatrix b = random_symmetric(rng, n);
      const TakagiFactorization tk = takagi(b);
      CHECK(max_abs(tk.reconstruct() - b) <= 1e-10);
      CHECK(max_abs(tk.basis.adjoint() * tk.basis - CMatrix::Identity(n, n)) <= 1e-10);
    }
    // Degenerate singular values.
    CHECK(max_abs(takagi(wootters_conjugation().matrix()).reconstruct() - wootters_conjugation().matrix()) <= 1e-10);
    CHECK(max_abs(takagi(CMatrix::Identity(3, 3)).reconstruct() - CMatrix::Identity(3, 3)) <= 1e-10);
    CHECK_THROWS_AS(takagi(spin_flip()), Error);
  }

  TEST_CASE("real Hadamard matrices") {
    for (int n : {1, 2, 4, 8}) {
      const Eigen::MatrixXi h = real_hadamard(n);
      CHECK((h * h.transpose() - n * Eigen::MatrixXi::Identity(n, n)).cwiseAbs().maxCoeff() == 0);
    }
    try {
      real_hadamard(3);
      FAIL("expected UnsupportedOrder");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnsupportedOrder);
    }
  }

  TEST_CASE("cancelling phases") {
    for (const std::vector<double>& lam : std::vector<std::vector<double>>{
             {0.3, 0.2, 0.1}, {0.4, 0.3, 0.2, 0.1}, {0.25, 0.25, 0.25, 0.25}, {0.5, 0.5}}) {
      const std::vector<cplx> eps = cancelling_phases(lam);
      cplx sum = 0.0;
      for (std::size_t j = 0; j < lam.size(); ++j) {
        CHECK(std::abs(eps[j]) == doctest::Approx(1.0).epsilon(1e-14));
        sum += eps[j] * lam[j];
      }
      CHECK(std::abs(sum) <= 1e-14);
      CHECK(std::abs(eps[0] - cplx(1.0, 0.0)) <= 1e-15);
    }
  }

  TEST_CASE("zero-diagonal rotation") {
    Rng rng(5);
    for (int n : {2, 3, 4, 8}) {
      RMatrix a = RMatrix::Zero(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
      RMatrix m = a + a.transpose();
      m.diagonal().array() -= m.trace() / n;
      const RMatrix o = zero_diagonal_rotation(m);
      CHECK((o * o.transpose() - RMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK((o * m * o.transpose()).diagonal().cwiseAbs().maxCoeff() <= 1e-12);
    }
  }

  TEST_CASE("flat optimal decompositions") {
    const AntiLinearHermitian th = partial_trace_theta();
    const RoofObjective g = antilinear_abs_objective(th);
    for (const DensityOperator& w : {g1(), g2(), DensityOperator(CMatrix::Identity(4, 4) / 4.0)}) {
      const RoofValues v = roof_values(th, w);
      for (RoofMode mode : {RoofMode::Convex, RoofMode::Concave}) {
        const PureDecomposition dec = flat_optimal_decomposition(th, w, mode);
        CHECK(dec.size() <= 4);
        CHECK(reconstruction_error(dec, w.matrix()) <= 1e-8);
        CHECK(flatness_check(dec, g, 1e-8));
        CHECK(dec.average(g.evaluate) ==
              doctest::Approx(mode == RoofMode::Convex ? v.convex : v.concave).epsilon(1e-8));
      }
    }
  }

  TEST_CASE("flat decompositions in odd dimension") {
    Rng rng(6);
    const AntiLinearHermitian theta(random_symmetric(rng, 3));
    const RoofObjective g = antilinear_abs_objective(theta);
    const DensityOperator w = random_density(3, 3, 12);
    const RoofValues v = roof_values(theta, w);
    for (RoofMode mode : {RoofMode::Convex, RoofMode::Concave}) {
      const PureDecomposition dec = flat_optimal_decomposition(theta, w, mode);
      CHECK(reconstruction_error(dec, w.matrix()) <= 1e-8);
      CHECK(flatness_check(dec, g, 1e-8));
      CHECK(dec.average(g.evaluate) ==
            doctest::Approx(mode == RoofMode::Convex ? v.convex : v.concave).epsilon(1e-8));
    }
  }
}
