#include <doctest.h>

#include "hessegkz/oscint.hpp"

using namespace hessegkz;

TEST_CASE("series, decomposition and quadrature agree") {
  for (cplx p : {cplx(-0.3, 0.0), cplx(-0.2, 0.1)}) {
    SeriesValue s = oscillating_series(p);
    CHECK(std::abs(s.value - j_decomposition(p).sum()) < 1e-12);
    OscillatingSetup setup;
    setup.psi = p;
    QuadratureValue q = quadrature_3d(setup);
    CHECK(q.convergence_flag);
    CHECK(std::abs(q.value - s.value) < 1e-6);
    CHECK(std::abs(quadrature_2d(p) - s.value) < 1e-5);
  }
}

TEST_CASE("functional relations under the cube-root rotation") {
  for (cplx p : {cplx(-0.25, 0.0), cplx(0.1, 0.2)}) {
    FunctionalRelationResult r = functional_relation_check(p);
    CHECK(r.residual_rho < 1e-10);
    CHECK(r.residual_rho2 < 1e-10);
    CHECK(r.residual_diff < 1e-10);
    CHECK(r.period_fit_residual < 1e-10);
  }
}

TEST_CASE("wedge model integral satisfies the third-order equation") {
  for (int k = 0; k < 3; ++k) {
    double ray = k * 2.0 * M_PI / 3.0 + 0.2;
    CHECK(scorer_ode_residual(cplx(0.2, 0.05), ray, 0.005) < 1e-6);
  }
  CHECK_THROWS_AS(airy_scorer(cplx(0.1, 0.0), M_PI / 6.0), std::domain_error);
}

TEST_CASE("series tail bound is honest at the sample points") {
  SeriesValue s = oscillating_series(cplx(-0.3, 0.0), 40);
  SeriesValue s2 = oscillating_series(cplx(-0.3, 0.0), 200);
  CHECK(std::abs(s.value - s2.value) <= s.tail_bound + 1e-18);
}
