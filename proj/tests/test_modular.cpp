#include <doctest.h>

#include "hessegkz/modular.hpp"
#include "hessegkz/qseries.hpp"

using namespace hessegkz;

TEST_CASE("eta quotient cube equals the Lambert series exactly") {
  QSeries b = eta_quotient_B(100);
  CHECK((b * b * b - lambert_B3(100)).is_zero());
}

TEST_CASE("mirror map q-expansion identities are exact") {
  long N = 100;
  QSeries dt = mirror_map_qpart(N).D();
  dt.c[0] += Rat(1);  // D log(-q) = 1
  CHECK((dt - lambert_B3(N)).is_zero());
  QSeries dd = t_gkz_qseries(N, Rat(0), Rat(0)).qpart.D().D();
  CHECK((dd - (QSeries::one(N) - lambert_B3(N))).is_zero());
}

TEST_CASE("wronskian closed form and series constant") {
  CHECK(std::abs(wronskian_value(cplx(0.5, 0.0)) -
                 cplx(0.25 / 0.875, 0.0)) < 1e-15);
  CHECK_THROWS_AS(wronskian_value(cplx(1.0, 0.0)), std::domain_error);
  CHECK(wronskian_series_constant(100) == Rat(-1));
  WronskianFit fit = wronskian_solution_fit(100);
  CHECK(fit.residual_zero);
  CHECK(fit.a == 0);
  CHECK(fit.b == 0);
  CHECK(fit.c == -2);
}

TEST_CASE("hauptmodul bridge is constant equal to one") {
  QSeries b3 = lambert_B3(120);
  for (cplx a : {cplx(0.01, 0.0), cplx(0.05, 0.0), cplx(0.1, 0.0)})
    CHECK(std::abs(hauptmodul_bridge(a, b3).ratio - 1.0) < 1e-8);
}

TEST_CASE("mirror map matches the alpha chart") {
  MirrorMapCheck mc = mirror_map_check(100);
  CHECK(mc.dt_equals_b3_exact);
  CHECK(mc.theta_alpha_residual < 1e-10);
}

TEST_CASE("singular-cycle pairing") {
  cplx v(0.07, 0.02), a(0.15, -0.03);
  PairingValue pv = singular_cycle_pairing(v, a);
  CHECK(std::abs(pv.value + singular_cycle_pairing(a, v).value) < 1e-8);
  CHECK(std::abs(singular_cycle_pairing(a, a).value) < 1e-12);
  CHECK(pv.beltrami_residual < 1e-8);
}

TEST_CASE("q-series arithmetic basics") {
  QSeries b = eta_quotient_B(30);
  QSeries inv = b.inverse();
  CHECK((b * inv - QSeries::one(30)).is_zero());
  CHECK(chi_minus3(1) == 1);
  CHECK(chi_minus3(2) == -1);
  CHECK(chi_minus3(3) == 0);
}
