#include <doctest.h>

#include "hessegkz/cy3.hpp"

using namespace hessegkz;

TEST_CASE("fundamental period coefficients") {
  CHECK(cy3_ck(0) == Rat(1));
  CHECK(cy3_ck(1) == Rat(60));
  CHECK(fundamental_period(10) == fundamental_period_double_sum(10));
}

TEST_CASE("both operators annihilate the truncated period exactly") {
  AnnihilationResult r = annihilation_check(fundamental_period(10));
  CHECK(r.exact);
}

TEST_CASE("layer recursion is exact") { CHECK(recursion_check(20)); }

TEST_CASE("finite-sum and hypergeometric modes agree for |a| > 3") {
  cplx a(3.5, 0.4);
  for (long k : {0L, 1L, 2L, 4L}) {
    cplx f = u_nu(a, Rat(k), UNuMode::finite_sum);
    cplx p = u_nu(a, Rat(k), UNuMode::pfq);
    CHECK(std::abs(f - p) <= 1e-10 * std::max(1.0, std::abs(f)));
  }
  CHECK_THROWS(u_nu(cplx(1.0, 0.0), Rat(1), UNuMode::pfq));
}

TEST_CASE("continued mode satisfies its operator termwise") {
  CHECK(barnes_annihilation_residual(Rat(-1), 100) < 1e-10);
  CHECK(barnes_annihilation_residual(rat(1, 2), 100) < 1e-10);
}

TEST_CASE("small-b layers: the top layer is the regular seed") {
  std::vector<OrbifoldLayer> layers = orbifold_expansion_b0(4, 40);
  REQUIRE(!layers.empty());
  CHECK(layers[0].nu == Rat(0));
  for (std::size_t n = 1; n < layers[0].series.size(); ++n)
    CHECK(std::abs(layers[0].series[n]) < 1e-12);
}
