#include <doctest.h>

#include "hessegkz/curves.hpp"
#include "hessegkz/oscint.hpp"

using namespace hessegkz;

TEST_CASE("branch points solve the discriminant and carry the symmetries") {
  cplx psi(0.3, 0.1);
  std::vector<cplx> bp = branch_points(psi);
  REQUIRE(bp.size() == 6);
  for (cplx x : bp) {
    cplx lhs = (x * x * x + 1.0) * (x * x * x + 1.0);
    CHECK(std::abs(lhs - 4.0 * psi * psi * psi * x * x * x) < 1e-10);
  }
}

TEST_CASE("sheet tracking is consistent with the cover") {
  cplx psi(0.3, 0.0);
  std::array<cplx, 3> r = cover_roots(cplx(0.4, 0.2), psi);
  for (cplx y : r)
    CHECK(std::abs(hesse_f(cplx(0.4, 0.2), y, psi)) < 1e-12);
}

TEST_CASE("small loops around branch points act as transpositions") {
  cplx psi(0.3, 0.0);
  for (cplx b : branch_points(psi)) {
    std::array<int, 3> perm = loop_permutation(circle_path(b, 0.05), psi);
    int fixed = 0;
    for (int i = 0; i < 3; ++i) fixed += (perm[i] == i);
    CHECK(fixed == 1);
  }
}

TEST_CASE("chain integral is invariant under path deformation") {
  cplx psi(0.3, 0.0);
  ChainSpec c = standard_chain(psi);
  cplx direct = chain_integral_K(c.path, psi, c.start_sheet, 40, 40);
  cplx again = chain_integral_K(c.path, psi, c.start_sheet, 56, 56);
  CHECK(std::abs(direct - again) < 1e-9);  // self-convergence
  CHECK(std::abs(direct.imag() - 0.0955) < 1e-3);
}

TEST_CASE("torsion translations preserve the curve and cube to identity") {
  cplx psi(0.27, 0.05);
  cplx x(0.4, 0.3);
  SheetPoint p{x, cover_roots(x, psi)[0], 0};
  for (auto g : {CurveTranslation::sigma1, CurveTranslation::sigma2}) {
    SheetPoint q = p;
    for (int i = 0; i < 3; ++i) q = translation_apply(q, g);
    CHECK(std::abs(q.x - p.x) < 1e-12);
    CHECK(std::abs(q.y - p.y) < 1e-12);
  }
}

TEST_CASE("chain inhomogeneity follows the measured closed form") {
  // NOT constant in psi: the exact value is -sqrt(3) i / (12 psi^(3/2)).
  double p = 0.3;
  cplx got = inhomogeneity_of_K(cplx(p, 0.0));
  cplx want(0.0, -std::sqrt(3.0) / (12.0 * std::pow(p, 1.5)));
  CHECK(std::abs(got - want) < 1e-6);
}

TEST_CASE("weierstrass chain value and scaling") {
  cplx w = weierstrass_chain(cplx(0.0), cplx(-1.0));
  CHECK(std::abs(w - cplx(1.76663875029, 0.0)) < 1e-9);
  cplx w2 = weierstrass_chain(cplx(0.0), cplx(-2.0));
  CHECK(std::abs(w2 / w - std::pow(2.0, -1.0 / 6.0)) < 1e-12);
}
