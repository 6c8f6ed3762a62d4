#include <doctest.h>

#include "hessegkz/frobenius.hpp"

using namespace hessegkz;

TEST_CASE("series basis is annihilated exactly") {
  OrbifoldBasis b = orbifold_basis(80);
  for (const char* name : {"D_GKZ", "L_PF"}) {
    ThetaOperator op = builtin(name);
    CHECK(apply_to_series(op, b.pi1).is_zero());
    CHECK(apply_to_series(op, b.pi2).is_zero());
  }
  CHECK(apply_to_series(builtin("D_GKZ"), b.j3).is_zero());
}

TEST_CASE("extra solution has inhomogeneous constant 2") {
  OrbifoldBasis b = orbifold_basis(80);
  ThetaOperator op =
      compose(ThetaOperator::monomial({"psi"}, {-3}), builtin("L_PF"));
  CHECK(inhomogeneous_constant(op, b.j3) == Rat(2));
}

TEST_CASE("frobenius solver finds the full log-depth flag") {
  std::vector<LogSeries> basis = frobenius_solve(builtin("D_GKZ_alpha"), 40);
  REQUIRE(basis.size() == 3);
  std::vector<int> depths;
  for (const auto& s : basis) depths.push_back(s.depth());
  std::sort(depths.begin(), depths.end());
  CHECK(depths == std::vector<int>{0, 1, 2});
  for (const auto& s : basis)
    CHECK(apply_to_series(builtin("D_GKZ_alpha"), s).is_zero());
}

TEST_CASE("epsilon deformation satisfies the exact ladder identities") {
  std::vector<LogSeries> f = epsilon_deformation(60, 3);
  REQUIRE(f.size() == 4);
  ThetaOperator lp = builtin("L_PF_alpha");
  LogSeries r2 = apply_to_series(lp, f[2]);
  CHECK(r2.depth() == 0);
  CHECK(r2.coeff(0, 0) == Rat(1));
  LogSeries r3 = apply_to_series(lp, f[3]);
  CHECK(r3.coeff(1, 0) == Rat(1));  // the ln(alpha/27) piece
  CHECK(apply_to_series(builtin("D_GKZ_alpha"), f[3]).coeff(0, 0) == Rat(1));
}

TEST_CASE("cusp-chart connection formulas hold numerically") {
  CuspBasis cb;
  for (cplx a : {cplx(0.05, 0.0), cplx(0.12, 0.04)}) {
    CHECK(cb.connection_residual0(a) < 1e-10);
    CHECK(cb.connection_residual1(a) < 1e-10);
  }
}

TEST_CASE("monodromy matrices") {
  Mat3 M = monodromy_matrix(MonodromyPoint::orbifold);
  cplx rho = std::exp(cplx(0, 2.0 * M_PI / 3.0));
  CHECK(std::abs(M[0][0] - rho) < 1e-14);
  CHECK(std::abs(M[1][1] - rho * rho) < 1e-14);
  CHECK(std::abs(M[2][2] - 1.0) < 1e-14);
  Mat3 C = monodromy_matrix(MonodromyPoint::cusp);
  // unipotent: (C - I)^3 = 0
  for (int i = 0; i < 3; ++i) C[i][i] -= 1.0;
  Mat3 C2 = mat_mul(C, C);
  Mat3 C3 = mat_mul(C2, C);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(std::abs(C3[i][j]) < 1e-14);
}
