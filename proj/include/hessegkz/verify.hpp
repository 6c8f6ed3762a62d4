#pragma once

// The verification suite: every identity the library can check at desk
// scale, as named checks producing VerificationReport entries.  Checks are
// deterministic (fixed summation orders, fixed samples, no randomness);
// `flagged` marks checks whose computation succeeds but disagrees with a
// recorded reference value (the discrepancy is documented in the note).

#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hessegkz/curves.hpp"
#include "hessegkz/cy3.hpp"
#include "hessegkz/family.hpp"
#include "hessegkz/frobenius.hpp"
#include "hessegkz/modular.hpp"
#include "hessegkz/oscint.hpp"
#include "hessegkz/qseries.hpp"
#include "hessegkz/report.hpp"
#include "hessegkz/thetaop.hpp"

namespace hessegkz {

using CheckFn = std::function<VerificationReport(const Config&)>;

namespace checks {

// ------------------------------ opalg ------------------------------

inline VerificationReport opalg_factorization(const Config&) {
  ThetaOperator dg = builtin("D_GKZ_alpha");
  ThetaOperator lp = builtin("L_PF_alpha");
  ThetaOperator th = ThetaOperator::theta(lp.vars, 0);
  bool ok = normal_form_equal(dg, compose(th, lp), /*up_to_constant=*/true);
  return make_report("opalg.factorization", ok ? 0.0 : 1.0, 0.0,
                     "third-order operator equals theta composed with the "
                     "second-order one, up to a rational constant");
}

inline VerificationReport opalg_golden_operators(const Config&) {
  bool ok = true;
  std::string bad;
  {
    GKZDerivation d = derive_gkz(hesse_family());
    ThetaOperator want = builtin("D_GKZ_z");
    if (!normal_form_equal(d.reduced, want, true)) { ok = false; bad = "cubic pencil"; }
    if (!d.calabi_yau) { ok = false; bad = "cubic pencil CY flag"; }
  }
  {
    GKZDerivation d = derive_gkz(weierstrass_family());
    ThetaOperator want = builtin("L_W");
    if (!normal_form_equal(d.reduced, want, true)) { ok = false; bad = "weierstrass"; }
  }
  {
    GKZDerivation d = derive_gkz(legendre_family());
    long order = 0;
    for (const auto& [m, p] : d.reduced.terms)
      order = std::max(order, (long)p.degree_in(0));
    if (order != 2) { ok = false; bad = "legendre order"; }
  }
  return make_report("opalg.golden_operators", ok ? 0.0 : 1.0, 0.0,
                     ok ? "all three derived reduced operators match"
                        : "mismatch: " + bad);
}

// ------------------------------ frobenius ------------------------------

inline VerificationReport frobenius_series_annihilation(const Config& cfg) {
  long N = cfg.get_long("series_order", 200);
  OrbifoldBasis b = orbifold_basis(N);
  ThetaOperator dg = builtin("D_GKZ");
  ThetaOperator lp = builtin("L_PF");
  bool ok = apply_to_series(dg, b.pi1).is_zero() &&
            apply_to_series(dg, b.pi2).is_zero() &&
            apply_to_series(dg, b.j3).is_zero() &&
            apply_to_series(lp, b.pi1).is_zero() &&
            apply_to_series(lp, b.pi2).is_zero();
  return make_report("frobenius.series_annihilation", ok ? 0.0 : 1.0, 0.0,
                     "exact through order " + std::to_string(N));
}

inline VerificationReport frobenius_j3_constant(const Config& cfg) {
  long N = cfg.get_long("series_order", 200);
  OrbifoldBasis b = orbifold_basis(N);
  // psi^-3 o L_PF
  ThetaOperator op = compose(
      ThetaOperator::monomial({"psi"}, {-3}), builtin("L_PF"));
  Rat c = inhomogeneous_constant(op, b.j3);
  double resid = std::abs(to_double(c) - 2.0);
  if (resid > 0.0)
    return make_report("frobenius.j3_constant", resid, 0.0,
                       "inhomogeneous constant is not 2");
  return make_flagged("frobenius.j3_constant", 0.0, 0.0,
                      "computed constant is exactly 2; the recorded reference "
                      "value 2/9 reflects a theta_psi = -3 theta_z chart "
                      "factor slip (2 = 9 * 2/9)");
}

inline VerificationReport frobenius_solver_depths(const Config& cfg) {
  long N = cfg.get_long("frobenius_order", 60);
  std::vector<LogSeries> basis = frobenius_solve(builtin("D_GKZ_alpha"), N);
  // triple root 0 at alpha = 0: expect log depths {0, 1, 2}
  std::vector<int> depths;
  for (const auto& s : basis) depths.push_back(s.depth());
  std::sort(depths.begin(), depths.end());
  bool ok = depths == std::vector<int>{0, 1, 2};
  return make_report("frobenius.solver_depths", ok ? 0.0 : 1.0, 0.0,
                     "triple indicial root yields log depths 0, 1, 2");
}

inline VerificationReport frobenius_deformation(const Config& cfg) {
  long N = cfg.get_long("qseries_order", 100);
  std::vector<LogSeries> f = epsilon_deformation(N, 3);
  ThetaOperator lp = builtin("L_PF_alpha");
  ThetaOperator dg = builtin("D_GKZ_alpha");
  bool ok = true;
  std::string bad;
  {  // L_PF f2 = 1
    LogSeries r = apply_to_series(lp, f[2]);
    Rat want(1);
    for (int j = 0; j <= r.depth() && ok; ++j)
      for (long k = 0; k <= r.N; ++k) {
        Rat expect = (j == 0 && Rat(k) + r.rho == 0) ? want : Rat(0);
        if (r.coeff(j, k) != expect) { ok = false; bad = "f2"; break; }
      }
  }
  if (ok) {  // L_PF f3 = log(alpha/27): depth-1 constant, zero elsewhere
    LogSeries r = apply_to_series(lp, f[3]);
    for (int j = 0; j <= r.depth() && ok; ++j)
      for (long k = 0; k <= r.N; ++k) {
        Rat expect = (j == 1 && Rat(k) + r.rho == 0) ? Rat(1) : Rat(0);
        if (r.coeff(j, k) != expect) { ok = false; bad = "f3 log"; break; }
      }
  }
  if (ok) {  // D_GKZ f3 = 1
    LogSeries r = apply_to_series(dg, f[3]);
    for (int j = 0; j <= r.depth() && ok; ++j)
      for (long k = 0; k <= r.N; ++k) {
        Rat expect = (j == 0 && Rat(k) + r.rho == 0) ? Rat(1) : Rat(0);
        if (r.coeff(j, k) != expect) { ok = false; bad = "f3 const"; break; }
      }
  }
  return make_report("frobenius.deformation", ok ? 0.0 : 1.0, 0.0,
                     ok ? "exact log-series identities through order " +
                              std::to_string(N)
                        : "failed at " + bad);
}

inline VerificationReport frobenius_monodromy(const Config&) {
  Mat3 M = monodromy_matrix(MonodromyPoint::orbifold);
  cplx rho = std::exp(cplx(0, 2.0 * M_PI / 3.0));
  double resid = 0.0;
  resid = std::max(resid, std::abs(M[0][0] - rho));
  resid = std::max(resid, std::abs(M[1][1] - rho * rho));
  resid = std::max(resid, std::abs(M[2][2] - 1.0));
  Mat3 M3 = mat_mul(mat_mul(M, M), M);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      resid = std::max(resid, std::abs(M3[i][j] - (i == j ? 1.0 : 0.0)));
  // numeric confirmation on the series solutions
  cplx p(0.21, 0.07);
  resid = std::max(resid, std::abs(pi1_value(rho * p) - rho * pi1_value(p)));
  resid = std::max(resid,
                   std::abs(pi2_value(rho * p) - rho * rho * pi2_value(p)));
  return make_report("frobenius.monodromy", resid, 1e-12,
                     "orbifold monodromy diag(rho, rho^2, 1), cube = identity");
}

inline VerificationReport frobenius_connection(const Config&) {
  CuspBasis cb;
  double resid = 0.0;
  for (cplx a : {cplx(0.05, 0.0), cplx(0.12, 0.04)}) {
    resid = std::max(resid, cb.connection_residual0(a));
    resid = std::max(resid, cb.connection_residual1(a));
  }
  return make_report("frobenius.connection", resid, 1e-10,
                     "cusp-chart connection identities at sampled alpha");
}

// ------------------------------ oscint ------------------------------

inline VerificationReport oscint_quadrature3d(const Config& cfg) {
  double resid = 0.0;
  for (cplx p : {cplx(-0.3, 0.0), cplx(-0.2, 0.1)}) {
    OscillatingSetup s;
    s.psi = p;
    s.R = cfg.get_double("quad3d_R", 6.0);
    s.order = (int)cfg.get_long("quad3d_order", 64);
    QuadratureValue q = quadrature_3d(s);
    resid = std::max(resid, std::abs(q.value - oscillating_series(p).value));
  }
  return make_report("oscint.quadrature3d", resid, 1e-6,
                     "octant quadrature vs series at two sample points");
}

inline VerificationReport oscint_quadrature2d(const Config&) {
  double resid = 0.0;
  for (cplx p : {cplx(-0.3, 0.0), cplx(-0.2, 0.1)})
    resid = std::max(resid, std::abs(quadrature_2d(p) -
                                     oscillating_series(p).value));
  return make_report("oscint.quadrature2d", resid, 1e-5,
                     "dimensional reduction to the plane integral; "
                     "normalization (psi/3), see documented deviation");
}

inline VerificationReport oscint_decomposition(const Config&) {
  double resid = 0.0;
  for (cplx p : {cplx(-0.3, 0.0), cplx(0.2, 0.2), cplx(0.05, -0.28)})
    resid = std::max(resid, std::abs(oscillating_series(p).value -
                                     j_decomposition(p).sum()));
  return make_report("oscint.decomposition", resid, 1e-12,
                     "series equals the three-piece hypergeometric sum");
}

inline VerificationReport oscint_functional_relations(const Config&) {
  double resid = 0.0;
  for (cplx p : {cplx(-0.25, 0.0), cplx(0.1, 0.2)}) {
    FunctionalRelationResult r = functional_relation_check(p);
    resid = std::max({resid, r.residual_rho, r.residual_rho2, r.residual_diff});
    resid = std::max(resid, r.period_fit_residual);
  }
  return make_report("oscint.functional_relations", resid, 1e-10,
                     "rotation relations and the difference-is-a-period fit");
}

inline VerificationReport oscint_gamma_prefactor(const Config&) {
  double g13 = gamma_real(1.0 / 3.0), g23 = gamma_real(2.0 / 3.0);
  // reflection: Gamma(1/3) Gamma(2/3) = pi / sin(pi/3) = 2 pi / sqrt(3)
  double lhs = g13 * g13 * g13 / 27.0;
  double rhs = (2.0 * M_PI / std::sqrt(3.0)) * g13 * g13 / (27.0 * g23 *
                                                            g13 * g23 / g23);
  rhs = (2.0 * M_PI / std::sqrt(3.0)) * g13 * g13 / (27.0 * g23);
  double resid = std::abs(lhs - rhs) / std::abs(lhs);
  return make_report("oscint.gamma_prefactor", resid, 1e-12,
                     "first-piece prefactor via the reflection formula");
}

inline VerificationReport oscint_scorer(const Config&) {
  double resid = 0.0;
  // interior rays of the three wedges
  for (int k = 0; k < 3; ++k)
    resid = std::max(resid, scorer_ode_residual(cplx(0.2, 0.05),
                                                k * 2.0 * M_PI / 3.0 + 0.2,
                                                0.005));
  bool threw = false;
  try {
    airy_scorer(cplx(0.1, 0.0), M_PI / 6.0);  // boundary ray: rejected
  } catch (const std::domain_error&) {
    threw = true;
  }
  if (!threw) resid = std::max(resid, 1.0);
  return make_report("oscint.scorer", resid, 1e-6,
                     "wedge-ray model integral satisfies the third-order "
                     "equation; boundary rays rejected");
}

// ------------------------------ qseries / modular ------------------------------

inline VerificationReport modular_wronskian(const Config& cfg) {
  long N = cfg.get_long("qseries_order", 100);
  Rat c = wronskian_series_constant(N);  // throws if shape wrong
  WronskianFit fit = wronskian_solution_fit(N);
  bool ok = (c == -1) && fit.residual_zero && fit.a == 0 && fit.b == 0 &&
            fit.c == -2;
  return make_report("modular.wronskian", ok ? 0.0 : 1.0, 0.0,
                     "series constant -1; variation-of-parameters fit "
                     "(0, 0, -2), exact through order " + std::to_string(N));
}

inline VerificationReport qseries_lambert(const Config& cfg) {
  long N = cfg.get_long("qseries_order", 100);
  QSeries b = eta_quotient_B(N);
  bool ok = (lambert_B3(N) - b * b * b).is_zero();
  return make_report("qseries.lambert", ok ? 0.0 : 1.0, 0.0,
                     "eta-quotient cube equals the Lambert sum exactly "
                     "through order " + std::to_string(N));
}

inline VerificationReport qseries_mirror_map(const Config& cfg) {
  long N = cfg.get_long("qseries_order", 100);
  QSeries dt = mirror_map_qpart(N).D();
  dt.c[0] += Rat(1);
  bool ok = (dt - lambert_B3(N)).is_zero();
  // D^2 of the dilogarithm part = 1 - B^3
  QSeries dd = t_gkz_qseries(N, Rat(0), Rat(0)).qpart.D().D();
  QSeries want = QSeries::one(N) - lambert_B3(N);
  ok = ok && (dd - want).is_zero();
  return make_report("qseries.mirror_map", ok ? 0.0 : 1.0, 0.0,
                     "D t = B^3 and D^2 (dilog part) = 1 - B^3, exact");
}

inline VerificationReport modular_bridge(const Config& cfg) {
  long N = cfg.get_long("qseries_order", 100);
  QSeries b3 = lambert_B3(N);
  cplx vals[3];
  int i = 0;
  for (cplx a : {cplx(0.01, 0.0), cplx(0.05, 0.0), cplx(0.1, 0.0)})
    vals[i++] = hauptmodul_bridge(a, b3).ratio;
  double resid = std::max(std::abs(vals[0] - vals[1]),
                          std::abs(vals[1] - vals[2]));
  resid = std::max(resid, std::abs(vals[0] - 1.0));
  return make_report("modular.bridge", resid, 1e-8,
                     "(1 - alpha) omega0^3 / B^3(q(tau)) constant (= 1)");
}

inline VerificationReport modular_mirror_theta(const Config& cfg) {
  long N = cfg.get_long("qseries_order", 100);
  MirrorMapCheck mc = mirror_map_check(N);
  double resid = mc.dt_equals_b3_exact ? mc.theta_alpha_residual : 1.0;
  return make_report("modular.mirror_theta", resid, 1e-10,
                     "theta_alpha t equals omega0 at the sample point");
}

inline VerificationReport modular_pairing(const Config&) {
  cplx v(0.07, 0.02), a(0.15, -0.03);
  PairingValue pv = singular_cycle_pairing(v, a);
  PairingValue pw = singular_cycle_pairing(a, v);
  double resid = std::abs(pv.value + pw.value);               // antisymmetry
  resid = std::max(resid, std::abs(singular_cycle_pairing(a, a).value));
  resid = std::max(resid, pv.beltrami_residual);
  return make_report("modular.pairing", resid, 1e-8,
                     "antisymmetry, vanishing at coincident arguments, and "
                     "the Beltrami identity");
}

// ------------------------------ curves ------------------------------

inline VerificationReport curves_branch_galois(const Config&) {
  cplx psi(0.3, 0.1);
  std::vector<cplx> bp = branch_points(psi);
  cplx rho = rho_unity();
  auto set_distance = [&](const std::vector<cplx>& s) {
    double worst = 0.0;
    for (cplx z : s) {
      double best = 1e300;
      for (cplx w : bp) best = std::min(best, std::abs(z - w));
      worst = std::max(worst, best);
    }
    return worst;
  };
  std::vector<cplx> rot, inv;
  for (cplx z : bp) {
    rot.push_back(rho * z);
    inv.push_back(1.0 / z);
  }
  double resid = std::max(set_distance(rot), set_distance(inv));
  return make_report("curves.branch_galois", resid, 1e-10,
                     "branch set invariant under x -> rho x and x -> 1/x");
}

inline VerificationReport curves_branch_degree(const Config&) {
  // discriminant of the cover cubic: (x^3+1)^2 = 4 psi^3 x^3, degree six
  cplx psi(0.29, 0.04);
  std::vector<cplx> bp = branch_points(psi);
  double resid = 0.0;
  for (cplx x : bp) {
    cplx lhs = (x * x * x + 1.0) * (x * x * x + 1.0);
    cplx rhs = 4.0 * psi * psi * psi * x * x * x;
    resid = std::max(resid, std::abs(lhs - rhs));
  }
  if (bp.size() != 6 || resid > 1e-9)
    return make_report("curves.branch_degree", 1.0, 0.0,
                       "discriminant locus mismatch");
  return make_flagged("curves.branch_degree", resid, 1e-9,
                      "six simple branch points on (x^3+1)^2 = 4 psi^3 x^3; "
                      "the recorded degree-nine display (x^3+1)^3 = "
                      "4 psi^3 x^3 contradicts its own six-point count");
}

inline VerificationReport curves_vieta(const Config&) {
  double resid = 0.0;
  for (cplx x : {cplx(0.4, 0.2), cplx(-1.1, 0.5)}) {
    cplx psi(0.31, -0.06);
    std::array<cplx, 3> r = cover_roots(x, psi);
    cplx e1 = r[0] + r[1] + r[2];
    cplx e2 = r[0] * r[1] + r[0] * r[2] + r[1] * r[2];
    cplx e3 = r[0] * r[1] * r[2];
    resid = std::max(resid, std::abs(e1));
    resid = std::max(resid, std::abs(e2 + 3.0 * psi * x));
    resid = std::max(resid, std::abs(e3 + (x * x * x + 1.0)));
  }
  return make_report("curves.vieta", resid, 1e-12,
                     "elementary symmetric functions of the cover roots");
}

inline VerificationReport curves_monodromy_permutations(const Config&) {
  cplx psi(0.3, 0.0);
  std::vector<cplx> bp = branch_points(psi);
  double resid = 0.0;
  int parity = 1;
  for (cplx b : bp) {
    std::array<int, 3> perm = loop_permutation(circle_path(b, 0.05), psi);
    int fixed = 0;
    for (int i = 0; i < 3; ++i) fixed += (perm[i] == i);
    if (fixed != 1) resid = 1.0;  // each small loop is a transposition
    parity = -parity;
  }
  // loop enclosing all six branch points: even permutation (product of six
  // transpositions)
  std::array<int, 3> big = loop_permutation(circle_path(cplx(0.0), 1.5), psi);
  int fixed = 0;
  for (int i = 0; i < 3; ++i) fixed += (big[i] == i);
  if (fixed == 1) resid = 1.0;  // a transposition would be odd
  return make_report("curves.monodromy_permutations", resid, 0.0,
                     "small loops are transpositions; the all-enclosing loop "
                     "is even");
}

inline VerificationReport curves_chain_deformation(const Config& cfg) {
  int order = (int)cfg.get_long("chain_order", 40);
  cplx psi(0.3, 0.0);
  ChainSpec c = standard_chain(psi);
  cplx direct = chain_integral_K(c.path, psi, c.start_sheet, order, order);
  // detour: same endpoints and passage class, bent midpoint
  cplx xo = c.path.segments[0].a, xb = c.path.segments[0].b;
  cplx mid = 0.5 * (xo + xb) + cplx(0.0, 0.25);
  for (int eb = 0; eb < 2; ++eb) {
    ContourPath p;
    PathSegment s1, s2, s3;
    s1.a = xo; s1.b = mid;
    s2.a = mid; s2.b = xb;
    s2.passage_at_end = true;
    s2.exit_branch = eb;
    s3.a = xb; s3.b = xo;
    p.segments = {s1, s2, s3};
    auto pts = track_path(p, psi, c.start_sheet);
    if (std::abs(pts.back().y) > 1e-6) continue;
    cplx bent = chain_integral_K(p, psi, c.start_sheet, order, order);
    return make_report("curves.chain_deformation", std::abs(direct - bent),
                       1e-8, "path deformation fixing endpoints and passage "
                              "class leaves the chain integral unchanged");
  }
  return make_report("curves.chain_deformation", 1.0, 1e-8,
                     "no deformed path reached the final point");
}

inline VerificationReport curves_cycle_fit(const Config& cfg) {
  int order = (int)cfg.get_long("chain_order", 40);
  // closed loop: two lassos from the base x = 0 around the pair of branch
  // points that collide at psi^3 = 1 (they share a transposition)
  auto lasso_pair_cycle = [&](cplx psi) {
    std::vector<cplx> bp = branch_points(psi);
    // the two members that collide as psi^3 -> 1 share a transposition; pick
    // them as the pair whose small-loop permutation fixes sheet 1 (so the
    // lassoed cycle moves the start sheet 0 and carries a nonzero period)
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < bp.size() && members.size() < 2; ++i) {
      std::array<int, 3> perm =
          loop_permutation(circle_path(bp[i], 0.05), psi);
      int fixed = -1;
      for (int k = 0; k < 3; ++k)
        if (perm[k] == k) fixed = k;
      if (fixed != 1) continue;
      members.push_back(i);
    }
    ContourPath loop;
    for (std::size_t m : members) {
      cplx b = bp[m];
      cplx dir = b / std::abs(b);
      cplx approach = b - 0.06 * dir;
      PathSegment go;
      go.a = cplx(0.0);
      go.b = approach;
      loop.segments.push_back(go);
      ContourPath circ = circle_path(b, 0.06);
      // rotate the circle to start at the approach point
      double phase = std::arg(approach - b);
      for (auto s : circ.segments) {
        s.angle0 += phase;
        s.angle1 += phase;
        loop.segments.push_back(s);
      }
      PathSegment back;
      back.a = approach;
      back.b = cplx(0.0);
      loop.segments.push_back(back);
    }
    return cycle_period(loop, psi, 0, order, 8);
  };
  cplx s1(0.26), s2(0.30), s3(0.34);
  cplx b1 = lasso_pair_cycle(s1), b2 = lasso_pair_cycle(s2);
  cplx a11 = pi1_value(s1), a12 = pi2_value(s1);
  cplx a21 = pi1_value(s2), a22 = pi2_value(s2);
  cplx det = a11 * a22 - a12 * a21;
  cplx ca = (b1 * a22 - b2 * a12) / det;
  cplx cb = (a11 * b2 - a21 * b1) / det;
  double resid =
      std::abs(lasso_pair_cycle(s3) - ca * pi1_value(s3) - cb * pi2_value(s3));
  if (std::abs(b2) < 1e-6) resid = 1.0;  // cycle must be nontrivial
  return make_report("curves.cycle_fit", resid, 1e-6,
                     "closed two-lasso cycle lies in the period span");
}

inline VerificationReport curves_sigma_translations(const Config&) {
  cplx psi(0.27, 0.05);
  double resid = 0.0;
  // sample curve point
  cplx x(0.4, 0.3);
  SheetPoint p{x, cover_roots(x, psi)[1], 1};
  for (CurveTranslation g : {CurveTranslation::sigma1, CurveTranslation::sigma2}) {
    SheetPoint q = p;
    for (int i = 0; i < 3; ++i) {
      q = translation_apply(q, g);
      resid = std::max(resid, std::abs(hesse_f(q.x, q.y, psi)));
    }
    resid = std::max(resid, std::abs(q.x - p.x) + std::abs(q.y - p.y));
  }
  return make_report("curves.sigma_translations", resid, 1e-10,
                     "translations preserve the curve and cube to identity");
}

inline VerificationReport curves_sigma1_chain_difference(const Config& cfg) {
  int order = (int)cfg.get_long("chain_order", 40);
  cplx rho = rho_unity();
  ChainSpec pin = standard_chain(cplx(0.27));
  cplx hint1 = pin.path.segments[0].b;
  cplx hint2 = rho * hint1;
  auto chain_from = [&](cplx ps, cplx xo, cplx y0, cplx hint) {
    std::vector<cplx> bp = branch_points(ps);
    std::size_t best = 0;
    for (std::size_t i = 1; i < bp.size(); ++i)
      if (std::abs(bp[i] - hint) < std::abs(bp[best] - hint)) best = i;
    std::array<cplx, 3> r = cover_roots(xo, ps);
    int s0 = 0;
    for (int i = 1; i < 3; ++i)
      if (std::abs(r[i] - y0) < std::abs(r[s0] - y0)) s0 = i;
    for (int eb = 0; eb < 2; ++eb) {
      ContourPath p;
      PathSegment s1, s2;
      s1.a = xo; s1.b = bp[best]; s1.passage_at_end = true; s1.exit_branch = eb;
      s2.a = bp[best]; s2.b = xo;
      p.segments = {s1, s2};
      auto pts = track_path(p, ps, s0);
      if (std::abs(pts.back().y) < 1e-6)
        return chain_integral_K(p, ps, s0, order, order);
    }
    throw std::domain_error("no exit reaches the torsion end point");
  };
  auto diff = [&](cplx ps) {
    cplx y0 = cplx(0, 1) * std::sqrt(3.0 * ps);
    return chain_from(ps, cplx(-1.0), y0, hint1) -
           chain_from(ps, -rho, rho * rho * y0, hint2);
  };
  cplx s1(0.26), s2(0.30), s3(0.34);
  cplx d1 = diff(s1), d2 = diff(s2);
  cplx a11 = pi1_value(s1), a12 = pi2_value(s1);
  cplx a21 = pi1_value(s2), a22 = pi2_value(s2);
  cplx det = a11 * a22 - a12 * a21;
  cplx ca = (d1 * a22 - d2 * a12) / det;
  cplx cb = (a11 * d2 - a21 * d1) / det;
  double resid = std::abs(diff(s3) - ca * pi1_value(s3) - cb * pi2_value(s3));
  return make_report("curves.sigma1_chain_difference", resid, 1e-6,
                     "difference of torsion-translated chains is a period");
}

inline VerificationReport curves_inhomogeneity_constant(const Config&) {
  cplx i1 = inhomogeneity_of_K(cplx(0.27, 0.0));
  cplx i2 = inhomogeneity_of_K(cplx(0.30, 0.0));
  double scale = std::max(std::abs(i1), std::abs(i2));
  double resid = std::abs(i1 - i2);
  if (scale < 1e-3)
    return make_report("curves.inhomogeneity_constant", 1.0, 1e-4,
                       "inhomogeneity vanished; it must be nonzero");
  std::ostringstream note;
  note << "base points 0.27 and 0.30 give " << i1.real() << "+" << i1.imag()
       << "i and " << i2.real() << "+" << i2.imag()
       << "i; the value follows the exact law -sqrt(3) i/(12 psi^(3/2)) "
          "(see curves.inhomogeneity_oracle), so it is NOT a psi-constant "
          "and this asserted invariant genuinely fails";
  return make_report("curves.inhomogeneity_constant", resid, 1e-4, note.str());
}

inline VerificationReport curves_inhomogeneity_oracle(const Config&) {
  // endpoint oracle: the exact term evaluates to -1/6 at the torsion end
  // and -1/6 + sqrt(3) i/(12 psi^(3/2)) at the square-root end, so the
  // inhomogeneity is -sqrt(3) i / (12 psi^(3/2)).
  double resid = 0.0;
  for (double p : {0.27, 0.30}) {
    cplx got = inhomogeneity_of_K(cplx(p, 0.0));
    cplx want = cplx(0.0, -std::sqrt(3.0) / (12.0 * std::pow(p, 1.5)));
    resid = std::max(resid, std::abs(got - want));
  }
  return make_report("curves.inhomogeneity_oracle", resid, 1e-6,
                     "measured inhomogeneity matches the symbolic endpoint "
                     "oracle -sqrt(3) i/(12 psi^(3/2))");
}

inline VerificationReport curves_endpoint_reference(const Config&) {
  // recorded reference: endpoint difference 1/6 - (-1/9) = 5/18, asserted
  // psi-independent.  The correct exact term gives -1/6 at EVERY torsion
  // point (so torsion-to-torsion chains are periods) and a psi-dependent
  // value at the square-root endpoint.
  cplx got = inhomogeneity_of_K(cplx(0.30, 0.0));
  double resid = std::abs(got - cplx(5.0 / 18.0, 0.0));
  return make_flagged("curves.endpoint_reference", resid, 0.0,
                      "computed inhomogeneity at psi=0.30 is "
                      "-0.87841 i, not the recorded 5/18; the recorded "
                      "exact term fails its defining identity (nonzero "
                      "remainder), see the documented analysis");
}

inline VerificationReport curves_weierstrass_scaling(const Config&) {
  // g2 = 0: X -> lambda X reduces the integral to a power of g3
  cplx w1 = weierstrass_chain(cplx(0.0), cplx(-1.0));
  cplx w2 = weierstrass_chain(cplx(0.0), cplx(-2.0));
  // W(0, g3) = |g3|^{-1/6} W(0, -1) for g3 < 0
  double resid = std::abs(w2 / w1 - std::pow(2.0, -1.0 / 6.0));
  return make_report("curves.weierstrass_scaling", resid, 1e-12,
                     "g2 = 0 scaling law");
}

inline VerificationReport curves_weierstrass_real(const Config&) {
  cplx w = weierstrass_chain(cplx(-4.0), cplx(-1.0));
  return make_report("curves.weierstrass_real", std::abs(w.imag()), 1e-12,
                     "real parameters with a positive radicand give a real "
                     "value");
}

inline VerificationReport curves_weierstrass_operator(const Config&) {
  // u(w) = W * prod a_j^{-s_j}; with exponents (-1/2,-1/4,-1/4,0) the
  // g3-direction carries no prefactor, and theta_w = theta_{g3}/2.
  cplx g2(-4.0, 0.0), g30(-1.0, 0.0);
  auto u = [&](cplx g3) { return weierstrass_chain(g2, g3, 1.0, 64, 32); };
  std::vector<cplx> tay = cauchy_taylor(u, g30, 0.04, 3);
  cplx u0 = tay[0], u1 = tay[1], u2 = 2.0 * tay[2], u3 = 6.0 * tay[3];
  cplx g = g30;
  cplx t1 = g * u1;
  cplx t2 = g * u1 + g * g * u2;
  cplx t3 = g * u1 + 3.0 * g * g * u2 + g * g * g * u3;
  cplx T1 = t1 / 2.0, T2 = t2 / 4.0, T3 = t3 / 8.0;
  cplx w = 27.0 * g30 * g30 / (g2 * g2 * g2);
  cplx lhs = T3 - 0.75 * T2 + 0.125 * T1;
  cplx rhs = T3 + (5.0 / 4.0) * T2 + (59.0 / 144.0) * T1 + (5.0 / 192.0) * u0;
  double resid = std::abs(lhs - w * rhs) / std::abs(u0);
  return make_report("curves.weierstrass_operator", resid, 1e-4,
                     "chain value satisfies the derived third-order operator "
                     "in w = 27 g3^2/g2^3");
}

// ------------------------------ cy3 ------------------------------

inline VerificationReport cy3_fundamental_period(const Config& cfg) {
  long K = cfg.get_long("cy3_layers", 10);
  bool ok = (fundamental_period(K) == fundamental_period_double_sum(K)) &&
            cy3_ck(1) == 60;
  return make_report("cy3.fundamental_period", ok ? 0.0 : 1.0, 0.0,
                     "double-sum and layered constructions agree exactly; "
                     "c_1 = 60");
}

inline VerificationReport cy3_annihilation(const Config& cfg) {
  long K = cfg.get_long("cy3_layers", 10);
  AnnihilationResult r = annihilation_check(fundamental_period(K));
  return make_report("cy3.annihilation", r.exact ? 0.0 : 1.0, 0.0,
                     "both operators annihilate the truncated period "
                     "exactly");
}

inline VerificationReport cy3_recursion(const Config&) {
  bool ok = recursion_check(20);
  return make_report("cy3.recursion", ok ? 0.0 : 1.0, 0.0,
                     "theta_a U_{k+1} = (k+1) a U_k exact for k <= 20");
}

inline VerificationReport cy3_unu_modes(const Config&) {
  double resid = 0.0;
  cplx a(3.5, 0.4);
  for (long k : {1L, 3L, 5L}) {
    cplx f = u_nu(a, Rat(k), UNuMode::finite_sum);
    cplx p = u_nu(a, Rat(k), UNuMode::pfq);
    resid = std::max(resid, std::abs(f - p) / std::abs(f));
  }
  return make_report("cy3.unu_modes", resid, 1e-10,
                     "hypergeometric and finite-sum forms agree (argument "
                     "-27 a^-3, see documented correction)");
}

inline VerificationReport cy3_barnes_annihilation(const Config& cfg) {
  long N = cfg.get_long("barnes_order", 100);
  double resid = std::max(barnes_annihilation_residual(Rat(-1), N),
                          barnes_annihilation_residual(rat(1, 2), N));
  return make_report("cy3.barnes_annihilation", resid, 1e-10,
                     "orbifold re-expansion annihilated termwise for "
                     "nu = -1 and nu = 1/2");
}

inline VerificationReport cy3_orbifold_layers(const Config& cfg) {
  long N = cfg.get_long("barnes_order", 60);
  std::vector<OrbifoldLayer> layers = orbifold_expansion_b0(6, N);
  double resid = 0.0;
  for (const auto& L : layers) resid = std::max(resid, L.annihilation_residual);
  // nu = 0 layer: constant (the regular solution seed)
  for (std::size_t n = 1; n < layers[0].series.size(); ++n)
    resid = std::max(resid, std::abs(layers[0].series[n]));
  return make_report("cy3.orbifold_layers", resid, 1e-10,
                     "small-b layers annihilated by their operators; the "
                     "top layer is the regular seed");
}

inline VerificationReport cy3_barnes_oscillating(const Config&) {
  // nu = -1 layer vs the octant-integral series: classes n = 0, 1 mod 3
  // match up to per-class constants C and C rho; the n = 2 mod 3 class of
  // the re-expansion vanishes identically while the integral's does not.
  std::vector<cplx> t = barnes_terms(Rat(-1), 22);
  cplx rho = std::exp(cplx(0, 2.0 * M_PI / 3.0));
  auto osc = [&](long n) {
    double g = std::tgamma((n + 1) / 3.0);
    return std::pow(3.0, (double)n) / 27.0 * g * g * g /
           std::tgamma(n + 1.0);
  };
  cplx r0 = t[0] * std::pow(-3.0, 0.0) / osc(0);
  double resid = 0.0;
  for (long n = 0; n <= 20; ++n) {
    cplx un = t[(std::size_t)n] * std::pow(-3.0, (double)n);
    if (n % 3 == 2) {
      resid = std::max(resid, std::abs(un));  // vanishing class
      continue;
    }
    cplx want = r0 * std::pow(rho, (double)n) * osc(n);
    resid = std::max(resid, std::abs(un - want) / std::abs(want));
  }
  if (resid > 1e-10)
    return make_report("cy3.barnes_oscillating", resid, 1e-10,
                       "per-class proportionality failed");
  return make_flagged("cy3.barnes_oscillating", resid, 1e-10,
                      "classes 0,1 mod 3 reproduce the octant-integral "
                      "series up to one constant (power base corrected to "
                      "-rho a); the 2 mod 3 class vanishes identically, so "
                      "the re-expansion is a period, not the full integral");
}

}  // namespace checks

// ------------------------------ registry ------------------------------

inline const std::vector<std::pair<std::string, CheckFn>>& check_registry() {
  static const std::vector<std::pair<std::string, CheckFn>> reg = {
      {"curves.branch_degree", checks::curves_branch_degree},
      {"curves.branch_galois", checks::curves_branch_galois},
      {"curves.chain_deformation", checks::curves_chain_deformation},
      {"curves.cycle_fit", checks::curves_cycle_fit},
      {"curves.endpoint_reference", checks::curves_endpoint_reference},
      {"curves.inhomogeneity_constant", checks::curves_inhomogeneity_constant},
      {"curves.inhomogeneity_oracle", checks::curves_inhomogeneity_oracle},
      {"curves.monodromy_permutations", checks::curves_monodromy_permutations},
      {"curves.sigma1_chain_difference", checks::curves_sigma1_chain_difference},
      {"curves.sigma_translations", checks::curves_sigma_translations},
      {"curves.vieta", checks::curves_vieta},
      {"curves.weierstrass_operator", checks::curves_weierstrass_operator},
      {"curves.weierstrass_real", checks::curves_weierstrass_real},
      {"curves.weierstrass_scaling", checks::curves_weierstrass_scaling},
      {"cy3.annihilation", checks::cy3_annihilation},
      {"cy3.barnes_annihilation", checks::cy3_barnes_annihilation},
      {"cy3.barnes_oscillating", checks::cy3_barnes_oscillating},
      {"cy3.fundamental_period", checks::cy3_fundamental_period},
      {"cy3.orbifold_layers", checks::cy3_orbifold_layers},
      {"cy3.recursion", checks::cy3_recursion},
      {"cy3.unu_modes", checks::cy3_unu_modes},
      {"frobenius.connection", checks::frobenius_connection},
      {"frobenius.deformation", checks::frobenius_deformation},
      {"frobenius.j3_constant", checks::frobenius_j3_constant},
      {"frobenius.monodromy", checks::frobenius_monodromy},
      {"frobenius.series_annihilation", checks::frobenius_series_annihilation},
      {"frobenius.solver_depths", checks::frobenius_solver_depths},
      {"modular.bridge", checks::modular_bridge},
      {"modular.mirror_theta", checks::modular_mirror_theta},
      {"modular.pairing", checks::modular_pairing},
      {"modular.wronskian", checks::modular_wronskian},
      {"opalg.factorization", checks::opalg_factorization},
      {"opalg.golden_operators", checks::opalg_golden_operators},
      {"oscint.decomposition", checks::oscint_decomposition},
      {"oscint.functional_relations", checks::oscint_functional_relations},
      {"oscint.gamma_prefactor", checks::oscint_gamma_prefactor},
      {"oscint.quadrature2d", checks::oscint_quadrature2d},
      {"oscint.quadrature3d", checks::oscint_quadrature3d},
      {"oscint.scorer", checks::oscint_scorer},
      {"qseries.lambert", checks::qseries_lambert},
      {"qseries.mirror_map", checks::qseries_mirror_map},
  };
  return reg;
}

inline SuiteReport run_suite(const std::string& filter, const Config& cfg) {
  const auto& reg = check_registry();
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < reg.size(); ++i)
    if (filter.empty() || glob_match(filter, reg[i].first)) todo.push_back(i);
  SuiteReport out;
  out.config_hash = cfg.hash();
  out.suite.resize(todo.size());
  long workers = cfg.get_long("workers", 1);
  if (workers < 1) workers = 1;
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t slot = next.fetch_add(1);
      if (slot >= todo.size()) break;
      const auto& [id, fn] = reg[todo[slot]];
      auto t0 = std::chrono::steady_clock::now();
      VerificationReport r;
      try {
        r = fn(cfg);
      } catch (const std::exception& e) {
        r.id = id;
        r.status = "fail";
        r.residual = 1.0;
        r.tolerance = 0.0;
        r.note = std::string("exception: ") + e.what();
      }
      r.runtime = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0).count();
      out.suite[slot] = std::move(r);
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::future<void>> fs;
    for (long i = 0; i < workers; ++i)
      fs.push_back(std::async(std::launch::async, worker));
    for (auto& f : fs) f.get();
  }
  return out;
}

}  // namespace hessegkz
