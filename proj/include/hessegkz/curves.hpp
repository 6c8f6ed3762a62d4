#pragma once

// Geometry of the Hesse cubic x^3 + y^3 + 1 - 3 psi x y = 0 (chart z = 1)
// as a 3:1 cover of the x-line: branch points, sheet tracking along paths,
// the chain integral K(psi), its inhomogeneity, cycle periods, torsion
// translations, and the Weierstrass chain integral.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hessegkz/quadrature.hpp"
#include "hessegkz/rational.hpp"

namespace hessegkz {

inline cplx rho_unity() { return std::exp(cplx(0, 2.0 * M_PI / 3.0)); }

// f(x, y) = y^3 - 3 psi x y + x^3 + 1,  f_y = 3 y^2 - 3 psi x.
inline cplx hesse_f(cplx x, cplx y, cplx psi) {
  return y * y * y - 3.0 * psi * x * y + x * x * x + 1.0;
}
inline cplx hesse_fy(cplx x, cplx y, cplx psi) {
  return 3.0 * y * y - 3.0 * psi * x;
}

// Roots of the monic cubic t^3 + p t + q (Cardano + Newton polish),
// deterministic order before sorting.
inline std::array<cplx, 3> depressed_cubic_roots(cplx p, cplx q) {
  std::array<cplx, 3> r;
  cplx disc = q * q / 4.0 + p * p * p / 27.0;
  cplx s = std::sqrt(disc);
  cplx u3 = -q / 2.0 + s;
  if (std::abs(u3) < 1e-3 * (std::abs(q) + std::abs(p)) || std::abs(u3) == 0.0)
    u3 = -q / 2.0 - s;  // avoid cancellation
  cplx u = std::pow(u3, 1.0 / 3.0);
  if (std::abs(u) == 0.0) {
    r = {cplx(0), cplx(0), cplx(0)};
    return r;
  }
  cplx w = rho_unity();
  for (int k = 0; k < 3; ++k) {
    cplx uk = u * std::pow(w, k);
    cplx t = uk - p / (3.0 * uk);
    // Newton polish
    for (int it = 0; it < 3; ++it) {
      cplx f = t * t * t + p * t + q;
      cplx df = 3.0 * t * t + p;
      if (std::abs(df) < 1e-300) break;
      t -= f / df;
    }
    r[k] = t;
  }
  return r;
}

// (re, im)-lexicographic order with a relative tolerance on the real parts,
// so rounding at the last ulp cannot flip the order of near-conjugate pairs.
inline bool lex_less(cplx a, cplx b) {
  double tol = 1e-9 * (1.0 + std::abs(a) + std::abs(b));
  if (std::abs(a.real() - b.real()) > tol) return a.real() < b.real();
  return a.imag() < b.imag() - tol;
}

// The three y-values over x, sorted lexicographically by (re, im).
inline std::array<cplx, 3> cover_roots(cplx x, cplx psi) {
  std::array<cplx, 3> r =
      depressed_cubic_roots(-3.0 * psi * x, x * x * x + 1.0);
  std::sort(r.begin(), r.end(), lex_less);
  return r;
}

// Branch points: (x^3+1)^2 = 4 psi^3 x^3, six x-values (u = x^3 quadratic
// then cube roots).  The set is closed under x -> rho x and x -> 1/x.
inline std::vector<cplx> branch_points(cplx psi) {
  cplx p3 = psi * psi * psi;
  if (std::abs(p3) < 1e-12 || std::abs(p3 - 1.0) < 1e-12)
    throw std::domain_error("degenerate fiber: psi^3 in {0, 1}");
  // u^2 + (2 - 4 psi^3) u + 1 = 0
  cplx bq = 2.0 - 4.0 * p3;
  cplx s = std::sqrt(bq * bq - 4.0);
  cplx u1 = (-bq + s) / 2.0;
  cplx u2 = (-bq - s) / 2.0;
  std::vector<cplx> out;
  for (cplx u : {u1, u2}) {
    cplx c = std::pow(u, 1.0 / 3.0);
    for (int k = 0; k < 3; ++k) out.push_back(c * std::pow(rho_unity(), k));
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

// Double y-root over a branch point: y_b with y_b^2 = psi x_b, sign fixed by
// 2 y_b^3 = x_b^3 + 1; the simple root is -2 y_b.
inline cplx branch_double_root(cplx xb, cplx psi) {
  cplx y = std::sqrt(psi * xb);
  if (std::abs(2.0 * y * y * y - (xb * xb * xb + 1.0)) >
      std::abs(2.0 * y * y * y + (xb * xb * xb + 1.0)))
    y = -y;
  return y;
}

struct SheetPoint {
  cplx x, y;
  int sheet = -1;  // index into the (re, im)-sorted roots at the path start
};

struct PathSegment {
  enum class Kind { line, arc };
  Kind kind = Kind::line;
  cplx a, b;          // line endpoints
  cplx center;        // arc data
  double radius = 0.0;
  double angle0 = 0.0, angle1 = 0.0;
  // branch passage: segment ends exactly at a branch point and the sheet
  // continues on the chosen member of the colliding pair
  bool passage_at_end = false;
  int exit_branch = 0;  // 0/1: (re, im)-sorted order of the colliding pair

  cplx at(double t) const {
    if (kind == Kind::line) return a + t * (b - a);
    double th = angle0 + t * (angle1 - angle0);
    return center + radius * cplx(std::cos(th), std::sin(th));
  }
  cplx velocity(double t) const {
    if (kind == Kind::line) return b - a;
    double th = angle0 + t * (angle1 - angle0);
    return radius * (angle1 - angle0) * cplx(-std::sin(th), std::cos(th));
  }
};

struct ContourPath {
  std::vector<PathSegment> segments;
};

namespace detail {

// Continue y from a known value at x to the nearest root at x2.
inline cplx nearest_root(cplx x2, cplx psi, cplx y_prev, double* gap = nullptr) {
  std::array<cplx, 3> r = cover_roots(x2, psi);
  int best = 0;
  double d0 = 1e300, d1 = 1e300;
  for (int i = 0; i < 3; ++i) {
    double d = std::abs(r[i] - y_prev);
    if (d < d0) {
      d1 = d0;
      d0 = d;
      best = i;
    } else if (d < d1) {
      d1 = d;
    }
  }
  if (gap) *gap = d1 - d0;
  return r[best];
}

// At a passage exit: the colliding-pair member selected by the annotation,
// probed at a fixed small parameter offset past the branch point so that
// every consumer of the annotation resolves it identically.
inline cplx passage_exit_root(const PathSegment& next, cplx psi, cplx yb,
                              int exit_branch, double t_probe = 1e-4) {
  cplx xe = next.at(t_probe);
  std::array<cplx, 3> rr = cover_roots(xe, psi);
  std::array<int, 3> idx{0, 1, 2};
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return std::abs(rr[a] - yb) < std::abs(rr[b] - yb);
  });
  int i0 = idx[0], i1 = idx[1];
  if (!lex_less(rr[i0], rr[i1])) std::swap(i0, i1);
  return rr[(exit_branch == 0) ? i0 : i1];
}

}  // namespace detail

// Track y continuously along the path from the given starting sheet.
// Returns the sampled points (segment endpoints only) ending with the final
// sheet point.
inline std::vector<SheetPoint> track_path(const ContourPath& path, cplx psi,
                                          int start_sheet,
                                          int steps_per_segment = 400) {
  if (path.segments.empty()) throw std::invalid_argument("empty path");
  cplx x0 = path.segments.front().at(0.0);
  std::array<cplx, 3> r0 = cover_roots(x0, psi);
  if (start_sheet < 0 || start_sheet > 2)
    throw std::invalid_argument("sheet index out of range");
  SheetPoint cur{x0, r0[start_sheet], start_sheet};
  std::vector<SheetPoint> out{cur};
  for (std::size_t si = 0; si < path.segments.size(); ++si) {
    const PathSegment& seg = path.segments[si];
    bool from_passage = si > 0 && path.segments[si - 1].passage_at_end;
    int n = steps_per_segment;
    double t_end = seg.passage_at_end ? 1.0 - 1e-9 : 1.0;
    for (int i = 1; i <= n; ++i) {
      double t = t_end * i / n;
      cplx x = seg.at(t);
      if (i == 1 && from_passage) {
        // leave the branch point on the annotated member of the colliding
        // pair (cur.y is the double root y_b here)
        cplx yc = detail::passage_exit_root(
            seg, psi, cur.y, path.segments[si - 1].exit_branch);
        cur = SheetPoint{seg.at(1e-4), yc, cur.sheet};
        // fall through to regular matching from the probe point
        cplx y1 = detail::nearest_root(x, psi, cur.y);
        cur = SheetPoint{x, y1, cur.sheet};
        continue;
      }
      double gap = 0.0;
      cplx y = detail::nearest_root(x, psi, cur.y, &gap);
      if (gap < 1e-12 && !seg.passage_at_end && !(from_passage && i <= 4))
        throw std::domain_error("ambiguous sheet matching; refine step size");
      cur = SheetPoint{x, y, cur.sheet};
    }
    if (seg.passage_at_end) {
      // land on the double root, then leave on the requested member of the
      // colliding pair (decided by the caller's annotation)
      cplx xb = seg.at(1.0);
      cplx yb = branch_double_root(xb, psi);
      cur = SheetPoint{xb, yb, cur.sheet};
    }
    out.push_back(cur);
  }
  // final sheet index relative to sorted roots at the end
  std::array<cplx, 3> re = cover_roots(out.back().x, psi);
  int idx = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(re[i] - out.back().y) < std::abs(re[idx] - out.back().y))
      idx = i;
  out.back().sheet = idx;
  return out;
}

// Permutation of sheets induced by a closed path (start sheet -> end sheet).
inline std::array<int, 3> loop_permutation(const ContourPath& path, cplx psi,
                                           int steps_per_segment = 400) {
  std::array<int, 3> perm{};
  for (int s = 0; s < 3; ++s) {
    auto pts = track_path(path, psi, s, steps_per_segment);
    perm[s] = pts.back().sheet;
  }
  return perm;
}

// Integral of psi dx / f_y along a tracked segment, with the y-continuation
// threaded through the quadrature nodes in order.
namespace detail {

inline cplx integrate_segment(const PathSegment& seg, cplx psi, cplx& y,
                              double t0, double t1, int order, int panels) {
  const QuadRule& r = gauss_legendre(order);
  cplx acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    double a = t0 + (t1 - t0) * p / panels;
    double b = t0 + (t1 - t0) * (p + 1) / panels;
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      double t = mid + half * r.x[i];
      cplx x = seg.at(t);
      y = nearest_root(x, psi, y);
      acc += half * r.w[i] * psi * seg.velocity(t) / hesse_fy(x, y, psi);
    }
    // re-anchor continuation at the panel end
    y = nearest_root(seg.at(b), psi, y);
  }
  return acc;
}

}  // namespace detail

// Chain integral K = integral psi dx / (3 y^2 - 3 psi x) along the path,
// starting on the given sheet.  Branch passages use the x = x_b + d t^2
// reparametrization so the quadrature never sees the square-root kink.
inline cplx chain_integral_K(const ContourPath& path, cplx psi, int start_sheet,
                             int order = 32, int panels = 24) {
  cplx x0 = path.segments.front().at(0.0);
  cplx y = cover_roots(x0, psi)[start_sheet];
  cplx acc = 0.0;
  bool entering_from_passage = false;
  cplx y_pair_choice;
  for (std::size_t si = 0; si < path.segments.size(); ++si) {
    const PathSegment& seg = path.segments[si];
    // the u = sqrt(t) substitution is applied on a quarter of the parameter
    // range adjacent to a branch passage; the integrand is analytic in u
    // there, and threading the continuation monotonically in u keeps the
    // nearest-root matching unambiguous (the colliding pair separates
    // linearly in u)
    const double eps = 0.25, s1 = 0.5;
    const QuadRule& gr = gauss_legendre(order);
    if (entering_from_passage) {
      // leave the branch point on the annotated member of the colliding pair
      const PathSegment& prev = path.segments[si - 1];
      cplx xb = prev.at(1.0);
      cplx yb = branch_double_root(xb, psi);
      // the annotated member of the colliding pair, probed just past x_b;
      // near the passage the pair separates linearly in u = sqrt(t), so
      // nearest-root threading anchored on the probe stays on the chosen
      // member for every u > 0
      cplx yy = detail::passage_exit_root(seg, psi, yb, prev.exit_branch);
      // integral over t in [0, eps]: t = u^2, traversed upward in u
      for (int p = 0; p < panels; ++p) {
        double ua = s1 * (double)p / panels;
        double ub = s1 * (double)(p + 1) / panels;
        double mid = 0.5 * (ua + ub), halfp = 0.5 * (ub - ua);
        for (std::size_t i = 0; i < gr.x.size(); ++i) {
          double u = mid + halfp * gr.x[i];
          double t = u * u;
          cplx x = seg.at(t);
          yy = detail::nearest_root(x, psi, yy);
          acc += halfp * gr.w[i] * 2.0 * u * psi * seg.velocity(t) /
                 hesse_fy(x, yy, psi);
        }
      }
      y = yy;  // now at t = eps on the chosen sheet
      acc += detail::integrate_segment(seg, psi, y, eps, 1.0, order, panels);
      entering_from_passage = false;
      continue;
    }
    if (seg.passage_at_end) {
      acc += detail::integrate_segment(seg, psi, y, 0.0, 1.0 - eps, order,
                                       panels);
      cplx xb = seg.at(1.0);
      cplx yb = branch_double_root(xb, psi);
      // integral over t in [1 - eps, 1]: t = 1 - u^2, u from s1 down to 0
      cplx yy = y;
      for (int p = 0; p < panels; ++p) {
        double ua = s1 * (1.0 - (double)p / panels);
        double ub = s1 * (1.0 - (double)(p + 1) / panels);
        double mid = 0.5 * (ua + ub), halfp = 0.5 * (ua - ub);
        for (std::size_t i = 0; i < gr.x.size(); ++i) {
          double u = mid - halfp * gr.x[i];
          double t = 1.0 - u * u;
          cplx x = seg.at(t);
          yy = detail::nearest_root(x, psi, yy);
          acc += halfp * gr.w[i] * 2.0 * u * psi * seg.velocity(t) /
                 hesse_fy(x, yy, psi);
        }
      }
      y = yb;
      entering_from_passage = true;
      continue;
    }
    acc += detail::integrate_segment(seg, psi, y, 0.0, 1.0, order, panels);
  }
  return acc;
}

struct ChainSpec {
  ContourPath path;
  int start_sheet;
  cplx y_start, y_end;
};

// Canonical chain: from [x_o, +(3 psi x_o)^{1/2}] to the y = 0 torsion point
// over the same x_o, through one adjacent branch point.  The branch point and
// exit annotation are chosen deterministically so the tracked path ends at
// y = 0; pass branch_hint (from a nearby psi) to pin the homotopy class when
// sampling psi over a small circle.
inline ChainSpec standard_chain(cplx psi, cplx x_o = cplx(-1.0, 0.0),
                                cplx branch_hint = cplx(0.0, 0.0)) {
  std::vector<cplx> bp = branch_points(psi);
  std::vector<cplx> candidates;
  if (branch_hint != cplx(0.0, 0.0)) {
    cplx best = bp[0];
    for (cplx b : bp)
      if (std::abs(b - branch_hint) < std::abs(best - branch_hint)) best = b;
    candidates = {best};
  } else {
    std::sort(bp.begin(), bp.end(), [&](cplx a, cplx b) {
      double da = std::abs(a - x_o), db = std::abs(b - x_o);
      if (std::abs(da - db) > 1e-9 * (1.0 + da + db)) return da < db;
      return lex_less(a, b);
    });
    candidates = {bp[0], bp[1]};
  }
  // (3 psi x_o)^{1/2}, written so the branch is continuous for psi near the
  // positive real axis and x_o on the torsion locus x_o^3 = -1
  cplx y0 = cplx(0, 1) * std::sqrt(-3.0 * psi * x_o);
  std::array<cplx, 3> r = cover_roots(x_o, psi);
  int s0 = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(r[i] - y0) < std::abs(r[s0] - y0)) s0 = i;
  for (cplx xb : candidates)
    for (int eb = 0; eb < 2; ++eb) {
      ContourPath p;
      PathSegment s1;
      s1.a = x_o;
      s1.b = xb;
      s1.passage_at_end = true;
      s1.exit_branch = eb;
      PathSegment s2;
      s2.a = xb;
      s2.b = x_o;
      p.segments = {s1, s2};
      auto pts = track_path(p, psi, s0);
      if (std::abs(pts.back().y) < 1e-6)
        return {p, s0, r[s0], pts.back().y};
    }
  throw std::domain_error(
      "no chain through an adjacent branch point reaches y = 0");
}

// Apply psi^{-3} (theta - 2)(theta - 1) - theta^2 to K(psi) by Cauchy
// differentiation of the chain integral on a circle around psi0; the theorem
// asserts the result is a nonzero psi-independent constant.
inline cplx inhomogeneity_of_K(cplx psi0, double radius_factor = 0.05,
                               int order = 32, int panels = 24) {
  ChainSpec pin = standard_chain(psi0);
  cplx xb0 = pin.path.segments[0].b;
  auto Kf = [&](cplx psi) {
    ChainSpec c = standard_chain(psi, cplx(-1.0, 0.0), xb0);
    return chain_integral_K(c.path, psi, c.start_sheet, order, panels);
  };
  std::vector<cplx> tay =
      cauchy_taylor(Kf, psi0, radius_factor * std::abs(psi0), 2);
  cplx K = tay[0], K1 = tay[1], K2 = 2.0 * tay[2];
  cplx thK = psi0 * K1;
  cplx th2K = psi0 * K1 + psi0 * psi0 * K2;
  cplx p3 = psi0 * psi0 * psi0;
  return (th2K - 3.0 * thK + 2.0 * K) / p3 - th2K;
}

// Translations sigma1: (x, y, z) -> (x, rho y, rho^2 z), sigma2:
// (x, y, z) -> (y, z, x), renormalized to the z = 1 chart.
enum class CurveTranslation { sigma1, sigma2 };

inline SheetPoint translation_apply(const SheetPoint& p, CurveTranslation g) {
  cplx w = rho_unity();
  if (g == CurveTranslation::sigma1) {
    // (x : rho y : rho^2) -> divide by rho^2
    return {p.x / (w * w), p.y * w / (w * w), -1};
  }
  // (y : 1 : x) -> divide by x
  if (std::abs(p.x) < 1e-14)
    throw std::domain_error("sigma2 image leaves the z = 1 chart");
  return {p.y / p.x, 1.0 / p.x, -1};
}

// Cycle period: closed-loop integral of psi dx / f_y starting on the given
// sheet; the loop is traversed once with sheet continuation (not summed over
// sheets), so a loop that exchanges sheets must be passed twice by the
// caller if a closed curve-cycle is wanted.
inline cplx cycle_period(const ContourPath& loop, cplx psi, int start_sheet,
                         int order = 32, int panels = 48) {
  cplx x0 = loop.segments.front().at(0.0);
  cplx y = cover_roots(x0, psi)[start_sheet];
  cplx acc = 0.0;
  for (const auto& seg : loop.segments)
    acc += detail::integrate_segment(seg, psi, y, 0.0, 1.0, order, panels);
  return acc;
}

inline ContourPath circle_path(cplx center, double radius, int nsegments = 8) {
  ContourPath p;
  for (int i = 0; i < nsegments; ++i) {
    PathSegment s;
    s.kind = PathSegment::Kind::arc;
    s.center = center;
    s.radius = radius;
    s.angle0 = 2.0 * M_PI * i / nsegments;
    s.angle1 = 2.0 * M_PI * (i + 1) / nsegments;
    p.segments.push_back(s);
  }
  return p;
}

// ------------------- Weierstrass chain -------------------

// integral_0^infty dX / sqrt(4 X^3 - g2 X - g3), branch continued from the
// principal square root at X = 0; the tail is folded by X = 1/u, u = w^2.
inline cplx weierstrass_chain(cplx g2, cplx g3, double R = 1.0,
                              int order = 64, int panels = 64) {
  auto P = [&](cplx X) { return 4.0 * X * X * X - g2 * X - g3; };
  cplx y = std::sqrt(P(cplx(0.0)));
  auto cont_sqrt = [&](cplx val) {
    cplx s = std::sqrt(val);
    if (std::abs(s - y) > std::abs(s + y)) s = -s;
    y = s;
    return s;
  };
  const QuadRule& r = gauss_legendre(order);
  cplx acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    double a = R * p / panels, b = R * (p + 1) / panels;
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      double X = mid + half * r.x[i];
      cplx s = cont_sqrt(P(X));
      if (std::abs(s) < 1e-12)
        throw std::domain_error("cubic root on the integration ray");
      acc += half * r.w[i] / s;
    }
    cont_sqrt(P(b));
  }
  // tail: X = 1/w^2, dX = -2 w^{-3} dw, 1/sqrt(P) = w^3/sqrt(4 - g2 w^4 - g3 w^6)
  // so integral_R^inf = integral_0^{1/sqrt(R)} 2 dw / sqrt(4 - g2 w^4 - g3 w^6)
  double W = 1.0 / std::sqrt(R);
  cplx ytail = y;  // continue the branch from X = R (w = W) down to w = 0
  auto Q = [&](double w) {
    double w2 = w * w;
    return 4.0 - g2 * w2 * w2 - g3 * w2 * w2 * w2;
  };
  // establish branch continuity at the joint: sqrt(P(R)) = sqrt(Q(W))/W^3
  {
    cplx joint = std::sqrt(Q(W));
    if (std::abs(joint / (W * W * W) - ytail) >
        std::abs(-joint / (W * W * W) - ytail))
      joint = -joint;
    ytail = joint;
  }
  cplx acc2 = 0.0;
  for (int p = 0; p < panels; ++p) {
    double a = W * (1.0 - (double)p / panels);
    double b = W * (1.0 - (double)(p + 1) / panels);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      double w = mid + half * r.x[i];
      cplx s = std::sqrt(Q(w));
      if (std::abs(s - ytail) > std::abs(s + ytail)) s = -s;
      ytail = s;
      acc2 += half * r.w[i] * 2.0 / s;
    }
  }
  // acc2 was accumulated with decreasing w (for branch continuity from the
  // joint); the oriented tail is the negative
  return acc - acc2;
}

}  // namespace hessegkz
