#pragma once

// Monomial family data and the symbolic derivation of its annihilating
// operators: Euler (scaling) operators, the box operator from the monomial
// relation, and the reduced one-variable operator in the ansatz variable.

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

#include "hessegkz/rational.hpp"
#include "hessegkz/thetaop.hpp"

namespace hessegkz {

struct FamilySpec {
  std::string name;
  std::vector<std::string> coeff_names;        // a_0, a_1, ...
  std::vector<std::vector<long>> monomials;    // row j = exponent vector of a_j
  std::vector<long> weights;                   // form weight per torus variable
  std::vector<long> box;                       // monomial relation multiplicities
  Rat ansatz_constant{1};                      // z = C * prod_j a_j^{box_j}
  std::string reduced_var = "z";

  std::size_t ncoeff() const { return monomials.size(); }
  std::size_t ntorus() const { return monomials.empty() ? 0 : monomials[0].size(); }

  void validate() const {
    if (monomials.empty()) throw std::invalid_argument("empty family");
    if (coeff_names.size() != ncoeff())
      throw std::invalid_argument("coefficient name count mismatch");
    for (const auto& row : monomials)
      if (row.size() != ntorus())
        throw std::invalid_argument("ragged exponent matrix");
    if (weights.size() != ntorus())
      throw std::invalid_argument("weight vector length mismatch");
    if (box.size() != ncoeff())
      throw std::invalid_argument("box vector length mismatch");
    // box relation annihilates the exponent matrix, including the implicit
    // homogeneity column of ones
    long colsum = 0;
    for (long l : box) colsum += l;
    if (colsum != 0)
      throw std::invalid_argument("box relation not homogeneous in the coefficients");
    for (std::size_t i = 0; i < ntorus(); ++i) {
      long s = 0;
      for (std::size_t j = 0; j < ncoeff(); ++j) s += box[j] * monomials[j][i];
      if (s != 0)
        throw std::invalid_argument("box relation does not annihilate the exponents");
    }
  }

  // All monomials must share one weighted total degree.
  long total_degree() const {
    long deg = 0;
    for (std::size_t i = 0; i < ntorus(); ++i) deg += weights[i] * monomials[0][i];
    for (const auto& row : monomials) {
      long d = 0;
      for (std::size_t i = 0; i < ntorus(); ++i) d += weights[i] * row[i];
      if (d != deg)
        throw std::invalid_argument("monomials are not equal-degree");
    }
    return deg;
  }

  bool calabi_yau() const {
    long s = 0;
    for (long w : weights) s += w;
    return s == total_degree();
  }
};

struct GKZDerivation {
  std::vector<ThetaOperator> euler;  // torus scalings, then coefficient scaling
  ThetaOperator box;
  ThetaOperator reduced;             // monic, one variable
  bool calabi_yau = false;
  std::vector<Rat> exponents;        // the eliminated s_j
};

namespace detail {

// Solve M s = b (exact); requires a solution to exist.  Free variables are
// set to zero.
inline std::vector<Rat> solve_affine(std::vector<std::vector<Rat>> M,
                                     std::vector<Rat> b) {
  std::size_t rows = M.size(), cols = rows ? M[0].size() : 0;
  std::vector<long> pivot_col(rows, -1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && M[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(M[p], M[r]);
    std::swap(b[p], b[r]);
    Rat inv = Rat(1) / M[r][c];
    for (std::size_t cc = c; cc < cols; ++cc) M[r][cc] *= inv;
    b[r] *= inv;
    for (std::size_t rr = 0; rr < rows; ++rr) {
      if (rr == r || M[rr][c] == 0) continue;
      Rat f = M[rr][c];
      for (std::size_t cc = c; cc < cols; ++cc) M[rr][cc] -= f * M[r][cc];
      b[rr] -= f * b[r];
    }
    pivot_col[r] = (long)c;
    ++r;
  }
  for (std::size_t rr = r; rr < rows; ++rr)
    if (b[rr] != 0)
      throw std::domain_error(
          "inconsistent scaling system; elimination blocked");
  std::vector<Rat> s(cols, Rat(0));
  for (std::size_t rr = 0; rr < r; ++rr) s[(std::size_t)pivot_col[rr]] = b[rr];
  return s;
}

}  // namespace detail

inline GKZDerivation derive_gkz(const FamilySpec& f) {
  f.validate();
  GKZDerivation out;
  out.calabi_yau = f.calabi_yau();
  std::size_t n = f.ncoeff(), t = f.ntorus();
  const auto& vars = f.coeff_names;

  // Euler operators: one per torus variable, plus the coefficient scaling.
  for (std::size_t i = 0; i < t; ++i) {
    ThetaOperator E = ThetaOperator::constant(vars, Rat(f.weights[i]));
    for (std::size_t j = 0; j < n; ++j)
      if (f.monomials[j][i] != 0)
        E += Rat(f.monomials[j][i]) * ThetaOperator::theta(vars, j);
    out.euler.push_back(E);
  }
  {
    ThetaOperator E = ThetaOperator::constant(vars, Rat(1));
    for (std::size_t j = 0; j < n; ++j)
      E += ThetaOperator::theta(vars, j);
    out.euler.push_back(E);
  }

  // Box operator: prod_{l_j>0} d_j^{l_j} - prod_{l_j<0} d_j^{-l_j} with
  // d_j^k = a_j^{-k} theta_j (theta_j - 1) ... (theta_j - k + 1).
  auto falling = [&](int plus_side) {
    ThetaOperator acc = ThetaOperator::identity(vars);
    for (std::size_t j = 0; j < n; ++j) {
      long l = f.box[j];
      long k = plus_side ? (l > 0 ? l : 0) : (l < 0 ? -l : 0);
      if (k == 0) continue;
      std::vector<long> e(n, 0);
      e[j] = -k;
      ThetaOperator fac = ThetaOperator::monomial(vars, e);
      for (long r = 0; r < k; ++r)
        fac = compose(fac, ThetaOperator::theta(vars, j) -
                               ThetaOperator::constant(vars, Rat(r)));
      acc = compose(acc, fac);
    }
    return acc;
  };
  out.box = falling(1) - falling(0);

  // Exponents s_j: the unique (up to the box direction) solution of
  //   sum_j m_{j,i} s_j = -weights_i,   sum_j s_j = -1,
  // normalized along the box direction so the smallest indicial root of the
  // reduced operator at z = 0 is exactly 0.
  std::vector<std::vector<Rat>> M(t + 1, std::vector<Rat>(n, Rat(0)));
  std::vector<Rat> rhs(t + 1);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < n; ++j) M[i][j] = Rat(f.monomials[j][i]);
    rhs[i] = Rat(-f.weights[i]);
  }
  for (std::size_t j = 0; j < n; ++j) M[t][j] = Rat(1);
  rhs[t] = Rat(-1);
  std::vector<Rat> s = detail::solve_affine(M, rhs);
  bool have_shift = false;
  Rat shift(0);
  for (std::size_t j = 0; j < n; ++j) {
    if (f.box[j] <= 0) continue;
    for (long r = 0; r < f.box[j]; ++r) {
      Rat cand = (Rat(r) - s[j]) / Rat(f.box[j]);
      if (!have_shift || cand < shift) {
        shift = cand;
        have_shift = true;
      }
    }
  }
  if (!have_shift) throw std::domain_error("box relation has no positive part");
  for (std::size_t j = 0; j < n; ++j) s[j] += shift * Rat(f.box[j]);
  out.exponents = s;

  // Reduced operator: P(theta) - (1/C) z Q(theta) with
  //   P = prod_{l_j>0} prod_{r<l_j} (s_j + l_j theta - r),
  //   Q = prod_{l_j<0} prod_{r<-l_j} (s_j + l_j theta - r),
  // made monic.
  std::vector<std::string> rv{f.reduced_var};
  auto product = [&](int plus_side) {
    ThetaOperator acc = ThetaOperator::identity(rv);
    for (std::size_t j = 0; j < n; ++j) {
      long l = f.box[j];
      long k = plus_side ? (l > 0 ? l : 0) : (l < 0 ? -l : 0);
      if (k == 0) continue;
      for (long r = 0; r < k; ++r) {
        ThetaOperator lin =
            Rat(l) * ThetaOperator::theta(rv, 0) +
            ThetaOperator::constant(rv, s[j] - Rat(r));
        acc = compose(acc, lin);
      }
    }
    return acc;
  };
  ThetaOperator P = product(1), Q = product(0);
  Rat lead(1);
  for (std::size_t j = 0; j < n; ++j)
    if (f.box[j] > 0) lead *= rat_pow(Rat(f.box[j]), f.box[j]);
  ThetaOperator zQ = compose(ThetaOperator::monomial(rv, {1}), Q);
  out.reduced = (Rat(1) / lead) * (P - (Rat(1) / f.ansatz_constant) * zQ);
  return out;
}

// ----------------------- JSON encoding -----------------------

inline nlohmann::json family_to_json(const FamilySpec& f) {
  nlohmann::json j;
  j["name"] = f.name;
  j["coefficients"] = f.coeff_names;
  j["exponents"] = f.monomials;
  j["weights"] = f.weights;
  j["box"] = f.box;
  j["ansatz_constant"] = rat_str(f.ansatz_constant);
  j["reduced_variable"] = f.reduced_var;
  return j;
}

inline FamilySpec family_from_json(const nlohmann::json& j) {
  FamilySpec f;
  f.name = j.at("name").get<std::string>();
  f.coeff_names = j.at("coefficients").get<std::vector<std::string>>();
  f.monomials = j.at("exponents").get<std::vector<std::vector<long>>>();
  f.weights = j.at("weights").get<std::vector<long>>();
  f.box = j.at("box").get<std::vector<long>>();
  f.ansatz_constant = rat_parse(j.at("ansatz_constant").get<std::string>());
  f.reduced_var = j.at("reduced_variable").get<std::string>();
  f.validate();
  return f;
}

// ----------------------- stock families -----------------------

// Cubic x^3 + y^3 + z^3 with the xyz deformation; z = -a_1 a_2 a_3 / a_0^3.
inline FamilySpec hesse_family() {
  FamilySpec f;
  f.name = "hesse";
  f.coeff_names = {"a0", "a1", "a2", "a3"};
  f.monomials = {{1, 1, 1}, {3, 0, 0}, {0, 3, 0}, {0, 0, 3}};
  f.weights = {1, 1, 1};
  f.box = {-3, 1, 1, 1};
  f.ansatz_constant = Rat(-1);
  f.reduced_var = "z";
  return f;
}

// y^2 z = 4 x^3 - g2 x z^2 - g3 z^3 up to scalings; w = 27 g3^2 / g2^3.
inline FamilySpec weierstrass_family() {
  FamilySpec f;
  f.name = "weierstrass";
  f.coeff_names = {"a0", "a1", "a2", "a3"};
  f.monomials = {{0, 2, 1}, {3, 0, 0}, {1, 0, 2}, {0, 0, 3}};
  f.weights = {1, 1, 1};
  f.box = {0, 1, -3, 2};
  f.ansatz_constant = rat(-27, 4);
  f.reduced_var = "w";
  return f;
}

// y^2 z = x^3 - (lambda+1) x^2 z + lambda x z^2 up to scalings.
inline FamilySpec legendre_family() {
  FamilySpec f;
  f.name = "legendre";
  f.coeff_names = {"a0", "a1", "a2", "a3"};
  f.monomials = {{0, 2, 1}, {3, 0, 0}, {2, 0, 1}, {1, 0, 2}};
  f.weights = {1, 1, 1};
  f.box = {0, -1, 2, -1};
  f.ansatz_constant = Rat(1);
  f.reduced_var = "z";
  return f;
}

}  // namespace hessegkz
