#pragma once

// Exact differential operators that are finite sums of Laurent monomials in
// the base variable(s) times polynomials in theta = z*d/dz, stored in left
// normal form: every term is  z^m * P(theta)  with the monomial on the left.
// Composition uses  theta o z^m = z^m o (theta + m).

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hessegkz/rational.hpp"

namespace hessegkz {

// Polynomial in the theta-vector (one entry per base variable).
struct ThetaPoly {
  // degree vector -> coefficient; zero coefficients absent
  std::map<std::vector<int>, Rat> coeffs;

  static ThetaPoly constant(std::size_t nvars, const Rat& c) {
    ThetaPoly p;
    if (c != 0) p.coeffs[std::vector<int>(nvars, 0)] = c;
    return p;
  }
  static ThetaPoly theta(std::size_t nvars, std::size_t i) {
    ThetaPoly p;
    std::vector<int> d(nvars, 0);
    d[i] = 1;
    p.coeffs[d] = Rat(1);
    return p;
  }

  bool is_zero() const { return coeffs.empty(); }

  friend bool operator==(const ThetaPoly& a, const ThetaPoly& b) {
    return a.coeffs == b.coeffs;
  }

  void prune() {
    for (auto it = coeffs.begin(); it != coeffs.end();) {
      if (it->second == 0)
        it = coeffs.erase(it);
      else
        ++it;
    }
  }

  ThetaPoly& operator+=(const ThetaPoly& o) {
    for (const auto& [d, c] : o.coeffs) coeffs[d] += c;
    prune();
    return *this;
  }
  friend ThetaPoly operator+(ThetaPoly a, const ThetaPoly& b) { return a += b; }
  friend ThetaPoly operator-(ThetaPoly a, const ThetaPoly& b) {
    for (const auto& [d, c] : b.coeffs) a.coeffs[d] -= c;
    a.prune();
    return a;
  }
  friend ThetaPoly operator*(const Rat& s, ThetaPoly p) {
    for (auto& [d, c] : p.coeffs) c *= s;
    p.prune();
    return p;
  }
  friend ThetaPoly operator*(const ThetaPoly& a, const ThetaPoly& b) {
    ThetaPoly r;
    for (const auto& [da, ca] : a.coeffs)
      for (const auto& [db, cb] : b.coeffs) {
        std::vector<int> d(da.size());
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = da[i] + db[i];
        r.coeffs[d] += ca * cb;
      }
    r.prune();
    return r;
  }

  // Substitute theta_i -> theta_i + s_i.
  ThetaPoly shifted(const std::vector<Rat>& s) const {
    ThetaPoly r;
    for (const auto& [d, c] : coeffs) {
      // expand prod_i (theta_i + s_i)^{d_i}
      ThetaPoly term = ThetaPoly::constant(d.size(), c);
      for (std::size_t i = 0; i < d.size(); ++i) {
        ThetaPoly lin;
        std::vector<int> e(d.size(), 0);
        e[i] = 1;
        lin.coeffs[e] = Rat(1);
        if (s[i] != 0) lin.coeffs[std::vector<int>(d.size(), 0)] = s[i];
        for (int k = 0; k < d[i]; ++k) term = term * lin;
      }
      r += term;
    }
    return r;
  }

  Rat eval(const std::vector<Rat>& x) const {
    Rat acc(0);
    for (const auto& [d, c] : coeffs) {
      Rat t = c;
      for (std::size_t i = 0; i < d.size(); ++i)
        for (int k = 0; k < d[i]; ++k) t *= x[i];
      acc += t;
    }
    return acc;
  }

  // One-variable evaluation at x0 + eps in Q[eps]/(eps^K).
  EpsPoly eval_eps(const Rat& x0, std::size_t K) const {
    EpsPoly acc(K);
    EpsPoly arg(K);
    arg.c[0] = x0;
    if (K > 1) arg.c[1] = Rat(1);
    // Horner on the univariate coefficient list
    int maxdeg = 0;
    for (const auto& [d, c] : coeffs) maxdeg = std::max(maxdeg, d[0]);
    std::vector<Rat> uni(maxdeg + 1, Rat(0));
    for (const auto& [d, c] : coeffs) uni[d[0]] = c;
    for (int k = maxdeg; k >= 0; --k) {
      acc = acc * arg;
      acc.c[0] += uni[k];
    }
    return acc;
  }

  int degree_in(std::size_t i) const {
    int m = 0;
    for (const auto& [d, c] : coeffs) m = std::max(m, d[i]);
    return m;
  }
};

struct ThetaOperator {
  std::vector<std::string> vars;
  // laurent exponent vector -> theta-polynomial; zero polynomials absent
  std::map<std::vector<long>, ThetaPoly> terms;

  std::size_t nvars() const { return vars.size(); }

  void prune() {
    for (auto it = terms.begin(); it != terms.end();) {
      it->second.prune();
      if (it->second.is_zero())
        it = terms.erase(it);
      else
        ++it;
    }
  }

  bool is_zero() const { return terms.empty(); }

  static ThetaOperator zero(std::vector<std::string> vars) {
    ThetaOperator o;
    o.vars = std::move(vars);
    return o;
  }
  static ThetaOperator identity(std::vector<std::string> vars) {
    ThetaOperator o;
    o.vars = std::move(vars);
    o.terms[std::vector<long>(o.nvars(), 0)] =
        ThetaPoly::constant(o.nvars(), Rat(1));
    return o;
  }
  static ThetaOperator theta(std::vector<std::string> vars, std::size_t i) {
    ThetaOperator o;
    o.vars = std::move(vars);
    o.terms[std::vector<long>(o.nvars(), 0)] = ThetaPoly::theta(o.nvars(), i);
    return o;
  }
  static ThetaOperator monomial(std::vector<std::string> vars,
                                std::vector<long> exps, const Rat& c = Rat(1)) {
    ThetaOperator o;
    o.vars = std::move(vars);
    if (c != 0) o.terms[std::move(exps)] = ThetaPoly::constant(o.vars.size(), c);
    return o;
  }
  static ThetaOperator constant(std::vector<std::string> vars, const Rat& c) {
    return monomial(std::move(vars), {}, c).normalized_constant();
  }

 private:
  ThetaOperator normalized_constant() {
    // fix exponent vector length for the constant constructor
    if (!terms.empty() && terms.begin()->first.size() != nvars()) {
      auto p = terms.begin()->second;
      terms.clear();
      terms[std::vector<long>(nvars(), 0)] = p;
    }
    return *this;
  }

 public:
  ThetaOperator& operator+=(const ThetaOperator& o) {
    check_vars(o);
    for (const auto& [m, p] : o.terms) terms[m] += p;
    prune();
    return *this;
  }
  friend ThetaOperator operator+(ThetaOperator a, const ThetaOperator& b) {
    return a += b;
  }
  friend ThetaOperator operator-(ThetaOperator a, const ThetaOperator& b) {
    a.check_vars(b);
    for (const auto& [m, p] : b.terms)
      a.terms[m] += Rat(-1) * p;
    a.prune();
    return a;
  }
  friend ThetaOperator operator*(const Rat& s, ThetaOperator a) {
    for (auto& [m, p] : a.terms) p = s * p;
    a.prune();
    return a;
  }

  void check_vars(const ThetaOperator& o) const {
    if (vars != o.vars)
      throw std::invalid_argument("theta-operator variable mismatch");
  }
};

// Normal form of A o B.
inline ThetaOperator compose(const ThetaOperator& A, const ThetaOperator& B) {
  A.check_vars(B);
  ThetaOperator r = ThetaOperator::zero(A.vars);
  for (const auto& [n, q] : B.terms) {
    std::vector<Rat> shift(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) shift[i] = Rat(n[i]);
    for (const auto& [m, p] : A.terms) {
      std::vector<long> e(m.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = m[i] + n[i];
      r.terms[e] += p.shifted(shift) * q;
    }
  }
  r.prune();
  return r;
}

inline bool normal_form_equal(const ThetaOperator& A, const ThetaOperator& B,
                              bool up_to_constant = false) {
  if (A.vars != B.vars) throw std::invalid_argument("variable mismatch");
  ThetaOperator a = A, b = B;
  a.prune();
  b.prune();
  if (!up_to_constant) return a.terms == b.terms;
  if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero();
  const Rat& ca = a.terms.begin()->second.coeffs.begin()->second;
  const Rat& cb = b.terms.begin()->second.coeffs.begin()->second;
  Rat s = ca / cb;
  return a.terms == (s * b).terms;
}

// z^{-c} o A o z^{c} for the given variable: shifts theta_var by c everywhere.
inline ThetaOperator conjugate_by_power(const ThetaOperator& A, std::size_t var,
                                        const Rat& c) {
  ThetaOperator r = ThetaOperator::zero(A.vars);
  for (const auto& [m, p] : A.terms) {
    std::vector<Rat> s(A.nvars(), Rat(0));
    s[var] = c;
    r.terms[m] += p.shifted(s);
  }
  r.prune();
  return r;
}

// ------------------------- printing -------------------------

inline std::string print_poly(const ThetaPoly& p,
                              const std::vector<std::string>& vars) {
  if (p.coeffs.empty()) return "0";
  // highest total degree first, then map order
  std::vector<std::pair<std::vector<int>, Rat>> items(p.coeffs.begin(),
                                                      p.coeffs.end());
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    int ta = 0, tb = 0;
    for (int d : a.first) ta += d;
    for (int d : b.first) tb += d;
    return ta > tb;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [d, c] : items) {
    Rat ac = abs(c);
    bool neg = c < 0;
    std::string mono;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars.size() == 1 ? "theta" : ("theta_" + vars[i]);
      if (d[i] != 1) mono += "^" + std::to_string(d[i]);
    }
    std::string coef = ac.get_str();
    std::string piece;
    if (mono.empty())
      piece = coef;
    else if (ac == 1)
      piece = mono;
    else
      piece = coef + "*" + mono;
    if (first) {
      os << (neg ? "-" : "") << piece;
      first = false;
    } else {
      os << (neg ? " - " : " + ") << piece;
    }
  }
  return os.str();
}

inline std::string print_operator(const ThetaOperator& A) {
  if (A.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, p] : A.terms) {
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += A.vars[i];
      if (m[i] != 1) mono += "^" + std::to_string(m[i]);
    }
    std::string body = print_poly(p, A.vars);
    std::string piece;
    if (mono.empty())
      piece = body;
    else
      piece = mono + "*(" + body + ")";
    if (!first) os << " + ";
    os << piece;
    first = false;
  }
  return os.str();
}

// ------------------------- parsing -------------------------
// Grammar: sums/differences of products of powers of factors; factors are
// rationals (p/q), `theta` / `theta_<var>`, variable names, and
// parenthesized expressions. Products are operator compositions (left to
// right), so `z*(-3*theta-3)` etc. parse with the intended meaning.

namespace detail {

struct OpParser {
  const std::string& s;
  std::size_t pos = 0;
  const std::vector<std::string>& vars;

  OpParser(const std::string& text, const std::vector<std::string>& v)
      : s(text), vars(v) {}

  void skip() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  ThetaOperator parse() {
    ThetaOperator r = parse_sum();
    skip();
    if (pos != s.size())
      throw std::invalid_argument("trailing input in operator text: " +
                                  s.substr(pos));
    return r;
  }

  ThetaOperator parse_sum() {
    skip();
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    ThetaOperator acc = parse_product();
    if (neg) acc = Rat(-1) * acc;
    while (true) {
      skip();
      if (eat('+'))
        acc += parse_product();
      else if (eat('-'))
        acc = acc - parse_product();
      else
        break;
    }
    return acc;
  }

  ThetaOperator parse_product() {
    ThetaOperator acc = parse_power();
    while (true) {
      skip();
      if (eat('*'))
        acc = compose(acc, parse_power());
      else if (pos < s.size() && s[pos] == '(')
        acc = compose(acc, parse_power());
      else
        break;
    }
    return acc;
  }

  ThetaOperator parse_power() {
    ThetaOperator base = parse_atom();
    skip();
    if (eat('^')) {
      skip();
      bool neg = eat('-');
      long e = parse_integer();
      if (neg) {
        // negative powers only for pure monomials
        if (base.terms.size() != 1)
          throw std::invalid_argument("negative power of non-monomial");
        const auto& [m, p] = *base.terms.begin();
        if (p.coeffs.size() != 1 ||
            p.coeffs.begin()->first != std::vector<int>(base.nvars(), 0))
          throw std::invalid_argument("negative power of non-monomial");
        std::vector<long> me(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) me[i] = -e * m[i];
        return ThetaOperator::monomial(base.vars, me,
                                       rat_pow(p.coeffs.begin()->second, -e));
      }
      ThetaOperator acc = ThetaOperator::identity(base.vars);
      for (long i = 0; i < e; ++i) acc = compose(acc, base);
      return acc;
    }
    return base;
  }

  long parse_integer() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw std::invalid_argument("expected integer");
    return std::stol(s.substr(start, pos - start));
  }

  ThetaOperator parse_atom() {
    skip();
    if (pos >= s.size()) throw std::invalid_argument("unexpected end of input");
    if (eat('(')) {
      ThetaOperator r = parse_sum();
      if (!eat(')')) throw std::invalid_argument("missing )");
      return r;
    }
    if (isdigit(static_cast<unsigned char>(s[pos]))) {
      long num = parse_integer();
      if (eat('/')) {
        long den = parse_integer();
        return ThetaOperator::constant(vars, Rat(num, den));
      }
      return ThetaOperator::constant(vars, Rat(num));
    }
    // identifier
    std::size_t start = pos;
    while (pos < s.size() &&
           (isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    std::string id = s.substr(start, pos - start);
    if (id.empty()) throw std::invalid_argument(std::string("bad token: ") + s[pos]);
    if (id == "theta") {
      if (vars.size() != 1)
        throw std::invalid_argument("`theta` ambiguous with several variables");
      return ThetaOperator::theta(vars, 0);
    }
    if (id.rfind("theta_", 0) == 0) {
      std::string v = id.substr(6);
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == v) return ThetaOperator::theta(vars, i);
      throw std::invalid_argument("unknown theta variable: " + v);
    }
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == id) {
        std::vector<long> e(vars.size(), 0);
        e[i] = 1;
        return ThetaOperator::monomial(vars, e);
      }
    throw std::invalid_argument("unknown symbol: " + id);
  }
};

}  // namespace detail

inline ThetaOperator parse_operator(const std::string& text,
                                    const std::vector<std::string>& vars) {
  detail::OpParser p(text, vars);
  return p.parse();
}

// ------------------------- builtin registry -------------------------

// L_nu in the psi-chart: (theta-1)(theta-2)theta - psi^3 (theta-nu)^3.
inline ThetaOperator lnu(const Rat& nu) {
  std::vector<std::string> v{"psi"};
  auto th = ThetaOperator::theta(v, 0);
  auto c = [&](const Rat& x) { return ThetaOperator::constant(v, x); };
  auto lin = [&](const Rat& x) { return th - c(x); };
  ThetaOperator left = compose(compose(lin(1), lin(2)), th);
  ThetaOperator cube = compose(compose(lin(nu), lin(nu)), lin(nu));
  return left - compose(ThetaOperator::monomial(v, {3}), cube);
}

// L_nu in the a-chart: (theta-1)(theta-2)theta + (a^3/27)(theta-nu)^3.
inline ThetaOperator lnu_a(const Rat& nu) {
  std::vector<std::string> v{"a"};
  auto th = ThetaOperator::theta(v, 0);
  auto c = [&](const Rat& x) { return ThetaOperator::constant(v, x); };
  auto lin = [&](const Rat& x) { return th - c(x); };
  ThetaOperator left = compose(compose(lin(1), lin(2)), th);
  ThetaOperator cube = compose(compose(lin(nu), lin(nu)), lin(nu));
  return left + compose(ThetaOperator::monomial(v, {3}, Rat(1, 27)), cube);
}

inline ThetaOperator builtin(const std::string& name) {
  auto mk1 = [](const char* var, const char* text) {
    return parse_operator(text, {var});
  };
  if (name == "L_PF")
    return mk1("psi", "(theta-2)*(theta-1) - psi^3*theta^2");
  if (name == "L_PF_alpha")
    return mk1("alpha", "theta^2 - alpha*(theta+1/3)*(theta+2/3)");
  if (name == "D_GKZ")
    return mk1("psi", "theta^3 - psi^-3*(theta-3)*(theta-2)*(theta-1)");
  if (name == "D_GKZ_alpha")
    return mk1("alpha", "theta^3 - alpha*(theta+1/3)*(theta+2/3)*(theta+1)");
  if (name == "D_GKZ_z")
    return mk1("z", "theta^3 + z*(-3*theta-3)*(-3*theta-2)*(-3*theta-1)");
  if (name == "L_CY3")
    return mk1("psi", "(theta-2)*(theta-1)*theta - psi^3*theta^3");
  if (name == "L_W")
    return mk1("w",
               "theta*(theta-1/4)*(theta-1/2) - "
               "w*(theta+3/4)*(theta+1/12)*(theta+5/12)");
  if (name == "D1")
    return parse_operator(
        "0-1/72*theta_a*theta_b - a*b^-6*(theta_b-1)*(theta_b-5)",
        {"a", "b"});
  if (name == "D2")
    return parse_operator(
        "0-1/5832*(theta_b+6*theta_a)^3 - a^-3*(theta_a-1)*(theta_a-2)*theta_a",
        {"a", "b"});
  throw std::invalid_argument("unknown builtin operator: " + name);
}

}  // namespace hessegkz
