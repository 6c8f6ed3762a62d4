// Command-line harness: verification suite, point evaluation, series
// emission, operator printing, and chain integration from a path file.

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hessegkz/verify.hpp"

using namespace hessegkz;
using nlohmann::json;

namespace {

// Accepts "x", "-x", "x+yi", "x-yi" (also "yi" alone).
cplx parse_complex(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (!std::isspace((unsigned char)ch)) t += ch;
  if (t.empty()) throw std::runtime_error("empty number");
  if (t.back() == 'i' || t.back() == 'j') {
    t.pop_back();
    // split at the last +/- that is not an exponent sign or leading
    for (std::size_t p = t.size(); p-- > 1;) {
      if ((t[p] == '+' || t[p] == '-') &&
          t[p - 1] != 'e' && t[p - 1] != 'E') {
        double re = std::stod(t.substr(0, p));
        std::string im = t.substr(p);
        if (im == "+" || im == "-") im += "1";
        return cplx(re, std::stod(im));
      }
    }
    if (t.empty() || t == "+") return cplx(0, 1);
    if (t == "-") return cplx(0, -1);
    return cplx(0, std::stod(t));
  }
  return cplx(std::stod(t), 0.0);
}

std::map<std::string, std::string> parse_params(
    const std::vector<std::string>& kvs) {
  std::map<std::string, std::string> m;
  for (const std::string& s : kvs) {
    auto eq = s.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("parameter '" + s + "': expected key=value");
    m[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return m;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

struct EvalResult {
  cplx value;
  double error_estimate = 0.0;
  json metadata = json::object();
};

EvalResult eval_target(const std::string& target,
                       const std::map<std::string, std::string>& p) {
  auto getc = [&](const std::string& k, cplx dflt,
                  bool required = false) -> cplx {
    auto it = p.find(k);
    if (it == p.end()) {
      if (required) throw std::runtime_error("missing parameter " + k);
      return dflt;
    }
    return parse_complex(it->second);
  };
  auto getl = [&](const std::string& k, long dflt) -> long {
    auto it = p.find(k);
    return it == p.end() ? dflt : std::stol(it->second);
  };
  EvalResult r;
  if (target == "I") {
    SeriesValue v = oscillating_series(getc("psi", 0, true));
    r.value = v.value;
    r.error_estimate = v.tail_bound;
    r.metadata["terms"] = v.terms;
  } else if (target == "J1" || target == "J2" || target == "J3") {
    JPieces j = j_decomposition(getc("psi", 0, true));
    r.value = target == "J1" ? j.j1 : target == "J2" ? j.j2 : j.j3;
  } else if (target == "pi1") {
    r.value = pi1_value(getc("psi", 0, true));
  } else if (target == "pi2") {
    r.value = pi2_value(getc("psi", 0, true));
  } else if (target == "omega0") {
    r.value = CuspBasis{}.omega0(getc("alpha", 0, true));
  } else if (target == "omega1") {
    r.value = CuspBasis{}.omega1(getc("alpha", 0, true));
  } else if (target == "K") {
    cplx psi = getc("psi", 0, true);
    int order = (int)getl("order", 48);
    ChainSpec c = standard_chain(psi, getc("xo", cplx(-1.0)));
    r.value = chain_integral_K(c.path, psi, c.start_sheet, order, order);
    r.metadata["start_sheet"] = c.start_sheet;
    r.error_estimate = std::abs(
        r.value -
        chain_integral_K(c.path, psi, c.start_sheet, order / 2, order / 2));
  } else if (target == "U_nu") {
    cplx a = getc("a", 0, true);
    Rat nu = rat_parse(p.count("nu") ? p.at("nu") : "0");
    std::string mode = p.count("mode") ? p.at("mode") : "finite_sum";
    UNuMode m = mode == "pfq"      ? UNuMode::pfq
                : mode == "barnes" ? UNuMode::barnes
                                   : UNuMode::finite_sum;
    r.value = u_nu(a, nu, m, getl("order", 100));
    r.metadata["mode"] = mode;
  } else if (target == "W") {
    r.value = wronskian_value(getc("psi", 0, true));
  } else if (target == "B3") {
    r.value = lambert_B3(getl("order", 100)).eval(getc("q", 0, true));
  } else {
    throw std::runtime_error("unknown eval target: " + target);
  }
  return r;
}

json qseries_json(const QSeries& s) {
  json rows = json::array();
  for (long k = 0; k <= s.order(); ++k)
    if (s.c[k] != 0)
      rows.push_back({{"k", rat_str(Rat(k) + s.lead)},
                      {"numerator", s.c[k].get_num().get_str()},
                      {"denominator", s.c[k].get_den().get_str()}});
  return rows;
}

json logseries_json(const LogSeries& s) {
  json rows = json::array();
  for (int j = 0; j <= s.depth(); ++j)
    for (long k = 0; k <= s.N; ++k)
      if (s.c[j][k] != 0)
        rows.push_back({{"j", j},
                        {"k", k},
                        {"numerator", s.c[j][k].get_num().get_str()},
                        {"denominator", s.c[j][k].get_den().get_str()}});
  return rows;
}

void emit_target(const std::string& target, const std::string& format,
                 long order, std::ostream& os) {
  auto emit_q = [&](const QSeries& s) {
    if (format == "csv")
      s.emit_csv(os);
    else
      os << json{{"series", target}, {"coefficients", qseries_json(s)}}.dump(2)
         << "\n";
  };
  auto emit_log = [&](const LogSeries& s) {
    if (format == "csv")
      s.emit_csv(os);
    else
      os << json{{"series", target}, {"rho", rat_str(s.rho)},
                 {"coefficients", logseries_json(s)}}.dump(2)
         << "\n";
  };
  if (target == "B") return emit_q(eta_quotient_B(order));
  if (target == "B3") return emit_q(lambert_B3(order));
  if (target == "t-qpart") return emit_q(mirror_map_qpart(order));
  if (target == "pi1" || target == "pi2" || target == "j3") {
    OrbifoldBasis b = orbifold_basis(order);
    return emit_log(target == "pi1" ? b.pi1 : target == "pi2" ? b.pi2 : b.j3);
  }
  if (target.size() == 2 && target[0] == 'f' && target[1] >= '0' &&
      target[1] <= '3') {
    std::vector<LogSeries> f = epsilon_deformation(order, 3);
    return emit_log(f[(std::size_t)(target[1] - '0')]);
  }
  if (target == "cy3") {
    BiSeries s = fundamental_period(order);
    if (format == "csv") {
      os << biseries_csv(s);
    } else {
      json rows = json::array();
      for (const auto& [key, v] : s.coeff)
        rows.push_back(
            {{"m", key.first}, {"j", key.second}, {"coefficient", rat_str(v)}});
      os << json{{"series", target}, {"coefficients", rows}}.dump(2) << "\n";
    }
    return;
  }
  throw std::runtime_error("unknown series target: " + target);
}

void print_operator_target(const std::string& name, std::ostream& os) {
  auto derived = [&](const FamilySpec& fam) {
    GKZDerivation d = derive_gkz(fam);
    json j;
    j["family"] = fam.name;
    j["box"] = print_operator(d.box);
    json eu = json::array();
    for (const auto& e : d.euler) eu.push_back(print_operator(e));
    j["euler"] = eu;
    j["reduced"] = print_operator(d.reduced);
    j["calabi_yau"] = d.calabi_yau;
    json ex = json::array();
    for (const Rat& s : d.exponents) ex.push_back(rat_str(s));
    j["exponents"] = ex;
    os << j.dump(2) << "\n";
  };
  if (name == "hesse") return derived(hesse_family());
  if (name == "weierstrass") return derived(weierstrass_family());
  if (name == "legendre") return derived(legendre_family());
  os << print_operator(builtin(name)) << "\n";
}

ContourPath path_from_json(const json& j) {
  ContourPath p;
  for (const auto& seg : j.at("segments")) {
    PathSegment s;
    std::string type = seg.at("type");
    if (type == "line") {
      s.kind = PathSegment::Kind::line;
      s.a = cplx(seg.at("a")[0], seg.at("a")[1]);
      s.b = cplx(seg.at("b")[0], seg.at("b")[1]);
    } else if (type == "arc") {
      s.kind = PathSegment::Kind::arc;
      s.center = cplx(seg.at("center")[0], seg.at("center")[1]);
      s.radius = seg.at("radius");
      s.angle0 = seg.at("angle0");
      s.angle1 = seg.at("angle1");
    } else {
      throw std::runtime_error("segment type must be line or arc");
    }
    if (seg.contains("branch_passage"))
      s.passage_at_end = seg.at("branch_passage");
    if (seg.contains("exit_branch")) s.exit_branch = seg.at("exit_branch");
    p.segments.push_back(s);
  }
  return p;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write output file: " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GKZ / Picard-Fuchs operator toolkit"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "run the verification suite");
  std::string filter, config_file, output;
  std::vector<std::string> overrides;
  verify->add_option("--filter", filter, "check-id glob, e.g. 'opalg.*'");
  verify->add_option("--config", config_file, "key=value configuration file");
  verify->add_option("--set", overrides, "config overrides key=value");
  verify->add_option("--output,-o", output, "report file (default stdout)");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a registered target");
  std::string target;
  std::vector<std::string> params;
  eval->add_option("target", target,
                   "I, J1, J2, J3, pi1, pi2, omega0, omega1, K, U_nu, W, B3")
      ->required();
  eval->add_option("params", params, "key=value parameters");

  // emit / series
  auto* emit = app.add_subcommand("emit", "emit series coefficients");
  emit->alias("series");
  std::string etarget, format = "csv", eoutput;
  long eorder = 20;
  emit->add_option("target", etarget,
                   "B, B3, t-qpart, pi1, pi2, j3, f0..f3, cy3")
      ->required();
  emit->add_option("--format", format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  emit->add_option("--order", eorder, "truncation order");
  emit->add_option("--output,-o", eoutput, "output file (default stdout)");

  // operator
  auto* opcmd = app.add_subcommand("operator", "print canonical operator text");
  std::string opname;
  opcmd->add_option("name", opname,
                    "builtin name (L_PF, D_GKZ, ...) or a family "
                    "(hesse, weierstrass, legendre)")
      ->required();

  // chain
  auto* chain = app.add_subcommand("chain", "integrate a chain path file");
  std::string pathfile;
  chain->add_option("path", pathfile, "JSON path description")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) {
      Config cfg =
          config_file.empty() ? Config{} : Config::from_file(config_file);
      for (const auto& [k, v] : parse_params(overrides)) cfg.set(k, v);
      if (!filter.empty()) {
        bool any = false;
        for (const auto& [id, fn] : check_registry())
          any = any || glob_match(filter, id);
        if (!any) throw std::runtime_error("unknown check id: " + filter);
      }
      SuiteReport s = run_suite(filter, cfg);
      write_output(output, suite_to_json(s).dump(2) + "\n");
      return s.exit_code();
    }
    if (eval->parsed()) {
      EvalResult r = eval_target(target, parse_params(params));
      json j;
      j["value"] = complex_json(r.value);
      j["error_estimate"] = r.error_estimate;
      j["metadata"] = r.metadata;
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (emit->parsed()) {
      std::ostringstream os;
      emit_target(etarget, format, eorder, os);
      write_output(eoutput, os.str());
      return 0;
    }
    if (opcmd->parsed()) {
      print_operator_target(opname, std::cout);
      return 0;
    }
    if (chain->parsed()) {
      std::ifstream in(pathfile);
      if (!in) throw std::runtime_error("cannot open path file: " + pathfile);
      json spec = json::parse(in);
      cplx psi(spec.at("psi")[0], spec.at("psi")[1]);
      int sheet = spec.value("start_sheet", 0);
      int order = spec.value("order", 48);
      ContourPath p = path_from_json(spec);
      std::vector<SheetPoint> pts = track_path(p, psi, sheet);
      cplx K = chain_integral_K(p, psi, sheet, order, order);
      json j;
      j["value"] = complex_json(K);
      json track = json::array();
      for (const SheetPoint& q : pts)
        track.push_back({{"x", complex_json(q.x)},
                         {"y", complex_json(q.y)},
                         {"sheet", q.sheet}});
      j["track"] = track;
      std::cout << j.dump(2) << "\n";
      return 0;
    }
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
