// Acceptance gate: one pass/fail line per criterion.  Each criterion is
// backed by named checks from the verification registry; a criterion passes
// when every backing check passes (flagged is accepted where the criterion
// itself concerns a documented reference-value discrepancy) and the runtime
// budget holds.

#include <chrono>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hessegkz/verify.hpp"

using namespace hessegkz;

struct Criterion {
  int number;
  std::string description;
  double budget_seconds;
  // check id -> flagged acceptable?
  std::vector<std::pair<std::string, bool>> backing;
};

int main() {
  const std::vector<Criterion> criteria = {
      {1, "operator factorization, exact up to one rational constant", 1.0,
       {{"opalg.factorization", false}}},
      {2, "derived operators match the golden forms", 1.0,
       {{"opalg.golden_operators", false}}},
      {3, "series annihilation through order 200, exact", 5.0,
       {{"frobenius.series_annihilation", false}}},
      {4, "extra-solution inhomogeneous constant, chart reconciliation", 1.0,
       {{"frobenius.j3_constant", true}}},
      {5, "quadrature agreement (3d to 1e-6, 2d to 1e-5)", 60.0,
       {{"oscint.quadrature3d", false}, {"oscint.quadrature2d", false}}},
      {6, "hypergeometric decomposition and functional relations", 5.0,
       {{"oscint.decomposition", false},
        {"oscint.functional_relations", false}}},
      {7, "Gamma prefactor via the reflection formula", 1.0,
       {{"oscint.gamma_prefactor", false}}},
      {8, "q-series identities exact through order 100", 5.0,
       {{"qseries.lambert", false}, {"qseries.mirror_map", false}}},
      {9, "Hauptmodul bridge constant across alpha samples", 5.0,
       {{"modular.bridge", false}}},
      {10, "Wronskian series and solution fit", 5.0,
       {{"modular.wronskian", false}}},
      {11, "singular-cycle pairing identities", 5.0,
       {{"modular.pairing", false}}},
      {12, "curve geometry: branch set, Vieta, monodromy, deformation", 30.0,
       {{"curves.branch_galois", false},
        {"curves.vieta", false},
        {"curves.monodromy_permutations", false},
        {"curves.chain_deformation", false}}},
      {13, "chain inhomogeneity constant across base points and nonzero; "
           "endpoint-oracle and reference comparison", 60.0,
       {{"curves.inhomogeneity_constant", false},
        {"curves.inhomogeneity_oracle", false},
        {"curves.endpoint_reference", true}}},
      {14, "epsilon-deformation log-series identities, exact", 5.0,
       {{"frobenius.deformation", false}}},
      {15, "threefold period: annihilation, recursion, continued mode", 10.0,
       {{"cy3.fundamental_period", false},
        {"cy3.annihilation", false},
        {"cy3.recursion", false},
        {"cy3.barnes_annihilation", false}}},
      {16, "orbifold monodromy diag(rho, rho^2, 1), cube = identity", 1.0,
       {{"frobenius.monodromy", false}}},
  };

  // run each backing check once
  std::map<std::string, CheckFn> fns(check_registry().begin(),
                                     check_registry().end());
  Config cfg;
  std::map<std::string, VerificationReport> results;
  std::map<std::string, double> runtimes;
  for (const auto& c : criteria)
    for (const auto& [id, allow_flagged] : c.backing) {
      if (results.count(id)) continue;
      auto t0 = std::chrono::steady_clock::now();
      results[id] = fns.at(id)(cfg);
      runtimes[id] = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - t0).count();
    }

  int failures = 0;
  for (const auto& c : criteria) {
    bool ok = true;
    double total = 0.0;
    std::string why;
    for (const auto& [id, allow_flagged] : c.backing) {
      const VerificationReport& r = results.at(id);
      total += runtimes.at(id);
      bool check_ok =
          r.status == "pass" || (allow_flagged && r.status == "flagged");
      if (!check_ok) {
        ok = false;
        why = id + " " + r.status + " (residual " +
              std::to_string(r.residual) + " > tolerance " +
              std::to_string(r.tolerance) + "): " + r.note;
      }
    }
    if (total > c.budget_seconds) {
      ok = false;
      why = "runtime budget exceeded";
    }
    std::printf("criterion %2d: %s  %s  [%.2fs]\n", c.number,
                ok ? "pass" : "FAIL", c.description.c_str(), total);
    if (!ok) {
      std::printf("              %s\n", why.c_str());
      ++failures;
    }
  }

  // full-suite determinism: two complete runs serialize byte-identically
  auto t0 = std::chrono::steady_clock::now();
  SuiteReport a = run_suite("", cfg);
  SuiteReport b = run_suite("", cfg);
  double suite_seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - t0).count() / 2;
  bool det = suite_to_json(a).dump() == suite_to_json(b).dump();
  bool fast = suite_seconds < 300.0;
  std::printf("full suite : %s  deterministic byte-identical reports, "
              "%.1fs per run\n",
              det && fast ? "pass" : "FAIL", suite_seconds);
  if (!det || !fast) ++failures;

  std::printf("%d of %zu criteria failed\n", failures, criteria.size() + 1);
  return failures == 0 ? 0 : 1;
}
