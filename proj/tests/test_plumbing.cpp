#include <doctest.h>

#include "hessegkz/verify.hpp"

using namespace hessegkz;

TEST_CASE("config parsing") {
  Config c = Config::from_text("a = 1\n# comment\nb=2.5 # trailing\n\nc=x\n");
  CHECK(c.get_long("a", 0) == 1);
  CHECK(c.get_double("b", 0) == doctest::Approx(2.5));
  CHECK(c.kv.at("c") == "x");
  CHECK(c.get_long("missing", 7) == 7);
  CHECK_THROWS(Config::from_text("novalue\n"));
  CHECK_THROWS(c.get_long("c", 0));
}

TEST_CASE("config hash is order-independent and value-sensitive") {
  Config a = Config::from_text("x=1\ny=2\n");
  Config b = Config::from_text("y=2\nx=1\n");
  Config c = Config::from_text("x=1\ny=3\n");
  CHECK(a.hash() == b.hash());
  CHECK(a.hash() != c.hash());
}

TEST_CASE("glob matching") {
  CHECK(glob_match("opalg.*", "opalg.factorization"));
  CHECK(glob_match("*", "anything"));
  CHECK(glob_match("curves.?ieta", "curves.vieta"));
  CHECK_FALSE(glob_match("opalg.*", "curves.vieta"));
  CHECK_FALSE(glob_match("opalg", "opalg.factorization"));
}

TEST_CASE("report status law") {
  CHECK(make_report("x", 0.0, 0.0).status == "pass");
  CHECK(make_report("x", 1e-9, 1e-8).status == "pass");
  CHECK(make_report("x", 1e-7, 1e-8).status == "fail");
  CHECK(make_flagged("x", 0.0, 0.0, "note").status == "flagged");
}

TEST_CASE("registry ids are sorted and unique") {
  const auto& reg = check_registry();
  for (std::size_t i = 1; i < reg.size(); ++i)
    CHECK(reg[i - 1].first < reg[i].first);
}

TEST_CASE("fast sub-suite runs deterministically and in id order") {
  Config cfg;
  SuiteReport a = run_suite("opalg.*", cfg);
  SuiteReport b = run_suite("opalg.*", cfg);
  CHECK(suite_to_json(a).dump() == suite_to_json(b).dump());
  REQUIRE(a.suite.size() == 2);
  CHECK(a.suite[0].id == "opalg.factorization");
  CHECK(a.exit_code() == 0);
}

TEST_CASE("worker count does not change the report") {
  Config one, four;
  four.set("workers", "4");
  SuiteReport a = run_suite("qseries.*", one);
  SuiteReport b = run_suite("qseries.*", four);
  // hashes differ (workers is part of the config), reports agree per check
  REQUIRE(a.suite.size() == b.suite.size());
  for (std::size_t i = 0; i < a.suite.size(); ++i) {
    CHECK(a.suite[i].id == b.suite[i].id);
    CHECK(a.suite[i].status == b.suite[i].status);
    CHECK(a.suite[i].residual == b.suite[i].residual);
  }
}
