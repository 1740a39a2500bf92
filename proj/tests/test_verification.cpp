#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "opq/catalog.hpp"
#include "opq/io.hpp"
#include "opq/verification.hpp"

using namespace opq;

TEST_CASE("every check is reachable from a suite and vice versa") {
  std::set<std::string> suites(suite_names().begin(), suite_names().end());
  std::set<std::string> used;
  for (const auto& [check, suite] : check_registry()) {
    CAPTURE(check);
    CHECK(suites.count(suite) == 1);
    used.insert(suite);
  }
  for (const auto& s : suites) {
    CAPTURE(s);
    CHECK(used.count(s) == 1);
  }
}

TEST_CASE("krawtchouk-only default run passes everything") {
  SuiteConfig cfg;
  cfg.families = {"krawtchouk"};
  auto rep = run_suite(cfg);
  CHECK(rep.failed == 0);
  CHECK(rep.passed > 0);
  for (const auto& r : rep.records) {
    CAPTURE(r.check);
    CAPTURE(r.params);
    CAPTURE(r.note);
    CHECK(r.pass);
  }
}

TEST_CASE("suite reruns are bitwise identical") {
  SuiteConfig cfg;
  cfg.families = {"charlier", "krawtchouk"};
  auto a = run_suite(cfg);
  auto b = run_suite(cfg);
  REQUIRE(a.records.size() == b.records.size());
  for (size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].check == b.records[i].check);
    CHECK(a.records[i].residual == b.records[i].residual);  // exact ==
    CHECK(a.records[i].pass == b.records[i].pass);
  }
}

TEST_CASE("explicitly empty suite list gives an empty report") {
  SuiteConfig cfg;
  cfg.families = {"krawtchouk"};
  cfg.suites = std::vector<std::string>{};
  auto rep = run_suite(cfg);
  CHECK(rep.records.empty());
  CHECK(rep.all_pass());
}

TEST_CASE("suite subsetting runs only the requested checks") {
  SuiteConfig cfg;
  cfg.families = {"charlier"};
  cfg.suites = std::vector<std::string>{"closure", "duality"};
  auto rep = run_suite(cfg);
  CHECK(!rep.records.empty());
  for (const auto& r : rep.records) {
    CAPTURE(r.check);
    CHECK(check_registry().count(r.check) == 1);
    std::string suite = check_registry().at(r.check);
    CHECK((suite == "closure" || suite == "duality"));
  }
}

TEST_CASE("negative closure control is recorded as a passing lower bound") {
  SuiteConfig cfg;
  cfg.families = {"charlier"};
  cfg.suites = std::vector<std::string>{"closure"};
  auto rep = run_suite(cfg);
  bool seen = false;
  for (const auto& r : rep.records)
    if (r.check == "closure_negative_control") {
      seen = true;
      CHECK(r.pass);
      CHECK(r.residual >= 1e-3);
    }
  CHECK(seen);
}

TEST_CASE("custom family suite accepts a valid tabulated Hamiltonian") {
  auto f = get_family("krawtchouk", {{"p", 0.3}}, 12);
  CustomFamily cf;
  for (int x = 0; x <= 12; ++x) {
    cf.B.push_back(f.B(x));
    cf.D.push_back(f.D(x));
  }
  auto rep = run_custom_suite(cf);
  CHECK(rep.failed == 0);
  CHECK(rep.skipped > 0);  // closed-form suites skipped with notice
}

TEST_CASE("reports serialise to JSON with meta and data keys") {
  SuiteConfig cfg;
  cfg.families = {"krawtchouk"};
  cfg.suites = std::vector<std::string>{"factorization"};
  auto rep = run_suite(cfg);
  auto j = report_to_json(rep);
  CHECK(j.contains("meta"));
  CHECK(j.contains("data"));
  CHECK(j["meta"]["failed"].get<int>() == 0);
  CHECK(!report_table(rep).empty());
}
