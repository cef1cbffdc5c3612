#include <cstring>
#include <string>

#include "doctest.h"
#include "fbdual/fbdual.h"

namespace {

struct Report {
  fbd_report* r = nullptr;
  ~Report() { fbd_report_free(r); }
};

struct Config {
  fbd_config* c = nullptr;
  ~Config() { fbd_config_free(c); }
};

std::string render(const fbd_report* r, fbd_format f) {
  char* s = nullptr;
  REQUIRE(fbd_report_render(r, f, &s) == FBD_OK);
  std::string out(s);
  fbd_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("suite listing") {
  REQUIRE(fbd_suite_count() == 8);
  CHECK(std::string(fbd_suite_name(0)) == "clifford");
  CHECK(std::string(fbd_suite_name(7)) == "conserve");
  CHECK(fbd_suite_name(8) == nullptr);
  CHECK(std::string(fbd_version()) == "1.0.0");
}

TEST_CASE("clifford run through the handle API") {
  Config cfg;
  REQUIRE(fbd_config_new(&cfg.c) == FBD_OK);
  const char* names[] = {"clifford"};
  Report rep;
  REQUIRE(fbd_run(cfg.c, names, 1, &rep.r) == FBD_OK);
  REQUIRE(fbd_report_suites(rep.r) == 1);
  CHECK(std::string(fbd_report_suite(rep.r, 0)) == "clifford");
  CHECK(fbd_report_checks(rep.r, 0) == 35);
  CHECK(fbd_report_passed(rep.r) == 1);
  CHECK(fbd_report_check_passed(rep.r, 0, 0) == 1);
  CHECK(std::strlen(fbd_report_check_field(rep.r, 0, 0, FBD_FIELD_ANCHOR)) > 0);
  CHECK(fbd_report_check_field(rep.r, 0, 99, FBD_FIELD_ID) == nullptr);
  CHECK(fbd_report_check_field(rep.r, 3, 0, FBD_FIELD_ID) == nullptr);
  const std::string json = render(rep.r, FBD_FORMAT_JSON);
  CHECK(json.find("\"suites\"") != std::string::npos);
  CHECK(json == render(rep.r, FBD_FORMAT_JSON));
  CHECK(render(rep.r, FBD_FORMAT_MARKDOWN).find("## clifford: PASS") != std::string::npos);
}

TEST_CASE("configured conventions are reported") {
  Config cfg;
  REQUIRE(fbd_config_parse("rep = fermi\nconv.brace_sign = -1\n", &cfg.c) == FBD_OK);
  const char* names[] = {"poincare"};
  Report rep;
  REQUIRE(fbd_run(cfg.c, names, 1, &rep.r) == FBD_OK);
  REQUIRE(fbd_report_suites(rep.r) == 1);
  CHECK(std::string(fbd_report_convention(rep.r, 0, "brace_sign")) == "-1");
  CHECK(std::string(fbd_report_convention(rep.r, 0, "source")) == "configured");
  CHECK(fbd_report_convention(rep.r, 0, "nope") == nullptr);
  // The wrong sign breaks invariance.
  CHECK(fbd_report_passed(rep.r) == 0);
}

TEST_CASE("errors map to status codes") {
  Config cfg;
  CHECK(fbd_config_parse("grid.n = 4\n", &cfg.c) == FBD_ERR_CONFIG);
  CHECK(std::string(fbd_last_error()).find("grid.n") != std::string::npos);
  CHECK(fbd_config_parse("no equals sign\n", &cfg.c) == FBD_ERR_CONFIG);
  CHECK(fbd_config_parse("tol.exact = 1e-3\n", &cfg.c) == FBD_ERR_CONFIG);
  CHECK(fbd_config_parse("tol.drift = -1\n", &cfg.c) == FBD_ERR_CONFIG);
  CHECK(fbd_config_parse("wat = 1\n", &cfg.c) == FBD_ERR_CONFIG);
  CHECK(fbd_config_load("/nonexistent/fbdual.cfg", &cfg.c) == FBD_ERR_IO);
  CHECK(fbd_config_new(nullptr) == FBD_ERR_ARGUMENT);

  REQUIRE(fbd_config_parse("# comment\nmass = 3/2  # trailing\ngrid.n = 16\n", &cfg.c) == FBD_OK);
  CHECK(fbd_config_set(cfg.c, "conv.ordering", "sideways") == FBD_ERR_CONFIG);
  const char* bad[] = {"nonsense"};
  Report rep;
  CHECK(fbd_run(cfg.c, bad, 1, &rep.r) == FBD_ERR_CONFIG);
  CHECK(rep.r == nullptr);
  // 16 points cannot resolve the default packet.
  const char* conserve[] = {"conserve"};
  CHECK(fbd_run(cfg.c, conserve, 1, &rep.r) == FBD_ERR_NUMERIC);
  CHECK(std::string(fbd_last_error()).find("GridTooCoarse") != std::string::npos);
}

TEST_CASE("empty selection") {
  Config cfg;
  REQUIRE(fbd_config_new(&cfg.c) == FBD_OK);
  Report rep;
  REQUIRE(fbd_run(cfg.c, nullptr, 0, &rep.r) == FBD_OK);
  CHECK(fbd_report_suites(rep.r) == 0);
  CHECK(fbd_report_passed(rep.r) == 1);
}
