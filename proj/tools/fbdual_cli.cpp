// fbdual: runs verification suites and reports through the C API.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fbdual/fbdual.h"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

int error(const char* what) {
  std::fprintf(stderr, "fbdual: %s: %s\n", what, fbd_last_error());
  return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification suites for free spinor and vector field generators"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string rep, config, format = "json", out;
  app.add_option("--rep", rep, "Representation for poincare and conserve")->check(CLI::IsMember({"fermi", "bose", "both"}));
  app.add_option("--config", config, "Key-value config file");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "md"}));
  app.add_option("--out", out, "Write the report here instead of stdout");

  std::vector<std::string> suites;
  std::vector<std::string> allowed;
  for (size_t i = 0; i < fbd_suite_count(); ++i)
    if (std::string(fbd_suite_name(i)) != "conserve") allowed.emplace_back(fbd_suite_name(i));
  auto* verify = app.add_subcommand("verify", "Run the named algebraic suites (none: empty report)");
  verify->add_option("suites", suites, "Suites")->check(CLI::IsMember(allowed));
  app.add_subcommand("conserve", "Wave-packet conservation suite");
  app.add_subcommand("all", "Every suite in dependency order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  if (app.got_subcommand("conserve")) suites = {"conserve"};
  if (app.got_subcommand("all")) suites = {"all"};

  fbd_config* cfg = nullptr;
  if ((config.empty() ? fbd_config_new(&cfg) : fbd_config_load(config.c_str(), &cfg)) != FBD_OK)
    return error("config");
  if (!rep.empty() && fbd_config_set(cfg, "rep", rep.c_str()) != FBD_OK) {
    fbd_config_free(cfg);
    return error("config");
  }

  std::vector<const char*> names;
  for (const auto& s : suites) names.push_back(s.c_str());
  fbd_report* report = nullptr;
  const fbd_status st = fbd_run(cfg, names.data(), names.size(), &report);
  fbd_config_free(cfg);
  if (st != FBD_OK) return error("run");

  const fbd_format fmt = format == "md" ? FBD_FORMAT_MARKDOWN : FBD_FORMAT_JSON;
  int code = fbd_report_passed(report) ? 0 : kExitFail;
  if (!out.empty()) {
    if (fbd_report_write(report, fmt, out.c_str()) != FBD_OK) code = error("output");
  } else {
    char* text = nullptr;
    if (fbd_report_render(report, fmt, &text) != FBD_OK) {
      code = error("output");
    } else {
      std::fputs(text, stdout);
      fbd_string_free(text);
    }
  }

  for (size_t s = 0; s < fbd_report_suites(report); ++s)
    for (size_t c = 0; c < fbd_report_checks(report, s); ++c)
      if (!fbd_report_check_passed(report, s, c))
        std::fprintf(stderr, "FAIL %s: expected %s, got %s\n", fbd_report_check_field(report, s, c, FBD_FIELD_ID),
                     fbd_report_check_field(report, s, c, FBD_FIELD_EXPECTED),
                     fbd_report_check_field(report, s, c, FBD_FIELD_GOT));
  fbd_report_free(report);
  return code;
}
