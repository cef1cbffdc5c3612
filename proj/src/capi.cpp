#include "fbdual/fbdual.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "fbdual/errors.hpp"
#include "fbdual/runner.hpp"

using namespace fbd;

struct fbd_config {
  runner::RunConfig cfg;
};

struct fbd_report {
  runner::RunConfig cfg;
  std::vector<runner::SuiteReport> reports;
};

namespace {

thread_local std::string last_error;

fbd_status fail(fbd_status s, std::string msg) {
  last_error = std::move(msg);
  return s;
}

template <class F>
fbd_status guard(F&& f) {
  last_error.clear();
  try {
    f();
    return FBD_OK;
  } catch (const ConfigError& e) {
    return fail(FBD_ERR_CONFIG, e.what());
  } catch (const IoError& e) {
    return fail(FBD_ERR_IO, e.what());
  } catch (const ConventionUnresolvable& e) {
    return fail(FBD_ERR_CONVENTION, e.what());
  } catch (const GridTooCoarse& e) {
    return fail(FBD_ERR_NUMERIC, std::string("GridTooCoarse: ") + e.what());
  } catch (const GridTooSmall& e) {
    return fail(FBD_ERR_NUMERIC, std::string("GridTooSmall: ") + e.what());
  } catch (const DerivativeBoundary& e) {
    return fail(FBD_ERR_NUMERIC, std::string("DerivativeBoundary: ") + e.what());
  } catch (const Error& e) {
    return fail(FBD_ERR_INTERNAL, std::string(e.kind()) + ": " + e.what());
  } catch (const std::bad_alloc&) {
    return fail(FBD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FBD_ERR_INTERNAL, e.what());
  }
}

const Check* check_at(const fbd_report* r, size_t s, size_t c) {
  if (!r || s >= r->reports.size() || c >= r->reports[s].suite.checks.size()) return nullptr;
  return &r->reports[s].suite.checks[c];
}

std::string render(const fbd_report* r, fbd_format f) {
  if (f == FBD_FORMAT_JSON) return runner::to_json(r->cfg, r->reports);
  if (f == FBD_FORMAT_MARKDOWN) return runner::to_markdown(r->cfg, r->reports);
  throw ConfigError("unknown format");
}

}  // namespace

extern "C" {

const char* fbd_version(void) { return runner::kVersion; }

const char* fbd_last_error(void) { return last_error.c_str(); }

fbd_status fbd_config_new(fbd_config** out) {
  if (!out) return fail(FBD_ERR_ARGUMENT, "null output pointer");
  return guard([&] { *out = new fbd_config{}; });
}

fbd_status fbd_config_load(const char* path, fbd_config** out) {
  if (!path || !out) return fail(FBD_ERR_ARGUMENT, "null argument");
  return guard([&] { *out = new fbd_config{runner::RunConfig::load(path)}; });
}

fbd_status fbd_config_parse(const char* text, fbd_config** out) {
  if (!text || !out) return fail(FBD_ERR_ARGUMENT, "null argument");
  return guard([&] { *out = new fbd_config{runner::RunConfig::parse(text)}; });
}

fbd_status fbd_config_set(fbd_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return fail(FBD_ERR_ARGUMENT, "null argument");
  return guard([&] { cfg->cfg.set(key, value); });
}

void fbd_config_free(fbd_config* cfg) { delete cfg; }

size_t fbd_suite_count(void) { return runner::suite_names().size(); }

const char* fbd_suite_name(size_t i) {
  return i < runner::suite_names().size() ? runner::suite_names()[i].c_str() : nullptr;
}

fbd_status fbd_run(const fbd_config* cfg, const char* const* suites, size_t n, fbd_report** out) {
  if (!cfg || !out || (n > 0 && !suites)) return fail(FBD_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guard([&] {
    std::vector<std::string> names;
    for (size_t i = 0; i < n; ++i) {
      if (!suites[i]) throw ConfigError("null suite name");
      names.emplace_back(suites[i]);
    }
    auto* r = new fbd_report{cfg->cfg, {}};
    try {
      r->reports = runner::run(cfg->cfg, names);
    } catch (...) {
      delete r;
      throw;
    }
    *out = r;
  });
}

void fbd_report_free(fbd_report* r) { delete r; }

int fbd_report_passed(const fbd_report* r) {
  if (!r) return 0;
  for (const auto& s : r->reports)
    if (!s.passed()) return 0;
  return 1;
}

size_t fbd_report_suites(const fbd_report* r) { return r ? r->reports.size() : 0; }

const char* fbd_report_suite(const fbd_report* r, size_t s) {
  return r && s < r->reports.size() ? r->reports[s].suite.name.c_str() : nullptr;
}

int fbd_report_suite_passed(const fbd_report* r, size_t s) {
  return r && s < r->reports.size() && r->reports[s].passed() ? 1 : 0;
}

double fbd_report_suite_seconds(const fbd_report* r, size_t s) {
  return r && s < r->reports.size() ? r->reports[s].suite.seconds : 0.0;
}

size_t fbd_report_checks(const fbd_report* r, size_t s) {
  return r && s < r->reports.size() ? r->reports[s].suite.checks.size() : 0;
}

const char* fbd_report_check_field(const fbd_report* r, size_t s, size_t c, fbd_field f) {
  const Check* ch = check_at(r, s, c);
  if (!ch) return nullptr;
  switch (f) {
    case FBD_FIELD_ID: return ch->id.c_str();
    case FBD_FIELD_STATEMENT: return ch->statement.c_str();
    case FBD_FIELD_EXPECTED: return ch->expected.c_str();
    case FBD_FIELD_GOT: return ch->got.c_str();
    case FBD_FIELD_ANCHOR: return ch->anchor.c_str();
    case FBD_FIELD_BASIS: return basis_name(ch->basis);
  }
  return nullptr;
}

int fbd_report_check_passed(const fbd_report* r, size_t s, size_t c) {
  const Check* ch = check_at(r, s, c);
  return ch && ch->pass ? 1 : 0;
}

const char* fbd_report_convention(const fbd_report* r, size_t s, const char* key) {
  if (!r || !key || s >= r->reports.size()) return nullptr;
  for (const auto& [k, v] : r->reports[s].suite.conventions)
    if (k == key) return v.c_str();
  return nullptr;
}

fbd_status fbd_report_render(const fbd_report* r, fbd_format f, char** out) {
  if (!r || !out) return fail(FBD_ERR_ARGUMENT, "null argument");
  return guard([&] {
    const std::string s = render(r, f);
    char* buf = static_cast<char*>(std::malloc(s.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *out = buf;
  });
}

fbd_status fbd_report_write(const fbd_report* r, fbd_format f, const char* path) {
  if (!r || !path) return fail(FBD_ERR_ARGUMENT, "null argument");
  return guard([&] {
    const std::string s = render(r, f);
    std::ofstream o(path, std::ios::binary);
    if (!o) throw IoError(std::string("cannot write '") + path + "'");
    o << s;
    if (!o) throw IoError(std::string("write failed for '") + path + "'");
  });
}

void fbd_string_free(char* s) { std::free(s); }

}  // extern "C"
