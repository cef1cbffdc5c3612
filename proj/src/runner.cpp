#include "fbdual/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include <gmpxx.h>
#include <json.hpp>

#include "fbdual/cliffords.hpp"
#include "fbdual/errors.hpp"
#include "fbdual/solutions.hpp"
#include "fbdual/spinsets.hpp"

namespace fbd::runner {

using symdiff::Rep;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": not a number: '" + v + "'");
  }
  if (used != v.size() || !std::isfinite(x)) throw ConfigError(key + ": not a number: '" + v + "'");
  return x;
}

int parse_int(const std::string& key, const std::string& v) {
  const double x = parse_double(key, v);
  if (x != std::floor(x) || std::abs(x) > 1e6) throw ConfigError(key + ": not an integer: '" + v + "'");
  return static_cast<int>(x);
}

int parse_sign(const std::string& key, const std::string& v) {
  if (v == "1" || v == "+1") return 1;
  if (v == "-1") return -1;
  throw ConfigError(key + ": expected +1 or -1, got '" + v + "'");
}

mpq_class parse_rational(const std::string& key, const std::string& v) {
  mpq_class q;
  if (v.empty() || q.set_str(v, 10) != 0) throw ConfigError(key + ": not a rational: '" + v + "'");
  q.canonicalize();
  return q;
}

std::string num(double v) {
  std::ostringstream o;
  o << v;
  return o.str();
}

std::string sign(int s) { return s > 0 ? "+1" : "-1"; }

std::vector<Rep> reps(const RunConfig& cfg) {
  if (cfg.rep == "fermi") return {Rep::fermi};
  if (cfg.rep == "bose") return {Rep::bose};
  return {Rep::fermi, Rep::bose};
}

class Runner {
 public:
  explicit Runner(const RunConfig& cfg) : cfg_(cfg) {}

  Suite build(const std::string& name) {
    Suite s;
    s.name = name;
    if (name == "clifford") {
      s.append(cliffords::verify_clifford7());
    } else if (name == "span") {
      s.append(cliffords::verify_bases());
      s.append(cliffords::verify_span());
    } else if (name == "so8") {
      s.append(cliffords::verify_so8());
    } else if (name == "spin") {
      for (auto w : {spinsets::SpinSet::fermi, spinsets::SpinSet::prime_boson, spinsets::SpinSet::cartesian_boson,
                     spinsets::SpinSet::cyclic_boson})
        s.append(spinsets::verify_su2_casimir(w));
      s.append(spinsets::verify_spectra());
    } else if (name == "intertwine") {
      s.append(spinsets::verify_intertwinings());
      s.append(spinsets::verify_h_invariance());
    } else if (name == "solutions") {
      s.append(solutions::verify_fundamentals());
      s.append(solutions::verify_eigen());
      s.append(solutions::verify_fw_map());
    }
    return s;
  }

  Suite poincare(Rep rep) {
    Suite s;
    s.name = std::string("poincare.") + symdiff::rep_name(rep);
    const symdiff::Conventions conv = conventions(rep, s);
    const symdiff::Generators g = symdiff::build_poincare(rep, conv);
    s.append(symdiff::verify_invariance(g));
    s.append(symdiff::verify_closure(g));
    s.append(symdiff::verify_casimirs(g));
    s.append(symdiff::verify_jacobi(g, 20));
    return s;
  }

  Suite conserve() {
    Suite s;
    s.name = "conserve";
    conservation::ConserveConfig cc;
    cc.packet.grid = cfg_.grid;
    cc.packet.sigma = cfg_.sigma;
    cc.packet.mass = cfg_.mass_value();
    cc.tol.norm = cfg_.tol_norm;
    cc.tol.matrix = cfg_.tol_drift;
    cc.tol.derivative = cfg_.tol_drift_derivative;
    bool fermi = false;
    for (Rep rep : reps(cfg_)) {
      Suite scratch;
      cc.conv = conventions(rep, scratch);
      for (auto& [k, v] : scratch.conventions) s.conventions.emplace_back(std::string(symdiff::rep_name(rep)) + "." + k, v);
      s.append(conservation::verify_conservation(rep, cc));
      fermi = fermi || rep == Rep::fermi;
    }
    if (fermi) {
      cc.conv = resolved_.count(Rep::fermi) ? resolved_.at(Rep::fermi) : cfg_.conv;
      s.append(conservation::verify_charge_examples(cc));
      s.append(conservation::verify_halving(cc));
    }
    s.append(conservation::rotation_signature(cfg_.tol_numeric));
    return s;
  }

 private:
  symdiff::Conventions conventions(Rep rep, Suite& s) {
    symdiff::Conventions conv = cfg_.conv;
    if (cfg_.conv_auto) {
      auto it = resolved_.find(rep);
      if (it == resolved_.end()) {
        const symdiff::Resolution r = symdiff::resolve_conventions(rep, cfg_.conv.bose_basis);
        it = resolved_.emplace(rep, r.conv).first;
        tried_[rep] = r.tried.size();
      }
      conv = it->second;
      s.conventions.emplace_back("source", "auto");
      s.conventions.emplace_back("candidates_tried", std::to_string(tried_[rep]));
    } else {
      s.conventions.emplace_back("source", "configured");
    }
    for (auto& kv : conv.describe()) s.conventions.push_back(kv);
    return conv;
  }

  const RunConfig& cfg_;
  std::map<Rep, symdiff::Conventions> resolved_;
  std::map<Rep, std::size_t> tried_;
};

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"clifford", "span",     "so8",       "spin",
                                              "intertwine", "poincare", "solutions", "conserve"};
  return names;
}

void RunConfig::set(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "mass") {
    if (parse_rational(key, v) <= 0) throw ConfigError("mass must be positive");
    mass = v;
  } else if (key == "tol.exact") {
    tol_exact = parse_double(key, v);
    if (tol_exact != 0.0) throw ConfigError("tol.exact must be 0: exact checks compare canonical forms");
  } else if (key == "tol.numeric" || key == "tol.drift" || key == "tol.drift_derivative" || key == "tol.norm") {
    const double x = parse_double(key, v);
    if (!(x > 0.0)) throw ConfigError(key + " must be positive");
    if (key == "tol.numeric") tol_numeric = x;
    else if (key == "tol.drift") tol_drift = x;
    else if (key == "tol.drift_derivative") tol_drift_derivative = x;
    else tol_norm = x;
  } else if (key == "grid.n") {
    grid.n = parse_int(key, v);
    if (grid.n < 8 || grid.n > 512) throw ConfigError("grid.n must lie in [8, 512]");
  } else if (key == "grid.kmax") {
    grid.kmax = parse_double(key, v);
    if (!(grid.kmax > 0.0)) throw ConfigError("grid.kmax must be positive");
  } else if (key == "packet.sigma") {
    sigma = parse_double(key, v);
    if (!(sigma > 0.0)) throw ConfigError("packet.sigma must be positive");
  } else if (key == "rep") {
    if (v != "fermi" && v != "bose" && v != "both") throw ConfigError("rep must be fermi, bose or both");
    rep = v;
  } else if (key == "conv") {
    if (v != "auto" && v != "default") throw ConfigError("conv must be auto or default");
    conv_auto = v == "auto";
    if (!conv_auto) conv = symdiff::Conventions{};
  } else if (key.rfind("conv.", 0) == 0 && v == "auto") {
    if (key != "conv.x_sign" && key != "conv.brace_sign" && key != "conv.ordering" && key != "conv.eps_sign" &&
        key != "conv.closure_sign")
      throw ConfigError("unknown key '" + key + "'");
    conv_auto = true;
  } else if (key == "conv.x_sign") {
    conv.x_sign = parse_sign(key, v);
  } else if (key == "conv.brace_sign") {
    conv.brace_sign = parse_sign(key, v);
  } else if (key == "conv.eps_sign") {
    conv.eps_sign = parse_sign(key, v);
  } else if (key == "conv.closure_sign") {
    conv.closure_sign = parse_sign(key, v);
  } else if (key == "conv.ordering") {
    if (v == "x*omega") conv.ordering = symdiff::Ordering::x_omega;
    else if (v == "omega*x") conv.ordering = symdiff::Ordering::omega_x;
    else throw ConfigError("conv.ordering must be x*omega or omega*x");
  } else if (key == "conv.bose_basis") {
    if (v == "cartesian") conv.bose_basis = symdiff::BoseBasis::cartesian;
    else if (v == "cyclic") conv.bose_basis = symdiff::BoseBasis::cyclic;
    else throw ConfigError("conv.bose_basis must be cartesian or cyclic");
  } else if (key == "fixture.fail") {
    if (v != "0" && v != "1") throw ConfigError("fixture.fail must be 0 or 1");
    fixture_fail = v == "1";
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(no) + ": empty key");
    c.set(key, line.substr(eq + 1));
  }
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

double RunConfig::mass_value() const { return parse_rational("mass", mass).get_d(); }

std::map<std::string, std::string> RunConfig::entries() const {
  std::map<std::string, std::string> e{
      {"mass", mass},
      {"tol.exact", num(tol_exact)},
      {"tol.numeric", num(tol_numeric)},
      {"tol.drift", num(tol_drift)},
      {"tol.drift_derivative", num(tol_drift_derivative)},
      {"tol.norm", num(tol_norm)},
      {"grid.n", std::to_string(grid.n)},
      {"grid.kmax", num(grid.kmax)},
      {"packet.sigma", num(sigma)},
      {"rep", rep},
      {"conv", conv_auto ? "auto" : "configured"},
  };
  if (!conv_auto) {
    e["conv.x_sign"] = sign(conv.x_sign);
    e["conv.brace_sign"] = sign(conv.brace_sign);
    e["conv.eps_sign"] = sign(conv.eps_sign);
    e["conv.closure_sign"] = sign(conv.closure_sign);
    e["conv.ordering"] = conv.ordering == symdiff::Ordering::x_omega ? "x*omega" : "omega*x";
  }
  e["conv.bose_basis"] = conv.bose_basis == symdiff::BoseBasis::cartesian ? "cartesian" : "cyclic";
  if (fixture_fail) e["fixture.fail"] = "1";
  return e;
}

std::vector<SuiteReport> run(const RunConfig& cfg, const std::vector<std::string>& names) {
  std::vector<std::string> selected;
  const bool all = std::find(names.begin(), names.end(), "all") != names.end();
  for (const auto& n : names)
    if (n != "all" && std::find(suite_names().begin(), suite_names().end(), n) == suite_names().end())
      throw ConfigError("unknown suite '" + n + "'");
  for (const auto& n : suite_names())
    if (all || std::find(names.begin(), names.end(), n) != names.end()) selected.push_back(n);

  Runner r(cfg);
  std::vector<SuiteReport> out;
  auto timed = [&](auto&& make) {
    const auto t0 = std::chrono::steady_clock::now();
    Suite s = make();
    s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back({std::move(s)});
  };
  for (const auto& n : selected) {
    if (n == "poincare") {
      for (Rep rep : reps(cfg)) timed([&] { return r.poincare(rep); });
    } else if (n == "conserve") {
      timed([&] { return r.conserve(); });
    } else {
      timed([&] { return r.build(n); });
    }
  }
  if (cfg.fixture_fail) {
    Suite s;
    s.name = "fixture";
    s.checks.push_back(make_check("fixture.injected", "injected failing check", "pass", "fail", false, "test fixture",
                                  Basis::identity));
    out.push_back({std::move(s)});
  }
  return out;
}

std::string to_json(const RunConfig& cfg, const std::vector<SuiteReport>& reports) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["version"] = kVersion;
  ordered_json c = ordered_json::object();
  for (const auto& [k, v] : cfg.entries()) c[k] = v;
  j["config"] = c;
  ordered_json suites = ordered_json::array();
  bool all = true;
  for (const auto& r : reports) {
    ordered_json s;
    s["name"] = r.suite.name;
    ordered_json conv = ordered_json::object();
    for (const auto& [k, v] : r.suite.conventions) conv[k] = v;
    s["conventions"] = conv;
    ordered_json checks = ordered_json::array();
    for (const auto& ch : r.suite.checks)
      checks.push_back({{"id", ch.id},
                        {"statement", ch.statement},
                        {"expected", ch.expected},
                        {"got", ch.got},
                        {"pass", ch.pass},
                        {"anchor", ch.anchor},
                        {"basis", basis_name(ch.basis)}});
    s["checks"] = checks;
    s["pass"] = r.passed();
    all = all && r.passed();
    suites.push_back(s);
  }
  j["suites"] = suites;
  j["pass"] = all;
  return j.dump(2) + "\n";
}

namespace {

std::string cell(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '|') o += "\\|";
    else if (c == '\n') o += ' ';
    else o += c;
  }
  return o;
}

}  // namespace

std::string to_markdown(const RunConfig& cfg, const std::vector<SuiteReport>& reports) {
  std::ostringstream o;
  std::size_t total = 0, failed = 0;
  for (const auto& r : reports)
    for (const auto& c : r.suite.checks) {
      ++total;
      failed += c.pass ? 0 : 1;
    }
  o << "# fbdual verification report\n\n";
  o << "version " << kVersion << ", " << reports.size() << " suites, " << total << " checks, " << failed
    << " failed\n\n";
  o << "## Config\n\n| key | value |\n|---|---|\n";
  for (const auto& [k, v] : cfg.entries()) o << "| " << cell(k) << " | " << cell(v) << " |\n";
  for (const auto& r : reports) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2f", r.suite.seconds);
    o << "\n## " << r.suite.name << ": " << (r.passed() ? "PASS" : "FAIL") << " (" << secs << " s)\n\n";
    if (!r.suite.conventions.empty()) {
      o << "Conventions:";
      for (const auto& [k, v] : r.suite.conventions) o << " " << k << "=" << v;
      o << "\n\n";
    }
    o << "| id | statement | expected | got | pass | anchor |\n|---|---|---|---|---|---|\n";
    for (const auto& c : r.suite.checks)
      o << "| " << cell(c.id) << " | " << cell(c.statement) << " | " << cell(c.expected) << " | " << cell(c.got)
        << " | " << (c.pass ? "yes" : "**no**") << " | " << cell(c.anchor) << " |\n";
  }
  return o.str();
}

}  // namespace fbd::runner
