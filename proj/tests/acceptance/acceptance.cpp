// Acceptance criteria, one line each. Exit status 0 iff every criterion holds.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fbdual/fbdual.h"

namespace {

// Pinned settings.
const std::vector<std::pair<const char*, const char*>> kNumeric{
    {"mass", "1"},           {"grid.n", "64"},          {"grid.kmax", "6"},
    {"packet.sigma", "0.5"}, {"tol.exact", "0"},        {"tol.numeric", "1e-10"},
    {"tol.norm", "1e-12"},   {"tol.drift", "1e-8"},     {"tol.drift_derivative", "1e-6"},
};

struct Run {
  std::vector<std::string> suites;
  std::vector<std::pair<std::string, std::string>> extra;
  std::string json;
  double seconds = 0.0;
  std::string error;
  // id -> (pass, got)
  std::map<std::string, std::pair<bool, std::string>> checks;
  std::map<std::string, std::pair<std::size_t, bool>> suite_stats;  // checks, pass
  std::map<std::string, std::string> conventions;                   // first suite carrying them
};

bool execute(Run& r, std::string* json_out) {
  fbd_config* cfg = nullptr;
  if (fbd_config_new(&cfg) != FBD_OK) {
    r.error = fbd_last_error();
    return false;
  }
  for (const auto& [k, v] : kNumeric) fbd_config_set(cfg, k, v);
  for (const auto& [k, v] : r.extra)
    if (fbd_config_set(cfg, k.c_str(), v.c_str()) != FBD_OK) {
      r.error = fbd_last_error();
      fbd_config_free(cfg);
      return false;
    }
  std::vector<const char*> names;
  for (const auto& s : r.suites) names.push_back(s.c_str());
  fbd_report* rep = nullptr;
  const auto t0 = std::chrono::steady_clock::now();
  const fbd_status st = fbd_run(cfg, names.data(), names.size(), &rep);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  fbd_config_free(cfg);
  if (st != FBD_OK) {
    r.error = fbd_last_error();
    return false;
  }
  char* text = nullptr;
  if (fbd_report_render(rep, FBD_FORMAT_JSON, &text) == FBD_OK) {
    *json_out = text;
    fbd_string_free(text);
  }
  if (json_out == &r.json) {
    r.seconds = secs;
    for (std::size_t s = 0; s < fbd_report_suites(rep); ++s) {
      const std::size_t n = fbd_report_checks(rep, s);
      r.suite_stats[fbd_report_suite(rep, s)] = {n, fbd_report_suite_passed(rep, s) == 1};
      for (const char* key : {"x_sign", "brace_sign", "ordering", "eps_sign", "closure_sign"})
        if (const char* v = fbd_report_convention(rep, s, key); v && !r.conventions.count(key)) r.conventions[key] = v;
      for (std::size_t c = 0; c < n; ++c)
        r.checks[fbd_report_check_field(rep, s, c, FBD_FIELD_ID)] = {
            fbd_report_check_passed(rep, s, c) == 1, fbd_report_check_field(rep, s, c, FBD_FIELD_GOT)};
    }
  }
  fbd_report_free(rep);
  return true;
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::size_t count_prefix(const Run& r, const std::string& p, bool* all_pass) {
  std::size_t n = 0;
  for (const auto& [id, v] : r.checks)
    if (id.rfind(p, 0) == 0) {
      ++n;
      if (!v.first) *all_pass = false;
    }
  return n;
}

void need(Outcome& o, const Run& r, const std::string& id, const std::string& got = "") {
  auto it = r.checks.find(id);
  if (it == r.checks.end()) return o.require(false, "missing " + id);
  o.require(it->second.first, id + " failed (" + it->second.second + ")");
  if (!got.empty()) o.require(it->second.second == got, id + " got " + it->second.second + ", want " + got);
}

void need_prefix(Outcome& o, const Run& r, const std::string& p, std::size_t want) {
  bool ok = true;
  const std::size_t n = count_prefix(r, p, &ok);
  o.require(n == want, p + "* count " + std::to_string(n) + " != " + std::to_string(want));
  o.require(ok, "a " + p + "* check failed");
}

void suites_pass(Outcome& o, const Run& r) {
  for (const auto& [name, st] : r.suite_stats) o.require(st.second, "suite " + name + " has failures");
  o.require(!r.suite_stats.empty(), "no suites ran");
}

void within(Outcome& o, const Run& r, double limit) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f s > %.0f s", r.seconds, limit);
  o.require(r.seconds < limit, buf);
}

struct Criterion {
  int id;
  std::string title;
  Run run;
  std::function<void(Outcome&, const Run&)> judge;
  std::string summary;
};

}  // namespace

int main() {
  std::vector<Criterion> cs;
  cs.push_back({1, "Clifford suite: 28 anticommutators + 7 squares exact", {{"clifford"}, {}}, [](Outcome& o, const Run& r) {
                  suites_pass(o, r);
                  need_prefix(o, r, "clifford.g", 28);
                  need_prefix(o, r, "clifford.sq", 7);
                  within(o, r, 1.0);
                }});
  cs.push_back({2, "ERCD span: real rank 64, CD subset rank 16", {{"span"}, {}}, [](Outcome& o, const Run& r) {
                  suites_pass(o, r);
                  need(o, r, "span.ercd64", "64");
                  need(o, r, "span.cd16", "16");
                  within(o, r, 5.0);
                }});
  cs.push_back({3, "SO(8) suite: 378 generator pairs exact", {{"so8"}, {}}, [](Outcome& o, const Run& r) {
                  suites_pass(o, r);
                  need(o, r, "so8.relations", "378/378");
                  within(o, r, 10.0);
                }});
  cs.push_back({4, "Spin suite: SU(2), Casimirs, intertwiners, iγ0ω invariance", {{"spin", "intertwine"}, {}},
                [](Outcome& o, const Run& r) {
                  suites_pass(o, r);
                  need(o, r, "fermi.casimir", "-3/4*I");
                  need(o, r, "prime_boson.casimir", "-3/4*I");
                  need(o, r, "cartesian_boson.casimir", "[-2, 0, 0, 0; 0, -2, 0, 0; 0, 0, -2, 0; 0, 0, 0, 0]");
                  need(o, r, "cyclic_boson.casimir", "[-2, 0, 0, 0; 0, -2, 0, 0; 0, 0, -2, 0; 0, 0, 0, 0]");
                  need(o, r, "intertwine.s_sprime_commute");
                  for (const char* x : {"intertwine.u_s1", "intertwine.u_s2", "intertwine.u_s3", "intertwine.W_s3",
                                        "intertwine.U_d1", "intertwine.U_d2", "intertwine.U_d3", "intertwine.U_d4"})
                    need(o, r, x);
                  need_prefix(o, r, "h_invariance.", 8);
                  within(o, r, 5.0);
                }});
  cs.push_back({5, "Poincaré suite (fermi): invariance, closure, Casimirs, w0 sign",
                {{"poincare"}, {{"rep", "fermi"}, {"conv", "auto"}}}, [](Outcome& o, const Run& r) {
                  suites_pass(o, r);
                  need_prefix(o, r, "invariance.fermi.", 26);
                  need_prefix(o, r, "closure.fermi.", 46);
                  need(o, r, "casimir.fermi.p2", "-m^2 I");
                  need(o, r, "casimir.fermi.w2", "-3/4*m^2*I");
                  need(o, r, "casimir.fermi.w0");
                  within(o, r, 60.0);
                }});
  cs.push_back({6, "Poincaré suite (bose): invariance, closure, w^2 = -2m^2 diag(1,1,1,0)",
                {{"poincare"}, {{"rep", "bose"}, {"conv", "auto"}}}, [](Outcome& o, const Run& r) {
                  suites_pass(o, r);
                  need_prefix(o, r, "invariance.bose.", 26);
                  need_prefix(o, r, "closure.bose.", 46);
                  need(o, r, "casimir.bose.w2",
                       "[-2*m^2, 0, 0, 0; 0, -2*m^2, 0, 0; 0, 0, -2*m^2, 0; 0, 0, 0, 0]");
                  within(o, r, 60.0);
                }});
  cs.push_back({7, "Solutions suite: 12 branches, eigenvalues, V unitary, spinors, Dirac check", {{"solutions"}, {}},
                [](Outcome& o, const Run& r) {
                  suites_pass(o, r);
                  bool ok = true;
                  std::size_t fw = 0;
                  for (const auto& [id, v] : r.checks)
                    if (id.rfind("solutions.", 0) == 0 && id.size() > 3 && id.compare(id.size() - 3, 3, ".fw") == 0) {
                      ++fw;
                      ok = ok && v.first;
                    }
                  o.require(fw == 12 && ok, "FW branch checks " + std::to_string(fw) + "/12");
                  need(o, r, "eigen.bose_cartesian.label_note");
                  need(o, r, "fw.unitary.minus", "I");
                  need(o, r, "fw.unitary.plus", "I");
                  need_prefix(o, r, "fw.spinor.", 4);
                  need_prefix(o, r, "fw.rest.", 4);
                  need_prefix(o, r, "dirac.", 12);
                  within(o, r, 10.0);
                }});
  cs.push_back({8, "Conservation suite: drifts, grid halving, rotation signature", {{"conserve"}, {{"rep", "both"}}},
                [](Outcome& o, const Run& r) {
                  suites_pass(o, r);
                  need(o, r, "conserve.fermi.norm");
                  need(o, r, "conserve.bose_cartesian.norm");
                  need_prefix(o, r, "conserve.fermi.", 24);
                  need_prefix(o, r, "conserve.bose_cartesian.", 24);
                  need_prefix(o, r, "halving.", 2);
                  need(o, r, "rotation.fermi.2pi");
                  need(o, r, "rotation.bose.2pi");
                  within(o, r, 120.0);
                }});

  bool all = true;
  for (auto& c : cs) {
    Outcome o;
    if (!execute(c.run, &c.run.json)) {
      o.require(false, "error: " + c.run.error);
    } else {
      c.judge(o, c.run);
    }
    std::size_t n = 0;
    for (const auto& [name, st] : c.run.suite_stats) n += st.first;
    char head[96];
    std::snprintf(head, sizeof head, "%zu checks, %.2f s", n, c.run.seconds);
    std::string line = std::string(o.pass ? "PASS" : "FAIL") + "  criterion " + std::to_string(c.id) + "  " + c.title +
                       "  [" + head;
    if (!c.run.conventions.empty())
      line += ", conventions x=" + c.run.conventions["x_sign"] + " brace=" + c.run.conventions["brace_sign"] + " " +
              c.run.conventions["ordering"] + " eps=" + c.run.conventions["eps_sign"] +
              " closure=" + c.run.conventions["closure_sign"];
    line += "]";
    if (!o.pass) line += "  " + o.detail;
    std::printf("%s\n", line.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }

  {
    Outcome o;
    for (auto& c : cs) {
      if (c.run.json.empty()) {
        o.require(false, "criterion " + std::to_string(c.id) + " produced no report");
        continue;
      }
      Run again = c.run;
      std::string second;
      if (!execute(again, &second)) o.require(false, "rerun of criterion " + std::to_string(c.id) + " failed");
      else o.require(second == c.run.json, "criterion " + std::to_string(c.id) + " JSON differs between runs");
    }
    std::printf("%s  criterion 9  Determinism: identical configs give byte-identical JSON  [%zu report pairs]%s\n",
                o.pass ? "PASS" : "FAIL", cs.size(), o.pass ? "" : ("  " + o.detail).c_str());
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
