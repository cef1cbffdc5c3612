#include "fbdual/report.hpp"

#include <algorithm>

namespace fbd {

const char* basis_name(Basis b) {
  switch (b) {
    case Basis::stated: return "stated";
    case Basis::derived: return "derived";
    case Basis::identity: return "identity";
  }
  return "?";
}

Check make_check(std::string id, std::string statement, std::string expected, std::string got, bool pass,
                 std::string anchor, Basis basis) {
  Check c;
  c.id = std::move(id);
  c.statement = std::move(statement);
  c.expected = std::move(expected);
  c.got = std::move(got);
  c.pass = pass;
  c.anchor = std::move(anchor);
  c.basis = basis;
  return c;
}

bool Suite::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void Suite::append(Checks more) {
  for (auto& c : more) checks.push_back(std::move(c));
}

}  // namespace fbd
