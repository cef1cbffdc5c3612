#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fbd {

/// Where an expected value comes from: printed in the source relations,
/// derived by hand from them, or a structural identity.
enum class Basis { stated, derived, identity };

const char* basis_name(Basis b);

struct Check {
  std::string id;
  std::string statement;
  std::string expected;
  std::string got;
  bool pass = false;
  std::string anchor;
  Basis basis = Basis::derived;
};

using Checks = std::vector<Check>;

Check make_check(std::string id, std::string statement, std::string expected, std::string got, bool pass,
                 std::string anchor, Basis basis);

struct Suite {
  std::string name;
  std::vector<std::pair<std::string, std::string>> conventions;
  Checks checks;
  double seconds = 0.0;

  bool passed() const;
  void append(Checks more);
};

}  // namespace fbd
