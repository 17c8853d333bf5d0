#pragma once

#include <string>
#include <vector>

namespace bshm {

/// One failed invariant: a stable check name plus a human-readable witness.
struct Violation {
  std::string check;
  std::string detail;
};

using Violations = std::vector<Violation>;

}  // namespace bshm
