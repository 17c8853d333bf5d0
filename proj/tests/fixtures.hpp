#pragma once

#include "bshm/graph.hpp"
#include "bshm/model.hpp"
#include "bshm/oneshot.hpp"

#include <string>
#include <vector>

namespace bshm::test {

inline Rational q(const char* text) { return parse_rational(text); }

/// Thirteen types: rates 8^-6..8^6.
inline MachineTypeTable thirteen_types() {
  const char* capacities[] = {"1/300000", "1/100000", "1/4096", "1/1024", "1/65", "1/40", "1/3",
                              "1",        "12",       "50",     "1000",   "3000", "100000"};
  std::vector<MachineType> entries;
  Rational rate = Rational(1, 262144);
  for (const char* c : capacities) {
    entries.push_back({q(c), rate});
    rate *= 8;
  }
  return MachineTypeTable(std::move(entries));
}

inline MachineTypeTable table(std::vector<std::pair<const char*, const char*>> pairs) {
  std::vector<MachineType> entries;
  for (auto [g, r] : pairs) entries.push_back({q(g), q(r)});
  return MachineTypeTable(std::move(entries));
}

inline Job job(std::string id, const char* size, const char* start, const char* end) {
  return {std::move(id), q(size), q(start), q(end)};
}

inline std::vector<OneShotJob> sized(const MachineTypeTable& types, std::vector<const char*> sizes) {
  std::vector<OneShotJob> out;
  for (const char* s : sizes) out.push_back({q(s), exact_machine_type(q(s), types)});
  return out;
}

}  // namespace bshm::test
