#include "bshm/instance_io.hpp"

#include <fstream>

namespace bshm {

using nlohmann::json;

Rational rational_from_json(const json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) {
    if (value.is_number_unsigned()) return Rational(Integer(std::to_string(value.get<std::uint64_t>()), 10));
    return Rational(Integer(std::to_string(value.get<std::int64_t>()), 10));
  }
  if (value.is_number_float()) {
    throw ValidationError("floating-point number " + value.dump() +
                          " is not exact; write it as a \"p/q\" or decimal string");
  }
  throw ValidationError("expected a rational, got " + value.dump());
}

json rational_to_json(const Rational& value) { return to_string(value); }

namespace {

const json& field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object() || !obj.contains(name)) {
    throw ValidationError(where + ": missing field '" + name + "'");
  }
  return obj.at(name);
}

}  // namespace

Instance parse_instance(const json& doc, const LoadOptions& options) {
  if (!doc.is_object()) throw ValidationError("instance must be a JSON object");
  const json& types = field(doc, "types", "instance");
  if (!types.is_array()) throw ValidationError("'types' must be an array");
  std::vector<MachineType> raw;
  for (std::size_t i = 0; i < types.size(); ++i) {
    std::string where = "types[" + std::to_string(i) + "]";
    raw.push_back({rational_from_json(field(types[i], "capacity", where)),
                   rational_from_json(field(types[i], "rate", where))});
  }

  std::vector<Job> jobs;
  if (doc.contains("jobs")) {
    const json& list = doc.at("jobs");
    if (!list.is_array()) throw ValidationError("'jobs' must be an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      std::string where = "jobs[" + std::to_string(i) + "]";
      const json& id = field(list[i], "id", where);
      jobs.push_back({id.is_string() ? id.get<std::string>() : id.dump(),
                      rational_from_json(field(list[i], "size", where)),
                      rational_from_json(field(list[i], "start", where)),
                      rational_from_json(field(list[i], "end", where))});
    }
  }
  return Instance::from_raw(raw, std::move(jobs), options);
}

Instance load_instance(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open instance file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  return parse_instance(doc, options);
}

json instance_to_json(const Instance& instance) {
  json types = json::array();
  for (const auto& t : instance.types().entries()) {
    types.push_back({{"capacity", rational_to_json(t.capacity)}, {"rate", rational_to_json(t.rate)}});
  }
  json jobs = json::array();
  for (const auto& j : instance.jobs()) {
    jobs.push_back({{"id", j.id},
                    {"size", rational_to_json(j.size)},
                    {"start", rational_to_json(j.start)},
                    {"end", rational_to_json(j.end)}});
  }
  return {{"types", types}, {"jobs", jobs}};
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << instance_to_json(instance).dump(2) << '\n';
}

}  // namespace bshm
