#include "bshm/generator.hpp"

#include <algorithm>
#include <limits>

namespace bshm {

std::uint64_t uniform_int(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  if (hi < lo) throw ValidationError("empty random range");
  std::uint64_t span = hi - lo + 1;
  if (span == 0) return rng();
  // Rejection sampling keeps the draw unbiased.
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + x % span;
}

namespace {

Rational power_of_eight(long exponent) {
  Rational r = 1;
  for (long i = 0; i < exponent; ++i) r *= 8;
  for (long i = 0; i > exponent; --i) r /= 8;
  return r;
}

constexpr std::uint64_t size_grid = 64;

}  // namespace

MachineTypeTable random_type_table(Rng& rng, const TypeTableSpec& spec) {
  if (spec.count == 0) throw ValidationError("type table needs at least one type");
  if (spec.growth_min < 2 || spec.growth_max < spec.growth_min) throw ValidationError("bad capacity growth range");
  if (spec.rate_step_min < 1 || spec.rate_step_max < spec.rate_step_min) throw ValidationError("bad rate step range");
  std::vector<MachineType> entries;
  Rational capacity = 1;
  long exponent = -static_cast<long>(uniform_int(rng, 0, 2));
  for (std::size_t z = 0; z < spec.count; ++z) {
    if (z > 0) {
      capacity *= static_cast<unsigned long>(uniform_int(rng, spec.growth_min, spec.growth_max));
      exponent += static_cast<long>(uniform_int(rng, spec.rate_step_min, spec.rate_step_max));
    }
    entries.push_back({capacity, power_of_eight(exponent)});
  }
  return MachineTypeTable(std::move(entries));
}

Rational random_size_for_type(Rng& rng, const MachineTypeTable& types, TypeIndex z, bool bulky) {
  Rational lo = z == 1 ? Rational(0) : types.capacity(z - 1);
  if (bulky && lo < types.capacity(z) / 2) lo = types.capacity(z) / 2;
  Rational step = (types.capacity(z) - lo) / size_grid;
  return lo + step * static_cast<unsigned long>(uniform_int(rng, 1, size_grid));
}

std::vector<OneShotJob> random_one_shot_jobs(Rng& rng, const MachineTypeTable& types, std::size_t count) {
  std::vector<OneShotJob> out;
  for (std::size_t i = 0; i < count; ++i) {
    auto z = static_cast<TypeIndex>(uniform_int(rng, 1, types.size()));
    out.push_back({random_size_for_type(rng, types, z), z});
  }
  return out;
}

Instance generate(const GeneratorSpec& spec) {
  if (spec.mu < 1) throw ValidationError("mu must be at least 1, got " + to_string(spec.mu));
  if (spec.horizon < 0) throw ValidationError("horizon must be non-negative");
  Rng rng(spec.seed);
  MachineTypeTable types = random_type_table(rng, spec.table);

  constexpr std::uint64_t length_grid = 8;
  const unsigned long start_slots = static_cast<unsigned long>(floor_integer(spec.horizon * 4).get_ui());
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < spec.jobs; ++i) {
    Rational length;
    if (i == 0) length = 1;
    else if (i == 1) length = spec.mu;
    else length = 1 + (spec.mu - 1) * static_cast<unsigned long>(uniform_int(rng, 0, length_grid)) / length_grid;

    Rational size;
    if (spec.sizes == SizeDistribution::uniform) {
      size = types.max_capacity() * static_cast<unsigned long>(uniform_int(rng, 1, size_grid)) / size_grid;
    } else {
      auto z = static_cast<TypeIndex>(uniform_int(rng, 1, types.size()));
      for (unsigned k = 0; k < spec.type_skew; ++k) z = std::min<TypeIndex>(z, uniform_int(rng, 1, types.size()));
      size = random_size_for_type(rng, types, z, spec.sizes == SizeDistribution::bulky);
    }
    Rational start = Rational(static_cast<unsigned long>(uniform_int(rng, 0, start_slots))) / 4;
    jobs.push_back({"j" + std::to_string(i), size, start, start + length});
  }
  return Instance(std::move(types), std::move(jobs));
}

}  // namespace bshm
