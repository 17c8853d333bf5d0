#pragma once

#include "bshm/model.hpp"
#include "bshm/oneshot.hpp"

#include <cstdint>
#include <random>

namespace bshm {

struct TypeTableSpec {
  std::size_t count = 4;
  /// g_{z+1}/g_z is an integer drawn from this range.
  unsigned growth_min = 2;
  unsigned growth_max = 40;
  /// r_{z+1}/r_z is 8^k with k drawn from this range (k >= 1).
  unsigned rate_step_min = 1;
  unsigned rate_step_max = 2;
};

enum class SizeDistribution {
  uniform,    ///< uniform on a grid over (0, g_max]
  clustered,  ///< pick a type uniformly, then a size inside (g_{z-1}, g_z]
  bulky,      ///< like clustered, but above g_z/2 so no two such jobs share a machine
};

struct GeneratorSpec {
  std::uint64_t seed = 1;
  std::size_t jobs = 8;
  Rational mu = 2;  ///< max/min length; the shortest job has length 1
  SizeDistribution sizes = SizeDistribution::clustered;
  /// Exact types are the minimum of 1 + type_skew uniform draws, so larger
  /// values crowd jobs into the low types (clustered and bulky sizes only).
  unsigned type_skew = 0;
  Rational horizon = 10;  ///< starts are drawn from [0, horizon] on a 1/4 grid
  TypeTableSpec table;
};

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi] that does not depend on the standard
/// library's distribution implementation.
std::uint64_t uniform_int(Rng& rng, std::uint64_t lo, std::uint64_t hi);

/// Strictly increasing capacities starting at 1, power-of-eight rates.
MachineTypeTable random_type_table(Rng& rng, const TypeTableSpec& spec);

/// A size whose exact type is `z`, on a grid inside (g_{z-1}, g_z], or
/// inside (max(g_{z-1}, g_z/2), g_z] when `bulky`.
Rational random_size_for_type(Rng& rng, const MachineTypeTable& types, TypeIndex z, bool bulky = false);

/// One-shot jobs with exact types drawn uniformly from 1..|M|.
std::vector<OneShotJob> random_one_shot_jobs(Rng& rng, const MachineTypeTable& types, std::size_t count);

/// Throws ValidationError on an inconsistent spec (no types, mu < 1, negative horizon).
Instance generate(const GeneratorSpec& spec);

}  // namespace bshm
