#pragma once

#include "bshm/graph.hpp"
#include "bshm/oneshot.hpp"
#include "bshm/oracle.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace bshm {

/// Costs and per-instant maxima for one instance. Oracle fields stay empty
/// when the instance is too large or the search gives up.
struct RatioRow {
  std::string instance;
  std::size_t jobs = 0;
  std::size_t types = 0;
  Rational mu;
  Rational offline_cost;
  Rational online_cost;
  std::optional<Rational> opt1_lower_bound;
  std::optional<Rational> opt2;
  Rational max_offline_over_cn;  ///< max_t rounded offline cost / CN cost
  std::optional<Rational> max_offline_over_opt1;
  std::optional<Rational> max_online_over_opt1;  ///< against OPT1(J(t) ∪ R(t))
};

struct RatioOptions {
  bool with_opt1 = true;
  std::size_t oracle_max_jobs = 6;
  std::size_t oracle_max_types = 3;
  SolverOptions solver{200'000};
  OracleBudget oracle;
};

RatioRow ratio_row(const std::string& name, const Instance& instance, const RatioOptions& options = {});

/// Fixed columns: instance, jobs, types, mu, offline, online, opt1_lb, opt2,
/// offline_over_opt2, online_over_opt2, offline_over_opt1_lb,
/// online_over_opt1_lb, max_offline_over_cn, max_offline_over_opt1,
/// max_online_over_opt1. Rows sorted by instance name; missing values empty.
std::string ratio_csv(std::vector<RatioRow> rows);
/// Maxima of each ratio column plus row count; missing values are null.
nlohmann::json ratio_summary(const std::vector<RatioRow>& rows);
/// A standalone matplotlib script plotting the ratio columns of `csv_path` against mu.
std::string plot_script(const std::string& csv_path);

}  // namespace bshm
