#include "bshm/report.hpp"

#include "bshm/instance_io.hpp"
#include "bshm/offline.hpp"
#include "bshm/online.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace bshm {

namespace {

std::optional<Rational> ratio(const Rational& num, const std::optional<Rational>& den) {
  if (!den || *den == 0) return std::nullopt;
  return num / *den;
}

std::string decimal(const std::optional<Rational>& value) {
  if (!value) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", to_double(*value));
  return buf;
}

void keep_max(std::optional<Rational>& acc, const Rational& value) {
  if (!acc || value > *acc) acc = value;
}

}  // namespace

RatioRow ratio_row(const std::string& name, const Instance& instance, const RatioOptions& options) {
  RatioRow row;
  row.instance = name;
  row.jobs = instance.jobs().size();
  row.types = instance.types().size();
  row.mu = instance.jobs().empty() ? Rational(1) : mu(instance.jobs());
  auto forest = build_forest(instance.types());

  OfflineOptions offline_options;
  offline_options.with_opt1 = options.with_opt1;
  offline_options.solver = options.solver;
  auto offline = alg_offline(instance, forest, offline_options);
  row.offline_cost = offline.cost;
  row.max_offline_over_cn = 0;
  bool opt1_complete = options.with_opt1;
  for (const auto& a : offline.audit) {
    if (a.cn_cost > 0) row.max_offline_over_cn = std::max(row.max_offline_over_cn, Rational(a.rounded_cost / a.cn_cost));
    if (a.opt1) {
      if (*a.opt1 > 0) keep_max(row.max_offline_over_opt1, a.rounded_cost / *a.opt1);
    } else {
      opt1_complete = false;
    }
  }

  auto online = simulate(instance, forest);
  row.online_cost = online.cost;
  if (options.with_opt1) {
    OnlineCheckOptions check_options;
    check_options.solver = options.solver;
    OnlineCheckStats stats;
    check_online(instance, forest, online, check_options, &stats);
    if (stats.opt1_checked > 0) row.max_online_over_opt1 = stats.max_opt1_ratio;
  }

  if (opt1_complete) {
    Rational lb = 0;
    for (const auto& a : offline.audit) lb += a.segment.length() * *a.opt1;
    row.opt1_lower_bound = lb;
  }
  if (row.jobs <= options.oracle_max_jobs && row.types <= options.oracle_max_types) {
    try {
      row.opt2 = opt2(instance, options.oracle).cost;
    } catch (const SearchSpaceExceeded&) {
    }
  }
  return row;
}

std::string ratio_csv(std::vector<RatioRow> rows) {
  std::sort(rows.begin(), rows.end(), [](const RatioRow& a, const RatioRow& b) { return a.instance < b.instance; });
  std::ostringstream os;
  os << "instance,jobs,types,mu,offline,online,opt1_lb,opt2,offline_over_opt2,online_over_opt2,"
        "offline_over_opt1_lb,online_over_opt1_lb,max_offline_over_cn,max_offline_over_opt1,max_online_over_opt1\n";
  auto exact = [](const std::optional<Rational>& v) { return v ? to_string(*v) : std::string(); };
  for (const auto& r : rows) {
    os << r.instance << ',' << r.jobs << ',' << r.types << ',' << to_string(r.mu) << ',' << to_string(r.offline_cost)
       << ',' << to_string(r.online_cost) << ',' << exact(r.opt1_lower_bound) << ',' << exact(r.opt2) << ','
       << decimal(ratio(r.offline_cost, r.opt2)) << ',' << decimal(ratio(r.online_cost, r.opt2)) << ','
       << decimal(ratio(r.offline_cost, r.opt1_lower_bound)) << ','
       << decimal(ratio(r.online_cost, r.opt1_lower_bound)) << ',' << decimal(r.max_offline_over_cn) << ','
       << decimal(r.max_offline_over_opt1) << ',' << decimal(r.max_online_over_opt1) << '\n';
  }
  return os.str();
}

nlohmann::json ratio_summary(const std::vector<RatioRow>& rows) {
  std::optional<Rational> off_opt2, on_opt2, off_lb, on_lb, off_cn, off_opt1, on_opt1;
  for (const auto& r : rows) {
    if (auto v = ratio(r.offline_cost, r.opt2)) keep_max(off_opt2, *v);
    if (auto v = ratio(r.online_cost, r.opt2)) keep_max(on_opt2, *v);
    if (auto v = ratio(r.offline_cost, r.opt1_lower_bound)) keep_max(off_lb, *v);
    if (auto v = ratio(r.online_cost, r.opt1_lower_bound)) keep_max(on_lb, *v);
    keep_max(off_cn, r.max_offline_over_cn);
    if (r.max_offline_over_opt1) keep_max(off_opt1, *r.max_offline_over_opt1);
    if (r.max_online_over_opt1) keep_max(on_opt1, *r.max_online_over_opt1);
  }
  auto field = [](const std::optional<Rational>& v) -> nlohmann::json {
    if (!v) return nullptr;
    return rational_to_json(*v);
  };
  return {{"instances", rows.size()},
          {"max_offline_over_opt2", field(off_opt2)},
          {"max_online_over_opt2", field(on_opt2)},
          {"max_offline_over_opt1_lb", field(off_lb)},
          {"max_online_over_opt1_lb", field(on_lb)},
          {"max_offline_over_cn", field(rows.empty() ? std::nullopt : off_cn)},
          {"max_offline_over_opt1", field(off_opt1)},
          {"max_online_over_opt1", field(on_opt1)}};
}

std::string plot_script(const std::string& csv_path) {
  std::ostringstream os;
  os << "import csv\n"
        "import matplotlib.pyplot as plt\n\n"
        "rows = list(csv.DictReader(open(" << nlohmann::json(csv_path).dump() << ")))\n"
        "def column(name):\n"
        "    pts = [(float(r['mu'].split('/')[0]) / float(r['mu'].split('/')[1]) if '/' in r['mu'] else float(r['mu']),\n"
        "            float(r[name])) for r in rows if r[name]]\n"
        "    return [p[0] for p in pts], [p[1] for p in pts]\n\n"
        "fig, ax = plt.subplots()\n"
        "for name in ['offline_over_opt2', 'online_over_opt2', 'offline_over_opt1_lb', 'online_over_opt1_lb']:\n"
        "    xs, ys = column(name)\n"
        "    if xs:\n"
        "        ax.scatter(xs, ys, label=name, s=12)\n"
        "ax.set_xlabel('mu')\n"
        "ax.set_ylabel('cost ratio')\n"
        "ax.legend()\n"
        "fig.savefig('ratios.png', dpi=150)\n";
  return os.str();
}

}  // namespace bshm
