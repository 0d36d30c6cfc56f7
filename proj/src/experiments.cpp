#include "vcspace/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <istream>
#include <limits>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "vcspace/core_analysis.hpp"
#include "vcspace/matching.hpp"
#include "vcspace/rsg.hpp"

namespace vcspace {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_number(v).c_str(), nullptr);
}

double fraction(std::size_t part, std::size_t whole) {
  return whole == 0 ? 0.0 : round12(static_cast<double>(part) / static_cast<double>(whole));
}

double median(std::vector<double> values) {
  std::erase_if(values, [](double v) { return std::isnan(v); });
  if (values.empty()) return kNaN;
  std::sort(values.begin(), values.end());
  const std::size_t k = values.size() / 2;
  return values.size() % 2 == 1 ? values[k] : 0.5 * (values[k - 1] + values[k]);
}

std::string ratio_label(double a, double b) { return format_number(a) + ":" + format_number(b); }

std::pair<double, double> reduced_ratio(std::size_t n1, std::size_t n2) {
  const std::size_t g = std::gcd(n1, n2);
  return {static_cast<double>(n1 / g), static_cast<double>(n2 / g)};
}

std::string timestamp_line() {
  const std::time_t now = std::time(nullptr);
  char buf[64];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return std::string("# generated ") + buf + "\n";
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void RunConfig::validate() const {
  if (n1 == 0 || n2 == 0) throw std::invalid_argument("n1 and n2 must be positive");
  if (c_grid.empty()) throw std::invalid_argument("empty mean-degree grid");
  for (double c : c_grid) {
    if (!(c >= 0.0)) throw std::invalid_argument("mean degree must be non-negative");
    EnsembleParams p{n1, n2, c, 0};
    if (p.edge_probability() > 1.0) {
      throw std::invalid_argument("mean degree " + format_number(c) + " too large for the sizes");
    }
  }
  if (instances == 0) throw std::invalid_argument("instances must be positive");
  if (!(threshold > 0.0 && threshold < 1.0)) throw std::invalid_argument("threshold must be in (0,1)");
}

std::string RunConfig::describe() const {
  std::ostringstream s;
  s << "n1=" << n1 << " n2=" << n2 << " c=";
  for (std::size_t i = 0; i < c_grid.size(); ++i) s << (i ? ";" : "") << format_number(c_grid[i]);
  s << " instances=" << instances << " seed=" << base_seed
    << " threshold=" << format_number(threshold) << " count=" << (count ? 1 : 0);
  return s.str();
}

InstanceRow analyze_instance(const EnsembleParams& params, bool count, double threshold) {
  const auto [g, part] = generate_random_bipartite(params);
  const std::size_t n = g.node_count();
  const ReducedSolutionGraph rsg = build_rsg_bipartite(g, part);
  const StateRatios ratios = state_ratios(rsg);

  InstanceRow row;
  row.seed = params.seed;
  row.n1 = params.n1;
  row.n2 = params.n2;
  row.c = params.c;
  row.m = g.edge_count();
  row.x = fraction(rsg.min_cover_size(), n);
  row.q_plus = round12(ratios.q_plus);
  row.q_minus = round12(ratios.q_minus);
  row.q_zero = round12(ratios.q_zero);
  row.giant = round12(giant_component_fraction(g));
  row.leaf_core = fraction(leaf_removal(g).core_nodes.size(), n);

  const UnfrozenCore core = unfrozen_core(rsg);
  row.unfrozen_core = fraction(core.nodes.size(), n);
  if (count) {
    CountResult cr = count_core_solutions(rsg, core, n);
    cr.solution_count = count_consistent(cycle_simplification(rsg).rsg);
    row.solution_count = cr.solution_count->str();
    row.core_count = cr.core_count->str();
    row.h_s = round12(cr.entropy());
    row.h_c = round12(cr.core_entropy());
  } else {
    row.h_s = kNaN;
    row.h_c = kNaN;
  }
  row.big_ratio = row.q_plus > threshold;
  return row;
}

Summary summarize(const std::vector<double>& values) {
  Summary s;
  std::size_t k = 0;
  double sum = 0.0;
  for (double v : values) {
    if (std::isnan(v)) continue;
    sum += v;
    ++k;
  }
  if (k == 0) return {kNaN, kNaN};
  s.mean = sum / static_cast<double>(k);
  if (k < 2) return s;
  double ss = 0.0;
  for (double v : values) {
    if (!std::isnan(v)) ss += (v - s.mean) * (v - s.mean);
  }
  s.stderr_ = std::sqrt(ss / static_cast<double>(k - 1) / static_cast<double>(k));
  return s;
}

double classify_big_ratio(const std::vector<InstanceRow>& rows, double threshold) {
  if (rows.empty()) throw std::invalid_argument("classify_big_ratio: no rows");
  const auto big = std::count_if(rows.begin(), rows.end(),
                                 [&](const InstanceRow& r) { return r.q_plus > threshold; });
  return static_cast<double>(big) / static_cast<double>(rows.size());
}

std::vector<AggregateRow> aggregate_rows(const std::vector<InstanceRow>& rows, double threshold) {
  std::vector<AggregateRow> out;
  std::vector<std::vector<InstanceRow>> groups;
  for (const InstanceRow& r : rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const AggregateRow& a) {
      return a.n1 == r.n1 && a.n2 == r.n2 && a.c == r.c;
    });
    if (it == out.end()) {
      AggregateRow a;
      a.n1 = r.n1;
      a.n2 = r.n2;
      a.c = r.c;
      out.push_back(a);
      groups.emplace_back();
      it = out.end() - 1;
    }
    groups[static_cast<std::size_t>(it - out.begin())].push_back(r);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& g = groups[i];
    AggregateRow& a = out[i];
    a.instances = g.size();
    auto column = [&](auto field) {
      std::vector<double> v;
      v.reserve(g.size());
      for (const InstanceRow& r : g) v.push_back(r.*field);
      return v;
    };
    a.x = summarize(column(&InstanceRow::x));
    a.q_plus = summarize(column(&InstanceRow::q_plus));
    a.q_minus = summarize(column(&InstanceRow::q_minus));
    a.q_zero = summarize(column(&InstanceRow::q_zero));
    a.giant = summarize(column(&InstanceRow::giant));
    a.leaf_core = summarize(column(&InstanceRow::leaf_core));
    a.unfrozen_core = summarize(column(&InstanceRow::unfrozen_core));
    a.h_s = summarize(column(&InstanceRow::h_s));
    a.h_c = summarize(column(&InstanceRow::h_c));
    a.median_h_c = median(column(&InstanceRow::h_c));
    a.rho = classify_big_ratio(g, threshold);
    const auto [ra, rb] = reduced_ratio(a.n1, a.n2);
    const auto d = side_degrees(ra, rb, a.c);
    a.theory = solve_fixed_point(d.c1, d.c2);
  }
  return out;
}

std::vector<InstanceRow> EnsembleStats::rows_at(double c) const {
  std::vector<InstanceRow> out;
  std::copy_if(rows.begin(), rows.end(), std::back_inserter(out),
               [&](const InstanceRow& r) { return r.c == c; });
  return out;
}

const AggregateRow& EnsembleStats::aggregate_at(double c) const {
  for (const auto& a : aggregates) {
    if (a.c == c) return a;
  }
  throw std::out_of_range("no aggregate for c=" + format_number(c));
}

EnsembleStats run_sweep(const RunConfig& config) {
  config.validate();
  const std::size_t total = config.c_grid.size() * config.instances;
  std::vector<InstanceRow> rows(total);

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::size_t error_index = total;

  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= total || failed.load()) return;
      EnsembleParams p{config.n1, config.n2, config.c_grid[k / config.instances],
                       config.base_seed + k};
      try {
        rows[k] = analyze_instance(p, config.count, config.threshold);
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        if (k < error_index) {
          error_index = k;
          error = std::make_exception_ptr(SweepError(p.seed, e.what()));
        }
        failed = true;
      }
    }
  };

  unsigned threads = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(total)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  EnsembleStats stats;
  stats.rows = std::move(rows);
  stats.aggregates = aggregate_rows(stats.rows, config.threshold);
  return stats;
}

void write_rows_csv(std::ostream& out, const RunConfig& config, const std::vector<InstanceRow>& rows) {
  out << "# config " << config.describe() << '\n' << timestamp_line();
  out << "seed,n1,n2,c,m,x,q_plus,q_minus,q_zero,giant,leaf_core,unfrozen_core,S_n,S_c,h_s,h_c,"
         "big_ratio\n";
  for (const InstanceRow& r : rows) {
    out << r.seed << ',' << r.n1 << ',' << r.n2 << ',' << format_number(r.c) << ',' << r.m << ','
        << format_number(r.x) << ',' << format_number(r.q_plus) << ',' << format_number(r.q_minus)
        << ',' << format_number(r.q_zero) << ',' << format_number(r.giant) << ','
        << format_number(r.leaf_core) << ',' << format_number(r.unfrozen_core) << ','
        << r.solution_count << ',' << r.core_count << ',' << format_number(r.h_s) << ','
        << format_number(r.h_c) << ',' << (r.big_ratio ? 1 : 0) << '\n';
  }
}

void write_aggregate_csv(std::ostream& out, const RunConfig& config,
                         const std::vector<AggregateRow>& aggregates) {
  out << "# config " << config.describe() << '\n' << timestamp_line();
  out << "ratio,c,instances,mean_x,se_x,mean_q_plus,se_q_plus,mean_q_minus,se_q_minus,"
         "mean_q_zero,se_q_zero,mean_giant,se_giant,mean_leaf_core,se_leaf_core,"
         "mean_unfrozen_core,se_unfrozen_core,mean_h_s,se_h_s,mean_h_c,se_h_c,median_h_c,rho,"
         "theory_Q,theory_x,theory_q_plus,theory_q_zero\n";
  for (const AggregateRow& a : aggregates) {
    const auto [ra, rb] = reduced_ratio(a.n1, a.n2);
    out << ratio_label(ra, rb) << ','
        << format_number(a.c) << ',' << a.instances;
    for (const Summary* s : {&a.x, &a.q_plus, &a.q_minus, &a.q_zero, &a.giant, &a.leaf_core,
                             &a.unfrozen_core, &a.h_s, &a.h_c}) {
      out << ',' << format_number(s->mean) << ',' << format_number(s->stderr_);
    }
    out << ',' << format_number(a.median_h_c) << ',' << format_number(a.rho) << ','
        << format_number(a.theory.Q) << ',' << format_number(a.theory.x) << ','
        << format_number(a.theory.q_plus) << ',' << format_number(a.theory.q_zero) << '\n';
  }
}

std::vector<InstanceRow> read_rows_csv(std::istream& in) {
  std::vector<InstanceRow> rows;
  bool header_seen = false;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    const auto f = split_csv(line);
    if (f.size() != 17) throw std::runtime_error("rows csv: expected 17 fields in `" + line + "`");
    auto num = [](const std::string& s) { return s == "nan" ? kNaN : std::stod(s); };
    InstanceRow r;
    r.seed = std::stoull(f[0]);
    r.n1 = std::stoull(f[1]);
    r.n2 = std::stoull(f[2]);
    r.c = num(f[3]);
    r.m = std::stoull(f[4]);
    r.x = num(f[5]);
    r.q_plus = num(f[6]);
    r.q_minus = num(f[7]);
    r.q_zero = num(f[8]);
    r.giant = num(f[9]);
    r.leaf_core = num(f[10]);
    r.unfrozen_core = num(f[11]);
    r.solution_count = f[12];
    r.core_count = f[13];
    r.h_s = num(f[14]);
    r.h_c = num(f[15]);
    r.big_ratio = f[16] == "1";
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_theory_csv(std::ostream& out, const std::vector<TheoryRow>& rows) {
  out << "ratio,c,c1,c2,Q,x,q_plus,q_zero,residual\n";
  for (const TheoryRow& r : rows) {
    const auto& s = r.solution;
    out << ratio_label(r.ratio_a, r.ratio_b) << ',' << format_number(r.c) << ','
        << format_number(s.c1) << ',' << format_number(s.c2) << ',' << format_number(s.Q) << ','
        << format_number(s.x) << ',' << format_number(s.q_plus) << ',' << format_number(s.q_zero)
        << ',' << format_number(s.residual) << '\n';
  }
}

}  // namespace vcspace
