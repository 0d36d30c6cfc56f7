#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vcspace/graph.hpp"
#include "vcspace/meanfield.hpp"

namespace vcspace {

inline constexpr double kBigRatioThreshold = 0.25;

struct RunConfig {
  std::size_t n1 = 1000;
  std::size_t n2 = 1000;
  std::vector<double> c_grid;
  std::size_t instances = 100;
  std::uint64_t base_seed = 1;
  double threshold = kBigRatioThreshold;
  bool count = true;        ///< compute S_n, S_c and the entropies
  unsigned threads = 1;     ///< 0 means hardware concurrency

  /// Throws std::invalid_argument describing the first problem found.
  void validate() const;
  /// Single-line `key=value` summary written into every CSV header.
  std::string describe() const;
};

/// Observables of one generated instance.
struct InstanceRow {
  std::uint64_t seed = 0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double c = 0.0;
  std::size_t m = 0;
  double x = 0.0;
  double q_plus = 0.0;
  double q_minus = 0.0;
  double q_zero = 0.0;
  double giant = 0.0;
  double leaf_core = 0.0;      ///< leaf-removal core fraction of the graph
  double unfrozen_core = 0.0;  ///< unfrozen core fraction
  std::string solution_count;  ///< decimal, empty when not counted
  std::string core_count;
  double h_s = 0.0;            ///< NaN when not counted
  double h_c = 0.0;
  bool big_ratio = false;
};

/// Runs the full pipeline on one instance. Fractional values are rounded to
/// 12 significant digits so that they survive a CSV round trip unchanged.
InstanceRow analyze_instance(const EnsembleParams& params, bool count, double threshold);

struct Summary {
  double mean = 0.0;
  double stderr_ = 0.0;
};
Summary summarize(const std::vector<double>& values);

/// Aggregates for one grid point, joined with the ensemble theory.
struct AggregateRow {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double c = 0.0;
  std::size_t instances = 0;
  Summary x, q_plus, q_minus, q_zero, giant, leaf_core, unfrozen_core, h_s, h_c;
  double median_h_c = 0.0;
  double rho = 0.0;
  MeanFieldSolution theory;
};

struct EnsembleStats {
  std::vector<InstanceRow> rows;  ///< grid-major, then instance index
  std::vector<AggregateRow> aggregates;

  /// Rows belonging to grid point `c`.
  std::vector<InstanceRow> rows_at(double c) const;
  const AggregateRow& aggregate_at(double c) const;
};

/// Fraction of rows whose positive-backbone fraction exceeds `threshold`.
/// Throws std::invalid_argument on empty input.
double classify_big_ratio(const std::vector<InstanceRow>& rows,
                          double threshold = kBigRatioThreshold);

/// Aggregates rows sharing (n1, n2, c), in order of first appearance.
std::vector<AggregateRow> aggregate_rows(const std::vector<InstanceRow>& rows, double threshold);

class SweepError : public std::runtime_error {
 public:
  SweepError(std::uint64_t seed, const std::string& what)
      : std::runtime_error("instance seed " + std::to_string(seed) + ": " + what), seed_(seed) {}
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

/// Instance k of the sweep (grid-major) uses seed base_seed + k. Instances
/// may run on several threads; rows are stored by index, so the output does
/// not depend on scheduling. Throws SweepError naming the failing seed.
EnsembleStats run_sweep(const RunConfig& config);

/// Formats with 12 significant digits; NaN prints as `nan`.
std::string format_number(double v);

void write_rows_csv(std::ostream& out, const RunConfig& config, const std::vector<InstanceRow>& rows);
void write_aggregate_csv(std::ostream& out, const RunConfig& config,
                         const std::vector<AggregateRow>& aggregates);
std::vector<InstanceRow> read_rows_csv(std::istream& in);

/// Columns ratio,c,c1,c2,Q,x,q_plus,q_zero,residual.
void write_theory_csv(std::ostream& out, const std::vector<TheoryRow>& rows);

}  // namespace vcspace
