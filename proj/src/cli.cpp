#include "vcspace/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "vcspace/core_analysis.hpp"
#include "vcspace/experiments.hpp"
#include "vcspace/graph.hpp"
#include "vcspace/ke_growth.hpp"
#include "vcspace/meanfield.hpp"
#include "vcspace/oracle.hpp"
#include "vcspace/rsg.hpp"

namespace vcspace {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridOptions {
  std::optional<double> c;
  std::optional<double> from;
  std::optional<double> to;
  std::optional<double> step;

  std::vector<double> values() const {
    if (c) {
      if (from || to || step) throw UsageError("--c excludes --c-from/--c-to/--c-step");
      return {*c};
    }
    if (!from || !to || !step) throw UsageError("give --c or all of --c-from, --c-to, --c-step");
    if (!(*step > 0.0) || *to < *from) throw UsageError("bad mean-degree grid");
    std::vector<double> grid;
    for (std::size_t i = 0;; ++i) {
      const double v = std::strtod(format_number(*from + static_cast<double>(i) * *step).c_str(), nullptr);
      if (v > *to + 1e-9 * *step) break;
      grid.push_back(v);
    }
    return grid;
  }
};

void add_grid_options(CLI::App* app, GridOptions& grid) {
  app->add_option("--c", grid.c, "Mean degree of the whole graph");
  app->add_option("--c-from", grid.from, "First mean degree of a grid");
  app->add_option("--c-to", grid.to, "Last mean degree of a grid");
  app->add_option("--c-step", grid.step, "Grid spacing");
}

std::pair<double, double> parse_ratio(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("ratio must look like a:b");
  try {
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    const std::string sa = text.substr(0, colon);
    const std::string sb = text.substr(colon + 1);
    const double a = std::stod(sa, &used_a);
    const double b = std::stod(sb, &used_b);
    if (used_a != sa.size() || used_b != sb.size() || !(a > 0.0) || !(b > 0.0)) throw 0;
    return {a, b};
  } catch (...) {
    throw UsageError("bad ratio `" + text + "`");
  }
}

// Writes to the named file, or to `fallback` when the path is empty.
void with_output(const std::string& path, std::ostream& fallback,
                 const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open `" + path + "` for writing");
  body(file);
  if (!file) throw std::runtime_error("write to `" + path + "` failed");
}

std::string aggregate_path(const std::string& rows_path) {
  const std::string ext = ".csv";
  if (rows_path.size() > ext.size() && rows_path.ends_with(ext)) {
    return rows_path.substr(0, rows_path.size() - ext.size()) + "_aggregate.csv";
  }
  return rows_path + "_aggregate.csv";
}

// Bipartite RSG when the graph is bipartite, bipartite-core RSG otherwise.
ReducedSolutionGraph rsg_for(const GraphFile& file) {
  if (file.partition) return build_rsg_bipartite(file.graph, *file.partition);
  auto colored = check_bipartition(file.graph);
  if (auto* part = std::get_if<BipartitePartition>(&colored)) {
    return build_rsg_bipartite(file.graph, *part);
  }
  return build_rsg_bipartite_core(file.graph);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum vertex cover solution spaces of bipartite and bipartite-core graphs",
               "vcspace"};
  app.require_subcommand(1);
  std::string format = "csv";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv"}));

  std::function<void()> action;

  // gen
  auto* gen = app.add_subcommand("gen", "Emit a random bipartite graph");
  EnsembleParams gen_params{1000, 1000, 2.0, 1};
  std::string gen_out;
  gen->add_option("--n1", gen_params.n1, "Size of X1")->capture_default_str();
  gen->add_option("--n2", gen_params.n2, "Size of X2")->capture_default_str();
  gen->add_option("--c", gen_params.c, "Mean degree")->capture_default_str();
  gen->add_option("--seed", gen_params.seed, "RNG seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output file (default stdout)");
  gen->callback([&] {
    action = [&] {
      const auto [g, part] = generate_random_bipartite(gen_params);
      with_output(gen_out, out, [&](std::ostream& s) { write_graph(s, g, &part); });
    };
  });

  // rsg
  auto* rsg_cmd = app.add_subcommand("rsg", "Reduced solution graph of a graph file");
  std::string rsg_in;
  std::string rsg_out;
  rsg_cmd->add_option("graph", rsg_in, "Graph file")->required();
  rsg_cmd->add_option("--out", rsg_out, "Output file (default stdout)");
  rsg_cmd->callback([&] {
    action = [&] {
      const ReducedSolutionGraph r = rsg_for(read_graph_file(rsg_in));
      with_output(rsg_out, out, [&](std::ostream& s) { write_rsg(s, r); });
    };
  });

  // entropy
  auto* entropy = app.add_subcommand("entropy", "Solution counts and entropies of a graph file");
  std::string entropy_in;
  entropy->add_option("graph", entropy_in, "Graph file")->required();
  entropy->callback([&] {
    action = [&] {
      const ReducedSolutionGraph r = rsg_for(read_graph_file(entropy_in));
      const CountResult cr = count_solutions(r);
      out << "S_n=" << cr.solution_count->str() << " h_s=" << format_number(cr.entropy()) << '\n';
      out << "S_c=" << cr.core_count->str() << " h_c=" << format_number(cr.core_entropy()) << '\n';
    };
  });

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Ensemble experiment over a mean-degree grid");
  RunConfig config;
  GridOptions sweep_grid;
  std::optional<std::size_t> sweep_n;
  std::optional<std::string> sweep_ratio;
  std::string sweep_out;
  std::string sweep_agg_out;
  bool no_count = false;
  auto* n1_opt = sweep->add_option("--n1", config.n1, "Size of X1");
  auto* n2_opt = sweep->add_option("--n2", config.n2, "Size of X2");
  auto* n_opt = sweep->add_option("--n", sweep_n, "Total size, split by --ratio");
  sweep->add_option("--ratio", sweep_ratio, "Size ratio n1:n2 (with --n)");
  n_opt->excludes(n1_opt)->excludes(n2_opt);
  add_grid_options(sweep, sweep_grid);
  sweep->add_option("--instances", config.instances, "Instances per grid point")->capture_default_str();
  sweep->add_option("--seed", config.base_seed, "Base seed")->capture_default_str();
  sweep->add_option("--threads", config.threads, "Worker threads, 0 for all cores")->capture_default_str();
  sweep->add_option("--threshold", config.threshold, "Big-ratio threshold")->capture_default_str();
  sweep->add_flag("--no-count", no_count, "Skip solution counting");
  sweep->add_option("--out", sweep_out, "Per-instance CSV")->required();
  sweep->add_option("--aggregate-out", sweep_agg_out, "Aggregate CSV (default <out>_aggregate.csv)");
  sweep->callback([&] {
    action = [&] {
      if (sweep_n) {
        const auto [a, b] = parse_ratio(sweep_ratio.value_or("1:1"));
        config.n1 = static_cast<std::size_t>(std::llround(static_cast<double>(*sweep_n) * a / (a + b)));
        config.n2 = *sweep_n - config.n1;
      } else if (sweep_ratio) {
        throw UsageError("--ratio needs --n");
      }
      config.c_grid = sweep_grid.values();
      config.count = !no_count;
      try {
        config.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const EnsembleStats stats = run_sweep(config);
      with_output(sweep_out, out, [&](std::ostream& s) { write_rows_csv(s, config, stats.rows); });
      const std::string agg = sweep_agg_out.empty() ? aggregate_path(sweep_out) : sweep_agg_out;
      with_output(agg, out, [&](std::ostream& s) { write_aggregate_csv(s, config, stats.aggregates); });
    };
  });

  // theory
  auto* theory = app.add_subcommand("theory", "Ensemble theory over a mean-degree grid");
  std::string theory_ratio = "1:1";
  GridOptions theory_grid;
  std::string theory_out;
  theory->add_option("--ratio", theory_ratio, "Size ratio n1:n2")->capture_default_str();
  add_grid_options(theory, theory_grid);
  theory->add_option("--out", theory_out, "Output file (default stdout)");
  theory->callback([&] {
    action = [&] {
      const auto [a, b] = parse_ratio(theory_ratio);
      const auto rows = theory_curve(a, b, theory_grid.values());
      with_output(theory_out, out, [&](std::ostream& s) { write_theory_csv(s, rows); });
    };
  });

  // ke
  auto* ke = app.add_subcommand("ke", "Grow a König–Egerváry subgraph of a graph file");
  std::string ke_in;
  std::string ke_out;
  std::string ke_rsg_out;
  std::string ke_order = "lex";
  std::uint64_t ke_seed = 0;
  ke->add_option("graph", ke_in, "Graph file")->required();
  ke->add_option("--order", ke_order, "Edge order")->check(CLI::IsMember({"lex", "shuffle"}))->capture_default_str();
  ke->add_option("--seed", ke_seed, "Seed of the shuffled order")->capture_default_str();
  ke->add_option("--out", ke_out, "Report file (default stdout)");
  ke->add_option("--rsg-out", ke_rsg_out, "Final RSG file");
  ke->callback([&] {
    action = [&] {
      const GraphFile file = read_graph_file(ke_in);
      const KEGrowthState state = grow_all(
          file.graph, ke_order == "lex" ? EdgeOrder::Lexicographic : EdgeOrder::Shuffled, ke_seed);
      const KECertificate cert = ke_certificate(state);
      with_output(ke_out, out, [&](std::ostream& s) { write_ke_report(s, state, cert); });
      if (!ke_rsg_out.empty()) {
        with_output(ke_rsg_out, out, [&](std::ostream& s) { write_rsg(s, state.rsg); });
      }
      if (!cert.ok) throw std::runtime_error("grown subgraph failed the certificate check");
    };
  });

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Enumerate all minimum vertex covers of a small graph");
  std::string oracle_in;
  std::size_t oracle_limit = 1u << 16;
  oracle->add_option("graph", oracle_in, "Graph file")->required();
  oracle->add_option("--limit", oracle_limit, "Maximum number of covers")->capture_default_str();
  oracle->callback([&] {
    action = [&] {
      const GraphFile file = read_graph_file(oracle_in);
      const MinCoverSet covers = brute_force_min_covers(file.graph, oracle_limit);
      out << "min_cover_size=" << covers.size << " covers=" << covers.covers.size() << '\n';
      for (const Assignment& a : covers.covers) {
        out << "cover";
        for (std::size_t x = 0; x < a.covered.size(); ++x) {
          if (a.covered[x]) out << ' ' << x;
        }
        out << '\n';
      }
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return 2;
  }

  try {
    action();
  } catch (const UsageError& e) {
    err << "vcspace: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "vcspace: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace vcspace
