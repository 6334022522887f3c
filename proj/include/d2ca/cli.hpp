#pragma once

// Command-line front end: `gen` writes datasets, `run` clusters a points file,
// `bench` sweeps sizes and node counts. Exit codes: 0 ok, 1 usage, 2 bad data
// or config, 3 internal failure.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "d2ca/io.hpp"
#include "d2ca/pipeline.hpp"
#include "d2ca/svg.hpp"

namespace d2ca::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kInternal = 3 };

/// "250000", "250k" or "1M".
inline std::size_t parse_count(const std::string& text) {
  std::string s = text;
  std::size_t mult = 1;
  if (!s.empty() && (s.back() == 'k' || s.back() == 'K')) mult = 1000, s.pop_back();
  else if (!s.empty() && (s.back() == 'm' || s.back() == 'M')) mult = 1000000, s.pop_back();
  return io::parse_int<std::size_t>(s, "count '" + text + "': ") * mult;
}

inline std::vector<std::size_t> parse_count_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto f : io::split(text, ',')) out.push_back(parse_count(std::string(f)));
  return out;
}

struct GenArgs {
  std::string preset;
  std::string spec_file;
  std::uint64_t seed = 1;
  std::string count;
  std::string points_path = "points.csv";
  std::string labels_path = "labels.csv";
  bool header = false;
};

inline int cmd_gen(const GenArgs& a, std::ostream& out) {
  LabeledDataset ds;
  if (!a.spec_file.empty()) {
    auto in = io::open_in(a.spec_file);
    ds = generate(io::read_spec(in, a.spec_file), a.seed);
  } else {
    ds = generate_preset(a.preset, a.seed);
  }
  if (!a.count.empty()) ds = scale_dataset(ds, parse_count(a.count), a.seed);
  {
    auto f = io::open_out(a.points_path);
    io::write_points(f, ds.points, a.header);
  }
  {
    auto f = io::open_out(a.labels_path);
    io::write_labels(f, ds.labels);
  }
  out << "wrote " << ds.size() << " points in " << ds.num_labels() << " clusters to " << a.points_path << " and "
      << a.labels_path << '\n';
  return kOk;
}

struct RunArgs {
  std::string points_path;
  std::string config_path;
  std::string truth_path;
  std::string out_dir = "d2ca_out";
  bool plot = false;
  bool header = false;
  std::optional<int> workers;
  std::optional<int> nodes;
  std::string k;
  std::optional<int> degree;
  std::optional<double> lambda;
  std::optional<std::uint64_t> seed;
};

inline RunConfig resolve_config(const RunArgs& a) {
  RunConfig c = a.config_path.empty() ? RunConfig{} : io::read_config_file(a.config_path);
  if (!a.k.empty()) {
    const auto ks = io::parse_k_list(a.k, "--k: ");
    if (ks.size() == 1) c.k_per_node.assign(static_cast<std::size_t>(a.nodes.value_or(c.nodes())), ks.front());
    else c.k_per_node = ks;
  } else if (a.nodes) {
    c.k_per_node.assign(static_cast<std::size_t>(std::max(*a.nodes, 0)), c.k_per_node.front());
  }
  if (a.nodes && *a.nodes != c.nodes())
    throw ConfigError("--nodes " + std::to_string(*a.nodes) + " does not match " + std::to_string(c.nodes()) + " k values");
  if (a.workers) c.workers = *a.workers;
  if (a.degree) c.degree = *a.degree;
  if (a.lambda) c.lambda = *a.lambda;
  if (a.seed) c.seed = *a.seed;
  c.validate();
  return c;
}

inline int cmd_run(const RunArgs& a, std::ostream& out) {
  const RunConfig config = resolve_config(a);
  LabeledDataset ds;
  {
    auto in = io::open_in(a.points_path);
    ds.points = io::read_points(in, a.header, a.points_path);
  }
  if (ds.points.empty()) throw ParseError(a.points_path + ": no points");
  if (!a.truth_path.empty()) {
    auto in = io::open_in(a.truth_path);
    ds.labels = io::read_labels(in, a.truth_path);
    if (ds.labels.size() != ds.points.size())
      throw LengthMismatch(a.truth_path + ": " + std::to_string(ds.labels.size()) + " labels for " +
                           std::to_string(ds.points.size()) + " points");
  }
  const auto result = run_d2ca(ds, config);

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(a.out_dir, ec);
  if (ec) throw ParseError("cannot create '" + a.out_dir + "': " + ec.message());
  const auto path = [&](const char* name) { return (fs::path(a.out_dir) / name).string(); };
  {
    auto f = io::open_out(path("report.txt"));
    io::write_report(f, result.report);
  }
  {
    auto f = io::open_out(path("contours.csv"));
    io::write_contours(f, result.global_contours);
  }
  {
    auto f = io::open_out(path("labels.csv"));
    io::write_labels(f, result.point_labels);
  }
  {
    auto f = io::open_out(path("ledger.csv"));
    io::write_ledger(f, result.report.ledger);
  }
  {
    auto f = io::open_out(path("timings.txt"));
    io::write_timings(f, result.report);
  }
  if (a.plot) {
    auto f = io::open_out(path("plot.svg"));
    svg::write_plot(f, ds.points, result.point_labels, result.global_contours);
  }
  io::write_report(out, result.report);
  return kOk;
}

struct BenchArgs {
  std::string preset = "dataset1";
  std::string sizes = "100k";
  std::string nodes = "5";
  int k = 10;
  int reps = 1;
  std::uint64_t seed = 1;
  int workers = 1;
  bool baseline = false;
  std::string out_path;
};

struct BenchRow {
  std::size_t size = 0;
  int nodes = 0;
  int k = 0;
  double local_max_seconds = 0;
  double aggregation_seconds = 0;
  double total_seconds = 0;
  double reduction_ratio = 0;
  std::size_t cluster_count = 0;
  std::optional<double> baseline_seconds;
};

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// One row per (size, nodes) pair, times are medians over `reps` runs. The
/// baseline is plain K-means over the whole dataset with the same k.
inline std::vector<BenchRow> run_bench(const BenchArgs& a) {
  if (a.reps < 1) throw ConfigError("--reps must be >= 1");
  std::vector<int> node_list;
  for (const auto f : io::split(a.nodes, ',')) node_list.push_back(io::parse_int<int>(f, "--nodes: "));
  const auto sizes = parse_count_list(a.sizes);
  const auto base = generate_preset(a.preset, a.seed);
  std::vector<BenchRow> rows;
  for (const auto size : sizes) {
    const auto ds = size == base.size() ? base : scale_dataset(base, size, a.seed);
    for (const int n : node_list) {
      auto config = RunConfig::uniform(n, a.k);
      config.seed = a.seed;
      config.workers = a.workers;
      config.label_points = false;
      config.validate();
      const auto fragments = partition(ds, n, config.partition, derive_seed(config.seed, 0xfa57));
      std::vector<double> local, agg, total, baseline;
      BenchRow row;
      row.size = ds.size();
      row.nodes = n;
      row.k = a.k;
      for (int r = 0; r < a.reps; ++r) {
        const auto res = run_d2ca(fragments, config);
        local.push_back(res.report.local_max_seconds);
        agg.push_back(res.report.aggregation_seconds);
        total.push_back(res.report.total_seconds);
        row.reduction_ratio = res.report.reduction_ratio;
        row.cluster_count = res.report.cluster_count;
        if (a.baseline) baseline.push_back(run_centralized_baseline(ds.points, a.k, a.seed).seconds);
      }
      row.local_max_seconds = median(local);
      row.aggregation_seconds = median(agg);
      row.total_seconds = median(total);
      if (a.baseline) row.baseline_seconds = median(baseline);
      rows.push_back(row);
    }
  }
  return rows;
}

inline void write_bench(std::ostream& out, const std::vector<BenchRow>& rows, bool baseline) {
  out << "size,nodes,k,local_max_s,aggregation_s,total_s,reduction_ratio,cluster_count" << (baseline ? ",baseline_s" : "")
      << '\n';
  for (const auto& r : rows) {
    out << r.size << ',' << r.nodes << ',' << r.k << ',' << io::format_fixed(r.local_max_seconds, 6) << ','
        << io::format_fixed(r.aggregation_seconds, 6) << ',' << io::format_fixed(r.total_seconds, 6) << ','
        << io::format_fixed(r.reduction_ratio, 6) << ',' << r.cluster_count;
    if (baseline) out << ',' << io::format_fixed(r.baseline_seconds.value_or(0.0), 6);
    out << '\n';
  }
}

inline int cmd_bench(const BenchArgs& a, std::ostream& out) {
  const auto rows = run_bench(a);
  if (!a.out_path.empty()) {
    auto f = io::open_out(a.out_path);
    write_bench(f, rows, a.baseline);
  }
  write_bench(out, rows, a.baseline);
  return kOk;
}

/// Entry point; `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Distributed dynamic clustering with contour aggregation", "d2ca"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a synthetic labeled dataset");
  auto* g_preset = g->add_option("--preset", gen.preset, "dataset1, dataset2 or dataset3");
  auto* g_spec = g->add_option("--spec", gen.spec_file, "Shape spec file");
  g_preset->excludes(g_spec);
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_option("--count", gen.count, "Rescale to this many points (e.g. 250k, 1M)");
  g->add_option("--points", gen.points_path, "Output points CSV")->capture_default_str();
  g->add_option("--labels", gen.labels_path, "Output labels CSV")->capture_default_str();
  g->add_flag("--header", gen.header, "Write an 'x,y' header line");

  RunArgs run;
  auto* r = app.add_subcommand("run", "Cluster a points file");
  r->add_option("points", run.points_path, "Points CSV (x,y per line)")->required();
  r->add_option("--config", run.config_path, "Config file (key = value lines)");
  r->add_option("--truth", run.truth_path, "Ground-truth labels, enables ARI");
  r->add_option("--out", run.out_dir, "Output directory")->capture_default_str();
  r->add_flag("--plot", run.plot, "Also write plot.svg");
  r->add_flag("--header", run.header, "Points file starts with a header line");
  r->add_option("--workers", run.workers, "Worker threads");
  r->add_option("--nodes", run.nodes, "Number of nodes");
  r->add_option("--k", run.k, "K for every node, or a comma-separated list");
  r->add_option("--degree", run.degree, "Aggregation tree degree");
  r->add_option("--lambda", run.lambda, "Normalized contour length parameter in [0,1]");
  r->add_option("--seed", run.seed, "Random seed");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Time runs over sizes and node counts");
  b->add_option("--preset", bench.preset)->capture_default_str();
  b->add_option("--sizes", bench.sizes, "Comma-separated sizes (e.g. 100k,200k)")->capture_default_str();
  b->add_option("--nodes", bench.nodes, "Comma-separated node counts")->capture_default_str();
  b->add_option("--k", bench.k, "K per node")->capture_default_str();
  b->add_option("--reps", bench.reps, "Repetitions; medians are reported")->capture_default_str();
  b->add_option("--seed", bench.seed)->capture_default_str();
  b->add_option("--workers", bench.workers)->capture_default_str();
  b->add_flag("--baseline", bench.baseline, "Also time centralized K-means");
  b->add_option("--out", bench.out_path, "Also write the CSV here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (g->parsed()) {
      if (gen.preset.empty() && gen.spec_file.empty()) {
        err << "gen: one of --preset or --spec is required\n";
        return kUsage;
      }
      return cmd_gen(gen, out);
    }
    if (r->parsed()) return cmd_run(run, out);
    return cmd_bench(bench, out);
  } catch (const PhaseError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const PartitionViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const InvalidTopology& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace d2ca::cli
