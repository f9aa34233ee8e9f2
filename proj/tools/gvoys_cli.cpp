#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gvoys/analysis.hpp"
#include "gvoys/coeffs.hpp"
#include "gvoys/engine.hpp"
#include "gvoys/graph.hpp"
#include "gvoys/oracles.hpp"
#include "gvoys/random.hpp"
#include "gvoys/report.hpp"
#include "gvoys/stats.hpp"

using namespace gvoys;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

constexpr const char* kVersion = "0.1.0";

// Every resolved setting of a run; serialized into the manifest so that
// `replay` can rebuild the exact invocation.
struct Options {
  std::string data;
  std::string out;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  double budget_seconds = 0.0;  // 0: no limit

  // gen
  std::size_t graphs = 10;
  std::size_t vertices = 16;
  double edge_p = 0.1;
  std::uint32_t labels = 1;
  bool connected = false;

  // walks and kernel
  std::uint32_t walks = 100;
  double p_halt = 0.2;
  std::string anchors = "all";
  std::uint32_t dg = 1;
  std::string scheme = "geometric:auto";
  int truncation = kDefaultTruncation;
  bool unlabelled = false;
  std::string measure = "uniform";
  std::string storage = "dense";
  std::uint64_t max_product_vertices = std::uint64_t{1} << 22;
  std::uint64_t max_product_edges = std::uint64_t{1} << 26;

  // studies
  std::size_t trials = 100;
  std::vector<std::size_t> pair{0, 1};
  std::vector<std::uint32_t> walk_counts{10, 100};
  std::vector<std::string> distributions{"rademacher", "gaussian"};
  std::vector<double> epsilons{0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.5, 1.0};

  // bench
  std::vector<std::size_t> sizes{256, 512, 1024, 2048, 4096, 8192};
  std::vector<std::string> methods{"gvoys", "exact-series", "cg", "fixed-point", "naive-grf"};
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(Options, data, out, seed, threads, budget_seconds, graphs, vertices,
                                                edge_p, labels, connected, walks, p_halt, anchors, dg, scheme,
                                                truncation, unlabelled, measure, storage, max_product_vertices,
                                                max_product_edges, trials, pair, walk_counts, distributions, epsilons,
                                                sizes, methods)

// Bad input from the user; exit status 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Run {
  std::string command;
  Options opts;
  std::vector<std::string> outputs;
  json timings = json::object();
  std::uint64_t footprint_bytes = 0;
  json extra = json::object();
  Clock::time_point phase_start = Clock::now();

  void phase(const std::string& name) {
    const auto now = Clock::now();
    timings[name] = std::chrono::duration<double>(now - phase_start).count();
    phase_start = now;
  }
};

std::optional<std::size_t> parse_anchors(const std::string& text) {
  if (text == "all") return std::nullopt;
  std::size_t pos = 0;
  long long value = 0;
  try {
    value = std::stoll(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || value < 1) throw UsageError("--anchors must be a positive integer or 'all'");
  return static_cast<std::size_t>(value);
}

Deadline deadline_for(const Options& o) {
  if (o.budget_seconds <= 0.0) return std::nullopt;
  return Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(o.budget_seconds));
}

std::vector<Graph> load_graphs(const Options& o) {
  if (o.data.empty()) throw UsageError("--data is required");
  auto graphs = load_dataset(o.data);
  if (graphs.empty()) throw UsageError("dataset " + o.data + " holds no graphs");
  if (o.unlabelled)
    for (auto& g : graphs) g = g.with_labels(std::vector<Label>(g.size(), 1), 1);
  return graphs;
}

MeasureVector measure_for(const Graph& g, const Options& o) {
  if (o.measure == "uniform") return factorized_measure(g, MeasureKind::uniform);
  if (o.measure == "ones") return factorized_measure(g, MeasureKind::ones);
  throw UsageError("--measure must be uniform or ones");
}

std::vector<MeasureVector> measures_for(std::span<const Graph> graphs, const Options& o) {
  std::vector<MeasureVector> out;
  for (const auto& g : graphs) out.push_back(measure_for(g, o));
  return out;
}

// "geometric:auto" and "exponential:auto" pick lambda = 1 / d_max^2 over the graphs.
CoefficientScheme resolve_scheme(const Options& o, std::span<const Graph> graphs) {
  std::string spec = o.scheme;
  if (spec.ends_with(":auto")) {
    std::size_t dmax = 1;
    for (const auto& g : graphs) dmax = std::max(dmax, g.max_degree());
    spec = spec.substr(0, spec.size() - 4) + format_double(1.0 / static_cast<double>(dmax * dmax));
  }
  return parse_scheme(spec, o.truncation);
}

WalkConfig walk_config(const Options& o) {
  WalkConfig cfg;
  cfg.walks = o.walks;
  cfg.p_halt = o.p_halt;
  cfg.anchors = parse_anchors(o.anchors);
  cfg.d_g = o.dg;
  if (o.storage == "sparse") cfg.storage = Storage::sparse;
  else if (o.storage != "dense") throw UsageError("--storage must be dense or sparse");
  cfg.validate();
  return cfg;
}

ProductLimits limits_for(const Options& o) { return {o.max_product_vertices, o.max_product_edges}; }

// Largest per-task deposit state: two r-vectors plus the walker array.
std::uint64_t walk_footprint(std::span<const Graph> graphs, const WalkConfig& cfg, unsigned threads) {
  std::uint64_t worst = 0;
  for (const auto& g : graphs) {
    const std::uint64_t n = g.size(), r = cfg.anchors_for(g.size());
    const std::uint64_t bytes = cfg.storage == Storage::dense ? n * r * sizeof(double) : 0;
    worst = std::max<std::uint64_t>(worst, bytes + 2 * r * sizeof(double) + n * 32 + n * sizeof(std::int64_t));
  }
  return worst * std::max(1u, threads);
}

std::pair<const Graph*, const Graph*> pick_pair(const std::vector<Graph>& graphs, const Options& o) {
  if (o.pair.size() != 2) throw UsageError("--pair takes two graph indices");
  for (auto i : o.pair)
    if (i >= graphs.size()) throw UsageError("--pair index " + std::to_string(i) + " is out of range");
  return {&graphs[o.pair[0]], &graphs[o.pair[1]]};
}

std::string render_table(const Table& t) {
  std::ostringstream out;
  t.write(out);
  return out.str();
}

void advise_convergence(std::span<const Graph> graphs, const CoefficientScheme& scheme, double p_halt) {
  const auto widest = std::max_element(graphs.begin(), graphs.end(),
                                       [](const Graph& a, const Graph& b) { return a.max_degree() < b.max_degree(); });
  try {
    convergence_constant(*widest, scheme, p_halt);
  } catch (const DivergenceError& e) {
    std::cerr << "warning: " << e.what() << "; estimates may have very large variance\n";
  }
}

void cmd_gen(Run& run) {
  const auto& o = run.opts;
  if (o.out.empty()) throw UsageError("--out is required");
  std::vector<Graph> graphs;
  for (std::size_t i = 0; i < o.graphs; ++i) {
    auto g = erdos_renyi(o.vertices, o.edge_p, key_hash({o.seed, i}), o.connected);
    if (o.labels > 1) g = assign_random_labels(g, o.labels, key_hash({o.seed, i, 0x6c61626c}));
    graphs.push_back(std::move(g));
  }
  run.phase("generate");
  save_dataset(o.out, graphs);
  run.outputs.push_back(o.out);
  run.phase("write");
}

void cmd_estimate(Run& run) {
  const auto& o = run.opts;
  const auto graphs = load_graphs(o);
  const auto measures = measures_for(graphs, o);
  const auto scheme = resolve_scheme(o, graphs);
  const auto cfg = walk_config(o);
  advise_convergence(graphs, scheme, cfg.p_halt);
  run.extra["scheme"] = scheme.describe();
  run.footprint_bytes = walk_footprint(graphs, cfg, o.threads);
  run.phase("load");

  const auto embeddings = embed_dataset(graphs, measures, scheme, cfg, TapeSeeds::from_master(o.seed), o.threads,
                                        deadline_for(o));
  const auto gram = gram_matrix(embeddings);
  run.phase("embed");

  std::ostringstream emb, gr;
  write_embeddings(emb, embeddings);
  write_square_matrix(gr, gram.graphs, gram.gram);
  write_text_file(o.out + ".embeddings.csv", emb.str());
  write_text_file(o.out + ".gram.csv", gr.str());
  run.outputs = {o.out + ".embeddings.csv", o.out + ".gram.csv"};
  run.phase("write");
}

void cmd_exact(Run& run) {
  const auto& o = run.opts;
  const auto graphs = load_graphs(o);
  const auto measures = measures_for(graphs, o);
  const auto scheme = resolve_scheme(o, graphs);
  run.extra["scheme"] = scheme.describe();
  const auto limits = limits_for(o);
  std::uint64_t worst = 0;
  for (std::size_t i = 0; i < graphs.size(); ++i)
    for (std::size_t j = i; j < graphs.size(); ++j) {
      check_product_limits(graphs[i], graphs[j], limits);
      const auto size = product_size(graphs[i], graphs[j]);
      worst = std::max<std::uint64_t>(worst, size.vertices * 3 * sizeof(double) +
                                                 size.edges * sizeof(VertexId) + size.vertices * sizeof(std::size_t));
    }
  run.footprint_bytes = worst;
  run.phase("load");

  const auto n = graphs.size();
  const auto deadline = deadline_for(o);
  std::vector<double> kernel(n * n);
  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) tasks.emplace_back(i, j);
  for (auto [i, j] : tasks) {
    const double k = exact_rwk(graphs[i], graphs[j], measures[i], measures[j], scheme.mu(), scheme.truncation(),
                               limits, deadline);
    kernel[i * n + j] = kernel[j * n + i] = k;
  }
  run.phase("solve");

  std::ostringstream out;
  write_square_matrix(out, n, kernel);
  write_text_file(o.out + ".kernel.csv", out.str());
  run.outputs = {o.out + ".kernel.csv"};
  run.phase("write");
}

void cmd_mse_sweep(Run& run) {
  const auto& o = run.opts;
  const auto graphs = load_graphs(o);
  const auto [g1, g2] = pick_pair(graphs, o);
  const auto m1 = measure_for(*g1, o), m2 = measure_for(*g2, o);
  const std::vector<Graph> both{*g1, *g2};
  const auto scheme = resolve_scheme(o, both);
  run.extra["scheme"] = scheme.describe();
  const double exact = exact_rwk(*g1, *g2, m1, m2, scheme.mu(), scheme.truncation(), limits_for(o));
  run.extra["exact"] = exact;
  auto cfg = walk_config(o);
  run.phase("load");

  Table table{{"walks", "trials", "mse", "standard_error", "exact"}, {}};
  for (auto m : o.walk_counts) {
    cfg.walks = m;
    cfg.validate();
    RunningStats errors;
    for (double x : sample_estimates(*g1, *g2, m1, m2, scheme, cfg, o.trials, key_hash({o.seed, m}), o.threads))
      errors.add((x - exact) * (x - exact));
    table.rows.push_back({std::to_string(m), std::to_string(o.trials), format_double(errors.mean()),
                          errors.count() > 1 ? format_double(errors.standard_error()) : "NA", format_double(exact)});
  }
  run.phase("sample");
  write_text_file(o.out + ".mse.csv", render_table(table));
  run.outputs = {o.out + ".mse.csv"};
  run.phase("write");
}

void cmd_bench(Run& run) {
  const auto& o = run.opts;
  const auto cfg = walk_config(o);
  const auto limits = limits_for(o);
  for (const auto& m : o.methods)
    if (m != "gvoys" && m != "exact-series" && m != "cg" && m != "fixed-point" && m != "naive-grf")
      throw UsageError("unknown bench method '" + m + "'");

  Table table{{"n", "method", "graphs", "seconds", "status"}, {}};
  for (auto n : o.sizes) {
    std::vector<Graph> graphs;
    for (std::size_t i = 0; i < o.graphs; ++i) {
      auto g = erdos_renyi(n, o.edge_p, key_hash({o.seed, n, i}), o.connected);
      if (o.labels > 1) g = assign_random_labels(g, o.labels, key_hash({o.seed, n, i, 0x6c61626c}));
      graphs.push_back(std::move(g));
    }
    const auto measures = measures_for(graphs, o);
    const auto scheme = resolve_scheme(o, graphs);
    run.footprint_bytes = std::max(run.footprint_bytes, walk_footprint(graphs, cfg, o.threads));

    for (const auto& method : o.methods) {
      const auto deadline = deadline_for(o);
      std::string status = "ok";
      const auto start = Clock::now();
      auto all_pairs = [&](auto&& solve) {
        for (std::size_t i = 0; i < graphs.size(); ++i)
          for (std::size_t j = i; j < graphs.size(); ++j) solve(i, j);
      };
      try {
        if (method == "gvoys") {
          gram_matrix(embed_dataset(graphs, measures, scheme, cfg, TapeSeeds::from_master(o.seed), o.threads, deadline));
        } else if (method == "exact-series") {
          all_pairs([&](std::size_t i, std::size_t j) {
            exact_rwk(graphs[i], graphs[j], measures[i], measures[j], scheme.mu(), scheme.truncation(), limits, deadline);
          });
        } else if (method == "naive-grf") {
          all_pairs([&](std::size_t i, std::size_t j) {
            naive_product_grf(graphs[i], graphs[j], measures[i], measures[j], scheme, o.walks, cfg.anchors, o.p_halt,
                              key_hash({o.seed, i, j}), limits, deadline);
          });
        } else if (scheme.kind() != SchemeKind::geometric) {
          status = "NA";
        } else {
          OracleConfig oc;
          oc.limits = limits;
          oc.deadline = deadline;
          all_pairs([&](std::size_t i, std::size_t j) {
            if (method == "cg") cg_geometric(graphs[i], graphs[j], measures[i], measures[j], scheme.lambda(), oc);
            else fixed_point_geometric(graphs[i], graphs[j], measures[i], measures[j], scheme.lambda(), oc);
          });
        }
      } catch (const MemoryGuardError&) {
        status = "OOM";
      } catch (const TimeBudgetExceeded&) {
        status = "ORT";
      } catch (const IterationLimitError&) {
        status = "NOCONV";
      }
      const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
      table.rows.push_back({std::to_string(n), method, std::to_string(graphs.size()),
                            status == "ok" ? format_double(seconds) : "", status});
      std::cerr << "n=" << n << " " << method << ": " << (status == "ok" ? format_double(seconds) + "s" : status)
                << "\n";
    }
  }
  run.phase("bench");
  write_text_file(o.out + ".bench.csv", render_table(table));
  run.outputs = {o.out + ".bench.csv"};
  run.phase("write");
}

void cmd_variance(Run& run) {
  const auto& o = run.opts;
  const auto graphs = load_graphs(o);
  const auto [g1, g2] = pick_pair(graphs, o);
  const auto m1 = measure_for(*g1, o), m2 = measure_for(*g2, o);
  const std::vector<Graph> both{*g1, *g2};
  const auto scheme = resolve_scheme(o, both);
  run.extra["scheme"] = scheme.describe();
  const auto cfg = walk_config(o);
  std::string exact = "NA";
  try {
    exact = format_double(exact_rwk(*g1, *g2, m1, m2, scheme.mu(), scheme.truncation(), limits_for(o)));
  } catch (const MemoryGuardError&) {
  }
  run.phase("load");

  Table table{{"distribution", "trials", "mean", "variance", "standard_error", "exact"}, {}};
  for (const auto& name : o.distributions) {
    GDistribution dist;
    if (name == "rademacher") dist = GDistribution::rademacher;
    else if (name == "gaussian") dist = GDistribution::gaussian;
    else throw UsageError("unknown distribution '" + name + "'");
    const auto r = variance_study(*g1, *g2, m1, m2, scheme, cfg, dist, o.trials, o.seed, o.threads);
    table.rows.push_back({name, std::to_string(r.trials), format_double(r.sample_mean),
                          format_double(r.sample_variance),
                          r.trials > 1 ? format_double(r.standard_error) : "NA", exact});
  }
  run.phase("sample");
  write_text_file(o.out + ".variance.csv", render_table(table));
  run.outputs = {o.out + ".variance.csv"};
  run.phase("write");
}

void cmd_concentration(Run& run) {
  const auto& o = run.opts;
  const auto graphs = load_graphs(o);
  const auto [g1, g2] = pick_pair(graphs, o);
  const auto m1 = measure_for(*g1, o), m2 = measure_for(*g2, o);
  const std::vector<Graph> both{*g1, *g2};
  const auto scheme = resolve_scheme(o, both);
  run.extra["scheme"] = scheme.describe();
  auto cfg = walk_config(o);
  cfg.sharing = SharingMode::shared_across_walkers;
  run.phase("load");

  const auto r = concentration_study(*g1, *g2, m1, m2, scheme, cfg, o.trials, o.epsilons, o.seed, o.threads);
  run.extra["c1"] = r.c1;
  run.extra["c2"] = r.c2;
  run.extra["k"] = r.k_const;
  run.extra["conditional_mean"] = r.conditional_mean;
  run.phase("sample");

  Table table{{"epsilon", "bound", "empirical_tail", "walks", "trials", "k", "conditional_mean"}, {}};
  for (std::size_t i = 0; i < r.epsilons.size(); ++i)
    table.rows.push_back({format_double(r.epsilons[i]), format_double(r.bound[i]), format_double(r.empirical_tail[i]),
                          std::to_string(r.walks), std::to_string(r.trials), format_double(r.k_const),
                          format_double(r.conditional_mean)});
  write_text_file(o.out + ".concentration.csv", render_table(table));
  run.outputs = {o.out + ".concentration.csv"};
  run.phase("write");
}

void execute(Run& run) {
  if (run.opts.out.empty()) throw UsageError("--out is required");
  if (run.opts.threads == 0) run.opts.threads = 1;
  const std::string& c = run.command;
  if (c == "gen") cmd_gen(run);
  else if (c == "estimate") cmd_estimate(run);
  else if (c == "exact") cmd_exact(run);
  else if (c == "mse-sweep") cmd_mse_sweep(run);
  else if (c == "bench") cmd_bench(run);
  else if (c == "variance") cmd_variance(run);
  else if (c == "concentration") cmd_concentration(run);
  else throw UsageError("unknown command '" + c + "'");

  json manifest{{"tool", "gvoys"},
                {"version", kVersion},
                {"command", c},
                {"config", run.opts},
                {"outputs", run.outputs},
                {"timings_seconds", run.timings},
                {"peak_footprint_bytes", run.footprint_bytes}};
  if (!run.extra.empty()) manifest["resolved"] = run.extra;
  write_text_file(run.opts.out + ".manifest.json", manifest.dump(2) + "\n");
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--out", o.out, "Output path (prefix for multi-file commands)")->required();
  app->add_option("--seed", o.seed, "Master seed");
  app->add_option("--threads", o.threads, "Worker threads; results do not depend on it");
  app->add_option("--budget-seconds", o.budget_seconds, "Wall-clock budget, 0 for none");
}

void add_walks(CLI::App* app, Options& o) {
  app->add_option("--walks", o.walks, "Walkers per vertex (m)");
  app->add_option("--p-halt", o.p_halt, "Termination probability");
  app->add_option("--anchors", o.anchors, "Anchor count r, or 'all'");
  app->add_option("--dg", o.dg, "Embedding dimension d_G");
  app->add_option("--storage", o.storage, "Deposit storage: dense or sparse");
  add_common(app, o);
}

void add_kernel(CLI::App* app, Options& o) {
  app->add_option("--scheme", o.scheme, "geometric:<l>, exponential:<l>, custom:<path>; <l> may be 'auto'");
  app->add_option("--truncation", o.truncation, "Largest walk length T");
  app->add_flag("--unlabelled{true},--labelled{false}", o.unlabelled, "Ignore or honour vertex labels");
  app->add_option("--measure", o.measure, "Start/end measure: uniform or ones");
  app->add_option("--max-product-vertices", o.max_product_vertices, "Memory guard on product vertices");
  app->add_option("--max-product-edges", o.max_product_edges, "Memory guard on product edges");
}

void add_pair(CLI::App* app, Options& o) {
  app->add_option("--data", o.data, "Dataset file")->required();
  app->add_option("--pair", o.pair, "Indices of the two graphs")->delimiter(',')->expected(2);
  app->add_option("--trials", o.trials, "Independent trials");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random walk graph kernels via shared-variable graph random features"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;
  std::string manifest_path, replay_out;

  auto* gen = app.add_subcommand("gen", "Generate an Erdos-Renyi dataset");
  gen->add_option("--graphs", o.graphs, "Number of graphs");
  gen->add_option("--vertices", o.vertices, "Vertices per graph");
  gen->add_option("--p", o.edge_p, "Edge probability");
  gen->add_option("--labels", o.labels, "Number of vertex labels");
  gen->add_flag("--connected", o.connected, "Resample until connected");
  add_common(gen, o);

  auto* estimate = app.add_subcommand("estimate", "Embed a dataset and write the approximate Gram matrix");
  estimate->add_option("--data", o.data, "Dataset file")->required();
  add_kernel(estimate, o);
  add_walks(estimate, o);

  auto* exact = app.add_subcommand("exact", "Exact truncated kernel matrix on materialized product graphs");
  exact->add_option("--data", o.data, "Dataset file")->required();
  add_kernel(exact, o);
  add_common(exact, o);

  auto* sweep = app.add_subcommand("mse-sweep", "Mean squared error against the exact kernel per walk count");
  add_pair(sweep, o);
  sweep->add_option("--walk-counts", o.walk_counts, "Walk counts to sweep")->delimiter(',');
  add_kernel(sweep, o);
  add_walks(sweep, o);

  auto* bench = app.add_subcommand("bench", "Timing table over graph sizes and methods");
  bench->add_option("--sizes", o.sizes, "Graph sizes")->delimiter(',');
  bench->add_option("--methods", o.methods, "gvoys, exact-series, cg, fixed-point, naive-grf")->delimiter(',');
  bench->add_option("--graphs", o.graphs, "Graphs per size");
  bench->add_option("--p", o.edge_p, "Edge probability");
  bench->add_option("--labels", o.labels, "Number of vertex labels");
  bench->add_flag("--connected", o.connected, "Resample until connected");
  add_kernel(bench, o);
  add_walks(bench, o);

  auto* variance = app.add_subcommand("variance", "Estimator variance under Rademacher and Gaussian signs");
  add_pair(variance, o);
  variance->add_option("--distributions", o.distributions, "rademacher, gaussian")->delimiter(',');
  add_kernel(variance, o);
  add_walks(variance, o);

  auto* concentration = app.add_subcommand("concentration", "Empirical tail against the concentration bound");
  add_pair(concentration, o);
  concentration->add_option("--epsilons", o.epsilons, "Deviation grid")->delimiter(',');
  add_kernel(concentration, o);
  add_walks(concentration, o);

  auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay->add_option("--manifest", manifest_path, "Manifest file")->required();
  replay->add_option("--out", replay_out, "Write to a different output path");

  CLI11_PARSE(app, argc, argv);

  try {
    Run run;
    if (replay->parsed()) {
      try {
        const auto manifest = json::parse(read_text_file(manifest_path));
        run.command = manifest.at("command").get<std::string>();
        run.opts = manifest.at("config").get<Options>();
      } catch (const std::exception& e) {
        throw UsageError("bad manifest " + manifest_path + ": " + e.what());
      }
      if (!replay_out.empty()) run.opts.out = replay_out;
    } else {
      run.command = app.get_subcommands().front()->get_name();
      run.opts = o;
    }
    execute(run);
    for (const auto& path : run.outputs) std::cout << path << "\n";
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const GraphError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const SchemeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const MemoryGuardError& e) {
    std::cerr << "OOM: " << e.what() << "\n";
    return 3;
  } catch (const TimeBudgetExceeded& e) {
    std::cerr << "ORT: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
