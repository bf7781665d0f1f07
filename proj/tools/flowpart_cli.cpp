// flowpart command line: partition, refine, netstats, bench, oracle, convert.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "flowpart/bench.hpp"
#include "flowpart/io.hpp"
#include "flowpart/multilevel.hpp"
#include "flowpart/oracle.hpp"

namespace {

using namespace flowpart;

struct CommonFlags {
  std::string hgr;
  int k = 2;
  double eps = 0.03;
  std::uint64_t seed = 1;
  std::string fm = "on";
  std::string flows = "on";
  std::string flow_model = "hypergraph";
  std::string network = "reduced";
  int alpha_prime = 16;
  std::string mbmc = "on";
  int mbmc_reps = 8;
  std::string single_pin = "on";
  std::string s1 = "on", s2 = "on", s3 = "on";
  std::int64_t s2_threshold = 10;
  int attempts = 32;
  int coarsen_target = 0;
  int flow_levels = -1;
};

void add_config_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--seed", f.seed, "random seed");
  cmd->add_option("--fm", f.fm, "run FM local search (on/off)");
  cmd->add_option("--flows", f.flows, "run flow refinement (on/off)");
  cmd->add_option("--flow-model", f.flow_model, "flow problem model (graph/hypergraph)");
  cmd->add_option("--network", f.network, "network variant (lawler/liu-wong/reduced)");
  cmd->add_option("--alpha-prime", f.alpha_prime, "corridor scaling limit (power of two)");
  cmd->add_option("--mbmc", f.mbmc, "most balanced minimum cuts (on/off)");
  cmd->add_option("--mbmc-reps", f.mbmc_reps, "randomized sweeps per cut");
  cmd->add_option("--single-pin", f.single_pin, "single-pin border modeling (on/off)");
  cmd->add_option("--s1", f.s1, "skip historically fruitless pairs (on/off)");
  cmd->add_option("--s2", f.s2, "skip small cuts on coarse levels (on/off)");
  cmd->add_option("--s3", f.s3, "stop corridor resizing without cut gains (on/off)");
  cmd->add_option("--s2-threshold", f.s2_threshold, "cut weight below which S2 skips");
  cmd->add_option("--attempts", f.attempts, "initial partitioning attempts");
  cmd->add_option("--coarsen-target", f.coarsen_target, "coarsening target (0 = auto)");
  cmd->add_option("--flow-levels", f.flow_levels, "flows on the finest L levels (-1 = all)");
}

PartitionerConfig to_config(const CommonFlags& f) {
  PartitionerConfig cfg;
  cfg.k = f.k;
  cfg.epsilon = f.eps;
  cfg.seed = f.seed;
  cfg.enable_fm = parse_on_off(f.fm, "fm");
  cfg.enable_flows = parse_on_off(f.flows, "flows");
  if (f.flow_model == "graph") cfg.flow.model = FlowModel::graph;
  else if (f.flow_model == "hypergraph") cfg.flow.model = FlowModel::hypergraph;
  else throw InputError("unknown flow model: " + f.flow_model);
  if (f.network == "lawler") cfg.flow.variant = NetworkVariant::lawler;
  else if (f.network == "liu-wong") cfg.flow.variant = NetworkVariant::liu_wong;
  else if (f.network == "reduced") cfg.flow.variant = NetworkVariant::reduced;
  else throw InputError("unknown network variant: " + f.network);
  cfg.flow.alpha_prime = f.alpha_prime;
  cfg.flow.most_balanced = parse_on_off(f.mbmc, "mbmc");
  cfg.flow.mbmc_reps = f.mbmc_reps;
  cfg.flow.single_pin_modeling = parse_on_off(f.single_pin, "single-pin");
  cfg.flow.s1 = parse_on_off(f.s1, "s1");
  cfg.flow.s2 = parse_on_off(f.s2, "s2");
  cfg.flow.s3 = parse_on_off(f.s3, "s3");
  cfg.flow.s2_cut_threshold = f.s2_threshold;
  cfg.initial_attempts = f.attempts;
  cfg.coarsen_target = f.coarsen_target;
  cfg.flow_levels = f.flow_levels;
  return cfg;
}

Hypergraph load_instance(const std::string& path) {
  std::vector<std::string> warnings;
  Hypergraph hg = load_hgr_file(path, &warnings);
  for (const std::string& w : warnings) std::cerr << "warning: " << path << ": " << w << '\n';
  hg.check_consistency();
  return hg;
}

int cmd_partition(const CommonFlags& f, const std::string& out_path) {
  const Hypergraph hg = load_instance(f.hgr);
  const PartitionerConfig cfg = to_config(f);
  const PartitionResult result = partition(hg, cfg);

  std::cout << "instance: " << f.hgr << '\n'
            << "vertices: " << hg.num_vertices() << " nets: " << hg.num_nets()
            << " pins: " << hg.num_pins() << '\n'
            << "k: " << cfg.k << " eps: " << cfg.epsilon << " seed: " << cfg.seed << '\n'
            << "km1: " << result.km1 << " cut: " << result.cut
            << " imbalance: " << result.imbalance_value
            << " balanced: " << (result.balanced ? "yes" : "no") << '\n'
            << "levels: " << result.levels
            << " flow_calls: " << result.stats.flow_calls
            << " seconds: " << result.seconds << '\n';

  if (!out_path.empty()) {
    {
      std::ofstream out(out_path);
      require_input(out.good(), "cannot open output file: " + out_path);
      std::vector<BlockId> assignment(hg.num_vertices());
      for (VertexId v = 0; v < hg.num_vertices(); ++v)
        assignment[v] = result.part.block(v);
      write_partition(out, assignment);
    }
    // Re-read the file and recompute both metrics from scratch; report what
    // is actually on disk, not what the in-memory run believed.
    std::ifstream in(out_path);
    require_input(in.good(), "cannot re-open output file: " + out_path);
    const std::vector<BlockId> assignment = read_partition(in, hg.num_vertices(), cfg.k);
    PartitionK reread(hg, cfg.k, cfg.epsilon, assignment);
    require(km1_metric(hg, reread) == result.km1,
            "partition: written file disagrees with reported km1");
    require(imbalance(reread) == result.imbalance_value,
            "partition: written file disagrees with reported imbalance");
    std::cout << "partition written to " << out_path << " (verified)\n";
  }
  return 0;
}

int cmd_refine(const CommonFlags& f, const std::string& partition_path,
               const std::string& out_path) {
  const Hypergraph hg = load_instance(f.hgr);
  std::ifstream in(partition_path);
  require_input(in.good(), "cannot open partition file: " + partition_path);
  const std::vector<BlockId> assignment = read_partition(in, hg.num_vertices(), f.k);
  PartitionK part(hg, f.k, f.eps, assignment);

  const PartitionerConfig cfg = to_config(f);
  const Weight km1_before = km1_metric(hg, part);
  const double imb_before = imbalance(part);

  std::mt19937_64 rng(derive_seed(cfg.seed, 4));
  if (cfg.enable_fm) {
    std::mt19937_64 fm_rng(derive_seed(cfg.seed, 3));
    fm_pass(hg, part, fm_rng);
  }
  PairHistory history(cfg.k);
  RefineStats stats;
  if (cfg.enable_flows) {
    RefineContext ctx;
    ctx.invocation_index = 0;
    ctx.finest_level = true;
    ctx.history = &history;
    ctx.stats = &stats;
    ctx.rng = &rng;
    refine_kway(hg, part, cfg.flow, ctx);
  }

  std::cout << "instance: " << f.hgr << '\n'
            << "km1: " << km1_before << " -> " << km1_metric(hg, part) << '\n'
            << "imbalance: " << imb_before << " -> " << imbalance(part)
            << " balanced: " << (part.is_balanced() ? "yes" : "no") << '\n'
            << "flow_calls: " << stats.flow_calls << '\n';

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    require_input(out.good(), "cannot open output file: " + out_path);
    std::vector<BlockId> result(hg.num_vertices());
    for (VertexId v = 0; v < hg.num_vertices(); ++v) result[v] = part.block(v);
    write_partition(out, result);
    std::cout << "partition written to " << out_path << '\n';
  }
  return 0;
}

// Count-bounded corridor for size reporting: BFS per side from the pair
// boundary until each side holds corridor_size / 2 vertices.
std::vector<VertexId> count_bounded_corridor(const Hypergraph& hg, const PartitionK& part,
                                             BlockId i, BlockId j, VertexId limit,
                                             std::mt19937_64& rng) {
  std::vector<char> visited(hg.num_vertices(), false);
  std::vector<VertexId> corridor;
  auto grow = [&](BlockId side, VertexId cap) {
    std::vector<VertexId> frontier;
    for (NetId e = 0; e < hg.num_nets(); ++e) {
      bool in_i = false, in_j = false;
      for (VertexId v : hg.pins(e)) {
        in_i |= part.block(v) == i;
        in_j |= part.block(v) == j;
      }
      if (!(in_i && in_j)) continue;
      for (VertexId v : hg.pins(e))
        if (part.block(v) == side && !visited[v]) {
          visited[v] = true;
          frontier.push_back(v);
        }
    }
    std::shuffle(frontier.begin(), frontier.end(), rng);
    VertexId taken = 0;
    std::vector<VertexId> next;
    while (!frontier.empty() && taken < cap) {
      next.clear();
      for (VertexId v : frontier) {
        if (taken >= cap) break;
        corridor.push_back(v);
        ++taken;
        for (NetId e : hg.incident_nets(v))
          for (VertexId p : hg.pins(e))
            if (!visited[p] && part.block(p) == side) {
              visited[p] = true;
              next.push_back(p);
            }
      }
      std::shuffle(next.begin(), next.end(), rng);
      frontier = next;
    }
  };
  grow(i, limit / 2);
  grow(j, limit - limit / 2);
  return corridor;
}

int cmd_netstats(const CommonFlags& f, VertexId corridor_size) {
  const Hypergraph hg = load_instance(f.hgr);
  require_input(corridor_size >= 2, "netstats: corridor size below 2");
  if (corridor_size > hg.num_vertices()) {
    std::cerr << "warning: corridor size clamped to " << hg.num_vertices()
              << " vertices\n";
    corridor_size = hg.num_vertices();
  }

  // A quick flowless bipartition supplies the cut to measure around.
  CommonFlags quick = f;
  quick.k = 2;
  quick.flows = "off";
  PartitionerConfig cfg = to_config(quick);
  const PartitionResult seeded = partition(hg, cfg);

  std::mt19937_64 rng(derive_seed(f.seed, 99));
  const std::vector<VertexId> members =
      count_bounded_corridor(hg, seeded.part, 0, 1, corridor_size, rng);
  if (members.empty())
    std::cerr << "warning: sample bipartition has an empty cut; sizes are zero\n";
  const SubHypergraph sub = induced_subhypergraph(hg, seeded.part, 0, 1, members);

  std::cout << "instance,variant,nodes,arcs,infinite_arcs\n";
  const auto emit = [&](const std::string& name, const NetworkStats& s) {
    std::cout << f.hgr << ',' << name << ',' << s.num_nodes << ',' << s.num_arcs << ','
              << s.num_infinite_arcs << '\n';
  };
  emit("lawler", network_stats(build_network(sub, {NetworkVariant::lawler, {}, {}})));
  emit("liu_wong", network_stats(build_network(sub, {NetworkVariant::liu_wong, {}, {}})));
  emit("reduced", network_stats(build_network(sub, {NetworkVariant::reduced, {}, {}})));

  const FlowProblem problem = build_flow_problem(
      sub, {FlowModel::hypergraph, NetworkVariant::reduced, true});
  NetworkStats ps = network_stats(problem.network);
  ps.num_nodes += 2;  // terminals
  ps.num_arcs += static_cast<std::int64_t>(problem.source_attachments.size()) +
                 static_cast<std::int64_t>(problem.sink_attachments.size());
  for (const Attachment& a : problem.source_attachments)
    if (a.capacity == kInfiniteCapacity) ++ps.num_infinite_arcs;
  for (const Attachment& a : problem.sink_attachments)
    if (a.capacity == kInfiniteCapacity) ++ps.num_infinite_arcs;
  emit("reduced_fh_problem", ps);
  return 0;
}

struct ManifestEntry {
  std::string path;
  int k = 2;
  double eps = 0.03;
};

std::vector<ManifestEntry> read_manifest(const std::string& path) {
  std::ifstream in(path);
  require_input(in.good(), "cannot open manifest: " + path);
  std::vector<ManifestEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto fields = bench_detail::split_csv(line);
    require_input(fields.size() == 3, "manifest line " + std::to_string(line_no) +
                                          ": expected 'path,k,eps'");
    try {
      entries.push_back({fields[0], std::stoi(fields[1]), std::stod(fields[2])});
    } catch (const std::exception&) {
      throw InputError("manifest line " + std::to_string(line_no) + ": malformed number");
    }
  }
  require_input(!entries.empty(), "manifest lists no instances");
  return entries;
}

std::vector<NamedConfig> read_configs(const std::string& path) {
  std::ifstream in(path);
  require_input(in.good(), "cannot open configs file: " + path);
  std::vector<NamedConfig> configs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    configs.push_back(parse_named_config(line));
  }
  require_input(!configs.empty(), "configs file lists no configurations");
  return configs;
}

RunRecord make_record(const ManifestEntry& entry, const NamedConfig& named, int rep,
                      std::uint64_t seed, const PartitionResult& result) {
  RunRecord r;
  r.instance = entry.path;
  r.config = named.name;
  r.k = entry.k;
  r.eps = entry.eps;
  r.seed = seed;
  r.rep = rep;
  r.km1 = result.km1;
  r.cut = result.cut;
  r.imbalance = result.imbalance_value;
  r.balanced = result.balanced;
  r.levels = result.levels;
  r.flow_calls = result.stats.flow_calls;
  r.corridors = result.stats.corridors;
  r.accepted = result.stats.accepted;
  r.seconds = result.seconds;
  r.flow_seconds = result.stats.flow_seconds;
  return r;
}

int cmd_bench(const std::string& manifest_path, const std::string& configs_path,
              int reps, std::uint64_t seed, bool effectiveness,
              const std::string& out_path, const std::string& aggregate_path) {
  require_input(reps >= 1, "bench: reps must be at least 1");
  const std::vector<ManifestEntry> manifest = read_manifest(manifest_path);
  const std::vector<NamedConfig> configs = read_configs(configs_path);

  std::vector<RunRecord> records;
  for (std::size_t ii = 0; ii < manifest.size(); ++ii) {
    const ManifestEntry& entry = manifest[ii];
    const Hypergraph hg = load_instance(entry.path);
    if (!effectiveness) {
      for (std::size_t ci = 0; ci < configs.size(); ++ci) {
        for (int rep = 0; rep < reps; ++rep) {
          PartitionerConfig cfg = configs[ci].config;
          cfg.k = entry.k;
          cfg.epsilon = entry.eps;
          cfg.seed = derive_seed(seed, (ii << 40) ^ (ci << 20) ^ static_cast<std::uint64_t>(rep));
          const PartitionResult result = partition(hg, cfg);
          records.push_back(make_record(entry, configs[ci], rep, cfg.seed, result));
        }
      }
      continue;
    }
    // Effectiveness: one timing run per configuration fixes the common
    // budget, then every configuration repeats within it.
    std::vector<double> base_time(configs.size(), 0.0);
    double t_max = 0.0;
    for (std::size_t ci = 0; ci < configs.size(); ++ci) {
      PartitionerConfig cfg = configs[ci].config;
      cfg.k = entry.k;
      cfg.epsilon = entry.eps;
      cfg.seed = derive_seed(seed, (ii << 40) ^ (ci << 20) ^ 0x5afeULL);
      const PartitionResult probe = partition(hg, cfg);
      base_time[ci] = probe.seconds;
      t_max = std::max(t_max, probe.seconds);
    }
    for (std::size_t ci = 0; ci < configs.size(); ++ci) {
      std::mt19937_64 coin_rng(derive_seed(seed, (ii << 40) ^ (ci << 20) ^ 0xc01cULL));
      auto run_once = [&](int rep) {
        PartitionerConfig cfg = configs[ci].config;
        cfg.k = entry.k;
        cfg.epsilon = entry.eps;
        cfg.seed = derive_seed(seed, (ii << 40) ^ (ci << 20) ^ static_cast<std::uint64_t>(rep));
        const PartitionResult result = partition(hg, cfg);
        RunRecord rec = make_record(entry, configs[ci], rep, cfg.seed, result);
        records.push_back(rec);
        return rec;
      };
      const EffectivenessOutcome outcome = run_effectiveness(run_once, t_max, coin_rng);
      std::cerr << "effectiveness " << entry.path << ' ' << configs[ci].name << ": best km1 "
                << outcome.best.km1 << " over " << outcome.repetitions << " runs\n";
    }
  }

  if (out_path.empty()) {
    write_bench_csv(std::cout, records);
  } else {
    std::ofstream out(out_path);
    require_input(out.good(), "cannot open output file: " + out_path);
    write_bench_csv(out, records);
  }
  const std::vector<AggregateRow> aggregate = aggregate_bench(records);
  if (aggregate_path.empty()) {
    write_aggregate_csv(std::cout, aggregate);
  } else {
    std::ofstream out(aggregate_path);
    require_input(out.good(), "cannot open aggregate file: " + aggregate_path);
    write_aggregate_csv(out, aggregate);
  }
  return 0;
}

int cmd_oracle(const CommonFlags& f, bool best_partition, VertexId s, VertexId t) {
  const Hypergraph hg = load_instance(f.hgr);
  if (best_partition) {
    const auto best = brute_best_partition(hg, f.k, f.eps);
    if (!best) {
      std::cout << "no feasible partition\n";
      return 0;
    }
    std::cout << "optimal km1: " << best->km1 << '\n';
    for (VertexId v = 0; v < hg.num_vertices(); ++v)
      std::cout << best->assignment[v] << '\n';
    return 0;
  }
  require_input(s >= 1 && t >= 1 && s <= hg.num_vertices() && t <= hg.num_vertices(),
                "oracle: s and t must be 1-based vertex ids");
  const BruteCut cut = brute_min_st_cut(hg, s - 1, t - 1);
  std::cout << "min st-cut weight: " << cut.weight << '\n';
  return 0;
}

int cmd_convert(const std::string& graph_path, const std::string& matrix_path,
                const std::string& out_path, bool merge_parallel) {
  require_input(graph_path.empty() != matrix_path.empty(),
                "convert: pass exactly one of --graph or --matrix");
  Hypergraph hg;
  std::vector<std::string> warnings;
  if (!graph_path.empty()) {
    std::ifstream in(graph_path);
    require_input(in.good(), "cannot open file: " + graph_path);
    std::string line;
    int line_no = 0;
    require_input(io_detail::next_content_line(in, line, line_no),
                  "graph: missing header line");
    auto header = io_detail::parse_numbers(line, line_no);
    require_input(header.size() == 2, "graph: header must be 'vertices edges'");
    const long long n = header[0], m = header[1];
    require_input(n >= 0 && m >= 0, "graph: negative dimension");
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<Weight> weights;
    for (long long e = 0; e < m; ++e) {
      require_input(io_detail::next_content_line(in, line, line_no),
                    "graph: expected " + std::to_string(m) + " edges, got " +
                        std::to_string(e));
      auto numbers = io_detail::parse_numbers(line, line_no);
      require_input(numbers.size() == 2 || numbers.size() == 3,
                    "line " + std::to_string(line_no) + ": edge must be 'u v [w]'");
      require_input(numbers[0] >= 1 && numbers[0] <= n && numbers[1] >= 1 && numbers[1] <= n,
                    "line " + std::to_string(line_no) + ": endpoint out of range");
      edges.push_back({static_cast<VertexId>(numbers[0] - 1),
                       static_cast<VertexId>(numbers[1] - 1)});
      weights.push_back(numbers.size() == 3 ? numbers[2] : 1);
    }
    hg = graph_to_hypergraph(static_cast<VertexId>(n), std::move(edges), merge_parallel,
                             std::move(weights));
  } else {
    std::ifstream in(matrix_path);
    require_input(in.good(), "cannot open file: " + matrix_path);
    hg = parse_matrix_rownet(in, &warnings);
  }
  for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
  hg.check_consistency();
  std::ofstream out(out_path);
  require_input(out.good(), "cannot open output file: " + out_path);
  write_hgr(out, hg);
  std::cout << "wrote " << out_path << ": " << hg.num_vertices() << " vertices, "
            << hg.num_nets() << " nets, " << hg.num_pins() << " pins\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypergraph partitioning with max-flow min-cut refinement"};
  app.require_subcommand(1);

  CommonFlags pf;
  std::string partition_out;
  CLI::App* partition_cmd = app.add_subcommand("partition", "partition a hypergraph");
  partition_cmd->add_option("--hgr", pf.hgr, "hypergraph file")->required();
  partition_cmd->add_option("--k", pf.k, "number of blocks")->required();
  partition_cmd->add_option("--eps", pf.eps, "imbalance tolerance");
  partition_cmd->add_option("--out", partition_out, "partition output file");
  add_config_flags(partition_cmd, pf);

  CommonFlags rf;
  std::string refine_in, refine_out;
  CLI::App* refine_cmd = app.add_subcommand("refine", "refine an existing partition");
  refine_cmd->add_option("--hgr", rf.hgr, "hypergraph file")->required();
  refine_cmd->add_option("--partition", refine_in, "partition file")->required();
  refine_cmd->add_option("--k", rf.k, "number of blocks")->required();
  refine_cmd->add_option("--eps", rf.eps, "imbalance tolerance");
  refine_cmd->add_option("--out", refine_out, "partition output file");
  rf.fm = "off";
  add_config_flags(refine_cmd, rf);

  CommonFlags nf;
  int corridor_size = 25000;
  CLI::App* netstats_cmd =
      app.add_subcommand("netstats", "flow network sizes around a sample cut");
  netstats_cmd->add_option("--hgr", nf.hgr, "hypergraph file")->required();
  netstats_cmd->add_option("--corridor-size", corridor_size,
                           "corridor vertex count around the cut");
  netstats_cmd->add_option("--eps", nf.eps, "imbalance tolerance for the sample cut");
  netstats_cmd->add_option("--seed", nf.seed, "random seed");

  std::string bench_manifest, bench_configs, bench_out, bench_aggregate;
  int bench_reps = 10;
  std::uint64_t bench_seed = 1;
  std::string bench_effectiveness = "off";
  CLI::App* bench_cmd = app.add_subcommand("bench", "run a benchmark manifest");
  bench_cmd->add_option("--manifest", bench_manifest, "instances file: path,k,eps")
      ->required();
  bench_cmd->add_option("--configs", bench_configs, "configurations file")->required();
  bench_cmd->add_option("--reps", bench_reps, "repetitions per configuration");
  bench_cmd->add_option("--seed", bench_seed, "base seed");
  bench_cmd->add_option("--effectiveness", bench_effectiveness,
                        "equal-time repeated-run protocol (on/off)");
  bench_cmd->add_option("--out", bench_out, "runs CSV output file");
  bench_cmd->add_option("--aggregate-out", bench_aggregate, "aggregate CSV output file");

  CommonFlags of;
  bool oracle_best = false;
  VertexId oracle_s = 0, oracle_t = 0;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "exact brute-force references");
  oracle_cmd->add_option("--hgr", of.hgr, "hypergraph file")->required();
  oracle_cmd->add_flag("--best-partition", oracle_best, "exhaustive best partition");
  oracle_cmd->add_option("--k", of.k, "number of blocks");
  oracle_cmd->add_option("--eps", of.eps, "imbalance tolerance");
  oracle_cmd->add_option("--s", oracle_s, "source vertex (1-based) for --min-cut");
  oracle_cmd->add_option("--t", oracle_t, "sink vertex (1-based) for --min-cut");

  std::string convert_graph, convert_matrix, convert_out;
  bool convert_merge = false;
  CLI::App* convert_cmd = app.add_subcommand("convert", "convert graphs or matrices to hgr");
  convert_cmd->add_option("--graph", convert_graph, "edge list file: 'n m' then 'u v [w]'");
  convert_cmd->add_option("--matrix", convert_matrix, "coordinate matrix file, row-net model");
  convert_cmd->add_option("--out", convert_out, "hgr output file")->required();
  convert_cmd->add_flag("--merge-parallel", convert_merge, "merge parallel edges");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*partition_cmd) return cmd_partition(pf, partition_out);
    if (*refine_cmd) return cmd_refine(rf, refine_in, refine_out);
    if (*netstats_cmd) return cmd_netstats(nf, corridor_size);
    if (*bench_cmd)
      return cmd_bench(bench_manifest, bench_configs, bench_reps, bench_seed,
                       parse_on_off(bench_effectiveness, "effectiveness"), bench_out,
                       bench_aggregate);
    if (*oracle_cmd) return cmd_oracle(of, oracle_best, oracle_s, oracle_t);
    if (*convert_cmd)
      return cmd_convert(convert_graph, convert_matrix, convert_out, convert_merge);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ContractViolation& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 1;
}
