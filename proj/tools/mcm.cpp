// mcm: command-line front end for the matching toolkit.
//
//   match   exact maximum matching of an input graph
//   approx  (1-eps)-approximate matching with simulated-cost accounting
//   dist    alternating-path distance table of a (graph, matching) input
//   verify  differential check of the engines against the brute oracles
//   bench   phase counts and operation counters over seeded random graphs
//
// Input files use the graph-core text format: a "p <n> <m>" header, "e u v"
// edge lines, optional "m u v" matching lines and "#" comments. Reports are
// plain text or JSON (--report json); identical inputs and seeds produce
// byte-identical output.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "approx.hpp"
#include "driver.hpp"
#include "gen.hpp"
#include "oracle.hpp"

namespace {

using nlohmann::ordered_json;
using namespace mm;

enum ExitCode { kOk = 0, kError = 1, kMismatch = 2 };

struct RunConfig {
  std::string command;
  std::string input;
  std::string eps = "1/4";
  uint64_t seed = 1;
  std::string report = "text";
  int max_n = 12;
  int count = 500;
};

// "1/2^k" written as 1/<positive integer>, e.g. 1/8; an integer alone is
// read as its reciprocal. Denominators that are not powers of two are
// tightened down by the approx engine itself.
int parse_inv_eps(const std::string& s) {
  std::string body = s;
  if (body.rfind("1/", 0) == 0) body = body.substr(2);
  size_t used = 0;
  int den = 0;
  try {
    den = std::stoi(body, &used);
  } catch (const std::exception&) {
    throw ParseError("bad --eps value: " + s);
  }
  if (used != body.size() || den < 2) throw ParseError("bad --eps value: " + s);
  return den;
}

void emit_matching(std::ostream& out, const Matching& m) {
  out << "s " << m.size() << "\n";
  for (auto [u, v] : m.pairs()) out << "m " << u << " " << v << "\n";
}

ordered_json matching_json(const Matching& m) {
  ordered_json pairs = ordered_json::array();
  for (auto [u, v] : m.pairs()) pairs.push_back({u, v});
  return pairs;
}

int cmd_match(const RunConfig& cfg) {
  GraphFile in = read_graph_file(cfg.input);
  std::optional<Matching> initial;
  if (in.m.size() > 0) initial = in.m;
  MatchResult res = maximum_matching(in.g, initial);
  if (cfg.report == "json") {
    ordered_json phases = ordered_json::array();
    for (const PhaseReport& p : res.phases)
      phases.push_back({{"l", p.l},
                        {"paths", p.paths},
                        {"candidates", p.candidates},
                        {"ddfs_edges", p.ddfs_edges},
                        {"dist_ops", p.dist_ops.total()}});
    ordered_json rep{{"schema", 1},
                     {"matching_size", res.matching.size()},
                     {"matching", matching_json(res.matching)},
                     {"phases", phases}};
    std::cout << rep.dump(2) << "\n";
  } else {
    emit_matching(std::cout, res.matching);
  }
  return kOk;
}

int cmd_approx(const RunConfig& cfg) {
  GraphFile in = read_graph_file(cfg.input);
  int inv_eps = parse_inv_eps(cfg.eps);
  CostMeter cm;
  Matching m = approx_matching(in.g, inv_eps, &cm);
  if (cfg.report == "json") {
    ordered_json rep{{"schema", 1},
                     {"matching_size", m.size()},
                     {"mu_lower_bound", m.size()},
                     {"congest_rounds", cm.congest_rounds},
                     {"stream_passes", cm.stream_passes},
                     {"mm_invocations", cm.mm_invocations},
                     {"matching", matching_json(m)}};
    std::cout << rep.dump(2) << "\n";
  } else {
    emit_matching(std::cout, m);
    std::cout << "# congest_rounds " << cm.congest_rounds << "\n"
              << "# stream_passes " << cm.stream_passes << "\n"
              << "# mm_invocations " << cm.mm_invocations << "\n";
  }
  return kOk;
}

int cmd_dist(const RunConfig& cfg) {
  GraphFile in = read_graph_file(cfg.input);
  MatchingSystem ms{std::move(in.g), std::move(in.m)};
  dump_dist(std::cout, compute_dist(ms));
  return kOk;
}

// One random system per iteration; every engine is held against its oracle.
int cmd_verify(const RunConfig& cfg) {
  if (cfg.max_n < 4 || cfg.max_n > 12) throw Error("verify: --max-n must be in [4, 12]");
  Rng rng(cfg.seed);
  int bad = 0;
  auto report = [&](const char* what, const MatchingSystem& ms) {
    ++bad;
    std::cout << "MISMATCH " << what << "\n";
    write_graph(std::cout, ms.g, &ms.m);
  };
  for (int it = 0; it < cfg.count; ++it) {
    int n = 4 + static_cast<int>(rng_below(rng, cfg.max_n - 3));
    double p = 0.1 + 0.1 * static_cast<double>(rng_below(rng, 5));
    Graph g = gen_gnp(n, p, rng);
    Matching m = gen_random_matching(g, 0.6, rng);
    MatchingSystem ms{g, m};

    DistTable dt = compute_dist(ms);
    OracleDistTable ora = enumerate_alternating_dists(ms);
    for (VertexId v = 0; v < n; ++v)
      if (dt.dist_odd[v] != ora.dist_odd[v] || dt.dist_even[v] != ora.dist_even[v]) {
        report("dist", ms);
        break;
      }
    if (!is_maximal_disjoint_shortest_set(ms, find_phase_paths(ms)))
      report("phase maximality", ms);

    int mu = brute_max_matching(g);
    if (maximum_matching(g).matching.size() != mu) report("exact size", ms);
    if (4 * approx_matching(g, 4).size() < 3 * mu) report("approx bound", ms);
  }
  if (bad > 0) {
    std::cout << "verify: " << bad << " mismatches over " << cfg.count << " instances\n";
    return kMismatch;
  }
  std::cout << "verify: " << cfg.count << " instances ok (max n " << cfg.max_n << ")\n";
  return kOk;
}

int cmd_bench(const RunConfig& cfg) {
  Rng rng(cfg.seed);
  ordered_json rows = ordered_json::array();
  for (int it = 0; it < cfg.count; ++it) {
    int n = std::max(4, cfg.max_n / cfg.count * (it + 1));
    Graph g = gen_gnp(n, std::min(1.0, 8.0 / n), rng);
    MatchResult res = maximum_matching(g);
    uint64_t dist_ops = 0, ddfs_edges = 0;
    int candidates = 0;
    for (const PhaseReport& p : res.phases) {
      dist_ops += p.dist_ops.total();
      ddfs_edges += p.ddfs_edges;
      candidates += p.candidates;
    }
    if (cfg.report == "json") {
      rows.push_back({{"n", n},
                      {"m", g.m()},
                      {"matching_size", res.matching.size()},
                      {"phases", res.phases.size()},
                      {"candidates", candidates},
                      {"dist_ops", dist_ops},
                      {"ddfs_edges", ddfs_edges}});
    } else {
      std::cout << "n " << n << " m " << g.m() << " size " << res.matching.size()
                << " phases " << res.phases.size() << " dist_ops " << dist_ops
                << " ddfs_edges " << ddfs_edges << "\n";
    }
  }
  if (cfg.report == "json")
    std::cout << ordered_json{{"schema", 1}, {"runs", rows}}.dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maximum-cardinality matching toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "graph file (p/e/m line format)")
        ->required();
  };
  auto add_report = [&](CLI::App* sub) {
    sub->add_option("--report", cfg.report, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
  };

  CLI::App* match = app.add_subcommand("match", "exact maximum matching");
  add_input(match);
  add_report(match);

  CLI::App* approx = app.add_subcommand("approx", "(1-eps)-approximate matching");
  add_input(approx);
  add_report(approx);
  approx->add_option("--eps", cfg.eps, "1/2^k, e.g. 1/8")->required();

  CLI::App* dist = app.add_subcommand("dist", "distance table dump");
  add_input(dist);

  CLI::App* verify = app.add_subcommand("verify", "engines vs brute oracles");
  verify->add_option("--seed", cfg.seed, "random seed");
  verify->add_option("--max-n", cfg.max_n, "largest instance size (<= 12)");
  verify->add_option("--count", cfg.count, "number of instances");

  CLI::App* bench = app.add_subcommand("bench", "op counters on random graphs");
  add_report(bench);
  bench->add_option("--seed", cfg.seed, "random seed");
  bench->add_option("--max-n", cfg.max_n, "largest instance size");
  bench->add_option("--count", cfg.count, "number of instances");

  CLI11_PARSE(app, argc, argv);
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (cfg.command == "match") return cmd_match(cfg);
    if (cfg.command == "approx") return cmd_approx(cfg);
    if (cfg.command == "dist") return cmd_dist(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    return cmd_bench(cfg);
  } catch (const std::exception& e) {
    std::cerr << "mcm: " << e.what() << "\n";
    return kError;
  }
}
