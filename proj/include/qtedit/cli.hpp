#ifndef QTEDIT_CLI_HPP
#define QTEDIT_CLI_HPP

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtedit/analysis.hpp"
#include "qtedit/io.hpp"
#include "qtedit/parallel.hpp"

namespace qtedit {

enum ExitCode : int { exit_solved = 0, exit_input_error = 1, exit_budget_exhausted = 2 };

/// Solves an already parsed instance and fills a run record. Edits in the
/// record use the original node ids even when the search ran permuted.
inline RunRecord run_instance(const Graph& input, const std::string& name, const RunConfigRecord& config,
                              bool emit_solutions, bool analyze) {
  auto [graph, perm] = permute_nodes(input, config.permutation_seed);

  SearchConfig cfg;
  cfg.bound = config.bound;
  cfg.branching = config.branching;
  cfg.all_solutions = config.all_solutions;
  cfg.max_k = config.max_k;
  cfg.time_limit_seconds = config.time_limit_seconds;
  cfg.seed = config.seed;
  cfg.threads = config.threads;
  const SearchResult result = solve_parallel(graph, cfg);

  std::vector<Solution> solutions;
  solutions.reserve(result.solutions.size());
  for (const auto& s : result.solutions) {
    Solution original;
    for (VertexPair p : s) original.push_back(perm.backward(p));
    std::sort(original.begin(), original.end());
    solutions.push_back(std::move(original));
  }
  std::sort(solutions.begin(), solutions.end());

  RunRecord rec;
  rec.instance = name;
  rec.nodes = input.node_count();
  rec.edges = input.edge_count();
  rec.config = config;
  rec.status = result.k_opt ? "solved" : "budget-exhausted";
  rec.k_opt = result.k_opt;
  rec.lower_bound = result.lower_bound;
  rec.initial_bound = result.initial_bound;
  for (const auto& s : result.per_k) rec.per_k.push_back(to_record(s));
  rec.solution_count = solutions.size();
  if (emit_solutions) {
    auto& out = rec.solutions.emplace();
    for (const auto& s : solutions) {
      auto& edits = out.emplace_back();
      for (VertexPair p : s)
        edits.push_back({p.u, p.v, input.has_edge(p) ? EditKind::deletion : EditKind::insertion});
    }
  }
  if (analyze && !solutions.empty()) rec.analysis = to_record(summarize(input, solutions));
  return rec;
}

/// Command line entry point. args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"Exact quasi-threshold editing", "qtedit"};
  app.set_version_flag("--version", "qtedit 1.0");

  std::string input;
  std::string format = "edge-list";
  std::string bound = "local-search";
  std::string branching = "most-pruned";
  RunConfigRecord config;
  int max_k = -1;
  bool emit_solutions = false, analyze = false;
  std::string output;

  app.add_option("input", input, "Instance file")->required();
  app.add_option("--format", format, "edge-list or similarity-matrix")
      ->check(CLI::IsMember({"edge-list", "similarity-matrix"}));
  app.add_option("--bound", bound, "Lower bound")
      ->check(CLI::IsMember({"basic", "update", "local-search", "min-degree"}));
  app.add_option("--branching", branching, "Branching strategy")
      ->check(CLI::IsMember({"first", "most", "most-pruned"}));
  app.add_flag("--all", config.all_solutions, "Enumerate all optimal solutions");
  app.add_option("--threads", config.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", config.seed, "Seed for the local search bound");
  app.add_option("--permutation-seed", config.permutation_seed, "Relabel nodes randomly (0 keeps ids)");
  app.add_option("--max-k", max_k, "Largest k to try")->check(CLI::NonNegativeNumber);
  app.add_option("--time-limit", config.time_limit_seconds, "Seconds")->check(CLI::PositiveNumber);
  app.add_flag("--emit-solutions", emit_solutions, "Write the edit sets");
  app.add_flag("--analyze", analyze, "Summarize the solution space");
  app.add_option("--output", output, "Write the record here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_solved;
  } catch (const CLI::CallForVersion&) {
    out << "qtedit 1.0\n";
    return exit_solved;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return exit_input_error;
  }
  config.format = format == "edge-list" ? InstanceFormat::edge_list : InstanceFormat::similarity_matrix;
  config.bound = *bound_from_string(bound);
  config.branching = *branching_from_string(branching);
  if (max_k >= 0) config.max_k = max_k;

  Graph graph(1);
  try {
    graph = parse_instance(read_file(input), config.format);
  } catch (const std::exception& e) {
    err << "error: " << input << ": " << e.what() << '\n';
    return exit_input_error;
  }

  const RunRecord rec =
      run_instance(graph, std::filesystem::path(input).stem().string(), config, emit_solutions, analyze);
  const std::string doc = nlohmann::json(rec).dump(2) + "\n";
  if (output.empty()) {
    out << doc;
  } else {
    std::ofstream f(output);
    if (!f) {
      err << "error: cannot write " << output << '\n';
      return exit_input_error;
    }
    f << doc;
  }
  return rec.k_opt ? exit_solved : exit_budget_exhausted;
}

}  // namespace qtedit

#endif  // QTEDIT_CLI_HPP
