// fuzzyip: solve, transform and inspect fuzzy integer programs.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "fuzzyip/fuzzyip.hpp"

namespace {

using namespace fuzzyip;

struct Options {
  std::string problem_file;
  std::string method = "boxsearch";
  std::string ranking;
  std::string bound_L;
  std::uint64_t guard = kDefaultGuardLimit;
  std::string format = "text";
  bool stats = false;
  unsigned lr_k = 0;
  std::string output;
};

RunConfig to_config(const Options& o) {
  RunConfig c;
  if (o.method == "brute") c.method = Method::Brute;
  else if (o.method == "genfun") c.method = Method::Genfun;
  if (!o.ranking.empty()) c.ranking = parse_ranking_list(o.ranking);
  if (!o.bound_L.empty()) {
    auto L = parse_rational(o.bound_L);
    if (!L || !L->is_integer()) throw ValidationError("--bound-L must be an integer");
    c.bound_L = L->num();
  }
  c.guard = o.guard;
  if (o.format == "json") c.format = Format::Json;
  else if (o.format == "csv") c.format = Format::Csv;
  c.stats = o.stats;
  if (o.lr_k > 0) c.lr_k = o.lr_k;
  return c;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("problem", o.problem_file, "problem file (JSON)")->required();
  cmd->add_option("--method", o.method, "brute | boxsearch | genfun")
      ->check(CLI::IsMember({"brute", "boxsearch", "genfun"}));
  cmd->add_option("--ranking", o.ranking, "alpha levels, e.g. 1/2,1");
  cmd->add_option("--lr-k", o.lr_k, "approximate LR coefficients with k nodes")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--bound-L", o.bound_L, "override the box bound L");
  cmd->add_option("--guard", o.guard, "maximum lattice points per enumerated box")
      ->check(CLI::PositiveNumber);
}

// Runs fn with stdout or the --output file as the data stream.
template <class Fn>
int with_output(const std::string& path, Fn&& fn) {
  if (path.empty()) return fn(std::cout);
  std::ofstream file(path);
  if (!file) {
    std::cerr << "error: cannot write " << path << "\n";
    return exit_code::kValidation;
  }
  return fn(file);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuzzy integer programming toolkit"};
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "enumerate all nondominated solutions");
  add_common(solve, o);
  solve->add_option("--format", o.format, "text | json | csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  solve->add_flag("--stats", o.stats, "print search statistics");
  solve->add_option("--output", o.output, "write results to this file");

  auto* transform = app.add_subcommand("transform", "print the crisp multiobjective program");
  add_common(transform, o);
  transform->add_option("--format", o.format, "text | json")->check(CLI::IsMember({"text", "json"}));
  transform->add_option("--output", o.output, "write results to this file");

  auto* plot = app.add_subcommand("plot-data", "write CSV inputs for plotting");
  add_common(plot, o);
  o.output = "";
  plot->add_option("--output", o.output, "output directory (default: current directory)");

  auto* demo = app.add_subcommand("gf-demo", "show interval and box generating functions");
  std::int64_t N = 5;
  std::string box_text = "0:2,0:2,0:1";
  demo->add_option("--interval", N, "N for the interval [0,N]")->check(CLI::NonNegativeNumber);
  demo->add_option("--box", box_text, "box as lo:hi,lo:hi,...");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_code::kValidation;
  }

  if (demo->parsed()) {
    std::vector<Interval> dims;
    std::stringstream ss(box_text);
    std::string part;
    try {
      while (std::getline(ss, part, ',')) {
        const auto colon = part.find(':');
        if (colon == std::string::npos) throw ValidationError("--box entries look like lo:hi");
        dims.push_back({std::stoll(part.substr(0, colon)), std::stoll(part.substr(colon + 1))});
      }
      return cmd_gf_demo(N, HyperBox(dims), std::cout, std::cerr);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return exit_code::kValidation;
    }
  }

  RunConfig cfg;
  ParsedProblem problem{MoilpProblem{}, {}, false};
  try {
    cfg = to_config(o);
    problem = parse_problem(o.problem_file);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::kValidation;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::kValidation;
  }

  if (solve->parsed()) {
    return with_output(o.output, [&](std::ostream& out) { return cmd_solve(cfg, problem, out, std::cerr); });
  }
  if (transform->parsed()) {
    return with_output(o.output,
                       [&](std::ostream& out) { return cmd_transform(cfg, problem, out, std::cerr); });
  }
  return cmd_plot_data(cfg, problem, o.output.empty() ? "." : o.output, std::cout, std::cerr);
}
