#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pmlp/bench.hpp"
#include "pmlp/instance_io.hpp"
#include "pmlp/oracle.hpp"
#include "pmlp/solve_driver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIterationCap = 4;
constexpr int kExitVerification = 5;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pmlp::ParseError(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw pmlp::ParseError(out_path, "cannot open output file");
  out << text;
}

pmlp::ResetStrategy parse_strategy(const std::string& name) {
  if (name == "grow") return pmlp::ResetStrategy::kGrowLoop;
  if (name == "pow2") return pmlp::ResetStrategy::kPowerOfTwo;
  throw pmlp::ParseError("--strategy", "expected grow or pow2");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic interior-point LP solver with lazy projection "
               "maintenance"};
  app.require_subcommand(1);

  // --- gen ---
  auto* gen = app.add_subcommand("gen", "Generate a feasible random instance");
  std::size_t gen_n = 6, gen_d = 3;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("--n", gen_n, "number of variables");
  gen->add_option("--d", gen_d, "number of constraints");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", gen_out, "output path (default stdout)");

  // --- solve ---
  auto* solve = app.add_subcommand("solve", "Solve an instance file");
  std::string solve_path, solve_out;
  double solve_delta = 0.5, solve_a = 2.0 / 3.0;
  std::string solve_preset = "paper", solve_strategy = "grow";
  bool solve_verify = false, solve_trace = false, solve_no_timing = false;
  std::uint64_t solve_max_iters = 100000000;
  solve->add_option("instance", solve_path, "instance JSON file")->required();
  solve->add_option("--delta", solve_delta, "target accuracy (default 0.5)");
  solve->add_option("--preset", solve_preset, "paper|relaxed");
  solve->add_option("--a", solve_a, "batch-size exponent (default 0.6667)");
  solve->add_option("--strategy", solve_strategy, "grow|pow2");
  solve->add_flag("--verify", solve_verify,
                  "per-iteration assertions and oracle cross-check");
  solve->add_flag("--trace", solve_trace, "record the per-iteration trace");
  solve->add_option("--max-iters", solve_max_iters, "iteration cap");
  solve->add_flag("--no-timing", solve_no_timing,
                  "zero wall_time_ms so repeated runs are byte-identical");
  solve->add_option("--out", solve_out, "output path (default stdout)");

  // --- oracle ---
  auto* oracle = app.add_subcommand("oracle",
                                    "Brute-force optimum of a small instance");
  std::string oracle_path, oracle_out;
  oracle->add_option("instance", oracle_path, "instance JSON file")->required();
  oracle->add_option("--out", oracle_out, "output path (default stdout)");

  // --- bench ---
  auto* bench = app.add_subcommand(
      "bench", "Drive the projection maintainer with synthetic drift");
  pmlp::BenchParams bench_params;
  std::string bench_strategy = "pow2", bench_out;
  bench->add_option("--n", bench_params.n, "dimension (default 64)");
  bench->add_option("--d", bench_params.d, "constraints (default 32)");
  bench->add_option("--updates", bench_params.updates,
                    "number of updates (default 2000)");
  bench->add_option("--c", bench_params.c,
                    "per-step relative l2 drift (default 0.01)");
  bench->add_option("--eps-mp", bench_params.eps_mp,
                    "approximation band (default 0.1)");
  bench->add_option("--a", bench_params.a, "batch-size exponent");
  bench->add_option("--strategy", bench_strategy, "grow|pow2");
  bench->add_option("--seed", bench_params.seed, "drift seed");
  bench->add_option("--out", bench_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const pmlp::LpInstance inst =
          pmlp::generate_instance(gen_n, gen_d, gen_seed);
      write_output(gen_out, pmlp::instance_to_text(inst));
      return kExitOk;
    }

    if (solve->parsed()) {
      std::vector<std::string> warnings;
      const pmlp::LpInstance inst =
          pmlp::parse_instance(read_file(solve_path), &warnings);
      for (const std::string& w : warnings) {
        std::cerr << "warning: " << w << "\n";
      }
      pmlp::SolveFlags flags;
      flags.delta = solve_delta;
      flags.preset = solve_preset == "relaxed" ? pmlp::Preset::kRelaxed
                                               : pmlp::Preset::kPaper;
      if (solve_preset != "paper" && solve_preset != "relaxed") {
        throw pmlp::ParseError("--preset", "expected paper or relaxed");
      }
      flags.a = solve_a;
      flags.strategy = parse_strategy(solve_strategy);
      flags.verify = solve_verify;
      flags.trace = solve_trace;
      flags.max_iters = solve_max_iters;
      flags.suppress_timing = solve_no_timing;
      const pmlp::SolveReport report = pmlp::run_solve(inst, flags);
      write_output(solve_out, pmlp::report_to_text(report));
      return kExitOk;
    }

    if (oracle->parsed()) {
      const pmlp::LpInstance inst =
          pmlp::parse_instance(read_file(oracle_path));
      const pmlp::BruteForceResult res = pmlp::brute_force_lp(inst);
      nlohmann::json doc;
      switch (res.status) {
        case pmlp::LpStatus::kOptimal: doc["status"] = "optimal"; break;
        case pmlp::LpStatus::kInfeasible: doc["status"] = "infeasible"; break;
        case pmlp::LpStatus::kUnbounded: doc["status"] = "unbounded"; break;
      }
      if (res.status == pmlp::LpStatus::kOptimal) {
        doc["value"] = res.value;
        doc["x"] = res.x.raw();
        doc["basis"] = res.basis;
      }
      write_output(oracle_out, doc.dump(2) + "\n");
      return kExitOk;
    }

    if (bench->parsed()) {
      bench_params.strategy = parse_strategy(bench_strategy);
      const pmlp::BenchResult res = pmlp::run_drift_bench(bench_params);
      nlohmann::json doc;
      doc["n"] = bench_params.n;
      doc["d"] = bench_params.d;
      doc["updates"] = bench_params.updates;
      doc["c"] = bench_params.c;
      doc["eps_mp"] = bench_params.eps_mp;
      doc["a"] = bench_params.a;
      doc["strategy"] = bench_strategy;
      doc["seed"] = bench_params.seed;
      doc["batch_threshold"] = res.batch_threshold;
      doc["max_audit_deviation"] = res.max_audit_deviation;
      nlohmann::json counters;
      counters["updates"] = res.counters.updates;
      counters["rebuilds"] = res.counters.rebuilds;
      counters["v_resets"] = res.counters.v_resets;
      counters["sparse_updates"] = res.counters.sparse_updates;
      counters["fallbacks"] = res.counters.fallbacks;
      nlohmann::json hist = nlohmann::json::array();
      for (const auto& [k, count] : res.counters.rank_histogram) {
        hist.push_back(nlohmann::json::array({k, count}));
      }
      counters["rank_histogram"] = std::move(hist);
      doc["counters"] = std::move(counters);
      write_output(bench_out, doc.dump(2) + "\n");
      return kExitOk;
    }

    return kExitUsage;
  } catch (const pmlp::VerificationError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kExitVerification;
  } catch (const pmlp::IterationLimitError& e) {
    std::cerr << "iteration cap: " << e.what() << "\n";
    return kExitIterationCap;
  } catch (const pmlp::SingularityError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const pmlp::StepFailureError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const pmlp::RangeError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const pmlp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}
