// vpack command line: instance generation, packing, verification, oracle
// comparison, and the instrumented benchmark.
//
// Exit codes: 0 ok; 1 verification failed; 2 usage or parse error;
// 3 infeasible input; 4 internal invariant failure.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vpack/baselines.hpp"
#include "vpack/core.hpp"
#include "vpack/gen.hpp"
#include "vpack/io.hpp"
#include "vpack/oracle.hpp"
#include "vpack/pack.hpp"
#include "vpack/threedim.hpp"

namespace {

using vpack::ordered_json;

int exit_code_for(const vpack::Error& e) {
  switch (e.code()) {
    case vpack::errc::negative_weight:
    case vpack::errc::item_exceeds_capacity:
    case vpack::errc::item_exceeds_unit_capacity:
      return 3;
    case vpack::errc::internal_invariant:
      return 4;
    default:
      return 2;
  }
}

std::uint64_t elapsed_ns(const std::chrono::steady_clock::time_point& start) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(
          std::chrono::steady_clock::now() - start)
          .count());
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw vpack::Error(vpack::errc::parse_error, "cannot open '" + path + "'");
  out << text;
}

struct CommonOpts {
  std::string input;
  std::optional<double> cap_s;
  std::optional<double> cap_l;
  std::optional<double> rho;
};

void add_instance_options(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--in,in", opts.input, "instance CSV path")->required();
  cmd->add_option("--cap-s", opts.cap_s, "size capacity for raw size,load files");
  cmd->add_option("--cap-l", opts.cap_l, "load capacity for raw size,load files");
  cmd->add_option("--rho", opts.rho,
                  "weight ceiling override, must be >= the derived maximum");
}

struct AlgoRun {
  vpack::Packing packing;
  vpack::Metrics metrics;
  std::uint64_t nanos = 0;
};

AlgoRun run_algorithm(const std::string& name, const vpack::Instance& instance,
                      const vpack::PackOptions& options) {
  AlgoRun run;
  const auto start = std::chrono::steady_clock::now();
  if (name == "linear") {
    auto [packing, metrics] = vpack::pack(instance, options);
    run.packing = std::move(packing);
    run.metrics = metrics;
  } else if (name == "reference") {
    run.packing = vpack::pack_reference(instance);
  } else if (name == "ff") {
    run.packing = vpack::pack_first_fit(instance);
  } else if (name == "ffd") {
    run.packing = vpack::pack_ffd(instance);
  } else {
    throw CLI::ValidationError("--algorithm",
                               "unknown algorithm '" + name + "'");
  }
  run.nanos = elapsed_ns(start);
  run.metrics.bins_opened = run.packing.bin_count();
  return run;
}

int cmd_gen(std::size_t n, std::uint64_t seed, double rho_max,
            const std::string& dist_name, int dims, const std::string& out) {
  vpack::Dist dist{};
  if (!vpack::dist_from_string(dist_name, dist)) {
    throw CLI::ValidationError("--dist", "unknown distribution '" + dist_name + "'");
  }
  std::ostringstream csv;
  if (dims == 2) {
    const auto items = vpack::generate_items(n, seed, rho_max, dist);
    vpack::write_instance_csv(csv, items);
  } else {
    const auto items = vpack::generate_items3(n, seed, rho_max, dist);
    vpack::write_instance_csv(csv, items);
  }
  write_text(out, csv.str());
  return 0;
}

int cmd_pack(const CommonOpts& opts, const std::string& algorithm,
             bool debug_assertions, const std::string& out,
             const std::string& permuted_out) {
  const auto loaded =
      vpack::load_instance_file(opts.input, opts.cap_s, opts.cap_l, opts.rho);
  vpack::RunConfig config{opts.input, algorithm, opts.rho, debug_assertions,
                          opts.cap_s, opts.cap_l};
  vpack::PackOptions options{debug_assertions};
  ordered_json report;

  if (loaded.dims == 3) {
    if (algorithm != "linear") {
      throw CLI::ValidationError("--algorithm",
                                 "three-dimensional instances support only 'linear'");
    }
    const auto start = std::chrono::steady_clock::now();
    auto [packing, metrics] = vpack::pack3(loaded.inst3, options);
    const std::uint64_t nanos = elapsed_ns(start);
    const auto verification = vpack::verify3(loaded.inst3, packing);
    report = vpack::make_run_report3(config, loaded.inst3, packing, metrics,
                                     verification, nanos);
    if (!permuted_out.empty()) {
      std::ostringstream csv;
      std::vector<vpack::Item3> permuted;
      permuted.reserve(packing.order.size());
      for (std::size_t idx : packing.order) permuted.push_back(loaded.inst3.items[idx]);
      vpack::write_instance_csv(csv, permuted);
      write_text(permuted_out, csv.str());
    }
  } else {
    AlgoRun run = run_algorithm(algorithm, loaded.inst2, options);
    const auto verification = vpack::verify(loaded.inst2, run.packing);
    report = vpack::make_run_report(config, loaded.inst2, run.packing,
                                    run.metrics, verification, run.nanos);
    if (!permuted_out.empty()) {
      std::ostringstream csv;
      std::vector<vpack::Item> permuted;
      permuted.reserve(run.packing.order.size());
      for (std::size_t idx : run.packing.order) permuted.push_back(loaded.inst2.items[idx]);
      vpack::write_instance_csv(csv, permuted);
      write_text(permuted_out, csv.str());
    }
  }
  write_text(out, report.dump(2) + "\n");
  return 0;
}

int cmd_verify(const CommonOpts& opts, const std::string& report_path,
               std::optional<int> reference_bins) {
  std::ifstream report_in(report_path);
  if (!report_in) {
    throw vpack::Error(vpack::errc::parse_error,
                       "cannot open '" + report_path + "'");
  }
  ordered_json report_json;
  try {
    report_in >> report_json;
  } catch (const nlohmann::json::exception& e) {
    throw vpack::Error(vpack::errc::parse_error,
                       std::string("bad report JSON: ") + e.what());
  }

  // Precedence for the weight ceiling: explicit flag, then the ceiling the
  // report ran with, then the derived maximum.
  std::optional<double> rho = opts.rho;
  if (!rho && report_json.contains("rhoOverridden") &&
      report_json["rhoOverridden"].is_boolean() &&
      report_json["rhoOverridden"].get<bool>() && report_json.contains("rho")) {
    rho = report_json["rho"].get<double>();
  }
  const auto loaded =
      vpack::load_instance_file(opts.input, opts.cap_s, opts.cap_l, rho);

  if (loaded.dims == 3) {
    const auto packing =
        vpack::packing_from_report(report_json, loaded.inst3.items.size());
    const auto verification = vpack::verify3(loaded.inst3, packing);
    ordered_json out;
    out["feasible"] = verification.feasible;
    ordered_json bins = ordered_json::array();
    for (const auto& bin : verification.per_bin) {
      bins.push_back({{"S", bin.s_sum}, {"L", bin.l_sum}, {"T", bin.t_sum}});
    }
    out["perBin"] = std::move(bins);
    std::cout << out.dump(2) << "\n";
    return verification.feasible ? 0 : 1;
  }

  const auto packing =
      vpack::packing_from_report(report_json, loaded.inst2.items.size());
  const auto verification = vpack::verify(loaded.inst2, packing, reference_bins);
  std::cout << vpack::verification_to_json(verification).dump(2) << "\n";
  const bool ok = verification.feasible &&
                  verification.case_class != vpack::CaseClass::violation &&
                  verification.bound_ok.value_or(true);
  return ok ? 0 : 1;
}

int cmd_compare(const CommonOpts& opts, std::vector<std::string> algorithms,
                bool with_oracle, int oracle_limit) {
  const auto loaded =
      vpack::load_instance_file(opts.input, opts.cap_s, opts.cap_l, opts.rho);
  if (loaded.dims != 2) {
    throw CLI::ValidationError("compare", "compare supports 2-D instances only");
  }
  const vpack::Instance& instance = loaded.inst2;
  const int lb = vpack::lower_bound(instance);

  std::optional<vpack::OptResult> opt;
  if (with_oracle) {
    opt = vpack::optimal_bins(instance, oracle_limit);
  }

  std::cout << std::left << std::setw(11) << "algorithm" << std::right
            << std::setw(7) << "q" << std::setw(8) << "q/LB" << std::setw(10)
            << "swaps" << std::setw(12) << "advances" << std::setw(12)
            << "iterations";
  if (with_oracle) std::cout << std::setw(7) << "C*" << std::setw(13) << "certificate";
  std::cout << "\n";

  for (const std::string& name : algorithms) {
    AlgoRun run = run_algorithm(name, instance, {});
    const auto verification = vpack::verify(instance, run.packing);
    if (!verification.feasible) {
      throw vpack::Error(vpack::errc::internal_invariant,
                         "algorithm '" + name + "' produced an infeasible packing");
    }
    const std::size_t q = run.packing.bin_count();
    std::cout << std::left << std::setw(11) << name << std::right << std::setw(7)
              << q;
    std::ostringstream ratio;
    if (lb > 0) ratio << std::fixed << std::setprecision(2)
                      << static_cast<double>(q) / lb;
    else ratio << "-";
    std::cout << std::setw(8) << ratio.str() << std::setw(10) << run.metrics.swaps
              << std::setw(12) << run.metrics.cursor_advances << std::setw(12)
              << run.metrics.loop_iterations;
    if (with_oracle) {
      std::cout << std::setw(7) << opt->bins;
      std::string cert = "n/a";
      if (instance.rho < 1.0) {
        const double bound = opt->bins / (1.0 - instance.rho) + 1.0;
        cert = static_cast<double>(q) <= bound + vpack::kEps ? "PASS" : "FAIL";
      }
      std::cout << std::setw(13) << cert;
    }
    std::cout << "\n";
  }
  return 0;
}

int cmd_bench(const std::vector<std::size_t>& sizes, std::uint64_t seed,
              const std::string& dist_name, double rho_max, int repeats,
              bool debug_assertions, bool as_json) {
  vpack::Dist dist{};
  if (!vpack::dist_from_string(dist_name, dist)) {
    throw CLI::ValidationError("--dist", "unknown distribution '" + dist_name + "'");
  }
  ordered_json rows = ordered_json::array();
  if (!as_json) {
    std::cout << std::right << std::setw(9) << "n" << std::setw(9) << "q"
              << std::setw(14) << "median_ns" << std::setw(10) << "ns/item"
              << std::setw(10) << "swaps" << std::setw(12) << "advances"
              << std::setw(12) << "iterations\n";
  }
  for (std::size_t n : sizes) {
    const auto pristine = vpack::generate_items(n, seed, rho_max, dist);
    double rho = 0.0;
    for (const auto& it : pristine) rho = std::max({rho, it.s, it.l});

    std::vector<std::uint64_t> times;
    vpack::Metrics metrics;
    std::size_t q = 0;
    std::vector<vpack::Item> work;
    std::vector<std::size_t> boundaries;
    for (int r = 0; r < repeats; ++r) {
      work = pristine;
      const auto start = std::chrono::steady_clock::now();
      metrics = vpack::pack_in_place(work, rho, boundaries, {debug_assertions});
      times.push_back(elapsed_ns(start));
      q = boundaries.size() - 1;
      const bool budgets_ok = metrics.swaps <= n + q &&
                              metrics.cursor_advances <= 2 * n &&
                              metrics.loop_iterations <= 4 * n;
      if (!budgets_ok) {
        throw vpack::Error(vpack::errc::internal_invariant,
                           "operation budget exceeded at n=" + std::to_string(n));
      }
    }
    std::sort(times.begin(), times.end());
    const std::uint64_t median = times[times.size() / 2];

    if (as_json) {
      ordered_json row;
      row["n"] = n;
      row["q"] = q;
      row["medianNanos"] = median;
      row["swaps"] = metrics.swaps;
      row["cursorAdvances"] = metrics.cursor_advances;
      row["loopIterations"] = metrics.loop_iterations;
      rows.push_back(std::move(row));
    } else {
      std::cout << std::setw(9) << n << std::setw(9) << q << std::setw(14)
                << median << std::setw(10)
                << (n == 0 ? 0 : median / std::max<std::uint64_t>(n, 1))
                << std::setw(10) << metrics.swaps << std::setw(12)
                << metrics.cursor_advances << std::setw(12)
                << metrics.loop_iterations << "\n";
    }
  }
  if (as_json) std::cout << rows.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-weight vector bin packing toolkit"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random instance CSV");
  std::size_t gen_n = 0;
  std::uint64_t gen_seed = 1;
  double gen_rho_max = 0.5;
  std::string gen_dist = "uniform";
  int gen_dims = 2;
  std::string gen_out = "-";
  gen->add_option("--n", gen_n, "item count")->required();
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--rho-max", gen_rho_max, "weight ceiling in (0, 1]")
      ->check(CLI::Range(1e-12, 1.0));
  gen->add_option("--dist", gen_dist,
                  "uniform|anticorrelated|correlated|s-only|l-only");
  gen->add_option("--dims", gen_dims, "2 or 3")->check(CLI::IsMember({2, 3}));
  gen->add_option("--out", gen_out, "output path, - for stdout");

  // pack
  auto* pack_cmd = app.add_subcommand("pack", "pack an instance and report");
  CommonOpts pack_opts;
  add_instance_options(pack_cmd, pack_opts);
  std::string pack_algorithm = "linear";
  bool pack_debug = false;
  std::string pack_out = "-";
  std::string pack_permuted_out;
  pack_cmd->add_option("--algorithm", pack_algorithm, "linear|reference|ff|ffd");
  pack_cmd->add_flag("--debug-assertions", pack_debug,
                     "enable engine invariant checks");
  pack_cmd->add_option("--out", pack_out, "report path, - for stdout");
  pack_cmd->add_option("--permuted-out", pack_permuted_out,
                       "also write the permuted instance CSV");

  // verify
  auto* verify_cmd =
      app.add_subcommand("verify", "check a packing report against an instance");
  CommonOpts verify_opts;
  add_instance_options(verify_cmd, verify_opts);
  std::string verify_report;
  std::optional<int> verify_reference;
  verify_cmd->add_option("report", verify_report, "report or boundaries JSON")
      ->required();
  verify_cmd->add_option("--reference-bins", verify_reference,
                         "bin count for the bound certificate");

  // compare
  auto* compare_cmd =
      app.add_subcommand("compare", "run several algorithms on one instance");
  CommonOpts compare_opts;
  add_instance_options(compare_cmd, compare_opts);
  std::vector<std::string> compare_algorithms{"linear", "reference", "ff", "ffd"};
  bool compare_oracle = false;
  int compare_limit = vpack::kDefaultOracleLimit;
  compare_cmd->add_option("--algorithms", compare_algorithms,
                          "subset of linear,reference,ff,ffd")
      ->delimiter(',');
  compare_cmd->add_flag("--oracle", compare_oracle, "also compute the exact optimum");
  compare_cmd->add_option("--oracle-limit", compare_limit,
                          "max n for the exact search");

  // bench
  auto* bench_cmd =
      app.add_subcommand("bench", "time the in-place packer across sizes");
  std::vector<std::size_t> bench_sizes;
  std::uint64_t bench_seed = 1;
  std::string bench_dist = "uniform";
  double bench_rho_max = 0.5;
  int bench_repeats = 5;
  bool bench_debug = false;
  bool bench_json = false;
  bench_cmd->add_option("--sizes", bench_sizes, "comma-separated item counts")
      ->delimiter(',')
      ->required();
  bench_cmd->add_option("--seed", bench_seed, "random seed");
  bench_cmd->add_option("--dist", bench_dist, "instance family");
  bench_cmd->add_option("--rho-max", bench_rho_max, "weight ceiling in (0, 1]")
      ->check(CLI::Range(1e-12, 1.0));
  bench_cmd->add_option("--repeats", bench_repeats, "runs per size")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_flag("--debug-assertions", bench_debug,
                      "enable engine invariant checks");
  bench_cmd->add_flag("--json", bench_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      return cmd_gen(gen_n, gen_seed, gen_rho_max, gen_dist, gen_dims, gen_out);
    }
    if (*pack_cmd) {
      return cmd_pack(pack_opts, pack_algorithm, pack_debug, pack_out,
                      pack_permuted_out);
    }
    if (*verify_cmd) {
      return cmd_verify(verify_opts, verify_report, verify_reference);
    }
    if (*compare_cmd) {
      return cmd_compare(compare_opts, compare_algorithms, compare_oracle,
                         compare_limit);
    }
    if (*bench_cmd) {
      return cmd_bench(bench_sizes, bench_seed, bench_dist, bench_rho_max,
                       bench_repeats, bench_debug, bench_json);
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const vpack::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
