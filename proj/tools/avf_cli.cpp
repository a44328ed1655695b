// Command-line front end: run single experiments from presets or config
// files, list the problem library, sweep timesteps for convergence orders,
// and compare schemes side by side.
//
// Exit codes: 0 success, 2 configuration error, 3 implicit-solver
// non-convergence (partial output is kept), 4 output I/O failure.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "avf/io.hpp"
#include "avf/run.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitIo = 4;

std::string short_real(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto comma = s.find(',', start);
    if (comma == std::string::npos) comma = s.size();
    std::string piece = s.substr(start, comma - start);
    if (!piece.empty()) out.push_back(piece);
    start = comma + 1;
  }
  return out;
}

std::vector<double> parse_dts(const std::string& arg) {
  std::vector<double> dts;
  for (const std::string& piece : split_commas(arg)) {
    try {
      std::size_t used = 0;
      double v = std::stod(piece, &used);
      if (used != piece.size()) throw std::invalid_argument("");
      dts.push_back(v);
    } catch (const std::exception&) {
      throw avf::ConfigError("--dts: '" + piece + "' is not a number");
    }
  }
  return dts;
}

void print_run_summary(const avf::ExperimentConfig& cfg, const avf::RunResult& res) {
  std::printf("%s  scheme=%s  dt=%s  steps=%ld  (%.2fs)\n", cfg.problem.c_str(),
              std::string(avf::run_scheme_name(cfg.scheme)).c_str(), short_real(cfg.dt).c_str(),
              cfg.steps, res.runtime_seconds);
  for (std::size_t m = 0; m < res.monitor_names.size(); ++m)
    std::printf("  %-12s max drift %.3e  (rel %.3e)\n", res.monitor_names[m].c_str(),
                res.drifts[m].max_abs_drift, res.drifts[m].max_rel_drift);
  if (res.status != avf::RunStatus::Ok)
    std::printf("  FAILED: %s\n", res.message.c_str());
  std::printf("  wrote %s\n", cfg.out_dir.c_str());
}

int cmd_run(const std::string& source, const std::vector<std::string>& sets) {
  avf::ExperimentConfig cfg = avf::resolve_config(source, sets);
  avf::RunResult res = avf::run_experiment(cfg);
  print_run_summary(cfg, res);
  return res.status == avf::RunStatus::Ok ? kExitOk : kExitNonConvergence;
}

int cmd_list() {
  std::printf("problems:\n");
  for (const auto& info : avf::problem_catalog()) {
    std::string defaults;
    for (const auto& [k, v] : info.defaults) {
      if (!defaults.empty()) defaults += ", ";
      defaults += k + "=" + short_real(v);
    }
    std::printf("  %-22s %s\n", info.name.c_str(), info.summary.c_str());
    std::printf("  %-22s defaults: %s%s\n", "", defaults.c_str(),
                info.random_data ? "; uses seed" : "");
  }
  std::printf("presets:\n");
  for (const auto& name : avf::preset_names()) std::printf("  %s\n", name.c_str());
  return kExitOk;
}

int cmd_sweep(const std::string& source, const std::string& dts_arg,
              const std::vector<std::string>& sets) {
  avf::ExperimentConfig cfg = avf::resolve_config(source, sets);
  avf::SweepResult sweep = avf::run_sweep(cfg, parse_dts(dts_arg));
  std::printf("%s  scheme=%s  t_end=%s\n", cfg.problem.c_str(),
              std::string(avf::run_scheme_name(cfg.scheme)).c_str(),
              short_real(cfg.dt * double(cfg.steps)).c_str());
  bool all_ok = true;
  for (std::size_t i = 0; i < sweep.dts.size(); ++i) {
    std::printf("  dt=%-12s error=%.6e\n", short_real(sweep.dts[i]).c_str(), sweep.errors[i]);
    all_ok = all_ok && std::isfinite(sweep.errors[i]);
  }
  std::printf("  observed order: %.3f%s\n", sweep.order,
              sweep.order_reliable ? "" : "  (unreliable)");
  std::printf("  wrote %s\n", cfg.out_dir.c_str());
  return all_ok ? kExitOk : kExitNonConvergence;
}

int cmd_compare(const std::string& source, const std::string& schemes_arg, bool with_reference,
                const std::vector<std::string>& sets) {
  avf::ExperimentConfig cfg = avf::resolve_config(source, sets);
  std::vector<std::string> schemes = split_commas(schemes_arg);
  avf::CompareResult cmp = avf::run_compare(cfg, schemes, with_reference);
  bool all_ok = true;
  for (std::size_t i = 0; i < cmp.runs.size(); ++i) {
    std::printf("-- %s --\n", cmp.schemes[i].c_str());
    avf::ExperimentConfig shown = cfg;
    shown.scheme = avf::run_scheme_from_name(cmp.schemes[i]);
    shown.out_dir = cfg.out_dir + "/" + cmp.schemes[i];
    print_run_summary(shown, cmp.runs[i]);
    all_ok = all_ok && cmp.runs[i].status == avf::RunStatus::Ok;
  }
  return all_ok ? kExitOk : kExitNonConvergence;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structure-preserving time integration workbench"};
  app.require_subcommand(1);

  std::string run_source;
  std::vector<std::string> run_sets;
  auto* run = app.add_subcommand("run", "run one experiment from a preset or a config file");
  run->add_option("config", run_source, "preset name or config file path")->required();
  run->add_option("--set", run_sets, "override a config key, e.g. --set dt=0.005");

  app.add_subcommand("list-problems", "list the problem library and the named presets");

  std::string sweep_source, sweep_dts;
  std::vector<std::string> sweep_sets;
  auto* sweep = app.add_subcommand("sweep", "re-run at several timesteps and fit the error order");
  sweep->add_option("config", sweep_source, "preset name or config file path")->required();
  sweep->add_option("--dts", sweep_dts, "comma-separated timesteps, e.g. 0.1,0.05,0.025")
      ->required();
  sweep->add_option("--set", sweep_sets, "override a config key");

  std::string cmp_source, cmp_schemes = "avf,midpoint";
  bool cmp_reference = false;
  std::vector<std::string> cmp_sets;
  auto* cmp = app.add_subcommand("compare", "run the same problem under several schemes");
  cmp->add_option("config", cmp_source, "preset name or config file path")->required();
  cmp->add_option("--schemes", cmp_schemes, "comma-separated scheme list (default avf,midpoint)");
  cmp->add_flag("--reference", cmp_reference, "also write error-vs-reference series");
  cmp->add_option("--set", cmp_sets, "override a config key");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (run->parsed()) return cmd_run(run_source, run_sets);
    if (sweep->parsed()) return cmd_sweep(sweep_source, sweep_dts, sweep_sets);
    if (cmp->parsed()) return cmd_compare(cmp_source, cmp_schemes, cmp_reference, cmp_sets);
    return cmd_list();
  } catch (const avf::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const avf::NonConvergence& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNonConvergence;
  } catch (const avf::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
}
