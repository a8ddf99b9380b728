// ratiofit: fit / corr / ksmatrix / synthetic.
// Exit codes: 0 ok, 1 data or numerical failure, 2 usage error.

#include <chrono>
#include <ctime>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ratiofit/commands.hpp"
#include "ratiofit/error.hpp"

namespace {

using namespace ratiofit;

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct PipelineFlags {
  std::string index = "vix";
  std::string from, to;
  std::string rescale = "none";
  bool non_overlapping = false;
  std::uint64_t seed = 0;

  void attach(CLI::App* app) {
    app->add_option("--index", index, "implied-volatility index")->check(CLI::IsMember({"vix", "vxo"}));
    app->add_option("--from", from, "first date, YYYY-MM-DD");
    app->add_option("--to", to, "last date, YYYY-MM-DD");
    app->add_option("--rescale", rescale, "realized-variance horizon rescaling")
        ->check(CLI::IsMember({"none", "calendar"}));
    app->add_flag("--non-overlapping", non_overlapping, "one ratio per month instead of per day");
    app->add_option("--seed", seed, "seed for the random pairings");
  }

  PipelineOptions resolve() const {
    PipelineOptions o;
    o.index = index;
    try {
      if (!from.empty()) o.from = parse_date(from);
      if (!to.empty()) o.to = parse_date(to);
    } catch (const ParseError& e) {
      throw UsageError(e.what());
    }
    o.volatility.rescale = rescale == "calendar" ? Rescale::Calendar : Rescale::None;
    o.volatility.rolling = !non_overlapping;
    o.seed = seed;
    return o;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fit parametric distributions to realized/implied variance ratios"};
  app.require_subcommand(1);

  // fit
  auto* fit = app.add_subcommand("fit", "fit all seven families to a ratio series and its inverse");
  std::string fit_manifest, fit_data, mode = "predicted", fit_out = ".";
  bool invert = false, fit_no_scale = false;
  PipelineFlags fit_flags;
  FitConfig fit_config;
  fit->add_option("--manifest", fit_manifest, "data manifest");
  fit->add_option("--data", fit_data, "one-column sample CSV used instead of market data");
  fit->add_option("--mode", mode, "ratio series")
      ->check(CLI::IsMember({"predicted", "preceding", "adjacent", "random"}));
  fit->add_flag("--invert", invert, "swap the series and its reciprocal");
  fit->add_flag("--no-scale", fit_no_scale, "do not rescale series to unit mean");
  fit->add_option("--out", fit_out, "output directory");
  fit->add_option("--max-iterations", fit_config.max_iterations, "Nelder-Mead iterations per run");
  fit->add_option("--restarts", fit_config.restarts, "Nelder-Mead restarts");
  fit_flags.attach(fit);

  // corr / ksmatrix
  auto* corr = app.add_subcommand("corr", "Pearson correlation matrix of variance series");
  auto* ksm = app.add_subcommand("ksmatrix", "two-sample KS matrix of ratio series");
  std::string corr_manifest, corr_out = ".", ksm_manifest, ksm_out = ".";
  bool ksm_no_scale = false;
  PipelineFlags corr_flags, ksm_flags;
  corr->add_option("--manifest", corr_manifest, "data manifest")->required();
  corr->add_option("--out", corr_out, "output directory");
  corr_flags.attach(corr);
  ksm->add_option("--manifest", ksm_manifest, "data manifest")->required();
  ksm->add_option("--out", ksm_out, "output directory");
  ksm->add_flag("--no-scale", ksm_no_scale, "do not rescale series to unit mean");
  ksm_flags.attach(ksm);

  // synthetic
  auto* syn = app.add_subcommand("synthetic", "write a seeded sample from a distribution");
  std::string syn_family;
  std::vector<double> syn_params;
  std::size_t syn_n = 0;
  std::uint64_t syn_seed = 0;
  std::string syn_out = ".";
  syn->add_option("--family", syn_family, "family name, e.g. BP or Gamma")->required();
  syn->add_option("--params", syn_params, "parameters in storage order, e.g. p q beta")
      ->required()
      ->delimiter(',');
  syn->add_option("-n,--n", syn_n, "sample size")->required();
  syn->add_option("--seed", syn_seed, "seed");
  syn->add_option("--out", syn_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*fit) {
      FitCommand cmd;
      if (!fit_manifest.empty()) cmd.manifest = fit_manifest;
      if (!fit_data.empty()) cmd.data = fit_data;
      cmd.mode = parse_ratio_mode(mode);
      cmd.invert = invert;
      cmd.no_scale = fit_no_scale;
      cmd.pipeline = fit_flags.resolve();
      cmd.fit = fit_config;
      cmd.out_dir = fit_out;
      cmd.timestamp = utc_now();
      const auto bundle = run_fit(cmd);
      std::cout << "wrote table.json, table.txt, hist.csv, curves.csv to " << fit_out << " (n = "
                << bundle.metadata.n << ")\n";
    } else if (*corr) {
      MatrixCommand cmd{corr_manifest, corr_flags.resolve(), false, corr_out};
      run_corr(cmd);
      std::cout << "wrote pcc.csv, pcc.txt to " << corr_out << "\n";
    } else if (*ksm) {
      MatrixCommand cmd{ksm_manifest, ksm_flags.resolve(), ksm_no_scale, ksm_out};
      run_ksmatrix(cmd);
      std::cout << "wrote ksmatrix.csv, ksmatrix.txt to " << ksm_out << "\n";
    } else if (*syn) {
      SyntheticCommand cmd;
      try {
        cmd.family = parse_family(syn_family);
      } catch (const DomainError& e) {
        throw UsageError(e.what());
      }
      cmd.params = syn_params;
      cmd.n = syn_n;
      cmd.seed = syn_seed;
      cmd.out_dir = syn_out;
      run_synthetic(cmd);
      std::cout << "wrote sample.csv, spec.json to " << syn_out << "\n";
    }
  } catch (const UsageError& e) {
    std::cerr << "ratiofit: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ratiofit: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
