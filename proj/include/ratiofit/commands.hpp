#pragma once

// End-to-end pipeline behind the command-line tool: manifest -> aligned
// market data -> realized / implied variances -> ratio series -> fits and
// statistics -> report files.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ratiofit/fitting.hpp"
#include "ratiofit/ingest.hpp"
#include "ratiofit/report.hpp"
#include "ratiofit/volatility.hpp"

namespace ratiofit {

struct PipelineOptions {
  std::string index = "vix";  // vix | vxo
  std::optional<Date> from;   // overrides the manifest range
  std::optional<Date> to;
  VolatilityConfig volatility;
  std::uint64_t seed = 0;
};

/// Underlying closes and index levels on their common calendar.
struct MarketData {
  PriceSeries prices;
  IndexSeries index;
  std::string index_name;  // "VIX" or "VXO"
  std::size_t dropped_prices = 0;
  std::size_t dropped_index = 0;
};

MarketData load_market_data(const Manifest& manifest, const PipelineOptions& options);

struct RatioInputs {
  RealizedVariances rv;
  DailySeries implied;
  std::string index_name;
};

RatioInputs prepare_ratio_inputs(const MarketData& data, const VolatilityConfig& config);

/// Paper-style label of a ratio, e.g. "nRV^2/VIX^2"; inverse flips it.
std::string ratio_label(RatioMode mode, const std::string& index_name, bool inverse);

/// 4x4 Pearson matrix over RV^2 (preceding), nRV^2 (next), IV^2 and rRV^2
/// (next-month RV^2 on shuffled dates), on dates where all are defined.
LabeledMatrix pcc_matrix(const RatioInputs& in, std::uint64_t seed);

/// 6x6 two-sample KS matrix over RV^2/IV^2, nRV^2/IV^2, RV^2/nRV^2,
/// rRV^2/rIV^2, rRV^2/rRV^2 and nRV^2/RV^2. The pairs the published tables
/// leave blank are absent.
LabeledMatrix ks_matrix(const RatioInputs& in, std::uint64_t seed, bool allow_scaling = true);

struct FitCommand {
  std::optional<std::filesystem::path> manifest;
  std::optional<std::filesystem::path> data;  // sample CSV instead of market data
  RatioMode mode = RatioMode::Predicted;
  bool invert = false;
  bool no_scale = false;
  PipelineOptions pipeline;
  FitConfig fit;
  std::filesystem::path out_dir = ".";
  std::string timestamp;  // goes to metadata.generated_at only
};

struct MatrixCommand {
  std::filesystem::path manifest;
  PipelineOptions pipeline;
  bool no_scale = false;
  std::filesystem::path out_dir = ".";
};

struct SyntheticCommand {
  Family family = Family::BetaPrime;
  std::vector<double> params;  // internal storage order
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = ".";
};

/// Each writes its files into out_dir (created if needed) and returns the
/// bundle / matrix it wrote. Errors propagate as exceptions.
ReportBundle run_fit(const FitCommand& cmd);
LabeledMatrix run_corr(const MatrixCommand& cmd);
LabeledMatrix run_ksmatrix(const MatrixCommand& cmd);
std::vector<double> run_synthetic(const SyntheticCommand& cmd);

/// Reads a one-column sample CSV with a header line (as written by
/// run_synthetic).
std::vector<double> read_sample_csv(const std::filesystem::path& path);

}  // namespace ratiofit
