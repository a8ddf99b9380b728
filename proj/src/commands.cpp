#include "ratiofit/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "ratiofit/error.hpp"
#include "ratiofit/format.hpp"
#include "ratiofit/gof.hpp"
#include "ratiofit/rng.hpp"

namespace ratiofit {
namespace {

std::ofstream open_out(const std::filesystem::path& dir, const char* name) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / name);
  if (!out) throw DataError("cannot write " + (dir / name).string());
  return out;
}

// Values of (dates, values) at each of `want`, which must be a subset.
std::vector<double> values_on(const std::vector<Date>& want, const std::vector<Date>& dates,
                              const std::vector<double>& values) {
  std::vector<double> out;
  out.reserve(want.size());
  std::size_t j = 0;
  for (const Date& d : want) {
    while (j < dates.size() && dates[j] < d) ++j;
    if (j == dates.size() || dates[j] != d) throw DataError("internal: date missing from series");
    out.push_back(values[j]);
  }
  return out;
}

std::vector<Date> common_dates(const std::vector<Date>& a, const std::vector<Date>& b) {
  std::vector<Date> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string config_string(const FitCommand& cmd, bool unit_mean) {
  std::ostringstream s;
  s << "mode=" << ratio_mode_name(cmd.mode) << ";index=" << cmd.pipeline.index
    << ";invert=" << cmd.invert << ";unit_mean=" << unit_mean << ";seed=" << cmd.pipeline.seed
    << ";horizon=" << cmd.pipeline.volatility.horizon
    << ";annualization=" << format_number(cmd.pipeline.volatility.annualization)
    << ";rescale=" << (cmd.pipeline.volatility.rescale == Rescale::Calendar ? "calendar" : "none")
    << ";rolling=" << cmd.pipeline.volatility.rolling << ";max_iterations=" << cmd.fit.max_iterations
    << ";tol=" << format_number(cmd.fit.convergence_tol) << ";restarts=" << cmd.fit.restarts;
  if (cmd.pipeline.from) s << ";from=" << format_date(*cmd.pipeline.from);
  if (cmd.pipeline.to) s << ";to=" << format_date(*cmd.pipeline.to);
  if (cmd.data) s << ";data=" << cmd.data->filename().string();
  return s.str();
}

}  // namespace

MarketData load_market_data(const Manifest& manifest, const PipelineOptions& options) {
  std::optional<std::filesystem::path> index_path;
  std::string index_name;
  if (options.index == "vix") {
    index_path = manifest.vix;
    index_name = "VIX";
  } else if (options.index == "vxo") {
    index_path = manifest.vxo;
    index_name = "VXO";
  } else {
    throw UsageError("unknown index '" + options.index + "' (expected vix or vxo)");
  }
  if (!index_path) throw UsageError("manifest has no " + options.index + " entry");

  const Date from = options.from.value_or(manifest.from);
  const Date to = options.to.value_or(manifest.to);
  const auto prices = restrict_dates(load_price_csv(manifest.spx, manifest.spx_column), from, to);
  const auto index = restrict_dates(load_index_csv(*index_path, manifest.index_column), from, to);
  if (prices.empty() || index.empty()) {
    throw DataError("no observations between " + format_date(from) + " and " + format_date(to));
  }
  auto aligned = align(prices, index);
  if (aligned.dropped_a + aligned.dropped_b > 0) {
    std::clog << "align: dropped " << aligned.dropped_a << " price dates and " << aligned.dropped_b
              << " " << index_name << " dates without a counterpart\n";
  }
  MarketData md;
  md.prices = std::move(aligned.a);
  md.index = std::move(aligned.b);
  md.index_name = index_name;
  md.dropped_prices = aligned.dropped_a;
  md.dropped_index = aligned.dropped_b;
  return md;
}

RatioInputs prepare_ratio_inputs(const MarketData& data, const VolatilityConfig& config) {
  return {realized_variances(data.prices, config), implied_variance(data.index), data.index_name};
}

std::string ratio_label(RatioMode mode, const std::string& index_name, bool inverse) {
  const std::string iv = index_name + "^2";
  std::string num, den;
  switch (mode) {
    case RatioMode::Predicted: num = "nRV^2"; den = iv; break;
    case RatioMode::Preceding: num = "RV^2"; den = iv; break;
    case RatioMode::AdjacentRV: num = "nRV^2"; den = "RV^2"; break;
    case RatioMode::RandomPairing: num = "rRV^2"; den = "r" + iv; break;
  }
  return inverse ? den + "/" + num : num + "/" + den;
}

LabeledMatrix pcc_matrix(const RatioInputs& in, std::uint64_t seed) {
  const auto dates = common_dates(common_dates(in.rv.forward.dates, in.rv.backward.dates), in.implied.dates);
  if (dates.size() < 3) throw DataError("pcc_matrix: fewer than three common dates");
  const auto rv = values_on(dates, in.rv.backward.dates, in.rv.backward.rv2);
  const auto nrv = values_on(dates, in.rv.forward.dates, in.rv.forward.rv2);
  const auto iv = values_on(dates, in.implied.dates, in.implied.values);
  const auto perm = shuffled_indices(nrv.size(), seed);
  std::vector<double> rrv(nrv.size());
  for (std::size_t i = 0; i < perm.size(); ++i) rrv[i] = nrv[perm[i]];

  const std::vector<const std::vector<double>*> cols = {&rv, &nrv, &iv, &rrv};
  LabeledMatrix m;
  m.labels = {"RV^2", "nRV^2", in.index_name + "^2", "rRV^2"};
  m.cells.assign(4, std::vector<std::optional<double>>(4));
  for (std::size_t i = 0; i < 4; ++i) {
    m.cells[i][i] = 1.0;
    for (std::size_t j = i + 1; j < 4; ++j) {
      const double r = pearson(*cols[i], *cols[j]);
      m.cells[i][j] = r;
      m.cells[j][i] = r;
    }
  }
  return m;
}

LabeledMatrix ks_matrix(const RatioInputs& in, std::uint64_t seed, bool allow_scaling) {
  auto scaled = [&](RatioMode mode) { return allow_scaling && default_unit_mean_scaling(mode); };
  const std::string& ix = in.index_name;
  std::vector<RatioSeries> series;
  series.push_back(build_ratio_series(in.rv, in.implied, RatioMode::Preceding, scaled(RatioMode::Preceding)));
  series.push_back(build_ratio_series(in.rv, in.implied, RatioMode::Predicted, scaled(RatioMode::Predicted)));
  series.push_back(invert_series(
      build_ratio_series(in.rv, in.implied, RatioMode::AdjacentRV, scaled(RatioMode::AdjacentRV))));
  series.push_back(build_ratio_series(in.rv, in.implied, RatioMode::RandomPairing,
                                      scaled(RatioMode::RandomPairing), seed));
  // an RV-over-RV ratio, so it follows the adjacent-month scaling
  series.push_back(build_random_rv_ratio(in.rv, scaled(RatioMode::AdjacentRV), seed + 1));
  series.push_back(build_ratio_series(in.rv, in.implied, RatioMode::AdjacentRV, scaled(RatioMode::AdjacentRV)));

  LabeledMatrix m;
  m.labels = {"RV^2/" + ix + "^2", "nRV^2/" + ix + "^2", "RV^2/nRV^2",
              "rRV^2/r" + ix + "^2", "rRV^2/rRV^2", "nRV^2/RV^2"};
  const std::size_t k = series.size();
  m.cells.assign(k, std::vector<std::optional<double>>(k));
  auto absent = [](std::size_t i, std::size_t j) {
    const auto a = std::min(i, j), b = std::max(i, j);
    return (a == 0 && b == 5) || (a == 1 && b == 2) || (a == 2 && b == 5);
  };
  for (std::size_t i = 0; i < k; ++i) {
    m.cells[i][i] = 0.0;
    for (std::size_t j = i + 1; j < k; ++j) {
      if (absent(i, j)) continue;
      const double d = ks_two_sample(series[i].values, series[j].values).d;
      m.cells[i][j] = d;
      m.cells[j][i] = d;
    }
  }
  return m;
}

std::vector<double> read_sample_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::string line;
  std::size_t lineno = 0;
  std::vector<double> out;
  bool header = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const auto field = line.substr(0, line.find(','));
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": cannot parse '" + field + "'",
                       lineno);
    }
    out.push_back(v);
  }
  if (out.empty()) throw DataError(path.string() + ": no values");
  return out;
}

ReportBundle run_fit(const FitCommand& cmd) {
  if (cmd.manifest.has_value() == cmd.data.has_value()) {
    throw UsageError("fit: give exactly one of --manifest or --data");
  }
  const bool unit_mean = !cmd.no_scale && default_unit_mean_scaling(cmd.mode);
  std::vector<double> primary, inverse;
  std::string label, inverse_label;
  ReportMetadata meta;
  meta.mode = std::string(ratio_mode_name(cmd.mode));
  meta.seed = cmd.pipeline.seed;
  meta.unit_mean = unit_mean;
  meta.generated_at = cmd.timestamp;

  if (cmd.data) {
    primary = read_sample_csv(*cmd.data);
    for (double v : primary) {
      if (!(v > 0.0) || !std::isfinite(v)) throw DataError("fit: sample values must be positive");
    }
    if (unit_mean) scale_to_unit_mean(primary);
    inverse.resize(primary.size());
    std::transform(primary.begin(), primary.end(), inverse.begin(), [](double v) { return 1.0 / v; });
    if (unit_mean) scale_to_unit_mean(inverse);
    label = "x";
    inverse_label = "1/x";
  } else {
    const auto manifest = load_manifest(*cmd.manifest);
    const auto market = load_market_data(manifest, cmd.pipeline);
    const auto inputs = prepare_ratio_inputs(market, cmd.pipeline.volatility);
    const auto series = build_ratio_series(inputs.rv, inputs.implied, cmd.mode, unit_mean, cmd.pipeline.seed);
    const auto inv = invert_series(series);
    primary = series.values;
    inverse = inv.values;
    label = ratio_label(cmd.mode, inputs.index_name, false);
    inverse_label = ratio_label(cmd.mode, inputs.index_name, true);
    meta.index = inputs.index_name;
    meta.date_from = format_date(series.dates.front());
    meta.date_to = format_date(series.dates.back());
  }
  if (cmd.invert) {
    std::swap(primary, inverse);
    std::swap(label, inverse_label);
  }
  meta.config_hash = fnv1a_hex(config_string(cmd, unit_mean));

  auto bundle = build_report(primary, inverse, label, inverse_label, cmd.fit, meta);
  {
    auto out = open_out(cmd.out_dir, "table.json");
    write_table_json(out, bundle);
  }
  {
    auto out = open_out(cmd.out_dir, "table.txt");
    write_table_text(out, bundle);
  }
  {
    auto out = open_out(cmd.out_dir, "hist.csv");
    write_histogram_csv(out, bundle.histogram);
  }
  {
    auto out = open_out(cmd.out_dir, "curves.csv");
    write_curves_csv(out, bundle.curves);
  }
  return bundle;
}

LabeledMatrix run_corr(const MatrixCommand& cmd) {
  const auto manifest = load_manifest(cmd.manifest);
  const auto inputs = prepare_ratio_inputs(load_market_data(manifest, cmd.pipeline), cmd.pipeline.volatility);
  const auto m = pcc_matrix(inputs, cmd.pipeline.seed);
  {
    auto out = open_out(cmd.out_dir, "pcc.csv");
    write_matrix_csv(out, m);
  }
  {
    auto out = open_out(cmd.out_dir, "pcc.txt");
    out << "PCC " << inputs.index_name << "\n";
    write_matrix_text(out, m, 4);
  }
  return m;
}

LabeledMatrix run_ksmatrix(const MatrixCommand& cmd) {
  const auto manifest = load_manifest(cmd.manifest);
  const auto inputs = prepare_ratio_inputs(load_market_data(manifest, cmd.pipeline), cmd.pipeline.volatility);
  const auto m = ks_matrix(inputs, cmd.pipeline.seed, !cmd.no_scale);
  {
    auto out = open_out(cmd.out_dir, "ksmatrix.csv");
    write_matrix_csv(out, m);
  }
  {
    auto out = open_out(cmd.out_dir, "ksmatrix.txt");
    out << "KS " << inputs.index_name << "\n";
    write_matrix_text(out, m, 3);
  }
  return m;
}

std::vector<double> run_synthetic(const SyntheticCommand& cmd) {
  if (cmd.n == 0) throw UsageError("synthetic: n must be at least 1");
  const auto spec = make_spec(cmd.family, cmd.params);
  auto values = sample(spec, cmd.n, cmd.seed);
  {
    auto out = open_out(cmd.out_dir, "sample.csv");
    out << "value\n";
    for (double v : values) out << format_number(v) << '\n';
  }
  {
    nlohmann::json j;
    j["family"] = std::string(family_name(cmd.family));
    nlohmann::json params = nlohmann::json::object();
    const auto names = parameter_names(cmd.family);
    for (std::size_t k = 0; k < names.size(); ++k) params[names[k]] = cmd.params[k];
    j["parameters"] = params;
    j["n"] = cmd.n;
    j["seed"] = cmd.seed;
    auto out = open_out(cmd.out_dir, "spec.json");
    out << j.dump(2) << '\n';
  }
  return values;
}

}  // namespace ratiofit
