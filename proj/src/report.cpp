#include "ratiofit/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "ratiofit/error.hpp"
#include "ratiofit/format.hpp"

namespace ratiofit {
namespace {

// Linear-interpolation quantile of sorted data.
double quantile(const std::vector<double>& sorted, double prob) {
  const double pos = prob * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::string fixed(double v, int digits) {
  if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

nlohmann::json table_json(const FitTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < t.fits.size(); ++i) {
    const auto& f = t.fits[i];
    const Family fam = f.spec.family();
    nlohmann::json params = nlohmann::json::object();
    const auto names = parameter_names(fam);
    const auto values = parameter_vector(f.spec);
    for (std::size_t k = 0; k < names.size(); ++k) params[names[k]] = values[k];
    nlohmann::json row;
    row["family"] = std::string(family_name(fam));
    row["label"] = std::string(family_short_name(fam));
    row["parameters"] = params;
    row["display_parameters"] = display_parameters(f.spec);
    row["ks"] = number_or_null(f.ks);
    row["loglik"] = number_or_null(f.loglik);
    row["converged"] = f.converged;
    row["rank"] = t.rank[i];
    if (!f.message.empty()) row["message"] = f.message;
    rows.push_back(std::move(row));
  }
  nlohmann::json out;
  out["label"] = t.label;
  out["n"] = t.fits.empty() ? 0 : t.fits.front().n;
  out["rows"] = std::move(rows);
  const auto best = std::min_element(t.rank.begin(), t.rank.end()) - t.rank.begin();
  out["best"] = t.fits.empty() ? "" : std::string(family_name(t.fits[static_cast<std::size_t>(best)].spec.family()));
  return out;
}

void table_text(std::ostream& out, const FitTable& t) {
  out << "MLE results for \"" << t.label << "\"";
  if (!t.fits.empty()) out << "  (n = " << t.fits.front().n << ")";
  out << '\n';
  const std::string rule(77, '-');
  out << rule << '\n';
  out << std::left << std::setw(17) << "" << std::setw(48) << "parameters" << "KS test\n";
  out << rule << '\n';
  for (const auto& f : t.fits) {
    const Family fam = f.spec.family();
    std::string params = std::string(family_short_name(fam)) + "(";
    const auto shown = display_parameters(f.spec);
    for (std::size_t k = 0; k < shown.size(); ++k) {
      if (k) params += ", ";
      params += fixed(shown[k], 4);
    }
    params += ")";
    if (!f.converged) params += "  [not converged]";
    out << std::left << std::setw(17) << family_name(fam) << std::setw(48) << params
        << fixed(f.ks, 4) << '\n';
  }
  out << rule << '\n';
  const auto best = static_cast<std::size_t>(std::min_element(t.rank.begin(), t.rank.end()) - t.rank.begin());
  out << "best by KS: " << family_name(t.fits[best].spec.family()) << "\n";
}

}  // namespace

Histogram freedman_diaconis_histogram(std::span<const double> data, std::size_t max_bins) {
  if (data.empty()) throw DataError("histogram: empty sample");
  if (max_bins == 0) throw DomainError("histogram: max_bins must be positive");
  std::vector<double> s(data.begin(), data.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  const double lo = s.front();
  const double hi = s.back();
  Histogram h;
  if (!(hi > lo)) {
    h.edges = {lo - 0.5, lo + 0.5};
    h.counts = {s.size()};
    h.density = {1.0};
    return h;
  }
  const double iqr = quantile(s, 0.75) - quantile(s, 0.25);
  const double width = 2.0 * iqr / std::cbrt(n);
  std::size_t bins = width > 0.0 ? static_cast<std::size_t>(std::ceil((hi - lo) / width))
                                 : static_cast<std::size_t>(std::ceil(std::sqrt(n)));
  bins = std::clamp<std::size_t>(bins, 1, max_bins);
  const double w = (hi - lo) / static_cast<double>(bins);
  h.edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) h.edges[i] = lo + static_cast<double>(i) * w;
  h.edges.back() = hi;
  h.counts.assign(bins, 0);
  for (double x : s) {
    auto idx = static_cast<std::size_t>(std::floor((x - lo) / w));
    idx = std::min(idx, bins - 1);
    // keep bin membership consistent with the stored edges
    while (idx > 0 && x < h.edges[idx]) --idx;
    while (idx + 1 < bins && x >= h.edges[idx + 1]) ++idx;
    ++h.counts[idx];
  }
  h.density.resize(bins);
  for (std::size_t i = 0; i < bins; ++i) {
    h.density[i] = static_cast<double>(h.counts[i]) / (n * (h.edges[i + 1] - h.edges[i]));
  }
  return h;
}

CurveSet fitted_curves(std::span<const FitResult> fits, double lo, double hi, std::size_t points) {
  if (points < 2 || !(hi > lo)) throw DomainError("fitted_curves: need points >= 2 and hi > lo");
  CurveSet c;
  c.x.resize(points);
  for (std::size_t i = 0; i < points; ++i) {
    c.x[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  c.x.back() = hi;
  c.pdf.resize(fits.size());
  for (std::size_t f = 0; f < fits.size(); ++f) {
    if (!fits[f].converged) continue;
    c.pdf[f].resize(points);
    std::visit(
        [&](const auto& d) {
          for (std::size_t i = 0; i < points; ++i) c.pdf[f][i] = pdf(d, c.x[i]);
        },
        fits[f].spec.params);
  }
  return c;
}

FitTable make_fit_table(std::string label, std::span<const double> data, const FitConfig& config) {
  FitTable t;
  t.label = std::move(label);
  t.fits = fit_all(data, config);
  const auto order = rank_by_ks(t.fits);
  t.rank.resize(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) t.rank[order[r]] = r + 1;
  return t;
}

ReportBundle build_report(std::span<const double> primary, std::span<const double> inverse,
                          std::string label, std::string inverse_label, const FitConfig& config,
                          ReportMetadata metadata) {
  if (primary.size() != inverse.size()) {
    throw DataError("build_report: series and inverse series differ in length");
  }
  ReportBundle b;
  b.table = make_fit_table(std::move(label), primary, config);

  // inverse[i] = c / primary[i]; seed the inverse Beta Prime at the exact
  // image of the primary optimum
  FitConfig inv_config = config;
  const auto& bp = b.table.fits[static_cast<std::size_t>(Family::BetaPrime)];
  if (bp.converged && !primary.empty()) {
    double c = 0.0;
    for (std::size_t i = 0; i < primary.size(); ++i) c += inverse[i] * primary[i];
    c /= static_cast<double>(primary.size());
    auto seed = inverted(std::get<BetaPrimeParams>(bp.spec.params));
    seed.beta *= c;
    inv_config.bp_start = seed;
  }
  b.inverse_table = make_fit_table(std::move(inverse_label), inverse, inv_config);

  b.histogram = freedman_diaconis_histogram(primary);
  b.curves = fitted_curves(b.table.fits, b.histogram.edges.front(), b.histogram.edges.back());
  metadata.n = primary.size();
  b.metadata = std::move(metadata);
  return b;
}

void write_table_json(std::ostream& out, const ReportBundle& b) {
  nlohmann::json j;
  const auto& m = b.metadata;
  j["metadata"] = {{"mode", m.mode},           {"index", m.index},
                   {"date_from", m.date_from}, {"date_to", m.date_to},
                   {"n", m.n},                 {"seed", m.seed},
                   {"unit_mean", m.unit_mean}, {"config_hash", m.config_hash},
                   {"generated_at", m.generated_at}};
  j["series"] = table_json(b.table);
  j["inverse"] = table_json(b.inverse_table);
  j["histogram"] = {{"edges", b.histogram.edges}, {"density", b.histogram.density}};
  out << j.dump(2) << '\n';
}

void write_table_text(std::ostream& out, const ReportBundle& b) {
  out << "mode: " << b.metadata.mode;
  if (!b.metadata.index.empty()) out << "   index: " << b.metadata.index;
  if (!b.metadata.date_from.empty()) out << "   dates: " << b.metadata.date_from << " .. " << b.metadata.date_to;
  out << "   unit-mean: " << (b.metadata.unit_mean ? "yes" : "no") << "\n\n";
  table_text(out, b.table);
  out << '\n';
  table_text(out, b.inverse_table);
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
  out << "bin_lo,bin_hi,count,density\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    out << format_number(h.edges[i]) << ',' << format_number(h.edges[i + 1]) << ',' << h.counts[i]
        << ',' << format_number(h.density[i]) << '\n';
  }
}

void write_curves_csv(std::ostream& out, const CurveSet& c) {
  out << 'x';
  for (std::size_t f = 0; f < c.pdf.size(); ++f) out << ',' << family_name(kAllFamilies[f]);
  out << '\n';
  for (std::size_t i = 0; i < c.x.size(); ++i) {
    out << format_number(c.x[i]);
    for (const auto& col : c.pdf) {
      out << ',';
      if (!col.empty()) out << format_number(col[i]);
    }
    out << '\n';
  }
}

void write_matrix_csv(std::ostream& out, const LabeledMatrix& m) {
  out << "label";
  for (const auto& l : m.labels) out << ',' << l;
  out << '\n';
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    out << m.labels[i];
    for (const auto& cell : m.cells[i]) out << ',' << (cell ? format_number(*cell) : "-");
    out << '\n';
  }
}

void write_matrix_text(std::ostream& out, const LabeledMatrix& m, int digits) {
  std::size_t w = 8;
  for (const auto& l : m.labels) w = std::max(w, l.size() + 2);
  out << std::left << std::setw(static_cast<int>(w)) << "";
  for (const auto& l : m.labels) out << std::setw(static_cast<int>(w)) << l;
  out << '\n';
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    out << std::setw(static_cast<int>(w)) << m.labels[i];
    for (const auto& cell : m.cells[i]) {
      out << std::setw(static_cast<int>(w)) << (cell ? fixed(*cell, digits) : "-");
    }
    out << '\n';
  }
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ratiofit
