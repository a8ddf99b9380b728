#pragma once

// Result tables, histogram / fitted-curve plot data and labelled matrices,
// plus their JSON, fixed-width text and CSV renderings.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ratiofit/fitting.hpp"

namespace ratiofit {

struct Histogram {
  std::vector<double> edges;  // bins + 1 edges
  std::vector<std::size_t> counts;
  std::vector<double> density;  // count / (n * width)
};

/// Freedman-Diaconis bin width 2 IQR n^{-1/3}, at most max_bins bins spanning
/// [min, max]. Densities integrate to one over the bins.
Histogram freedman_diaconis_histogram(std::span<const double> data, std::size_t max_bins = 200);

/// Fitted densities on a common grid. pdf[f] holds the family in position f
/// of kAllFamilies, or is empty when that fit failed.
struct CurveSet {
  std::vector<double> x;
  std::vector<std::vector<double>> pdf;
};

CurveSet fitted_curves(std::span<const FitResult> fits, double lo, double hi, std::size_t points = 400);

/// Fits of all seven families to one series, with ranks by KS.
struct FitTable {
  std::string label;
  std::vector<FitResult> fits;   // kAllFamilies order
  std::vector<std::size_t> rank;  // 1-based rank of fits[i]
};

FitTable make_fit_table(std::string label, std::span<const double> data, const FitConfig& config);

struct ReportMetadata {
  std::string mode;
  std::string index;
  std::string date_from;
  std::string date_to;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  bool unit_mean = false;
  std::string config_hash;
  std::string generated_at;  // the only field allowed to differ between identical runs
};

/// One result-table pair (series and reciprocal series) with plot data for
/// the first of the two.
struct ReportBundle {
  FitTable table;
  FitTable inverse_table;
  Histogram histogram;
  CurveSet curves;
  ReportMetadata metadata;
};

/// Fits both sides, bins the primary series and tabulates the fitted pdfs
/// over the histogram range. The inverse side is fitted with the Beta Prime
/// start seeded from the inverted primary-side fit.
ReportBundle build_report(std::span<const double> primary, std::span<const double> inverse,
                          std::string label, std::string inverse_label, const FitConfig& config,
                          ReportMetadata metadata);

void write_table_json(std::ostream& out, const ReportBundle& bundle);
void write_table_text(std::ostream& out, const ReportBundle& bundle);
void write_histogram_csv(std::ostream& out, const Histogram& h);
void write_curves_csv(std::ostream& out, const CurveSet& c);

/// Square matrix with optional (absent) cells.
struct LabeledMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<std::optional<double>>> cells;
};

/// CSV: header row of labels, absent cells written as "-".
void write_matrix_csv(std::ostream& out, const LabeledMatrix& m);
/// Fixed-width text, `digits` decimals.
void write_matrix_text(std::ostream& out, const LabeledMatrix& m, int digits);

/// 64-bit FNV-1a of a string, as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

}  // namespace ratiofit
