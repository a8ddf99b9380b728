#include "ratiofit/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ratiofit::kernels {
namespace {

// Exceptions must not escape an OpenMP region; the first one is parked here
// and rethrown on the calling thread.
class ExceptionSlot {
 public:
  void capture() {
#pragma omp critical(ratiofit_kernel_exception)
    {
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};

// Deterministic blocked sum of term(i) over [0, n).
template <class Term>
double blocked_sum(std::size_t n, Term term) {
  const std::size_t blocks = (n + kBlockSize - 1) / kBlockSize;
  if (blocks <= 1) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += term(i);
    return s;
  }
  std::vector<double> partial(blocks, 0.0);
  const auto nb = static_cast<std::int64_t>(blocks);
  ExceptionSlot slot;
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < nb; ++b) {
    try {
      const std::size_t lo = static_cast<std::size_t>(b) * kBlockSize;
      const std::size_t hi = std::min(n, lo + kBlockSize);
      double s = 0.0;
      for (std::size_t i = lo; i < hi; ++i) s += term(i);
      partial[static_cast<std::size_t>(b)] = s;
    } catch (...) {
      slot.capture();
    }
  }
  slot.rethrow();
  return std::accumulate(partial.begin(), partial.end(), 0.0);
}

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("cdf_values: input and output sizes differ");
}

}  // namespace

double neg_log_likelihood(const DistributionSpec& spec, std::span<const double> xs) {
  validate(spec);
  const double total = std::visit(
      [xs](const auto& d) {
        return blocked_sum(xs.size(), [&](std::size_t i) { return log_pdf(d, xs[i]); });
      },
      spec.params);
  if (std::isinf(total) && total < 0.0) return std::numeric_limits<double>::infinity();
  return -total;
}

void cdf_values(const DistributionSpec& spec, std::span<const double> xs, std::span<double> out) {
  check_sizes(xs.size(), out.size());
  validate(spec);
  const auto n = static_cast<std::int64_t>(xs.size());
  ExceptionSlot slot;
  std::visit(
      [&](const auto& d) {
#pragma omp parallel for schedule(static, 256)
        for (std::int64_t i = 0; i < n; ++i) {
          try {
            out[static_cast<std::size_t>(i)] = cdf(d, xs[static_cast<std::size_t>(i)]);
          } catch (...) {
            slot.capture();
          }
        }
      },
      spec.params);
  slot.rethrow();
}

double sum_log1p_scaled(std::span<const double> xs, double inv_scale) {
  return blocked_sum(xs.size(), [&](std::size_t i) { return std::log1p(xs[i] * inv_scale); });
}

double sum_log(std::span<const double> xs) {
  return blocked_sum(xs.size(), [&](std::size_t i) { return std::log(xs[i]); });
}

namespace serial {

double neg_log_likelihood(const DistributionSpec& spec, std::span<const double> xs) {
  validate(spec);
  double total = 0.0;
  for (double x : xs) {
    const double lp = log_pdf(spec, x);
    if (std::isinf(lp) && lp < 0.0) return std::numeric_limits<double>::infinity();
    total += lp;
  }
  return -total;
}

void cdf_values(const DistributionSpec& spec, std::span<const double> xs, std::span<double> out) {
  check_sizes(xs.size(), out.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = cdf(spec, xs[i]);
}

double sum_log1p_scaled(std::span<const double> xs, double inv_scale) {
  double s = 0.0;
  for (double x : xs) s += std::log1p(x * inv_scale);
  return s;
}

double sum_log(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += std::log(x);
  return s;
}

}  // namespace serial

}  // namespace ratiofit::kernels
