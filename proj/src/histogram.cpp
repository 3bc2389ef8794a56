#include "splinepdf/histogram.hpp"

#include "splinepdf/error.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <string_view>
#include <cmath>
#include <numeric>

namespace splinepdf {

namespace {

double sample_stddev(std::span<const double> values)
{
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) {
    ss += (v - mean) * (v - mean);
  }
  return std::sqrt(ss / (n - 1.0));
}

// Linearly interpolated quantile of sorted data (Hyndman-Fan type 7).
double quantile_sorted(std::span<const double> sorted, double q)
{
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

// std::lgamma writes the global signgam; the reentrant variant keeps
// concurrent estimation race-free. Arguments here are always positive.
double log_gamma(double x)
{
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

std::size_t count_from_width(double range, double width)
{
  const double b = std::ceil(range / width);
  return std::max<std::size_t>(1, static_cast<std::size_t>(b));
}

} // namespace

Samples::Samples(std::vector<double> values, std::vector<double> weights)
  : values_(std::move(values))
  , weights_(std::move(weights))
{
  if (values_.size() < 2) {
    throw Error(ErrorCode::EmptyInput, "at least two samples are required");
  }
  if (weights_.size() != values_.size()) {
    throw Error(ErrorCode::InvalidWeights, "weights and values differ in length");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || !std::isfinite(weights_[i])) {
      throw Error(ErrorCode::NonFiniteInput,
                  "non-finite sample or weight at index " + std::to_string(i));
    }
    if (weights_[i] < 0.0) {
      throw Error(ErrorCode::InvalidWeights, "negative weight at index " + std::to_string(i));
    }
  }
  if (!(total_weight() > 0.0)) {
    throw Error(ErrorCode::InvalidWeights, "weights sum to zero");
  }
}

Samples Samples::uniform(std::vector<double> values)
{
  const double w = values.empty() ? 0.0 : 1.0 / static_cast<double>(values.size());
  std::vector<double> weights(values.size(), w);
  return Samples(std::move(values), std::move(weights));
}

double Samples::total_weight() const
{
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

double Samples::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Samples::max() const { return *std::max_element(values_.begin(), values_.end()); }

void BinRule::validate() const
{
  if (kind == Kind::FixedCount && fixed_count < 1) {
    throw Error(ErrorCode::InvalidBinRule, "fixed bin count must be at least 1");
  }
  if (kind == Kind::Knuth && knuth_search_max < 1) {
    throw Error(ErrorCode::InvalidBinRule, "knuth search bound must be at least 1");
  }
}

std::string BinRule::to_string() const
{
  switch (kind) {
    case Kind::SqrtN: return "sqrt";
    case Kind::Sturges: return "sturges";
    case Kind::Scott: return "scott";
    case Kind::FreedmanDiaconis: return "fd";
    case Kind::Knuth:
      return knuth_search_max == 200 ? "knuth" : "knuth:" + std::to_string(knuth_search_max);
    case Kind::FixedCount: return "fixed:" + std::to_string(fixed_count);
  }
  return "unknown";
}

BinRule BinRule::parse(const std::string& text)
{
  auto parse_count = [&](std::string_view digits) {
    std::size_t k = 0;
    const auto* end = digits.data() + digits.size();
    auto [ptr, ec] = std::from_chars(digits.data(), end, k);
    if (ec != std::errc() || ptr != end || digits.empty()) {
      throw Error(ErrorCode::InvalidBinRule, "bad bin rule '" + text + "'");
    }
    return k;
  };

  BinRule rule;
  const std::string_view view(text);
  if (view == "sqrt") {
    rule = sqrt_n();
  } else if (view == "sturges") {
    rule = sturges();
  } else if (view == "scott") {
    rule = scott();
  } else if (view == "fd") {
    rule = freedman_diaconis();
  } else if (view == "knuth") {
    rule = knuth();
  } else if (view.starts_with("knuth:")) {
    rule = knuth(parse_count(view.substr(6)));
  } else if (view.starts_with("fixed:")) {
    rule = fixed(parse_count(view.substr(6)));
  } else {
    throw Error(ErrorCode::InvalidBinRule, "unknown bin rule '" + text + "'");
  }
  rule.validate();
  return rule;
}

std::vector<double> uniform_edges(double lo, double hi, std::size_t bin_count)
{
  if (bin_count < 1) {
    throw Error(ErrorCode::InvalidArgument, "bin count must be at least 1");
  }
  if (!(hi > lo)) {
    throw Error(ErrorCode::ZeroRange, "data range is empty");
  }
  std::vector<double> edges(bin_count + 1);
  const double range = hi - lo;
  const auto b = static_cast<double>(bin_count);
  for (std::size_t i = 0; i < bin_count; ++i) {
    edges[i] = lo + range * (static_cast<double>(i) / b);
  }
  edges[bin_count] = hi;
  for (std::size_t i = 0; i < bin_count; ++i) {
    if (!(edges[i + 1] > edges[i])) {
      throw Error(ErrorCode::ZeroRange, "bins narrower than floating-point resolution");
    }
  }
  return edges;
}

std::size_t bin_index(std::span<const double> edges, double v)
{
  const std::size_t bins = edges.size() - 1;
  const double lo = edges.front();
  const double hi = edges.back();
  if (v <= lo) {
    return 0;
  }
  if (v >= hi) {
    return bins - 1;
  }
  auto idx = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(bins));
  idx = std::min(idx, bins - 1);
  // the arithmetic guess can be one off near an edge
  while (idx > 0 && v < edges[idx]) {
    --idx;
  }
  while (idx + 1 < bins && v >= edges[idx + 1]) {
    ++idx;
  }
  return idx;
}

std::vector<std::size_t> bin_counts(std::span<const double> values, std::size_t bin_count)
{
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const auto edges = uniform_edges(*lo, *hi, bin_count);
  std::vector<std::size_t> counts(bin_count, 0);
  for (double v : values) {
    ++counts[bin_index(edges, v)];
  }
  return counts;
}

double knuth_log_posterior(std::span<const std::size_t> counts, std::size_t total)
{
  if (counts.empty()) {
    throw Error(ErrorCode::InvalidArgument, "at least one bin is required");
  }
  const std::size_t sum = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  if (sum != total) {
    throw Error(ErrorCode::CountMismatch,
                "bin counts sum to " + std::to_string(sum) + ", expected " + std::to_string(total));
  }
  const auto n = static_cast<double>(total);
  const auto b = static_cast<double>(counts.size());
  double log_p = n * std::log(b) + log_gamma(0.5 * b) - b * log_gamma(0.5) - log_gamma(n + 0.5 * b);
  for (std::size_t c : counts) {
    log_p += log_gamma(static_cast<double>(c) + 0.5);
  }
  return log_p;
}

std::size_t select_bin_count(const Samples& samples, const BinRule& rule)
{
  rule.validate();
  const std::size_t n = samples.size();
  if (n < 2) {
    throw Error(ErrorCode::EmptyInput, "at least two samples are required");
  }
  const double range = samples.max() - samples.min();
  if (!(range > 0.0)) {
    throw Error(ErrorCode::ZeroRange, "all samples are equal");
  }
  const auto nd = static_cast<double>(n);

  switch (rule.kind) {
    case BinRule::Kind::SqrtN:
      return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(std::sqrt(nd))));
    case BinRule::Kind::Sturges:
      return static_cast<std::size_t>(std::ceil(std::log2(nd))) + 1;
    case BinRule::Kind::Scott: {
      const double sigma = sample_stddev(samples.values());
      if (!(sigma > 0.0)) {
        throw Error(ErrorCode::DegenerateDispersion, "sample standard deviation is zero");
      }
      return count_from_width(range, 3.49 * sigma * std::cbrt(1.0 / nd));
    }
    case BinRule::Kind::FreedmanDiaconis: {
      std::vector<double> sorted = samples.values();
      std::sort(sorted.begin(), sorted.end());
      const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
      if (!(iqr > 0.0)) {
        throw Error(ErrorCode::DegenerateDispersion, "interquartile range is zero");
      }
      return count_from_width(range, 2.0 * iqr * std::cbrt(1.0 / nd));
    }
    case BinRule::Kind::Knuth: {
      std::size_t best = 1;
      double best_log_p = -std::numeric_limits<double>::infinity();
      for (std::size_t b = 1; b <= rule.knuth_search_max; ++b) {
        const auto counts = bin_counts(samples.values(), b);
        const double log_p = knuth_log_posterior(counts, n);
        if (log_p > best_log_p) {
          best_log_p = log_p;
          best = b;
        }
      }
      return best;
    }
    case BinRule::Kind::FixedCount:
      return rule.fixed_count;
  }
  throw Error(ErrorCode::InvalidBinRule, "unhandled bin rule");
}

Histogram build_histogram(const Samples& samples, std::size_t bin_count)
{
  if (bin_count < 1) {
    throw Error(ErrorCode::InvalidArgument, "bin count must be at least 1");
  }
  const double lo = samples.min();
  const double hi = samples.max();
  if (!(hi > lo)) {
    throw Error(ErrorCode::ZeroRange, "all samples are equal");
  }

  Histogram hist;
  hist.edges = uniform_edges(lo, hi, bin_count);

  std::vector<double> mass(bin_count, 0.0);
  const auto& values = samples.values();
  const auto& weights = samples.weights();
  for (std::size_t k = 0; k < values.size(); ++k) {
    mass[bin_index(hist.edges, values[k])] += weights[k];
  }
  hist.total_weight = std::accumulate(mass.begin(), mass.end(), 0.0);

  hist.heights.resize(bin_count);
  hist.centers.resize(bin_count);
  for (std::size_t i = 0; i < bin_count; ++i) {
    hist.heights[i] = mass[i] / (hist.total_weight * hist.width(i));
    hist.centers[i] = 0.5 * (hist.edges[i] + hist.edges[i + 1]);
  }
  return hist;
}

} // namespace splinepdf
