#include "splinepdf/estimator.hpp"

#include "splinepdf/error.hpp"

#include <algorithm>
#include <cmath>

namespace splinepdf {

namespace {

constexpr double kNormalizationTolerance = 1e-12;
constexpr double kThirdDerivativeZero = 1e-8;

// Knots at which S''' changes sign strictly.
std::vector<double> inflection_knots(const PdfEstimate& est)
{
  const auto& spline = est.spline();
  const double range = spline.back() - spline.front();
  const double scale = range * range * range;
  std::vector<double> knots;
  int previous = 0;
  for (std::size_t i = 0; i < spline.segment_count(); ++i) {
    const double third = 6.0 * spline.segments()[i][3];
    int sign = 0;
    if (std::abs(third) * scale > kThirdDerivativeZero) {
      sign = third > 0.0 ? 1 : -1;
    }
    if (sign == 0) {
      continue;
    }
    if (previous != 0 && sign != previous) {
      knots.push_back(spline.knots()[i]);
    }
    previous = sign;
  }
  return knots;
}

} // namespace

PdfEstimate::PdfEstimate(CubicSplineModel spline, std::size_t bin_count, BinRule rule)
  : spline_(std::move(spline))
  , bin_count_(bin_count)
  , rule_(rule)
{}

CumulativeProfile cumulative_masses(const Histogram& hist)
{
  const std::size_t bins = hist.bin_count();
  if (bins < 1 || hist.edges.size() != bins + 1) {
    throw Error(ErrorCode::InvalidArgument, "histogram needs B heights and B + 1 edges");
  }
  CumulativeProfile profile;
  profile.x = hist.edges;
  profile.F.resize(bins + 1);
  profile.F[0] = 0.0;
  for (std::size_t i = 0; i < bins; ++i) {
    if (!(hist.edges[i + 1] > hist.edges[i])) {
      throw Error(ErrorCode::NonMonotoneKnots, "histogram edges must be strictly increasing");
    }
    if (!(hist.heights[i] >= 0.0) || !std::isfinite(hist.heights[i])) {
      throw Error(ErrorCode::NonFiniteInput, "histogram heights must be finite and nonnegative");
    }
    profile.F[i + 1] = profile.F[i] + hist.heights[i] * hist.width(i);
  }
  if (std::abs(profile.F[bins] - 1.0) > kNormalizationTolerance) {
    throw Error(ErrorCode::NotNormalized, "histogram mass is " + std::to_string(profile.F[bins]));
  }
  return profile;
}

std::size_t min_bins_for(BoundaryCondition boundary)
{
  return boundary == BoundaryCondition::NotAKnot ? 3 : 1;
}

PdfEstimate estimate_pdf(const Histogram& hist, BoundaryCondition boundary, const BinRule& rule)
{
  if (hist.bin_count() < min_bins_for(boundary)) {
    throw Error(ErrorCode::TooFewBins,
                to_string(boundary) + " needs at least " + std::to_string(min_bins_for(boundary)) +
                  " bins, got " + std::to_string(hist.bin_count()));
  }
  const auto profile = cumulative_masses(hist);
  auto spline = fit_interpolating_spline(profile.x, profile.F, boundary);
  return PdfEstimate(std::move(spline), hist.bin_count(), rule);
}

PdfEstimate estimate_pdf(const Samples& samples, const BinRule& rule, BoundaryCondition boundary)
{
  const std::size_t bins = select_bin_count(samples, rule);
  return estimate_pdf(build_histogram(samples, bins), boundary, rule);
}

double pdf_eval(const PdfEstimate& est, double u)
{
  return est(u);
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t n)
{
  if (n < 2) {
    throw Error(ErrorCode::InvalidArgument, "a grid needs at least two points");
  }
  std::vector<double> grid(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    grid[k] = lo + step * static_cast<double>(k);
  }
  grid[n - 1] = hi;
  return grid;
}

double simpson_integral(const std::function<double(double)>& f, double lo, double hi, std::size_t intervals)
{
  if (intervals < 2 || intervals % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument, "simpson rule needs an even number of intervals");
  }
  const auto grid = uniform_grid(lo, hi, intervals + 1);
  double sum = f(grid.front()) + f(grid.back());
  for (std::size_t k = 1; k < intervals; ++k) {
    sum += (k % 2 == 1 ? 4.0 : 2.0) * f(grid[k]);
  }
  return sum * (hi - lo) / (3.0 * static_cast<double>(intervals));
}

double min_density(const PdfEstimate& est)
{
  const auto& spline = est.spline();
  double lowest = est(est.lo());
  for (std::size_t i = 0; i < spline.segment_count(); ++i) {
    const auto& c = spline.segments()[i];
    const double h = spline.knots()[i + 1] - spline.knots()[i];
    auto density = [&](double s) { return c[1] + s * (2.0 * c[2] + 3.0 * c[3] * s); };
    lowest = std::min({lowest, density(0.0), density(h)});
    if (c[3] != 0.0) {
      const double vertex = -c[2] / (3.0 * c[3]);
      if (vertex > 0.0 && vertex < h) {
        lowest = std::min(lowest, density(vertex));
      }
    }
  }
  return lowest;
}

double kl_divergence(const std::function<double(double)>& p,
                     const std::function<double(double)>& q,
                     double lo,
                     double hi,
                     std::size_t grid_size)
{
  if (grid_size < 2) {
    throw Error(ErrorCode::InvalidArgument, "KL grid needs at least two points");
  }
  if (!(hi > lo)) {
    throw Error(ErrorCode::DisjointSupports, "densities do not overlap");
  }
  const auto grid = uniform_grid(lo, hi, grid_size);
  const double step = (hi - lo) / static_cast<double>(grid_size - 1);
  double sum = 0.0;
  for (std::size_t k = 0; k < grid_size; ++k) {
    const double pv = std::max(p(grid[k]), kKlDensityFloor);
    const double qv = std::max(q(grid[k]), kKlDensityFloor);
    const double term = pv * std::log(pv / qv);
    sum += (k == 0 || k + 1 == grid_size) ? 0.5 * term : term;
  }
  return sum * step;
}

double kl_divergence(const PdfEstimate& p, const PdfEstimate& q, std::size_t grid_size)
{
  const double lo = std::max(p.lo(), q.lo());
  const double hi = std::min(p.hi(), q.hi());
  if (!(hi > lo)) {
    throw Error(ErrorCode::DisjointSupports, "estimate supports do not overlap");
  }
  return kl_divergence([&](double u) { return p(u); }, [&](double u) { return q(u); }, lo, hi, grid_size);
}

std::size_t count_turning_points(const PdfEstimate& est, std::size_t grid_size)
{
  return turning_points(est, grid_size).size();
}

std::vector<double> turning_points(const PdfEstimate& est, std::size_t grid_size)
{
  if (grid_size < 3) {
    throw Error(ErrorCode::InvalidArgument, "turning point grid needs at least three points");
  }
  const auto grid = uniform_grid(est.lo(), est.hi(), grid_size);
  const double step = (est.hi() - est.lo()) / static_cast<double>(grid_size - 1);
  std::vector<double> located;
  for (double knot : inflection_knots(est)) {
    const auto k = static_cast<std::size_t>(std::llround((knot - est.lo()) / step));
    located.push_back(grid[std::min(k, grid_size - 1)]);
  }
  return located;
}

} // namespace splinepdf
