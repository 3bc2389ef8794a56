#pragma once

#include "splinepdf/histogram.hpp"
#include "splinepdf/spline.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace splinepdf {

//! Running integral of a histogram at its edges; F[0] = 0, F[B] = 1.
struct CumulativeProfile
{
  std::vector<double> x;
  std::vector<double> F;
};

//! Smooth density obtained as the derivative of a cubic spline through
//! the cumulative histogram masses. Values may dip below zero where the
//! interpolant undershoots; callers needing a proper density must check.
class PdfEstimate
{
public:
  PdfEstimate(CubicSplineModel spline, std::size_t bin_count, BinRule rule);

  const CubicSplineModel& spline() const { return spline_; }
  BoundaryCondition boundary() const { return spline_.boundary(); }
  std::size_t bin_count() const { return bin_count_; }
  const BinRule& rule() const { return rule_; }
  double lo() const { return spline_.front(); }
  double hi() const { return spline_.back(); }

  //! Density at u; throws OutOfSupport outside [lo, hi].
  double operator()(double u) const { return spline_.derivative(u, 1); }

  //! Exact integral of the density over [a, b].
  double integral(double a, double b) const { return spline_.derivative_integral(a, b); }
  double total_mass() const { return integral(lo(), hi()); }

  bool operator==(const PdfEstimate&) const = default;

private:
  CubicSplineModel spline_;
  std::size_t bin_count_;
  BinRule rule_;
};

//! Throws NotNormalized when the histogram mass differs from 1 by more than 1e-12.
CumulativeProfile cumulative_masses(const Histogram& hist);

//! Minimum number of bins the boundary condition needs (3 for not-a-knot, else 1).
std::size_t min_bins_for(BoundaryCondition boundary);

PdfEstimate estimate_pdf(const Histogram& hist, BoundaryCondition boundary, const BinRule& rule);
PdfEstimate estimate_pdf(const Samples& samples, const BinRule& rule, BoundaryCondition boundary);

double pdf_eval(const PdfEstimate& est, double u);

//! n points from lo to hi inclusive; the last point is exactly hi.
std::vector<double> uniform_grid(double lo, double hi, std::size_t n);

//! Composite Simpson rule with an even number of intervals.
double simpson_integral(const std::function<double(double)>& f, double lo, double hi, std::size_t intervals);

//! Smallest density value over the support, found analytically per segment.
double min_density(const PdfEstimate& est);

inline constexpr double kKlDensityFloor = 1e-12;

//! Trapezoidal integral of p ln(p/q) on a uniform grid over [lo, hi], with
//! both densities clamped below at kKlDensityFloor.
double kl_divergence(const std::function<double(double)>& p,
                     const std::function<double(double)>& q,
                     double lo,
                     double hi,
                     std::size_t grid_size);

//! KL(p || q) over the intersection of the supports. Throws DisjointSupports.
double kl_divergence(const PdfEstimate& p, const PdfEstimate& q, std::size_t grid_size);

//! Inflection points of the density: strict sign changes of S''' between
//! segments. Segments whose scaled S''' is below 1e-8 count as zero.
std::size_t count_turning_points(const PdfEstimate& est, std::size_t grid_size);

//! Locations of the turning points, snapped to a uniform grid of grid_size points.
std::vector<double> turning_points(const PdfEstimate& est, std::size_t grid_size);

} // namespace splinepdf
