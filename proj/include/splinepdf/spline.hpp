#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace splinepdf {

//! Non-decreasing knot sequence for B-spline basis evaluation.
class KnotVector
{
public:
  //! Throws NonFiniteInput or NonMonotoneKnots.
  explicit KnotVector(std::vector<double> tau);

  std::span<const double> values() const { return tau_; }
  std::size_t size() const { return tau_.size(); }
  double operator[](std::size_t i) const { return tau_[i]; }

  //! Right end of the last non-degenerate knot interval. The degree-0
  //! function on that interval is closed on the right so partition of
  //! unity also holds at the right end of the domain.
  double closing_knot() const { return closing_; }

private:
  std::vector<double> tau_;
  double closing_ = 0.0;
};

//! Cox-de Boor recursion for N_{i,p}(u) with the 0/0 := 0 convention.
//! Requires 0 <= i <= n - p - 2. Any real u is accepted; the result is
//! exactly zero outside [tau_i, tau_{i+p+1}].
double bspline_basis(std::size_t i, int degree, const KnotVector& tau, double u);

//! d/du N_{i,p}(u) = p/(tau_{i+p} - tau_i) N_{i,p-1}(u)
//!                 - p/(tau_{i+p+1} - tau_{i+1}) N_{i+1,p-1}(u),  p >= 1.
double bspline_basis_derivative(std::size_t i, int degree, const KnotVector& tau, double u);

enum class BoundaryCondition
{
  Clamped,  // S'(x_0) = S'(x_{m-1}) = 0
  Natural,  // S''(x_0) = S''(x_{m-1}) = 0
  NotAKnot  // S''' continuous at x_1 and x_{m-2}
};

std::string to_string(BoundaryCondition bc);
//! Accepts clamped, natural, not-a-knot.
BoundaryCondition parse_boundary(const std::string& text);

//! C2 piecewise cubic; segment i is c0 + c1 s + c2 s^2 + c3 s^3, s = u - knots[i].
class CubicSplineModel
{
public:
  using Coeffs = std::array<double, 4>;

  CubicSplineModel(std::vector<double> knots,
                   std::vector<double> values,
                   std::vector<Coeffs> segments,
                   BoundaryCondition boundary);

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<Coeffs>& segments() const { return segments_; }
  BoundaryCondition boundary() const { return boundary_; }
  std::size_t segment_count() const { return segments_.size(); }
  double front() const { return knots_.front(); }
  double back() const { return knots_.back(); }

  //! Segment containing u; knots belong to the segment on their right,
  //! except the last knot. Throws OutOfSupport.
  std::size_t segment_index(double u) const;

  double operator()(double u) const;
  //! Derivative of the given order (0..3) at u.
  double derivative(double u, int order = 1) const;

  //! Exact integral of S' over [a, b], i.e. S(b) - S(a).
  double derivative_integral(double a, double b) const;

  bool operator==(const CubicSplineModel&) const = default;

private:
  std::vector<double> knots_;
  std::vector<double> values_;
  std::vector<Coeffs> segments_;
  BoundaryCondition boundary_;
};

//! Interpolating cubic spline through (x_i, F_i) from the moment
//! (second-derivative) system. Throws TooFewPoints, NonMonotoneKnots,
//! NonFiniteInput or SingularSystem.
CubicSplineModel fit_interpolating_spline(std::span<const double> x,
                                          std::span<const double> f,
                                          BoundaryCondition boundary);

double spline_eval(const CubicSplineModel& model, double u);
double spline_derivative_eval(const CubicSplineModel& model, double u);

} // namespace splinepdf
