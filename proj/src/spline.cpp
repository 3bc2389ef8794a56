#include "splinepdf/spline.hpp"

#include "splinepdf/error.hpp"

#include <algorithm>
#include <cmath>

namespace splinepdf {

namespace {

// a / b with 0/0 := 0; a zero-width knot span contributes nothing.
double ratio(double a, double b)
{
  return b == 0.0 ? 0.0 : a / b;
}

double basis_recursive(std::size_t i, int p, std::span<const double> t, double closing, double u)
{
  if (p == 0) {
    if (t[i] <= u && u < t[i + 1]) {
      return 1.0;
    }
    return (u == closing && t[i] < t[i + 1] && t[i + 1] == closing) ? 1.0 : 0.0;
  }
  const auto ip = static_cast<std::size_t>(p);
  double left = 0.0;
  double right = 0.0;
  const double n_left = basis_recursive(i, p - 1, t, closing, u);
  if (n_left != 0.0) {
    left = ratio(u - t[i], t[i + ip] - t[i]) * n_left;
  }
  const double n_right = basis_recursive(i + 1, p - 1, t, closing, u);
  if (n_right != 0.0) {
    right = ratio(t[i + ip + 1] - u, t[i + ip + 1] - t[i + 1]) * n_right;
  }
  return left + right;
}

void check_basis_args(std::size_t i, int degree, const KnotVector& tau)
{
  if (degree < 0) {
    throw Error(ErrorCode::DegreeNegative, "B-spline degree must be nonnegative");
  }
  const auto p = static_cast<std::size_t>(degree);
  if (tau.size() < p + 2 || i > tau.size() - p - 2) {
    throw Error(ErrorCode::IndexOutOfRange,
                "basis index " + std::to_string(i) + " out of range for " +
                  std::to_string(tau.size()) + " knots at degree " + std::to_string(degree));
  }
}

// Thomas algorithm; sub[0] and super[n-1] are ignored.
std::vector<double> solve_tridiagonal(std::vector<double> sub,
                                      std::vector<double> diag,
                                      std::vector<double> super,
                                      std::vector<double> rhs)
{
  const std::size_t n = diag.size();
  for (std::size_t k = 1; k < n; ++k) {
    if (diag[k - 1] == 0.0) {
      throw Error(ErrorCode::SingularSystem, "zero pivot in spline system");
    }
    const double factor = sub[k] / diag[k - 1];
    diag[k] -= factor * super[k - 1];
    rhs[k] -= factor * rhs[k - 1];
  }
  if (n == 0) {
    return rhs;
  }
  if (diag[n - 1] == 0.0) {
    throw Error(ErrorCode::SingularSystem, "zero pivot in spline system");
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) {
    rhs[k] = (rhs[k] - super[k] * rhs[k + 1]) / diag[k];
  }
  for (double v : rhs) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::SingularSystem, "non-finite spline moments");
    }
  }
  return rhs;
}

} // namespace

KnotVector::KnotVector(std::vector<double> tau)
  : tau_(std::move(tau))
{
  if (tau_.size() < 2) {
    throw Error(ErrorCode::TooFewPoints, "a knot vector needs at least two knots");
  }
  for (std::size_t k = 0; k < tau_.size(); ++k) {
    if (!std::isfinite(tau_[k])) {
      throw Error(ErrorCode::NonFiniteInput, "non-finite knot");
    }
    if (k > 0 && tau_[k] < tau_[k - 1]) {
      throw Error(ErrorCode::NonMonotoneKnots, "knots must be non-decreasing");
    }
  }
  closing_ = tau_.back();
  for (std::size_t k = tau_.size() - 1; k > 0; --k) {
    if (tau_[k - 1] < tau_[k]) {
      closing_ = tau_[k];
      break;
    }
  }
}

double bspline_basis(std::size_t i, int degree, const KnotVector& tau, double u)
{
  check_basis_args(i, degree, tau);
  return basis_recursive(i, degree, tau.values(), tau.closing_knot(), u);
}

double bspline_basis_derivative(std::size_t i, int degree, const KnotVector& tau, double u)
{
  check_basis_args(i, degree, tau);
  if (degree < 1) {
    throw Error(ErrorCode::DegreeTooLow, "basis derivative needs degree >= 1");
  }
  const auto t = tau.values();
  const auto ip = static_cast<std::size_t>(degree);
  const double p = degree;
  const double left = ratio(p, t[i + ip] - t[i]) * basis_recursive(i, degree - 1, t, tau.closing_knot(), u);
  const double right =
    ratio(p, t[i + ip + 1] - t[i + 1]) * basis_recursive(i + 1, degree - 1, t, tau.closing_knot(), u);
  return left - right;
}

std::string to_string(BoundaryCondition bc)
{
  switch (bc) {
    case BoundaryCondition::Clamped: return "clamped";
    case BoundaryCondition::Natural: return "natural";
    case BoundaryCondition::NotAKnot: return "not-a-knot";
  }
  return "unknown";
}

BoundaryCondition parse_boundary(const std::string& text)
{
  if (text == "clamped") {
    return BoundaryCondition::Clamped;
  }
  if (text == "natural") {
    return BoundaryCondition::Natural;
  }
  if (text == "not-a-knot") {
    return BoundaryCondition::NotAKnot;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown boundary condition '" + text + "'");
}

CubicSplineModel::CubicSplineModel(std::vector<double> knots,
                                   std::vector<double> values,
                                   std::vector<Coeffs> segments,
                                   BoundaryCondition boundary)
  : knots_(std::move(knots))
  , values_(std::move(values))
  , segments_(std::move(segments))
  , boundary_(boundary)
{
  if (knots_.size() < 2 || values_.size() != knots_.size() ||
      segments_.size() + 1 != knots_.size()) {
    throw Error(ErrorCode::InvalidArgument, "inconsistent spline dimensions");
  }
}

std::size_t CubicSplineModel::segment_index(double u) const
{
  if (!(u >= knots_.front() && u <= knots_.back())) {
    throw Error(ErrorCode::OutOfSupport, "evaluation point outside spline support");
  }
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), u);
  const auto idx = static_cast<std::size_t>(it - knots_.begin());
  return std::min(idx == 0 ? 0 : idx - 1, segments_.size() - 1);
}

double CubicSplineModel::operator()(double u) const
{
  return derivative(u, 0);
}

double CubicSplineModel::derivative(double u, int order) const
{
  const std::size_t i = segment_index(u);
  const auto& c = segments_[i];
  const double s = u - knots_[i];
  switch (order) {
    case 0:
      if (u == knots_[i]) {
        return values_[i];
      }
      if (u == knots_[i + 1]) {
        return values_[i + 1];
      }
      return c[0] + s * (c[1] + s * (c[2] + s * c[3]));
    case 1: return c[1] + s * (2.0 * c[2] + s * 3.0 * c[3]);
    case 2: return 2.0 * c[2] + 6.0 * c[3] * s;
    case 3: return 6.0 * c[3];
    default: throw Error(ErrorCode::InvalidArgument, "derivative order must be within 0..3");
  }
}

double CubicSplineModel::derivative_integral(double a, double b) const
{
  return (*this)(b) - (*this)(a);
}

CubicSplineModel fit_interpolating_spline(std::span<const double> x,
                                          std::span<const double> f,
                                          BoundaryCondition boundary)
{
  const std::size_t m = x.size();
  if (f.size() != m) {
    throw Error(ErrorCode::InvalidArgument, "abscissae and ordinates differ in length");
  }
  if (m < 2) {
    throw Error(ErrorCode::TooFewPoints, "a spline needs at least two points");
  }
  if (boundary == BoundaryCondition::NotAKnot && m < 4) {
    throw Error(ErrorCode::TooFewPoints, "not-a-knot needs at least four points");
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (!std::isfinite(x[k]) || !std::isfinite(f[k])) {
      throw Error(ErrorCode::NonFiniteInput, "non-finite spline data");
    }
    if (k > 0 && !(x[k] > x[k - 1])) {
      throw Error(ErrorCode::NonMonotoneKnots, "spline abscissae must be strictly increasing");
    }
  }

  std::vector<double> h(m - 1);
  std::vector<double> slope(m - 1);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    h[i] = x[i + 1] - x[i];
    slope[i] = (f[i + 1] - f[i]) / h[i];
  }

  // moments M_i = S''(x_i)
  std::vector<double> moment(m, 0.0);
  switch (boundary) {
    case BoundaryCondition::Natural: {
      const std::size_t n = m - 2;
      std::vector<double> sub(n), diag(n), super(n), rhs(n);
      for (std::size_t r = 0; r < n; ++r) {
        const std::size_t i = r + 1;
        sub[r] = h[i - 1];
        diag[r] = 2.0 * (h[i - 1] + h[i]);
        super[r] = h[i];
        rhs[r] = 6.0 * (slope[i] - slope[i - 1]);
      }
      const auto sol = solve_tridiagonal(sub, diag, super, rhs);
      std::copy(sol.begin(), sol.end(), moment.begin() + 1);
      break;
    }
    case BoundaryCondition::Clamped: {
      std::vector<double> sub(m), diag(m), super(m), rhs(m);
      diag[0] = 2.0 * h[0];
      super[0] = h[0];
      rhs[0] = 6.0 * slope[0];
      for (std::size_t i = 1; i + 1 < m; ++i) {
        sub[i] = h[i - 1];
        diag[i] = 2.0 * (h[i - 1] + h[i]);
        super[i] = h[i];
        rhs[i] = 6.0 * (slope[i] - slope[i - 1]);
      }
      sub[m - 1] = h[m - 2];
      diag[m - 1] = 2.0 * h[m - 2];
      rhs[m - 1] = -6.0 * slope[m - 2];
      moment = solve_tridiagonal(sub, diag, super, rhs);
      break;
    }
    case BoundaryCondition::NotAKnot: {
      // M_0 and M_{m-1} are eliminated through the end conditions, which
      // keeps the reduced system on M_1..M_{m-2} tridiagonal.
      const std::size_t n = m - 2;
      std::vector<double> sub(n), diag(n), super(n), rhs(n);
      for (std::size_t r = 0; r < n; ++r) {
        const std::size_t i = r + 1;
        sub[r] = h[i - 1];
        diag[r] = 2.0 * (h[i - 1] + h[i]);
        super[r] = h[i];
        rhs[r] = 6.0 * (slope[i] - slope[i - 1]);
      }
      const double h0 = h[0];
      const double h1 = h[1];
      diag[0] += h0 * (h0 + h1) / h1;
      super[0] -= h0 * h0 / h1;
      const double a = h[m - 3];
      const double b = h[m - 2];
      diag[n - 1] += b * (a + b) / a;
      sub[n - 1] -= b * b / a;
      const auto sol = solve_tridiagonal(sub, diag, super, rhs);
      std::copy(sol.begin(), sol.end(), moment.begin() + 1);
      moment[0] = ((h0 + h1) * moment[1] - h0 * moment[2]) / h1;
      moment[m - 1] = ((a + b) * moment[m - 2] - b * moment[m - 3]) / a;
      break;
    }
  }

  std::vector<CubicSplineModel::Coeffs> segments(m - 1);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    segments[i] = {f[i],
                   slope[i] - h[i] * (2.0 * moment[i] + moment[i + 1]) / 6.0,
                   0.5 * moment[i],
                   (moment[i + 1] - moment[i]) / (6.0 * h[i])};
  }
  return CubicSplineModel(std::vector<double>(x.begin(), x.end()),
                          std::vector<double>(f.begin(), f.end()),
                          std::move(segments),
                          boundary);
}

double spline_eval(const CubicSplineModel& model, double u)
{
  return model(u);
}

double spline_derivative_eval(const CubicSplineModel& model, double u)
{
  return model.derivative(u, 1);
}

} // namespace splinepdf
