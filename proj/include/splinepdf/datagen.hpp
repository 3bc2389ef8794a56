#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace splinepdf {

//! Emergency stop: constant speed during the reaction time, then constant
//! deceleration to rest.
struct BrakingScenario
{
  double v0 = 30.0;      // m/s
  double t_react = 1.0;  // s
  double decel = 4.0;    // m/s^2, magnitude
  double dt = 0.01;      // s

  //! Throws InvalidScenario.
  void validate() const;
  double stop_time() const { return t_react + v0 / decel; }
  double stopping_distance() const { return v0 * t_react + v0 * v0 / (2.0 * decel); }
  //! Closed-form position at time t (m); constant after the stop.
  double position(double t) const;
};

struct TimeSeries
{
  BrakingScenario scenario;
  std::vector<double> t;
  std::vector<double> x;
};

//! Samples at t = k dt for k = 0 .. ceil(stop_time / dt); the last sample
//! sits at or after the stop, so it holds the stopping distance.
TimeSeries simulate_braking(const BrakingScenario& scenario);

struct ParameterRange
{
  double lo = 0.0;
  double hi = 0.0;
};

struct CorpusConfig
{
  std::size_t count = 1000;
  ParameterRange v0{25.0, 35.0};
  ParameterRange t_react{0.8, 1.5};
  ParameterRange decel{3.5, 4.5};
  double dt = 0.01;
  std::uint64_t seed = 42;

  //! Throws InvalidRanges.
  void validate() const;
};

//! Series i draws v0, t_react, decel (in that order) from its own stream
//! seeded by stream_seed(seed, i), so the corpus does not depend on the
//! order series are generated in.
std::vector<TimeSeries> generate_corpus(const CorpusConfig& config);

//! Every position sample of every series, series by series.
std::vector<double> flatten_positions(const std::vector<TimeSeries>& corpus);

} // namespace splinepdf
