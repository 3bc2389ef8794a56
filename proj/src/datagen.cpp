#include "splinepdf/datagen.hpp"

#include "splinepdf/error.hpp"
#include "splinepdf/rng.hpp"

#include <algorithm>
#include <cmath>

namespace splinepdf {

void BrakingScenario::validate() const
{
  const bool finite = std::isfinite(v0) && std::isfinite(t_react) && std::isfinite(decel) && std::isfinite(dt);
  if (!finite || !(v0 > 0.0) || !(t_react >= 0.0) || !(decel > 0.0) || !(dt > 0.0)) {
    throw Error(ErrorCode::InvalidScenario,
                "scenario needs v0 > 0, t_react >= 0, decel > 0, dt > 0 (all finite)");
  }
  if (!std::isfinite(stopping_distance()) || !std::isfinite(stop_time() / dt)) {
    throw Error(ErrorCode::InvalidScenario, "stopping distance is not finite");
  }
}

double BrakingScenario::position(double t) const
{
  if (t <= 0.0) {
    return 0.0;
  }
  if (t <= t_react) {
    return v0 * t;
  }
  if (t >= stop_time()) {
    return stopping_distance();
  }
  const double tau = t - t_react;
  return v0 * t_react + v0 * tau - 0.5 * decel * tau * tau;
}

TimeSeries simulate_braking(const BrakingScenario& scenario)
{
  scenario.validate();
  const auto last = static_cast<std::size_t>(std::ceil(scenario.stop_time() / scenario.dt));
  TimeSeries series;
  series.scenario = scenario;
  series.t.resize(last + 1);
  series.x.resize(last + 1);
  for (std::size_t k = 0; k <= last; ++k) {
    series.t[k] = static_cast<double>(k) * scenario.dt;
    series.x[k] = scenario.position(series.t[k]);
    // rounding near the apex of the braking parabola can dip by an ulp
    if (k > 0) {
      series.x[k] = std::max(series.x[k], series.x[k - 1]);
    }
  }
  return series;
}

void CorpusConfig::validate() const
{
  auto valid = [](const ParameterRange& r) {
    return std::isfinite(r.lo) && std::isfinite(r.hi) && r.lo <= r.hi;
  };
  if (count < 1) {
    throw Error(ErrorCode::InvalidRanges, "corpus count must be at least 1");
  }
  if (!valid(v0) || !valid(t_react) || !valid(decel) || !std::isfinite(dt)) {
    throw Error(ErrorCode::InvalidRanges, "parameter ranges need finite lo <= hi");
  }
  if (!(v0.lo > 0.0) || !(t_react.lo >= 0.0) || !(decel.lo > 0.0) || !(dt > 0.0)) {
    throw Error(ErrorCode::InvalidRanges, "ranges must satisfy v0 > 0, t_react >= 0, decel > 0, dt > 0");
  }
}

std::vector<TimeSeries> generate_corpus(const CorpusConfig& config)
{
  config.validate();
  std::vector<TimeSeries> corpus;
  corpus.reserve(config.count);
  for (std::size_t i = 0; i < config.count; ++i) {
    PortableRng rng(stream_seed(config.seed, i));
    BrakingScenario scenario;
    scenario.v0 = rng.uniform(config.v0.lo, config.v0.hi);
    scenario.t_react = rng.uniform(config.t_react.lo, config.t_react.hi);
    scenario.decel = rng.uniform(config.decel.lo, config.decel.hi);
    scenario.dt = config.dt;
    corpus.push_back(simulate_braking(scenario));
  }
  return corpus;
}

std::vector<double> flatten_positions(const std::vector<TimeSeries>& corpus)
{
  std::vector<double> positions;
  for (const auto& series : corpus) {
    positions.insert(positions.end(), series.x.begin(), series.x.end());
  }
  return positions;
}

} // namespace splinepdf
