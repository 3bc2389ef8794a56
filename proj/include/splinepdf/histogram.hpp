#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace splinepdf {

//! Observations with per-sample nonnegative weights.
class Samples
{
public:
  //! Throws EmptyInput (fewer than two values), NonFiniteInput or
  //! InvalidWeights (length mismatch, negative, or zero total).
  Samples(std::vector<double> values, std::vector<double> weights);

  //! Uniform weights 1/N.
  static Samples uniform(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return values_.size(); }
  double total_weight() const;
  double min() const;
  double max() const;

private:
  std::vector<double> values_;
  std::vector<double> weights_;
};

struct BinRule
{
  enum class Kind
  {
    SqrtN,
    Sturges,
    Scott,
    FreedmanDiaconis,
    Knuth,
    FixedCount
  };

  Kind kind = Kind::Knuth;
  std::size_t fixed_count = 0;      // FixedCount only
  std::size_t knuth_search_max = 200; // Knuth only

  static BinRule sqrt_n() { return {Kind::SqrtN}; }
  static BinRule sturges() { return {Kind::Sturges}; }
  static BinRule scott() { return {Kind::Scott}; }
  static BinRule freedman_diaconis() { return {Kind::FreedmanDiaconis}; }
  static BinRule knuth(std::size_t search_max = 200) { return {Kind::Knuth, 0, search_max}; }
  static BinRule fixed(std::size_t k) { return {Kind::FixedCount, k}; }

  //! Throws InvalidBinRule when FixedCount has k = 0 or knuth_search_max = 0.
  void validate() const;

  //! Command-line spelling: sqrt, sturges, scott, fd, knuth, fixed:K.
  std::string to_string() const;
  static BinRule parse(const std::string& text);

  bool operator==(const BinRule&) const = default;
};

//! Equal-width histogram over [min, max] with density-normalized heights.
struct Histogram
{
  std::vector<double> edges;   // B + 1, strictly increasing
  std::vector<double> heights; // B, density units
  std::vector<double> centers; // B
  double total_weight = 0.0;   // raw weighted mass before normalization

  std::size_t bin_count() const { return heights.size(); }
  double width(std::size_t i) const { return edges[i + 1] - edges[i]; }
};

//! B + 1 uniformly spaced edges; the last edge is exactly hi.
std::vector<double> uniform_edges(double lo, double hi, std::size_t bin_count);

//! Bin of v under half-open bins with the last bin closed.
//! Values outside [edges.front(), edges.back()] are clamped to the end bins.
std::size_t bin_index(std::span<const double> edges, double v);

//! Unweighted occupancy of B equal-width bins over [min, max] of values.
std::vector<std::size_t> bin_counts(std::span<const double> values, std::size_t bin_count);

//! Equal-width Bayesian log-posterior (up to an additive constant):
//! N ln B + lnG(B/2) - B lnG(1/2) - lnG(N + B/2) + sum_k lnG(n_k + 1/2).
double knuth_log_posterior(std::span<const std::size_t> counts, std::size_t total);

std::size_t select_bin_count(const Samples& samples, const BinRule& rule);

Histogram build_histogram(const Samples& samples, std::size_t bin_count);

} // namespace splinepdf
