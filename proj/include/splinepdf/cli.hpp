#pragma once

#include "splinepdf/datagen.hpp"
#include "splinepdf/error.hpp"
#include "splinepdf/estimator.hpp"
#include "splinepdf/histogram.hpp"
#include "splinepdf/spline.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace splinepdf::cli {

enum ExitCode : int
{
  kOk = 0,
  kUsage = 1,
  kDataError = 2,
  kNumericError = 3
};

int exit_code_for(ErrorCode code);

//! Fully resolved settings of one run. Precedence: flags, then the config
//! file, then these defaults.
struct RunConfig
{
  std::optional<std::filesystem::path> input; // CSV file source
  bool use_generator = false;                 // braking-corpus source
  CorpusConfig corpus;
  std::string column = "x";
  BinRule rule = BinRule::knuth();
  BoundaryCondition boundary = BoundaryCondition::NotAKnot;
  std::size_t grid = 1001;
  std::filesystem::path out_dir = ".";
  std::optional<std::filesystem::path> output; // generate: corpus file, default out_dir/corpus.csv

  //! Estimate needs exactly one input source; grid >= 2. Throws UsageError.
  void validate_for_estimate() const;

  nlohmann::ordered_json to_json() const;
  //! Overlays the keys present in j onto this config.
  void merge_json(const nlohmann::json& j);
};

struct GenerateReport
{
  std::filesystem::path path;
  std::size_t count = 0;
  double min_x_end = 0.0;
  double max_x_end = 0.0;
};

struct EstimateSummary
{
  std::string rule;
  std::size_t bins = 0;
  std::string boundary;
  std::size_t samples = 0;
  double lo = 0.0;
  double hi = 0.0;
  double min_density = 0.0;
  bool negative_density = false;
  std::size_t turning_points = 0;
  double integral_analytic = 0.0;
  double integral_simpson = 0.0;

  nlohmann::ordered_json to_json() const;
  bool operator==(const EstimateSummary&) const = default;
};

//! Summary record of an estimate; simpson uses 10^4 intervals.
EstimateSummary summarize(const PdfEstimate& est, std::size_t samples, std::size_t grid);

struct CompareReport
{
  double kl_ab = 0.0;
  double kl_ba = 0.0;
  std::size_t grid = 0;
};

GenerateReport cmd_generate(const RunConfig& config, std::ostream& log);

//! Writes histogram.csv, pdf_curve.csv and summary.jsonl into out_dir.
EstimateSummary cmd_estimate(const RunConfig& config, std::ostream& log);

//! KL in both directions between two u,pdf curve files, each linearly
//! re-interpolated onto a common uniform grid over the overlap of their
//! supports. grid = 0 picks the larger of the two file row counts.
CompareReport cmd_compare(const std::filesystem::path& a,
                          const std::filesystem::path& b,
                          std::size_t grid,
                          std::ostream& log);

//! Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace splinepdf::cli
