#include "splinepdf/cli.hpp"

#include "splinepdf/csv.hpp"
#include "splinepdf/error.hpp"
#include "splinepdf/rng.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <limits>

namespace splinepdf::cli {

namespace {

constexpr std::size_t kSimpsonIntervals = 10000;

nlohmann::ordered_json range_json(const ParameterRange& r)
{
  return nlohmann::ordered_json::array({r.lo, r.hi});
}

ParameterRange range_from(const nlohmann::json& j)
{
  if (!j.is_array() || j.size() != 2) {
    throw Error(ErrorCode::UsageError, "parameter ranges are [lo, hi] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

// Linear interpolation of a sampled curve; u must be strictly increasing.
double interpolate(const std::vector<double>& u, const std::vector<double>& v, double at)
{
  const auto it = std::upper_bound(u.begin(), u.end(), at);
  if (it == u.begin()) {
    return v.front();
  }
  if (it == u.end()) {
    return v.back();
  }
  const auto k = static_cast<std::size_t>(it - u.begin());
  const double w = (at - u[k - 1]) / (u[k] - u[k - 1]);
  return v[k - 1] + w * (v[k] - v[k - 1]);
}

struct Curve
{
  std::vector<double> u;
  std::vector<double> pdf;
};

Curve read_curve(const std::filesystem::path& path)
{
  auto [u, pdf] = csv::read_columns(path, "u", "pdf");
  if (u.size() < 2) {
    throw Error(ErrorCode::ParseError, "'" + path.string() + "' needs at least two curve rows");
  }
  for (std::size_t k = 1; k < u.size(); ++k) {
    if (!(u[k] > u[k - 1])) {
      throw Error(ErrorCode::ParseError,
                  "row " + std::to_string(k + 2) + " of '" + path.string() + "': u must be strictly increasing");
    }
  }
  return {std::move(u), std::move(pdf)};
}

std::vector<double> load_samples(const RunConfig& config)
{
  if (config.input) {
    return csv::read_column(*config.input, config.column);
  }
  return flatten_positions(generate_corpus(config.corpus));
}

} // namespace

int exit_code_for(ErrorCode code)
{
  switch (code) {
    case ErrorCode::UsageError:
    case ErrorCode::InvalidBinRule:
    case ErrorCode::InvalidRanges:
    case ErrorCode::InvalidScenario:
    case ErrorCode::InvalidArgument:
      return kUsage;
    case ErrorCode::IoError:
    case ErrorCode::ParseError:
    case ErrorCode::EmptyInput:
    case ErrorCode::NonFiniteInput:
    case ErrorCode::InvalidWeights:
      return kDataError;
    default:
      return kNumericError;
  }
}

void RunConfig::validate_for_estimate() const
{
  if (input.has_value() == use_generator) {
    throw Error(ErrorCode::UsageError, "estimate needs exactly one input: --input FILE or --generate");
  }
  if (grid < 2) {
    throw Error(ErrorCode::UsageError, "--grid must be at least 2");
  }
}

nlohmann::ordered_json RunConfig::to_json() const
{
  nlohmann::ordered_json j;
  j["input"] = input ? nlohmann::ordered_json(input->string()) : nlohmann::ordered_json(nullptr);
  j["generate"] = use_generator;
  j["column"] = column;
  j["rule"] = rule.to_string();
  j["bc"] = to_string(boundary);
  j["grid"] = grid;
  j["out_dir"] = out_dir.string();
  j["output"] = output ? nlohmann::ordered_json(output->string()) : nlohmann::ordered_json(nullptr);
  j["corpus"] = {
    {"count", corpus.count},
    {"seed", corpus.seed},
    {"rng", PortableRng::kAlgorithm},
    {"v0", range_json(corpus.v0)},
    {"t_react", range_json(corpus.t_react)},
    {"decel", range_json(corpus.decel)},
    {"dt", corpus.dt},
  };
  return j;
}

void RunConfig::merge_json(const nlohmann::json& j)
{
  try {
    if (j.contains("input")) {
      input = j["input"].is_null() ? std::nullopt
                                   : std::optional<std::filesystem::path>(j["input"].get<std::string>());
    }
    if (j.contains("generate")) {
      use_generator = j["generate"].get<bool>();
    }
    if (j.contains("column")) {
      column = j["column"].get<std::string>();
    }
    if (j.contains("rule")) {
      rule = BinRule::parse(j["rule"].get<std::string>());
    }
    if (j.contains("bc")) {
      boundary = parse_boundary(j["bc"].get<std::string>());
    }
    if (j.contains("grid")) {
      grid = j["grid"].get<std::size_t>();
    }
    if (j.contains("out_dir")) {
      out_dir = j["out_dir"].get<std::string>();
    }
    if (j.contains("output")) {
      output = j["output"].is_null() ? std::nullopt
                                     : std::optional<std::filesystem::path>(j["output"].get<std::string>());
    }
    if (j.contains("corpus")) {
      const auto& c = j["corpus"];
      if (c.contains("rng") && c["rng"].get<std::string>() != PortableRng::kAlgorithm) {
        throw Error(ErrorCode::UsageError, "unsupported rng '" + c["rng"].get<std::string>() + "'");
      }
      if (c.contains("count")) {
        corpus.count = c["count"].get<std::size_t>();
      }
      if (c.contains("seed")) {
        corpus.seed = c["seed"].get<std::uint64_t>();
      }
      if (c.contains("v0")) {
        corpus.v0 = range_from(c["v0"]);
      }
      if (c.contains("t_react")) {
        corpus.t_react = range_from(c["t_react"]);
      }
      if (c.contains("decel")) {
        corpus.decel = range_from(c["decel"]);
      }
      if (c.contains("dt")) {
        corpus.dt = c["dt"].get<double>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::UsageError, std::string("bad config value: ") + e.what());
  }
}

nlohmann::ordered_json EstimateSummary::to_json() const
{
  return {
    {"rule", rule},
    {"bins", bins},
    {"bc", boundary},
    {"samples", samples},
    {"lo", lo},
    {"hi", hi},
    {"min_density", min_density},
    {"negative_density", negative_density},
    {"turning_points", turning_points},
    {"integral_analytic", integral_analytic},
    {"integral_simpson", integral_simpson},
  };
}

EstimateSummary summarize(const PdfEstimate& est, std::size_t samples, std::size_t grid)
{
  EstimateSummary s;
  s.rule = est.rule().to_string();
  s.bins = est.bin_count();
  s.boundary = to_string(est.boundary());
  s.samples = samples;
  s.lo = est.lo();
  s.hi = est.hi();
  s.min_density = min_density(est);
  s.negative_density = s.min_density < 0.0;
  s.turning_points = count_turning_points(est, std::max<std::size_t>(grid, 3));
  s.integral_analytic = est.total_mass();
  s.integral_simpson = simpson_integral([&](double u) { return est(u); }, est.lo(), est.hi(), kSimpsonIntervals);
  return s;
}

GenerateReport cmd_generate(const RunConfig& config, std::ostream& log)
{
  if (config.corpus.count < 1) {
    throw Error(ErrorCode::UsageError, "--count must be at least 1");
  }
  const auto corpus = generate_corpus(config.corpus);
  GenerateReport report;
  report.path = config.output.value_or(config.out_dir / "corpus.csv");
  report.count = corpus.size();
  report.min_x_end = std::numeric_limits<double>::infinity();
  report.max_x_end = -std::numeric_limits<double>::infinity();
  for (const auto& series : corpus) {
    report.min_x_end = std::min(report.min_x_end, series.x.back());
    report.max_x_end = std::max(report.max_x_end, series.x.back());
  }
  csv::write_corpus(report.path, corpus);
  log << "wrote " << report.path.string() << ": " << report.count << " series, x_end in ["
      << csv::format_double(report.min_x_end) << ", " << csv::format_double(report.max_x_end) << "] m\n";
  return report;
}

EstimateSummary cmd_estimate(const RunConfig& config, std::ostream& log)
{
  config.validate_for_estimate();
  const auto values = load_samples(config);
  const auto samples = Samples::uniform(values);
  const std::size_t bins = select_bin_count(samples, config.rule);
  const auto hist = build_histogram(samples, bins);
  const auto est = estimate_pdf(hist, config.boundary, config.rule);

  const auto grid = uniform_grid(est.lo(), est.hi(), config.grid);
  std::vector<double> density(grid.size());
  std::transform(grid.begin(), grid.end(), density.begin(), [&](double u) { return est(u); });

  const auto summary = summarize(est, samples.size(), config.grid);

  csv::write_histogram(config.out_dir / "histogram.csv", hist);
  csv::write_curve(config.out_dir / "pdf_curve.csv", grid, density);
  {
    const auto path = config.out_dir / "summary.jsonl";
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
    }
    out << summary.to_json().dump() << '\n';
    if (!out) {
      throw Error(ErrorCode::IoError, "write to '" + path.string() + "' failed");
    }
  }

  log << summary.to_json().dump() << '\n';
  if (summary.negative_density) {
    log << "warning: estimate dips below zero (min density " << csv::format_double(summary.min_density)
        << ")\n";
  }
  return summary;
}

CompareReport cmd_compare(const std::filesystem::path& a,
                          const std::filesystem::path& b,
                          std::size_t grid,
                          std::ostream& log)
{
  const auto curve_a = read_curve(a);
  const auto curve_b = read_curve(b);
  const double lo = std::max(curve_a.u.front(), curve_b.u.front());
  const double hi = std::min(curve_a.u.back(), curve_b.u.back());
  if (!(hi > lo)) {
    throw Error(ErrorCode::DisjointSupports, "curve supports do not overlap");
  }
  CompareReport report;
  report.grid = grid != 0 ? grid : std::max(curve_a.u.size(), curve_b.u.size());
  auto pa = [&](double u) { return interpolate(curve_a.u, curve_a.pdf, u); };
  auto pb = [&](double u) { return interpolate(curve_b.u, curve_b.pdf, u); };
  report.kl_ab = kl_divergence(pa, pb, lo, hi, report.grid);
  report.kl_ba = kl_divergence(pb, pa, lo, hi, report.grid);
  log << "KL(A||B) = " << csv::format_double(report.kl_ab) << '\n'
      << "KL(B||A) = " << csv::format_double(report.kl_ba) << '\n';
  return report;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Smooth density estimates from histograms via cubic splines of the cumulative masses"};
  app.require_subcommand(1);

  std::string config_path;
  bool emit_config = false;
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::size_t grid = 0;
  std::string out_dir;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_flag("--emit-config", emit_config, "print the resolved config and exit");
    sub->add_option("--out-dir", out_dir, "directory for output files");
  };

  auto* generate = app.add_subcommand("generate", "write a synthetic emergency-braking corpus");
  std::string output;
  std::vector<double> v0, t_react, decel;
  double dt = 0.0;
  add_common(generate);
  auto* gen_seed = generate->add_option("--seed", seed, "master seed");
  auto* gen_count = generate->add_option("--count", count, "number of series");
  auto* gen_output = generate->add_option("--output", output, "corpus CSV path (default OUT_DIR/corpus.csv)");
  auto* gen_v0 = generate->add_option("--v0", v0, "initial speed range LO HI (m/s)")->expected(2);
  auto* gen_react = generate->add_option("--t-react", t_react, "reaction time range LO HI (s)")->expected(2);
  auto* gen_decel = generate->add_option("--decel", decel, "deceleration range LO HI (m/s^2)")->expected(2);
  auto* gen_dt = generate->add_option("--dt", dt, "sample interval (s)");

  auto* estimate = app.add_subcommand("estimate", "estimate a density and export plot data");
  std::string input, column, rule, bc;
  bool from_generator = false;
  add_common(estimate);
  auto* est_input = estimate->add_option("--input", input, "CSV file with the samples");
  auto* est_generate = estimate->add_flag("--generate", from_generator, "use the braking corpus generator as input");
  auto* est_column = estimate->add_option("--column", column, "numeric column to read (default x)");
  auto* est_rule = estimate->add_option("--rule", rule, "sqrt|sturges|scott|fd|knuth|knuth:MAX|fixed:K");
  auto* est_bc = estimate->add_option("--bc", bc, "clamped|natural|not-a-knot");
  auto* est_grid = estimate->add_option("--grid", grid, "rows of the exported density curve");
  auto* est_seed = estimate->add_option("--seed", seed, "generator seed (with --generate)");
  auto* est_count = estimate->add_option("--count", count, "generator series count (with --generate)");

  auto* compare = app.add_subcommand("compare", "KL divergence between two exported density curves");
  std::string curve_a, curve_b;
  std::size_t compare_grid = 0;
  compare->add_option("a", curve_a, "first u,pdf curve CSV")->required();
  compare->add_option("b", curve_b, "second u,pdf curve CSV")->required();
  compare->add_option("--grid", compare_grid, "common grid size (default: larger file)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (compare->parsed()) {
      cmd_compare(curve_a, curve_b, compare_grid, out);
      return kOk;
    }

    RunConfig config;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        throw Error(ErrorCode::IoError, "cannot open config '" + config_path + "'");
      }
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::UsageError, std::string("bad config file: ") + e.what());
      }
      config.merge_json(j);
    }
    if (!out_dir.empty()) {
      config.out_dir = out_dir;
    }

    auto given = [](const CLI::Option* opt) { return opt->count() > 0; };
    auto to_range = [](const std::vector<double>& v) { return ParameterRange{v[0], v[1]}; };

    if (generate->parsed()) {
      if (given(gen_seed)) config.corpus.seed = seed;
      if (given(gen_count)) config.corpus.count = count;
      if (given(gen_output)) config.output = output;
      if (given(gen_v0)) config.corpus.v0 = to_range(v0);
      if (given(gen_react)) config.corpus.t_react = to_range(t_react);
      if (given(gen_decel)) config.corpus.decel = to_range(decel);
      if (given(gen_dt)) config.corpus.dt = dt;
      if (emit_config) {
        out << config.to_json().dump(2) << '\n';
        return kOk;
      }
      cmd_generate(config, out);
      return kOk;
    }

    if (given(est_input)) config.input = input;
    if (given(est_generate)) config.use_generator = from_generator;
    if (given(est_column)) config.column = column;
    if (given(est_rule)) config.rule = BinRule::parse(rule);
    if (given(est_bc)) config.boundary = parse_boundary(bc);
    if (given(est_grid)) config.grid = grid;
    if (given(est_seed)) config.corpus.seed = seed;
    if (given(est_count)) config.corpus.count = count;
    if (emit_config) {
      out << config.to_json().dump(2) << '\n';
      return kOk;
    }
    cmd_estimate(config, out);
    return kOk;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

} // namespace splinepdf::cli
