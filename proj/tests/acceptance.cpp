// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Usage: splinepdf_acceptance PATH_TO_SPLINEPDF_CLI

#include "oracles.hpp"

#include "splinepdf/datagen.hpp"
#include "splinepdf/estimator.hpp"
#include "splinepdf/histogram.hpp"
#include "splinepdf/rng.hpp"
#include "splinepdf/spline.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace splinepdf;
namespace fs = std::filesystem;

namespace {

struct Outcome
{
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double time_limit_s, const std::function<Outcome()>& body)
{
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome = {false, std::string("exception: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream timing;
  timing << seconds << " s";
  if (time_limit_s > 0.0) {
    timing << " / limit " << time_limit_s << " s";
    if (seconds >= time_limit_s) {
      outcome.pass = false;
      outcome.detail += " [too slow]";
    }
  }
  if (!outcome.pass) {
    ++failures;
  }
  std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << "#" << id << " " << name << ": " << outcome.detail << " ("
            << timing.str() << ")" << std::endl;
}

const BoundaryCondition kAllBoundaries[] = {
  BoundaryCondition::Clamped, BoundaryCondition::Natural, BoundaryCondition::NotAKnot};

// 50 seeded datasets of varied shape, size and bin rule.
struct Dataset
{
  Histogram hist;
  BinRule rule;
};

std::vector<Dataset> seeded_datasets()
{
  const BinRule rules[] = {BinRule::sturges(), BinRule::scott(), BinRule::freedman_diaconis(), BinRule::sqrt_n(),
                           BinRule::knuth()};
  std::vector<Dataset> out;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    PortableRng rng(stream_seed(2025, seed));
    const std::size_t n = 500 + static_cast<std::size_t>(rng.uniform() * 4500);
    std::vector<double> v(n);
    for (auto& x : v) {
      switch (seed % 4) {
        case 0: x = rng.normal(10.0, 3.0); break;
        case 1: x = rng.uniform() < 0.4 ? rng.normal(-2.0, 0.5) : rng.normal(2.0, 1.0); break;
        case 2: x = -std::log(1.0 - rng.uniform()) * 4.0; break;
        default: x = rng.uniform(0.0, 50.0) + rng.normal(0.0, 5.0); break;
      }
    }
    const auto samples = Samples::uniform(v);
    const auto rule = rules[seed % 5];
    std::size_t bins = select_bin_count(samples, rule);
    if (bins < 3) {
      bins = 3;
    }
    out.push_back({build_histogram(samples, bins), rule});
  }
  return out;
}

double gauss3(const PdfEstimate& est, double a, double b)
{
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double node = std::sqrt(0.6);
  return half * (5.0 / 9.0 * est(mid - half * node) + 8.0 / 9.0 * est(mid) + 5.0 / 9.0 * est(mid + half * node));
}

std::string fmt(double v)
{
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

std::string slurp(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

int main(int argc, char** argv)
{
  const std::string cli = argc > 1 ? argv[1] : "";
  std::cout << "splinepdf acceptance suite\n";

  criterion(1, "per-bin mass identity, 50 datasets x 3 boundary conditions, tol 1e-10", 10.0, [] {
    double worst = 0.0;
    std::size_t bins_checked = 0;
    for (const auto& d : seeded_datasets()) {
      for (auto bc : kAllBoundaries) {
        const auto est = estimate_pdf(d.hist, bc, d.rule);
        for (std::size_t i = 0; i < d.hist.bin_count(); ++i) {
          const double mass = d.hist.heights[i] * d.hist.width(i);
          worst = std::max(worst, std::abs(gauss3(est, d.hist.edges[i], d.hist.edges[i + 1]) - mass));
          ++bins_checked;
        }
      }
    }
    return Outcome{worst <= 1e-10, std::to_string(bins_checked) + " bins, max error " + fmt(worst)};
  });

  criterion(2, "normalization: analytic = 1 (tol 1e-12), Simpson 1e4 within 1e-6", 0.0, [] {
    double worst_analytic = 0.0;
    double worst_simpson = 0.0;
    for (const auto& d : seeded_datasets()) {
      for (auto bc : kAllBoundaries) {
        const auto est = estimate_pdf(d.hist, bc, d.rule);
        worst_analytic = std::max(worst_analytic, std::abs(est.total_mass() - 1.0));
        const double simpson = simpson_integral([&](double u) { return est(u); }, est.lo(), est.hi(), 10000);
        worst_simpson = std::max(worst_simpson, std::abs(simpson - 1.0));
      }
    }
    return Outcome{worst_analytic <= 1e-12 && worst_simpson <= 1e-6,
                   "analytic " + fmt(worst_analytic) + ", simpson " + fmt(worst_simpson)};
  });

  criterion(3, "boundary contracts (clamped 1e-12, natural 1e-9 scaled, not-a-knot 1e-9 scaled)", 0.0, [] {
    double clamped = 0.0, natural = 0.0, not_a_knot = 0.0;
    for (const auto& d : seeded_datasets()) {
      for (auto bc : kAllBoundaries) {
        const auto est = estimate_pdf(d.hist, bc, d.rule);
        const auto& s = est.spline();
        const auto& seg = s.segments();
        switch (bc) {
          case BoundaryCondition::Clamped:
            clamped = std::max({clamped, std::abs(est(est.lo())), std::abs(est(est.hi()))});
            break;
          case BoundaryCondition::Natural: {
            double scale = 1.0;
            for (double k : s.knots()) {
              scale = std::max(scale, std::abs(s.derivative(k, 2)));
            }
            natural = std::max({natural, std::abs(s.derivative(est.lo(), 2)) / scale,
                                std::abs(s.derivative(est.hi(), 2)) / scale});
            break;
          }
          case BoundaryCondition::NotAKnot: {
            double scale = 1.0;
            for (const auto& c : seg) {
              scale = std::max(scale, std::abs(6.0 * c[3]));
            }
            const std::size_t last = seg.size() - 1;
            not_a_knot = std::max({not_a_knot, 6.0 * std::abs(seg[0][3] - seg[1][3]) / scale,
                                   6.0 * std::abs(seg[last][3] - seg[last - 1][3]) / scale});
            break;
          }
        }
      }
    }
    return Outcome{clamped <= 1e-12 && natural <= 1e-9 && not_a_knot <= 1e-9,
                   "clamped " + fmt(clamped) + ", natural " + fmt(natural) + ", not-a-knot " + fmt(not_a_knot)};
  });

  criterion(4, "basis: partition of unity 1e-12, exact local support, derivative vs central differences 1e-6", 5.0, [] {
    PortableRng rng(404);
    const std::vector<std::vector<double>> vectors{
      {0, 1, 2, 3, 4, 5, 6, 7, 8},
      {0, 0, 0, 0, 0.3, 1.1, 1.2, 2.5, 3, 3, 3, 3},
      {-2, -1.5, -1.4, 0, 0.2, 0.21, 1.7, 2.2, 3.9, 4},
    };
    double unity = 0.0, fd = 0.0;
    bool support = true;
    for (const auto& knots : vectors) {
      const KnotVector tau(knots);
      const std::size_t n = knots.size();
      const int p = 3;
      const std::size_t count = n - p - 1;
      for (int k = 0; k < 1000; ++k) {
        const double u = rng.uniform(knots[p], knots[n - p - 1]);
        double sum = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
          const double value = bspline_basis(i, p, tau, u);
          sum += value;
          if ((u < knots[i] || u > knots[i + p + 1]) && value != 0.0) {
            support = false;
          }
        }
        unity = std::max(unity, std::abs(sum - 1.0));
      }
      for (int k = 0; k < 100; ++k) {
        const double u = rng.uniform(knots.front() + 1e-3, knots.back() - 1e-3);
        for (std::size_t i = 0; i < count; ++i) {
          const double diff = oracle::central_difference([&](double v) { return bspline_basis(i, p, tau, v); }, u, 1e-5);
          fd = std::max(fd, std::abs(bspline_basis_derivative(i, p, tau, u) - diff));
        }
      }
    }
    return Outcome{unity <= 1e-12 && support && fd <= 1e-6,
                   "unity " + fmt(unity) + ", support " + (support ? "exact" : "VIOLATED") + ", derivative " + fmt(fd)};
  });

  criterion(5, "spline oracles: not-a-knot cubic reproduction 1e-9, line reproduction 1e-10", 0.0, [] {
    PortableRng rng(505);
    double cubic = 0.0, line = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3), c = rng.uniform(-3, 3), d = rng.uniform(-3, 3);
      auto q = [&](double u) { return a + u * (b + u * (c + u * d)); };
      std::vector<double> x{0.0};
      for (int k = 1; k < 6; ++k) {
        x.push_back(x.back() + rng.uniform(0.1, 1.0));
      }
      std::vector<double> f;
      for (double v : x) {
        f.push_back(q(v));
      }
      const auto s = fit_interpolating_spline(x, f, BoundaryCondition::NotAKnot);
      for (int k = 0; k < 50; ++k) {
        const double u = rng.uniform(x.front(), x.back());
        cubic = std::max(cubic, std::abs(s(u) - q(u)));
      }
      for (auto bc : kAllBoundaries) {
        const double slope = bc == BoundaryCondition::Clamped ? 0.0 : rng.uniform(-2, 2);
        const double icpt = rng.uniform(-2, 2);
        std::vector<double> g;
        for (double v : x) {
          g.push_back(icpt + slope * v);
        }
        const auto l = fit_interpolating_spline(x, g, bc);
        for (int k = 0; k < 50; ++k) {
          const double u = rng.uniform(x.front(), x.back());
          line = std::max(line, std::abs(l(u) - (icpt + slope * u)));
        }
      }
    }
    return Outcome{cubic <= 1e-9 && line <= 1e-10, "cubic " + fmt(cubic) + ", line " + fmt(line)};
  });

  criterion(6, "Knuth argmax over [1, 200] equals exhaustive scan on 10 datasets; logP(B=1) = 0", 30.0, [] {
    std::ostringstream picks;
    bool all = true;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      PortableRng rng(stream_seed(606, seed));
      std::vector<double> v(10000);
      for (auto& x : v) {
        switch (seed % 3) {
          case 0: x = rng.normal(0.0, 1.0); break;
          case 1: x = rng.uniform(-1.0, 3.0); break;
          default: x = rng.uniform() < 0.5 ? rng.normal(-3.0, 1.0) : rng.normal(3.0, 0.7); break;
        }
      }
      const std::size_t got = select_bin_count(Samples::uniform(v), BinRule::knuth(200));
      const std::size_t want = oracle::knuth_argmax(v, 200);
      all = all && got == want;
      picks << (seed ? "," : "") << got << (got == want ? "" : "!=" + std::to_string(want));
      const std::vector<std::size_t> one{v.size()};
      all = all && knuth_log_posterior(one, v.size()) == 0.0;
    }
    return Outcome{all, "B = " + picks.str()};
  });

  criterion(7, "corpus: 1000 series, x_end > 65 m, x[0] = 0, monotone", 5.0, [] {
    const auto corpus = generate_corpus(CorpusConfig{});
    bool ok = corpus.size() == 1000;
    double min_end = INFINITY;
    for (const auto& s : corpus) {
      ok = ok && s.x.front() == 0.0;
      for (std::size_t k = 1; k < s.x.size(); ++k) {
        ok = ok && s.x[k] >= s.x[k - 1];
      }
      min_end = std::min(min_end, s.x.back());
    }
    ok = ok && min_end > 65.0;
    return Outcome{ok, std::to_string(corpus.size()) + " series, min x_end " + std::to_string(min_end) + " m"};
  });

  criterion(8, "oscillation ordering on the default corpus: natural >= not-a-knot (pinned 53 / 51)", 0.0, [] {
    const auto samples = Samples::uniform(flatten_positions(generate_corpus(CorpusConfig{})));
    const std::size_t bins = select_bin_count(samples, BinRule::knuth());
    const auto hist = build_histogram(samples, bins);
    const auto natural = estimate_pdf(hist, BoundaryCondition::Natural, BinRule::knuth());
    const auto nak = estimate_pdf(hist, BoundaryCondition::NotAKnot, BinRule::knuth());
    const std::size_t tn = count_turning_points(natural, 1001);
    const std::size_t tk = count_turning_points(nak, 1001);
    const bool pinned = tn == 53 && tk == 51;
    return Outcome{tn >= tk && pinned,
                   "B = " + std::to_string(bins) + ", natural " + std::to_string(tn) + ", not-a-knot " +
                     std::to_string(tk)};
  });

  criterion(9, "density recovery: KL(truth || Knuth + not-a-knot) < 2e-3 on 1001 points; KL(p || p) = 0", 0.0, [] {
    PortableRng rng(909);
    std::vector<double> v(100000);
    for (auto& x : v) {
      x = rng.normal(5.0, 2.0);
    }
    const auto est = estimate_pdf(Samples::uniform(v), BinRule::knuth(), BoundaryCondition::NotAKnot);
    const double kl = kl_divergence([](double u) { return oracle::gaussian_pdf(u, 5.0, 2.0); },
                                    [&](double u) { return est(u); }, est.lo(), est.hi(), 1001);
    const double self = kl_divergence(est, est, 1001);
    return Outcome{kl >= 0.0 && kl < 2e-3 && std::abs(self) <= 1e-12,
                   "B = " + std::to_string(est.bin_count()) + ", KL " + fmt(kl) + ", self " + fmt(self)};
  });

  criterion(10, "CLI generate -> estimate twice with the same seed gives byte-identical artifacts", 0.0, [&] {
    if (cli.empty()) {
      return Outcome{false, "no CLI path given"};
    }
    const auto root = fs::temp_directory_path() / "splinepdf_acceptance";
    fs::remove_all(root);
    std::vector<std::string> files{"corpus.csv", "histogram.csv", "pdf_curve.csv", "summary.jsonl"};
    std::vector<std::string> contents[2];
    for (int run = 0; run < 2; ++run) {
      const auto dir = root / ("run" + std::to_string(run));
      const std::string gen = "\"" + cli + "\" generate --seed 42 --out-dir \"" + dir.string() + "\" > /dev/null";
      const std::string est = "\"" + cli + "\" estimate --input \"" + (dir / "corpus.csv").string() +
                              "\" --bc natural --out-dir \"" + dir.string() + "\" > /dev/null";
      if (std::system(gen.c_str()) != 0 || std::system(est.c_str()) != 0) {
        return Outcome{false, "CLI run failed"};
      }
      for (const auto& f : files) {
        contents[run].push_back(slurp(dir / f));
      }
    }
    bool same = true;
    std::size_t bytes = 0;
    for (std::size_t k = 0; k < files.size(); ++k) {
      same = same && !contents[0][k].empty() && contents[0][k] == contents[1][k];
      bytes += contents[0][k].size();
    }
    return Outcome{same, std::to_string(files.size()) + " files, " + std::to_string(bytes) + " bytes compared"};
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
