#pragma once

#include <cstdint>
#include <random>

namespace splinepdf {

//! SplitMix64 finalizer, used to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

//! Seed of stream `index` under master seed `seed`.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index)
{
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

//! mt19937_64 with hand-rolled variate transforms. The standard library
//! distributions are implementation-defined, these are not, so streams are
//! reproducible across toolchains.
class PortableRng
{
public:
  static constexpr const char* kAlgorithm = "mt19937_64/splitmix64";

  explicit PortableRng(std::uint64_t seed)
    : engine_(seed)
  {}

  //! Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  //! Standard normal via Box-Muller, no cached second variate.
  double normal();

  double normal(double mean, double sd) { return mean + sd * normal(); }

private:
  std::mt19937_64 engine_;
};

} // namespace splinepdf
