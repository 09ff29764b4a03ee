#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace chebstep {

using index_t = std::int64_t;

/// Log levels controlled by the CHEBSTEP_LOG environment variable
/// (0 = quiet, 1 = info, 2 = debug). Messages go to stderr.
int log_level();
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

/// Round-trip-exact decimal formatting ("%.17g") so that identical runs
/// produce bitwise-identical report files.
std::string fmt_double(double x);

/// splitmix64: tiny deterministic generator used for seeded start vectors
/// and test data. Not tied to libstdc++ distribution internals, so frozen
/// expected values survive toolchain changes.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform in [0, 1).
  double next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
  /// Uniform in [-1, 1).
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }
};

std::vector<double> random_vector(index_t n, std::uint64_t seed);

}  // namespace chebstep
