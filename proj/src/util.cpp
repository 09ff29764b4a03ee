#include "chebstep/util.hpp"

#include <cstdio>
#include <cstdlib>

namespace chebstep {

int log_level() {
  static const int level = [] {
    const char* env = std::getenv("CHEBSTEP_LOG");
    if (env == nullptr || *env == '\0') return 0;
    return std::atoi(env);
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::fprintf(stderr, "[chebstep] %s\n", msg.c_str());
}

void log_debug(const std::string& msg) {
  if (log_level() >= 2) std::fprintf(stderr, "[chebstep:debug] %s\n", msg.c_str());
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<double> random_vector(index_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = rng.next_symmetric();
  return v;
}

}  // namespace chebstep
