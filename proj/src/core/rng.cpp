#include "core/rng.hpp"

#include <cmath>

namespace hsd::rng {

uint64_t mix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::mt19937_64 make_stream(uint64_t seed, uint64_t replication, uint64_t lane) {
  uint64_t s = mix64(seed);
  s = mix64(s ^ (0xA24BAED4963EE407ULL + replication));
  s = mix64(s ^ (0x9FB21C651E98DF25ULL + lane));
  return std::mt19937_64(s);
}

void normal_pair(std::mt19937_64& g, double& z1, double& z2) {
  const double u1 = 1.0 - uniform01(g);  // (0,1], keeps the log finite
  const double u2 = uniform01(g);
  const double r = std::sqrt(-2.0 * std::log(u1));
  z1 = r * std::cos(2.0 * M_PI * u2);
  z2 = r * std::sin(2.0 * M_PI * u2);
}

double exponential1(std::mt19937_64& g) { return -std::log1p(-uniform01(g)); }

int poisson1(std::mt19937_64& g) {
  static const double kL = std::exp(-1.0);
  int k = 0;
  double p = 1.0;
  do {
    ++k;
    p *= uniform01(g);
  } while (p > kL);
  return k - 1;
}

}  // namespace hsd::rng
