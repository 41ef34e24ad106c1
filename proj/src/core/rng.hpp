#pragma once

#include <cstdint>
#include <random>

namespace hsd::rng {

// splitmix64 finalizer; good avalanche for combining ids into seeds.
uint64_t mix64(uint64_t x);

// Independent deterministic stream for (base seed, replication, lane).
// Lanes keep logically distinct draws (e.g. points vs weights) decoupled.
std::mt19937_64 make_stream(uint64_t seed, uint64_t replication, uint64_t lane);

// 53-bit uniform on [0,1)
inline double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Box-Muller pair of independent standard normals
void normal_pair(std::mt19937_64& g, double& z1, double& z2);

double exponential1(std::mt19937_64& g);  // mean 1
int poisson1(std::mt19937_64& g);         // mean 1, Knuth product method

}  // namespace hsd::rng
