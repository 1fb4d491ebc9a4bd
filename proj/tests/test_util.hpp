#pragma once

#include <random>
#include <string>
#include <vector>

inline std::string data_path(const std::string& name) {
  return std::string(GAINSCHED_SOURCE_DIR) + "/data/" + name;
}

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n,
                                         double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}
