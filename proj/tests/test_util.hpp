#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "carpetlab/carpet.hpp"

#ifndef CARPETLAB_FIXTURE_DIR
#define CARPETLAB_FIXTURE_DIR "tests/fixtures"
#endif

namespace testutil {

inline std::string fixture_path(const std::string& name) {
  return std::string(CARPETLAB_FIXTURE_DIR) + "/" + name;
}

inline carpetlab::CarpetSpec load_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  std::ostringstream ss;
  ss << in.rdbuf();
  return carpetlab::parse_spec(ss.str());
}

inline carpetlab::CarpetSpec ex17_D() { return load_fixture("ex17_D.json"); }
inline carpetlab::CarpetSpec ex17_Dprime() { return load_fixture("ex17_Dprime.json"); }
inline carpetlab::CarpetSpec ex18_D() { return load_fixture("ex18_D.json"); }
inline carpetlab::CarpetSpec ex18_Dprime() { return load_fixture("ex18_Dprime.json"); }

/// Random valid carpet with n <= n_max; at least one digit.
inline carpetlab::CarpetSpec random_spec(std::mt19937& rng, int n_max = 12) {
  std::uniform_int_distribution<int> npick(3, n_max);
  const int n = npick(rng);
  std::uniform_int_distribution<int> mpick(2, n - 1);
  const int m = mpick(rng);
  std::vector<carpetlab::Digit> digits;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const double density = 0.15 + 0.5 * coin(rng);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      if (coin(rng) < density) digits.push_back({i, j});
  if (digits.empty()) {
    std::uniform_int_distribution<int> ipick(0, n - 1), jpick(0, m - 1);
    digits.push_back({ipick(rng), jpick(rng)});
  }
  return carpetlab::CarpetSpec::create(n, m, digits);
}

}  // namespace testutil
