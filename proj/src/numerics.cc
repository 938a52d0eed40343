// Copyright 2026 The photothin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "photothin/numerics.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace photothin {
namespace {

constexpr std::size_t kTableSize = 4096;
constexpr std::uint64_t kDirectLogSumMaxOrder = 16;

const std::array<double, kTableSize>& log_factorial_table() {
  static const std::array<double, kTableSize> table = [] {
    std::array<double, kTableSize> t{};
    for (std::size_t n = 0; n < kTableSize; ++n) {
      t[n] = std::lgamma(static_cast<double>(n) + 1.0);
    }
    t[0] = 0.0;
    t[1] = 0.0;
    return t;
  }();
  return table;
}

double stirling_log_factorial(double n) {
  const double inv = 1.0 / n;
  const double inv2 = inv * inv;
  const double series =
      inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0)));
  return n * std::log(n) - n + 0.5 * std::log(2.0 * std::numbers::pi * n) +
         series;
}

}  // namespace

double log_factorial(std::uint64_t n) {
  if (n < kTableSize) return log_factorial_table()[n];
  return stirling_log_factorial(static_cast<double>(n));
}

double log_falling_factorial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return -std::numeric_limits<double>::infinity();
  if (k == 0) return 0.0;
  if (k <= kDirectLogSumMaxOrder) {
    double acc = 0.0;
    for (std::uint64_t i = 0; i < k; ++i) {
      acc += std::log(static_cast<double>(n - i));
    }
    return acc;
  }
  return log_factorial(n) - log_factorial(n - k);
}

double log_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return -std::numeric_limits<double>::infinity();
  const std::uint64_t small = std::min(k, n - k);
  return log_falling_factorial(n, small) - log_factorial(small);
}

double log_sum_exp(std::span<const double> logs) {
  double peak = -std::numeric_limits<double>::infinity();
  for (double x : logs) peak = std::max(peak, x);
  if (peak == -std::numeric_limits<double>::infinity()) return peak;
  CompensatedSum acc;
  for (double x : logs) {
    if (x != -std::numeric_limits<double>::infinity()) acc.add(std::exp(x - peak));
  }
  return peak + std::log(acc.value());
}

}  // namespace photothin
