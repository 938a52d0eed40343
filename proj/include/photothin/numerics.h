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

#ifndef PHOTOTHIN_NUMERICS_H_
#define PHOTOTHIN_NUMERICS_H_

#include <cmath>
#include <cstdint>
#include <span>

#ifdef __FAST_MATH__
#error "-ffast-math breaks compensated summation"
#endif

namespace photothin {

// Neumaier's variant of Kahan summation. Unlike plain Kahan it stays
// accurate when an addend is larger in magnitude than the running sum.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double init) : sum_(init) {}

  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }

  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// log(n!). Tabulated below 4096, Stirling series above.
double log_factorial(std::uint64_t n);

// log(n! / (n-k)!), the log of the falling factorial n(n-1)...(n-k+1).
// Returns -inf when k > n.
double log_falling_factorial(std::uint64_t n, std::uint64_t k);

// log C(n, k); -inf when k > n.
double log_binomial(std::uint64_t n, std::uint64_t k);

// log(sum exp(x_i)). Entries equal to -inf are ignored; an empty or all -inf
// input yields -inf.
double log_sum_exp(std::span<const double> logs);

}  // namespace photothin

#endif  // PHOTOTHIN_NUMERICS_H_
