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

#ifndef PHOTOTHIN_PMF_H_
#define PHOTOTHIN_PMF_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace photothin {

enum class ErrorCode {
  kNegativeMass,
  kDuplicateIndex,
  kNotNormalized,
  kInvalidParameter,
  kZeroMean,
  kOverflow,
  kTargetExceedsMean,
  kDegenerateLambda,
  kAllVacuum,
};

const char* error_code_name(ErrorCode code);

// All validation failures in the library surface as this exception. Anything
// else escaping a photothin function is a bug.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline constexpr double kIngestNormTolerance = 1e-9;

struct PmfEntry {
  std::uint64_t index;
  double mass;

  friend bool operator==(const PmfEntry&, const PmfEntry&) = default;
};

// Finite-support probability mass function over photon counts.
//
// Entries are stored sparsely, strictly increasing in index. `tail_defect`
// records mass that a truncated infinite-support family could not represent;
// it is never folded back into the entries. Immutable once built.
class Pmf {
 public:
  // Validates and takes ownership of already-sorted entries. Throws Error
  // with kNegativeMass, kDuplicateIndex (also for out-of-order indices) or
  // kNotNormalized when |sum + tail_defect - 1| > 1e-9.
  static Pmf from_sorted(std::vector<PmfEntry> entries, double tail_defect = 0.0);

  std::span<const PmfEntry> entries() const { return entries_; }
  double tail_defect() const { return tail_defect_; }
  std::size_t size() const { return entries_.size(); }

  // Mass at n; 0 for indices outside the support.
  double operator()(std::uint64_t n) const;

  std::uint64_t max_index() const { return entries_.back().index; }

  // Compensated sum of the stored masses (excludes tail_defect).
  double total_mass() const;

 private:
  Pmf(std::vector<PmfEntry> entries, double tail_defect)
      : entries_(std::move(entries)), tail_defect_(tail_defect) {}

  std::vector<PmfEntry> entries_;
  double tail_defect_ = 0.0;
};

struct MomentSummary {
  double mean = 0.0;
  double variance = 0.0;
  double m3 = 0.0;  // E[X(X-1)(X-2)]
  double c = 0.0;   // (Var - E) / (2 E^2)
  double d = 0.0;   // M / E^3
};

// Survival probability of a single photon through the attenuator.
class AttenuationCoefficient {
 public:
  // Throws kInvalidParameter unless 0 <= eta <= 1.
  explicit AttenuationCoefficient(double eta);
  double value() const { return eta_; }

 private:
  double eta_;
};

// Builds a Pmf from unordered (index, mass) pairs. Zero masses are kept.
Pmf make_pmf(std::span<const std::pair<std::uint64_t, double>> pairs);
Pmf make_pmf(std::initializer_list<std::pair<std::uint64_t, double>> pairs);

// Truncated Poisson(mu). The cut point is the smallest n_max whose upper tail
// sum_{n > n_max} P(n) is <= tail_eps; that tail becomes tail_defect and the
// retained masses are not renormalized. Requires mu > 0, 0 < tail_eps <= 1e-6.
Pmf poisson_family(double mu, double tail_eps = 1e-12);

double mean(const Pmf& p);

// Mean, variance, third factorial moment and the C/D coefficients, all summed
// with compensation in ascending index order. Throws kZeroMean when the mean
// is zero, since C and D are undefined there.
MomentSummary moments(const Pmf& p);

// n-th derivative of the probability generating function at z in [0, 1]:
//   G^(n)(z) = sum_{N >= n} N!/(N-n)! P(N) z^(N-n).
double gf_derivative(const Pmf& p, std::uint64_t order, double z);

// log G^(n)(z); -inf when the derivative is zero. Usable where G^(n) itself
// would overflow a double.
double log_gf_derivative(const Pmf& p, std::uint64_t order, double z);

// Total variation distance over the union of supports, plus half of both tail
// defects as worst-case slack.
double tv_distance(const Pmf& p, const Pmf& q);

}  // namespace photothin

#endif  // PHOTOTHIN_PMF_H_
