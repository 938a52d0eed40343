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

#include "photothin/pmf.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "photothin/numerics.h"

namespace photothin {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kMaxPoissonMean = 1e7;

std::string describe_index(std::uint64_t n) { return std::to_string(n); }

void check_normalized(double total, double tail_defect) {
  const double err = std::abs(total + tail_defect - 1.0);
  if (!(err <= kIngestNormTolerance)) {
    throw Error(ErrorCode::kNotNormalized,
                "masses sum to " + std::to_string(total) + " (tail defect " +
                    std::to_string(tail_defect) + "), expected 1");
  }
}

// Log-space terms of G^(order)(z), without the final exponentiation.
struct ScaledSum {
  double peak = kNegInf;
  double scaled = 0.0;  // sum of exp(term - peak)
};

ScaledSum gf_terms(const Pmf& p, std::uint64_t order, double z) {
  if (!(z >= 0.0 && z <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter,
                "generating function argument must lie in [0, 1]");
  }
  const double log_z = std::log(z);  // -inf at z == 0
  std::vector<double> logs;
  logs.reserve(p.size());
  for (const PmfEntry& e : p.entries()) {
    if (e.index < order || e.mass == 0.0) continue;
    const std::uint64_t power = e.index - order;
    double term = log_falling_factorial(e.index, order) + std::log(e.mass);
    if (power > 0) term += static_cast<double>(power) * log_z;
    logs.push_back(term);
  }
  ScaledSum out;
  for (double x : logs) out.peak = std::max(out.peak, x);
  if (out.peak == kNegInf) return out;
  CompensatedSum acc;
  for (double x : logs) {
    if (x != kNegInf) acc.add(std::exp(x - out.peak));
  }
  out.scaled = acc.value();
  return out;
}

}  // namespace

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNegativeMass:
      return "NegativeMass";
    case ErrorCode::kDuplicateIndex:
      return "DuplicateIndex";
    case ErrorCode::kNotNormalized:
      return "NotNormalized";
    case ErrorCode::kInvalidParameter:
      return "InvalidParameter";
    case ErrorCode::kZeroMean:
      return "ZeroMean";
    case ErrorCode::kOverflow:
      return "Overflow";
    case ErrorCode::kTargetExceedsMean:
      return "TargetExceedsMean";
    case ErrorCode::kDegenerateLambda:
      return "DegenerateLambda";
    case ErrorCode::kAllVacuum:
      return "AllVacuum";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
      code_(code) {}

Pmf Pmf::from_sorted(std::vector<PmfEntry> entries, double tail_defect) {
  if (!(tail_defect >= 0.0)) {
    throw Error(ErrorCode::kNegativeMass, "tail defect must be >= 0");
  }
  if (entries.empty()) {
    throw Error(ErrorCode::kNotNormalized, "a pmf needs at least one entry");
  }
  CompensatedSum total;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!(entries[i].mass >= 0.0)) {
      throw Error(ErrorCode::kNegativeMass,
                  "mass at index " + describe_index(entries[i].index) +
                      " is negative or NaN");
    }
    if (i > 0 && entries[i].index <= entries[i - 1].index) {
      throw Error(ErrorCode::kDuplicateIndex,
                  "index " + describe_index(entries[i].index) +
                      " repeated or out of order");
    }
    total.add(entries[i].mass);
  }
  check_normalized(total.value(), tail_defect);
  return Pmf(std::move(entries), tail_defect);
}

double Pmf::operator()(std::uint64_t n) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), n,
      [](const PmfEntry& e, std::uint64_t key) { return e.index < key; });
  if (it == entries_.end() || it->index != n) return 0.0;
  return it->mass;
}

double Pmf::total_mass() const {
  CompensatedSum acc;
  for (const PmfEntry& e : entries_) acc.add(e.mass);
  return acc.value();
}

AttenuationCoefficient::AttenuationCoefficient(double eta) : eta_(eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter,
                "attenuation coefficient must lie in [0, 1], got " +
                    std::to_string(eta));
  }
}

Pmf make_pmf(std::span<const std::pair<std::uint64_t, double>> pairs) {
  std::vector<PmfEntry> entries;
  entries.reserve(pairs.size());
  for (const auto& [index, mass] : pairs) {
    if (!(mass >= 0.0)) {
      throw Error(ErrorCode::kNegativeMass,
                  "mass at index " + describe_index(index) +
                      " is negative or NaN");
    }
    entries.push_back({index, mass});
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const PmfEntry& a, const PmfEntry& b) {
                     return a.index < b.index;
                   });
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].index == entries[i - 1].index) {
      throw Error(ErrorCode::kDuplicateIndex,
                  "index " + describe_index(entries[i].index) + " repeated");
    }
  }
  return Pmf::from_sorted(std::move(entries), 0.0);
}

Pmf make_pmf(std::initializer_list<std::pair<std::uint64_t, double>> pairs) {
  return make_pmf(std::span<const std::pair<std::uint64_t, double>>(
      pairs.begin(), pairs.size()));
}

Pmf poisson_family(double mu, double tail_eps) {
  if (!(mu > 0.0) || !(mu <= kMaxPoissonMean)) {
    throw Error(ErrorCode::kInvalidParameter,
                "Poisson mean must lie in (0, 1e7], got " + std::to_string(mu));
  }
  if (!(tail_eps > 0.0 && tail_eps <= 1e-6)) {
    throw Error(ErrorCode::kInvalidParameter,
                "tail_eps must lie in (0, 1e-6], got " + std::to_string(tail_eps));
  }
  // Generate terms well past the cut so the upper tail can be summed
  // directly instead of as 1 - (partial sum).
  const double log_mu = std::log(mu);
  const double log_negligible = std::log(tail_eps) - 50.0;
  std::vector<double> terms;
  for (std::uint64_t n = 0;; ++n) {
    const double log_term =
        static_cast<double>(n) * log_mu - mu - log_factorial(n);
    terms.push_back(std::exp(log_term));
    // Past 2*mu consecutive ratios are <= 1/2, so what follows is below
    // twice the current term.
    if (static_cast<double>(n + 1) >= 2.0 * mu && log_term < log_negligible) break;
  }
  // tail[n] = sum_{k > n} terms[k]
  std::vector<double> tail(terms.size(), 0.0);
  CompensatedSum suffix;
  for (std::size_t n = terms.size(); n-- > 0;) {
    tail[n] = suffix.value();
    suffix.add(terms[n]);
  }
  std::size_t n_max = 0;
  while (tail[n_max] > tail_eps) ++n_max;

  std::vector<PmfEntry> entries;
  entries.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) entries.push_back({n, terms[n]});
  return Pmf::from_sorted(std::move(entries), tail[n_max]);
}

double mean(const Pmf& p) {
  CompensatedSum acc;
  for (const PmfEntry& e : p.entries()) {
    acc.add(static_cast<double>(e.index) * e.mass);
  }
  return acc.value();
}

MomentSummary moments(const Pmf& p) {
  CompensatedSum first;
  CompensatedSum second;
  CompensatedSum third_factorial;
  for (const PmfEntry& e : p.entries()) {
    const double n = static_cast<double>(e.index);
    first.add(n * e.mass);
    second.add(n * n * e.mass);
    if (e.index >= 3) third_factorial.add(n * (n - 1.0) * (n - 2.0) * e.mass);
  }
  MomentSummary m;
  m.mean = first.value();
  if (!(m.mean > 0.0)) {
    throw Error(ErrorCode::kZeroMean, "C(X) and D(X) need a positive mean");
  }
  CompensatedSum var;
  var.add(second.value());
  var.add(-m.mean * m.mean);
  m.variance = var.value();
  m.m3 = third_factorial.value();
  m.c = (m.variance - m.mean) / (2.0 * m.mean * m.mean);
  m.d = m.m3 / (m.mean * m.mean * m.mean);
  return m;
}

double gf_derivative(const Pmf& p, std::uint64_t order, double z) {
  const ScaledSum s = gf_terms(p, order, z);
  if (s.peak == kNegInf) return 0.0;
  return std::exp(s.peak) * s.scaled;
}

double log_gf_derivative(const Pmf& p, std::uint64_t order, double z) {
  const ScaledSum s = gf_terms(p, order, z);
  if (s.peak == kNegInf) return kNegInf;
  return s.peak + std::log(s.scaled);
}

double tv_distance(const Pmf& p, const Pmf& q) {
  const auto a = p.entries();
  const auto b = q.entries();
  CompensatedSum l1;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].index < b[j].index)) {
      l1.add(a[i++].mass);
    } else if (i == a.size() || b[j].index < a[i].index) {
      l1.add(b[j++].mass);
    } else {
      l1.add(std::abs(a[i++].mass - b[j++].mass));
    }
  }
  return 0.5 * l1.value() + 0.5 * (p.tail_defect() + q.tail_defect());
}

}  // namespace photothin
