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

#include "photothin/thinning.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "photothin/numerics.h"

namespace photothin {
namespace {

// exp() of anything below this is subnormal; such terms cannot move a sum
// that the normalization checks care about.
constexpr double kLogNegligible = -708.0;

Pmf total_absorption(const Pmf& p) {
  return Pmf::from_sorted({{0, 1.0 - p.tail_defect()}}, p.tail_defect());
}

}  // namespace

Pmf thin_direct(const Pmf& p, AttenuationCoefficient eta) {
  const double e = eta.value();
  if (e == 0.0) return total_absorption(p);
  if (e == 1.0) {
    return Pmf::from_sorted(
        std::vector<PmfEntry>(p.entries().begin(), p.entries().end()),
        p.tail_defect());
  }

  const std::uint64_t top = p.max_index();
  std::vector<double> log_int(top + 2, 0.0);
  for (std::uint64_t k = 1; k < log_int.size(); ++k) {
    log_int[k] = std::log(static_cast<double>(k));
  }
  const double log_keep = std::log1p(-e);
  const double log_odds = std::log(e) - log_keep;

  std::vector<CompensatedSum> acc(top + 1);
  for (const PmfEntry& entry : p.entries()) {
    if (entry.mass == 0.0) continue;
    const std::uint64_t big_n = entry.index;
    const double log_mass = std::log(entry.mass);
    const double mode = std::floor(static_cast<double>(big_n + 1) * e);
    // log of C(N, n) e^n (1-e)^(N-n), advanced by the ratio of neighbours.
    double log_row = static_cast<double>(big_n) * log_keep;
    for (std::uint64_t n = 0; n <= big_n; ++n) {
      const double log_term = log_row + log_mass;
      if (log_term > kLogNegligible) {
        acc[n].add(std::exp(log_term));
      } else if (static_cast<double>(n) > mode) {
        break;  // the row is unimodal, nothing further survives
      }
      if (n < big_n) log_row += log_int[big_n - n] - log_int[n + 1] + log_odds;
    }
  }

  const double target = 1.0 - p.tail_defect() - kThinTruncation;
  std::vector<PmfEntry> out;
  out.reserve(acc.size());
  CompensatedSum cumulative;
  std::size_t n = 0;
  for (; n < acc.size(); ++n) {
    const double mass = acc[n].value();
    out.push_back({n, mass});
    cumulative.add(mass);
    if (cumulative.value() >= target) {
      ++n;
      break;
    }
  }
  CompensatedSum dropped;
  for (; n < acc.size(); ++n) dropped.add(acc[n].value());
  return Pmf::from_sorted(std::move(out), p.tail_defect() + dropped.value());
}

Pmf thin_via_gf(const Pmf& p, AttenuationCoefficient eta, std::uint64_t n_max) {
  const double e = eta.value();
  if (e == 0.0) return total_absorption(p);

  std::vector<PmfEntry> out;
  out.reserve(n_max + 1);
  if (e == 1.0) {
    for (std::uint64_t n = 0; n <= n_max; ++n) out.push_back({n, p(n)});
  } else {
    const double log_eta = std::log(e);
    const double z = 1.0 - e;
    for (std::uint64_t n = 0; n <= n_max; ++n) {
      const double log_g = log_gf_derivative(p, n, z);
      if (log_g == -std::numeric_limits<double>::infinity()) {
        out.push_back({n, 0.0});
        continue;
      }
      const double log_q =
          static_cast<double>(n) * log_eta - log_factorial(n) + log_g;
      if (std::isnan(log_q) || log_q > std::log(std::numeric_limits<double>::max())) {
        throw Error(ErrorCode::kOverflow,
                    "generating-function term at n = " + std::to_string(n) +
                        " is not representable; lower n_max");
      }
      out.push_back({n, std::exp(log_q)});
    }
  }
  CompensatedSum total;
  for (const PmfEntry& entry : out) total.add(entry.mass);
  return Pmf::from_sorted(std::move(out), std::max(0.0, 1.0 - total.value()));
}

AttenuationCoefficient eta_for_target_lambda(const Pmf& p, double target_lambda) {
  if (!(target_lambda > 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "target lambda must be positive");
  }
  const double m = mean(p);
  if (!(target_lambda <= m)) {
    throw Error(ErrorCode::kTargetExceedsMean,
                "target lambda " + std::to_string(target_lambda) +
                    " exceeds the input mean " + std::to_string(m));
  }
  return AttenuationCoefficient(std::min(1.0, target_lambda / m));
}

}  // namespace photothin
