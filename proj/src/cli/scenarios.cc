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

#include "photothin/cli/scenarios.h"

#include <algorithm>
#include <cmath>

#include "photothin/approximation.h"
#include "photothin/numerics.h"
#include "photothin/thinning.h"

namespace photothin::cli {
namespace {

double binomial_mass(std::uint64_t trials, double p, std::uint64_t k) {
  const double log_mass = log_binomial(trials, k) +
                          static_cast<double>(k) * std::log(p) +
                          static_cast<double>(trials - k) * std::log1p(-p);
  return std::exp(log_mass);
}

double two_point_c(std::uint64_t a, std::uint64_t b, double w) {
  const double x = static_cast<double>(a);
  const double y = static_cast<double>(b);
  const double m = (1.0 - w) * x + w * y;
  const double var = w * (1.0 - w) * (y - x) * (y - x);
  return (var - m) / (2.0 * m * m);
}

FigureSeries make_series(std::string file, const Pmf& p, AttenuationCoefficient eta) {
  FigureSeries s;
  s.file = std::move(file);
  s.eta = eta.value();
  s.lambda = s.eta * mean(p);
  const Pmf q = thin_direct(p, eta);
  const Pmf reference = poisson_family(s.lambda, kReferencePoissonTail);
  const std::uint64_t last = std::max(q.max_index(), reference.max_index());
  for (std::uint64_t n = 0; n <= last; ++n) {
    s.n.push_back(n);
    s.p_eta.push_back(q(n));
    s.p_poisson.push_back(reference(n));
  }
  return s;
}

}  // namespace

SourceSpec singular_two_point_spec() {
  return SourceSpec{TwoPointSource{1, 0.95, 1001, 0.05}, kDefaultTailEps};
}

Pmf wide_substitute_input() {
  constexpr std::uint64_t kTop = 1000;
  std::vector<PmfEntry> entries;
  entries.reserve(kTop + 1);
  for (std::uint64_t k = 0; k <= kTop; ++k) {
    double mass = 0.5 * binomial_mass(1000, 0.647, k);
    if (k <= 600) mass += 0.5 * binomial_mass(600, 0.55, k);
    entries.push_back({k, mass});
  }
  return Pmf::from_sorted(std::move(entries), 0.0);
}

TwoPointSource solve_two_point_for_c(std::uint64_t a, std::uint64_t b,
                                     double target_c) {
  if (a == b) {
    throw Error(ErrorCode::kInvalidParameter, "support points must differ");
  }
  double lo = 1e-12;
  double hi = 1.0 - 1e-12;
  const double f_lo = two_point_c(a, b, lo) - target_c;
  const double f_hi = two_point_c(a, b, hi) - target_c;
  if (!(f_lo * f_hi <= 0.0)) {
    throw Error(ErrorCode::kInvalidParameter,
                "target C is not reachable on this two-point support");
  }
  const bool rising = f_lo < 0.0;
  for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const bool below = two_point_c(a, b, mid) < target_c;
    if (below == rising) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double w = 0.5 * (lo + hi);
  return TwoPointSource{a, 1.0 - w, b, w};
}

std::vector<LadderRow> table1_ladder() {
  struct Rung {
    double c;
    std::uint64_t a;
    std::uint64_t b;
  };
  const Rung rungs[] = {{0.45, 0, 10}, {0.30, 0, 10},  {0.18, 0, 10},
                        {0.11, 0, 10}, {0.05, 0, 10}, {-0.016, 31, 32}};
  std::vector<LadderRow> rows;
  for (const Rung& rung : rungs) {
    LadderRow row;
    row.target_c = rung.c;
    row.spec = SourceSpec{solve_two_point_for_c(rung.a, rung.b, rung.c),
                          kDefaultTailEps};
    const Pmf p = to_pmf(row.spec);
    const ApproxReport report =
        build_report(p, eta_for_target_lambda(p, kLadderLambda), 4);
    row.c = report.input_moments.c;
    row.d = report.input_moments.d;
    row.lambda = report.lambda;
    row.lambda2c = report.lambda * report.lambda * row.c;
    std::copy_n(report.delta.begin(), 5, row.delta.begin());
    row.bound = report.bound;
    rows.push_back(std::move(row));
  }
  return rows;
}

bool within_envelope(const LadderRow& row) {
  const double lead = row.lambda2c;
  return std::abs(row.delta[0] - lead) <= row.bound &&
         std::abs(row.delta[1] + 2.0 * lead) <= row.bound &&
         std::abs(row.delta[2] - lead) <= row.bound &&
         std::abs(row.delta[3]) <= row.bound &&
         std::abs(row.delta[4]) <= row.bound;
}

std::vector<FigureSeries> figure_series() {
  const Pmf wide = wide_substitute_input();
  const Pmf singular = to_pmf(singular_two_point_spec());
  std::vector<FigureSeries> out;
  out.push_back(make_series("fig1.csv", wide, AttenuationCoefficient(0.1)));
  out.push_back(make_series("fig2.csv", wide, AttenuationCoefficient(0.001)));
  out.push_back(make_series("fig3.csv", wide, AttenuationCoefficient(0.0002)));
  out.push_back(make_series("fig4.csv", singular,
                            eta_for_target_lambda(singular, kLadderLambda)));
  return out;
}

}  // namespace photothin::cli
