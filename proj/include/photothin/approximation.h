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

#ifndef PHOTOTHIN_APPROXIMATION_H_
#define PHOTOTHIN_APPROXIMATION_H_

#include <array>
#include <cstdint>
#include <vector>

#include "photothin/pmf.h"

namespace photothin {

inline constexpr std::uint64_t kDefaultReportLength = 10;
inline constexpr double kReferencePoissonTail = 1e-14;

// How far the thinned distribution is from Poisson(lambda), lambda = eta E(X).
struct ApproxReport {
  double eta = 0.0;
  double lambda = 0.0;
  MomentSummary input_moments;
  // delta[n] = P_eta(n) - P^lambda(n), n = 0..n_report.
  std::vector<double> delta;
  // Leading-order prediction for delta[0..2]: (l^2 C, -2 l^2 C, l^2 C).
  std::array<double, 3> predicted{};
  // (D + 1) lambda^3, the envelope for |delta - predicted|.
  double bound = 0.0;
  // D_0, D_1, D_2 recovered from the exact P_eta(0..2).
  std::array<double, 3> residuals{};
  // sum_{n >= 3} P_eta(n), including mass cut off by truncation.
  double tail3 = 0.0;
  double risk_exact = 0.0;
  double risk_approx = 0.0;
};

// Throws kZeroMean for a zero-mean input and kDegenerateLambda for eta = 0.
ApproxReport build_report(const Pmf& p, AttenuationCoefficient eta,
                          std::uint64_t n_report = kDefaultReportLength);

std::array<double, 3> predicted_delta(double c, double lambda);

// P(n > 1 | n > 0) = (1 - q(0) - q(1)) / (1 - q(0)). Throws kAllVacuum when
// q(0) is within 1e-15 of 1.
double risk_exact(const Pmf& q);

// First-order multi-photon risk (1/2 + C) lambda. Not clamped: values above 1
// mean the expansion has broken down.
double risk_approx(double c, double lambda);

}  // namespace photothin

#endif  // PHOTOTHIN_APPROXIMATION_H_
