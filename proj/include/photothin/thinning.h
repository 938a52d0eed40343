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

#ifndef PHOTOTHIN_THINNING_H_
#define PHOTOTHIN_THINNING_H_

#include <cstdint>

#include "photothin/pmf.h"

namespace photothin {

/// Cumulative mass at which thin_direct stops emitting output entries.
inline constexpr double kThinTruncation = 1e-15;

/// Binomial thinning: every one of the N photons survives independently with
/// probability eta, so
///
///   q(n) = sum_{N >= n} C(N, n) eta^n (1 - eta)^(N - n) p(N).
///
/// Each binomial row is evaluated in log space and accumulated with
/// compensation in ascending N. The output support is cut at the first n
/// whose cumulative mass reaches 1 - tail_defect(p) - 1e-15; whatever lies
/// beyond is added to the output tail_defect. eta = 0 and eta = 1 are exact.
Pmf thin_direct(const Pmf& p, AttenuationCoefficient eta);

/// Same transform through the generating function,
///   q(n) = eta^n / n! * G^(n)(1 - eta),   n = 0..n_max,
/// with the whole product kept in log space. tail_defect = 1 - sum q.
/// Throws kOverflow if some term leaves the representable range.
Pmf thin_via_gf(const Pmf& p, AttenuationCoefficient eta, std::uint64_t n_max);

/// eta such that the thinned mean equals target_lambda (E(X_eta) = eta E(X)).
/// Throws kTargetExceedsMean if target_lambda > mean(p), kInvalidParameter if
/// target_lambda <= 0.
AttenuationCoefficient eta_for_target_lambda(const Pmf& p, double target_lambda);

}  // namespace photothin

#endif  // PHOTOTHIN_THINNING_H_
