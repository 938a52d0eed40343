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

#include "photothin/approximation.h"

#include <cmath>

#include "photothin/numerics.h"
#include "photothin/thinning.h"

namespace photothin {

std::array<double, 3> predicted_delta(double c, double lambda) {
  const double lead = lambda * lambda * c;
  return {lead, -2.0 * lead, lead};
}

double risk_exact(const Pmf& q) {
  const double q0 = q(0);
  const double q1 = q(1);
  const double nonempty = 1.0 - q0;
  if (!(nonempty > 1e-15)) {
    throw Error(ErrorCode::kAllVacuum, "every pulse is empty");
  }
  return (1.0 - q0 - q1) / nonempty;
}

double risk_approx(double c, double lambda) { return (0.5 + c) * lambda; }

ApproxReport build_report(const Pmf& p, AttenuationCoefficient eta,
                          std::uint64_t n_report) {
  ApproxReport r;
  r.input_moments = moments(p);
  r.eta = eta.value();
  r.lambda = r.eta * r.input_moments.mean;
  if (!(r.lambda > 0.0)) {
    throw Error(ErrorCode::kDegenerateLambda, "lambda = eta E(X) is zero");
  }

  const Pmf q = thin_direct(p, eta);
  const Pmf reference = poisson_family(r.lambda, kReferencePoissonTail);
  r.delta.resize(n_report + 1);
  for (std::uint64_t n = 0; n <= n_report; ++n) r.delta[n] = q(n) - reference(n);

  const double c = r.input_moments.c;
  const double l = r.lambda;
  const double l2 = l * l;
  const double l3 = l2 * l;
  r.predicted = predicted_delta(c, l);
  r.bound = (r.input_moments.d + 1.0) * l3;

  const double q0 = q(0);
  const double q1 = q(1);
  const double q2 = q(2);
  {
    CompensatedSum s;
    for (double x : {1.0, -l, 0.5 * l2, c * l2, -q0}) s.add(x);
    r.residuals[0] = s.value() / l3;
  }
  {
    CompensatedSum s;
    for (double x : {q1, -l, l2, 2.0 * c * l2}) s.add(x);
    r.residuals[1] = s.value() / l3;
  }
  {
    CompensatedSum s;
    for (double x : {0.5 * l2, c * l2, -q2}) s.add(x);
    r.residuals[2] = s.value() / l3;
  }

  CompensatedSum tail;
  for (const PmfEntry& e : q.entries()) {
    if (e.index >= 3) tail.add(e.mass);
  }
  tail.add(q.tail_defect());
  r.tail3 = tail.value();

  r.risk_exact = risk_exact(q);
  r.risk_approx = risk_approx(c, l);
  return r;
}

}  // namespace photothin
