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

#ifndef PHOTOTHIN_CLI_SCENARIOS_H_
#define PHOTOTHIN_CLI_SCENARIOS_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "photothin/cli/source_spec.h"
#include "photothin/pmf.h"

namespace photothin::cli {

inline constexpr double kLadderLambda = 0.1;

// The singular input P(X=1) = 0.95, P(X=1001) = 0.05.
SourceSpec singular_two_point_spec();

// Stand-in for the wide input of the figure series, whose exact shape is only
// known pictorially: 0.5 Binomial(600, 0.55) + 0.5 Binomial(1000, 0.647) on
// 0..1000. Its mean is exactly 488.5, so eta = 0.1, 0.001 and 0.0002 give
// lambda = 48.85, 0.4885 and 0.0977.
Pmf wide_substitute_input();

// Two-point distribution on {a, b} whose C(X) equals target_c. Bisection on
// the weight at b; throws kInvalidParameter when target_c is not reachable
// on that support.
TwoPointSource solve_two_point_for_c(std::uint64_t a, std::uint64_t b,
                                     double target_c);

struct LadderRow {
  double target_c = 0.0;
  SourceSpec spec;
  double c = 0.0;  // achieved
  double d = 0.0;
  double lambda = 0.0;
  double lambda2c = 0.0;
  std::array<double, 5> delta{};
  double bound = 0.0;  // (D + 1) lambda^3
};

// Inputs whose lambda^2 C at lambda = 0.1 is 0.0045, 0.0030, 0.0018, 0.0011,
// 0.0005 (two-point on {0, 10}) and -0.00016 (near-deterministic on {31, 32}),
// each thinned to lambda = 0.1.
std::vector<LadderRow> table1_ladder();

// True when the row meets the leading-error envelope for n = 0..4.
bool within_envelope(const LadderRow& row);

struct FigureSeries {
  std::string file;
  double eta = 0.0;
  double lambda = 0.0;
  std::vector<std::uint64_t> n;
  std::vector<double> p_eta;
  std::vector<double> p_poisson;
};

// fig1..fig3: wide substitute at eta = 0.1, 0.001, 0.0002; fig4: singular
// two-point at lambda = 0.1.
std::vector<FigureSeries> figure_series();

}  // namespace photothin::cli

#endif  // PHOTOTHIN_CLI_SCENARIOS_H_
