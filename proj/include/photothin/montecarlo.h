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

#ifndef PHOTOTHIN_MONTECARLO_H_
#define PHOTOTHIN_MONTECARLO_H_

#include <cstdint>
#include <limits>

#include "photothin/pmf.h"

namespace photothin {

// Counter-based generator: output i of stream `key` is mix64(key + (i+1)*gamma)
// with the SplitMix64 finalizer. Any (seed, stream) pair gives an independent,
// reproducible sequence without generator state to share between threads.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()();

  // Uniform double in [0, 1) with 53 random bits.
  double uniform();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct McConfig {
  std::uint64_t seed = 42;
  std::uint64_t trials = 1'000'000;
  std::uint64_t chunk_size = 1u << 16;
};

struct McResult {
  Pmf empirical;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double tv_to_analytic = 0.0;
  std::uint64_t max_count_observed = 0;
};

// Simulates cfg.trials pulses: draw N from p by inverse CDF, keep each photon
// with probability eta. Chunk k of the trials uses CounterRng(seed, k), and
// chunk histograms are merged by integer addition, so the result is identical
// for every `threads` value (0 = hardware concurrency). Residual tail mass of
// p (at most 1e-9) is assigned to its largest support point.
McResult simulate_thinned(const Pmf& p, AttenuationCoefficient eta,
                          const McConfig& cfg, unsigned threads = 0);

}  // namespace photothin

#endif  // PHOTOTHIN_MONTECARLO_H_
