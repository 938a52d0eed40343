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

#include "photothin/montecarlo.h"

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>
#include <vector>

#include "photothin/numerics.h"
#include "photothin/thinning.h"

namespace photothin {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kStreamMultiplier = 0xd1342543de82ef95ULL;
constexpr std::uint64_t kCoinFlipMaxPhotons = 64;
constexpr double kMaxSampledTail = 1e-9;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

using Binomial = std::binomial_distribution<std::uint64_t>;

// Shared read-only sampling tables.
struct Sampler {
  std::vector<double> cdf;
  std::vector<std::uint64_t> photons;
  std::vector<Binomial::param_type> binomial;  // only used for N > 64
  double eta = 0.0;
};

Sampler make_sampler(const Pmf& p, double eta) {
  Sampler s;
  s.eta = eta;
  CompensatedSum running;
  for (const PmfEntry& e : p.entries()) {
    running.add(e.mass);
    s.cdf.push_back(std::min(1.0, running.value()));
    s.photons.push_back(e.index);
    s.binomial.emplace_back(e.index > kCoinFlipMaxPhotons ? e.index : 1, eta);
  }
  s.cdf.back() = 1.0;
  return s;
}

void run_chunk(const Sampler& s, std::uint64_t seed, std::uint64_t chunk,
               std::uint64_t count, std::vector<std::uint64_t>& histogram) {
  CounterRng rng(seed, chunk);
  Binomial binomial;
  for (std::uint64_t t = 0; t < count; ++t) {
    const double u = rng.uniform();
    const std::size_t slot = static_cast<std::size_t>(
        std::upper_bound(s.cdf.begin(), s.cdf.end(), u) - s.cdf.begin());
    const std::size_t i = std::min(slot, s.cdf.size() - 1);
    const std::uint64_t big_n = s.photons[i];
    std::uint64_t survived = 0;
    if (s.eta == 1.0) {
      survived = big_n;
    } else if (s.eta > 0.0) {
      if (big_n <= kCoinFlipMaxPhotons) {
        for (std::uint64_t k = 0; k < big_n; ++k) {
          if (rng.uniform() < s.eta) ++survived;
        }
      } else {
        survived = binomial(rng, s.binomial[i]);
      }
    }
    ++histogram[survived];
  }
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(mix64(seed) ^ (stream * kStreamMultiplier + kGolden))) {}

CounterRng::result_type CounterRng::operator()() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double CounterRng::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

McResult simulate_thinned(const Pmf& p, AttenuationCoefficient eta,
                          const McConfig& cfg, unsigned threads) {
  if (cfg.trials == 0 || cfg.chunk_size == 0) {
    throw Error(ErrorCode::kInvalidParameter,
                "trials and chunk_size must be positive");
  }
  if (p.tail_defect() > kMaxSampledTail) {
    throw Error(ErrorCode::kInvalidParameter,
                "sampling needs tail_defect <= 1e-9; tighten tail_eps");
  }
  const Sampler sampler = make_sampler(p, eta.value());
  const std::uint64_t chunks = (cfg.trials + cfg.chunk_size - 1) / cfg.chunk_size;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::uint64_t>(threads, chunks));

  const std::size_t bins = static_cast<std::size_t>(p.max_index()) + 1;
  std::vector<std::vector<std::uint64_t>> per_thread(
      threads, std::vector<std::uint64_t>(bins, 0));
  std::atomic<std::uint64_t> next_chunk{0};
  auto worker = [&](unsigned id) {
    for (;;) {
      const std::uint64_t chunk = next_chunk.fetch_add(1);
      if (chunk >= chunks) return;
      const std::uint64_t begin = chunk * cfg.chunk_size;
      const std::uint64_t count = std::min(cfg.chunk_size, cfg.trials - begin);
      run_chunk(sampler, cfg.seed, chunk, count, per_thread[id]);
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned id = 0; id < threads; ++id) pool.emplace_back(worker, id);
  }

  std::vector<std::uint64_t> histogram(bins, 0);
  for (const auto& h : per_thread) {
    for (std::size_t n = 0; n < bins; ++n) histogram[n] += h[n];
  }

  std::vector<PmfEntry> entries;
  std::uint64_t max_seen = 0;
  const double trials = static_cast<double>(cfg.trials);
  for (std::size_t n = 0; n < bins; ++n) {
    if (histogram[n] == 0) continue;
    entries.push_back({n, static_cast<double>(histogram[n]) / trials});
    max_seen = n;
  }
  McResult result{Pmf::from_sorted(std::move(entries), 0.0), cfg.trials,
                  cfg.seed, 0.0, max_seen};
  result.tv_to_analytic = tv_distance(result.empirical, thin_direct(p, eta));
  return result;
}

}  // namespace photothin
