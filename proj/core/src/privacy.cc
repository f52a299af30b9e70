// Copyright 2026 The dpdda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dpdda/privacy.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "dpdda/errors.h"

namespace dpdda::privacy {
namespace {

void NeumaierAdd(double value, double& sum, double& compensation) {
  const double t = sum + value;
  if (std::abs(sum) >= std::abs(value)) {
    compensation += (sum - t) + value;
  } else {
    compensation += (value - t) + sum;
  }
  sum = t;
}

}  // namespace

void NoiseConfig::Validate() const {
  std::vector<std::string> errors;
  if (mode == NoiseMode::kFixedEpsilon && !(epsilon > 0.0)) {
    errors.push_back("privacy.epsilon must be > 0");
  }
  if (mode == NoiseMode::kFixedSigma && !(sigma > 0.0)) {
    errors.push_back("privacy.sigma must be > 0");
  }
  if (enabled() && sensitivity_mode == SensitivityMode::kManual &&
      !(manual_sensitivity > 0.0)) {
    errors.push_back("privacy.sensitivity.delta must be > 0");
  }
  if (!errors.empty()) throw ConfigError(errors);
}

double SensitivityBound(double gradient_bound, double theta, int m) {
  if (!(gradient_bound > 0.0)) throw DomainError("L must be positive");
  if (!(theta >= 1.0)) throw DomainError("theta must be >= 1");
  if (m < 1) throw DomainError("dimension must be >= 1");
  return 2.0 * gradient_bound * theta * std::sqrt(static_cast<double>(m));
}

double SigmaFor(double delta, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw ConfigError("epsilon must be positive to derive a Laplace scale");
  }
  if (!(delta > 0.0)) {
    throw ConfigError("sensitivity must be positive to derive a Laplace scale");
  }
  return delta / epsilon;
}

Vec SampleNoise(double sigma, int m, SplitMix64& gen) {
  Vec out(m);
  for (double& z : out) z = SampleLaplace(gen, sigma);
  return out;
}

Vec AgentNoise(const NoiseConfig& config, double sigma, std::uint64_t seed,
               StreamPurpose purpose, int agent, int t, int m) {
  if (!config.enabled()) return Vec(m, 0.0);
  SplitMix64 gen(SubstreamSeed(seed, purpose, static_cast<std::uint64_t>(agent),
                               static_cast<std::uint64_t>(t)));
  return SampleNoise(sigma, m, gen);
}

void PrivacyLedger::Accumulate(int t, double delta, double sigma) {
  if (t < 0) throw AccountingError("negative step index");
  if (static_cast<std::size_t>(t) < seen_.size() && seen_[t]) {
    throw AccountingError("step " + std::to_string(t) + " already recorded");
  }
  if (!(delta > 0.0) || !(sigma > 0.0)) {
    throw DomainError("ledger entries need positive delta and sigma");
  }
  if (static_cast<std::size_t>(t) >= seen_.size()) seen_.resize(t + 1, false);
  seen_[t] = true;
  const double eps = delta / sigma;
  records_.push_back({t, delta, sigma, eps});
  NeumaierAdd(eps, sum_, compensation_);
}

double PrivacyLedger::Recompute(std::span<const LedgerRecord> records) {
  double sum = 0.0, compensation = 0.0;
  for (const auto& r : records) NeumaierAdd(r.delta / r.sigma, sum, compensation);
  return sum + compensation;
}

DensityRatioResult DensityRatioCheck(std::span<const double> b,
                                     std::span<const double> b_prime,
                                     double sigma,
                                     std::span<const Vec> probes) {
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  if (b.size() != b_prime.size()) throw DomainError("dimension mismatch");
  DensityRatioResult out;
  out.bound = 0.0;
  for (std::size_t k = 0; k < b.size(); ++k) out.bound += std::abs(b[k] - b_prime[k]);
  out.bound /= sigma;
  out.max_log_ratio = probes.empty() ? 0.0 : -INFINITY;
  for (const Vec& z : probes) {
    if (z.size() != b.size()) throw DomainError("probe dimension mismatch");
    // log[(1/2s) e^{-|z-b|/s}] - log[(1/2s) e^{-|z-b'|/s}]
    double log_ratio = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) {
      log_ratio += (std::abs(z[k] - b_prime[k]) - std::abs(z[k] - b[k])) / sigma;
    }
    out.max_log_ratio = std::max(out.max_log_ratio, log_ratio);
  }
  return out;
}

std::vector<Vec> LaplaceProbePoints(std::span<const double> center,
                                    double sigma, int count, SplitMix64& gen) {
  std::vector<Vec> probes;
  probes.reserve(count);
  for (int p = 0; p < count; ++p) {
    Vec z = SampleNoise(sigma, static_cast<int>(center.size()), gen);
    for (std::size_t k = 0; k < z.size(); ++k) z[k] += center[k];
    probes.push_back(std::move(z));
  }
  return probes;
}

}  // namespace dpdda::privacy
