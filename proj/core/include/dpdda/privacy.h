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

#ifndef DPDDA_PRIVACY_H_
#define DPDDA_PRIVACY_H_

#include <cstdint>
#include <span>
#include <vector>

#include "dpdda/linalg.h"
#include "dpdda/random.h"

namespace dpdda::privacy {

enum class NoiseMode { kDisabled, kFixedEpsilon, kFixedSigma };
enum class SensitivityMode { kAnalytic, kManual };

struct NoiseConfig {
  NoiseMode mode = NoiseMode::kDisabled;
  double epsilon = 0.0;  // per-step budget, kFixedEpsilon
  double sigma = 0.0;    // Laplace scale, kFixedSigma
  SensitivityMode sensitivity_mode = SensitivityMode::kManual;
  double manual_sensitivity = 1.0;
  // One draw n_i(t) perturbs both b_i(t) and v_i(t). When false, v gets an
  // independent draw.
  bool shared_draw = true;

  bool enabled() const { return mode != NoiseMode::kDisabled; }
  // Throws ConfigError listing every violated constraint.
  void Validate() const;

  bool operator==(const NoiseConfig&) const = default;
};

// 2 L theta sqrt(m). Throws DomainError unless L > 0, theta >= 1, m >= 1.
double SensitivityBound(double gradient_bound, double theta, int m);

// Delta / epsilon. Throws ConfigError unless both are positive.
double SigmaFor(double delta, double epsilon);

// m i.i.d. zero-mean Laplace draws with scale sigma. Requires sigma > 0.
Vec SampleNoise(double sigma, int m, SplitMix64& gen);

// Noise for (agent, t) on the substream keyed by purpose. Exact zeros when
// the configuration disables noise.
Vec AgentNoise(const NoiseConfig& config, double sigma, std::uint64_t seed,
               StreamPurpose purpose, int agent, int t, int m);

struct LedgerRecord {
  int t = 0;
  double delta = 0.0;
  double sigma = 0.0;
  double epsilon = 0.0;  // delta / sigma
  bool operator==(const LedgerRecord&) const = default;
};

// Per-step sensitivities and noise scales with the linearly composed total
// epsilon_hat = sum_t delta_t / sigma_t. The running total uses Neumaier
// summation; Recompute() replays the same arithmetic, so the two agree bit
// for bit.
class PrivacyLedger {
 public:
  // Throws AccountingError if t was already recorded, DomainError if
  // delta or sigma is not positive.
  void Accumulate(int t, double delta, double sigma);

  double epsilon_hat() const { return sum_ + compensation_; }
  const std::vector<LedgerRecord>& records() const { return records_; }

  static double Recompute(std::span<const LedgerRecord> records);

 private:
  std::vector<LedgerRecord> records_;
  std::vector<bool> seen_;
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

struct DensityRatioResult {
  double max_log_ratio = 0.0;
  double bound = 0.0;  // ||b - b'||_1 / sigma
};

// Max over probe points z of log p(z - b) / p(z - b') for the product
// Laplace density with scale sigma.
DensityRatioResult DensityRatioCheck(std::span<const double> b,
                                     std::span<const double> b_prime,
                                     double sigma,
                                     std::span<const Vec> probes);

// Probe points drawn from the Laplace mechanism's output distribution
// around center.
std::vector<Vec> LaplaceProbePoints(std::span<const double> center,
                                    double sigma, int count, SplitMix64& gen);

}  // namespace dpdda::privacy

#endif  // DPDDA_PRIVACY_H_
