// Copyright 2026 The cohloss authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cohloss/dynamics.hpp"

namespace cohloss {

enum class SweepAxis { detuning_delta, photon_energy_omega };

struct EnvelopeConfig {
  double t_max = 500.0;
  double t_step = 0.5;
};

struct SweepConfig {
  ModelConfig model;
  SweepAxis axis = SweepAxis::photon_energy_omega;
  double start = 0.0;
  double stop = 1.0;
  int points = 2;
  double snapshot_time = 0.0;
  std::optional<EnvelopeConfig> envelope;
  double dt = 0.01;

  void validate() const;
};

struct SpectrumRecord {
  double x = 0.0;             // swept grid value
  double p = 0.0;             // photon survival probability
  double excess_loss = 0.0;   // 1 - sigma00 - |gamma|^2
  double sigma01_abs = 0.0;   // |sigma01|
  std::optional<double> p_min_envelope;
  std::optional<double> sigma01_max_envelope;
};

/// Model with the swept parameter set: delta axis shifts the photon energy to
/// omega_a + x (two-level model only), omega axis sets it to x.
ModelConfig apply_axis(const ModelConfig& model, SweepAxis axis, double x);

struct EnvelopeResult {
  double p_min = 1.0;
  double sigma01_max = 0.0;
};

/// One trajectory from the single-photon input, snapshots every t_step up to
/// t_max; minimum of p and maximum of |sigma01| over the snapshots.
EnvelopeResult envelope(const ModelConfig& model, double t_max, double t_step, double dt);

/// Runs the grid. Points are processed independently (n_threads = 0 picks the
/// hardware concurrency) and merged in grid order; results are identical to a
/// serial run.
std::vector<SpectrumRecord> run_sweep(const SweepConfig& cfg, int n_threads = 0);

struct SweepSummary {
  int points = 0;
  double min_p = 0.0;
  double max_excess_loss = 0.0;
  double max_sigma01 = 0.0;
};

SweepSummary summarize(const std::vector<SpectrumRecord>& records);

/// Header `x,p,excess_loss,sigma01_abs,p_min_envelope,sigma01_max_envelope`,
/// 17 significant digits, empty cells for absent optionals, LF endings.
std::string csv_string(const std::vector<SpectrumRecord>& records);
void write_csv(const std::vector<SpectrumRecord>& records, const std::string& path);
std::vector<SpectrumRecord> parse_csv(const std::string& text);
std::vector<SpectrumRecord> read_csv(const std::string& path);

/// Indices that are strict local maxima (resp. minima) of the series after a
/// 3-point moving average; endpoints are never reported.
std::vector<int> local_maxima(const std::vector<double>& y);
std::vector<int> local_minima(const std::vector<double>& y);

}  // namespace cohloss
