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

#include <string>

#include "json.hpp"

#include "cohloss/channel.hpp"
#include "cohloss/linear_optics.hpp"
#include "cohloss/spectra.hpp"

namespace cohloss {

using Json = nlohmann::json;

// Matrix: {"rows": n, "cols": m, "entries": [[re, im], ...]} row-major.
Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const Json& j);

// Channel: {"dim": n, "kraus": [matrix, ...]}.
Json channel_to_json(const KrausChannel& ch);
KrausChannel channel_from_json(const Json& j);

// {"sigma": matrix, "gamma": [re, im]}.
Json loss_params_to_json(const LossChannelParams& p);
LossChannelParams loss_params_from_json(const Json& j);

// {"loss", "preservation", "creation", "excess_coherence_loss" (nullable),
//  "inequality_slack"}.
Json lpc_report_to_json(const LpcReport& r);
LpcReport lpc_report_from_json(const Json& j);

// {"K": k, "J": j, "S": matrix}.
Json mode_unitary_to_json(const ModeUnitary& mu);
ModeUnitary mode_unitary_from_json(const Json& j);

// {"J": j, "amplitudes": [[re, im], ...]} over the 2^J occupation basis.
Json ancilla_state_to_json(const AncillaState& eta);
AncillaState ancilla_state_from_json(const Json& j);

// {"type": "jc" | "three_level", <config fields>}; an optional
// "integration": {"t", "dt"} sub-object is tolerated and ignored here.
Json model_config_to_json(const ModelConfig& model);
ModelConfig model_config_from_json(const Json& j);

// {"model", "axis": "delta"|"omega", "grid": {start, stop, points},
//  "snapshot_time", "envelope": {t_max, t_step} (optional), "dt"}.
Json sweep_config_to_json(const SweepConfig& cfg);
SweepConfig sweep_config_from_json(const Json& j);

Json parse_json(const std::string& text);
Json load_json_file(const std::string& path);
void save_json_file(const Json& j, const std::string& path);

}  // namespace cohloss
