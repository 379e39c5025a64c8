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

#include "cohloss/json_io.hpp"

#include <fstream>

namespace cohloss {

namespace {

const Json& member(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) fail(Errc::validation, std::string("missing JSON key '") + key + "'");
  return *it;
}

double as_number(const Json& j, const char* what) {
  if (!j.is_number()) fail(Errc::validation, std::string(what) + ": expected a number");
  return j.get<double>();
}

Cplx complex_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 2)
    fail(Errc::validation, std::string(what) + ": expected [re, im]");
  return {as_number(j[0], what), as_number(j[1], what)};
}

Json complex_to_json(Cplx z) { return Json::array({z.real(), z.imag()}); }

Vec amplitudes_from_json(const Json& j, const char* what) {
  if (!j.is_array()) fail(Errc::validation, std::string(what) + ": expected an array");
  Vec v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i], what);
  return v;
}

}  // namespace

Json matrix_to_json(const Mat& m) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) entries.push_back(complex_to_json(m(i, j)));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

Mat matrix_from_json(const Json& j) {
  if (!j.is_object()) fail(Errc::validation, "matrix: expected an object");
  const auto rows = member(j, "rows").get<Eigen::Index>();
  const auto cols = member(j, "cols").get<Eigen::Index>();
  if (rows <= 0 || cols <= 0) fail(Errc::validation, "matrix: rows and cols must be positive");
  const Json& entries = member(j, "entries");
  if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != rows * cols)
    fail(Errc::validation, "matrix: entries length must equal rows*cols");
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index c = 0; c < cols; ++c)
      m(i, c) = complex_from_json(entries[static_cast<size_t>(i * cols + c)], "matrix entry");
  require_finite(m, "matrix");
  return m;
}

Json channel_to_json(const KrausChannel& ch) {
  Json kraus = Json::array();
  for (const Mat& k : ch.kraus) kraus.push_back(matrix_to_json(k));
  return Json{{"dim", ch.dim}, {"kraus", std::move(kraus)}};
}

KrausChannel channel_from_json(const Json& j) {
  if (!j.is_object()) fail(Errc::validation, "channel: expected an object");
  const auto dim = member(j, "dim").get<Eigen::Index>();
  const Json& kraus = member(j, "kraus");
  if (!kraus.is_array() || kraus.empty())
    fail(Errc::validation, "channel: kraus must be a non-empty array");
  std::vector<Mat> ops;
  ops.reserve(kraus.size());
  for (const Json& k : kraus) ops.push_back(matrix_from_json(k));
  return KrausChannel::create(dim, std::move(ops));
}

Json loss_params_to_json(const LossChannelParams& p) {
  return Json{{"sigma", matrix_to_json(p.sigma)}, {"gamma", complex_to_json(p.gamma)}};
}

LossChannelParams loss_params_from_json(const Json& j) {
  LossChannelParams p;
  p.sigma = matrix_from_json(member(j, "sigma"));
  p.gamma = complex_from_json(member(j, "gamma"), "gamma");
  p.validate();
  return p;
}

Json lpc_report_to_json(const LpcReport& r) {
  Json j{{"loss", r.loss},
         {"preservation", r.preservation},
         {"creation", r.creation},
         {"inequality_slack", r.inequality_slack}};
  j["excess_coherence_loss"] = r.excess_coherence_loss ? Json(*r.excess_coherence_loss) : Json();
  return j;
}

LpcReport lpc_report_from_json(const Json& j) {
  LpcReport r;
  r.loss = as_number(member(j, "loss"), "loss");
  r.preservation = as_number(member(j, "preservation"), "preservation");
  r.creation = as_number(member(j, "creation"), "creation");
  r.inequality_slack = as_number(member(j, "inequality_slack"), "inequality_slack");
  const Json& excess = member(j, "excess_coherence_loss");
  if (!excess.is_null()) r.excess_coherence_loss = as_number(excess, "excess_coherence_loss");
  return r;
}

Json mode_unitary_to_json(const ModeUnitary& mu) {
  return Json{{"K", mu.system_modes}, {"J", mu.ancilla_modes}, {"S", matrix_to_json(mu.s)}};
}

ModeUnitary mode_unitary_from_json(const Json& j) {
  return ModeUnitary::create(member(j, "K").get<int>(), member(j, "J").get<int>(),
                             matrix_from_json(member(j, "S")));
}

Json ancilla_state_to_json(const AncillaState& eta) {
  Json amps = Json::array();
  for (Eigen::Index i = 0; i < eta.amplitudes.size(); ++i)
    amps.push_back(complex_to_json(eta.amplitudes(i)));
  return Json{{"J", eta.modes}, {"amplitudes", std::move(amps)}};
}

AncillaState ancilla_state_from_json(const Json& j) {
  return AncillaState::create(member(j, "J").get<int>(),
                              amplitudes_from_json(member(j, "amplitudes"), "amplitudes"));
}

namespace {

DissipatorKind dissipator_from_string(const std::string& s) {
  if (s == "none") return DissipatorKind::none;
  if (s == "relaxation") return DissipatorKind::relaxation;
  if (s == "dephasing") return DissipatorKind::dephasing;
  fail(Errc::validation, "dissipator: expected none|relaxation|dephasing, got '" + s + "'");
}

std::string dissipator_to_string(DissipatorKind d) {
  switch (d) {
    case DissipatorKind::none: return "none";
    case DissipatorKind::relaxation: return "relaxation";
    case DissipatorKind::dephasing: return "dephasing";
  }
  return "none";
}

}  // namespace

Json model_config_to_json(const ModelConfig& model) {
  if (std::holds_alternative<JcConfig>(model)) {
    const auto& jc = std::get<JcConfig>(model);
    return Json{{"type", "jc"},          {"omega", jc.omega}, {"omega_a", jc.omega_a},
                {"g", jc.g},             {"q", jc.q},         {"dissipator", dissipator_to_string(jc.dissipator)}};
  }
  const auto& tl = std::get<ThreeLevelConfig>(model);
  return Json{{"type", "three_level"}, {"omega", tl.omega}, {"omega0", tl.omega0},
              {"omega1", tl.omega1},   {"omega2", tl.omega2}, {"g01", tl.g01},
              {"g02", tl.g02},         {"g12", tl.g12}};
}

ModelConfig model_config_from_json(const Json& j) {
  if (!j.is_object()) fail(Errc::validation, "model: expected an object");
  const std::string type = member(j, "type").get<std::string>();
  if (type == "jc") {
    JcConfig cfg;
    cfg.omega = as_number(member(j, "omega"), "omega");
    cfg.omega_a = as_number(member(j, "omega_a"), "omega_a");
    cfg.g = as_number(member(j, "g"), "g");
    if (j.contains("q")) cfg.q = as_number(j["q"], "q");
    if (j.contains("dissipator")) cfg.dissipator = dissipator_from_string(j["dissipator"].get<std::string>());
    cfg.validate();
    return cfg;
  }
  if (type == "three_level") {
    ThreeLevelConfig cfg;
    cfg.omega = as_number(member(j, "omega"), "omega");
    cfg.omega0 = as_number(member(j, "omega0"), "omega0");
    cfg.omega1 = as_number(member(j, "omega1"), "omega1");
    cfg.omega2 = as_number(member(j, "omega2"), "omega2");
    cfg.g01 = as_number(member(j, "g01"), "g01");
    cfg.g02 = as_number(member(j, "g02"), "g02");
    cfg.g12 = as_number(member(j, "g12"), "g12");
    cfg.validate();
    return cfg;
  }
  fail(Errc::validation, "model: type must be 'jc' or 'three_level'");
}

Json sweep_config_to_json(const SweepConfig& cfg) {
  Json j{{"model", model_config_to_json(cfg.model)},
         {"axis", cfg.axis == SweepAxis::detuning_delta ? "delta" : "omega"},
         {"grid", Json{{"start", cfg.start}, {"stop", cfg.stop}, {"points", cfg.points}}},
         {"snapshot_time", cfg.snapshot_time},
         {"dt", cfg.dt}};
  if (cfg.envelope)
    j["envelope"] = Json{{"t_max", cfg.envelope->t_max}, {"t_step", cfg.envelope->t_step}};
  return j;
}

SweepConfig sweep_config_from_json(const Json& j) {
  if (!j.is_object()) fail(Errc::validation, "sweep config: expected an object");
  SweepConfig cfg;
  cfg.model = model_config_from_json(member(j, "model"));
  const std::string axis = member(j, "axis").get<std::string>();
  if (axis == "delta")
    cfg.axis = SweepAxis::detuning_delta;
  else if (axis == "omega")
    cfg.axis = SweepAxis::photon_energy_omega;
  else
    fail(Errc::validation, "sweep config: axis must be 'delta' or 'omega'");
  const Json& grid = member(j, "grid");
  cfg.start = as_number(member(grid, "start"), "grid.start");
  cfg.stop = as_number(member(grid, "stop"), "grid.stop");
  cfg.points = member(grid, "points").get<int>();
  cfg.snapshot_time = as_number(member(j, "snapshot_time"), "snapshot_time");
  if (j.contains("dt")) cfg.dt = as_number(j["dt"], "dt");
  if (j.contains("envelope") && !j["envelope"].is_null()) {
    EnvelopeConfig env;
    env.t_max = as_number(member(j["envelope"], "t_max"), "envelope.t_max");
    env.t_step = as_number(member(j["envelope"], "t_step"), "envelope.t_step");
    cfg.envelope = env;
  }
  cfg.validate();
  return cfg;
}

Json parse_json(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(Errc::validation, "malformed JSON");
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) fail(Errc::io, "cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
  if (file.bad()) fail(Errc::io, "read failed for " + path);
  return parse_json(text);
}

void save_json_file(const Json& j, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) fail(Errc::io, "cannot open " + path + " for writing");
  file << j.dump(2) << '\n';
  if (!file) fail(Errc::io, "write failed for " + path);
}

}  // namespace cohloss
