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

#include "cohloss/spectra.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

namespace cohloss {

void SweepConfig::validate() const {
  if (points < 2) fail(Errc::validation, "SweepConfig: points must be >= 2");
  if (!(start < stop)) fail(Errc::validation, "SweepConfig: start must be < stop");
  if (snapshot_time < 0.0) fail(Errc::validation, "SweepConfig: snapshot_time must be >= 0");
  if (dt <= 0.0) fail(Errc::validation, "SweepConfig: dt must be positive");
  if (envelope) {
    if (envelope->t_step <= 0.0) fail(Errc::validation, "SweepConfig: envelope t_step must be positive");
    if (envelope->t_max < envelope->t_step)
      fail(Errc::validation, "SweepConfig: envelope t_max must be >= t_step");
  }
  std::visit([](const auto& m) { m.validate(); }, model);
}

ModelConfig apply_axis(const ModelConfig& model, SweepAxis axis, double x) {
  ModelConfig out = model;
  if (axis == SweepAxis::detuning_delta) {
    if (!std::holds_alternative<JcConfig>(out))
      fail(Errc::validation, "apply_axis: detuning axis requires the two-level model");
    auto& jc = std::get<JcConfig>(out);
    jc.omega = jc.omega_a + x;
  } else {
    std::visit([x](auto& m) { m.omega = x; }, out);
  }
  return out;
}

EnvelopeResult envelope(const ModelConfig& model, double t_max, double t_step, double dt) {
  if (t_max < t_step) fail(Errc::argument, "envelope: t_max must be >= t_step");
  const Mat h = model_hamiltonian(model);
  const Eigen::Index atom_dim = model_atom_dim(model);

  Mat ground = Mat::Zero(atom_dim, atom_dim);
  ground(0, 0) = 1.0;
  Mat photon = Mat::Zero(2, 2);
  photon(1, 1) = 1.0;

  const EvolutionResult evo = evolve(h, model_q(model), model_dissipator(model),
                                     tensor(photon, ground), t_max, dt, t_step);

  const HilbertLabel label{{2, atom_dim}, {"field", "atom"}};
  EnvelopeResult result;
  for (const Mat& state : evo.states) {
    const Mat sigma = partial_trace(state, label, {0});
    result.p_min = std::min(result.p_min, sigma(1, 1).real());
    result.sigma01_max = std::max(result.sigma01_max, std::abs(sigma(0, 1)));
  }
  return result;
}

namespace {

SpectrumRecord sweep_point(const SweepConfig& cfg, int index) {
  const double x =
      cfg.start + (cfg.stop - cfg.start) * static_cast<double>(index) / (cfg.points - 1);
  const ModelConfig model = apply_axis(cfg.model, cfg.axis, x);
  const FieldChannelExtraction extraction = extract_field_channel(model, cfg.snapshot_time, cfg.dt);

  SpectrumRecord record;
  record.x = x;
  record.p = extraction.survival_probability;
  record.excess_loss = extraction.params.excess_coherence_loss();
  record.sigma01_abs = std::abs(extraction.params.sigma01());

  const double consistency = std::abs(record.p - (1.0 - extraction.params.sigma00()));
  if (consistency > 1e-10)
    fail(Errc::physics, "sweep: survival probability and tomography disagree by " +
                            std::to_string(consistency));
  if (record.excess_loss < -1e-8)
    fail(Errc::physics, "sweep: excess coherence loss below -1e-8");

  if (cfg.envelope) {
    const EnvelopeResult env = envelope(model, cfg.envelope->t_max, cfg.envelope->t_step, cfg.dt);
    record.p_min_envelope = env.p_min;
    record.sigma01_max_envelope = env.sigma01_max;
  }
  return record;
}

}  // namespace

std::vector<SpectrumRecord> run_sweep(const SweepConfig& cfg, int n_threads) {
  cfg.validate();
  const int points = cfg.points;
  std::vector<SpectrumRecord> records(points);

  int workers = n_threads > 0 ? n_threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, points));

  if (workers == 1) {
    for (int i = 0; i < points; ++i) {
      try {
        records[i] = sweep_point(cfg, i);
      } catch (const Error& e) {
        fail(e.code(), "grid point " + std::to_string(i) + ": " + e.what());
      }
    }
    return records;
  }

  std::atomic<int> next{0};
  std::atomic<int> first_failure{points};
  std::vector<std::string> errors(points);
  std::vector<Errc> error_codes(points, Errc::physics);

  auto worker = [&] {
    for (int i = next.fetch_add(1); i < points; i = next.fetch_add(1)) {
      try {
        records[i] = sweep_point(cfg, i);
      } catch (const Error& e) {
        errors[i] = e.what();
        error_codes[i] = e.code();
        int expected = first_failure.load();
        while (i < expected && !first_failure.compare_exchange_weak(expected, i)) {
        }
      } catch (const std::exception& e) {
        errors[i] = e.what();
        int expected = first_failure.load();
        while (i < expected && !first_failure.compare_exchange_weak(expected, i)) {
        }
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  const int failed = first_failure.load();
  if (failed < points)
    fail(error_codes[failed], "grid point " + std::to_string(failed) + ": " + errors[failed]);
  return records;
}

SweepSummary summarize(const std::vector<SpectrumRecord>& records) {
  if (records.empty()) fail(Errc::argument, "summarize: no records");
  SweepSummary s;
  s.points = static_cast<int>(records.size());
  s.min_p = records.front().p;
  s.max_excess_loss = records.front().excess_loss;
  s.max_sigma01 = records.front().sigma01_abs;
  for (const SpectrumRecord& r : records) {
    s.min_p = std::min(s.min_p, r.p);
    s.max_excess_loss = std::max(s.max_excess_loss, r.excess_loss);
    s.max_sigma01 = std::max(s.max_sigma01, r.sigma01_abs);
  }
  return s;
}

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string csv_string(const std::vector<SpectrumRecord>& records) {
  if (records.empty()) fail(Errc::argument, "csv_string: no records");
  std::string out = "x,p,excess_loss,sigma01_abs,p_min_envelope,sigma01_max_envelope\n";
  for (const SpectrumRecord& r : records) {
    out += format_double(r.x) + ',' + format_double(r.p) + ',' + format_double(r.excess_loss) +
           ',' + format_double(r.sigma01_abs) + ',';
    if (r.p_min_envelope) out += format_double(*r.p_min_envelope);
    out += ',';
    if (r.sigma01_max_envelope) out += format_double(*r.sigma01_max_envelope);
    out += '\n';
  }
  return out;
}

void write_csv(const std::vector<SpectrumRecord>& records, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) fail(Errc::io, "write_csv: cannot open " + path);
  file << csv_string(records);
  if (!file) fail(Errc::io, "write_csv: write failed for " + path);
}

std::vector<SpectrumRecord> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "x,p,excess_loss,sigma01_abs,p_min_envelope,sigma01_max_envelope")
    fail(Errc::validation, "parse_csv: bad header");

  std::vector<SpectrumRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    size_t pos = 0;
    while (true) {
      const size_t comma = line.find(',', pos);
      cells.push_back(line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (cells.size() != 6) fail(Errc::validation, "parse_csv: expected 6 cells per row");
    auto num = [](const std::string& s) {
      size_t consumed = 0;
      const double v = std::stod(s, &consumed);
      if (consumed != s.size()) fail(Errc::validation, "parse_csv: bad number '" + s + "'");
      return v;
    };
    SpectrumRecord r;
    r.x = num(cells[0]);
    r.p = num(cells[1]);
    r.excess_loss = num(cells[2]);
    r.sigma01_abs = num(cells[3]);
    if (!cells[4].empty()) r.p_min_envelope = num(cells[4]);
    if (!cells[5].empty()) r.sigma01_max_envelope = num(cells[5]);
    records.push_back(r);
  }
  if (records.empty()) fail(Errc::validation, "parse_csv: no data rows");
  return records;
}

std::vector<SpectrumRecord> read_csv(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) fail(Errc::io, "read_csv: cannot open " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_csv(buf.str());
}

namespace {

std::vector<double> moving_average3(const std::vector<double>& y) {
  const size_t n = y.size();
  std::vector<double> s(n);
  for (size_t i = 0; i < n; ++i) {
    double sum = y[i];
    int count = 1;
    if (i > 0) {
      sum += y[i - 1];
      ++count;
    }
    if (i + 1 < n) {
      sum += y[i + 1];
      ++count;
    }
    s[i] = sum / count;
  }
  return s;
}

std::vector<int> strict_extrema(const std::vector<double>& y, bool maxima) {
  const std::vector<double> s = moving_average3(y);
  std::vector<int> idx;
  for (size_t i = 1; i + 1 < s.size(); ++i) {
    const bool hit = maxima ? (s[i] > s[i - 1] && s[i] > s[i + 1])
                            : (s[i] < s[i - 1] && s[i] < s[i + 1]);
    if (hit) idx.push_back(static_cast<int>(i));
  }
  return idx;
}

}  // namespace

std::vector<int> local_maxima(const std::vector<double>& y) { return strict_extrema(y, true); }
std::vector<int> local_minima(const std::vector<double>& y) { return strict_extrema(y, false); }

}  // namespace cohloss
