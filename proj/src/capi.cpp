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

#include "cohloss.h"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "cohloss/json_io.hpp"

using namespace cohloss;

struct cohloss_matrix {
  Mat m;
};

struct cohloss_channel {
  KrausChannel ch;
};

namespace {

thread_local std::string g_error_message;
thread_local int g_error_code = COHLOSS_OK;

void set_error(int code, const std::string& msg) {
  g_error_code = code;
  g_error_message = msg;
}

template <class F>
int guarded(F&& f) noexcept {
  try {
    f();
    g_error_code = COHLOSS_OK;
    return COHLOSS_OK;
  } catch (const Error& e) {
    set_error(static_cast<int>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    set_error(COHLOSS_ERR_IO, "out of memory");
  } catch (const std::exception& e) {
    set_error(COHLOSS_ERR_ARGUMENT, e.what());
  }
  return g_error_code;
}

template <class F>
auto guarded_ptr(F&& f) noexcept -> decltype(f()) {
  try {
    auto* p = f();
    g_error_code = COHLOSS_OK;
    return p;
  } catch (const Error& e) {
    set_error(static_cast<int>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    set_error(COHLOSS_ERR_IO, "out of memory");
  } catch (const std::exception& e) {
    set_error(COHLOSS_ERR_ARGUMENT, e.what());
  }
  return nullptr;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool cond, const char* msg) {
  if (!cond) fail(Errc::argument, msg);
}

Mat matrix_from_interleaved(int rows, int cols, const double* data) {
  require(rows > 0 && cols > 0, "matrix dimensions must be positive");
  require(data != nullptr, "null entry pointer");
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double* z = data + 2 * (static_cast<size_t>(i) * cols + j);
      m(i, j) = Cplx(z[0], z[1]);
    }
  require_finite(m, "matrix");
  return m;
}

Vec vector_from_interleaved(const double* data, int dim) {
  require(dim > 0, "vector dimension must be positive");
  require(data != nullptr, "null vector pointer");
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Cplx(data[2 * i], data[2 * i + 1]);
  return v;
}

LpcReport to_core(const cohloss_lpc_report& r) {
  LpcReport out;
  out.loss = r.loss;
  out.preservation = r.preservation;
  out.creation = r.creation;
  out.inequality_slack = r.inequality_slack;
  if (r.has_excess) out.excess_coherence_loss = r.excess_coherence_loss;
  return out;
}

cohloss_lpc_report from_core(const LpcReport& r) {
  cohloss_lpc_report out{};
  out.loss = r.loss;
  out.preservation = r.preservation;
  out.creation = r.creation;
  out.inequality_slack = r.inequality_slack;
  out.has_excess = r.excess_coherence_loss.has_value() ? 1 : 0;
  out.excess_coherence_loss = r.excess_coherence_loss.value_or(0.0);
  return out;
}

std::pair<ModeUnitary, AncillaState> linopt_inputs(const char* mode_unitary_json,
                                                   const char* ancilla_json) {
  require(mode_unitary_json != nullptr, "null mode unitary JSON");
  ModeUnitary mu = mode_unitary_from_json(parse_json(mode_unitary_json));
  AncillaState eta = ancilla_json == nullptr
                         ? AncillaState::vacuum(mu.ancilla_modes)
                         : ancilla_state_from_json(parse_json(ancilla_json));
  return {std::move(mu), std::move(eta)};
}

}  // namespace

extern "C" {

const char* cohloss_version(void) { return "0.1.0"; }

const char* cohloss_last_error(void) { return g_error_message.c_str(); }

int cohloss_last_error_code(void) { return g_error_code; }

void cohloss_string_free(char* s) { delete[] s; }

/* ---- matrices ---------------------------------------------------------- */

cohloss_matrix* cohloss_matrix_create(int rows, int cols, const double* interleaved) {
  return guarded_ptr([&]() -> cohloss_matrix* {
    return new cohloss_matrix{matrix_from_interleaved(rows, cols, interleaved)};
  });
}

cohloss_matrix* cohloss_matrix_from_json(const char* json_text) {
  return guarded_ptr([&]() -> cohloss_matrix* {
    require(json_text != nullptr, "null JSON text");
    return new cohloss_matrix{matrix_from_json(parse_json(json_text))};
  });
}

char* cohloss_matrix_to_json(const cohloss_matrix* m) {
  return guarded_ptr([&]() -> char* {
    require(m != nullptr, "null matrix");
    return dup_string(matrix_to_json(m->m).dump());
  });
}

int cohloss_matrix_rows(const cohloss_matrix* m) { return m ? static_cast<int>(m->m.rows()) : 0; }

int cohloss_matrix_cols(const cohloss_matrix* m) { return m ? static_cast<int>(m->m.cols()) : 0; }

int cohloss_matrix_get(const cohloss_matrix* m, int row, int col, double* re, double* im) {
  return guarded([&] {
    require(m != nullptr, "null matrix");
    require(row >= 0 && row < m->m.rows() && col >= 0 && col < m->m.cols(), "index out of range");
    if (re) *re = m->m(row, col).real();
    if (im) *im = m->m(row, col).imag();
  });
}

void cohloss_matrix_free(cohloss_matrix* m) { delete m; }

int cohloss_tensor_product(const cohloss_matrix* a, const cohloss_matrix* b, cohloss_matrix** out) {
  return guarded([&] {
    require(a && b && out, "null argument");
    *out = new cohloss_matrix{tensor(a->m, b->m)};
  });
}

int cohloss_partial_trace(const cohloss_matrix* m, const int* factor_dims, int n_factors,
                          const int* keep, int n_keep, cohloss_matrix** out) {
  return guarded([&] {
    require(m && factor_dims && keep && out, "null argument");
    require(n_factors > 0 && n_keep > 0, "empty factor or keep list");
    HilbertLabel label;
    for (int i = 0; i < n_factors; ++i) label.dims.push_back(factor_dims[i]);
    std::vector<int> keep_v(keep, keep + n_keep);
    *out = new cohloss_matrix{partial_trace(m->m, label, keep_v)};
  });
}

int cohloss_operator_norm(const cohloss_matrix* m, double* out) {
  return guarded([&] {
    require(m && out, "null argument");
    *out = operator_norm(m->m);
  });
}

int cohloss_hermitian_eigensystem(const cohloss_matrix* m, double* eigenvalues,
                                  cohloss_matrix** eigenvectors) {
  return guarded([&] {
    require(m != nullptr, "null matrix");
    const Eigensystem eig = hermitian_eigensystem(m->m);
    if (eigenvalues)
      for (Eigen::Index i = 0; i < eig.values.size(); ++i) eigenvalues[i] = eig.values(i);
    if (eigenvectors) *eigenvectors = new cohloss_matrix{eig.vectors};
  });
}

int cohloss_svd(const cohloss_matrix* m, cohloss_matrix** u, double* singular_values,
                cohloss_matrix** w) {
  return guarded([&] {
    require(m != nullptr, "null matrix");
    const SvdResult dec = svd(m->m);
    if (u) *u = new cohloss_matrix{dec.u};
    if (singular_values)
      for (Eigen::Index i = 0; i < dec.singular_values.size(); ++i)
        singular_values[i] = dec.singular_values(i);
    if (w) *w = new cohloss_matrix{dec.w};
  });
}

int cohloss_validate_density_operator(const cohloss_matrix* m, double tol, int* ok,
                                      char** diagnostics) {
  return guarded([&] {
    require(m && ok, "null argument");
    const DensityCheck check = validate_density_operator(m->m, tol > 0 ? tol : 1e-9);
    *ok = check.ok ? 1 : 0;
    if (diagnostics) *diagnostics = dup_string(check.ok ? "" : check.failure());
  });
}

/* ---- channels ---------------------------------------------------------- */

cohloss_channel* cohloss_channel_create(int dim, const cohloss_matrix* const* kraus, int n_kraus) {
  return guarded_ptr([&]() -> cohloss_channel* {
    require(kraus != nullptr && n_kraus > 0, "need at least one Kraus operator");
    std::vector<Mat> ops;
    ops.reserve(n_kraus);
    for (int i = 0; i < n_kraus; ++i) {
      require(kraus[i] != nullptr, "null Kraus operator");
      ops.push_back(kraus[i]->m);
    }
    return new cohloss_channel{KrausChannel::create(dim, std::move(ops))};
  });
}

cohloss_channel* cohloss_channel_from_json(const char* json_text) {
  return guarded_ptr([&]() -> cohloss_channel* {
    require(json_text != nullptr, "null JSON text");
    return new cohloss_channel{channel_from_json(parse_json(json_text))};
  });
}

cohloss_channel* cohloss_channel_from_json_file(const char* path) {
  return guarded_ptr([&]() -> cohloss_channel* {
    require(path != nullptr, "null path");
    return new cohloss_channel{channel_from_json(load_json_file(path))};
  });
}

char* cohloss_channel_to_json(const cohloss_channel* ch) {
  return guarded_ptr([&]() -> char* {
    require(ch != nullptr, "null channel");
    return dup_string(channel_to_json(ch->ch).dump());
  });
}

int cohloss_channel_dim(const cohloss_channel* ch) { return ch ? static_cast<int>(ch->ch.dim) : 0; }

int cohloss_channel_kraus_count(const cohloss_channel* ch) {
  return ch ? static_cast<int>(ch->ch.kraus.size()) : 0;
}

cohloss_matrix* cohloss_channel_kraus(const cohloss_channel* ch, int index) {
  return guarded_ptr([&]() -> cohloss_matrix* {
    require(ch != nullptr, "null channel");
    require(index >= 0 && index < static_cast<int>(ch->ch.kraus.size()), "index out of range");
    return new cohloss_matrix{ch->ch.kraus[static_cast<size_t>(index)]};
  });
}

void cohloss_channel_free(cohloss_channel* ch) { delete ch; }

int cohloss_channel_apply(const cohloss_channel* ch, const cohloss_matrix* x, cohloss_matrix** out) {
  return guarded([&] {
    require(ch && x && out, "null argument");
    *out = new cohloss_matrix{apply_channel(ch->ch, x->m)};
  });
}

int cohloss_channel_choi(const cohloss_channel* ch, cohloss_matrix** out) {
  return guarded([&] {
    require(ch && out, "null argument");
    *out = new cohloss_matrix{choi_matrix(ch->ch)};
  });
}

int cohloss_channel_is_vacuum_preserving(const cohloss_channel* ch, double tol, int* preserving,
                                         double* deviation) {
  return guarded([&] {
    require(ch && preserving, "null argument");
    const double dev = vacuum_preservation_deviation(ch->ch);
    *preserving = dev <= (tol > 0 ? tol : 1e-9) ? 1 : 0;
    if (deviation) *deviation = dev;
  });
}

cohloss_channel* cohloss_channel_from_loss_params(const cohloss_matrix* sigma, double gamma_re,
                                                  double gamma_im) {
  return guarded_ptr([&]() -> cohloss_channel* {
    require(sigma != nullptr, "null sigma");
    LossChannelParams p;
    p.sigma = sigma->m;
    p.gamma = Cplx(gamma_re, gamma_im);
    return new cohloss_channel{from_loss_params(p)};
  });
}

int cohloss_channel_loss_params(const cohloss_channel* ch, cohloss_matrix** sigma,
                                double* gamma_re, double* gamma_im) {
  return guarded([&] {
    require(ch != nullptr, "null channel");
    const LossChannelParams p = loss_params_from_channel(ch->ch);
    if (sigma) *sigma = new cohloss_matrix{p.sigma};
    if (gamma_re) *gamma_re = p.gamma.real();
    if (gamma_im) *gamma_im = p.gamma.imag();
  });
}

cohloss_channel* cohloss_channel_random_vacuum_preserving(int d, int anc, uint64_t seed) {
  return guarded_ptr([&]() -> cohloss_channel* {
    return new cohloss_channel{random_vacuum_preserving_channel(d, anc, seed)};
  });
}

cohloss_channel* cohloss_channel_convex_mixture(const cohloss_channel* const* channels,
                                                const double* weights, int count) {
  return guarded_ptr([&]() -> cohloss_channel* {
    require(channels && weights && count > 0, "null argument");
    std::vector<KrausChannel> chans;
    std::vector<double> w;
    for (int i = 0; i < count; ++i) {
      require(channels[i] != nullptr, "null channel in mixture");
      chans.push_back(channels[i]->ch);
      w.push_back(weights[i]);
    }
    return new cohloss_channel{convex_mixture(chans, w)};
  });
}

cohloss_channel* cohloss_channel_from_contraction(const cohloss_matrix* s_op) {
  return guarded_ptr([&]() -> cohloss_channel* {
    require(s_op != nullptr, "null operator");
    return new cohloss_channel{from_contraction(s_op->m)};
  });
}

/* ---- coherence functionals and interferometry -------------------------- */

int cohloss_lpc(const cohloss_channel* ch, const double* psi, int dim, double vac_tol,
                cohloss_lpc_report* out) {
  return guarded([&] {
    require(ch && psi && out, "null argument");
    const Vec v = vector_from_interleaved(psi, dim);
    *out = from_core(lpc(ch->ch, v, vac_tol > 0 ? vac_tol : 1e-9));
  });
}

char* cohloss_lpc_report_to_json(const cohloss_lpc_report* report) {
  return guarded_ptr([&]() -> char* {
    require(report != nullptr, "null report");
    return dup_string(lpc_report_to_json(to_core(*report)).dump());
  });
}

int cohloss_check_exclusion_inequality(const cohloss_lpc_report* report, int* holds) {
  return guarded([&] {
    require(report && holds, "null argument");
    *holds = check_exclusion_inequality(to_core(*report)) ? 1 : 0;
  });
}

int cohloss_mz_probability(const cohloss_channel* ch, const double* psi, int dim,
                           const cohloss_matrix* u_internal, double chi, double* p_out) {
  return guarded([&] {
    require(ch && psi && u_internal && p_out, "null argument");
    *p_out = simulate_mach_zehnder(ch->ch, vector_from_interleaved(psi, dim), u_internal->m, chi);
  });
}

int cohloss_mz_scan(const cohloss_channel* ch, const double* psi, int dim, int chi_points,
                    int scan_unitaries, uint64_t seed, char** fringe_csv, char** summary_json) {
  return guarded([&] {
    require(ch && psi, "null argument");
    require(chi_points >= 8, "chi_points must be >= 8");
    const Vec v = vector_from_interleaved(psi, dim);

    // Validates the channel (vacuum preservation, psi normalization) before
    // any simulation runs.
    const LpcReport report = lpc(ch->ch, v);

    const VisibilityScan scan =
        max_visibility_scan(ch->ch, v, scan_unitaries, chi_points, seed, scan_unitaries > 0);
    const Mat u = scan_unitaries > 0 ? scan.unitary : Mat::Identity(ch->ch.dim - 1, ch->ch.dim - 1);

    // The offset is pinned by the loss functional; a disagreement means the
    // fringe is not the expected pure first harmonic.
    const double expected_offset = 0.5 - report.loss / 4.0;
    if (std::abs(scan.offset - expected_offset) > 1e-9)
      fail(Errc::physics, "mz scan: fringe offset disagrees with 1/2 - L/4");

    if (fringe_csv) {
      std::string csv = "chi,p_A\n";
      char buf[96];
      for (int k = 0; k < chi_points; ++k) {
        const double chi = 2.0 * 3.141592653589793 * k / chi_points;
        const double p = simulate_mach_zehnder(ch->ch, v, u, chi);
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", chi, p);
        csv += buf;
      }
      *fringe_csv = dup_string(csv);
    }
    if (summary_json) {
      Json summary{{"visibility", scan.visibility},
                   {"offset", scan.offset},
                   {"best_phase", scan.best_chi}};
      *summary_json = dup_string(summary.dump());
    }
  });
}

int cohloss_verify_inequality(int count, int d, int anc, uint64_t seed, char** summary_json) {
  return guarded([&] {
    require(count >= 1, "count must be >= 1");
    require(d >= 1 && anc >= 1, "d and anc must be >= 1");
    constexpr int kPsiPerChannel = 20;

    double min_slack = 1.0;
    bool any_zero_loss = false;
    double max_creation_at_zero_loss = 0.0;
    bool pass = true;

    for (int n = 0; n < count; ++n) {
      const KrausChannel ch = random_vacuum_preserving_channel(d, anc, seed + n);
      std::mt19937_64 psi_rng(seed * 1000003ULL + n);
      for (int k = 0; k < kPsiPerChannel; ++k) {
        const Vec psi = random_state_orthogonal_to_vacuum(ch.dim, psi_rng);
        const LpcReport report = lpc(ch, psi);
        min_slack = std::min(min_slack, report.inequality_slack);
        if (report.loss <= 1e-9) {
          any_zero_loss = true;
          max_creation_at_zero_loss = std::max(max_creation_at_zero_loss, report.creation);
        }
        if (!check_exclusion_inequality(report)) pass = false;
      }
    }

    if (summary_json) {
      Json summary{{"count", count},
                   {"dim", d},
                   {"anc", anc},
                   {"seed", seed},
                   {"psi_per_channel", kPsiPerChannel},
                   {"min_slack", min_slack},
                   {"max_creation_at_zero_loss",
                    any_zero_loss ? Json(max_creation_at_zero_loss) : Json()},
                   {"pass", pass}};
      *summary_json = dup_string(summary.dump());
    }
    if (!pass)
      fail(Errc::physics, "exclusion inequality violated; this indicates an implementation bug");
  });
}

/* ---- linear optics ----------------------------------------------------- */

cohloss_matrix* cohloss_beam_splitter_smatrix(double theta) {
  return guarded_ptr([&]() -> cohloss_matrix* { return new cohloss_matrix{beam_splitter(theta).s}; });
}

int cohloss_linopt_vacuum_test(const char* mode_unitary_json, const char* ancilla_json,
                               char** offending_json) {
  return guarded([&] {
    const auto [mu, eta] = linopt_inputs(mode_unitary_json, ancilla_json);
    const VacuumTestResult result = vacuum_preservation_test(mu, eta);
    if (offending_json)
      *offending_json = dup_string(Json{{"offending_modes", result.offending_modes}}.dump());
    if (!result.passed) {
      std::string msg = "vacuum preservation test failed for rotated ancilla mode(s)";
      for (int m : result.offending_modes) msg += " " + std::to_string(m);
      fail(Errc::vacuum_test, msg);
    }
  });
}

int cohloss_linopt_induced_channel(const char* mode_unitary_json, const char* ancilla_json,
                                   cohloss_channel** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    const auto [mu, eta] = linopt_inputs(mode_unitary_json, ancilla_json);
    *out = new cohloss_channel{induced_channel(mu, eta)};
  });
}

/* ---- dynamics and spectra ---------------------------------------------- */

int cohloss_extract_field_channel(const char* model_json, double t, double dt,
                                  char** loss_params_json) {
  return guarded([&] {
    require(model_json != nullptr, "null model JSON");
    const Json j = parse_json(model_json);
    const ModelConfig model = model_config_from_json(j);
    double t_eff = t, dt_eff = dt;
    if (j.contains("integration") && j["integration"].is_object()) {
      const Json& integ = j["integration"];
      if (t_eff < 0 && integ.contains("t")) t_eff = integ["t"].get<double>();
      if (dt_eff <= 0 && integ.contains("dt")) dt_eff = integ["dt"].get<double>();
    }
    if (dt_eff <= 0) dt_eff = 0.01;
    const FieldChannelExtraction extraction = extract_field_channel(model, t_eff, dt_eff);
    if (loss_params_json)
      *loss_params_json = dup_string(loss_params_to_json(extraction.params).dump());
  });
}

int cohloss_spectrum_run(const char* sweep_config_json, const char* csv_path, char** csv_out,
                         char** summary_json) {
  return guarded([&] {
    require(sweep_config_json != nullptr, "null sweep config");
    const SweepConfig cfg = sweep_config_from_json(parse_json(sweep_config_json));

    const auto start = std::chrono::steady_clock::now();
    const std::vector<SpectrumRecord> records = run_sweep(cfg);
    const double wall_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::string csv = csv_string(records);
    if (csv_path) {
      std::ofstream file(csv_path, std::ios::binary);
      if (!file) fail(Errc::io, std::string("cannot open ") + csv_path);
      file << csv;
      if (!file) fail(Errc::io, std::string("write failed for ") + csv_path);
    }
    if (csv_out) *csv_out = dup_string(csv);
    if (summary_json) {
      const SweepSummary s = summarize(records);
      Json summary{{"points", s.points},
                   {"min_p", s.min_p},
                   {"max_excess_loss", s.max_excess_loss},
                   {"max_sigma01", s.max_sigma01},
                   {"wall_s", wall_s}};
      *summary_json = dup_string(summary.dump());
    }
  });
}

}  // extern "C"
