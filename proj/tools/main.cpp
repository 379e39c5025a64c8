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

// Command-line frontend. Deliberately a pure consumer of the C API in
// cohloss.h; all numerics live behind the shared library.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cohloss.h"

namespace {

using Json = nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitIo = 4;

struct GlobalOpts {
  std::uint64_t seed = 0;
  double tol = 0.0;  // 0 selects library defaults
  std::string output;
  bool quiet = false;
};

void diag(const GlobalOpts& g, const std::string& msg) {
  if (!g.quiet) std::cerr << "cohloss: " << msg << "\n";
}

int fail_with(const GlobalOpts& g, int code, const std::string& msg) {
  diag(g, msg);
  return code;
}

int last_error_exit(const GlobalOpts& g, const std::string& context) {
  const int code = cohloss_last_error_code();
  diag(g, context + ": " + cohloss_last_error());
  return code == COHLOSS_OK ? 1 : code;
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  cohloss_string_free(s);
  return out;
}

// Emit the primary JSON document: stdout, or --output when given.
int emit_json(const GlobalOpts& g, const std::string& doc) {
  if (g.output.empty()) {
    std::cout << doc << "\n";
    return 0;
  }
  std::ofstream file(g.output, std::ios::binary);
  if (!file) return fail_with(g, kExitIo, "cannot open " + g.output);
  file << doc << "\n";
  if (!file) return fail_with(g, kExitIo, "write failed for " + g.output);
  return 0;
}

int write_file(const GlobalOpts& g, const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) return fail_with(g, kExitIo, "cannot open " + path);
  file << content;
  if (!file) return fail_with(g, kExitIo, "write failed for " + path);
  return 0;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) return std::nullopt;
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

// Complex literal in "re+imj" form: "1", "-0.5", "2j", "1+2j", "1e-3-2.5e-2j".
bool parse_complex_literal(const std::string& text, double& re, double& im) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) return false;

  const bool has_j = s.back() == 'j' || s.back() == 'J';
  if (has_j) s.pop_back();
  if (s.empty()) {  // bare "j"
    re = 0.0;
    im = 1.0;
    return true;
  }

  // Split at the last +/- that is not a leading sign or an exponent sign.
  size_t split = std::string::npos;
  for (size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }

  auto to_double = [](const std::string& t, double& out) {
    if (t.empty() || t == "+" || t == "-") {  // implicit 1 in "+j" / "-j"
      out = (t == "-") ? -1.0 : 1.0;
      return true;
    }
    try {
      size_t used = 0;
      out = std::stod(t, &used);
      return used == t.size();
    } catch (...) {
      return false;
    }
  };

  if (!has_j) {
    im = 0.0;
    return split == std::string::npos && to_double(s, re);
  }
  if (split == std::string::npos) {  // pure imaginary
    re = 0.0;
    return to_double(s, im);
  }
  return to_double(s.substr(0, split), re) && to_double(s.substr(split), im);
}

// Comma-separated complex literals -> interleaved re,im list.
bool parse_vector_literal(const std::string& text, std::vector<double>& interleaved) {
  interleaved.clear();
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    double re = 0, im = 0;
    if (!parse_complex_literal(item, re, im)) return false;
    interleaved.push_back(re);
    interleaved.push_back(im);
  }
  return !interleaved.empty();
}

// psi from --psi literal or --psi-file (JSON array of [re, im] pairs).
int load_psi(const GlobalOpts& g, const std::string& literal, const std::string& file,
             std::vector<double>& interleaved) {
  if (!literal.empty() && !file.empty())
    return fail_with(g, kExitUsage, "--psi and --psi-file are mutually exclusive");
  if (!literal.empty()) {
    if (!parse_vector_literal(literal, interleaved))
      return fail_with(g, kExitUsage, "cannot parse --psi literal '" + literal + "'");
    return 0;
  }
  if (file.empty()) return fail_with(g, kExitUsage, "one of --psi or --psi-file is required");
  const auto text = read_file(file);
  if (!text) return fail_with(g, kExitIo, "cannot open " + file);
  Json j = Json::parse(*text, nullptr, false);
  if (j.is_discarded() || !j.is_array())
    return fail_with(g, 3, "--psi-file must contain a JSON array of [re, im] pairs");
  interleaved.clear();
  for (const Json& z : j) {
    if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
      return fail_with(g, 3, "--psi-file must contain [re, im] pairs");
    interleaved.push_back(z[0].get<double>());
    interleaved.push_back(z[1].get<double>());
  }
  if (interleaved.empty()) return fail_with(g, 3, "--psi-file vector is empty");
  return 0;
}

using ChannelPtr = std::unique_ptr<cohloss_channel, decltype(&cohloss_channel_free)>;

ChannelPtr load_channel(const std::string& path) {
  return {cohloss_channel_from_json_file(path.c_str()), &cohloss_channel_free};
}

// ---- lpc ----------------------------------------------------------------

int run_lpc(const GlobalOpts& g, const std::string& channel_file, const std::string& psi_literal,
            const std::string& psi_file) {
  std::vector<double> psi;
  if (int rc = load_psi(g, psi_literal, psi_file, psi)) return rc;

  ChannelPtr ch = load_channel(channel_file);
  if (!ch) return last_error_exit(g, channel_file);

  cohloss_lpc_report report{};
  const int rc = cohloss_lpc(ch.get(), psi.data(), static_cast<int>(psi.size() / 2), g.tol, &report);
  if (rc == COHLOSS_ERR_VALIDATION) {
    // Keep the machine-readable document contract even on rejection.
    double deviation = 0.0;
    int preserving = 0;
    cohloss_channel_is_vacuum_preserving(ch.get(), g.tol, &preserving, &deviation);
    Json doc{{"error", cohloss_last_error()}, {"vacuum_deviation", deviation}};
    diag(g, cohloss_last_error());
    if (int erc = emit_json(g, doc.dump())) return erc;
    return rc;
  }
  if (rc != COHLOSS_OK) return last_error_exit(g, "lpc");

  char* json = cohloss_lpc_report_to_json(&report);
  if (!json) return last_error_exit(g, "lpc");
  return emit_json(g, take_string(json));
}

// ---- verify-inequality --------------------------------------------------

int run_verify(const GlobalOpts& g, int count, int dim, int anc) {
  char* summary = nullptr;
  const int rc = cohloss_verify_inequality(count, dim, anc, g.seed, &summary);
  if (rc != COHLOSS_OK && summary == nullptr) return last_error_exit(g, "verify-inequality");
  const std::string doc = take_string(summary);
  if (int erc = emit_json(g, doc)) return erc;
  if (rc != COHLOSS_OK) diag(g, cohloss_last_error());
  return rc;
}

// ---- linopt ---------------------------------------------------------------

int run_linopt(const GlobalOpts& g, const std::string& smatrix_file, const std::string& ancilla,
               const std::string& emit_channel) {
  const auto smatrix = read_file(smatrix_file);
  if (!smatrix) return fail_with(g, kExitIo, "cannot open " + smatrix_file);

  std::string ancilla_text;
  const char* ancilla_json = nullptr;
  if (!ancilla.empty() && ancilla != "vacuum") {
    const auto text = read_file(ancilla);
    if (!text) return fail_with(g, kExitIo, "cannot open " + ancilla);
    ancilla_text = *text;
    ancilla_json = ancilla_text.c_str();
  }

  char* offending = nullptr;
  int rc = cohloss_linopt_vacuum_test(smatrix->c_str(), ancilla_json, &offending);
  const std::string offending_doc = take_string(offending);
  if (rc == COHLOSS_ERR_VACUUM_TEST) {
    diag(g, cohloss_last_error());
    if (int erc = emit_json(g, offending_doc)) return erc;
    return rc;
  }
  if (rc != COHLOSS_OK) return last_error_exit(g, "linopt");

  cohloss_channel* raw = nullptr;
  rc = cohloss_linopt_induced_channel(smatrix->c_str(), ancilla_json, &raw);
  if (rc != COHLOSS_OK) return last_error_exit(g, "linopt");
  ChannelPtr ch(raw, &cohloss_channel_free);

  const int dim = cohloss_channel_dim(ch.get());
  std::vector<double> psi(static_cast<size_t>(2 * dim), 0.0);
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim - 1));
  for (int i = 1; i < dim; ++i) psi[2 * static_cast<size_t>(i)] = amp;

  cohloss_lpc_report report{};
  if (cohloss_lpc(ch.get(), psi.data(), dim, g.tol, &report) != COHLOSS_OK)
    return last_error_exit(g, "linopt lpc");

  const std::string channel_doc = take_string(cohloss_channel_to_json(ch.get()));
  const std::string lpc_doc = take_string(cohloss_lpc_report_to_json(&report));
  if (channel_doc.empty() || lpc_doc.empty()) return last_error_exit(g, "linopt");

  if (!emit_channel.empty())
    if (int erc = write_file(g, emit_channel, channel_doc + "\n")) return erc;

  Json doc{{"channel", Json::parse(channel_doc)}, {"lpc", Json::parse(lpc_doc)}};
  return emit_json(g, doc.dump());
}

// ---- mz -------------------------------------------------------------------

int run_mz(const GlobalOpts& g, const std::string& channel_file, const std::string& psi_literal,
           const std::string& psi_file, int chi_points, int scan_unitaries) {
  std::vector<double> psi;
  if (int rc = load_psi(g, psi_literal, psi_file, psi)) return rc;

  ChannelPtr ch = load_channel(channel_file);
  if (!ch) return last_error_exit(g, channel_file);

  char* fringe = nullptr;
  char* summary = nullptr;
  const int rc = cohloss_mz_scan(ch.get(), psi.data(), static_cast<int>(psi.size() / 2),
                                 chi_points, scan_unitaries, g.seed,
                                 g.output.empty() ? nullptr : &fringe, &summary);
  if (rc != COHLOSS_OK) return last_error_exit(g, "mz");

  if (!g.output.empty())
    if (int erc = write_file(g, g.output, take_string(fringe))) return erc;

  std::cout << take_string(summary) << "\n";
  return 0;
}

// ---- spectrum ---------------------------------------------------------------

int run_spectrum(const GlobalOpts& g, const std::string& kind, const std::string& config_file,
                 const std::string& dissipator, bool envelope) {
  Json cfg;
  if (!config_file.empty()) {
    const auto text = read_file(config_file);
    if (!text) return fail_with(g, kExitIo, "cannot open " + config_file);
    cfg = Json::parse(*text, nullptr, false);
    if (cfg.is_discarded()) return fail_with(g, 3, "config is not valid JSON");
  } else if (kind == "jc") {
    const double g_coupling = 0.1;
    cfg = Json{{"model", Json{{"type", "jc"},
                              {"omega", 1.0},
                              {"omega_a", 1.0},
                              {"g", g_coupling},
                              {"q", 0.01},
                              {"dissipator", "none"}}},
               {"axis", "delta"},
               {"grid", Json{{"start", -1.0}, {"stop", 1.0}, {"points", 101}}},
               {"snapshot_time", M_PI / (2.0 * g_coupling)},
               {"dt", 0.01}};
  } else {
    cfg = Json{{"model", Json{{"type", "three_level"},
                              {"omega", 1.0},
                              {"omega0", 5.0},
                              {"omega1", 7.0},
                              {"omega2", 8.0},
                              {"g01", 0.05},
                              {"g02", 0.07},
                              {"g12", 0.08}}},
               {"axis", "omega"},
               {"grid", Json{{"start", 0.5}, {"stop", 3.5}, {"points", 301}}},
               {"snapshot_time", 25.0},
               {"dt", 0.01}};
  }

  // The positional model kind and flags override the config document.
  if (cfg.contains("model") && cfg["model"].is_object()) {
    const std::string type = kind == "jc" ? "jc" : "three_level";
    if (cfg["model"].contains("type") && cfg["model"]["type"] != type)
      return fail_with(g, 3, "config model type does not match the '" + kind + "' subcommand");
    cfg["model"]["type"] = type;
    if (!dissipator.empty()) cfg["model"]["dissipator"] = dissipator;
  }
  if (envelope && !cfg.contains("envelope"))
    cfg["envelope"] = Json{{"t_max", 500.0}, {"t_step", 0.5}};

  char* summary = nullptr;
  const int rc = cohloss_spectrum_run(cfg.dump().c_str(),
                                      g.output.empty() ? nullptr : g.output.c_str(), nullptr,
                                      &summary);
  if (rc != COHLOSS_OK) return last_error_exit(g, "spectrum");
  std::cout << take_string(summary) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cohloss: loss, coherence preservation, and superposition creation of "
               "vacuum-preserving quantum channels"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags are accepted after the subcommand too
  app.set_version_flag("--version", []() { return std::string(cohloss_version()); });

  GlobalOpts g;
  app.add_option("--seed", g.seed, "Seed for all randomized operations");
  app.add_option("--tol", g.tol, "Override the vacuum-preservation tolerance");
  app.add_option("-o,--output", g.output, "Output file (JSON document, or CSV for mz/spectrum)");
  app.add_flag("-q,--quiet", g.quiet, "Suppress diagnostics on stderr");

  // lpc
  auto* lpc_cmd = app.add_subcommand("lpc", "Loss / preservation / creation report for a channel");
  std::string channel_file, psi_literal, psi_file;
  lpc_cmd->add_option("--channel", channel_file, "Channel JSON file")->required();
  lpc_cmd->add_option("--psi", psi_literal, "Input state as comma-separated re+imj literals");
  lpc_cmd->add_option("--psi-file", psi_file, "Input state as a JSON array of [re, im] pairs");

  // verify-inequality
  auto* verify_cmd =
      app.add_subcommand("verify-inequality", "Check the exclusion inequality on random channels");
  int count = 1000, dim_d = 1, anc = 2;
  verify_cmd->add_option("--count", count, "Number of random channels")->required();
  verify_cmd->add_option("--dim", dim_d, "Single-particle dimension d (system dim is 1+d)");
  verify_cmd->add_option("--anc", anc, "Ancilla dimension");

  // linopt
  auto* linopt_cmd = app.add_subcommand("linopt", "Induce a channel from a linear-optics mode unitary");
  std::string smatrix_file, ancilla = "vacuum", emit_channel;
  linopt_cmd->add_option("--smatrix", smatrix_file, "Mode unitary JSON file {K, J, S}")->required();
  linopt_cmd->add_option("--ancilla", ancilla, "Ancilla state JSON file, or 'vacuum'");
  linopt_cmd->add_option("--emit-channel", emit_channel, "Write the induced channel JSON here");

  // mz
  auto* mz_cmd = app.add_subcommand("mz", "Mach-Zehnder fringe scan and visibility");
  std::string mz_channel, mz_psi, mz_psi_file;
  int chi_points = 64, scan_unitaries = 0;
  mz_cmd->add_option("--channel", mz_channel, "Channel JSON file")->required();
  mz_cmd->add_option("--psi", mz_psi, "Input state literal");
  mz_cmd->add_option("--psi-file", mz_psi_file, "Input state JSON file");
  mz_cmd->add_option("--chi-points", chi_points, "Fringe phase grid size");
  mz_cmd->add_option("--scan-unitaries", scan_unitaries, "Random internal unitaries to scan");

  // spectrum
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Run a coherence-loss / creation spectrum sweep");
  std::string kind, config_file, dissipator;
  bool envelope = false;
  spectrum_cmd->add_option("kind", kind, "Model: jc or three-level")
      ->required()
      ->check(CLI::IsMember({"jc", "three-level"}));
  spectrum_cmd->add_option("--config", config_file, "Sweep config JSON file");
  spectrum_cmd->add_option("--dissipator", dissipator, "none|relaxation|dephasing")
      ->check(CLI::IsMember({"none", "relaxation", "dephasing"}));
  spectrum_cmd->add_flag("--envelope", envelope, "Record long-time envelope extrema");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints usage to stderr
    return kExitUsage;
  }

  try {
    if (lpc_cmd->parsed()) return run_lpc(g, channel_file, psi_literal, psi_file);
    if (verify_cmd->parsed()) {
      if (count < 1) return fail_with(g, kExitUsage, "--count must be >= 1");
      return run_verify(g, count, dim_d, anc);
    }
    if (linopt_cmd->parsed()) return run_linopt(g, smatrix_file, ancilla, emit_channel);
    if (mz_cmd->parsed()) return run_mz(g, mz_channel, mz_psi, mz_psi_file, chi_points, scan_unitaries);
    if (spectrum_cmd->parsed()) return run_spectrum(g, kind, config_file, dissipator, envelope);
  } catch (const std::exception& e) {
    return fail_with(g, 1, e.what());
  }
  return kExitUsage;
}
