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

#include "doctest.h"

#include <numbers>

#include "cohloss/dynamics.hpp"
#include "test_util.hpp"

using namespace cohloss;
using namespace cohloss::test;

namespace {

constexpr double kPi = std::numbers::pi;

Mat jc_initial_photon_ground() {
  Mat rho = Mat::Zero(4, 4);
  rho(2, 2) = 1.0;  // |1g>
  return rho;
}

}  // namespace

TEST_CASE("jc hamiltonian structure") {
  JcConfig cfg;
  cfg.omega = 1.3;
  cfg.omega_a = 0.9;
  cfg.g = 0.0;
  const Mat h0 = jc_hamiltonian(cfg);
  // g = 0: diagonal over {|0g>,|0e>,|1g>,|1e>}.
  Mat expected = Mat::Zero(4, 4);
  expected(0, 0) = -(cfg.omega + cfg.omega_a) / 2.0;
  expected(1, 1) = (-cfg.omega + cfg.omega_a) / 2.0;
  expected(2, 2) = (cfg.omega - cfg.omega_a) / 2.0;
  expected(3, 3) = (cfg.omega + cfg.omega_a) / 2.0;
  CHECK(max_abs_diff(h0, expected) < 1e-15);

  cfg.g = 0.07;
  const Mat h = jc_hamiltonian(cfg);
  CHECK(max_abs_diff(h, h.adjoint().eval()) == 0.0);
  CHECK(h(1, 2).real() == doctest::Approx(cfg.g));  // |0e> <-> |1g|
  CHECK(std::abs(h(0, 3)) == 0.0);                  // no counter-rotating term
}

TEST_CASE("three-level hamiltonian structure") {
  ThreeLevelConfig cfg;  // defaults are the reference parameters
  SUBCASE("no couplings: direct sum of level energies") {
    ThreeLevelConfig bare = cfg;
    bare.g01 = bare.g02 = bare.g12 = 0.0;
    const Mat h = three_level_hamiltonian(bare);
    const double w[] = {bare.omega0, bare.omega1, bare.omega2};
    for (int p = 0; p < 2; ++p)
      for (int k = 0; k < 3; ++k)
        CHECK(h(p * 3 + k, p * 3 + k).real() ==
              doctest::Approx((p == 0 ? -0.5 : 0.5) * bare.omega + w[k]));
    CHECK((h - Mat(h.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("coupling pattern") {
    const Mat h = three_level_hamiltonian(cfg);
    CHECK(max_abs_diff(h, h.adjoint().eval()) == 0.0);
    CHECK(h(0 * 3 + 1, 1 * 3 + 0).real() == doctest::Approx(0.05));  // <0,1|H|1,0> = g01
    CHECK(h(0 * 3 + 2, 1 * 3 + 0).real() == doctest::Approx(0.07));  // <0,2|H|1,0> = g02
    CHECK(h(0 * 3 + 2, 1 * 3 + 1).real() == doctest::Approx(0.08));  // <0,2|H|1,1> = g12
    CHECK(std::abs(h(0 * 3 + 0, 1 * 3 + 1)) == 0.0);                 // no k < k' term
  }
}

TEST_CASE("lindblad right-hand side") {
  JcConfig cfg;
  cfg.g = 0.1;
  const Mat h = jc_hamiltonian(cfg);
  std::mt19937_64 rng(131);
  Mat g = random_gaussian(4, 4, rng);
  const Mat rho = ((g + g.adjoint()) / 4.0).eval();

  SUBCASE("q = 0 reduces to the commutator and is traceless") {
    const Mat out = lindblad_rhs(h, 0.0, DissipatorKind::none, rho);
    const Cplx minus_i(0.0, -1.0);
    CHECK(max_abs_diff(out, (minus_i * (h * rho - rho * h)).eval()) < 1e-14);
    CHECK(std::abs(out.trace()) < 1e-12);
  }

  SUBCASE("both dissipators are trace-free and Hermiticity-preserving") {
    for (auto kind : {DissipatorKind::relaxation, DissipatorKind::dephasing}) {
      const Mat out = lindblad_rhs(h, 0.3, kind, rho);
      CHECK(std::abs(out.trace()) < 1e-12);
      CHECK(max_abs_diff(out, out.adjoint().eval()) < 1e-12);
    }
  }

  SUBCASE("relaxation empties the excited state at rate q") {
    // H = 0, rho = (I/2) (x) |e><e|: excited population decays as e^{-qt}.
    const double q = 0.25;
    Mat excited = Mat::Zero(2, 2);
    excited(1, 1) = 1.0;
    const Mat rho0 = tensor(Mat::Identity(2, 2) / 2.0, excited);
    const EvolutionResult evo =
        evolve(Mat::Zero(4, 4), q, DissipatorKind::relaxation, rho0, 2.0, 0.001);
    const double p_e = evo.states.back()(1, 1).real() + evo.states.back()(3, 3).real();
    CHECK(std::abs(p_e - std::exp(-q * 2.0)) < 1e-8);
  }

  SUBCASE("dephasing damps atomic coherence at rate q") {
    // [sz,[sz,|g><e|]] = 4 |g><e|, so the coherence decays as e^{-qt}.
    const double q = 0.4;
    Mat coh = Mat::Zero(2, 2);
    coh(0, 1) = coh(1, 0) = 0.5;
    const Mat rho0 = tensor(Mat::Identity(2, 2) / 2.0, coh + Mat::Identity(2, 2) * 0.5);
    const EvolutionResult evo =
        evolve(Mat::Zero(4, 4), q, DissipatorKind::dephasing, rho0, 1.5, 0.001);
    const double c = evo.states.back()(0, 1).real() * 2.0;  // atom coherence within photon-0 block
    CHECK(std::abs(c - 0.5 * std::exp(-q * 1.5)) < 1e-8);
  }

  SUBCASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(lindblad_rhs(h, 0.0, DissipatorKind::none, Mat::Identity(3, 3)), Error);
    CHECK_THROWS_AS(lindblad_rhs(Mat::Zero(6, 6), 0.1, DissipatorKind::relaxation,
                                 Mat::Identity(6, 6) / 6.0),
                    Error);  // dissipators need a two-level atom
  }
}

TEST_CASE("evolve") {
  SUBCASE("free evolution is the identity") {
    const Mat rho0 = jc_initial_photon_ground();
    const EvolutionResult evo = evolve(Mat::Zero(4, 4), 0.0, DissipatorKind::none, rho0, 3.0, 0.01);
    CHECK(max_abs_diff(evo.states.back(), rho0) == 0.0);
    CHECK(evo.trace_drift < 1e-14);
  }

  SUBCASE("resonant Rabi transfer is complete at t = pi/(2g)") {
    JcConfig cfg;
    cfg.omega = 1.0;
    cfg.omega_a = 1.0;
    cfg.g = 0.1;
    const EvolutionResult evo = evolve(jc_hamiltonian(cfg), 0.0, DissipatorKind::none,
                                       jc_initial_photon_ground(), kPi / (2.0 * cfg.g), 0.01);
    const double p = evo.states.back()(2, 2).real() + evo.states.back()(3, 3).real();
    CHECK(p <= 1e-8);
  }

  SUBCASE("off-resonant Rabi oscillation matches the closed form") {
    JcConfig cfg;
    cfg.omega_a = 1.0;
    cfg.g = 0.1;
    for (double delta : {0.0, 0.15, 0.4, 1.0}) {
      cfg.omega = cfg.omega_a + delta;
      const Mat h = jc_hamiltonian(cfg);
      for (double t : {2.0, 10.0, 31.5}) {
        const EvolutionResult evo =
            evolve(h, 0.0, DissipatorKind::none, jc_initial_photon_ground(), t, 0.01);
        const double p = evo.states.back()(2, 2).real() + evo.states.back()(3, 3).real();
        CHECK(std::abs(p - rabi_survival(delta, cfg.g, t)) < 1e-6);
      }
    }
  }

  SUBCASE("integrator agrees with exact eigendecomposition evolution") {
    JcConfig cfg;
    cfg.omega = 1.2;
    cfg.omega_a = 1.0;
    cfg.g = 0.1;
    const Mat h = jc_hamiltonian(cfg);
    const Mat rho0 = jc_initial_photon_ground();
    const EvolutionResult evo = evolve(h, 0.0, DissipatorKind::none, rho0, 50.0, 0.01, 10.0);
    for (size_t k = 0; k < evo.times.size(); ++k)
      CHECK(max_abs_diff(evo.states[k], evolve_exact(h, rho0, evo.times[k])) < 1e-6);
  }

  SUBCASE("partial final step lands exactly") {
    JcConfig cfg;
    cfg.g = 0.1;
    const Mat h = jc_hamiltonian(cfg);
    const Mat rho0 = jc_initial_photon_ground();
    const EvolutionResult evo = evolve(h, 0.0, DissipatorKind::none, rho0, 0.123, 0.01);
    CHECK(evo.times.back() == doctest::Approx(0.123).epsilon(1e-14));
    CHECK(max_abs_diff(evo.states.back(), evolve_exact(h, rho0, 0.123)) < 1e-9);
  }

  SUBCASE("state validity along a long dissipative trajectory") {
    JcConfig cfg;
    cfg.omega = 1.05;
    cfg.omega_a = 1.0;
    cfg.g = 0.1;
    cfg.q = 0.01;
    const EvolutionResult evo = evolve(jc_hamiltonian(cfg), cfg.q, DissipatorKind::dephasing,
                                       jc_initial_photon_ground(), 500.0, 0.01, 50.0);
    CHECK(evo.trace_drift <= 1e-8);
    for (const Mat& rho : evo.states) {
      CHECK(max_abs_diff(rho, rho.adjoint().eval()) < 1e-10);
      CHECK(hermitian_eigensystem(rho).values.minCoeff() >= -1e-8);
    }
  }

  SUBCASE("an unstable step size aborts with a diagnostic") {
    JcConfig cfg;
    cfg.omega = 1.0;
    cfg.omega_a = 1.0;
    cfg.g = 0.1;
    // The |0g><1e| coherence sits on the largest Bohr frequency, where RK4 at
    // dt = 9 is far outside its stability region.
    Vec psi = Vec::Zero(4);
    psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
    const Mat rho0 = psi * psi.adjoint();
    CHECK_THROWS_WITH_AS(
        evolve(jc_hamiltonian(cfg), 0.01, DissipatorKind::relaxation, rho0, 4000.0, 9.0),
        doctest::Contains("step size"), Error);
  }
}

TEST_CASE("field channel extraction") {
  SUBCASE("resonant full transfer") {
    JcConfig cfg;
    cfg.omega = 1.0;
    cfg.omega_a = 1.0;
    cfg.g = 0.1;
    const FieldChannelExtraction ex = extract_field_channel(cfg, kPi / (2.0 * cfg.g), 0.01);
    CHECK(std::abs(ex.params.sigma00() - 1.0) < 1e-8);
    CHECK(std::abs(ex.params.gamma) < 1e-8);
    CHECK(std::abs(ex.params.sigma01()) < 1e-10);
    CHECK(ex.survival_probability < 1e-8);
  }

  SUBCASE("closed dynamics keeps |gamma|^2 = 1 - sigma00 and sigma01 = 0") {
    JcConfig cfg;
    cfg.omega_a = 1.0;
    cfg.g = 0.1;
    for (double delta : {-0.5, 0.0, 0.3}) {
      cfg.omega = cfg.omega_a + delta;
      for (double t : {7.0, 25.0}) {
        const FieldChannelExtraction ex = extract_field_channel(cfg, t, 0.01);
        CHECK(std::abs(std::norm(ex.params.gamma) - (1.0 - ex.params.sigma00())) < 1e-8);
        CHECK(std::abs(ex.params.sigma01()) <= 1e-10);
        CHECK(ex.vacuum_deviation < 1e-8);
      }
    }
  }

  SUBCASE("relaxation adds no excess coherence loss, dephasing does") {
    JcConfig cfg;
    cfg.omega_a = 1.0;
    cfg.g = 0.1;
    cfg.q = 0.01;
    const double t = kPi / (2.0 * cfg.g);

    cfg.dissipator = DissipatorKind::relaxation;
    double worst = 0.0;
    for (double delta : {-0.4, 0.0, 0.2}) {
      cfg.omega = cfg.omega_a + delta;
      worst = std::max(worst, extract_field_channel(cfg, t, 0.01).params.excess_coherence_loss());
    }
    CHECK(worst <= 1e-8);

    cfg.dissipator = DissipatorKind::dephasing;
    cfg.omega = cfg.omega_a;
    CHECK(extract_field_channel(cfg, t, 0.01).params.excess_coherence_loss() > 1e-3);
  }

  SUBCASE("three-level model creates vacuum-photon superposition near the excited transition") {
    ThreeLevelConfig cfg;
    cfg.omega = 1.0;  // omega2 - omega1
    const FieldChannelExtraction ex = extract_field_channel(cfg, 25.0, 0.01);
    CHECK(std::abs(ex.params.sigma01()) > 1e-6);
  }

  SUBCASE("tomography linearity reproduces direct simulation of arbitrary inputs") {
    JcConfig cfg;
    cfg.omega = 1.1;
    cfg.omega_a = 1.0;
    cfg.g = 0.1;
    cfg.q = 0.01;
    cfg.dissipator = DissipatorKind::dephasing;
    const double t = 5.0, dt = 0.01;
    const Mat h = jc_hamiltonian(cfg);

    // Reconstruct the channel action from the tomography inputs.
    const HilbertLabel label{{2, 2}, {}};
    Mat ground = matrix_unit(2, 0, 0);
    auto simulate = [&](const Mat& field_in) {
      const EvolutionResult evo =
          evolve(h, cfg.q, cfg.dissipator, tensor(field_in, ground), t, dt);
      return partial_trace(evo.states.back(), label, {0});
    };
    const Mat out00 = simulate(matrix_unit(2, 0, 0));
    const Mat out11 = simulate(matrix_unit(2, 1, 1));
    Mat plus = Mat::Constant(2, 2, 0.5);
    Mat plus_i(2, 2);
    plus_i << 0.5, Cplx(0, -0.5), Cplx(0, 0.5), 0.5;
    const Mat out01 =
        simulate(plus) + Cplx(0, 1) * simulate(plus_i) - (Cplx(1, 1) / 2.0) * (out00 + out11);
    const Mat out10 = out01.adjoint();

    std::mt19937_64 rng(137);
    Mat g = random_gaussian(2, 2, rng);
    Mat rho_f = (g * g.adjoint()).eval();
    rho_f /= rho_f.trace();
    const Mat direct = simulate(rho_f);
    const Mat reconstructed = rho_f(0, 0) * out00 + rho_f(1, 1) * out11 + rho_f(0, 1) * out01 +
                              rho_f(1, 0) * out10;
    CHECK(max_abs_diff(direct, reconstructed) < 1e-10);
  }

  SUBCASE("three-level dynamics stays in the four-dimensional invariant subspace") {
    ThreeLevelConfig cfg;
    cfg.omega = 2.0;
    Mat photon = matrix_unit(2, 1, 1);
    Mat ground = Mat::Zero(3, 3);
    ground(0, 0) = 1.0;
    const EvolutionResult evo = evolve(three_level_hamiltonian(cfg), 0.0, DissipatorKind::none,
                                       tensor(photon, ground), 25.0, 0.01);
    // Population outside {|1,0>,|0,1>,|0,2>,|1,1>} (flat 3,1,2,4) stays zero.
    const Mat& rho = evo.states.back();
    CHECK(std::abs(rho(0, 0)) < 1e-10);  // |0,0>
    CHECK(std::abs(rho(5, 5)) < 1e-10);  // |1,2>
  }
}
