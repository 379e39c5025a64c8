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

#include "cohloss/channel.hpp"
#include "test_util.hpp"

using namespace cohloss;
using namespace cohloss::test;

namespace {

constexpr double kPi = std::numbers::pi;

LossChannelParams beam_splitter_params(double theta) {
  LossChannelParams p;
  p.sigma = Mat::Zero(2, 2);
  p.sigma(0, 0) = std::sin(theta) * std::sin(theta);
  p.sigma(1, 1) = std::cos(theta) * std::cos(theta);
  p.gamma = std::cos(theta);
  return p;
}

LossChannelParams measure_and_prepare_params() {
  // sigma = |chi><chi| with |chi> = (|0> + |1>)/sqrt(2), gamma = 0.
  LossChannelParams p;
  p.sigma = Mat::Constant(2, 2, 0.5);
  p.gamma = 0.0;
  return p;
}

KrausChannel bit_flip_channel() {
  Mat x = Mat::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  return KrausChannel::create(2, {x});
}

// Closed interferometer formula, kept independent of simulate_mach_zehnder:
// p_A(chi) = 1/2 - L/4 + |F|/2 cos(arg F - chi), F = <psi|U† Phi(|psi><0|)|0>.
double mz_formula(const KrausChannel& ch, const Vec& psi, const Mat& u, double chi) {
  Mat coherence_in = Mat::Zero(ch.dim, ch.dim);
  coherence_in.col(0) = psi;
  const Vec transfer = apply_channel(ch, coherence_in).col(0).tail(ch.dim - 1);
  const Cplx f = (u * psi.tail(ch.dim - 1)).dot(transfer);  // dot conjugates its left argument
  const double loss = apply_channel(ch, (psi * psi.adjoint()).eval())(0, 0).real();
  return 0.5 - loss / 4.0 + 0.5 * std::abs(f) * std::cos(std::arg(f) - chi);
}

}  // namespace

TEST_CASE("channel construction validates trace preservation") {
  Mat half = Mat::Identity(2, 2) * 0.5;
  CHECK_THROWS_AS(KrausChannel::create(2, {half}), Error);
  CHECK_THROWS_AS(KrausChannel::create(2, {}), Error);
  CHECK_NOTHROW(KrausChannel::create(2, {Mat::Identity(2, 2)}));
}

TEST_CASE("apply_channel basics") {
  const KrausChannel id = KrausChannel::identity(3);
  std::mt19937_64 rng(61);
  const Mat x = random_gaussian(3, 3, rng);
  CHECK(max_abs_diff(apply_channel(id, x), x) == 0.0);

  // Fully reflective beam splitter swaps the photon into the ancilla.
  const KrausChannel reflect = from_loss_params(beam_splitter_params(kPi / 2.0));
  CHECK(max_abs_diff(apply_channel(reflect, matrix_unit(2, 1, 1)), matrix_unit(2, 0, 0)) < 1e-12);

  // Coherence transfer picks up gamma* on |1><0|.
  const double theta = 0.7;
  const KrausChannel bs = from_loss_params(beam_splitter_params(theta));
  CHECK(max_abs_diff(apply_channel(bs, matrix_unit(2, 1, 0)),
                     (std::cos(theta) * matrix_unit(2, 1, 0)).eval()) < 1e-12);
}

TEST_CASE("apply_channel is linear") {
  std::mt19937_64 rng(67);
  const KrausChannel ch = random_vacuum_preserving_channel(2, 3, 901);
  for (int it = 0; it < 8; ++it) {
    const Mat x = random_gaussian(3, 3, rng);
    const Mat y = random_gaussian(3, 3, rng);
    const Cplx a(0.3, -1.1), b(-0.7, 0.2);
    CHECK(max_abs_diff(apply_channel(ch, (a * x + b * y).eval()),
                       (a * apply_channel(ch, x) + b * apply_channel(ch, y)).eval()) < 1e-12);
  }
}

TEST_CASE("choi matrix of reference channels") {
  // Identity: |Omega><Omega|, rank 1, trace = dim.
  const Mat choi_id = choi_matrix(KrausChannel::identity(2));
  Vec omega = Vec::Zero(4);
  omega(0) = omega(3) = 1.0;
  CHECK(max_abs_diff(choi_id, (omega * omega.adjoint()).eval()) < 1e-14);

  // Depolarize-to-vacuum: Phi(rho) = |0><0| tr rho -> choi = I (x) |0><0|.
  Mat k0 = Mat::Zero(2, 2), k1 = Mat::Zero(2, 2);
  k0(0, 0) = 1.0;
  k1(0, 1) = 1.0;
  const KrausChannel to_vac = KrausChannel::create(2, {k0, k1});
  CHECK(max_abs_diff(choi_matrix(to_vac), tensor(Mat::Identity(2, 2), matrix_unit(2, 0, 0))) <
        1e-14);
}

TEST_CASE("choi matrices of random channels are PSD with identity reduction") {
  for (int s = 0; s < 100; ++s) {
    const KrausChannel ch = random_vacuum_preserving_channel(1 + s % 3, 2 + s % 2, 1234 + s);
    const Mat choi = choi_matrix(ch);
    const Eigensystem eig = hermitian_eigensystem(choi, 1e-9);
    CHECK(eig.values.minCoeff() >= -1e-10);
    // Partial trace over the output factor recovers the identity.
    const HilbertLabel label{{ch.dim, ch.dim}, {}};
    CHECK(max_abs_diff(partial_trace(choi, label, {0}), Mat::Identity(ch.dim, ch.dim)) < 1e-10);
  }
}

TEST_CASE("from_loss_params reproduces the parametrized action") {
  SUBCASE("identity parameters give the identity channel") {
    LossChannelParams p;
    p.sigma = matrix_unit(2, 1, 1);
    p.gamma = 1.0;
    const KrausChannel ch = from_loss_params(p);
    CHECK(ch.kraus.size() == 1);  // rank-1 Choi, single Kraus operator up to phase
    std::mt19937_64 rng(71);
    const Mat x = random_gaussian(2, 2, rng);
    CHECK(max_abs_diff(apply_channel(ch, x), x) < 1e-12);
  }

  SUBCASE("action matches the parametrization on all matrix units") {
    std::mt19937_64 rng(73);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int it = 0; it < 20; ++it) {
      LossChannelParams p;
      const double s00 = 0.05 + 0.9 * (it / 20.0);
      const double budget = s00 * (1.0 - s00);
      const double split = unit(rng);
      Cplx gamma = std::polar(std::sqrt(budget * split / std::max(s00, 1e-12)), 2 * kPi * unit(rng));
      if (std::abs(gamma) > 1.0) gamma /= std::abs(gamma);
      const Cplx s01 = std::polar(std::sqrt(budget * (1.0 - split)) * 0.999, 2 * kPi * unit(rng));
      p.sigma = Mat::Zero(2, 2);
      p.sigma(0, 0) = s00;
      p.sigma(1, 1) = 1.0 - s00;
      p.sigma(0, 1) = s01;
      p.sigma(1, 0) = std::conj(s01);
      p.gamma = gamma;
      const KrausChannel ch = from_loss_params(p);

      CHECK(max_abs_diff(apply_channel(ch, matrix_unit(2, 0, 0)), matrix_unit(2, 0, 0)) < 1e-10);
      CHECK(max_abs_diff(apply_channel(ch, matrix_unit(2, 1, 1)), p.sigma) < 1e-10);
      CHECK(max_abs_diff(apply_channel(ch, matrix_unit(2, 0, 1)),
                         (p.gamma * matrix_unit(2, 0, 1)).eval()) < 1e-10);
      CHECK(max_abs_diff(apply_channel(ch, matrix_unit(2, 1, 0)),
                         (std::conj(p.gamma) * matrix_unit(2, 1, 0)).eval()) < 1e-10);
      CHECK(is_vacuum_preserving(ch, 1e-10));

      // Round trip through the extraction.
      const LossChannelParams back = loss_params_from_channel(ch);
      CHECK(max_abs_diff(back.sigma, p.sigma) < 1e-10);
      CHECK(std::abs(back.gamma - p.gamma) < 1e-10);
    }
  }

  SUBCASE("constraint violations are rejected with the offending constraint named") {
    LossChannelParams bad = measure_and_prepare_params();
    bad.gamma = 0.9;  // 0.5*0.81 + 0.25 > 0.25
    CHECK_THROWS_WITH_AS(from_loss_params(bad),
                         doctest::Contains("sigma00 |gamma|^2 + |sigma01|^2"), Error);

    LossChannelParams not_density;
    not_density.sigma = Mat::Zero(2, 2);
    not_density.sigma(0, 0) = 1.5;
    not_density.sigma(1, 1) = -0.5;
    not_density.gamma = 0.0;
    CHECK_THROWS_WITH_AS(from_loss_params(not_density), doctest::Contains("density operator"),
                         Error);

    LossChannelParams big_gamma;
    big_gamma.sigma = matrix_unit(2, 1, 1);
    big_gamma.gamma = 1.5;
    CHECK_THROWS_WITH_AS(from_loss_params(big_gamma), doctest::Contains("|gamma| > 1"), Error);
  }

  SUBCASE("Kraus ranks follow the Choi rank") {
    CHECK(from_loss_params(beam_splitter_params(kPi / 4.0)).kraus.size() == 2);
    // sigma pure and gamma = 0: Choi = E00 (x) |0><0| + E11 (x) |chi><chi|, rank 2.
    CHECK(from_loss_params(measure_and_prepare_params()).kraus.size() == 2);
  }
}

TEST_CASE("vacuum preservation predicate") {
  CHECK(is_vacuum_preserving(KrausChannel::identity(2), 1e-12));
  CHECK(!is_vacuum_preserving(bit_flip_channel(), 1e-3));
  for (int s = 0; s < 10; ++s)
    CHECK(is_vacuum_preserving(random_vacuum_preserving_channel(2, 3, 50 + s), 1e-10));
}

TEST_CASE("lpc on reference channels") {
  Vec psi = basis_vector(2, 1);

  SUBCASE("identity") {
    const LpcReport r = lpc(KrausChannel::identity(2), psi);
    CHECK(r.loss == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.preservation == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.creation == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(check_exclusion_inequality(r));
  }

  SUBCASE("50/50 beam splitter reaches equality") {
    const LpcReport r = lpc(from_loss_params(beam_splitter_params(kPi / 4.0)), psi);
    CHECK(std::abs(r.loss - 0.5) < 1e-10);
    CHECK(std::abs(r.preservation - std::sqrt(2.0) / 2.0) < 1e-10);
    CHECK(std::abs(r.creation) < 1e-10);
    CHECK(std::abs(r.inequality_slack) < 1e-10);
    CHECK(std::abs(*r.excess_coherence_loss) < 1e-10);
  }

  SUBCASE("measure-and-prepare trades all preservation for creation") {
    const LpcReport r = lpc(from_loss_params(measure_and_prepare_params()), psi);
    CHECK(std::abs(r.loss - 0.5) < 1e-10);
    CHECK(std::abs(r.preservation) < 1e-10);
    CHECK(std::abs(r.creation - 0.5) < 1e-10);
    CHECK(std::abs(r.inequality_slack) < 1e-10);
  }

  SUBCASE("random beam splitter preserves less coherence than the pure one") {
    for (double theta : {0.3, 0.9, 1.4}) {
      const double p = std::cos(theta) * std::cos(theta);
      LossChannelParams mix;
      mix.sigma = Mat::Zero(2, 2);
      mix.sigma(0, 0) = 1.0 - p;
      mix.sigma(1, 1) = p;
      mix.gamma = p;
      const LpcReport random_bs = lpc(from_loss_params(mix), psi);
      const LpcReport pure_bs = lpc(from_loss_params(beam_splitter_params(theta)), psi);
      CHECK(std::abs(random_bs.preservation - p) < 1e-10);
      CHECK(random_bs.preservation < pure_bs.preservation);
    }
  }

  SUBCASE("preconditions") {
    CHECK_THROWS_AS(lpc(KrausChannel::identity(2), (2.0 * psi).eval()), Error);  // not normalized
    Vec tilted(2);
    tilted << 0.6, 0.8;
    CHECK_THROWS_AS(lpc(KrausChannel::identity(2), tilted), Error);  // vacuum overlap
    CHECK_THROWS_AS(lpc(bit_flip_channel(), psi), Error);            // not vacuum preserving
  }
}

TEST_CASE("loss params round trip through lpc") {
  // L = sigma00, P = |gamma|, C = |sigma01| for the parametrized channels.
  std::mt19937_64 rng(79);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vec psi = basis_vector(2, 1);
  for (int it = 0; it < 20; ++it) {
    const double s00 = unit(rng);
    const double budget = s00 * (1.0 - s00);
    const double split = unit(rng);
    LossChannelParams p;
    p.sigma = Mat::Zero(2, 2);
    p.sigma(0, 0) = s00;
    p.sigma(1, 1) = 1.0 - s00;
    const Cplx s01 = std::polar(std::sqrt(budget * (1.0 - split)) * 0.999, 2 * kPi * unit(rng));
    p.sigma(0, 1) = s01;
    p.sigma(1, 0) = std::conj(s01);
    p.gamma = s00 > 1e-12 ? std::polar(std::sqrt(budget * split / s00) * 0.999, 2 * kPi * unit(rng))
                          : Cplx(0.0);
    if (std::abs(p.gamma) > 1.0) p.gamma /= std::abs(p.gamma);
    const LpcReport r = lpc(from_loss_params(p), psi);
    CHECK(std::abs(r.loss - s00) < 1e-10);
    CHECK(std::abs(r.preservation - std::abs(p.gamma)) < 1e-10);
    CHECK(std::abs(r.creation - std::abs(s01)) < 1e-10);
  }
}

TEST_CASE("exclusion inequality checker") {
  LpcReport ok{0.0, 1.0, 0.0, std::nullopt, 0.0};
  CHECK(check_exclusion_inequality(ok));

  LpcReport fabricated{0.5, 0.9, 0.5, std::nullopt, 0.0};  // 0.405 + 0.25 > 0.25
  CHECK(!check_exclusion_inequality(fabricated));

  LpcReport corollary_violation{0.0, 0.5, 0.01, std::nullopt, -1e-4};
  CHECK(!check_exclusion_inequality(corollary_violation));
}

TEST_CASE("random vacuum-preserving channels") {
  SUBCASE("one-dimensional environment forces a unitary channel") {
    for (int s = 0; s < 10; ++s) {
      const KrausChannel ch = random_vacuum_preserving_channel(2, 1, 7000 + s);
      CHECK(ch.kraus.size() == 1);
      std::mt19937_64 rng(100 + s);
      const LpcReport r = lpc(ch, random_state_orthogonal_to_vacuum(ch.dim, rng));
      CHECK(std::abs(r.loss) < 1e-10);
      CHECK(std::abs(r.creation) < 1e-10);
      CHECK(std::abs(r.preservation - 1.0) < 1e-10);
    }
  }

  SUBCASE("structure and determinism") {
    const KrausChannel a = random_vacuum_preserving_channel(1, 2, 42);
    const KrausChannel b = random_vacuum_preserving_channel(1, 2, 42);
    REQUIRE(a.kraus.size() == b.kraus.size());
    for (size_t k = 0; k < a.kraus.size(); ++k) CHECK(max_abs_diff(a.kraus[k], b.kraus[k]) == 0.0);
    const KrausChannel c = random_vacuum_preserving_channel(1, 2, 43);
    CHECK(max_abs_diff(a.kraus[0], c.kraus[0]) > 1e-3);
  }

  SUBCASE("inequality slack stays nonnegative over a seed sweep") {
    double min_slack = 1.0;
    for (int s = 0; s < 60; ++s) {
      const KrausChannel ch = random_vacuum_preserving_channel(1 + s % 3, 2 + s % 3, 9000 + s);
      std::mt19937_64 rng(200 + s);
      for (int k = 0; k < 20; ++k) {
        const LpcReport r = lpc(ch, random_state_orthogonal_to_vacuum(ch.dim, rng));
        min_slack = std::min(min_slack, r.inequality_slack);
        CHECK(check_exclusion_inequality(r));
      }
    }
    CHECK(min_slack >= -1e-9);
  }
}

TEST_CASE("mach-zehnder simulation") {
  SUBCASE("identity channel interferes fully") {
    const Mat u1 = Mat::Identity(1, 1);
    CHECK(simulate_mach_zehnder(KrausChannel::identity(2), basis_vector(2, 1), u1, 0.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("50/50 beam splitter fringe") {
    const KrausChannel bs = from_loss_params(beam_splitter_params(kPi / 4.0));
    const Mat u1 = Mat::Identity(1, 1);
    const Vec psi = basis_vector(2, 1);
    double p_max = 0.0, p_min = 1.0, mean = 0.0;
    const int n = 64;
    for (int k = 0; k < n; ++k) {
      const double p = simulate_mach_zehnder(bs, psi, u1, 2 * kPi * k / n);
      p_max = std::max(p_max, p);
      p_min = std::min(p_min, p);
      mean += p;
    }
    CHECK(mean / n == doctest::Approx(0.375).epsilon(1e-10));  // 1/2 - L/4
    CHECK((p_max - p_min) / 2 == doctest::Approx(std::sqrt(2.0) / 4.0).epsilon(1e-3));
  }

  SUBCASE("measure-and-prepare shows no fringes") {
    const KrausChannel mp = from_loss_params(measure_and_prepare_params());
    const Mat u1 = Mat::Identity(1, 1);
    for (double chi : {0.0, 1.0, 2.5, 4.0})
      CHECK(simulate_mach_zehnder(mp, basis_vector(2, 1), u1, chi) ==
            doctest::Approx(0.375).epsilon(1e-12));
  }

  SUBCASE("full simulation equals the closed formula") {
    for (int s = 0; s < 25; ++s) {
      std::mt19937_64 rng(300 + s);
      const int d = 1 + s % 3;
      const KrausChannel ch = random_vacuum_preserving_channel(d, 2 + s % 3, 400 + s);
      const Vec psi = random_state_orthogonal_to_vacuum(ch.dim, rng);
      const Mat u = random_unitary(d, rng);
      std::uniform_real_distribution<double> unit(0.0, 2 * kPi);
      const double chi = unit(rng);
      CHECK(std::abs(simulate_mach_zehnder(ch, psi, u, chi) - mz_formula(ch, psi, u, chi)) <
            1e-10);
    }
  }

  SUBCASE("rejects a non-unitary internal operator") {
    const Mat not_unitary = Mat::Identity(1, 1) * 0.5;
    CHECK_THROWS_AS(
        simulate_mach_zehnder(KrausChannel::identity(2), basis_vector(2, 1), not_unitary, 0.0),
        Error);
  }
}

TEST_CASE("visibility scan") {
  const Vec psi = basis_vector(2, 1);

  SUBCASE("identity channel") {
    const VisibilityScan scan = max_visibility_scan(KrausChannel::identity(2), psi, 0, 64);
    CHECK(std::abs(scan.visibility - 0.5) < 1e-9);
    CHECK(std::abs(scan.offset - 0.5) < 1e-12);
  }

  SUBCASE("beam splitter theta = pi/3 gives cos(pi/3)/2") {
    const VisibilityScan scan =
        max_visibility_scan(from_loss_params(beam_splitter_params(kPi / 3.0)), psi, 0, 64);
    CHECK(std::abs(scan.visibility - 0.25) < 1e-9);
  }

  SUBCASE("measure-and-prepare gives zero") {
    const VisibilityScan scan =
        max_visibility_scan(from_loss_params(measure_and_prepare_params()), psi, 0, 64);
    CHECK(scan.visibility < 1e-9);
  }

  SUBCASE("analytic maximizer reaches P/2 for multi-dimensional internal spaces") {
    for (int s = 0; s < 6; ++s) {
      const KrausChannel ch = random_vacuum_preserving_channel(3, 2, 500 + s);
      std::mt19937_64 rng(600 + s);
      const Vec psi_nd = random_state_orthogonal_to_vacuum(ch.dim, rng);
      const LpcReport r = lpc(ch, psi_nd);
      const VisibilityScan scan = max_visibility_scan(ch, psi_nd, 8, 64, 77, true);
      CHECK(std::abs(scan.visibility - r.preservation / 2.0) < 1e-6);
      CHECK(std::abs(scan.offset - (0.5 - r.loss / 4.0)) < 1e-9);
    }
  }

  SUBCASE("dense random scan alone gets within 1e-3") {
    const KrausChannel ch = random_vacuum_preserving_channel(2, 2, 510);
    std::mt19937_64 rng(610);
    const Vec psi_nd = random_state_orthogonal_to_vacuum(ch.dim, rng);
    const LpcReport r = lpc(ch, psi_nd);
    const VisibilityScan scan = max_visibility_scan(ch, psi_nd, 500, 64, 78, false);
    CHECK(scan.visibility <= r.preservation / 2.0 + 1e-9);
    CHECK(scan.visibility >= r.preservation / 2.0 - 1e-3);
  }
}
