// Copyright 2026 The bichro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "bichro/errors.hpp"
#include "bichro/pulse.hpp"
#include "support.hpp"

using namespace bichro;
namespace bt = bichro::testing;

namespace {

constexpr double kPi = std::numbers::pi;

BichromaticPulse long_pulse(double alpha, int p = 3, double f_m = 100.0) {
    BichromaticPulse pulse;
    pulse.phi_dc = 0.1;
    pulse.phi_ac = 0.3;
    pulse.alpha = alpha;
    pulse.p = p;
    pulse.f_m_mhz = f_m;
    pulse.theta = 0.7;
    pulse.envelope = {400.0, 10.0};
    return pulse;
}

double circle_distance(double a, double b) { return std::abs(phase_difference(a, b)); }

}  // namespace

TEST_CASE("wrap_phase lands in [-pi, pi)") {
    CHECK(wrap_phase(kPi) == doctest::Approx(-kPi));
    CHECK(wrap_phase(-kPi) == doctest::Approx(-kPi));
    CHECK(wrap_phase(3.0 * kPi + 0.25) == doctest::Approx(-kPi + 0.25));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> d(-50.0, 50.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = d(rng);
        const double w = wrap_phase(x);
        CHECK(w >= -kPi);
        CHECK(w < kPi);
        CHECK(std::abs(std::remainder(x - w, 2.0 * kPi)) < 1e-12);
    }
}

TEST_CASE("erf flat-top envelope") {
    const EnvelopeSpec env{100.0, 20.0};
    CHECK(env.total_duration_ns() == doctest::Approx(140.0));
    CHECK(env(0.0) < 1e-4);
    CHECK(env(140.0) < 1e-4);
    CHECK(env(10.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(env(130.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(env(20.0) - 1.0) < 1e-9);
    CHECK(std::abs(env(70.0) - 1.0) < 1e-9);
    double prev = -1.0;
    for (double t = 0.0; t <= 20.0; t += 0.25) {
        CHECK(env(t) >= prev);
        CHECK(env(t) == doctest::Approx(env(140.0 - t)).epsilon(1e-12));
        prev = env(t);
    }
    CHECK(env(-1.0) == 0.0);
    CHECK(env(141.0) == 0.0);
}

TEST_CASE("synthesize samples the flux expression") {
    const auto pulse = long_pulse(0.4);
    const auto wf = synthesize(pulse, 5.0);
    REQUIRE(wf.samples.size() == static_cast<std::size_t>(std::floor(420.0 * 5.0)) + 1);
    for (std::size_t i = 0; i < wf.samples.size(); i += 37) {
        const double t = wf.time_ns(i);
        const double w = 2.0 * kPi * 0.1 * t;
        const double ideal = 0.1 + 0.3 * pulse.envelope(t) *
                                       (std::cos(0.4) * std::cos(w) + std::sin(0.4) * std::cos(3.0 * w + 0.7));
        CHECK(wf.samples[i] == doctest::Approx(ideal).epsilon(1e-13));
    }
    const double bound = 0.3 * (std::cos(0.4) + std::sin(0.4));
    for (double s : wf.samples) CHECK(std::abs(s - 0.1) <= bound + 1e-15);
}

TEST_CASE("synthesize edge cases") {
    auto pulse = long_pulse(0.4);
    pulse.phi_ac = 0.0;
    const auto flat = synthesize(pulse, 5.0);
    for (double s : flat.samples) CHECK(s == 0.1);

    CHECK_THROWS_AS(synthesize(long_pulse(0.4, 3, 200.0), 5.0), AliasingRisk);
    auto even = long_pulse(0.4);
    even.p = 2;
    CHECK_THROWS_AS(synthesize(even, 5.0), InvalidArgument);
    auto wide = long_pulse(0.4);
    wide.alpha = 2.0;
    CHECK_THROWS_AS(synthesize(wide, 5.0), InvalidArgument);
}

TEST_CASE("tone ratio tracks tan alpha") {
    for (double alpha : {0.1, 0.35, 2.0 * kPi * 0.125, 1.2}) {
        const auto wf = synthesize(long_pulse(alpha), 5.0);
        const auto r = tone_ratio(wf, 100.0, 3);
        CHECK_FALSE(r.inverted);
        CHECK(r.ratio == doctest::Approx(std::tan(alpha)).epsilon(0.01));
    }
    CHECK(tone_ratio(synthesize(long_pulse(0.0), 5.0), 100.0, 3).ratio < 1e-10);

    const auto pure = tone_ratio(synthesize(long_pulse(0.5 * kPi), 5.0), 100.0, 3);
    CHECK(pure.inverted);
    CHECK(pure.ratio < 1e-10);
}

TEST_CASE("tone ratio needs eight periods of flat top") {
    auto pulse = long_pulse(0.4);
    pulse.envelope = {60.0, 10.0};
    CHECK_THROWS_AS(tone_ratio(synthesize(pulse, 5.0), 100.0, 3), InsufficientWindow);
}

TEST_CASE("spectral leakage outside the tones is small") {
    auto pulse = long_pulse(2.0 * kPi * 0.125);
    pulse.envelope = {400.0, 10.0};
    const auto wf = synthesize(pulse, 5.0);
    const std::size_t count = 32 * 50;  // 32 periods of 100 MHz at 5 GS/s
    REQUIRE(wf.flat_begin + count <= wf.flat_end);
    const double a1 = tone_amplitude(wf, 100.0, wf.flat_begin, count);
    const double a3 = tone_amplitude(wf, 300.0, wf.flat_begin, count);
    const double larger = std::max(a1, a3);
    for (double f : {200.0, 400.0, 500.0, 600.0, 700.0}) {
        CHECK(tone_amplitude(wf, f, wf.flat_begin, count) < 0.01 * larger);
    }
    CHECK(a1 == doctest::Approx(0.3 * std::cos(2.0 * kPi * 0.125)).epsilon(1e-9));
}

TEST_CASE("theta shift algebra") {
    CHECK(effective_theta_after_shift(0.4, 0.0, 3) == doctest::Approx(0.4));
    CHECK(effective_theta_after_shift(0.0, 1.3, 1) == 0.0);
    CHECK(effective_theta_after_shift(0.2, 0.3, 3) == doctest::Approx(-0.4));
    CHECK(precompensate_theta(0.9, 0.0, 3) == doctest::Approx(0.9));
    CHECK(precompensate_theta(0.0, 0.1, 3) == doctest::Approx(0.2));
    CHECK(precompensate_theta(0.9, 0.5, 1) == doctest::Approx(0.9));

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    const int ps[] = {1, 3, 5, 7};
    for (int i = 0; i < 1000; ++i) {
        const double theta = angle(rng), theta0 = angle(rng);
        const int p = ps[i % 4];
        const double round = effective_theta_after_shift(precompensate_theta(theta, theta0, p), theta0, p);
        CHECK(circle_distance(round, theta) < 1e-12);
    }
}

TEST_CASE("transfer function interpolation") {
    const auto tf = bt::rolloff_tf();
    for (std::size_t i = 0; i < tf.frequencies().size(); ++i) {
        CHECK(tf(tf.frequencies()[i]) == doctest::Approx(tf.transmissions()[i]).epsilon(1e-14));
    }
    // Monotone data stays inside its bracket between nodes.
    for (double f = 300.0; f <= 700.0; f += 3.7) {
        const double v = tf(f);
        CHECK(v <= 1.0 + 1e-12);
        CHECK(v >= 0.72 - 1e-12);
    }
    for (double f = 400.0; f < 700.0; f += 1.0) CHECK(tf(f + 1.0) <= tf(f) + 1e-12);
    CHECK(tf.in_band(20.0));
    CHECK_FALSE(tf.in_band(19.9));
    CHECK_THROWS_AS(tf(701.0), OutOfBand);
    CHECK_THROWS_AS(TransferFunction({1.0, 1.0}, {1.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(TransferFunction({1.0, 2.0}, {1.0, -0.1}), InvalidArgument);
    CHECK_THROWS_AS(TransferFunction({1.0}, {1.0}), InvalidArgument);
}

TEST_CASE("transfer compensation scales") {
    auto pulse = long_pulse(0.4);
    const auto flat = apply_transfer_compensation(pulse, TransferFunction::flat(10.0, 1000.0));
    CHECK(flat.first == 1.0);
    CHECK(flat.second == 1.0);

    const TransferFunction two_point({100.0, 300.0}, {0.8, 0.5});
    const auto s = apply_transfer_compensation(pulse, two_point);
    CHECK(s.first == doctest::Approx(1.25).epsilon(1e-14));
    CHECK(s.second == doctest::Approx(2.0).epsilon(1e-14));

    pulse.f_m_mhz = 300.0;
    CHECK_THROWS_AS(apply_transfer_compensation(pulse, two_point), OutOfBand);
}

TEST_CASE("compensated round trip restores the tone ratio") {
    const auto tf = bt::rolloff_tf();
    for (double f_m : {60.0, 150.0, 220.0}) {
        for (double alpha : {0.3, 2.0 * kPi * 0.125, 1.0}) {
            auto pulse = long_pulse(alpha, 3, f_m);
            pulse.envelope = {600.0, 10.0};
            const auto sent = scaled(pulse, apply_transfer_compensation(pulse, tf));
            const auto delivered = through_line(sent, tf);
            const auto wf = synthesize(delivered, 10.0 * 3 * f_m * 1e-3 * 1.5);
            const auto r = tone_ratio(wf, f_m, 3);
            CHECK(r.ratio == doctest::Approx(std::tan(alpha)).epsilon(0.01));

            const auto raw = tone_ratio(synthesize(through_line(pulse, tf), 10.0 * 3 * f_m * 1e-3 * 1.5), f_m, 3);
            const double distortion = tf(3.0 * f_m) / tf(f_m);
            CHECK(raw.ratio == doctest::Approx(std::tan(alpha) * distortion).epsilon(0.01));
        }
    }
}
