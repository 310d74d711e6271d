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

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "bichro/errors.hpp"
#include "bichro/transmon.hpp"
#include "support.hpp"

using namespace bichro;
namespace bt = bichro::testing;

namespace {

// Dense charge-basis reference with a wider cutoff than the library uses.
Transitions dense_levels(double ej, double ec, int cutoff = 30) {
    const int dim = 2 * cutoff + 1;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const double n = i - cutoff;
        h(i, i) = 4.0 * ec * n * n;
        if (i + 1 < dim) h(i, i + 1) = h(i + 1, i) = -0.5 * ej;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
    const auto &e = solver.eigenvalues();
    return {e(1) - e(0), e(2) - e(1)};
}

}  // namespace

TEST_CASE("ej_eff at reference flux points") {
    const auto spec = TransmonSpec::make(12.0, 8.0, 0.2);
    CHECK(ej_eff(0.0, spec) == doctest::Approx(20.0).epsilon(1e-14));
    CHECK(ej_eff(std::numbers::pi, spec) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(ej_eff(0.5 * std::numbers::pi, spec) == doctest::Approx(std::sqrt(208.0)).epsilon(1e-14));
    CHECK(ej_eff(0.5 * std::numbers::pi, spec) == doctest::Approx(14.4222).epsilon(1e-5));
    CHECK(ej_eff(1.1, spec) == doctest::Approx(ej_eff(-1.1, spec)));
    CHECK(ej_eff(1.1, spec) == doctest::Approx(ej_eff(1.1 + 2.0 * std::numbers::pi, spec)));
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(TransmonSpec::make(8.0, 12.0, 0.2), InvalidArgument);
    CHECK_THROWS_AS(TransmonSpec::make(12.0, 0.0, 0.2), InvalidArgument);
    CHECK_THROWS_AS(TransmonSpec::make(12.0, 8.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(TransmonSpec::make(1.0, 0.5, 0.2), InvalidArgument);  // EJ/EC = 7.5
}

TEST_CASE("transition frequencies match a wider dense diagonalization") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ec_dist(0.15, 0.3), ratio(25.0, 300.0);
    for (int i = 0; i < 200; ++i) {
        const double ec = ec_dist(rng);
        const double ej = ec * ratio(rng);
        const auto got = transition_frequencies_at_ej(ej, ec);
        const auto ref = dense_levels(ej, ec);
        CHECK(std::abs(got.f01 - ref.f01) < 1e-9);
        CHECK(std::abs(got.f12 - ref.f12) < 1e-9);
    }
}

TEST_CASE("transmon limit") {
    // f01 -> sqrt(8 EJ EC) - EC and anharmonicity -> -EC as EJ/EC grows.
    const double ec = 0.2, ej = 200.0 * ec;
    const auto t = transition_frequencies_at_ej(ej, ec);
    CHECK(t.f01 == doctest::Approx(std::sqrt(8.0 * ej * ec) - ec).epsilon(2e-3));
    CHECK(t.anharmonicity() == doctest::Approx(-ec).epsilon(0.05));
}

TEST_CASE("table fits reproduce their rows") {
    for (const auto &row : {bt::kQubit1, bt::kQubit2, bt::kQubit3, bt::kQubit4}) {
        const auto spec = bt::fitted(row);
        const auto r = fit_residuals(spec, row.f_max, row.tunability, row.anharmonicity);
        CHECK(std::abs(r.f_max_ghz) < 1e-4);
        CHECK(std::abs(r.tunability_ghz) < 1e-4);
        CHECK(std::abs(r.anharmonicity_ghz) < 1e-3);
        CHECK(spec.ej1 >= spec.ej2);
    }
    const auto &q1 = bt::qubit1();
    CHECK(transition_frequencies(0.0, q1).f01 == doctest::Approx(5.250).epsilon(2e-5));
    CHECK(transition_frequencies(std::numbers::pi, q1).f01 ==
          doctest::Approx(5.250 - 0.824).epsilon(2e-5));
    CHECK(transition_frequencies(0.0, q1).anharmonicity() == doctest::Approx(-0.205).epsilon(5e-3));
}

TEST_CASE("fit rejects infeasible rows") {
    CHECK_THROWS_AS(fit_spec(5.0, 0.0, -0.2), InvalidArgument);
    CHECK_THROWS_AS(fit_spec(5.0, 0.5, 0.2), InvalidArgument);
    CHECK_THROWS_AS(fit_spec(0.4, 0.5, -0.2), InvalidArgument);
}

TEST_CASE("fourier projection of a trigonometric polynomial") {
    auto curve = [](double phi) { return 3.0 + 2.0 * std::cos(2.0 * phi) - 0.5 * std::cos(5.0 * phi); };
    const auto series = fourier_coefficients(curve, 8);
    REQUIRE(series.order() == 8);
    for (int n = 0; n <= 8; ++n) {
        const double ref = n == 0 ? 3.0 : n == 2 ? 2.0 : n == 5 ? -0.5 : 0.0;
        CHECK(std::abs(series[n] - ref) < 1e-13);
    }
    CHECK(series(0.7) == doctest::Approx(curve(0.7)).epsilon(1e-13));
}

TEST_CASE("fourier projection refuses a slowly converging curve") {
    // |cos(phi/2)| has coefficients that fall off only as 1/n^2.
    auto kink = [](double phi) { return std::abs(std::cos(0.5 * phi)); };
    CHECK_THROWS_AS(fourier_coefficients(kink, 6), TruncationTooCoarse);
    CHECK_THROWS_AS(fourier_coefficients(kink, 2), InvalidArgument);
    CHECK_THROWS_AS(fourier_coefficients(kink, 8, 1000), InvalidArgument);
}

TEST_CASE("transmon series reproduce direct diagonalization") {
    const TransmonModel &model = bt::model1();
    const auto &spec = bt::qubit1();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> flux(-1.0, 1.0);
    double worst01 = 0.0, worst12 = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double x = flux(rng);
        const auto ref = transition_frequencies(2.0 * std::numbers::pi * x, spec);
        worst01 = std::max(worst01, std::abs(model.frequency(x, Transition::kF01) - ref.f01));
        worst12 = std::max(worst12, std::abs(model.frequency(x, Transition::kF12) - ref.f12));
    }
    CHECK(worst01 < 1e-6);
    CHECK(worst12 < 1e-6);
    // The curve is even in flux, so the projection is a pure cosine series.
    CHECK(model.frequency(0.23) == doctest::Approx(model.frequency(-0.23)).epsilon(1e-14));
}
