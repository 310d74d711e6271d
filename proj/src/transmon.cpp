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

#include "bichro/transmon.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bichro/errors.hpp"

namespace bichro {

namespace {

constexpr int kDim = 2 * kChargeCutoff + 1;
constexpr double kMinEjOverEc = 20.0;

using TriSolver = Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, kDim, kDim>>;

}  // namespace

TransmonSpec TransmonSpec::make(double ej1, double ej2, double ec) {
    TransmonSpec s{ej1, ej2, ec};
    s.validate();
    return s;
}

void TransmonSpec::validate() const {
    if (!(ej2 > 0.0) || !(ej1 >= ej2)) {
        std::ostringstream os;
        os << "TransmonSpec requires EJ1 >= EJ2 > 0 (got EJ1=" << ej1 << ", EJ2=" << ej2 << ")";
        throw InvalidArgument(os.str());
    }
    if (!(ec > 0.0)) throw InvalidArgument("TransmonSpec requires EC > 0");
    if ((ej1 + ej2) / ec <= kMinEjOverEc) {
        std::ostringstream os;
        os << "(EJ1+EJ2)/EC = " << (ej1 + ej2) / ec << " is outside the transmon regime (> "
           << kMinEjOverEc << ")";
        throw InvalidArgument(os.str());
    }
}

double ej_eff(double phi, const TransmonSpec &spec) {
    const double c = std::cos(phi);
    const double v = spec.ej1 * spec.ej1 + spec.ej2 * spec.ej2 + 2.0 * spec.ej1 * spec.ej2 * c;
    return std::sqrt(std::max(v, 0.0));
}

Transitions transition_frequencies_at_ej(double ej, double ec) {
    Eigen::Matrix<double, kDim, 1> diag;
    Eigen::Matrix<double, kDim - 1, 1> sub;
    for (int i = 0; i < kDim; ++i) {
        const double n = i - kChargeCutoff;
        diag(i) = 4.0 * ec * n * n;
    }
    sub.setConstant(-0.5 * ej);
    // The tridiagonal QL path skips the normalization the dense path does and
    // stalls on a small fraction of inputs without it.
    const double scale = std::max(diag.maxCoeff(), 0.5 * ej);
    diag /= scale;
    sub /= scale;

    TriSolver solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        std::ostringstream os;
        os.precision(17);
        os << "charge-basis eigensolver did not converge (EJ=" << ej << ", EC=" << ec << ")";
        throw DiagonalizationFailure(os.str());
    }
    const auto &e = solver.eigenvalues();
    return {scale * (e(1) - e(0)), scale * (e(2) - e(1))};
}

Transitions transition_frequencies(double phi, const TransmonSpec &spec) {
    return transition_frequencies_at_ej(ej_eff(phi, spec), spec.ec);
}

FitResidual fit_residuals(const TransmonSpec &spec, double f_max, double tunability,
                          double anharmonicity) {
    const auto top = transition_frequencies(0.0, spec);
    const auto bottom = transition_frequencies(std::numbers::pi, spec);
    return {top.f01 - f_max, (top.f01 - bottom.f01) - tunability,
            top.anharmonicity() - anharmonicity};
}

TransmonSpec fit_spec(double f_max, double tunability, double anharmonicity,
                      const FitTolerance &tol) {
    if (!(anharmonicity < 0.0)) throw InvalidArgument("anharmonicity must be negative");
    if (!(tunability >= 0.0) || !(f_max > tunability)) {
        throw InvalidArgument("fit_spec requires f_max > tunability >= 0");
    }
    if (tunability == 0.0) {
        // f(0) = f(pi) needs EJ1 - EJ2 = EJ1 + EJ2, i.e. a missing second junction.
        throw InvalidArgument("zero tunability is infeasible for a two-junction SQUID (EJ2 -> 0)");
    }

    using Vec3 = Eigen::Vector3d;
    auto residual = [&](const Vec3 &x) -> Vec3 {
        const auto r = fit_residuals(TransmonSpec{x(0), x(1), x(2)}, f_max, tunability,
                                     anharmonicity);
        return {r.f_max_ghz, r.tunability_ghz, r.anharmonicity_ghz};
    };
    auto admissible = [](const Vec3 &x) { return x(2) > 0.0 && x(1) > 0.0 && x(0) >= x(1); };

    // Asymptotic seed: f01 ~ sqrt(8 EJ EC) - EC, anharmonicity ~ -EC.
    const double ec0 = -anharmonicity;
    const double ej_sum = std::pow(f_max + ec0, 2) / (8.0 * ec0);
    const double ej_diff = std::pow(f_max - tunability + ec0, 2) / (8.0 * ec0);
    Vec3 x{0.5 * (ej_sum + ej_diff), 0.5 * (ej_sum - ej_diff), ec0};

    Vec3 r = residual(x);
    const double target = 1e-3 * std::min(tol.frequency_ghz, tol.anharmonicity_ghz);
    int it = 0;
    for (; it < tol.max_iterations && r.cwiseAbs().maxCoeff() > target; ++it) {
        Eigen::Matrix3d jac;
        for (int j = 0; j < 3; ++j) {
            Vec3 xp = x;
            const double h = 1e-7 * std::max(std::abs(x(j)), 1e-3);
            xp(j) += h;
            jac.col(j) = (residual(xp) - r) / h;
        }
        const Vec3 step = jac.fullPivLu().solve(-r);
        double lambda = 1.0;
        bool accepted = false;
        for (int k = 0; k < 30; ++k, lambda *= 0.5) {
            const Vec3 trial = x + lambda * step;
            if (!admissible(trial)) continue;
            const Vec3 rt = residual(trial);
            if (rt.norm() < r.norm()) {
                x = trial;
                r = rt;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }

    if (std::abs(r(0)) > tol.frequency_ghz || std::abs(r(1)) > tol.frequency_ghz ||
        std::abs(r(2)) > tol.anharmonicity_ghz || !admissible(x)) {
        std::ostringstream os;
        os << "fit_spec did not converge after " << it << " iterations; residuals [GHz]: f_max "
           << r(0) << ", tunability " << r(1) << ", anharmonicity " << r(2);
        throw FitDivergence(os.str());
    }
    return TransmonSpec::make(x(0), x(1), x(2));
}

FourierSeries::FourierSeries(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {}

double FourierSeries::operator()(double phi) const {
    // cos(n phi) by the Chebyshev recurrence.
    const double c1 = std::cos(phi);
    double prev = 1.0, cur = c1;
    double acc = coeffs_.empty() ? 0.0 : coeffs_[0];
    for (std::size_t n = 1; n < coeffs_.size(); ++n) {
        acc += coeffs_[n] * cur;
        const double next = 2.0 * c1 * cur - prev;
        prev = cur;
        cur = next;
    }
    return acc;
}

namespace {

FourierSeries project(const std::vector<double> &values, int harmonics, double tolerance) {
    const int m = static_cast<int>(values.size());
    std::vector<double> coeffs(static_cast<std::size_t>(harmonics) + 1, 0.0);
    for (int n = 0; n <= harmonics; ++n) {
        double acc = 0.0;
        for (int i = 0; i < m; ++i) {
            // n*i reduced mod m keeps the argument exact for large n.
            const double arg = 2.0 * std::numbers::pi * ((static_cast<long>(n) * i) % m) / m;
            acc += values[i] * std::cos(arg);
        }
        coeffs[n] = (n == 0 ? 1.0 : 2.0) * acc / m;
    }
    if (std::abs(coeffs.back()) > tolerance) {
        std::ostringstream os;
        os << "|F_" << harmonics << "| = " << std::abs(coeffs.back())
           << " GHz exceeds the truncation tolerance; raise the harmonic count";
        throw TruncationTooCoarse(os.str());
    }
    FourierSeries series(std::move(coeffs));
    double worst = 0.0;
    for (int i = 0; i < m; ++i) {
        const double phi = 2.0 * std::numbers::pi * i / m;
        worst = std::max(worst, std::abs(series(phi) - values[i]));
    }
    if (worst > tolerance) {
        std::ostringstream os;
        os << "Fourier reconstruction error " << worst << " GHz exceeds tolerance " << tolerance;
        throw TruncationTooCoarse(os.str());
    }
    return series;
}

void check_projection_args(int harmonics, int samples) {
    if (harmonics < 4) throw InvalidArgument("Fourier projection needs at least 4 harmonics");
    if (samples < kDefaultProjectionSamples || samples % 2 != 0) {
        throw InvalidArgument("Fourier projection needs an even sample count >= 4096");
    }
}

}  // namespace

FourierSeries fourier_coefficients(const std::function<double(double)> &curve, int harmonics,
                                   int samples, double tolerance) {
    check_projection_args(harmonics, samples);
    std::vector<double> values(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) values[i] = curve(2.0 * std::numbers::pi * i / samples);
    return project(values, harmonics, tolerance);
}

namespace {

// Both transition channels on the projection grid; uses f(phi) = f(2 pi - phi).
std::array<std::vector<double>, 2> sample_transitions(const TransmonSpec &spec, int samples) {
    std::array<std::vector<double>, 2> out{std::vector<double>(samples),
                                           std::vector<double>(samples)};
    for (int i = 0; i <= samples / 2; ++i) {
        const auto t = transition_frequencies(2.0 * std::numbers::pi * i / samples, spec);
        out[0][i] = t.f01;
        out[1][i] = t.f12;
        if (i > 0 && i < samples / 2) {
            out[0][samples - i] = t.f01;
            out[1][samples - i] = t.f12;
        }
    }
    return out;
}

}  // namespace

FourierSeries fourier_coefficients(const TransmonSpec &spec, Transition which, int harmonics,
                                   int samples) {
    check_projection_args(harmonics, samples);
    spec.validate();
    auto both = sample_transitions(spec, samples);
    return project(both[which == Transition::kF01 ? 0 : 1], harmonics, kFourierToleranceGhz);
}

TransmonModel::TransmonModel(const TransmonSpec &spec, int harmonics) : spec_(spec) {
    check_projection_args(harmonics, kDefaultProjectionSamples);
    spec_.validate();
    auto both = sample_transitions(spec_, kDefaultProjectionSamples);
    f01_ = project(both[0], harmonics, kFourierToleranceGhz);
    f12_ = project(both[1], harmonics, kFourierToleranceGhz);
}

double TransmonModel::frequency(double flux, Transition which) const {
    return series(which)(2.0 * std::numbers::pi * flux);
}

}  // namespace bichro
