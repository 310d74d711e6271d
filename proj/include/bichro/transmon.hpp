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

#pragma once

#include <functional>
#include <vector>

namespace bichro {

/// SQUID transmon parameters, all energies in GHz (E/h).
///
/// The flux period is fixed to one flux quantum; every public flux argument is
/// in units of Phi0 unless the name says `phi` (reduced flux 2*pi*Phi/Phi0).
struct TransmonSpec {
    double ej1 = 0.0;
    double ej2 = 0.0;
    double ec = 0.0;

    /// Validates EJ1 >= EJ2 > 0, EC > 0 and (EJ1 + EJ2) / EC > 20.
    static TransmonSpec make(double ej1, double ej2, double ec);
    void validate() const;
};

/// Lowest two transition frequencies of the transmon, GHz.
struct Transitions {
    double f01 = 0.0;
    double f12 = 0.0;
    double anharmonicity() const { return f12 - f01; }
};

enum class Transition { kF01, kF12 };

/// Half-width of the Cooper-pair number basis, n in [-20, 20].
inline constexpr int kChargeCutoff = 20;
inline constexpr int kDefaultHarmonics = 24;
inline constexpr int kDefaultProjectionSamples = 4096;
/// Sup-norm tolerance on a Fourier reconstruction (1 kHz).
inline constexpr double kFourierToleranceGhz = 1e-6;

double ej_eff(double phi, const TransmonSpec &spec);

/// Charge-basis diagonalization with effective Josephson energy `ej`.
Transitions transition_frequencies_at_ej(double ej, double ec);

/// Transition frequencies at reduced flux `phi`.
Transitions transition_frequencies(double phi, const TransmonSpec &spec);

struct FitTolerance {
    double frequency_ghz = 1e-4;
    double anharmonicity_ghz = 1e-3;
    int max_iterations = 100;
};

/// Residuals of `spec` against a (f_max, tunability, anharmonicity) row.
struct FitResidual {
    double f_max_ghz = 0.0;
    double tunability_ghz = 0.0;
    double anharmonicity_ghz = 0.0;
};

FitResidual fit_residuals(const TransmonSpec &spec, double f_max, double tunability,
                          double anharmonicity);

/// Inverts a device-table row into Hamiltonian parameters with damped Newton
/// on (EJ1, EJ2, EC). Throws FitDivergence with the residuals on failure.
TransmonSpec fit_spec(double f_max, double tunability, double anharmonicity,
                      const FitTolerance &tol = {});

/// Cosine series f(phi) = sum_n F_n cos(n phi).
class FourierSeries {
   public:
    FourierSeries() = default;
    explicit FourierSeries(std::vector<double> coefficients);

    const std::vector<double> &coefficients() const { return coeffs_; }
    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    double operator[](int n) const { return coeffs_[static_cast<std::size_t>(n)]; }
    double operator()(double phi) const;

   private:
    std::vector<double> coeffs_;
};

/// Trapezoid projection of an even 2*pi-periodic curve onto cos(n phi),
/// n = 0..harmonics. Throws TruncationTooCoarse when |F_N| or the sampled
/// reconstruction error exceeds `tolerance`.
FourierSeries fourier_coefficients(const std::function<double(double)> &curve, int harmonics,
                                   int samples = kDefaultProjectionSamples,
                                   double tolerance = kFourierToleranceGhz);

FourierSeries fourier_coefficients(const TransmonSpec &spec, Transition which,
                                   int harmonics = kDefaultHarmonics,
                                   int samples = kDefaultProjectionSamples);

/// A spec bundled with the Fourier series of both transitions. Construction
/// diagonalizes the Hamiltonian once per projection sample; afterwards every
/// query is a cheap series evaluation.
class TransmonModel {
   public:
    explicit TransmonModel(const TransmonSpec &spec, int harmonics = kDefaultHarmonics);

    const TransmonSpec &spec() const { return spec_; }
    const FourierSeries &series(Transition which) const {
        return which == Transition::kF01 ? f01_ : f12_;
    }
    /// Frequency at flux `flux` (Phi0) from the series.
    double frequency(double flux, Transition which = Transition::kF01) const;

   private:
    TransmonSpec spec_;
    FourierSeries f01_;
    FourierSeries f12_;
};

}  // namespace bichro
