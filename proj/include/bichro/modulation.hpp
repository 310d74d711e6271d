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

#include <complex>
#include <functional>
#include <vector>

#include "bichro/pulse.hpp"
#include "bichro/transmon.hpp"

namespace bichro {

/// |d fbar / d Phi_ac| (and the dc counterpart) below this is a sweet spot:
/// 50 kHz / Phi0, in GHz / Phi0.
inline constexpr double kSweetSpotThreshold = 5e-5;
inline constexpr int kTimeDomainNodes = 2048;
inline constexpr int kSidebandNodes = 4096;
/// Finite-difference step for flux sensitivities, Phi0.
inline constexpr double kSensitivityStep = 1e-4;

/// Options for the closed-form average. Terms are summed until two
/// consecutive harmonics in theta are bounded by `stop_ghz`; `max_harmonic`
/// caps the sum and reaching it with a live tail raises CutoffTooSmall.
struct BesselOptions {
    int max_harmonic = 64;
    double stop_ghz = 1e-10;
    double cutoff_error_ghz = 1e-9;  // 1 Hz
};

/// One-period average of the instantaneous transition frequency by composite
/// Simpson quadrature with direct diagonalization at every node (u = 1).
double avg_frequency_timedomain(const TransmonSpec &spec, const BichromaticPulse &pulse,
                                Transition which = Transition::kF01,
                                int nodes = kTimeDomainNodes);

/// Closed-form average from the cosine series of f(phi):
///   fbar = sum_m nu_m cos(m theta),
///   nu_m = sum_n F_n cos(n phi_dc + (p+1) m pi/2) (2 - delta_m0) J_{pm}(n phi_1) J_m(n phi_p).
double avg_frequency_bessel(const FourierSeries &series, const BichromaticPulse &pulse,
                            const BesselOptions &opts = {});

/// The theta-harmonics nu_m, m = 0..count-1, of the closed-form average.
std::vector<double> theta_harmonics(const FourierSeries &series, const BichromaticPulse &pulse,
                                    int count);

struct Sensitivity {
    double d_dc = 0.0;  // GHz / Phi0
    double d_ac = 0.0;  // GHz / Phi0
};

/// Central differences of fbar (step 1e-4 Phi0) with one Richardson step.
Sensitivity sensitivities(const TransmonModel &model, const BichromaticPulse &pulse);

struct NoiseModel {
    double a_dc = 0.0;
    double a_ac = 0.0;
};

double dephasing_proxy(const Sensitivity &sens, const NoiseModel &noise);

struct OperatingPoint {
    BichromaticPulse pulse;
    double f_bar = 0.0;
    double d_dc = 0.0;
    double d_ac = 0.0;
    bool is_sweet_spot = false;
};

OperatingPoint evaluate_operating_point(const TransmonModel &model, const BichromaticPulse &pulse);

struct SweetSpotOptions {
    double phi_ac_min = 0.05;
    double phi_ac_max = 0.9;
    double scan_step = 0.005;
    double tolerance = 1e-6;
    double f_m_mhz = 100.0;  // carried into returned pulses; fbar does not depend on it
};

struct SweetSpot {
    double phi_ac = 0.0;
    double f_bar = 0.0;
};

/// All zeros of d fbar / d Phi_ac in the search window. Throws NoRoot when
/// the sensitivity never changes sign there.
std::vector<SweetSpot> sweet_spot_solve(const TransmonModel &model, double phi_dc, int p,
                                        double alpha, double theta,
                                        const SweetSpotOptions &opts = {});

struct AtlasNode {
    std::size_t alpha_index = 0;
    std::size_t theta_index = 0;
    OperatingPoint point;
};

struct SweetSpotAtlas {
    std::vector<AtlasNode> nodes;  // ordered by (alpha_index, theta_index, phi_ac)
    double f_bar_min = 0.0;
    double f_bar_max = 0.0;
    double span() const { return nodes.empty() ? 0.0 : f_bar_max - f_bar_min; }
};

SweetSpotAtlas sweet_spot_atlas(const TransmonModel &model, double phi_dc, int p,
                                const std::vector<double> &alphas,
                                const std::vector<double> &thetas, int jobs = 1,
                                const SweetSpotOptions &opts = {});

struct SidebandEntry {
    int k = 0;
    std::complex<double> epsilon;
    double f_k = 0.0;  // GHz
};

struct SidebandSpectrum {
    double f_bar = 0.0;  // GHz
    double f_m_mhz = 0.0;
    std::vector<SidebandEntry> entries;  // ascending k

    const SidebandEntry &at(int k) const;
    double total_weight() const;
};

/// Relative coupling g(Phi) / g as a function of flux in Phi0.
using CouplingCurve = std::function<double(double)>;

/// Sideband weights of a periodic frequency trajectory. `frequency(s)` and
/// `coupling(s)` are given at fractional period s in [0, 1); the accumulated
/// phase uses composite Simpson on `nodes` intervals.
SidebandSpectrum sideband_weights_of_trajectory(const std::function<double(double)> &frequency,
                                                const std::function<double(double)> &coupling,
                                                double f_m_mhz, int k_min, int k_max,
                                                int nodes = kSidebandNodes);

/// Weights eps_k = g_k / g of the sidebands of `which` under `pulse`.
SidebandSpectrum sideband_weights(const TransmonModel &model, const BichromaticPulse &pulse,
                                  int k_min, int k_max, Transition which = Transition::kF01,
                                  const CouplingCurve &coupling = {},
                                  int nodes = kSidebandNodes);

}  // namespace bichro
