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
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "bichro/modulation.hpp"
#include "bichro/transmon.hpp"

namespace bichro {

/// Native parametric gates between a modulated qubit and a static neighbor.
///  - CZ02:  modulated f12 sideband on the neighbor's f01 (|11> <-> |02>-type exchange)
///  - CZ20:  modulated f01 sideband on the neighbor's f12
///  - iSWAP: modulated f01 sideband on the neighbor's f01
enum class GateType { kCZ02, kCZ20, kISwap };

std::string to_string(GateType gate);
GateType gate_type_from_string(const std::string &name);

/// Which transition of the modulated qubit carries the activating sideband.
Transition ladder_of(GateType gate);

struct PairSpec {
    TransmonSpec modulated;
    double neighbor_f01 = 0.0;  // GHz
    double neighbor_f12 = 0.0;  // GHz
    double g_mhz = 0.0;

    void validate() const;
    /// Neighbor transition the activating sideband must hit.
    double target_of(GateType gate) const;
};

/// Sideband-frequency gap below which a spurious resonance is reported, MHz.
inline constexpr double kDefaultCollisionBandwidthMhz = 10.0;
inline constexpr int kCollisionSidebandReach = 10;

/// f_m (MHz) that puts sideband k of a ladder centred at `f_bar` (GHz) on
/// `f_target` (GHz). Throws WrongSideband if k points the wrong way.
double resonance_fm(double f_bar, int k, double f_target);

/// Gate/sideband pair keyed for resonance tables.
struct ResonanceKey {
    GateType gate;
    int k;
    auto operator<=>(const ResonanceKey &) const = default;
};

/// Modulation frequencies of every reachable (gate, k) at an operating point.
std::map<ResonanceKey, double> enumerate_resonances(
    const TransmonModel &model, const PairSpec &pair, const OperatingPoint &point,
    const std::vector<int> &k_set, double max_fm_mhz = std::numeric_limits<double>::infinity());

struct CollisionReport {
    std::string offender;   // e.g. "iSWAP k=-4" or "TLS 4.2500 GHz"
    Transition ladder = Transition::kF01;
    int j = 0;              // offending sideband index
    double target_ghz = 0.0;
    double frequency_gap_mhz = 0.0;  // f_j - target
    double fm_gap_mhz = 0.0;         // equivalent detuning in f_m, gap / |j| (gap when j = 0)
    double bandwidth_mhz = 0.0;
};

struct GatePlan {
    GateType gate_type = GateType::kCZ02;
    int k = 0;
    OperatingPoint operating_point;  // pulse.f_m_mhz is the resonant f_m
    double f_bar_12 = 0.0;           // GHz
    double f_m_mhz = 0.0;
    std::complex<double> epsilon;
    double g_eff_mhz = 0.0;
    double duration_ns = 0.0;
    std::vector<CollisionReport> collisions;

    double f_bar(Transition ladder) const {
        return ladder == Transition::kF01 ? operating_point.f_bar : f_bar_12;
    }
};

/// Flags sidebands j != k (|j| <= 10, both ladders, symmetry-allowed only)
/// landing within `bandwidth_mhz` of a neighbor transition or a TLS.
std::vector<CollisionReport> check_collisions(const GatePlan &plan, const PairSpec &pair,
                                              const std::vector<double> &tls_ghz,
                                              double bandwidth_mhz);

double effective_coupling(double g_mhz, std::complex<double> epsilon_k, GateType gate);

/// Flat-top interaction time, ns: a full |11> cycle 1/(2 g_eff) for CZ and a
/// full transfer 1/(4 g_eff) for iSWAP.
double gate_duration(double g_eff_mhz, GateType gate);

/// Builds a gate plan at a given operating point: solves the resonance,
/// computes the sideband weight at the resonant f_m and checks collisions.
GatePlan plan_gate(const TransmonModel &model, const PairSpec &pair, const BichromaticPulse &pulse,
                   GateType gate, int k, double bandwidth_mhz = kDefaultCollisionBandwidthMhz,
                   const std::vector<double> &tls_ghz = {});

struct ChevronMap {
    std::vector<double> fm_mhz;
    std::vector<double> duration_ns;
    std::vector<double> population;  // row-major, duration index major

    double at(std::size_t duration_index, std::size_t fm_index) const {
        return population[duration_index * fm_mhz.size() + fm_index];
    }
};

/// Resonant two-level transfer with coupling g_eff and detuning k (f_m - f_m0):
///   P = g^2 / (g^2 + (delta/2)^2) sin^2(2 pi sqrt(g^2 + (delta/2)^2) t)
ChevronMap chevron_simulate(double g_eff_mhz, const std::vector<double> &fm_grid_mhz,
                            const std::vector<double> &duration_grid_ns, double fm0_mhz, int k);

struct ChevronFit {
    double resonance_fm_mhz = 0.0;
    double full_transfer_ns = 0.0;
    double fwhm_fm_mhz = 0.0;  // full width at half maximum along f_m at the transfer time
};

ChevronFit fit_chevron(const ChevronMap &map);

/// FWHM of the transfer at t = 1/(4 g_eff), in f_m units.
double chevron_fwhm(double g_eff_mhz, int k);

struct OptimizeRequest {
    GateType gate = GateType::kCZ02;
    int k = -2;
    int p = 3;
    double phi_dc = 0.0;
    double alpha_min = 0.0;
    double alpha_max = 0.5 * 3.14159265358979323846;
    double theta_min = -3.14159265358979323846;
    double theta_max = 3.14159265358979323846;
    int alpha_points = 64;
    int theta_points = 64;
    double max_fm_mhz = std::numeric_limits<double>::infinity();
    double bandwidth_mhz = kDefaultCollisionBandwidthMhz;
    std::vector<double> tls_ghz;
    bool refine = true;
    int jobs = 1;
};

/// Maximizes |eps_k| over the sweet-spot manifold: coarse (alpha, theta)
/// grid, then Nelder-Mead from the best feasible node. Candidates whose
/// resonance exceeds max_fm or that collide are rejected.
GatePlan optimize_weight(const TransmonModel &model, const PairSpec &pair,
                         const OptimizeRequest &request);

}  // namespace bichro
