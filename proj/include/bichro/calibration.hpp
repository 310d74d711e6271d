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

#include <cstdint>
#include <random>
#include <vector>

#include "bichro/modulation.hpp"
#include "bichro/pulse.hpp"
#include "bichro/transmon.hpp"

namespace bichro {

/// Seeded Gaussian noise source. One stream per concurrent experiment.
class NoiseStream {
   public:
    explicit NoiseStream(std::uint64_t seed) : engine_(seed) {}

    double gaussian(double sigma);
    double uniform(double lo, double hi);

   private:
    std::mt19937_64 engine_;
};

struct RamseyResult {
    double f_bar = 0.0;           // GHz
    double uncertainty_khz = 0.0;
};

/// AWG and flux line with a hidden clock-LO phase and a hidden amplitude
/// transfer function. The only observable is the virtual Ramsey detuning.
class VirtualHardware {
   public:
    VirtualHardware(const TransmonSpec &spec, double hidden_theta0, TransferFunction hidden_tf,
                    double noise_sigma_khz = 0.0, bool randomize_theta0 = false);

    const TransmonSpec &spec() const { return spec_; }
    double noise_sigma_khz() const { return sigma_khz_; }
    bool randomizes_theta0() const { return randomize_theta0_; }

    /// Plays `requested` through the hidden line and AWG phase and returns the
    /// time-averaged f01 plus Gaussian noise. Throws OutOfBand when a tone
    /// falls outside the line's support.
    RamseyResult ramsey(const BichromaticPulse &requested, NoiseStream &noise) const;

   private:
    TransmonSpec spec_;
    double theta0_;
    TransferFunction tf_;
    double sigma_khz_;
    bool randomize_theta0_;
};

RamseyResult virtual_ramsey(const VirtualHardware &hw, const BichromaticPulse &requested,
                            NoiseStream &noise);

/// Fixed-amplitude probe whose theta is swept.
struct Theta0Probe {
    int p = 3;
    double alpha = 0.25 * 3.14159265358979323846;
    double phi_ac = 0.4;
    double f_m_mhz = 100.0;
    double phi_dc = 0.0;
};

struct Theta0Estimate {
    double theta0 = 0.0;        // principal value in [-w/2, w/2), w = branch_width
    double branch_width = 0.0;  // 2 pi / (p - 1); theta0 is only known modulo this
    double fundamental_ghz = 0.0;
    double residual_rms_ghz = 0.0;
    std::vector<double> per_probe;  // individual estimates for the median variant
};

/// Sweeps theta, fits harmonics m = 0..4 by linear least squares and maps
/// the phase of the m = 1 component, (1 - p) theta0, back to theta0.
Theta0Estimate calibrate_theta0(const VirtualHardware &hw, const TransmonModel &model,
                                const Theta0Probe &probe, const std::vector<double> &theta_grid,
                                NoiseStream &noise);

/// Median of per-probe estimates (e.g. five amplitudes), taken on the branch circle.
Theta0Estimate calibrate_theta0_median(const VirtualHardware &hw, const TransmonModel &model,
                                       const std::vector<Theta0Probe> &probes,
                                       const std::vector<double> &theta_grid, NoiseStream &noise);

struct TransferCalibration {
    TransferFunction tf;
    std::vector<double> probe_mhz;
    std::vector<double> measured_f_bar;  // GHz
    std::vector<double> delivered_phi_ac;
};

/// Monochromatic probes at each frequency; the delivered amplitude is found by
/// inverting the model's fbar(Phi_ac) on its monotone branch.
TransferCalibration calibrate_transfer_function(const VirtualHardware &hw,
                                                const TransmonModel &model,
                                                std::vector<double> probe_mhz,
                                                double probe_phi_ac, NoiseStream &noise);

/// Pulse to request so that a line with clock phase `theta0` and transfer
/// function `tf` delivers `desired`.
BichromaticPulse compensate(const BichromaticPulse &desired, double theta0,
                            const TransferFunction &tf);

}  // namespace bichro
