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

#include <utility>
#include <vector>

namespace bichro {

/// Wraps an angle onto [-pi, pi).
double wrap_phase(double angle);

/// Signed distance a - b on the circle, in [-pi, pi).
double phase_difference(double a, double b);

/// Flat-top envelope with error-function edges.
///
/// Each edge is an erf step centred at rise_time/2 with standard deviation
/// rise_time/5, affinely rescaled so the edge starts at exactly 0 and ends at
/// exactly 1.
struct EnvelopeSpec {
    double flat_duration_ns = 0.0;
    double rise_time_ns = 0.0;

    double total_duration_ns() const { return flat_duration_ns + 2.0 * rise_time_ns; }
    double operator()(double t_ns) const;
    void validate() const;
};

/// Two-tone flux drive:
///   Phi(t) = phi_dc + phi_ac u(t) [cos(alpha) cos(2 pi f_m t) + sin(alpha) cos(2 pi p f_m t + theta)]
/// Fluxes in Phi0, f_m in MHz, angles in radians, t in ns.
struct BichromaticPulse {
    double phi_dc = 0.0;
    double phi_ac = 0.0;
    double alpha = 0.0;
    int p = 3;
    double f_m_mhz = 100.0;
    double theta = 0.0;
    EnvelopeSpec envelope{};

    void validate() const;

    /// Steady-state flux with u = 1.
    double steady_flux(double t_ns) const;
    /// Flux including the envelope.
    double flux(double t_ns) const;

    double first_tone_amplitude() const;
    double second_tone_amplitude() const;
    double modulation_period_ns() const { return 1e3 / f_m_mhz; }

    /// Same pulse with the given tone amplitudes (Phi0); alpha and phi_ac are
    /// recomputed from the pair.
    BichromaticPulse with_tone_amplitudes(double first, double second) const;
    BichromaticPulse with_theta(double new_theta) const;
};

struct Waveform {
    double sample_rate_gsps = 0.0;
    std::vector<double> samples;
    /// [flat_begin, flat_end) indices on which u(t) = 1.
    std::size_t flat_begin = 0;
    std::size_t flat_end = 0;

    double time_ns(std::size_t i) const { return static_cast<double>(i) / sample_rate_gsps; }
};

/// Samples `pulse` over its full envelope. Throws AliasingRisk unless
/// sample_rate >= 10 p f_m.
Waveform synthesize(const BichromaticPulse &pulse, double sample_rate_gsps);

/// Amplitude of the `freq_mhz` component over samples [begin, begin + count).
double tone_amplitude(const Waveform &wf, double freq_mhz, std::size_t begin, std::size_t count);

struct ToneRatio {
    /// A(p f_m) / A(f_m), or A(f_m) / A(p f_m) when `inverted`.
    double ratio = 0.0;
    bool inverted = false;
};

/// Measures the tone balance on the flat segment using the largest whole
/// number of f_m periods available. Throws InsufficientWindow with fewer
/// than 8 periods.
ToneRatio tone_ratio(const Waveform &wf, double f_m_mhz, int p);

/// theta' = theta + (1 - p) beta after a global phase shift beta.
double effective_theta_after_shift(double theta, double beta, int p);

/// Phase to program so that an instrument with clock phase theta0 delivers
/// `theta_desired`.
double precompensate_theta(double theta_desired, double theta0, int p);

/// Relative amplitude transmission of a flux line vs frequency, interpolated
/// with a monotone (Fritsch-Carlson) cubic. Extrapolation is rejected.
class TransferFunction {
   public:
    TransferFunction() = default;
    TransferFunction(std::vector<double> freqs_mhz, std::vector<double> transmissions);

    static TransferFunction flat(double f_lo_mhz, double f_hi_mhz);

    double operator()(double f_mhz) const;
    bool in_band(double f_mhz) const;
    const std::vector<double> &frequencies() const { return freqs_; }
    const std::vector<double> &transmissions() const { return values_; }

   private:
    std::vector<double> freqs_;
    std::vector<double> values_;
    std::vector<double> slopes_;
};

/// Per-tone amplitude multipliers (1/T(f_m), 1/T(p f_m)). The second tone is
/// only looked up when it carries amplitude.
struct ToneScales {
    double first = 1.0;
    double second = 1.0;
};

ToneScales apply_transfer_compensation(const BichromaticPulse &pulse, const TransferFunction &tf);

/// Pulse as seen after the line: tone amplitudes multiplied by T(f).
BichromaticPulse through_line(const BichromaticPulse &pulse, const TransferFunction &tf);

/// Pulse with each tone pre-scaled by `scales`.
BichromaticPulse scaled(const BichromaticPulse &pulse, const ToneScales &scales);

}  // namespace bichro
