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

#include "bichro/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "bichro/errors.hpp"

namespace bichro {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMinTonePeriods = 8;

}  // namespace

double wrap_phase(double angle) {
    double w = std::fmod(angle + std::numbers::pi, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    w -= std::numbers::pi;
    // fmod can land exactly on +pi after the shift for inputs just below -pi.
    return w >= std::numbers::pi ? -std::numbers::pi : w;
}

double phase_difference(double a, double b) { return wrap_phase(a - b); }

double EnvelopeSpec::operator()(double t_ns) const {
    const double total = total_duration_ns();
    if (t_ns < 0.0 || t_ns > total) return 0.0;
    if (rise_time_ns <= 0.0) return 1.0;
    const double sigma = rise_time_ns / 5.0;
    auto step = [&](double t) {
        return 0.5 * (1.0 + std::erf((t - 0.5 * rise_time_ns) / (sigma * std::numbers::sqrt2)));
    };
    const double lo = step(0.0);
    const double hi = step(rise_time_ns);
    auto edge = [&](double t) { return (step(t) - lo) / (hi - lo); };
    if (t_ns < rise_time_ns) return edge(t_ns);
    if (t_ns > total - rise_time_ns) return edge(total - t_ns);
    return 1.0;
}

void EnvelopeSpec::validate() const {
    if (!(flat_duration_ns >= 0.0) || !(rise_time_ns >= 0.0)) {
        throw InvalidArgument("envelope durations must be non-negative");
    }
}

void BichromaticPulse::validate() const {
    if (p < 1 || p % 2 == 0) {
        std::ostringstream os;
        os << "frequency multiplier p must be an odd positive integer (got " << p << ")";
        throw InvalidArgument(os.str());
    }
    if (!(phi_ac >= 0.0)) throw InvalidArgument("phi_ac must be non-negative");
    if (!(alpha >= 0.0 && alpha <= 0.5 * std::numbers::pi + 1e-12)) {
        throw InvalidArgument("mixing angle alpha must lie in [0, pi/2]");
    }
    if (!(f_m_mhz > 0.0)) throw InvalidArgument("modulation frequency must be positive");
    if (!std::isfinite(phi_dc) || !std::isfinite(theta)) {
        throw InvalidArgument("phi_dc and theta must be finite");
    }
    envelope.validate();
}

double BichromaticPulse::steady_flux(double t_ns) const {
    const double w = kTwoPi * f_m_mhz * 1e-3 * t_ns;
    return phi_dc + phi_ac * (std::cos(alpha) * std::cos(w) + std::sin(alpha) * std::cos(p * w + theta));
}

double BichromaticPulse::flux(double t_ns) const {
    const double u = envelope(t_ns);
    return phi_dc + u * (steady_flux(t_ns) - phi_dc);
}

double BichromaticPulse::first_tone_amplitude() const { return phi_ac * std::cos(alpha); }
double BichromaticPulse::second_tone_amplitude() const { return phi_ac * std::sin(alpha); }

BichromaticPulse BichromaticPulse::with_tone_amplitudes(double first, double second) const {
    BichromaticPulse out = *this;
    out.phi_ac = std::hypot(first, second);
    out.alpha = out.phi_ac > 0.0 ? std::atan2(second, first) : alpha;
    return out;
}

BichromaticPulse BichromaticPulse::with_theta(double new_theta) const {
    BichromaticPulse out = *this;
    out.theta = wrap_phase(new_theta);
    return out;
}

Waveform synthesize(const BichromaticPulse &pulse, double sample_rate_gsps) {
    pulse.validate();
    const double needed = 10.0 * pulse.p * pulse.f_m_mhz * 1e-3;
    if (!(sample_rate_gsps >= needed)) {
        std::ostringstream os;
        os << "sample rate " << sample_rate_gsps << " GS/s is below the 10 p f_m margin ("
           << needed << " GS/s)";
        throw AliasingRisk(os.str());
    }
    Waveform wf;
    wf.sample_rate_gsps = sample_rate_gsps;
    const double total = pulse.envelope.total_duration_ns();
    const auto n = static_cast<std::size_t>(std::floor(total * sample_rate_gsps)) + 1;
    wf.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) wf.samples[i] = pulse.flux(wf.time_ns(i));

    const double rise = pulse.envelope.rise_time_ns;
    wf.flat_begin = static_cast<std::size_t>(std::ceil(rise * sample_rate_gsps));
    wf.flat_end = static_cast<std::size_t>(std::floor((total - rise) * sample_rate_gsps)) + 1;
    wf.flat_end = std::min(wf.flat_end, n);
    if (wf.flat_end < wf.flat_begin) wf.flat_end = wf.flat_begin;
    return wf;
}

double tone_amplitude(const Waveform &wf, double freq_mhz, std::size_t begin, std::size_t count) {
    if (count == 0 || begin + count > wf.samples.size()) {
        throw InvalidArgument("tone_amplitude window exceeds the waveform");
    }
    double mean = 0.0;
    for (std::size_t i = 0; i < count; ++i) mean += wf.samples[begin + i];
    mean /= static_cast<double>(count);
    std::complex<double> acc{0.0, 0.0};
    const double w = kTwoPi * freq_mhz * 1e-3;
    for (std::size_t i = 0; i < count; ++i) {
        const double t = wf.time_ns(begin + i);
        acc += (wf.samples[begin + i] - mean) * std::polar(1.0, -w * t);
    }
    return 2.0 * std::abs(acc) / static_cast<double>(count);
}

ToneRatio tone_ratio(const Waveform &wf, double f_m_mhz, int p) {
    if (!(f_m_mhz > 0.0)) throw InvalidArgument("tone_ratio needs a positive f_m");
    const double samples_per_period = wf.sample_rate_gsps * 1e3 / f_m_mhz;
    const double flat = static_cast<double>(wf.flat_end - wf.flat_begin);
    const int periods = static_cast<int>(std::floor(flat / samples_per_period));
    if (periods < kMinTonePeriods) {
        std::ostringstream os;
        os << "flat segment holds " << periods << " periods of f_m; at least " << kMinTonePeriods
           << " are required";
        throw InsufficientWindow(os.str());
    }
    const auto count = static_cast<std::size_t>(std::llround(periods * samples_per_period));
    const double a1 = tone_amplitude(wf, f_m_mhz, wf.flat_begin, count);
    const double ap = tone_amplitude(wf, p * f_m_mhz, wf.flat_begin, count);
    if (a1 <= 1e-12 * std::max(ap, 1e-300) && ap > 0.0) return {a1 / ap, true};
    if (a1 == 0.0) return {0.0, false};
    return {ap / a1, false};
}

double effective_theta_after_shift(double theta, double beta, int p) {
    return wrap_phase(theta + (1.0 - p) * beta);
}

double precompensate_theta(double theta_desired, double theta0, int p) {
    return wrap_phase(theta_desired + (p - 1.0) * theta0);
}

TransferFunction::TransferFunction(std::vector<double> freqs_mhz, std::vector<double> transmissions)
    : freqs_(std::move(freqs_mhz)), values_(std::move(transmissions)) {
    const std::size_t n = freqs_.size();
    if (n < 2 || values_.size() != n) {
        throw InvalidArgument("transfer function needs >= 2 (frequency, transmission) samples");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(values_[i] > 0.0)) throw InvalidArgument("transmissions must be positive");
        if (i > 0 && !(freqs_[i] > freqs_[i - 1])) {
            throw InvalidArgument("transfer-function frequencies must be strictly increasing");
        }
    }
    // Fritsch-Carlson slopes.
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = freqs_[i + 1] - freqs_[i];
        delta[i] = (values_[i + 1] - values_[i]) / h[i];
    }
    slopes_.assign(n, 0.0);
    slopes_[0] = delta[0];
    slopes_[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            slopes_[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            slopes_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (delta[i] == 0.0) {
            slopes_[i] = slopes_[i + 1] = 0.0;
            continue;
        }
        const double a = slopes_[i] / delta[i];
        const double b = slopes_[i + 1] / delta[i];
        const double s = a * a + b * b;
        if (s > 9.0) {
            const double tau = 3.0 / std::sqrt(s);
            slopes_[i] = tau * a * delta[i];
            slopes_[i + 1] = tau * b * delta[i];
        }
    }
}

TransferFunction TransferFunction::flat(double f_lo_mhz, double f_hi_mhz) {
    return TransferFunction({f_lo_mhz, f_hi_mhz}, {1.0, 1.0});
}

bool TransferFunction::in_band(double f_mhz) const {
    return !freqs_.empty() && f_mhz >= freqs_.front() && f_mhz <= freqs_.back();
}

double TransferFunction::operator()(double f_mhz) const {
    if (!in_band(f_mhz)) {
        std::ostringstream os;
        os << f_mhz << " MHz is outside the transfer-function support";
        if (!freqs_.empty()) os << " [" << freqs_.front() << ", " << freqs_.back() << "] MHz";
        throw OutOfBand(os.str());
    }
    auto it = std::upper_bound(freqs_.begin(), freqs_.end(), f_mhz);
    std::size_t i = it == freqs_.begin() ? 0 : static_cast<std::size_t>(it - freqs_.begin()) - 1;
    if (i + 1 >= freqs_.size()) return values_.back();
    const double h = freqs_[i + 1] - freqs_[i];
    const double s = (f_mhz - freqs_[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * values_[i] + (s3 - 2 * s2 + s) * h * slopes_[i] +
           (-2 * s3 + 3 * s2) * values_[i + 1] + (s3 - s2) * h * slopes_[i + 1];
}

ToneScales apply_transfer_compensation(const BichromaticPulse &pulse, const TransferFunction &tf) {
    ToneScales out;
    out.first = 1.0 / tf(pulse.f_m_mhz);
    if (pulse.second_tone_amplitude() != 0.0) out.second = 1.0 / tf(pulse.p * pulse.f_m_mhz);
    return out;
}

BichromaticPulse scaled(const BichromaticPulse &pulse, const ToneScales &scales) {
    return pulse.with_tone_amplitudes(pulse.first_tone_amplitude() * scales.first,
                                      pulse.second_tone_amplitude() * scales.second);
}

BichromaticPulse through_line(const BichromaticPulse &pulse, const TransferFunction &tf) {
    const double t1 = tf(pulse.f_m_mhz);
    const double tp = pulse.second_tone_amplitude() != 0.0 ? tf(pulse.p * pulse.f_m_mhz) : 1.0;
    return pulse.with_tone_amplitudes(pulse.first_tone_amplitude() * t1,
                                      pulse.second_tone_amplitude() * tp);
}

}  // namespace bichro
