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

#include "bichro/calibration.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bichro/errors.hpp"
#include "gsl_util.hpp"

namespace bichro {

namespace {

constexpr int kThetaHarmonics = 4;
constexpr int kMinThetaPoints = 16;
// The periodic Simpson average is converged to ~1e-14 GHz well before this.
constexpr int kRamseyNodes = 512;

}  // namespace

double NoiseStream::gaussian(double sigma) {
    if (sigma <= 0.0) return 0.0;
    return std::normal_distribution<double>(0.0, sigma)(engine_);
}

double NoiseStream::uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

VirtualHardware::VirtualHardware(const TransmonSpec &spec, double hidden_theta0,
                                 TransferFunction hidden_tf, double noise_sigma_khz,
                                 bool randomize_theta0)
    : spec_(spec),
      theta0_(wrap_phase(hidden_theta0)),
      tf_(std::move(hidden_tf)),
      sigma_khz_(noise_sigma_khz),
      randomize_theta0_(randomize_theta0) {
    spec_.validate();
    if (sigma_khz_ < 0.0) throw InvalidArgument("measurement noise sigma must be >= 0");
}

RamseyResult VirtualHardware::ramsey(const BichromaticPulse &requested, NoiseStream &noise) const {
    requested.validate();
    const double theta0 =
        randomize_theta0_ ? noise.uniform(-std::numbers::pi, std::numbers::pi) : theta0_;
    BichromaticPulse delivered = through_line(requested, tf_);
    delivered = delivered.with_theta(effective_theta_after_shift(requested.theta, theta0, requested.p));
    const double ideal = avg_frequency_timedomain(spec_, delivered, Transition::kF01, kRamseyNodes);
    return {ideal + noise.gaussian(sigma_khz_ * 1e-6), sigma_khz_};
}

RamseyResult virtual_ramsey(const VirtualHardware &hw, const BichromaticPulse &requested,
                            NoiseStream &noise) {
    return hw.ramsey(requested, noise);
}

Theta0Estimate calibrate_theta0(const VirtualHardware &hw, const TransmonModel &model,
                                const Theta0Probe &probe, const std::vector<double> &theta_grid,
                                NoiseStream &noise) {
    if (probe.p < 3 || probe.p % 2 == 0) {
        throw InvalidArgument("theta0 is only observable with an odd p >= 3");
    }
    const int n = static_cast<int>(theta_grid.size());
    if (n < kMinThetaPoints) {
        std::ostringstream os;
        os << "theta sweep needs at least " << kMinThetaPoints << " points (got " << n << ")";
        throw InvalidArgument(os.str());
    }
    const auto [lo_it, hi_it] = std::minmax_element(theta_grid.begin(), theta_grid.end());
    const double coverage = *hi_it - *lo_it;
    if (coverage < 2.0 * std::numbers::pi * (1.0 - 1.0 / n) - 1e-9) {
        throw InvalidArgument("theta sweep must cover a full 2 pi period");
    }

    BichromaticPulse pulse;
    pulse.phi_dc = probe.phi_dc;
    pulse.phi_ac = probe.phi_ac;
    pulse.alpha = probe.alpha;
    pulse.p = probe.p;
    pulse.f_m_mhz = probe.f_m_mhz;

    Eigen::VectorXd y(n);
    Eigen::MatrixXd basis(n, 2 * kThetaHarmonics + 1);
    for (int i = 0; i < n; ++i) {
        const double th = theta_grid[i];
        y(i) = hw.ramsey(pulse.with_theta(th), noise).f_bar;
        basis(i, 0) = 1.0;
        for (int m = 1; m <= kThetaHarmonics; ++m) {
            basis(i, 2 * m - 1) = std::cos(m * th);
            basis(i, 2 * m) = std::sin(m * th);
        }
    }
    const double sigma_ghz = hw.noise_sigma_khz() * 1e-6;
    if (y.maxCoeff() - y.minCoeff() < 5.0 * std::max(sigma_ghz, 1e-9)) {
        std::ostringstream os;
        os << "fbar varies by " << (y.maxCoeff() - y.minCoeff()) * 1e6
           << " kHz over the sweep, below five times the measurement noise";
        throw FlatResponse(os.str());
    }
    const Eigen::VectorXd c = basis.colPivHouseholderQr().solve(y);

    // fbar = sum nu_m cos(m (theta + delta)): c1 = nu_1 cos(delta), s1 = -nu_1 sin(delta).
    // The sign of nu_1 comes from the model at the requested drive.
    const double nu1 = theta_harmonics(model.series(Transition::kF01), pulse, 2)[1];
    const double sign = nu1 < 0.0 ? -1.0 : 1.0;
    const double delta = std::atan2(-sign * c(2), sign * c(1));

    Theta0Estimate est;
    est.branch_width = 2.0 * std::numbers::pi / (probe.p - 1);
    est.theta0 = wrap_phase(-delta) / (probe.p - 1);
    est.fundamental_ghz = std::hypot(c(1), c(2));
    est.residual_rms_ghz = std::sqrt((basis * c - y).squaredNorm() / n);
    est.per_probe = {est.theta0};
    return est;
}

Theta0Estimate calibrate_theta0_median(const VirtualHardware &hw, const TransmonModel &model,
                                       const std::vector<Theta0Probe> &probes,
                                       const std::vector<double> &theta_grid, NoiseStream &noise) {
    if (probes.empty()) throw InvalidArgument("median calibration needs at least one probe");
    std::vector<Theta0Estimate> runs;
    for (const auto &probe : probes) runs.push_back(calibrate_theta0(hw, model, probe, theta_grid, noise));

    const double width = runs.front().branch_width;
    for (const auto &r : runs) {
        if (r.branch_width != width) throw InvalidArgument("median probes must share p");
    }
    // Unwrap onto a window centred on the first estimate before ordering.
    const double ref = runs.front().theta0;
    std::vector<double> values;
    for (const auto &r : runs) {
        double v = r.theta0;
        v -= width * std::round((v - ref) / width);
        values.push_back(v);
    }
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    double med = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    med -= width * std::floor((med + 0.5 * width) / width);

    Theta0Estimate out = runs[n / 2];
    out.theta0 = med;
    out.per_probe = values;
    return out;
}

TransferCalibration calibrate_transfer_function(const VirtualHardware &hw,
                                                const TransmonModel &model,
                                                std::vector<double> probe_mhz,
                                                double probe_phi_ac, NoiseStream &noise) {
    if (probe_mhz.size() < 2) throw InvalidArgument("transfer calibration needs >= 2 probe frequencies");
    std::sort(probe_mhz.begin(), probe_mhz.end());
    if (!(probe_phi_ac > 0.0)) throw InvalidArgument("probe amplitude must be positive");

    const auto &series = model.series(Transition::kF01);
    auto model_fbar = [&](double a) {
        BichromaticPulse mono;
        mono.p = 1;
        mono.phi_ac = a;
        return avg_frequency_bessel(series, mono);
    };
    SweetSpotOptions window;
    window.phi_ac_min = 0.05;
    const double bound = sweet_spot_solve(model, 0.0, 1, 0.0, 0.0, window).front().phi_ac;
    if (probe_phi_ac >= bound) {
        std::ostringstream os;
        os << "probe amplitude " << probe_phi_ac << " Phi0 is beyond the monotone region (< "
           << bound << " Phi0) of the detuning-vs-amplitude map";
        throw NonMonotoneRegion(os.str());
    }
    const double f_top = model_fbar(0.0);
    const double f_floor = model_fbar(bound);

    TransferCalibration out;
    std::vector<double> transmissions;
    for (double f : probe_mhz) {
        BichromaticPulse mono;
        mono.p = 1;
        mono.alpha = 0.0;
        mono.phi_ac = probe_phi_ac;
        mono.f_m_mhz = f;
        const double measured = hw.ramsey(mono, noise).f_bar;
        if (measured < f_floor) {
            std::ostringstream os;
            os << "detuning at " << f << " MHz is past the sweet spot; the delivered amplitude "
               << "cannot be inverted";
            throw NonMonotoneRegion(os.str());
        }
        const double delivered =
            measured >= f_top
                ? 0.0
                : detail::brent_root([&](double a) { return model_fbar(a) - measured; }, 0.0, bound, 1e-14);
        out.probe_mhz.push_back(f);
        out.measured_f_bar.push_back(measured);
        out.delivered_phi_ac.push_back(delivered);
        transmissions.push_back(delivered / probe_phi_ac);
    }
    out.tf = TransferFunction(out.probe_mhz, transmissions);
    return out;
}

BichromaticPulse compensate(const BichromaticPulse &desired, double theta0,
                            const TransferFunction &tf) {
    const ToneScales scales = apply_transfer_compensation(desired, tf);
    BichromaticPulse out = scaled(desired, scales);
    return out.with_theta(precompensate_theta(desired.theta, theta0, desired.p));
}

}  // namespace bichro
