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

#include "bichro/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bichro/bessel.hpp"
#include "bichro/errors.hpp"
#include "bichro/parallel.hpp"
#include "gsl_util.hpp"

namespace bichro {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kInitialHarmonics = 16;

struct Drive {
    double phi_dc;
    double phi_ac;  // may be negative inside finite differences
    double alpha;
    double theta;
    int p;
};

Drive drive_of(const BichromaticPulse &pulse) {
    return {pulse.phi_dc, pulse.phi_ac, pulse.alpha, pulse.theta, pulse.p};
}

// cos(a + q pi/2) for integer q without evaluating a second cosine.
double cos_quarter_shift(double cos_a, double sin_a, int q) {
    switch (((q % 4) + 4) % 4) {
        case 0: return cos_a;
        case 1: return -sin_a;
        case 2: return -cos_a;
        default: return sin_a;
    }
}

// nu_m for m = 0..m_cap plus a magnitude bound on each.
void accumulate_harmonics(const FourierSeries &series, const Drive &d, int m_cap,
                          std::vector<double> &nu, std::vector<double> &bound) {
    const double x1 = kTwoPi * d.phi_ac * std::cos(d.alpha);
    const double xp = kTwoPi * d.phi_ac * std::sin(d.alpha);
    const double dc = kTwoPi * d.phi_dc;
    nu.assign(static_cast<std::size_t>(m_cap) + 1, 0.0);
    bound.assign(static_cast<std::size_t>(m_cap) + 1, 0.0);
    std::vector<double> ja(static_cast<std::size_t>(d.p) * m_cap + 1);
    std::vector<double> jb(static_cast<std::size_t>(m_cap) + 1);
    for (int n = 0; n <= series.order(); ++n) {
        const double fn = series[n];
        if (fn == 0.0) continue;
        bessel_j_sequence(n * x1, ja);
        bessel_j_sequence(n * xp, jb);
        const double ca = std::cos(n * dc), sa = std::sin(n * dc);
        for (int m = 0; m <= m_cap; ++m) {
            const double jj = ja[static_cast<std::size_t>(d.p) * m] * jb[m];
            const double weight = (m == 0 ? 1.0 : 2.0) * fn;
            nu[m] += weight * cos_quarter_shift(ca, sa, (d.p + 1) * m) * jj;
            bound[m] += std::abs(weight * jj);
        }
    }
}

double closed_form(const FourierSeries &series, const Drive &d, const BesselOptions &opts) {
    std::vector<double> nu, bound;
    int m_cap = std::min(kInitialHarmonics, opts.max_harmonic);
    for (;;) {
        accumulate_harmonics(series, d, m_cap, nu, bound);
        const bool converged = bound[m_cap] < opts.stop_ghz && bound[m_cap - 1] < opts.stop_ghz;
        if (converged || m_cap >= opts.max_harmonic) {
            if (!converged && bound[m_cap] > opts.cutoff_error_ghz) {
                std::ostringstream os;
                os << "theta harmonic " << m_cap << " still contributes up to " << bound[m_cap]
                   << " GHz; raise the harmonic cutoff";
                throw CutoffTooSmall(os.str());
            }
            break;
        }
        m_cap = std::min(2 * m_cap, opts.max_harmonic);
    }
    double acc = 0.0;
    for (int m = 0; m <= m_cap; ++m) acc += nu[m] * std::cos(m * d.theta);
    return acc;
}

double richardson_derivative(const std::function<double(double)> &f, double x, double h) {
    const double coarse = (f(x + h) - f(x - h)) / (2.0 * h);
    const double fine = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    return (4.0 * fine - coarse) / 3.0;
}

double ac_sensitivity(const FourierSeries &series, Drive d) {
    const BesselOptions opts;
    return richardson_derivative(
        [&](double ac) {
            Drive shifted = d;
            shifted.phi_ac = ac;
            return closed_form(series, shifted, opts);
        },
        d.phi_ac, kSensitivityStep);
}

void check_drive(int p, double alpha) {
    if (p < 1 || p % 2 == 0) throw InvalidArgument("p must be an odd positive integer");
    if (!(alpha >= 0.0 && alpha <= 0.5 * std::numbers::pi + 1e-12)) {
        throw InvalidArgument("alpha must lie in [0, pi/2]");
    }
}

}  // namespace

double avg_frequency_timedomain(const TransmonSpec &spec, const BichromaticPulse &pulse,
                                Transition which, int nodes) {
    pulse.validate();
    spec.validate();
    if (nodes < 2 || nodes % 2 != 0) throw InvalidArgument("Simpson quadrature needs an even node count");
    const double period = pulse.modulation_period_ns();
    double acc = 0.0;
    for (int j = 0; j < nodes; ++j) {
        const double flux = pulse.steady_flux(period * j / nodes);
        const auto t = transition_frequencies(kTwoPi * flux, spec);
        const double f = which == Transition::kF01 ? t.f01 : t.f12;
        acc += (j % 2 == 0 ? 2.0 : 4.0) * f;
    }
    return acc / (3.0 * nodes);
}

double avg_frequency_bessel(const FourierSeries &series, const BichromaticPulse &pulse,
                            const BesselOptions &opts) {
    pulse.validate();
    if (opts.max_harmonic < 8) throw InvalidArgument("Bessel harmonic cutoff must be >= 8");
    return closed_form(series, drive_of(pulse), opts);
}

std::vector<double> theta_harmonics(const FourierSeries &series, const BichromaticPulse &pulse,
                                    int count) {
    pulse.validate();
    if (count < 1) throw InvalidArgument("theta_harmonics needs count >= 1");
    std::vector<double> nu, bound;
    accumulate_harmonics(series, drive_of(pulse), std::max(count - 1, 1), nu, bound);
    nu.resize(static_cast<std::size_t>(count));
    return nu;
}

Sensitivity sensitivities(const TransmonModel &model, const BichromaticPulse &pulse) {
    pulse.validate();
    const auto &series = model.series(Transition::kF01);
    const Drive d = drive_of(pulse);
    const BesselOptions opts;
    Sensitivity s;
    s.d_dc = richardson_derivative(
        [&](double dc) {
            Drive shifted = d;
            shifted.phi_dc = dc;
            return closed_form(series, shifted, opts);
        },
        d.phi_dc, kSensitivityStep);
    s.d_ac = ac_sensitivity(series, d);
    return s;
}

double dephasing_proxy(const Sensitivity &sens, const NoiseModel &noise) {
    if (noise.a_dc < 0.0 || noise.a_ac < 0.0) throw InvalidArgument("noise amplitudes must be >= 0");
    return std::hypot(noise.a_dc * sens.d_dc, noise.a_ac * sens.d_ac);
}

OperatingPoint evaluate_operating_point(const TransmonModel &model, const BichromaticPulse &pulse) {
    OperatingPoint op;
    op.pulse = pulse;
    op.f_bar = avg_frequency_bessel(model.series(Transition::kF01), pulse);
    const auto s = sensitivities(model, pulse);
    op.d_dc = s.d_dc;
    op.d_ac = s.d_ac;
    op.is_sweet_spot =
        std::abs(s.d_ac) < kSweetSpotThreshold && std::abs(s.d_dc) < kSweetSpotThreshold;
    return op;
}

std::vector<SweetSpot> sweet_spot_solve(const TransmonModel &model, double phi_dc, int p,
                                        double alpha, double theta, const SweetSpotOptions &opts) {
    check_drive(p, alpha);
    if (!(opts.phi_ac_min >= 0.0 && opts.phi_ac_max > opts.phi_ac_min && opts.scan_step > 0.0)) {
        throw InvalidArgument("invalid sweet-spot search window");
    }
    const auto &series = model.series(Transition::kF01);
    const Drive base{phi_dc, 0.0, alpha, wrap_phase(theta), p};
    auto slope = [&](double ac) {
        Drive d = base;
        d.phi_ac = ac;
        return ac_sensitivity(series, d);
    };

    const int steps =
        std::max(1, static_cast<int>(std::ceil((opts.phi_ac_max - opts.phi_ac_min) / opts.scan_step)));
    const double dx = (opts.phi_ac_max - opts.phi_ac_min) / steps;
    std::vector<SweetSpot> roots;
    double x_lo = opts.phi_ac_min;
    double s_lo = slope(x_lo);
    for (int i = 1; i <= steps; ++i) {
        const double x_hi = opts.phi_ac_min + i * dx;
        const double s_hi = slope(x_hi);
        if (s_lo == 0.0 || (s_lo < 0.0) != (s_hi < 0.0)) {
            const double root = detail::brent_root(slope, x_lo, x_hi, opts.tolerance);
            Drive d = base;
            d.phi_ac = root;
            if (roots.empty() || root - roots.back().phi_ac > opts.tolerance) {
                roots.push_back({root, closed_form(series, d, BesselOptions{})});
            }
        }
        x_lo = x_hi;
        s_lo = s_hi;
    }
    if (roots.empty()) {
        std::ostringstream os;
        os << "no sweet spot for alpha=" << alpha << ", theta=" << theta << " in Phi_ac ("
           << opts.phi_ac_min << ", " << opts.phi_ac_max << ")";
        throw NoRoot(os.str());
    }
    return roots;
}

SweetSpotAtlas sweet_spot_atlas(const TransmonModel &model, double phi_dc, int p,
                                const std::vector<double> &alphas,
                                const std::vector<double> &thetas, int jobs,
                                const SweetSpotOptions &opts) {
    const std::size_t na = alphas.size(), nt = thetas.size();
    std::vector<std::vector<AtlasNode>> slots(na * nt);
    detail::parallel_for(na * nt, jobs, [&](std::size_t idx) {
        const std::size_t ia = idx / nt, it = idx % nt;
        std::vector<SweetSpot> roots;
        try {
            roots = sweet_spot_solve(model, phi_dc, p, alphas[ia], thetas[it], opts);
        } catch (const NoRoot &) {
            return;
        }
        for (const auto &r : roots) {
            BichromaticPulse pulse;
            pulse.phi_dc = phi_dc;
            pulse.phi_ac = r.phi_ac;
            pulse.alpha = alphas[ia];
            pulse.p = p;
            pulse.theta = wrap_phase(thetas[it]);
            pulse.f_m_mhz = opts.f_m_mhz;
            slots[idx].push_back({ia, it, evaluate_operating_point(model, pulse)});
        }
    });
    SweetSpotAtlas atlas;
    for (auto &slot : slots) {
        for (auto &node : slot) atlas.nodes.push_back(std::move(node));
    }
    if (!atlas.nodes.empty()) {
        auto [lo, hi] = std::minmax_element(
            atlas.nodes.begin(), atlas.nodes.end(),
            [](const AtlasNode &a, const AtlasNode &b) { return a.point.f_bar < b.point.f_bar; });
        atlas.f_bar_min = lo->point.f_bar;
        atlas.f_bar_max = hi->point.f_bar;
    }
    return atlas;
}

const SidebandEntry &SidebandSpectrum::at(int k) const {
    auto it = std::find_if(entries.begin(), entries.end(),
                           [k](const SidebandEntry &e) { return e.k == k; });
    if (it == entries.end()) {
        std::ostringstream os;
        os << "sideband k=" << k << " is not in the computed range";
        throw InvalidArgument(os.str());
    }
    return *it;
}

double SidebandSpectrum::total_weight() const {
    double acc = 0.0;
    for (const auto &e : entries) acc += std::norm(e.epsilon);
    return acc;
}

SidebandSpectrum sideband_weights_of_trajectory(const std::function<double(double)> &frequency,
                                                const std::function<double(double)> &coupling,
                                                double f_m_mhz, int k_min, int k_max, int nodes) {
    if (k_min > k_max) throw InvalidArgument("empty sideband range");
    if (nodes < 16 || nodes % 2 != 0) throw InvalidArgument("sideband quadrature needs an even node count");
    if (!(f_m_mhz > 0.0)) throw InvalidArgument("modulation frequency must be positive");

    const auto n = static_cast<std::size_t>(nodes);
    std::vector<double> f(n + 1), mid(n);
    for (std::size_t j = 0; j < n; ++j) {
        f[j] = frequency(static_cast<double>(j) / nodes);
        mid[j] = frequency((j + 0.5) / nodes);
    }
    f[n] = f[0];

    // Integrate deviations from a first-pass mean so the phase does not pick
    // up rounding from the (large) carrier frequency.
    double rough = 0.0;
    for (std::size_t j = 0; j < n; ++j) rough += f[j];
    rough /= nodes;

    // Per-interval Simpson integrals of f - rough over fractional time.
    std::vector<double> interval(n);
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        interval[j] = ((f[j] - rough) + 4.0 * (mid[j] - rough) + (f[j + 1] - rough)) / (6.0 * nodes);
        total += interval[j];
    }
    const double f_bar = rough + total;
    const double f_m_ghz = f_m_mhz * 1e-3;

    std::vector<std::complex<double>> z(n);
    double psi = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double c = coupling ? coupling(static_cast<double>(j) / nodes) : 1.0;
        z[j] = c * std::polar(1.0, psi);
        psi += kTwoPi / f_m_ghz * (interval[j] - total / nodes);
    }

    std::vector<std::complex<double>> twiddle(n);
    for (std::size_t j = 0; j < n; ++j) twiddle[j] = std::polar(1.0, -kTwoPi * j / nodes);

    SidebandSpectrum out;
    out.f_bar = f_bar;
    out.f_m_mhz = f_m_mhz;
    for (int k = k_min; k <= k_max; ++k) {
        const long kk = ((static_cast<long>(k) % nodes) + nodes) % nodes;
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) acc += z[j] * twiddle[(kk * j) % n];
        out.entries.push_back({k, acc / static_cast<double>(nodes), f_bar + k * f_m_ghz});
    }
    return out;
}

SidebandSpectrum sideband_weights(const TransmonModel &model, const BichromaticPulse &pulse,
                                  int k_min, int k_max, Transition which,
                                  const CouplingCurve &coupling, int nodes) {
    pulse.validate();
    const auto &series = model.series(which);
    const double period = pulse.modulation_period_ns();
    auto freq = [&](double s) { return series(kTwoPi * pulse.steady_flux(s * period)); };
    std::function<double(double)> coup;
    if (coupling) coup = [&](double s) { return coupling(pulse.steady_flux(s * period)); };
    return sideband_weights_of_trajectory(freq, coup, pulse.f_m_mhz, k_min, k_max, nodes);
}

}  // namespace bichro
