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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "bichro/calibration.hpp"
#include "bichro/gates.hpp"
#include "bichro/modulation.hpp"
#include "support.hpp"

using namespace bichro;
namespace bt = bichro::testing;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

int failures = 0;

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int id, const char *name, bool ok, const std::string &detail) {
    if (!ok) ++failures;
    std::printf("[%s] criterion %d (%s): %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char *pattern, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

void run(int id, const char *name, const std::function<void()> &body) {
    try {
        body();
    } catch (const std::exception &e) {
        report(id, name, false, std::string("threw: ") + e.what());
    }
}

BichromaticPulse make_pulse(double phi_ac, double alpha, double theta, int p = 3) {
    BichromaticPulse pulse;
    pulse.phi_ac = phi_ac;
    pulse.alpha = alpha;
    pulse.theta = theta;
    pulse.p = p;
    return pulse;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return v;
}

BichromaticPulse mono_sweet(const TransmonModel &model) {
    return make_pulse(sweet_spot_solve(model, 0.0, 3, 0.0, 0.0).front().phi_ac, 0.0, 0.0);
}

BichromaticPulse collision_point(const TransmonModel &model) {
    const double alpha = kTwoPi * 0.085, theta = -kTwoPi * 0.06;
    return make_pulse(sweet_spot_solve(model, 0.0, 3, alpha, theta).front().phi_ac, alpha, theta);
}

// Plans shared between criteria 7 and 8.
GatePlan optimized_k8;
bool have_optimized_k8 = false;

void criterion1() {
    Stopwatch clock;
    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> ac(0.0, 0.8), alpha(0.0, 0.5 * kPi), theta(-kPi, kPi);
    const int ps[] = {1, 3, 5};
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const bool first = i % 2 == 0;
        const auto &model = first ? bt::model1() : bt::model3();
        const auto &spec = first ? bt::qubit1() : bt::qubit3();
        const auto pulse = make_pulse(ac(rng), alpha(rng), theta(rng), ps[(i / 2) % 3]);
        const double closed = avg_frequency_bessel(model.series(Transition::kF01), pulse);
        const double direct = avg_frequency_timedomain(spec, pulse);
        worst = std::max(worst, std::abs(closed - direct));
    }
    const double t = clock.seconds();
    report(1, "oracle equivalence", worst < 1e-6 && t < 60.0,
           fmt("max |bessel - timedomain| = %.3e kHz over 200 pulses (< 1 kHz), %.1f s (< 60 s)",
               worst * 1e6, t));
}

void criterion2() {
    Stopwatch clock;
    const auto roots = sweet_spot_solve(bt::model1(), 0.0, 3, 0.0, 0.0);
    const double t = clock.seconds();
    const bool ok = roots.size() == 1 && std::abs(roots[0].phi_ac - 0.60) <= 0.03 && t < 5.0;
    report(2, "monochromatic sweet spot", ok,
           fmt("%zu root(s), Phi_ac* = %.4f Phi0 (0.60 +/- 0.03), fbar = %.4f GHz, %.2f s (< 5 s)",
               roots.size(), roots.empty() ? 0.0 : roots[0].phi_ac, roots.empty() ? 0.0 : roots[0].f_bar, t));
}

void criterion3() {
    Stopwatch clock;
    const auto alphas = linspace(0.0, 0.5 * kPi, 32);
    std::vector<double> thetas(32);
    for (int i = 0; i < 32; ++i) thetas[i] = -kPi + kTwoPi * i / 32;
    const auto atlas = sweet_spot_atlas(bt::model1(), 0.0, 3, alphas, thetas, 1);
    const double t = clock.seconds();
    report(3, "sweet-spot continuum", atlas.span() >= 0.2 && t < 300.0,
           fmt("32x32 atlas: %zu sweet spots, fbar span = %.1f MHz (>= 200 MHz), %.1f s (< 300 s)",
               atlas.nodes.size(), atlas.span() * 1e3, t));
}

void criterion4() {
    const auto &model = bt::model1();
    const auto pair = bt::make_pair(bt::qubit1(), bt::qubit2());
    const auto mono = sweet_spot_solve(model, 0.0, 3, 0.0, 0.0).front();
    const auto bichro = collision_point(model);
    const double f_bichro = avg_frequency_bessel(model.series(Transition::kF01), bichro);
    const double reduction = 1.0 - bichro.phi_ac / mono.phi_ac;
    const double shift_mhz = (f_bichro - mono.f_bar) * 1e3;

    const auto mono_plan = plan_gate(model, pair, mono_sweet(model), GateType::kCZ02, -2);
    const auto bichro_plan = plan_gate(model, pair, bichro, GateType::kCZ02, -2);
    bool mono_collides = false;
    for (const auto &c : mono_plan.collisions) mono_collides |= c.offender == "iSWAP k=-4";

    const bool ok = std::abs(reduction - 0.25) <= 0.08 && std::abs(shift_mhz - 234.0) <= 35.0 &&
                    mono_collides && bichro_plan.collisions.empty();
    report(4, "collision resolution", ok,
           fmt("amplitude %.4f -> %.4f Phi0 (%.1f%% lower, 25 +/- 8%%), fbar shift %+.1f MHz (234 +/- 35); "
               "mono CZ02 k=-2 plan %s the iSWAP k=-4 collision, bichromatic plan has %zu collisions",
               mono.phi_ac, bichro.phi_ac, reduction * 100.0, shift_mhz,
               mono_collides ? "reports" : "does not report", bichro_plan.collisions.size()));
}

void criterion5() {
    const auto &model = bt::model1();
    const auto pair = bt::make_pair(bt::qubit1(), bt::qubit2());
    const auto a = plan_gate(model, pair, mono_sweet(model), GateType::kCZ02, -2);
    const auto b = plan_gate(model, pair, collision_point(model), GateType::kCZ02, -2);
    double worst = 0.0;
    auto check = [&](double f0, double f1, int k, double target) {
        const double moved = resonance_fm(f1, k, target) - resonance_fm(f0, k, target);
        const double expected = (f1 - f0) / std::abs(k) * 1e3;
        worst = std::max(worst, std::abs(moved - expected) / std::abs(expected));
    };
    // The measured shift, plus a spread of synthetic shifts.
    check(a.f_bar_12, b.f_bar_12, -2, pair.neighbor_f01);
    check(a.operating_point.f_bar, b.operating_point.f_bar, -4, pair.neighbor_f01);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> delta(0.001, 0.4);
    for (int i = 0; i < 1000; ++i) {
        const double d = delta(rng);
        check(a.f_bar_12, a.f_bar_12 + d, -2, pair.neighbor_f01);
        check(a.operating_point.f_bar, a.operating_point.f_bar + d, -4, pair.neighbor_f01);
    }
    report(5, "sideband-shift law", worst < 1e-12,
           fmt("k=-2 moves by D/2 and k=-4 by D/4; worst relative deviation %.2e (< 1e-12); "
               "measured D = %.1f MHz gives %.2f / %.2f MHz",
               worst, (b.operating_point.f_bar - a.operating_point.f_bar) * 1e3,
               (b.f_bar_12 - a.f_bar_12) * 1e3 / 2.0,
               (b.operating_point.f_bar - a.operating_point.f_bar) * 1e3 / 4.0));
}

void criterion6() {
    const auto &model = bt::model1();
    std::mt19937_64 rng(66);
    std::uniform_real_distribution<double> ac(0.05, 0.8), alpha(0.0, 0.5 * kPi), theta(-kPi, kPi);
    double odd = 0.0, dc = 0.0, parseval = 0.0;
    for (int i = 0; i < 30; ++i) {
        const auto pulse = make_pulse(ac(rng), alpha(rng), theta(rng));
        const auto spec = sideband_weights(model, pulse, -40, 40);
        for (const auto &e : spec.entries) {
            if (e.k % 2) odd = std::max(odd, std::abs(e.epsilon));
        }
        parseval = std::max(parseval, std::abs(spec.total_weight() - 1.0));
        dc = std::max(dc, std::abs(sensitivities(model, pulse).d_dc));
    }
    const bool ok = odd < 1e-10 && dc < 1e-5 && parseval < 1e-6;
    report(6, "symmetry suite", ok,
           fmt("30 pulses at Phi_dc=0, p=3: max odd |eps_k| = %.2e (< 1e-10), max |dfbar/dPhi_dc| = %.3f kHz/Phi0 "
               "(< 10), max |sum |eps_k|^2 - 1| = %.2e (< 1e-6)",
               odd, dc * 1e6, parseval));
}

void criterion7() {
    Stopwatch clock;
    const auto &model = bt::model3();
    const auto pair = bt::make_pair(bt::qubit3(), bt::qubit4());
    const auto mono = plan_gate(model, pair, mono_sweet(model), GateType::kCZ02, -8);
    OptimizeRequest req;
    req.k = -8;
    optimized_k8 = optimize_weight(model, pair, req);
    have_optimized_k8 = true;
    const double t = clock.seconds();
    const double gain = std::abs(optimized_k8.epsilon) / std::abs(mono.epsilon);
    const double speedup = mono.duration_ns / optimized_k8.duration_ns;
    const bool ok = gain >= 2.0 && std::abs(speedup / gain - 1.0) < 1e-9 && t < 600.0 &&
                    optimized_k8.operating_point.is_sweet_spot;
    report(7, "weight optimization", ok,
           fmt("qubit 3/4 CZ02 k=-8: |eps| %.4f (mono) -> %.4f (bichromatic), gain %.2fx (>= 2x); "
               "duration %.0f -> %.0f ns (speed-up %.2fx); %.0f s (< 600 s)",
               std::abs(mono.epsilon), std::abs(optimized_k8.epsilon), gain, mono.duration_ns,
               optimized_k8.duration_ns, speedup, t));
}

void criterion8() {
    const auto &model1 = bt::model1();
    const auto pair12 = bt::make_pair(bt::qubit1(), bt::qubit2());
    std::vector<GatePlan> plans{plan_gate(model1, pair12, collision_point(model1), GateType::kCZ02, -2)};
    if (have_optimized_k8) {
        plans.push_back(optimized_k8);
    } else {
        const auto pair34 = bt::make_pair(bt::qubit3(), bt::qubit4());
        plans.push_back(plan_gate(bt::model3(), pair34, mono_sweet(bt::model3()), GateType::kCZ02, -8));
    }
    bool ok = true;
    std::string detail;
    std::vector<double> widths;
    for (const auto &plan : plans) {
        const double quarter = 0.25e3 / plan.g_eff_mhz;
        const double step = quarter / 400.0;
        const auto durations = linspace(0.0, 3.0 * quarter, 1201);
        const double approx_width = 4.0 * plan.g_eff_mhz / std::abs(plan.k);
        const auto fms = linspace(plan.f_m_mhz - 3.0 * approx_width, plan.f_m_mhz + 3.0 * approx_width, 1201);
        const auto map = chevron_simulate(plan.g_eff_mhz, fms, durations, plan.f_m_mhz, plan.k);
        const auto fit = fit_chevron(map);
        const bool timing = std::abs(fit.full_transfer_ns - quarter) <= step + 1e-12;
        const bool consistent = std::abs(2.0 * fit.full_transfer_ns - plan.duration_ns) <= 2.0 * step + 1e-12;
        ok = ok && timing && consistent;
        widths.push_back(fit.fwhm_fm_mhz);
        detail += fmt("k=%d g_eff=%.3f MHz: transfer %.2f ns vs 1/(4 g_eff) %.2f ns (step %.2f), FWHM %.4f MHz; ",
                      plan.k, plan.g_eff_mhz, fit.full_transfer_ns, quarter, step, fit.fwhm_fm_mhz);
    }
    const double measured = (widths[0] * std::abs(plans[0].k)) / (widths[1] * std::abs(plans[1].k));
    const double predicted = plans[0].g_eff_mhz / plans[1].g_eff_mhz;
    const bool scaling = std::abs(measured / predicted - 1.0) < 0.10;
    detail += fmt("width*|k| ratio %.4f vs g_eff ratio %.4f (within 10%%)", measured, predicted);
    report(8, "duration/chevron consistency", ok && scaling, detail);
}

void criterion9() {
    const auto &spec = bt::qubit1();
    const auto &model = bt::model1();
    const auto hidden_tf = bt::rolloff_tf();
    const VirtualHardware hw(spec, 0.25, hidden_tf);
    NoiseStream noise(9);

    std::vector<double> grid(24);
    for (int i = 0; i < 24; ++i) grid[i] = -kPi + kTwoPi * i / 24;
    const auto est = calibrate_theta0(hw, model, {}, grid, noise);
    const double theta_err = std::abs(std::remainder(est.theta0 - 0.25, est.branch_width));

    const std::vector<double> probes{20, 50, 100, 150, 200, 300, 400, 500, 600, 700};
    const auto cal = calibrate_transfer_function(hw, model, probes, 0.3, noise);
    double tf_err = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        tf_err = std::max(tf_err, std::abs(cal.tf.transmissions()[i] / hidden_tf(probes[i]) - 1.0));
    }

    double residual = 0.0;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> fm(40.0, 230.0), ac(0.1, 0.6), alpha(0.0, 0.5 * kPi),
        theta(-kPi, kPi);
    for (int i = 0; i < 20; ++i) {
        auto desired = make_pulse(ac(rng), alpha(rng), theta(rng));
        desired.f_m_mhz = fm(rng);
        const double ideal = avg_frequency_timedomain(spec, desired);
        const double measured = virtual_ramsey(hw, compensate(desired, est.theta0, cal.tf), noise).f_bar;
        residual = std::max(residual, std::abs(measured - ideal));
    }
    const bool ok = theta_err < 1e-3 && tf_err < 0.005 && residual < 2e-6;
    report(9, "calibration closed loop", ok,
           fmt("theta0 = %.6f rad (hidden 0.25, branch width %.4f): error %.2e rad (< 1e-3); "
               "tf max relative error %.3f%% (< 0.5%%); post-compensation residual %.3f kHz over 20 pulses (< 2 kHz)",
               est.theta0, est.branch_width, theta_err, tf_err * 100.0, residual * 1e6));
}

struct TableRow {
    int p;
    double alpha_frac, theta_frac, f_bar_mhz, f_m_mhz, time_ns, phi_ac;
};

void criterion10() {
    // Operating points for the qubit-1/2 CZ gates (alpha and theta in units of 2 pi).
    const TableRow rows[] = {
        {3, 0.005, 0.570, 4663, 95.04, 44, 0.67},   {0, 0.000, 0.000, 4694, 110.41, 48, 0.60},
        {3, 0.005, 0.045, 4711, 118.88, 48, 0.63},  {3, 0.015, 0.210, 4727, 126.87, 48, 0.65},
        {3, 0.015, 0.200, 4759, 71.50, 60, 0.63},   {3, 0.020, -0.050, 4775, 150.93, 52, 0.55},
        {3, 0.025, 0.150, 4804, 82.84, 68, 0.61},   {3, 0.035, -0.100, 4810, 168.42, 60, 0.54},
        {3, 0.035, 0.000, 4832, 179.33, 60, 0.52},  {3, 0.050, -0.045, 4877, 202.17, 68, 0.50},
        {3, 0.060, -0.032, 4898, 212.70, 72, 0.48}, {3, 0.075, -0.056, 4916, 221.59, 76, 0.48},
        {3, 0.085, -0.060, 4928, 227.49, 80, 0.47},
    };
    const auto &model = bt::model1();
    const auto pair = bt::make_pair(bt::qubit1(), bt::qubit2());
    int f_within = 0, fm_within = 0;
    std::printf("[INFO] criterion 10 (declared not reproducible; documented per row, not asserted)\n");
    std::printf("       T2*, RB fidelities and process maps are measurement outcomes outside the model.\n");
    std::printf("       row  p  alpha  theta   fbar_tab fbar_calc   d[MHz]  k  fm_tab  fm_calc  d[MHz]\n");
    for (std::size_t i = 0; i < std::size(rows); ++i) {
        const auto &r = rows[i];
        const auto pulse = make_pulse(r.phi_ac, kTwoPi * r.alpha_frac, kTwoPi * r.theta_frac, r.p == 0 ? 3 : r.p);
        const double f01 = avg_frequency_bessel(model.series(Transition::kF01), pulse) * 1e3;
        const double f12 = avg_frequency_bessel(model.series(Transition::kF12), pulse);
        int best_k = -2;
        double best_fm = 0.0;
        for (int k : {-2, -4}) {
            const double fm = resonance_fm(f12, k, pair.neighbor_f01);
            if (best_fm == 0.0 || std::abs(fm - r.f_m_mhz) < std::abs(best_fm - r.f_m_mhz)) {
                best_fm = fm;
                best_k = k;
            }
        }
        const double df = f01 - r.f_bar_mhz, dfm = best_fm - r.f_m_mhz;
        f_within += std::abs(df) <= 30.0;
        fm_within += std::abs(dfm) <= 15.0;
        std::printf("       %3zu  %d  %.3f %6.3f  %8.0f %9.1f %8.1f %2d %7.2f %8.2f %7.2f\n", i + 1, r.p,
                    r.alpha_frac, r.theta_frac, r.f_bar_mhz, f01, df, best_k, r.f_m_mhz, best_fm, dfm);
    }
    std::printf("       %d/13 rows with fbar within 30 MHz, %d/13 with inferred-k f_m within 15 MHz\n",
                f_within, fm_within);
}

}  // namespace

int main() {
    run(1, "oracle equivalence", criterion1);
    run(2, "monochromatic sweet spot", criterion2);
    run(3, "sweet-spot continuum", criterion3);
    run(4, "collision resolution", criterion4);
    run(5, "sideband-shift law", criterion5);
    run(6, "symmetry suite", criterion6);
    run(7, "weight optimization", criterion7);
    run(8, "duration/chevron consistency", criterion8);
    run(9, "calibration closed loop", criterion9);
    try {
        criterion10();
    } catch (const std::exception &e) {
        std::printf("[INFO] criterion 10 table cross-check threw: %s\n", e.what());
    }
    std::printf("%d of 9 asserted criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
