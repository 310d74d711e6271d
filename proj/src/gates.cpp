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

#include "bichro/gates.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>

#include "bichro/errors.hpp"
#include "bichro/parallel.hpp"
#include "gsl_util.hpp"

namespace bichro {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool only_even_sidebands(double phi_dc, int p) { return phi_dc == 0.0 && p % 2 == 1; }

void require_allowed_k(double phi_dc, int p, int k) {
    if (k == 0) throw InvalidArgument("sideband k=0 (parametric resonance) is not a sideband gate");
    if (only_even_sidebands(phi_dc, p) && k % 2 != 0) {
        std::ostringstream os;
        os << "k=" << k << " is odd: at Phi_dc=0 with odd p the drive is half-period "
           << "antiperiodic and only even sidebands carry weight";
        throw InvalidArgument(os.str());
    }
}

std::string pair_label(Transition ladder, double target, const PairSpec &pair) {
    const bool to01 = target == pair.neighbor_f01;
    if (ladder == Transition::kF01) return to01 ? "iSWAP" : "CZ20";
    return to01 ? "CZ02" : "leak12";
}

}  // namespace

std::string to_string(GateType gate) {
    switch (gate) {
        case GateType::kCZ02: return "CZ02";
        case GateType::kCZ20: return "CZ20";
        case GateType::kISwap: return "iSWAP";
    }
    return "?";
}

GateType gate_type_from_string(const std::string &name) {
    if (name == "CZ02" || name == "cz02") return GateType::kCZ02;
    if (name == "CZ20" || name == "cz20") return GateType::kCZ20;
    if (name == "iSWAP" || name == "iswap" || name == "ISWAP") return GateType::kISwap;
    throw InvalidArgument("unknown gate type '" + name + "' (expected CZ02, CZ20 or iSWAP)");
}

Transition ladder_of(GateType gate) {
    return gate == GateType::kCZ02 ? Transition::kF12 : Transition::kF01;
}

void PairSpec::validate() const {
    modulated.validate();
    if (!(g_mhz > 0.0)) throw InvalidArgument("bare coupling g must be positive");
    if (!(neighbor_f12 - neighbor_f01 < 0.0)) {
        throw InvalidArgument("neighbor anharmonicity f12 - f01 must be negative");
    }
}

double PairSpec::target_of(GateType gate) const {
    return gate == GateType::kCZ20 ? neighbor_f12 : neighbor_f01;
}

double resonance_fm(double f_bar, int k, double f_target) {
    if (k == 0) throw WrongSideband("k=0 cannot be brought onto resonance by f_m");
    const double fm_ghz = (f_target - f_bar) / k;
    if (!(fm_ghz > 0.0)) {
        std::ostringstream os;
        os << "target " << f_target << " GHz is unreachable from fbar=" << f_bar
           << " GHz with sideband k=" << k;
        throw WrongSideband(os.str());
    }
    return fm_ghz * 1e3;
}

std::map<ResonanceKey, double> enumerate_resonances(const TransmonModel &model,
                                                    const PairSpec &pair,
                                                    const OperatingPoint &point,
                                                    const std::vector<int> &k_set,
                                                    double max_fm_mhz) {
    if (k_set.empty()) throw InvalidArgument("enumerate_resonances needs a non-empty k set");
    const double f01 = point.f_bar;
    const double f12 = avg_frequency_bessel(model.series(Transition::kF12), point.pulse);
    std::map<ResonanceKey, double> out;
    for (GateType gate : {GateType::kCZ02, GateType::kCZ20, GateType::kISwap}) {
        const double centre = ladder_of(gate) == Transition::kF01 ? f01 : f12;
        for (int k : k_set) {
            if (k == 0) continue;
            try {
                const double fm = resonance_fm(centre, k, pair.target_of(gate));
                if (fm <= max_fm_mhz) out[{gate, k}] = fm;
            } catch (const WrongSideband &) {
            }
        }
    }
    return out;
}

std::vector<CollisionReport> check_collisions(const GatePlan &plan, const PairSpec &pair,
                                              const std::vector<double> &tls_ghz,
                                              double bandwidth_mhz) {
    if (!(bandwidth_mhz > 0.0)) throw InvalidArgument("collision bandwidth must be positive");
    const auto &pulse = plan.operating_point.pulse;
    const bool even_only = only_even_sidebands(pulse.phi_dc, pulse.p);
    const Transition own = ladder_of(plan.gate_type);
    const double fm_ghz = plan.f_m_mhz * 1e-3;

    std::vector<CollisionReport> out;
    for (Transition ladder : {Transition::kF01, Transition::kF12}) {
        for (int j = -kCollisionSidebandReach; j <= kCollisionSidebandReach; ++j) {
            if (even_only && j % 2 != 0) continue;
            const double fj = plan.f_bar(ladder) + j * fm_ghz;
            auto consider = [&](double target, const std::string &name) {
                const double gap = (fj - target) * 1e3;
                if (std::abs(gap) >= bandwidth_mhz) return;
                CollisionReport r;
                r.offender = name;
                r.ladder = ladder;
                r.j = j;
                r.target_ghz = target;
                r.frequency_gap_mhz = gap;
                r.fm_gap_mhz = j == 0 ? gap : gap / std::abs(j);
                r.bandwidth_mhz = bandwidth_mhz;
                out.push_back(std::move(r));
            };
            for (double target : {pair.neighbor_f01, pair.neighbor_f12}) {
                if (ladder == own && j == plan.k && target == pair.target_of(plan.gate_type)) continue;
                std::ostringstream name;
                name << pair_label(ladder, target, pair) << " k=" << j;
                consider(target, name.str());
            }
            for (double tls : tls_ghz) {
                std::ostringstream name;
                name.setf(std::ios::fixed);
                name.precision(4);
                name << "TLS " << tls << " GHz (" << (ladder == Transition::kF01 ? "f01" : "f12")
                     << " k=" << j << ")";
                consider(tls, name.str());
            }
        }
    }
    return out;
}

double effective_coupling(double g_mhz, std::complex<double> epsilon_k, GateType gate) {
    const double base = g_mhz * std::abs(epsilon_k);
    return gate == GateType::kISwap ? base : std::numbers::sqrt2 * base;
}

double gate_duration(double g_eff_mhz, GateType gate) {
    if (!(g_eff_mhz > 0.0)) {
        throw NonPositiveCoupling("gate duration needs a positive effective coupling");
    }
    const double cycles = gate == GateType::kISwap ? 0.25 : 0.5;
    return cycles / g_eff_mhz * 1e3;
}

GatePlan plan_gate(const TransmonModel &model, const PairSpec &pair, const BichromaticPulse &pulse,
                   GateType gate, int k, double bandwidth_mhz,
                   const std::vector<double> &tls_ghz) {
    pair.validate();
    pulse.validate();
    require_allowed_k(pulse.phi_dc, pulse.p, k);

    GatePlan plan;
    plan.gate_type = gate;
    plan.k = k;
    const double f01 = avg_frequency_bessel(model.series(Transition::kF01), pulse);
    plan.f_bar_12 = avg_frequency_bessel(model.series(Transition::kF12), pulse);
    const Transition ladder = ladder_of(gate);
    plan.f_m_mhz = resonance_fm(ladder == Transition::kF01 ? f01 : plan.f_bar_12, k,
                                pair.target_of(gate));
    BichromaticPulse resonant = pulse;
    resonant.f_m_mhz = plan.f_m_mhz;
    plan.operating_point = evaluate_operating_point(model, resonant);
    plan.epsilon = sideband_weights(model, resonant, k, k, ladder).at(k).epsilon;
    plan.g_eff_mhz = effective_coupling(pair.g_mhz, plan.epsilon, gate);
    plan.duration_ns = gate_duration(plan.g_eff_mhz, gate);
    plan.collisions = check_collisions(plan, pair, tls_ghz, bandwidth_mhz);
    return plan;
}

ChevronMap chevron_simulate(double g_eff_mhz, const std::vector<double> &fm_grid_mhz,
                            const std::vector<double> &duration_grid_ns, double fm0_mhz, int k) {
    if (!(g_eff_mhz > 0.0)) throw NonPositiveCoupling("chevron needs a positive coupling");
    ChevronMap map;
    map.fm_mhz = fm_grid_mhz;
    map.duration_ns = duration_grid_ns;
    map.population.resize(fm_grid_mhz.size() * duration_grid_ns.size());
    const double g2 = g_eff_mhz * g_eff_mhz;
    for (std::size_t it = 0; it < duration_grid_ns.size(); ++it) {
        const double t_us = duration_grid_ns[it] * 1e-3;
        for (std::size_t jf = 0; jf < fm_grid_mhz.size(); ++jf) {
            const double half_delta = 0.5 * k * (fm_grid_mhz[jf] - fm0_mhz);
            const double omega2 = g2 + half_delta * half_delta;
            const double s = std::sin(kTwoPi * std::sqrt(omega2) * t_us);
            map.population[it * fm_grid_mhz.size() + jf] = g2 / omega2 * s * s;
        }
    }
    return map;
}

namespace {

// Half-max crossing between samples a (above) and b (below) by linear interpolation.
double crossing(double xa, double ya, double xb, double yb, double level) {
    return xa + (level - ya) * (xb - xa) / (yb - ya);
}

}  // namespace

ChevronFit fit_chevron(const ChevronMap &map) {
    const std::size_t nf = map.fm_mhz.size(), nt = map.duration_ns.size();
    if (nf < 3 || nt < 3) throw InvalidArgument("chevron fit needs at least a 3x3 map");
    ChevronFit fit;

    // Resonant column: largest peak transfer.
    std::size_t best_col = 0;
    double best_peak = -1.0;
    for (std::size_t jf = 0; jf < nf; ++jf) {
        double peak = 0.0;
        for (std::size_t it = 0; it < nt; ++it) peak = std::max(peak, map.at(it, jf));
        if (peak > best_peak + 1e-12) {
            best_peak = peak;
            best_col = jf;
        }
    }
    fit.resonance_fm_mhz = map.fm_mhz[best_col];

    // First local maximum above one half along duration.
    std::size_t row = 0;
    for (std::size_t it = 0; it < nt; ++it) {
        const double v = map.at(it, best_col);
        const double next = it + 1 < nt ? map.at(it + 1, best_col) : -1.0;
        if (v > 0.5 && v >= next) {
            row = it;
            break;
        }
    }
    fit.full_transfer_ns = map.duration_ns[row];

    const double peak = map.at(row, best_col);
    const double half = 0.5 * peak;
    double left = map.fm_mhz.front(), right = map.fm_mhz.back();
    for (std::size_t jf = best_col; jf > 0; --jf) {
        if (map.at(row, jf - 1) < half) {
            left = crossing(map.fm_mhz[jf], map.at(row, jf), map.fm_mhz[jf - 1],
                            map.at(row, jf - 1), half);
            break;
        }
    }
    for (std::size_t jf = best_col; jf + 1 < nf; ++jf) {
        if (map.at(row, jf + 1) < half) {
            right = crossing(map.fm_mhz[jf], map.at(row, jf), map.fm_mhz[jf + 1],
                             map.at(row, jf + 1), half);
            break;
        }
    }
    fit.fwhm_fm_mhz = right - left;
    return fit;
}

double chevron_fwhm(double g_eff_mhz, int k) {
    if (!(g_eff_mhz > 0.0)) throw NonPositiveCoupling("chevron needs a positive coupling");
    if (k == 0) throw InvalidArgument("chevron width needs k != 0");
    // At t = 1/(4g): P(x) = sin^2((pi/2) sqrt(1 + x^2)) / (1 + x^2), x = delta / (2 g).
    auto transfer = [](double x) {
        const double s = std::sin(0.5 * std::numbers::pi * std::sqrt(1.0 + x * x));
        return s * s / (1.0 + x * x);
    };
    double lo = 0.0, hi = 1.0;
    while (transfer(hi) > 0.5) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        (transfer(mid) > 0.5 ? lo : hi) = mid;
    }
    const double x_half = 0.5 * (lo + hi);
    // delta = 2 g x = |k| dfm, full width is twice the half width.
    return 2.0 * (2.0 * g_eff_mhz * x_half) / std::abs(k);
}

namespace {

struct Candidate {
    double objective = -1.0;  // |eps_k|, negative when infeasible
    double alpha = 0.0;
    double theta = 0.0;
    double phi_ac = 0.0;
};

BichromaticPulse pulse_for(const OptimizeRequest &req, double alpha, double theta, double phi_ac) {
    BichromaticPulse pulse;
    pulse.phi_dc = req.phi_dc;
    pulse.p = req.p;
    pulse.alpha = std::clamp(alpha, 0.0, 0.5 * std::numbers::pi);
    pulse.theta = wrap_phase(theta);
    pulse.phi_ac = phi_ac;
    return pulse;
}

// Scores every sweet spot of (alpha, theta) inside `window` and keeps the best.
Candidate score(const TransmonModel &model, const PairSpec &pair, const OptimizeRequest &req,
                double alpha, double theta, const SweetSpotOptions &window) {
    Candidate best;
    best.alpha = alpha;
    best.theta = theta;
    if (alpha < req.alpha_min || alpha > req.alpha_max) return best;
    std::vector<SweetSpot> roots;
    try {
        roots = sweet_spot_solve(model, req.phi_dc, req.p, alpha, theta, window);
    } catch (const NoRoot &) {
        return best;
    }
    const Transition ladder = ladder_of(req.gate);
    for (const auto &root : roots) {
        BichromaticPulse pulse = pulse_for(req, alpha, theta, root.phi_ac);
        const double centre = ladder == Transition::kF01
                                  ? root.f_bar
                                  : avg_frequency_bessel(model.series(Transition::kF12), pulse);
        double fm = 0.0;
        try {
            fm = resonance_fm(centre, req.k, pair.target_of(req.gate));
        } catch (const WrongSideband &) {
            continue;
        }
        if (fm > req.max_fm_mhz) continue;
        pulse.f_m_mhz = fm;
        const double weight = std::abs(sideband_weights(model, pulse, req.k, req.k, ladder).at(req.k).epsilon);
        if (weight <= best.objective) continue;

        GatePlan probe;
        probe.gate_type = req.gate;
        probe.k = req.k;
        probe.operating_point.pulse = pulse;
        probe.operating_point.f_bar = root.f_bar;
        probe.f_bar_12 = ladder == Transition::kF12
                             ? centre
                             : avg_frequency_bessel(model.series(Transition::kF12), pulse);
        probe.f_m_mhz = fm;
        if (!check_collisions(probe, pair, req.tls_ghz, req.bandwidth_mhz).empty()) continue;
        best.objective = weight;
        best.phi_ac = root.phi_ac;
    }
    return best;
}

// Local maximization of `f` over (alpha, theta) with GSL's Nelder-Mead simplex.
void simplex_maximize(const std::function<double(const std::array<double, 2> &)> &f,
                      std::array<double, 2> start, std::array<double, 2> step, int max_iter) {
    gsl_multimin_function fn;
    fn.n = 2;
    fn.params = const_cast<void *>(static_cast<const void *>(&f));
    fn.f = [](const gsl_vector *x, void *params) {
        const auto &g = *static_cast<const std::function<double(const std::array<double, 2> &)> *>(params);
        return -g({gsl_vector_get(x, 0), gsl_vector_get(x, 1)});
    };
    detail::quiet_gsl();
    gsl_vector *x = gsl_vector_alloc(2);
    gsl_vector *dx = gsl_vector_alloc(2);
    gsl_vector_set(x, 0, start[0]);
    gsl_vector_set(x, 1, start[1]);
    gsl_vector_set(dx, 0, step[0]);
    gsl_vector_set(dx, 1, step[1]);
    gsl_multimin_fminimizer *s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2);
    gsl_multimin_fminimizer_set(s, &fn, x, dx);
    for (int it = 0; it < max_iter; ++it) {
        if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
        if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-6) == GSL_SUCCESS) break;
    }
    gsl_multimin_fminimizer_free(s);
    gsl_vector_free(dx);
    gsl_vector_free(x);
}

}  // namespace

GatePlan optimize_weight(const TransmonModel &model, const PairSpec &pair,
                         const OptimizeRequest &req) {
    pair.validate();
    require_allowed_k(req.phi_dc, req.p, req.k);
    if (req.alpha_points < 1 || req.theta_points < 1) {
        throw InvalidArgument("optimizer grid must have at least one node per axis");
    }

    std::vector<double> alphas(static_cast<std::size_t>(req.alpha_points));
    std::vector<double> thetas(static_cast<std::size_t>(req.theta_points));
    for (int i = 0; i < req.alpha_points; ++i) {
        alphas[i] = req.alpha_points == 1
                        ? req.alpha_min
                        : req.alpha_min + (req.alpha_max - req.alpha_min) * i / (req.alpha_points - 1);
    }
    for (int i = 0; i < req.theta_points; ++i) {
        thetas[i] = req.theta_min + (req.theta_max - req.theta_min) * i / req.theta_points;
    }

    const SweetSpotOptions full_window;
    std::vector<Candidate> grid(alphas.size() * thetas.size());
    detail::parallel_for(grid.size(), req.jobs, [&](std::size_t idx) {
        grid[idx] = score(model, pair, req, alphas[idx / thetas.size()], thetas[idx % thetas.size()],
                          full_window);
    });

    // Row-major order gives the lowest-alpha, then lowest-theta tie-break.
    const Candidate *best = nullptr;
    for (const auto &c : grid) {
        if (c.objective >= 0.0 && (!best || c.objective > best->objective)) best = &c;
    }
    if (!best) {
        std::ostringstream os;
        os << "no collision-free sweet spot reaches " << to_string(req.gate) << " k=" << req.k;
        if (std::isfinite(req.max_fm_mhz)) os << " with f_m <= " << req.max_fm_mhz << " MHz";
        throw NoFeasiblePoint(os.str());
    }
    Candidate chosen = *best;

    if (req.refine) {
        const double da = alphas.size() > 1 ? alphas[1] - alphas[0] : 0.01;
        const double dt = thetas.size() > 1 ? thetas[1] - thetas[0] : 0.01;
        SweetSpotOptions local;
        local.phi_ac_min = std::max(0.05, chosen.phi_ac - 0.04);
        local.phi_ac_max = std::min(0.9, chosen.phi_ac + 0.04);
        local.scan_step = 0.004;
        Candidate refined = chosen;
        auto objective = [&](const std::array<double, 2> &x) {
            const Candidate c = score(model, pair, req, x[0], x[1], local);
            if (c.objective > refined.objective) refined = c;
            return c.objective;
        };
        simplex_maximize(objective, {chosen.alpha, chosen.theta}, {0.5 * da, 0.5 * dt}, 80);
        if (refined.objective > chosen.objective) chosen = refined;
    }

    BichromaticPulse pulse = pulse_for(req, chosen.alpha, chosen.theta, chosen.phi_ac);
    return plan_gate(model, pair, pulse, req.gate, req.k, req.bandwidth_mhz, req.tls_ghz);
}

}  // namespace bichro
