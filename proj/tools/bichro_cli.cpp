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

// bichro: command-line front end.
//
//   bichro [--spec device.json] [--out dir] [--seed n] [--jobs n] <command> [options]
//
// Flux in Phi0, frequencies in MHz, angles as fractions of 2 pi.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "bichro/calibration.hpp"
#include "bichro/errors.hpp"
#include "bichro/gates.hpp"
#include "bichro/io.hpp"
#include "bichro/modulation.hpp"
#include "bichro/pulse.hpp"

namespace {

using namespace bichro;
using nlohmann::json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum ExitCode { kOk = 0, kValidation = 2, kInfeasible = 3, kNumerical = 4 };

struct Global {
    std::string spec_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    int jobs = 1;
};

// Everything that determines a command's output, hashed into its provenance.
struct Provenance {
    std::string command;
    std::uint64_t seed = 0;
    std::string hash;

    std::string csv_header() const {
        return "# bichro " + command + " seed=" + std::to_string(seed) + " config_hash=" + hash + "\n";
    }
    json to_json() const { return {{"command", command}, {"seed", seed}, {"config_hash", hash}}; }
};

std::string hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Provenance provenance(const std::string &command, const Global &g, json options,
                      const std::vector<std::string> &inputs) {
    json inputs_json = json::array();
    for (const auto &path : inputs) inputs_json.push_back(hex(io::fnv1a(read_file(path))));
    const json config{{"command", command}, {"seed", g.seed}, {"options", std::move(options)},
                      {"inputs", inputs_json}};
    return {command, g.seed, hex(io::fnv1a(config.dump()))};
}

std::filesystem::path output_path(const Global &g, const std::string &name) {
    std::filesystem::create_directories(g.out_dir);
    return std::filesystem::path(g.out_dir) / name;
}

void write_text(const Global &g, const std::string &name, const std::string &text) {
    const auto path = output_path(g, name);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write '" + path.string() + "'");
    out << text;
    std::cout << "wrote " << path.string() << "\n";
}

io::DeviceFile load_device(const Global &g) {
    if (g.spec_path.empty()) throw InvalidArgument("this command needs --spec <device.json>");
    return io::load_device(g.spec_path);
}

std::vector<double> grid(double lo, double hi, int n, bool closed = true) {
    if (n < 1) throw InvalidArgument("grid needs at least one point");
    std::vector<double> v(static_cast<std::size_t>(n));
    const int div = closed ? std::max(n - 1, 1) : n;
    for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / div;
    return v;
}

// ---- sweep ------------------------------------------------------------------

struct SweepOptions {
    std::string qubit = "q1";
    double alpha = 0.0, theta = 0.0, phi_dc = 0.0, f_m = 100.0;
    int p = 3;
    double ac_min = 0.0, ac_max = 0.9;
    int ac_points = 181;
};

int cmd_sweep(const Global &g, const SweepOptions &o) {
    if (!(o.ac_max > o.ac_min) || o.ac_points < 2) {
        throw InvalidArgument("Phi_ac range is empty (need --ac-max > --ac-min and --ac-points >= 2)");
    }
    const auto dev = load_device(g);
    const TransmonModel model(dev.qubit(o.qubit).spec);
    const auto prov = provenance("sweep", g,
                                 {{"qubit", o.qubit}, {"alpha", o.alpha}, {"theta", o.theta},
                                  {"phi_dc", o.phi_dc}, {"f_m", o.f_m}, {"p", o.p}, {"ac_min", o.ac_min},
                                  {"ac_max", o.ac_max}, {"ac_points", o.ac_points}},
                                 {g.spec_path});
    std::ostringstream csv;
    csv << prov.csv_header();
    csv << "phi_ac_phi0,fbar_ghz,dfdac_ghz_per_phi0,dfddc_ghz_per_phi0,sweet_flag\n";
    for (double ac : grid(o.ac_min, o.ac_max, o.ac_points)) {
        BichromaticPulse pulse;
        pulse.phi_dc = o.phi_dc;
        pulse.phi_ac = ac;
        pulse.alpha = kTwoPi * o.alpha;
        pulse.theta = wrap_phase(kTwoPi * o.theta);
        pulse.p = o.p;
        pulse.f_m_mhz = o.f_m;
        const auto op = evaluate_operating_point(model, pulse);
        csv << io::format_double(ac) << ',' << io::format_double(op.f_bar) << ','
            << io::format_double(op.d_ac) << ',' << io::format_double(op.d_dc) << ','
            << (op.is_sweet_spot ? 1 : 0) << '\n';
    }
    write_text(g, "sweep.csv", csv.str());
    return kOk;
}

// ---- atlas ------------------------------------------------------------------

struct AtlasOptions {
    std::string qubit = "q1";
    int p = 3;
    double phi_dc = 0.0;
    double alpha_min = 0.0, alpha_max = 0.25;
    double theta_min = -0.5, theta_max = 0.5;
    int alpha_points = 32, theta_points = 32;
};

int cmd_atlas(const Global &g, const AtlasOptions &o) {
    const auto dev = load_device(g);
    const TransmonModel model(dev.qubit(o.qubit).spec);
    const auto prov = provenance("atlas", g,
                                 {{"qubit", o.qubit}, {"p", o.p}, {"phi_dc", o.phi_dc},
                                  {"alpha", {o.alpha_min, o.alpha_max, o.alpha_points}},
                                  {"theta", {o.theta_min, o.theta_max, o.theta_points}}},
                                 {g.spec_path});
    std::vector<double> alphas, thetas;
    for (double a : grid(o.alpha_min, o.alpha_max, o.alpha_points)) alphas.push_back(kTwoPi * a);
    // Theta is periodic, so the upper end is left out.
    for (double t : grid(o.theta_min, o.theta_max, o.theta_points, false)) thetas.push_back(kTwoPi * t);
    const auto atlas = sweet_spot_atlas(model, o.phi_dc, o.p, alphas, thetas, g.jobs);
    if (atlas.nodes.empty()) throw NoRoot("no sweet spot anywhere on the requested grid");

    std::ostringstream csv;
    csv << prov.csv_header();
    io::write_atlas_csv(csv, atlas);
    csv << "# span_mhz=" << io::format_double(atlas.span() * 1e3)
        << " fbar_min_ghz=" << io::format_double(atlas.f_bar_min)
        << " fbar_max_ghz=" << io::format_double(atlas.f_bar_max)
        << " sweet_spots=" << atlas.nodes.size() << "\n";
    write_text(g, "atlas.csv", csv.str());
    std::cout << "fbar span " << io::format_double(atlas.span() * 1e3) << " MHz over "
              << atlas.nodes.size() << " sweet spots\n";
    return kOk;
}

// ---- plan -------------------------------------------------------------------

struct PlanOptions {
    std::string modulated = "q1", neighbor = "q2";
    double g_mhz = std::numeric_limits<double>::quiet_NaN();
    std::string gate = "CZ02";
    int k = -2, p = 3;
    double alpha = 0.0, theta = 0.0, phi_dc = 0.0;
    double phi_ac = std::numeric_limits<double>::quiet_NaN();
    bool optimize = false;
    int grid_points = 64;
    double max_fm = std::numeric_limits<double>::infinity();
    double bandwidth = kDefaultCollisionBandwidthMhz;
    std::vector<double> tls;
    std::vector<int> k_set{-2, -4, -6, -8};
    double ac_min = 0.3, ac_max = 0.8;
    int ac_points = 101;
};

double pair_coupling(const io::DeviceFile &dev, const PlanOptions &o) {
    if (std::isfinite(o.g_mhz)) return o.g_mhz;
    for (const auto &p : dev.pairs) {
        if (p.modulated == o.modulated && p.neighbor == o.neighbor) return p.g_mhz;
    }
    throw InvalidArgument("no coupling for " + o.modulated + "/" + o.neighbor +
                          "; pass --g or list the pair in the device file");
}

int cmd_plan(const Global &g, const PlanOptions &o) {
    const auto dev = load_device(g);
    const TransmonModel model(dev.qubit(o.modulated).spec);
    const auto pair = dev.pair(o.modulated, o.neighbor, pair_coupling(dev, o));
    const GateType gate = gate_type_from_string(o.gate);
    const auto prov = provenance(
        "plan", g,
        {{"modulated", o.modulated}, {"neighbor", o.neighbor}, {"g_mhz", pair.g_mhz}, {"gate", o.gate},
         {"k", o.k}, {"p", o.p}, {"alpha", o.alpha}, {"theta", o.theta}, {"phi_dc", o.phi_dc},
         {"phi_ac", std::isfinite(o.phi_ac) ? json(o.phi_ac) : json("sweet")}, {"optimize", o.optimize},
         {"grid", o.grid_points}, {"max_fm", std::isfinite(o.max_fm) ? json(o.max_fm) : json("none")},
         {"bandwidth", o.bandwidth}, {"tls", o.tls}, {"k_set", o.k_set},
         {"resonance_sweep", {o.ac_min, o.ac_max, o.ac_points}}},
        {g.spec_path});

    GatePlan plan;
    if (o.optimize) {
        OptimizeRequest req;
        req.gate = gate;
        req.k = o.k;
        req.p = o.p;
        req.phi_dc = o.phi_dc;
        req.alpha_points = req.theta_points = o.grid_points;
        req.max_fm_mhz = o.max_fm;
        req.bandwidth_mhz = o.bandwidth;
        req.tls_ghz = o.tls;
        req.jobs = g.jobs;
        plan = optimize_weight(model, pair, req);
    } else {
        BichromaticPulse pulse;
        pulse.phi_dc = o.phi_dc;
        pulse.alpha = kTwoPi * o.alpha;
        pulse.theta = wrap_phase(kTwoPi * o.theta);
        pulse.p = o.p;
        pulse.phi_ac = std::isfinite(o.phi_ac)
                           ? o.phi_ac
                           : sweet_spot_solve(model, o.phi_dc, o.p, pulse.alpha, pulse.theta).front().phi_ac;
        plan = plan_gate(model, pair, pulse, gate, o.k, o.bandwidth, o.tls);
        if (plan.f_m_mhz > o.max_fm) {
            throw NoFeasiblePoint("resonant f_m " + io::format_double(plan.f_m_mhz) +
                                  " MHz exceeds --max-fm");
        }
    }

    json doc = io::to_json(plan);
    doc["provenance"] = prov.to_json();
    write_text(g, "plan.json", doc.dump(2) + "\n");

    // Resonance curves along the amplitude at the plan's (alpha, theta).
    if (o.ac_points < 2 || !(o.ac_max > o.ac_min)) throw InvalidArgument("empty resonance sweep");
    std::ostringstream csv;
    csv << prov.csv_header();
    csv << "phi_ac_phi0,fbar_ghz,gate_type,k,fm_mhz\n";
    for (double ac : grid(o.ac_min, o.ac_max, o.ac_points)) {
        OperatingPoint op;
        op.pulse = plan.operating_point.pulse;
        op.pulse.phi_ac = ac;
        op.f_bar = avg_frequency_bessel(model.series(Transition::kF01), op.pulse);
        for (const auto &[key, fm] : enumerate_resonances(model, pair, op, o.k_set)) {
            csv << io::format_double(ac) << ',' << io::format_double(op.f_bar) << ',' << to_string(key.gate)
                << ',' << key.k << ',' << io::format_double(fm) << '\n';
        }
    }
    write_text(g, "resonances.csv", csv.str());

    std::cout << to_string(plan.gate_type) << " k=" << plan.k << ": f_m " << io::format_double(plan.f_m_mhz)
              << " MHz, g_eff " << io::format_double(plan.g_eff_mhz) << " MHz, duration "
              << io::format_double(plan.duration_ns) << " ns, " << plan.collisions.size()
              << " collision(s)\n";
    for (const auto &c : plan.collisions) {
        std::cout << "  collision: " << c.offender << " (gap " << io::format_double(c.frequency_gap_mhz)
                  << " MHz)\n";
    }
    return kOk;
}

// ---- chevron ----------------------------------------------------------------

struct ChevronOptions {
    std::string plan_path;
    double g_eff = std::numeric_limits<double>::quiet_NaN();
    double fm0 = std::numeric_limits<double>::quiet_NaN();
    int k = -2;
    double fm_span = std::numeric_limits<double>::quiet_NaN();
    int fm_points = 201;
    double t_max = std::numeric_limits<double>::quiet_NaN();
    int t_points = 201;
};

int cmd_chevron(const Global &g, ChevronOptions o) {
    std::vector<std::string> inputs;
    if (!o.plan_path.empty()) {
        const auto plan = json::parse(read_file(o.plan_path));
        o.g_eff = plan.at("g_eff_mhz").get<double>();
        o.fm0 = plan.at("fm_mhz").get<double>();
        o.k = plan.at("k").get<int>();
        inputs.push_back(o.plan_path);
    }
    if (!std::isfinite(o.g_eff) || !std::isfinite(o.fm0)) {
        throw InvalidArgument("chevron needs --plan or both --g-eff and --fm0");
    }
    if (o.k == 0) throw InvalidArgument("chevron needs k != 0");
    if (!std::isfinite(o.fm_span)) o.fm_span = 6.0 * chevron_fwhm(o.g_eff, o.k);
    if (!std::isfinite(o.t_max)) o.t_max = 3.0 * 0.25e3 / o.g_eff;
    if (o.fm_points < 3 || o.t_points < 3 || !(o.fm_span > 0.0) || !(o.t_max > 0.0)) {
        throw InvalidArgument("chevron grids need >= 3 points and positive extents");
    }
    const auto prov = provenance("chevron", g,
                                 {{"g_eff", o.g_eff}, {"fm0", o.fm0}, {"k", o.k}, {"fm_span", o.fm_span},
                                  {"fm_points", o.fm_points}, {"t_max", o.t_max}, {"t_points", o.t_points}},
                                 inputs);
    const auto map = chevron_simulate(o.g_eff, grid(o.fm0 - 0.5 * o.fm_span, o.fm0 + 0.5 * o.fm_span, o.fm_points),
                                      grid(0.0, o.t_max, o.t_points), o.fm0, o.k);
    std::ostringstream csv;
    csv << prov.csv_header();
    io::write_chevron_csv(csv, map);
    write_text(g, "chevron.csv", csv.str());

    const auto fit = fit_chevron(map);
    const json doc{{"resonance_fm_mhz", fit.resonance_fm_mhz},
                   {"full_transfer_ns", fit.full_transfer_ns},
                   {"fwhm_fm_mhz", fit.fwhm_fm_mhz},
                   {"predicted_full_transfer_ns", 0.25e3 / o.g_eff},
                   {"predicted_fwhm_fm_mhz", chevron_fwhm(o.g_eff, o.k)},
                   {"provenance", prov.to_json()}};
    write_text(g, "chevron_fit.json", doc.dump(2) + "\n");
    return kOk;
}

// ---- calibrate --------------------------------------------------------------

struct CalibrateOptions {
    std::string scenario_path;
    int p = 3;
    double probe_alpha = 0.125, probe_ac = 0.4, probe_fm = 100.0;
    int theta_points = 24;
    bool median = false;
    std::vector<double> tf_probes;
    double tf_amplitude = 0.3;
};

int cmd_calibrate(const Global &g, const CalibrateOptions &o) {
    if (o.scenario_path.empty()) throw InvalidArgument("calibrate needs --scenario <file>");
    const auto dev = load_device(g);
    const auto scenario = io::load_scenario(o.scenario_path);
    const auto &spec = dev.qubit(scenario.qubit).spec;
    const TransmonModel model(spec);
    const auto prov = provenance("calibrate", g,
                                 {{"p", o.p}, {"probe_alpha", o.probe_alpha}, {"probe_ac", o.probe_ac},
                                  {"probe_fm", o.probe_fm}, {"theta_points", o.theta_points},
                                  {"median", o.median}, {"tf_probes", o.tf_probes},
                                  {"tf_amplitude", o.tf_amplitude}},
                                 {g.spec_path, o.scenario_path});

    const VirtualHardware hw(spec, scenario.hidden_theta0, scenario.tf, scenario.noise_sigma_khz,
                             scenario.randomize_theta0);
    NoiseStream noise(g.seed);

    std::vector<double> thetas;
    for (double t : grid(-0.5, 0.5, o.theta_points, false)) thetas.push_back(kTwoPi * t);
    Theta0Probe probe;
    probe.p = o.p;
    probe.alpha = kTwoPi * o.probe_alpha;
    probe.phi_ac = o.probe_ac;
    probe.f_m_mhz = o.probe_fm;
    Theta0Estimate theta0;
    if (o.median) {
        std::vector<Theta0Probe> probes;
        for (double scale : {0.8, 0.9, 1.0, 1.1, 1.2}) {
            Theta0Probe q = probe;
            q.phi_ac = o.probe_ac * scale;
            probes.push_back(q);
        }
        theta0 = calibrate_theta0_median(hw, model, probes, thetas, noise);
    } else {
        theta0 = calibrate_theta0(hw, model, probe, thetas, noise);
    }

    const std::vector<double> tf_probes = o.tf_probes.empty() ? scenario.tf.frequencies() : o.tf_probes;
    const auto tf = calibrate_transfer_function(hw, model, tf_probes, o.tf_amplitude, noise);

    // Verification: compensated pulses against the ideal average frequency.
    json checks = json::array();
    double worst = 0.0;
    const double lo = tf.tf.frequencies().front(), hi = tf.tf.frequencies().back() / o.p;
    for (double frac : {0.25, 0.5, 0.75}) {
        BichromaticPulse desired;
        desired.p = o.p;
        desired.alpha = 0.6;
        desired.phi_ac = 0.45;
        desired.theta = wrap_phase(kTwoPi * (frac - 0.5));
        desired.f_m_mhz = lo + frac * (hi - lo);
        const double ideal = avg_frequency_timedomain(spec, desired);
        const double measured = virtual_ramsey(hw, compensate(desired, theta0.theta0, tf.tf), noise).f_bar;
        worst = std::max(worst, std::abs(measured - ideal));
        checks.push_back({{"f_m_mhz", desired.f_m_mhz}, {"theta_rad", desired.theta},
                          {"ideal_fbar_ghz", ideal}, {"measured_fbar_ghz", measured},
                          {"residual_khz", (measured - ideal) * 1e6}});
    }

    json tf_rows = json::array();
    for (std::size_t i = 0; i < tf.probe_mhz.size(); ++i) {
        tf_rows.push_back({{"freq_mhz", tf.probe_mhz[i]},
                           {"transmission", tf.tf.transmissions()[i]},
                           {"measured_fbar_ghz", tf.measured_f_bar[i]},
                           {"delivered_phi_ac_phi0", tf.delivered_phi_ac[i]}});
    }
    const json doc{
        {"theta0", {{"estimate_rad", theta0.theta0},
                    {"branch_width_rad", theta0.branch_width},
                    {"per_probe_rad", theta0.per_probe},
                    {"fundamental_ghz", theta0.fundamental_ghz},
                    {"fit_residual_rms_khz", theta0.residual_rms_ghz * 1e6},
                    {"branch_note", "theta0 is identifiable only modulo 2*pi/(p-1); the estimate is the "
                                    "principal value and any branch gives the same compensation"}}},
        {"transfer_function", tf_rows},
        {"closed_loop", {{"checks", checks}, {"max_residual_khz", worst * 1e6}}},
        {"noise_sigma_khz", scenario.noise_sigma_khz},
        {"provenance", prov.to_json()}};
    write_text(g, "calibration.json", doc.dump(2) + "\n");

    std::ostringstream csv;
    csv << prov.csv_header();
    io::write_transfer_function_csv(csv, tf.tf);
    write_text(g, "transfer_function.csv", csv.str());
    std::cout << "theta0 " << io::format_double(theta0.theta0) << " rad (mod "
              << io::format_double(theta0.branch_width) << "), closed-loop residual "
              << io::format_double(worst * 1e6) << " kHz\n";
    return kOk;
}

// ---- synth ------------------------------------------------------------------

struct SynthOptions {
    double phi_dc = 0.0, phi_ac = 0.4, alpha = 0.0, theta = 0.0, f_m = 100.0;
    int p = 3;
    double flat_ns = 200.0, rise_ns = 10.0, sample_rate = 0.0;
    std::string tf_path;
    double theta0 = 0.0;
};

int cmd_synth(const Global &g, SynthOptions o) {
    BichromaticPulse pulse;
    pulse.phi_dc = o.phi_dc;
    pulse.phi_ac = o.phi_ac;
    pulse.alpha = kTwoPi * o.alpha;
    pulse.theta = wrap_phase(kTwoPi * o.theta);
    pulse.p = o.p;
    pulse.f_m_mhz = o.f_m;
    pulse.envelope = {o.flat_ns, o.rise_ns};
    std::vector<std::string> inputs;
    if (!o.tf_path.empty()) {
        std::ifstream in(o.tf_path);
        if (!in) throw InvalidArgument("cannot open '" + o.tf_path + "'");
        pulse = compensate(pulse, o.theta0, io::read_transfer_function_csv(in));
        inputs.push_back(o.tf_path);
    } else if (o.theta0 != 0.0) {
        pulse = pulse.with_theta(precompensate_theta(pulse.theta, o.theta0, pulse.p));
    }
    if (o.sample_rate <= 0.0) o.sample_rate = 10.0 * o.p * o.f_m * 1e-3;
    const auto prov = provenance("synth", g,
                                 {{"phi_dc", o.phi_dc}, {"phi_ac", o.phi_ac}, {"alpha", o.alpha},
                                  {"theta", o.theta}, {"f_m", o.f_m}, {"p", o.p}, {"flat_ns", o.flat_ns},
                                  {"rise_ns", o.rise_ns}, {"sample_rate", o.sample_rate},
                                  {"theta0", o.theta0}},
                                 inputs);
    const auto wf = synthesize(pulse, o.sample_rate);
    std::ostringstream csv;
    csv << prov.csv_header();
    io::write_waveform_csv(csv, wf);
    write_text(g, "waveform.csv", csv.str());
    std::ostringstream bin;
    io::write_waveform_binary(bin, wf);
    write_text(g, "waveform.bin", bin.str());
    return kOk;
}

int exit_code_for(const Error &e) {
    switch (e.category()) {
        case ErrorCategory::kValidation: return kValidation;
        case ErrorCategory::kInfeasible: return kInfeasible;
        case ErrorCategory::kNumerical: return kNumerical;
    }
    return kNumerical;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Bichromatic flux-modulation toolkit for tunable transmons"};
    app.require_subcommand(1);
    Global g;
    app.add_option("--spec", g.spec_path, "Device JSON")->check(CLI::ExistingFile);
    app.add_option("--out", g.out_dir, "Output directory")->capture_default_str();
    app.add_option("--seed", g.seed, "Random seed, recorded in every output")->capture_default_str();
    app.add_option("--jobs", g.jobs, "Worker threads for grid work")->check(CLI::PositiveNumber)->capture_default_str();

    std::function<int()> action;

    SweepOptions sweep;
    auto *s = app.add_subcommand("sweep", "fbar and sensitivities against Phi_ac");
    s->fallthrough();
    s->add_option("--qubit", sweep.qubit)->capture_default_str();
    s->add_option("--alpha", sweep.alpha, "Mixing angle [2 pi]")->capture_default_str();
    s->add_option("--theta", sweep.theta, "Relative phase [2 pi]")->capture_default_str();
    s->add_option("--p", sweep.p, "Frequency multiplier")->capture_default_str();
    s->add_option("--fm", sweep.f_m, "Modulation frequency [MHz]")->capture_default_str();
    s->add_option("--phi-dc", sweep.phi_dc, "[Phi0]")->capture_default_str();
    s->add_option("--ac-min", sweep.ac_min, "[Phi0]")->capture_default_str();
    s->add_option("--ac-max", sweep.ac_max, "[Phi0]")->capture_default_str();
    s->add_option("--ac-points", sweep.ac_points)->capture_default_str();
    s->callback([&] { action = [&] { return cmd_sweep(g, sweep); }; });

    AtlasOptions atlas;
    auto *a = app.add_subcommand("atlas", "Dynamical sweet spots over an (alpha, theta) grid");
    a->fallthrough();
    a->add_option("--qubit", atlas.qubit)->capture_default_str();
    a->add_option("--p", atlas.p)->capture_default_str();
    a->add_option("--phi-dc", atlas.phi_dc, "[Phi0]")->capture_default_str();
    a->add_option("--alpha-min", atlas.alpha_min, "[2 pi]")->capture_default_str();
    a->add_option("--alpha-max", atlas.alpha_max, "[2 pi]")->capture_default_str();
    a->add_option("--theta-min", atlas.theta_min, "[2 pi]")->capture_default_str();
    a->add_option("--theta-max", atlas.theta_max, "[2 pi], excluded")->capture_default_str();
    a->add_option("--alpha-points", atlas.alpha_points)->capture_default_str();
    a->add_option("--theta-points", atlas.theta_points)->capture_default_str();
    a->callback([&] { action = [&] { return cmd_atlas(g, atlas); }; });

    PlanOptions plan;
    auto *pl = app.add_subcommand("plan", "Gate plan at an operating point, or optimized");
    pl->fallthrough();
    pl->add_option("--modulated", plan.modulated)->capture_default_str();
    pl->add_option("--neighbor", plan.neighbor)->capture_default_str();
    pl->add_option("--g", plan.g_mhz, "Bare coupling [MHz]; default from the device pairs");
    pl->add_option("--gate", plan.gate, "CZ02, CZ20 or iSWAP")->capture_default_str();
    pl->add_option("--k", plan.k, "Activating sideband")->capture_default_str();
    pl->add_option("--p", plan.p)->capture_default_str();
    pl->add_option("--alpha", plan.alpha, "[2 pi]")->capture_default_str();
    pl->add_option("--theta", plan.theta, "[2 pi]")->capture_default_str();
    pl->add_option("--phi-dc", plan.phi_dc, "[Phi0]")->capture_default_str();
    pl->add_option("--phi-ac", plan.phi_ac, "[Phi0]; default: lowest sweet spot");
    pl->add_flag("--optimize", plan.optimize, "Maximize |eps_k| over the sweet-spot manifold");
    pl->add_option("--grid", plan.grid_points, "Optimizer grid per axis")->capture_default_str();
    pl->add_option("--max-fm", plan.max_fm, "[MHz]");
    pl->add_option("--bandwidth", plan.bandwidth, "Collision bandwidth [MHz]")->capture_default_str();
    pl->add_option("--tls", plan.tls, "TLS frequencies [GHz]")->delimiter(',');
    pl->add_option("--k-set", plan.k_set, "Sidebands for resonances.csv")->delimiter(',');
    pl->add_option("--ac-min", plan.ac_min, "[Phi0]")->capture_default_str();
    pl->add_option("--ac-max", plan.ac_max, "[Phi0]")->capture_default_str();
    pl->add_option("--ac-points", plan.ac_points)->capture_default_str();
    pl->callback([&] { action = [&] { return cmd_plan(g, plan); }; });

    ChevronOptions chevron;
    auto *c = app.add_subcommand("chevron", "Population map against f_m and duration");
    c->fallthrough();
    c->add_option("--plan", chevron.plan_path, "plan.json to take g_eff, f_m and k from")->check(CLI::ExistingFile);
    c->add_option("--g-eff", chevron.g_eff, "[MHz]");
    c->add_option("--fm0", chevron.fm0, "Resonant f_m [MHz]");
    c->add_option("--k", chevron.k)->capture_default_str();
    c->add_option("--fm-span", chevron.fm_span, "[MHz]; default six widths");
    c->add_option("--fm-points", chevron.fm_points)->capture_default_str();
    c->add_option("--t-max", chevron.t_max, "[ns]; default three transfer times");
    c->add_option("--t-points", chevron.t_points)->capture_default_str();
    c->callback([&] { action = [&] { return cmd_chevron(g, chevron); }; });

    CalibrateOptions cal;
    auto *cb = app.add_subcommand("calibrate", "theta0 and transfer function against virtual hardware");
    cb->fallthrough();
    cb->add_option("--scenario", cal.scenario_path, "Scenario JSON")->check(CLI::ExistingFile);
    cb->add_option("--p", cal.p)->capture_default_str();
    cb->add_option("--probe-alpha", cal.probe_alpha, "[2 pi]")->capture_default_str();
    cb->add_option("--probe-ac", cal.probe_ac, "[Phi0]")->capture_default_str();
    cb->add_option("--probe-fm", cal.probe_fm, "[MHz]")->capture_default_str();
    cb->add_option("--theta-points", cal.theta_points)->capture_default_str();
    cb->add_flag("--median", cal.median, "Median over five probe amplitudes");
    cb->add_option("--tf-probes", cal.tf_probes, "[MHz]; default: scenario samples")->delimiter(',');
    cb->add_option("--tf-amplitude", cal.tf_amplitude, "[Phi0]")->capture_default_str();
    cb->callback([&] { action = [&] { return cmd_calibrate(g, cal); }; });

    SynthOptions synth;
    auto *sy = app.add_subcommand("synth", "Sampled waveform (CSV and binary)");
    sy->fallthrough();
    sy->add_option("--phi-dc", synth.phi_dc, "[Phi0]")->capture_default_str();
    sy->add_option("--phi-ac", synth.phi_ac, "[Phi0]")->capture_default_str();
    sy->add_option("--alpha", synth.alpha, "[2 pi]")->capture_default_str();
    sy->add_option("--theta", synth.theta, "[2 pi]")->capture_default_str();
    sy->add_option("--fm", synth.f_m, "[MHz]")->capture_default_str();
    sy->add_option("--p", synth.p)->capture_default_str();
    sy->add_option("--flat", synth.flat_ns, "[ns]")->capture_default_str();
    sy->add_option("--rise", synth.rise_ns, "[ns]")->capture_default_str();
    sy->add_option("--sample-rate", synth.sample_rate, "[GS/s]; default 10 p f_m");
    sy->add_option("--tf", synth.tf_path, "Transfer-function CSV to compensate")->check(CLI::ExistingFile);
    sy->add_option("--theta0", synth.theta0, "Clock phase to precompensate [rad]")->capture_default_str();
    sy->callback([&] { action = [&] { return cmd_synth(g, synth); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kValidation;
    }

    try {
        return action();
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "error: malformed input: " << e.what() << "\n";
        return kValidation;
    } catch (const std::filesystem::filesystem_error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumerical;
    }
}
