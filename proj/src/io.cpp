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

#include "bichro/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "bichro/errors.hpp"

namespace bichro::io {

namespace {

using nlohmann::json;

double require_number(const json &obj, const char *key, const std::string &where) {
    if (!obj.contains(key) || !obj.at(key).is_number()) {
        throw InvalidArgument(where + ": missing numeric field '" + key + "'");
    }
    return obj.at(key).get<double>();
}

json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_le(std::ostream &os, const void *data, std::size_t size) {
    static_assert(std::endian::native == std::endian::little, "binary waveform I/O assumes little-endian");
    os.write(static_cast<const char *>(data), static_cast<std::streamsize>(size));
}

}  // namespace

const QubitEntry &DeviceFile::qubit(const std::string &name) const {
    auto it = qubits.find(name);
    if (it == qubits.end()) throw InvalidArgument("device file has no qubit '" + name + "'");
    return it->second;
}

PairSpec DeviceFile::pair(const std::string &modulated, const std::string &neighbor,
                          double g_mhz) const {
    PairSpec pair;
    pair.modulated = qubit(modulated).spec;
    const auto top = transition_frequencies(0.0, qubit(neighbor).spec);
    pair.neighbor_f01 = top.f01;
    pair.neighbor_f12 = top.f12;
    pair.g_mhz = g_mhz;
    pair.validate();
    return pair;
}

DeviceFile parse_device(const json &doc) {
    if (!doc.is_object() || !doc.contains("qubits") || !doc.at("qubits").is_object()) {
        throw InvalidArgument("device file needs a 'qubits' object");
    }
    DeviceFile dev;
    for (const auto &[name, q] : doc.at("qubits").items()) {
        const std::string where = "qubit '" + name + "'";
        QubitEntry entry;
        if (q.contains("ej1_ghz")) {
            entry.spec = TransmonSpec::make(require_number(q, "ej1_ghz", where),
                                            require_number(q, "ej2_ghz", where),
                                            require_number(q, "ec_ghz", where));
            entry.source = SpecSource::kHamiltonian;
        } else {
            const double f_max = require_number(q, "f_max_ghz", where);
            const double tun = require_number(q, "tunability_ghz", where);
            const double anh = require_number(q, "anharmonicity_ghz", where);
            entry.spec = fit_spec(f_max, tun, anh);
            entry.residual = fit_residuals(entry.spec, f_max, tun, anh);
            entry.source = SpecSource::kTableFit;
        }
        dev.qubits.emplace(name, entry);
    }
    if (doc.contains("pairs")) {
        for (const auto &p : doc.at("pairs")) {
            PairEntry pe;
            pe.modulated = p.at("modulated").get<std::string>();
            pe.neighbor = p.at("neighbor").get<std::string>();
            pe.g_mhz = require_number(p, "g_mhz", "pair");
            dev.qubit(pe.modulated);
            dev.qubit(pe.neighbor);
            dev.pairs.push_back(pe);
        }
    }
    return dev;
}

DeviceFile load_device(const std::string &path) { return parse_device(read_json_file(path)); }

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_waveform_csv(std::ostream &os, const Waveform &wf) {
    os << "time_ns,flux_phi0\n";
    for (std::size_t i = 0; i < wf.samples.size(); ++i) {
        os << format_double(wf.time_ns(i)) << ',' << format_double(wf.samples[i]) << '\n';
    }
}

void write_waveform_binary(std::ostream &os, const Waveform &wf) {
    const double rate = wf.sample_rate_gsps;
    const std::uint64_t n = wf.samples.size();
    write_le(os, &rate, sizeof rate);
    write_le(os, &n, sizeof n);
    write_le(os, wf.samples.data(), n * sizeof(double));
}

Waveform read_waveform_binary(std::istream &is) {
    Waveform wf;
    std::uint64_t n = 0;
    is.read(reinterpret_cast<char *>(&wf.sample_rate_gsps), sizeof(double));
    is.read(reinterpret_cast<char *>(&n), sizeof n);
    if (!is) throw InvalidArgument("truncated waveform header");
    wf.samples.resize(n);
    is.read(reinterpret_cast<char *>(wf.samples.data()), static_cast<std::streamsize>(n * sizeof(double)));
    if (!is) throw InvalidArgument("truncated waveform body");
    wf.flat_begin = 0;
    wf.flat_end = n;
    return wf;
}

void write_transfer_function_csv(std::ostream &os, const TransferFunction &tf) {
    os << "freq_mhz,transmission\n";
    for (std::size_t i = 0; i < tf.frequencies().size(); ++i) {
        os << format_double(tf.frequencies()[i]) << ',' << format_double(tf.transmissions()[i]) << '\n';
    }
}

TransferFunction read_transfer_function_csv(std::istream &is) {
    std::vector<double> f, t;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("freq", 0) == 0) continue;
        std::istringstream row(line);
        double a = 0.0, b = 0.0;
        char comma = 0;
        if (!(row >> a >> comma >> b) || comma != ',') {
            throw InvalidArgument("malformed transfer-function row: '" + line + "'");
        }
        f.push_back(a);
        t.push_back(b);
    }
    return TransferFunction(std::move(f), std::move(t));
}

void write_atlas_csv(std::ostream &os, const SweetSpotAtlas &atlas) {
    os << "alpha_rad,theta_rad,phi_ac_phi0,fbar_ghz,dfdac_ghz_per_phi0,sweet_flag\n";
    for (const auto &node : atlas.nodes) {
        const auto &op = node.point;
        os << format_double(op.pulse.alpha) << ',' << format_double(op.pulse.theta) << ','
           << format_double(op.pulse.phi_ac) << ',' << format_double(op.f_bar) << ','
           << format_double(op.d_ac) << ',' << (op.is_sweet_spot ? 1 : 0) << '\n';
    }
}

void write_spectrum_csv(std::ostream &os, const SidebandSpectrum &spectrum) {
    os << "k,re_eps,im_eps,abs_eps,f_k_ghz\n";
    for (const auto &e : spectrum.entries) {
        os << e.k << ',' << format_double(e.epsilon.real()) << ',' << format_double(e.epsilon.imag())
           << ',' << format_double(std::abs(e.epsilon)) << ',' << format_double(e.f_k) << '\n';
    }
}

void write_chevron_csv(std::ostream &os, const ChevronMap &map) {
    os << "fm_mhz,duration_ns,population\n";
    for (std::size_t it = 0; it < map.duration_ns.size(); ++it) {
        for (std::size_t jf = 0; jf < map.fm_mhz.size(); ++jf) {
            os << format_double(map.fm_mhz[jf]) << ',' << format_double(map.duration_ns[it]) << ','
               << format_double(map.at(it, jf)) << '\n';
        }
    }
}

json to_json(const CollisionReport &r) {
    return json{{"offender", r.offender},
                {"ladder", r.ladder == Transition::kF01 ? "f01" : "f12"},
                {"sideband", r.j},
                {"target_ghz", r.target_ghz},
                {"frequency_gap_mhz", r.frequency_gap_mhz},
                {"fm_gap_mhz", r.fm_gap_mhz},
                {"bandwidth_mhz", r.bandwidth_mhz}};
}

json to_json(const GatePlan &plan) {
    const auto &pulse = plan.operating_point.pulse;
    json collisions = json::array();
    for (const auto &c : plan.collisions) collisions.push_back(to_json(c));
    return json{{"gate_type", to_string(plan.gate_type)},
                {"k", plan.k},
                {"p", pulse.p},
                {"alpha_rad", pulse.alpha},
                {"theta_rad", pulse.theta},
                {"phi_ac_phi0", pulse.phi_ac},
                {"fbar_ghz", plan.operating_point.f_bar},
                {"fbar12_ghz", plan.f_bar_12},
                {"fm_mhz", plan.f_m_mhz},
                {"epsilon_abs", std::abs(plan.epsilon)},
                {"g_eff_mhz", plan.g_eff_mhz},
                {"duration_ns", plan.duration_ns},
                {"dfdac_ghz_per_phi0", plan.operating_point.d_ac},
                {"sweet_spot", plan.operating_point.is_sweet_spot},
                {"collisions", collisions}};
}

Scenario parse_scenario(const json &doc) {
    Scenario s;
    s.hidden_theta0 = require_number(doc, "hidden_theta0_rad", "scenario");
    if (!doc.contains("tf") || !doc.at("tf").is_array()) {
        throw InvalidArgument("scenario needs a 'tf' list of [freq_mhz, transmission] pairs");
    }
    std::vector<double> f, t;
    for (const auto &row : doc.at("tf")) {
        if (!row.is_array() || row.size() != 2) throw InvalidArgument("tf rows must be [freq_mhz, transmission]");
        f.push_back(row[0].get<double>());
        t.push_back(row[1].get<double>());
    }
    s.tf = TransferFunction(std::move(f), std::move(t));
    if (!doc.contains("qubit") || !doc.at("qubit").is_string()) {
        throw InvalidArgument("scenario needs a 'qubit' name");
    }
    s.qubit = doc.at("qubit").get<std::string>();
    s.noise_sigma_khz = doc.value("noise_sigma_khz", 0.0);
    s.randomize_theta0 = doc.value("randomize_theta0", false);
    return s;
}

Scenario load_scenario(const std::string &path) { return parse_scenario(read_json_file(path)); }

std::uint64_t fnv1a(const std::string &text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace bichro::io
