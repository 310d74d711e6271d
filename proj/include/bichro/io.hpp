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

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "bichro/gates.hpp"
#include "bichro/modulation.hpp"
#include "bichro/pulse.hpp"
#include "bichro/transmon.hpp"

namespace bichro::io {

/// How a device-file qubit entry was turned into a TransmonSpec.
enum class SpecSource { kTableFit, kHamiltonian };

struct QubitEntry {
    TransmonSpec spec;
    SpecSource source = SpecSource::kTableFit;
    FitResidual residual;  // zero for direct Hamiltonian entries
};

struct PairEntry {
    std::string modulated;
    std::string neighbor;
    double g_mhz = 0.0;
};

struct DeviceFile {
    std::map<std::string, QubitEntry> qubits;
    std::vector<PairEntry> pairs;

    const QubitEntry &qubit(const std::string &name) const;
    /// Pair spec with the neighbor's static f01/f12 taken at its maximum.
    PairSpec pair(const std::string &modulated, const std::string &neighbor, double g_mhz) const;
};

/// Device JSON:
///   {"qubits": {"<name>": {"f_max_ghz", "tunability_ghz", "anharmonicity_ghz"}
///                       | {"ej1_ghz", "ej2_ghz", "ec_ghz"}, ...},
///    "pairs": [{"modulated", "neighbor", "g_mhz"}]}
/// Direct Hamiltonian values win when both forms are present.
DeviceFile parse_device(const nlohmann::json &doc);
DeviceFile load_device(const std::string &path);

std::string format_double(double v);

void write_waveform_csv(std::ostream &os, const Waveform &wf);
/// Little-endian: f64 sample_rate_gsps, u64 length, then `length` f64 samples.
void write_waveform_binary(std::ostream &os, const Waveform &wf);
Waveform read_waveform_binary(std::istream &is);

void write_transfer_function_csv(std::ostream &os, const TransferFunction &tf);
TransferFunction read_transfer_function_csv(std::istream &is);

void write_atlas_csv(std::ostream &os, const SweetSpotAtlas &atlas);
void write_spectrum_csv(std::ostream &os, const SidebandSpectrum &spectrum);
void write_chevron_csv(std::ostream &os, const ChevronMap &map);

nlohmann::json to_json(const CollisionReport &report);
nlohmann::json to_json(const GatePlan &plan);

/// Calibration scenario:
///   {"hidden_theta0_rad", "tf": [[freq_mhz, transmission], ...], "qubit",
///    "noise_sigma_khz", "randomize_theta0"?}
struct Scenario {
    double hidden_theta0 = 0.0;
    TransferFunction tf;
    std::string qubit;
    double noise_sigma_khz = 0.0;
    bool randomize_theta0 = false;
};

Scenario parse_scenario(const nlohmann::json &doc);
Scenario load_scenario(const std::string &path);

/// 64-bit FNV-1a, used to tag outputs with a stable config hash.
std::uint64_t fnv1a(const std::string &text);

}  // namespace bichro::io
