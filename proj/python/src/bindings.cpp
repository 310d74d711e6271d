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

// Python bindings for the bichro core. Units follow the C++ API: flux in
// Phi0, frequencies in GHz except f_m and couplings (MHz), angles in radians.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bichro/calibration.hpp"
#include "bichro/errors.hpp"
#include "bichro/gates.hpp"
#include "bichro/io.hpp"
#include "bichro/modulation.hpp"
#include "bichro/pulse.hpp"
#include "bichro/transmon.hpp"

namespace py = pybind11;
using namespace bichro;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bichromatic flux modulation of tunable transmons";

    struct ErrorTypes {
        py::object base, validation, infeasible, numerical;
    };
    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<ErrorTypes> storage;
    storage.call_once_and_store_result([&] {
        ErrorTypes t;
        t.base = py::exception<Error>(m, "BichroError", PyExc_RuntimeError);
        t.validation = py::exception<Error>(m, "ValidationError", t.base.ptr());
        t.infeasible = py::exception<Error>(m, "InfeasibleError", t.base.ptr());
        t.numerical = py::exception<Error>(m, "NumericalError", t.base.ptr());
        return t;
    });
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error &e) {
            const auto &t = storage.get_stored();
            switch (e.category()) {
                case ErrorCategory::kValidation: py::set_error(t.validation, e.what()); return;
                case ErrorCategory::kInfeasible: py::set_error(t.infeasible, e.what()); return;
                case ErrorCategory::kNumerical: py::set_error(t.numerical, e.what()); return;
            }
            py::set_error(t.base, e.what());
        }
    });

    // ---- transmon
    py::enum_<Transition>(m, "Transition").value("F01", Transition::kF01).value("F12", Transition::kF12);

    py::class_<TransmonSpec>(m, "TransmonSpec")
        .def(py::init(&TransmonSpec::make), py::arg("ej1"), py::arg("ej2"), py::arg("ec"))
        .def_readonly("ej1", &TransmonSpec::ej1)
        .def_readonly("ej2", &TransmonSpec::ej2)
        .def_readonly("ec", &TransmonSpec::ec)
        .def("__repr__", [](const TransmonSpec &s) {
            std::ostringstream os;
            os << "TransmonSpec(ej1=" << s.ej1 << ", ej2=" << s.ej2 << ", ec=" << s.ec << ")";
            return os.str();
        });

    py::class_<Transitions>(m, "Transitions")
        .def_readonly("f01", &Transitions::f01)
        .def_readonly("f12", &Transitions::f12);

    m.def("ej_eff", &ej_eff, py::arg("phi"), py::arg("spec"));
    m.def("transition_frequencies", &transition_frequencies, py::arg("phi"), py::arg("spec"));
    m.def("fit_spec", [](double f_max, double tunability, double anharmonicity) {
        return fit_spec(f_max, tunability, anharmonicity);
    }, py::arg("f_max"), py::arg("tunability"), py::arg("anharmonicity"),
          "Hamiltonian parameters reproducing a (f_max, tunability, anharmonicity) row, GHz.");

    py::class_<FourierSeries>(m, "FourierSeries")
        .def("__call__", &FourierSeries::operator(), py::arg("phi"))
        .def_property_readonly("coefficients", &FourierSeries::coefficients);

    py::class_<TransmonModel>(m, "TransmonModel")
        .def(py::init<const TransmonSpec &, int>(), py::arg("spec"), py::arg("harmonics") = kDefaultHarmonics)
        .def_property_readonly("spec", &TransmonModel::spec)
        .def("series", &TransmonModel::series, py::arg("which") = Transition::kF01,
             py::return_value_policy::reference_internal)
        .def("frequency", &TransmonModel::frequency, py::arg("flux"), py::arg("which") = Transition::kF01);

    // ---- pulse
    m.def("wrap_phase", &wrap_phase);

    py::class_<EnvelopeSpec>(m, "EnvelopeSpec")
        .def(py::init([](double flat, double rise) { return EnvelopeSpec{flat, rise}; }),
             py::arg("flat_duration_ns") = 0.0, py::arg("rise_time_ns") = 0.0)
        .def_readwrite("flat_duration_ns", &EnvelopeSpec::flat_duration_ns)
        .def_readwrite("rise_time_ns", &EnvelopeSpec::rise_time_ns)
        .def("__call__", &EnvelopeSpec::operator(), py::arg("t_ns"));

    py::class_<BichromaticPulse>(m, "BichromaticPulse")
        .def(py::init([](double phi_dc, double phi_ac, double alpha, int p, double f_m_mhz, double theta,
                         EnvelopeSpec envelope) {
                 BichromaticPulse pulse{phi_dc, phi_ac, alpha, p, f_m_mhz, theta, envelope};
                 pulse.validate();
                 return pulse;
             }),
             py::arg("phi_dc") = 0.0, py::arg("phi_ac") = 0.0, py::arg("alpha") = 0.0, py::arg("p") = 3,
             py::arg("f_m_mhz") = 100.0, py::arg("theta") = 0.0, py::arg("envelope") = EnvelopeSpec{})
        .def_readwrite("phi_dc", &BichromaticPulse::phi_dc)
        .def_readwrite("phi_ac", &BichromaticPulse::phi_ac)
        .def_readwrite("alpha", &BichromaticPulse::alpha)
        .def_readwrite("p", &BichromaticPulse::p)
        .def_readwrite("f_m_mhz", &BichromaticPulse::f_m_mhz)
        .def_readwrite("theta", &BichromaticPulse::theta)
        .def_readwrite("envelope", &BichromaticPulse::envelope)
        .def("steady_flux", &BichromaticPulse::steady_flux, py::arg("t_ns"))
        .def("flux", &BichromaticPulse::flux, py::arg("t_ns"));

    py::class_<Waveform>(m, "Waveform")
        .def_readonly("sample_rate_gsps", &Waveform::sample_rate_gsps)
        .def_readonly("samples", &Waveform::samples)
        .def_readonly("flat_begin", &Waveform::flat_begin)
        .def_readonly("flat_end", &Waveform::flat_end)
        .def("to_bytes", [](const Waveform &wf) {
            std::ostringstream os;
            io::write_waveform_binary(os, wf);
            return py::bytes(os.str());
        });
    m.def("synthesize", &synthesize, py::arg("pulse"), py::arg("sample_rate_gsps"));
    m.def("precompensate_theta", &precompensate_theta, py::arg("theta_desired"), py::arg("theta0"), py::arg("p"));

    py::class_<TransferFunction>(m, "TransferFunction")
        .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("freqs_mhz"), py::arg("transmissions"))
        .def("__call__", &TransferFunction::operator(), py::arg("f_mhz"))
        .def_property_readonly("frequencies", &TransferFunction::frequencies)
        .def_property_readonly("transmissions", &TransferFunction::transmissions);

    // ---- modulation
    m.def("avg_frequency_bessel", [](const TransmonModel &model, const BichromaticPulse &pulse, Transition which) {
        return avg_frequency_bessel(model.series(which), pulse);
    }, py::arg("model"), py::arg("pulse"), py::arg("which") = Transition::kF01);
    m.def("avg_frequency_timedomain", &avg_frequency_timedomain, py::arg("spec"), py::arg("pulse"),
          py::arg("which") = Transition::kF01, py::arg("nodes") = kTimeDomainNodes);

    py::class_<OperatingPoint>(m, "OperatingPoint")
        .def_readonly("pulse", &OperatingPoint::pulse)
        .def_readonly("f_bar", &OperatingPoint::f_bar)
        .def_readonly("d_dc", &OperatingPoint::d_dc)
        .def_readonly("d_ac", &OperatingPoint::d_ac)
        .def_readonly("is_sweet_spot", &OperatingPoint::is_sweet_spot);
    m.def("evaluate_operating_point", &evaluate_operating_point, py::arg("model"), py::arg("pulse"));

    py::class_<SweetSpot>(m, "SweetSpot")
        .def_readonly("phi_ac", &SweetSpot::phi_ac)
        .def_readonly("f_bar", &SweetSpot::f_bar);
    m.def("sweet_spot_solve", [](const TransmonModel &model, double phi_dc, int p, double alpha, double theta,
                                 double phi_ac_min, double phi_ac_max) {
        SweetSpotOptions opts;
        opts.phi_ac_min = phi_ac_min;
        opts.phi_ac_max = phi_ac_max;
        return sweet_spot_solve(model, phi_dc, p, alpha, theta, opts);
    }, py::arg("model"), py::arg("phi_dc"), py::arg("p"), py::arg("alpha"), py::arg("theta"),
          py::arg("phi_ac_min") = SweetSpotOptions{}.phi_ac_min, py::arg("phi_ac_max") = SweetSpotOptions{}.phi_ac_max);

    py::class_<AtlasNode>(m, "AtlasNode")
        .def_readonly("alpha_index", &AtlasNode::alpha_index)
        .def_readonly("theta_index", &AtlasNode::theta_index)
        .def_readonly("point", &AtlasNode::point);
    py::class_<SweetSpotAtlas>(m, "SweetSpotAtlas")
        .def_readonly("nodes", &SweetSpotAtlas::nodes)
        .def_readonly("f_bar_min", &SweetSpotAtlas::f_bar_min)
        .def_readonly("f_bar_max", &SweetSpotAtlas::f_bar_max)
        .def_property_readonly("span", &SweetSpotAtlas::span);
    m.def("sweet_spot_atlas", [](const TransmonModel &model, double phi_dc, int p, const std::vector<double> &alphas,
                                 const std::vector<double> &thetas, int jobs) {
        py::gil_scoped_release release;
        return sweet_spot_atlas(model, phi_dc, p, alphas, thetas, jobs);
    }, py::arg("model"), py::arg("phi_dc"), py::arg("p"), py::arg("alphas"), py::arg("thetas"), py::arg("jobs") = 1);

    py::class_<SidebandEntry>(m, "SidebandEntry")
        .def_readonly("k", &SidebandEntry::k)
        .def_readonly("epsilon", &SidebandEntry::epsilon)
        .def_readonly("f_k", &SidebandEntry::f_k);
    py::class_<SidebandSpectrum>(m, "SidebandSpectrum")
        .def_readonly("f_bar", &SidebandSpectrum::f_bar)
        .def_readonly("f_m_mhz", &SidebandSpectrum::f_m_mhz)
        .def_readonly("entries", &SidebandSpectrum::entries)
        .def("at", &SidebandSpectrum::at, py::arg("k"), py::return_value_policy::reference_internal)
        .def("total_weight", &SidebandSpectrum::total_weight);
    m.def("sideband_weights", [](const TransmonModel &model, const BichromaticPulse &pulse, int k_min, int k_max,
                                 Transition which) {
        return sideband_weights(model, pulse, k_min, k_max, which);
    }, py::arg("model"), py::arg("pulse"), py::arg("k_min"), py::arg("k_max"), py::arg("which") = Transition::kF01);

    // ---- gates
    py::enum_<GateType>(m, "GateType")
        .value("CZ02", GateType::kCZ02)
        .value("CZ20", GateType::kCZ20)
        .value("ISWAP", GateType::kISwap);
    m.def("gate_type_from_string", &gate_type_from_string);

    py::class_<PairSpec>(m, "PairSpec")
        .def(py::init([](const TransmonSpec &modulated, double f01, double f12, double g) {
                 PairSpec pair{modulated, f01, f12, g};
                 pair.validate();
                 return pair;
             }),
             py::arg("modulated"), py::arg("neighbor_f01"), py::arg("neighbor_f12"), py::arg("g_mhz"))
        .def_readonly("modulated", &PairSpec::modulated)
        .def_readonly("neighbor_f01", &PairSpec::neighbor_f01)
        .def_readonly("neighbor_f12", &PairSpec::neighbor_f12)
        .def_readonly("g_mhz", &PairSpec::g_mhz);
    m.def("resonance_fm", &resonance_fm, py::arg("f_bar"), py::arg("k"), py::arg("f_target"));

    py::class_<CollisionReport>(m, "CollisionReport")
        .def_readonly("offender", &CollisionReport::offender)
        .def_readonly("j", &CollisionReport::j)
        .def_readonly("target_ghz", &CollisionReport::target_ghz)
        .def_readonly("frequency_gap_mhz", &CollisionReport::frequency_gap_mhz)
        .def_readonly("bandwidth_mhz", &CollisionReport::bandwidth_mhz);

    py::class_<GatePlan>(m, "GatePlan")
        .def_readonly("gate_type", &GatePlan::gate_type)
        .def_readonly("k", &GatePlan::k)
        .def_readonly("operating_point", &GatePlan::operating_point)
        .def_readonly("f_bar_12", &GatePlan::f_bar_12)
        .def_readonly("f_m_mhz", &GatePlan::f_m_mhz)
        .def_readonly("epsilon", &GatePlan::epsilon)
        .def_readonly("g_eff_mhz", &GatePlan::g_eff_mhz)
        .def_readonly("duration_ns", &GatePlan::duration_ns)
        .def_readonly("collisions", &GatePlan::collisions)
        .def("to_json", [](const GatePlan &plan) { return io::to_json(plan).dump(); });
    m.def("plan_gate", &plan_gate, py::arg("model"), py::arg("pair"), py::arg("pulse"), py::arg("gate"),
          py::arg("k"), py::arg("bandwidth_mhz") = kDefaultCollisionBandwidthMhz,
          py::arg("tls_ghz") = std::vector<double>{});
    m.def("optimize_weight", [](const TransmonModel &model, const PairSpec &pair, GateType gate, int k, int p,
                                int grid, double max_fm_mhz, int jobs) {
        OptimizeRequest req;
        req.gate = gate;
        req.k = k;
        req.p = p;
        req.alpha_points = req.theta_points = grid;
        req.max_fm_mhz = max_fm_mhz;
        req.jobs = jobs;
        py::gil_scoped_release release;
        return optimize_weight(model, pair, req);
    }, py::arg("model"), py::arg("pair"), py::arg("gate"), py::arg("k"), py::arg("p") = 3, py::arg("grid") = 64,
          py::arg("max_fm_mhz") = std::numeric_limits<double>::infinity(), py::arg("jobs") = 1);

    py::class_<ChevronMap>(m, "ChevronMap")
        .def_readonly("fm_mhz", &ChevronMap::fm_mhz)
        .def_readonly("duration_ns", &ChevronMap::duration_ns)
        .def_readonly("population", &ChevronMap::population)
        .def("at", &ChevronMap::at, py::arg("duration_index"), py::arg("fm_index"));
    m.def("chevron_simulate", &chevron_simulate, py::arg("g_eff_mhz"), py::arg("fm_grid_mhz"),
          py::arg("duration_grid_ns"), py::arg("fm0_mhz"), py::arg("k"));
    py::class_<ChevronFit>(m, "ChevronFit")
        .def_readonly("resonance_fm_mhz", &ChevronFit::resonance_fm_mhz)
        .def_readonly("full_transfer_ns", &ChevronFit::full_transfer_ns)
        .def_readonly("fwhm_fm_mhz", &ChevronFit::fwhm_fm_mhz);
    m.def("fit_chevron", &fit_chevron, py::arg("map"));
    m.def("chevron_fwhm", &chevron_fwhm, py::arg("g_eff_mhz"), py::arg("k"));

    // ---- calibration
    py::class_<NoiseStream>(m, "NoiseStream").def(py::init<std::uint64_t>(), py::arg("seed"));
    py::class_<RamseyResult>(m, "RamseyResult")
        .def_readonly("f_bar", &RamseyResult::f_bar)
        .def_readonly("uncertainty_khz", &RamseyResult::uncertainty_khz);
    py::class_<VirtualHardware>(m, "VirtualHardware")
        .def(py::init<const TransmonSpec &, double, TransferFunction, double, bool>(), py::arg("spec"),
             py::arg("hidden_theta0"), py::arg("hidden_tf"), py::arg("noise_sigma_khz") = 0.0,
             py::arg("randomize_theta0") = false)
        .def("ramsey", &VirtualHardware::ramsey, py::arg("requested"), py::arg("noise"));

    py::class_<Theta0Probe>(m, "Theta0Probe")
        .def(py::init([](int p, double alpha, double phi_ac, double f_m_mhz, double phi_dc) {
                 return Theta0Probe{p, alpha, phi_ac, f_m_mhz, phi_dc};
             }),
             py::arg("p") = 3, py::arg("alpha") = Theta0Probe{}.alpha, py::arg("phi_ac") = 0.4,
             py::arg("f_m_mhz") = 100.0, py::arg("phi_dc") = 0.0);
    py::class_<Theta0Estimate>(m, "Theta0Estimate")
        .def_readonly("theta0", &Theta0Estimate::theta0)
        .def_readonly("branch_width", &Theta0Estimate::branch_width)
        .def_readonly("fundamental_ghz", &Theta0Estimate::fundamental_ghz)
        .def_readonly("residual_rms_ghz", &Theta0Estimate::residual_rms_ghz)
        .def_readonly("per_probe", &Theta0Estimate::per_probe);
    m.def("calibrate_theta0", &calibrate_theta0, py::arg("hw"), py::arg("model"), py::arg("probe"),
          py::arg("theta_grid"), py::arg("noise"));
    py::class_<TransferCalibration>(m, "TransferCalibration")
        .def_readonly("tf", &TransferCalibration::tf)
        .def_readonly("probe_mhz", &TransferCalibration::probe_mhz)
        .def_readonly("measured_f_bar", &TransferCalibration::measured_f_bar)
        .def_readonly("delivered_phi_ac", &TransferCalibration::delivered_phi_ac);
    m.def("calibrate_transfer_function", &calibrate_transfer_function, py::arg("hw"), py::arg("model"),
          py::arg("probe_mhz"), py::arg("probe_phi_ac"), py::arg("noise"));
    m.def("compensate", &compensate, py::arg("desired"), py::arg("theta0"), py::arg("tf"));

    // ---- device files
    py::class_<io::QubitEntry>(m, "QubitEntry").def_readonly("spec", &io::QubitEntry::spec);
    py::class_<io::DeviceFile>(m, "DeviceFile")
        .def_property_readonly("qubit_names", [](const io::DeviceFile &d) {
            std::vector<std::string> names;
            for (const auto &[name, entry] : d.qubits) names.push_back(name);
            return names;
        })
        .def("qubit", &io::DeviceFile::qubit, py::arg("name"), py::return_value_policy::reference_internal)
        .def("pair", &io::DeviceFile::pair, py::arg("modulated"), py::arg("neighbor"), py::arg("g_mhz"));
    m.def("load_device", &io::load_device, py::arg("path"));
}
