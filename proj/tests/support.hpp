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

#include <vector>

#include "bichro/gates.hpp"
#include "bichro/pulse.hpp"
#include "bichro/transmon.hpp"

namespace bichro::testing {

// Device table rows: f_max, tunability, anharmonicity (GHz).
struct TableRow {
    double f_max;
    double tunability;
    double anharmonicity;
};

inline constexpr TableRow kQubit1{5.250, 0.824, -0.205};
inline constexpr TableRow kQubit2{4.269, 0.401, -0.187};
inline constexpr TableRow kQubit3{4.791, 1.074, -0.206};
inline constexpr TableRow kQubit4{3.365, 0.170, -0.201};

inline TransmonSpec fitted(const TableRow &row) {
    return fit_spec(row.f_max, row.tunability, row.anharmonicity);
}

inline const TransmonSpec &qubit1() {
    static const TransmonSpec s = fitted(kQubit1);
    return s;
}
inline const TransmonSpec &qubit2() {
    static const TransmonSpec s = fitted(kQubit2);
    return s;
}
inline const TransmonSpec &qubit3() {
    static const TransmonSpec s = fitted(kQubit3);
    return s;
}
inline const TransmonSpec &qubit4() {
    static const TransmonSpec s = fitted(kQubit4);
    return s;
}

inline const TransmonModel &model1() {
    static const TransmonModel m(qubit1());
    return m;
}
inline const TransmonModel &model3() {
    static const TransmonModel m(qubit3());
    return m;
}

inline PairSpec make_pair(const TransmonSpec &modulated, const TransmonSpec &neighbor,
                          double g_mhz = 5.0) {
    PairSpec pair;
    pair.modulated = modulated;
    const auto top = transition_frequencies(0.0, neighbor);
    pair.neighbor_f01 = top.f01;
    pair.neighbor_f12 = top.f12;
    pair.g_mhz = g_mhz;
    return pair;
}

// Flux-line response with a gentle rise and a high-frequency roll-off.
inline TransferFunction rolloff_tf() {
    return TransferFunction({20, 50, 100, 150, 200, 300, 400, 500, 600, 700},
                            {0.97, 0.99, 1.00, 1.02, 1.03, 1.00, 0.93, 0.85, 0.78, 0.72});
}

}  // namespace bichro::testing
