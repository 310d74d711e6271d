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

#include <span>
#include <vector>

namespace bichro {

/// Fills `out[0..out.size()-1]` with J_0(x) ... J_{n}(x), n = out.size() - 1.
///
/// One downward recurrence (GSL) for all orders; orders whose value
/// underflows a double are returned as zero. Disables GSL's abort-on-error
/// handler for the process on first use.
void bessel_j_sequence(double x, std::span<double> out);

/// Convenience wrapper returning J_0(x) ... J_{max_order}(x).
std::vector<double> bessel_j_sequence(double x, int max_order);

/// Integer-order Bessel function of the first kind; negative orders allowed.
double bessel_j(int order, double x);

}  // namespace bichro
