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

#include "bichro/bessel.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_bessel.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "bichro/errors.hpp"
#include "gsl_util.hpp"

namespace bichro {

namespace {

// Highest order whose J_n(x) is representable. GSL seeds its downward
// recurrence at the top order and reports underflow past this point.
int representable_order(double x, int n) {
    const double log_half_x = std::log(0.5 * x);
    while (n > 0 && n > x && n * log_half_x - std::lgamma(n + 1.0) < -600.0) --n;
    return n;
}

}  // namespace

void bessel_j_sequence(double x, std::span<double> out) {
    if (out.empty()) return;
    const int n = static_cast<int>(out.size()) - 1;
    std::fill(out.begin(), out.end(), 0.0);
    if (x == 0.0) {
        out[0] = 1.0;
        return;
    }
    const double ax = std::abs(x);
    const int top = representable_order(ax, n);
    detail::quiet_gsl();
    const int status = gsl_sf_bessel_Jn_array(0, top, ax, out.data());
    if (status != GSL_SUCCESS) {
        throw TruncationTooCoarse("Bessel sequence at x = " + std::to_string(x) + ": " + gsl_strerror(status));
    }
    if (x < 0.0) {
        for (int k = 1; k <= n; k += 2) out[k] = -out[k];
    }
}
std::vector<double> bessel_j_sequence(double x, int max_order) {
    std::vector<double> out(static_cast<std::size_t>(std::max(max_order, 0)) + 1);
    bessel_j_sequence(x, out);
    return out;
}

double bessel_j(int order, double x) {
    const int n = std::abs(order);
    std::vector<double> seq(static_cast<std::size_t>(n) + 1);
    bessel_j_sequence(x, seq);
    const double v = seq[n];
    return (order < 0 && (n & 1)) ? -v : v;
}

}  // namespace bichro
