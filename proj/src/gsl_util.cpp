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

#include "gsl_util.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_roots.h>

#include <memory>
#include <string>

#include "bichro/errors.hpp"

namespace bichro::detail {

void quiet_gsl() {
    static const bool done = (gsl_set_error_handler_off(), true);
    (void)done;
}

double brent_root(const std::function<double(double)> &f, double a, double b, double xtol) {
    quiet_gsl();
    if (f(a) == 0.0) return a;
    if (f(b) == 0.0) return b;
    gsl_function fn;
    fn.function = [](double x, void *params) {
        return (*static_cast<const std::function<double(double)> *>(params))(x);
    };
    fn.params = const_cast<void *>(static_cast<const void *>(&f));
    std::unique_ptr<gsl_root_fsolver, decltype(&gsl_root_fsolver_free)> solver(
        gsl_root_fsolver_alloc(gsl_root_fsolver_brent), &gsl_root_fsolver_free);
    int status = gsl_root_fsolver_set(solver.get(), &fn, a, b);
    for (int it = 0; status == GSL_SUCCESS && it < 200; ++it) {
        status = gsl_root_fsolver_iterate(solver.get());
        if (status != GSL_SUCCESS) break;
        const double lo = gsl_root_fsolver_x_lower(solver.get());
        const double hi = gsl_root_fsolver_x_upper(solver.get());
        if (gsl_root_test_interval(lo, hi, xtol, 0.0) == GSL_SUCCESS) {
            return gsl_root_fsolver_root(solver.get());
        }
    }
    if (status != GSL_SUCCESS) {
        throw NoRoot(std::string("root bracket failed: ") + gsl_strerror(status));
    }
    return gsl_root_fsolver_root(solver.get());
}

}  // namespace bichro::detail
