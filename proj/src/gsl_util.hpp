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

// GSL glue shared by the numerical modules. Not installed.

#pragma once

#include <functional>

namespace bichro::detail {

/// Switches GSL's abort-on-error handler off for the process (once, thread-safe).
/// Callers check GSL status codes themselves.
void quiet_gsl();

/// Root of `f` in [a, b] by Brent's method to absolute width `xtol`.
/// f(a) and f(b) must differ in sign or one of them must vanish.
double brent_root(const std::function<double(double)> &f, double a, double b, double xtol);

}  // namespace bichro::detail
