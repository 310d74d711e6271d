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

#include <stdexcept>
#include <string>

namespace bichro {

/// Coarse failure classes. The command-line tool maps these onto exit codes.
enum class ErrorCategory {
    kValidation,  // bad input or violated precondition
    kInfeasible,  // well-posed request with no admissible answer
    kNumerical,   // a numerical routine failed to reach its tolerance
};

class Error : public std::runtime_error {
   public:
    Error(ErrorCategory category, const std::string &what)
        : std::runtime_error(what), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

   private:
    ErrorCategory category_;
};

#define BICHRO_DECLARE_ERROR(Name, Category)                                       \
    class Name : public Error {                                                     \
       public:                                                                      \
        explicit Name(const std::string &what) : Error(ErrorCategory::Category, what) {} \
    }

BICHRO_DECLARE_ERROR(InvalidArgument, kValidation);
BICHRO_DECLARE_ERROR(AliasingRisk, kValidation);
BICHRO_DECLARE_ERROR(InsufficientWindow, kValidation);
BICHRO_DECLARE_ERROR(OutOfBand, kValidation);
BICHRO_DECLARE_ERROR(WrongSideband, kValidation);
BICHRO_DECLARE_ERROR(NonPositiveCoupling, kValidation);
BICHRO_DECLARE_ERROR(NonMonotoneRegion, kValidation);
BICHRO_DECLARE_ERROR(NoRoot, kInfeasible);
BICHRO_DECLARE_ERROR(NoFeasiblePoint, kInfeasible);
BICHRO_DECLARE_ERROR(FlatResponse, kInfeasible);
BICHRO_DECLARE_ERROR(DiagonalizationFailure, kNumerical);
BICHRO_DECLARE_ERROR(FitDivergence, kNumerical);
BICHRO_DECLARE_ERROR(TruncationTooCoarse, kNumerical);
BICHRO_DECLARE_ERROR(CutoffTooSmall, kNumerical);

#undef BICHRO_DECLARE_ERROR

}  // namespace bichro
