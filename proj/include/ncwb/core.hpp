// Copyright 2026 The ncwb Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Error type and numerical tolerances shared by every module.
 */

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ncwb {

enum class ErrorCode {
    NotHermitian,
    DimensionMismatch,
    OutOfRange,
    NotStochastic,
    InvalidPartition,
    WeightError,
    NumericalFailure,
    LabelMismatch,
    TooLarge,
    NotProjective,
    InvalidValuation,
    ConstructionFailure,
    InvalidArgument,
    ParseError,
    SchemaViolation,
    UnknownDemo,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NotStochastic: return "NotStochastic";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::WeightError: return "WeightError";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotProjective: return "NotProjective";
    case ErrorCode::InvalidValuation: return "InvalidValuation";
    case ErrorCode::ConstructionFailure: return "ConstructionFailure";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::UnknownDemo: return "UnknownDemo";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what),
          code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

/**
 * Absolute tolerances. Every spectrum handled here lives in [0, 1] and the
 * dimensions are small, so absolute gaps are used throughout.
 */
struct Tolerances {
    double herm = 1e-9;   ///< conjugate symmetry
    double sum = 1e-9;    ///< resolutions of identity, reconstructions
    double trace = 1e-9;  ///< traces and Born probabilities
    double eig = 1e-8;    ///< eigenvalue bounds of effects and states
    double degen = 1e-7;  ///< merging of nearly equal eigenvalues
    double dedup = 1e-9;  ///< matrix equality of effects
    double stats = 1e-9;  ///< operational equivalence of table rows
    double psd = 1e-8;    ///< positivity of reconstructed density operators

    /// Rescales every tolerance so that the 1e-9 family becomes `base`.
    [[nodiscard]] static Tolerances scaled(double base) {
        if (!(base > 0.0) || !std::isfinite(base)) {
            throw Error(ErrorCode::InvalidArgument,
                        "tolerance must be positive and finite");
        }
        const double f = base / 1e-9;
        Tolerances t;
        t.herm *= f;
        t.sum *= f;
        t.trace *= f;
        t.eig *= f;
        t.degen *= f;
        t.dedup *= f;
        t.stats *= f;
        t.psd *= f;
        return t;
    }
};

inline constexpr Tolerances kDefaultTolerances{};

} // namespace ncwb
