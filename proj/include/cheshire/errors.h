// Copyright 2026 The Cheshire Authors
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

#ifndef CHESHIRE_ERRORS_H
#define CHESHIRE_ERRORS_H

#include <stdexcept>
#include <string>

namespace cheshire {

/// Incompatible composite spaces (overlapping names, missing factors, dimension mismatch).
struct SpaceMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A physically or mathematically undefined request. The CLI maps these to exit code 2.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// <post|pre> vanishes, so the weak value is undefined.
struct OrthogonalPostselection : DomainError {
    using DomainError::DomainError;
};

/// The conditioning measurement never succeeds (zero post-selection probability).
struct PostselectionFailure : DomainError {
    using DomainError::DomainError;
};

/// Virtual-path observables that do not sum to the identity.
struct IncompletePathSet : DomainError {
    using DomainError::DomainError;
};

/// A sweep lacks a probe/basis setting required by the extraction.
struct MissingSetting : DomainError {
    using DomainError::DomainError;
};

/// Least-squares problem without a unique solution.
struct RankDeficient : DomainError {
    using DomainError::DomainError;
};

/// Malformed input files or configuration. The CLI maps these to exit code 1.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cheshire

#endif
