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

#ifndef CHESHIRE_EXPERIMENT_H
#define CHESHIRE_EXPERIMENT_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cheshire/hilbert.h"
#include "cheshire/scenario.h"

namespace cheshire::experiment {

enum class Basis : unsigned char { kX, kY, kZ };

std::string_view basis_name(Basis basis);
/// "x", "y" or "z". Throws DomainError otherwise.
Basis parse_basis(std::string_view name);

/// Pointer analyzer: QWP then HWP then a PBS whose transmitted (H) port is the
/// +1 outcome. Angles are fast-axis angles from H in degrees.
///   x: QWP 45, HWP 22.5   -> +1 = D, -1 = A
///   y: QWP 0,  HWP 22.5   -> +1 = R = (H - iV)/sqrt2, -1 = L
///   z: QWP 0,  HWP 0      -> +1 = H, -1 = V
struct Analyzer {
    Basis basis;
    StateVector plus;
    StateVector minus;
    double qwp_deg;
    double hwp_deg;

    Operator plus_projector() const {
        return Operator::projector(plus);
    }
    Operator minus_projector() const {
        return Operator::projector(minus);
    }
    /// Jones matrix of the waveplate pair, HWP * QWP.
    Eigen::Matrix2cd jones() const;
};

Analyzer pointer_tomography_settings(Basis basis);
Analyzer pointer_tomography_settings(std::string_view basis);

struct DirectEngine {
    bool operator==(const DirectEngine &) const = default;
};
/// Gate-level coupling through the PPBS network with photon overlap eta.
struct PpbsEngine {
    double eta = 1.0;
    bool balanced = true;
    bool operator==(const PpbsEngine &) const = default;
};
using Engine = std::variant<DirectEngine, PpbsEngine>;

std::string engine_name(const Engine &engine);

/// Symmetric grid g_max * (2k - (n-1)) / (n-1), k = 0..n-1. Needs n >= 2.
std::vector<double> symmetric_grid(double g_max, size_t points);

struct SweepConfig {
    std::vector<double> g_values = symmetric_grid(0.3, 13);
    std::vector<double> probe_settings_deg{45.0, 0.0};
    std::vector<Basis> pointer_bases{Basis::kX, Basis::kY};
    /// Expected total coincidences N per (g, probe, basis) setting.
    double counts_per_setting = 1e4;
    uint64_t seed = 0;
    Engine engine = DirectEngine{};
    /// Scale N by the post-selection success probability.
    bool absolute_rates = false;
    unsigned threads = 1;
    StateVector pre = initial_system();
    StateVector post = final_system();
    StateVector pointer_in = initial_pointer();

    /// Throws DomainError on an unusable configuration.
    void validate() const;
};

/// Post-selected pointer state, unnormalized: rho = sum_e phi_e phi_e^dag with
/// phi_e = (<post| (x) I) K_e (|pre> (x) |pointer_in>).
struct ConditionedPointer {
    Eigen::Matrix2cd rho;
    double success_probability;

    /// Tr(O rho) / Tr(rho) for an operator on the pointer space.
    Complex expectation(const Operator &op) const;
};

/// Full nonperturbative evolution. Throws PostselectionFailure (naming g) when
/// the post-selection probability vanishes.
ConditionedPointer conditioned_pointer(double g, double theta_a_deg, const SweepConfig &config);

struct CurvePoint {
    double g;
    double theta_a_deg;
    Basis basis;
    /// <sigma_basis> of the normalized post-selected pointer.
    double expectation;
    /// Probability of the +1 analyzer port.
    double p_plus;
    double success_probability;
};

/// Exact pointer expectations for every (g, probe, basis), g-major.
std::vector<CurvePoint> exact_curves(const SweepConfig &config);

struct CountRecord {
    double g;
    double theta_a_deg;
    Basis basis;
    int outcome;  ///< +1 or -1 analyzer port
    uint64_t counts;
};

struct SweepPoint {
    double g;
    double theta_a_deg;
    Basis basis;
    uint64_t n_plus = 0;
    uint64_t n_minus = 0;
    /// (n+ - n-)/(n+ + n-); empty when no counts were recorded.
    std::optional<double> estimate;
    /// sqrt((1 - estimate^2) / (n+ + n-)); zero for noiseless points.
    double std_error = 0;

    bool operator==(const SweepPoint &) const = default;
};

struct SweepResult {
    std::vector<SweepPoint> points;

    std::vector<CountRecord> records() const;
    bool operator==(const SweepResult &) const = default;
};

/// Mixed seed for the (g index, setting index) substream.
uint64_t substream_seed(uint64_t seed, size_t g_index, size_t setting_index);

/// Poisson-sampled pointer tomography. Deterministic for a fixed seed and
/// independent of `threads`.
SweepResult run_noisy_sweep(const SweepConfig &config);

/// Exact curves packaged as a sweep: estimate = exact expectation, no counts, zero stderr.
SweepResult noiseless_sweep(const SweepConfig &config);

}  // namespace cheshire::experiment

#endif
