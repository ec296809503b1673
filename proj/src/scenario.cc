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

#include "cheshire/scenario.h"

#include <cmath>

namespace cheshire {

Eigen::Matrix2cd half_wave_plate(double theta) {
    double c = std::cos(2 * theta);
    double s = std::sin(2 * theta);
    Eigen::Matrix2cd m;
    m << c, s, s, -c;
    return m;
}

Eigen::Matrix2cd quarter_wave_plate(double theta) {
    double c = std::cos(theta);
    double s = std::sin(theta);
    Eigen::Matrix2cd rot;
    rot << c, -s, s, c;
    Eigen::Matrix2cd retard = Eigen::Matrix2cd::Zero();
    retard(0, 0) = 1;
    retard(1, 1) = Complex(0, 1);
    return rot * retard * rot.transpose();
}

CouplingStrength CouplingStrength::from_g(double g) {
    if (!std::isfinite(g) || std::abs(g) > M_PI / 2) {
        throw DomainError("coupling strength g must satisfy |g| <= pi/2");
    }
    return {g, g / 4};
}

CouplingStrength CouplingStrength::from_theta_g(double theta_g) {
    return from_g(4 * theta_g);
}

ProbePolarization ProbePolarization::from_theta_a(double theta_a) {
    Eigen::Vector2cd v(0, 1);
    Eigen::Vector2cd a = half_wave_plate(theta_a) * v;
    return {theta_a, StateVector(CompositeSpace{spaces::polarization()}, a)};
}

ProbePolarization ProbePolarization::horizontal() {
    return from_theta_a(M_PI / 4);
}

ProbePolarization ProbePolarization::vertical() {
    return from_theta_a(0);
}

Operator ProbePolarization::projector() const {
    return Operator::projector(state_);
}

CompositeSpace system_space() {
    return {spaces::path(), spaces::polarization()};
}

CompositeSpace joint_space() {
    return {spaces::path(), spaces::polarization(), spaces::pointer()};
}

StateVector initial_system() {
    auto upper = tensor(states::level(spaces::path(), "u"), states::diagonal(spaces::polarization()));
    auto lower = tensor(states::level(spaces::path(), "l"), states::antidiagonal(spaces::polarization()));
    return (upper + lower) * M_SQRT1_2;
}

StateVector final_system() {
    auto paths = (states::level(spaces::path(), "u") + states::level(spaces::path(), "l")) * M_SQRT1_2;
    return tensor(paths, states::diagonal(spaces::polarization()));
}

StateVector initial_pointer() {
    return states::level(spaces::pointer(), "H");
}

Operator rotation_R(double g) {
    double c = std::cos(g);
    double s = std::sin(g);
    Eigen::Matrix2cd m;
    m << c, s, s, -c;
    return {CompositeSpace{spaces::pointer()}, m};
}

Operator measurement_unitary(const CouplingStrength &g, const ProbePolarization &probe) {
    auto pi_a = probe.projector();
    auto id_pol = ops::identity(spaces::polarization());
    auto id_ptr = ops::identity(spaces::pointer());
    return tensor(id_pol - pi_a, id_ptr) + tensor(pi_a, rotation_R(g.g()));
}

Operator total_unitary(const CouplingStrength &g, const ProbePolarization &probe) {
    auto pi_u = ops::level_projector(spaces::path(), "u");
    auto pi_l = ops::level_projector(spaces::path(), "l");
    auto id_rest = Operator::identity(CompositeSpace{spaces::polarization(), spaces::pointer()});
    return tensor(pi_u, id_rest) + tensor(pi_l, measurement_unitary(g, probe));
}

Operator total_unitary_projector_form(const CouplingStrength &g, const ProbePolarization &probe) {
    auto pi_l = ops::level_projector(spaces::path(), "l");
    auto lower_a = tensor(pi_l, probe.projector());
    auto rest = Operator::identity(system_space()) - lower_a;
    return tensor(rest, ops::identity(spaces::pointer())) + tensor(lower_a, rotation_R(g.g()));
}

PostselectedPointer postselected_pointer(const CouplingStrength &g,
                                         const ProbePolarization &probe,
                                         const StateVector &pointer_in,
                                         const StateVector &pre,
                                         const StateVector &post) {
    auto evolved = apply(total_unitary(g, probe), tensor(pre, pointer_in));
    auto pointer = contract(post, evolved);
    double p = pointer.norm_squared();
    if (p <= tol::kZero * tol::kZero) {
        throw PostselectionFailure("post-selection never succeeds at g = " + std::to_string(g.g()));
    }
    return {std::move(pointer), p};
}

WeakValue weak_value(const Operator &observable, const StateVector &pre, const StateVector &post) {
    Complex overlap = inner(post, pre);
    if (std::abs(overlap) <= tol::kZero) {
        throw OrthogonalPostselection("pre- and post-selected states are orthogonal; weak value undefined");
    }
    Complex value = inner(post, apply(observable, pre)) / overlap;
    return {value, observable, pre, post};
}

CombinedWeakValues combine_weak_values(const WeakValue &w_h, const WeakValue &w_v) {
    bool same_pre = w_h.pre.space() == w_v.pre.space() &&
                    (w_h.pre.amplitudes() - w_v.pre.amplitudes()).cwiseAbs().maxCoeff() <= tol::kEquality;
    bool same_post = w_h.post.space() == w_v.post.space() &&
                     (w_h.post.amplitudes() - w_v.post.amplitudes()).cwiseAbs().maxCoeff() <= tol::kEquality;
    if (!same_pre || !same_post) {
        throw DomainError("weak values were computed for different pre/post-selected states");
    }
    return {
        WeakValue{w_h.value + w_v.value, w_h.observable + w_v.observable, w_h.pre, w_h.post},
        WeakValue{w_h.value - w_v.value, w_h.observable - w_v.observable, w_h.pre, w_h.post},
    };
}

Complex VirtualPathSet::sum() const {
    Complex total = 0;
    for (auto a : amplitudes) {
        total += a;
    }
    return total;
}

std::vector<VirtualPath> polarization_paths() {
    auto path = spaces::path();
    auto pol = spaces::polarization();
    std::vector<VirtualPath> out;
    for (const char *p : {"u", "l"}) {
        for (const char *h : {"H", "V"}) {
            out.push_back({std::string("Pi_") + p + "*Pi_" + h,
                           tensor(ops::level_projector(path, p), ops::level_projector(pol, h))});
        }
    }
    return out;
}

std::vector<VirtualPath> pauli_paths() {
    auto path = spaces::path();
    auto pol = spaces::polarization();
    auto half_id = ops::identity(pol) * 0.5;
    auto half_z = ops::pauli_z(pol) * 0.5;
    auto pi_u = ops::level_projector(path, "u");
    auto pi_l = ops::level_projector(path, "l");
    return {
        {"Pi_u*I/2", tensor(pi_u, half_id)},
        {"Pi_l*I/2", tensor(pi_l, half_id)},
        {"Pi_u*sigma_z/2", tensor(pi_u, half_z)},
        {"Pi_l*sigma_z/2", tensor(pi_l, half_z)},
    };
}

bool is_complete(const std::vector<VirtualPath> &paths) {
    if (paths.empty()) {
        return false;
    }
    auto total = Operator::zero(paths.front().observable.space());
    for (const auto &p : paths) {
        total = total + p.observable;
    }
    return total.max_abs_diff(Operator::identity(total.space())) <= tol::kEquality;
}

VirtualPathSet virtual_path_decomposition(const std::vector<VirtualPath> &paths,
                                          const StateVector &pre,
                                          const StateVector &post,
                                          PathCheck check) {
    if (paths.empty()) {
        throw IncompletePathSet("empty virtual path set");
    }
    bool complete = is_complete(paths);
    if (!complete && check == PathCheck::kRequireComplete) {
        throw IncompletePathSet("virtual path observables do not sum to the identity");
    }
    VirtualPathSet out;
    out.paths = paths;
    out.complete = complete;
    for (const auto &p : paths) {
        out.amplitudes.push_back(weak_value(p.observable, pre, post).value);
    }
    return out;
}

std::vector<double> projective_transition_probabilities(const std::vector<VirtualPath> &paths,
                                                        const StateVector &pre,
                                                        const StateVector &post) {
    std::vector<double> out;
    for (const auto &p : paths) {
        out.push_back(std::norm(inner(post, apply(p.observable, pre))));
    }
    return out;
}

}  // namespace cheshire
