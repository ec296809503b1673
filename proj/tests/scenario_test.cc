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

#include <random>

#include "gtest/gtest.h"

#include "oracles.h"

using namespace cheshire;

namespace {

const Space kPath = spaces::path();
const Space kPol = spaces::polarization();
const Space kPtr = spaces::pointer();

Operator path_pol(const char *p, const Operator &pol_op) {
    return tensor(ops::level_projector(kPath, p), pol_op);
}

StateVector random_system_state(std::mt19937_64 &rng) {
    std::normal_distribution<double> n(0, 1);
    Eigen::VectorXcd v(4);
    for (auto &x : v) {
        x = Complex(n(rng), n(rng));
    }
    return StateVector(system_space(), v).normalized();
}

double pointer_x(const StateVector &ptr) {
    return expectation(ops::pauli_x(kPtr), ptr).real();
}

}  // namespace

TEST(scenario, states_match_hand_expansion) {
    auto pre = initial_system();
    auto post = final_system();
    auto pre_ref = oracle::initial_system();
    auto post_ref = oracle::final_system();
    for (size_t i = 0; i < 4; i++) {
        ASSERT_NEAR(std::abs(pre[i] - pre_ref[i]), 0, 1e-15);
        ASSERT_NEAR(std::abs(post[i] - post_ref[i]), 0, 1e-15);
    }
    ASSERT_TRUE(pre.is_normalized());
    ASSERT_TRUE(post.is_normalized());
}

TEST(scenario, probe_polarizations) {
    auto h = ProbePolarization::horizontal().state();
    auto v = ProbePolarization::vertical().state();
    ASSERT_NEAR(std::abs(h[0] - 1.0), 0, 1e-15);
    ASSERT_NEAR(std::abs(h[1]), 0, 1e-15);
    ASSERT_NEAR(std::abs(v[0]), 0, 1e-15);
    ASSERT_NEAR(std::abs(v[1]), 1, 1e-15);
    for (int k = -90; k <= 90; k += 15) {
        double t = k * M_PI / 180;
        auto a = ProbePolarization::from_theta_a(t).state();
        auto ref = oracle::probe_state(t);
        ASSERT_NEAR(std::abs(a[0] - ref[0]), 0, 1e-15);
        ASSERT_NEAR(std::abs(a[1] - ref[1]), 0, 1e-15);
    }
}

TEST(scenario, coupling_strength_parameterization) {
    auto g = CouplingStrength::from_theta_g(0.05);
    ASSERT_DOUBLE_EQ(g.g(), 0.2);
    ASSERT_DOUBLE_EQ(CouplingStrength::from_g(0.3).theta_g(), 0.075);
    ASSERT_NO_THROW(CouplingStrength::from_g(M_PI / 2));
    ASSERT_THROW(CouplingStrength::from_g(1.6), DomainError);
    ASSERT_THROW(CouplingStrength::from_g(-1.6), DomainError);
    ASSERT_THROW(CouplingStrength::from_g(std::nan("")), DomainError);
}

TEST(scenario, rotation_is_half_wave_plate) {
    for (double g : {-1.2, -0.3, 0.0, 0.17, 1.0}) {
        Eigen::Matrix2cd hwp = half_wave_plate(g / 2);
        ASSERT_LT((rotation_R(g).matrix() - hwp).cwiseAbs().maxCoeff(), 1e-15);
        ASSERT_TRUE(rotation_R(g).is_unitary());
    }
}

TEST(scenario, total_unitary_matches_element_oracle) {
    for (double g : {-0.3, 0.05, 0.3, 1.5}) {
        for (double ta : {0.0, M_PI / 4, 0.3}) {
            auto u = total_unitary(CouplingStrength::from_g(g), ProbePolarization::from_theta_a(ta));
            auto ref = oracle::total_unitary(g, ta);
            ASSERT_TRUE(u.is_unitary());
            for (int i = 0; i < 8; i++) {
                for (int j = 0; j < 8; j++) {
                    ASSERT_NEAR(std::abs(u.matrix()(i, j) - ref[i][j]), 0, 1e-15) << g << " " << ta;
                }
            }
        }
    }
}

TEST(scenario, projector_form_matches) {
    for (double g : {-1.0, 0.0, 0.3}) {
        for (double ta : {0.0, M_PI / 4, -0.7}) {
            auto a = total_unitary(CouplingStrength::from_g(g), ProbePolarization::from_theta_a(ta));
            auto b = total_unitary_projector_form(CouplingStrength::from_g(g), ProbePolarization::from_theta_a(ta));
            ASSERT_LE(a.max_abs_diff(b), 1e-12);
        }
    }
}

TEST(scenario, weak_values_of_polarization_paths) {
    auto pre = initial_system();
    auto post = final_system();
    ASSERT_NEAR(std::abs(weak_value(path_pol("u", ops::level_projector(kPol, "H")), pre, post).value - 0.5), 0, 1e-12);
    ASSERT_NEAR(std::abs(weak_value(path_pol("u", ops::level_projector(kPol, "V")), pre, post).value - 0.5), 0, 1e-12);
    ASSERT_NEAR(std::abs(weak_value(path_pol("l", ops::level_projector(kPol, "H")), pre, post).value - 0.5), 0, 1e-12);
    ASSERT_NEAR(std::abs(weak_value(path_pol("l", ops::level_projector(kPol, "V")), pre, post).value + 0.5), 0, 1e-12);
}

TEST(scenario, cheshire_weak_values) {
    auto pre = initial_system();
    auto post = final_system();
    auto wi = weak_value(path_pol("l", ops::identity(kPol)), pre, post).value;
    auto wz = weak_value(path_pol("l", ops::pauli_z(kPol)), pre, post).value;
    auto wiu = weak_value(path_pol("u", ops::identity(kPol)), pre, post).value;
    auto wzu = weak_value(path_pol("u", ops::pauli_z(kPol)), pre, post).value;
    ASSERT_LE(std::abs(wi), 1e-12);
    ASSERT_LE(std::abs(wz - 1.0), 1e-12);
    ASSERT_LE(std::abs(wiu - 1.0), 1e-12);
    ASSERT_LE(std::abs(wzu), 1e-12);
}

TEST(scenario, combine_weak_values) {
    auto pre = initial_system();
    auto post = final_system();
    auto wh = weak_value(path_pol("l", ops::level_projector(kPol, "H")), pre, post);
    auto wv = weak_value(path_pol("l", ops::level_projector(kPol, "V")), pre, post);
    auto c = combine_weak_values(wh, wv);
    ASSERT_LE(std::abs(c.identity.value), 1e-12);
    ASSERT_LE(std::abs(c.sigma_z.value - 1.0), 1e-12);
    ASSERT_LE(c.identity.observable.max_abs_diff(path_pol("l", ops::identity(kPol))), 1e-15);
    ASSERT_LE(c.sigma_z.observable.max_abs_diff(path_pol("l", ops::pauli_z(kPol))), 1e-15);

    auto other = weak_value(wv.observable, post, post);
    ASSERT_THROW(combine_weak_values(wh, other), DomainError);
}

TEST(scenario, orthogonal_postselection_rejected) {
    // (|u> + |l>)|A>/sqrt2 is orthogonal to final_system().
    auto post = (tensor(states::level(kPath, "u"), states::antidiagonal(kPol)) +
                 tensor(states::level(kPath, "l"), states::antidiagonal(kPol))) *
                M_SQRT1_2;
    ASSERT_NEAR(std::abs(inner(post, final_system())), 0, 1e-15);
    auto fs = final_system();
    ASSERT_THROW(weak_value(path_pol("l", ops::identity(kPol)), fs, post), OrthogonalPostselection);
    ASSERT_THROW(virtual_path_decomposition(polarization_paths(), fs, post), OrthogonalPostselection);
}

TEST(scenario, weak_value_linearity_randomized) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n(0, 1);
    auto paths = polarization_paths();
    for (int trial = 0; trial < 100; trial++) {
        auto pre = random_system_state(rng);
        auto post = random_system_state(rng);
        Complex a(n(rng), n(rng));
        Complex b(n(rng), n(rng));
        const auto &x = paths[trial % 4].observable;
        auto y = tensor(ops::identity(kPath), ops::pauli_x(kPol));
        auto lhs = weak_value(x * a + y * b, pre, post).value;
        auto rhs = a * weak_value(x, pre, post).value + b * weak_value(y, pre, post).value;
        ASSERT_LE(std::abs(lhs - rhs), 1e-10 * (1 + std::abs(lhs)));
    }
}

TEST(scenario, complete_sets_sum_to_one_randomized) {
    std::mt19937_64 rng(12);
    auto paths = polarization_paths();
    ASSERT_TRUE(is_complete(paths));
    for (int trial = 0; trial < 100; trial++) {
        auto pre = random_system_state(rng);
        auto post = random_system_state(rng);
        auto set = virtual_path_decomposition(paths, pre, post);
        ASSERT_TRUE(set.complete);
        ASSERT_LE(std::abs(set.sum() - 1.0), 1e-10);
    }
    // A rotated complete set also sums to one.
    std::vector<VirtualPath> rotated;
    for (const char *p : {"u", "l"}) {
        rotated.push_back({"D", path_pol(p, Operator::projector(states::diagonal(kPol)))});
        rotated.push_back({"A", path_pol(p, Operator::projector(states::antidiagonal(kPol)))});
    }
    auto set = virtual_path_decomposition(rotated, random_system_state(rng), random_system_state(rng));
    ASSERT_LE(std::abs(set.sum() - 1.0), 1e-10);
}

TEST(scenario, decomposition_tables) {
    auto pol = virtual_path_decomposition(polarization_paths(), initial_system(), final_system());
    std::vector<double> expected_pol = {0.5, 0.5, 0.5, -0.5};
    for (size_t i = 0; i < 4; i++) {
        ASSERT_LE(std::abs(pol.amplitudes[i] - expected_pol[i]), 1e-12) << pol.paths[i].name;
    }
    ASSERT_LE(std::abs(pol.sum() - 1.0), 1e-12);

    auto pauli = pauli_paths();
    ASSERT_FALSE(is_complete(pauli));
    ASSERT_THROW(virtual_path_decomposition(pauli, initial_system(), final_system()), IncompletePathSet);
    auto set = virtual_path_decomposition(pauli, initial_system(), final_system(), PathCheck::kReportOnly);
    ASSERT_FALSE(set.complete);
    std::vector<double> expected = {0.5, 0.0, 0.0, 0.5};
    for (size_t i = 0; i < 4; i++) {
        ASSERT_LE(std::abs(set.amplitudes[i] - expected[i]), 1e-12) << set.paths[i].name;
    }
    ASSERT_LE(std::abs(set.sum() - 1.0), 1e-12);

    // The Pauli observables sum to I (x) Pi_H.
    auto total = Operator::zero(system_space());
    for (const auto &p : pauli) {
        total = total + p.observable;
    }
    ASSERT_LE(total.max_abs_diff(tensor(ops::identity(kPath), ops::level_projector(kPol, "H"))), 1e-15);
}

TEST(scenario, incomplete_set_rejected) {
    auto paths = polarization_paths();
    paths.pop_back();
    ASSERT_THROW(virtual_path_decomposition(paths, initial_system(), final_system()), IncompletePathSet);
    ASSERT_THROW(virtual_path_decomposition({}, initial_system(), final_system()), IncompletePathSet);
}

TEST(scenario, projective_probabilities) {
    auto probs = projective_transition_probabilities(polarization_paths(), initial_system(), final_system());
    for (double p : probs) {
        ASSERT_NEAR(p, 1.0 / 16, 1e-15);
    }
}

TEST(scenario, postselected_pointer_matches_density_oracle) {
    for (double g : {-0.3, -0.1, 0.0, 0.05, 0.25, 1.0, M_PI / 2}) {
        for (double ta : {M_PI / 4, 0.0}) {
            auto res = postselected_pointer(CouplingStrength::from_g(g), ProbePolarization::from_theta_a(ta),
                                            initial_pointer());
            auto rho = oracle::postselected_pointer_density(g, ta);
            for (int i = 0; i < 2; i++) {
                for (int j = 0; j < 2; j++) {
                    Complex ours = res.pointer[i] * std::conj(res.pointer[j]);
                    ASSERT_NEAR(std::abs(ours - rho[i][j]), 0, 1e-14);
                }
            }
            ASSERT_NEAR(res.success_probability, (rho[0][0] + rho[1][1]).real(), 1e-14);
        }
    }
}

TEST(scenario, pointer_expectations_closed_form) {
    for (int k = -30; k <= 30; k++) {
        double g = k * 0.01;
        auto h = postselected_pointer(CouplingStrength::from_g(g), ProbePolarization::horizontal(), initial_pointer());
        auto v = postselected_pointer(CouplingStrength::from_g(g), ProbePolarization::vertical(), initial_pointer());
        ASSERT_NEAR(pointer_x(h.pointer), oracle::sigma_x_probe_h(g), 1e-13) << g;
        ASSERT_NEAR(pointer_x(v.pointer), oracle::sigma_x_probe_v(g), 1e-13) << g;
        ASSERT_LE(std::abs(expectation(ops::pauli_y(kPtr), h.pointer).real()), 1e-12);
        ASSERT_LE(std::abs(expectation(ops::pauli_y(kPtr), v.pointer).real()), 1e-12);
    }
}

TEST(scenario, weak_limit_slopes) {
    // d<sigma_x>/dg at 0 is 2 Re of the weak value of Pi_l Pi_a.
    auto sx = [](double ta) {
        return [ta](double g) {
            auto res = postselected_pointer(CouplingStrength::from_g(g), ProbePolarization::from_theta_a(ta),
                                            initial_pointer());
            return pointer_x(res.pointer);
        };
    };
    double slope_h = oracle::central_difference(sx(M_PI / 4), 0, 1e-5);
    double slope_v = oracle::central_difference(sx(0), 0, 1e-5);
    ASSERT_NEAR(slope_h, 1.0, 1e-6);
    ASSERT_NEAR(slope_v, -1.0, 1e-6);
    ASSERT_NEAR((slope_h + slope_v) / 2, 0.0, 1e-6);
    ASSERT_NEAR((slope_h - slope_v) / 2, 1.0, 1e-6);
}

TEST(scenario, first_order_residual_scales_quadratically) {
    // || U|Psi>|H> - (|Psi>|H> + g Pi_l Pi_H |Psi>|V>) || falls by ~4 when g halves.
    auto pi = path_pol("l", ops::level_projector(kPol, "H"));
    auto residual = [&](double g) {
        auto in = tensor(initial_system(), initial_pointer());
        auto out = apply(total_unitary(CouplingStrength::from_g(g), ProbePolarization::horizontal()), in);
        auto approx = in + tensor(apply(pi, initial_system()), states::level(kPtr, "V")) * g;
        return (out - approx).norm();
    };
    for (double g : {0.2, 0.1, 0.05, 0.02}) {
        double ratio = residual(g) / residual(g / 2);
        ASSERT_NEAR(ratio, 4.0, 0.4) << g;
    }
}

TEST(scenario, strong_limit_pointer_distinguishes_paths) {
    // Without post-selection, P(pointer V) at g = pi/2 equals <Psi_i|Pi_l Pi_a|Psi_i>.
    std::mt19937_64 rng(13);
    auto pv = ops::level_projector(kPtr, "V");
    for (int trial = 0; trial < 50; trial++) {
        double ta = std::uniform_real_distribution<double>(-M_PI / 2, M_PI / 2)(rng);
        auto probe = ProbePolarization::from_theta_a(ta);
        auto pre = trial == 0 ? initial_system() : random_system_state(rng);
        if (trial == 0) {
            probe = ProbePolarization::horizontal();
        }
        auto out = apply(total_unitary(CouplingStrength::from_g(M_PI / 2), probe), tensor(pre, initial_pointer()));
        double p_v = expectation(pv, out).real();
        double expected = expectation(path_pol("l", probe.projector()), pre).real();
        ASSERT_NEAR(p_v, expected, 1e-12);
        if (trial == 0) {
            ASSERT_NEAR(p_v, 0.25, 1e-12);
        }
    }
}

TEST(scenario, curves_are_odd_in_g) {
    for (double g : {0.01, 0.1, 0.2, 0.3, 1.0}) {
        for (double ta : {M_PI / 4, 0.0}) {
            auto p = postselected_pointer(CouplingStrength::from_g(g), ProbePolarization::from_theta_a(ta),
                                          initial_pointer());
            auto m = postselected_pointer(CouplingStrength::from_g(-g), ProbePolarization::from_theta_a(ta),
                                          initial_pointer());
            ASSERT_NEAR(pointer_x(p.pointer), -pointer_x(m.pointer), 1e-14);
        }
    }
}

TEST(scenario, postselection_failure) {
    // pre = |u>|H>, post = |l>|H>: nothing reaches the post-selection.
    auto pre = tensor(states::level(kPath, "u"), states::level(kPol, "H"));
    auto post = tensor(states::level(kPath, "l"), states::level(kPol, "H"));
    ASSERT_THROW(postselected_pointer(CouplingStrength::from_g(0.0), ProbePolarization::horizontal(),
                                      initial_pointer(), pre, post),
                 PostselectionFailure);
}

TEST(scenario, wave_plates) {
    Eigen::Matrix2cd q = quarter_wave_plate(0);
    ASSERT_NEAR(std::abs(q(1, 1) - Complex(0, 1)), 0, 1e-15);
    Eigen::Matrix2cd q45 = quarter_wave_plate(M_PI / 4);
    ASSERT_LT((q45 * q45.adjoint() - Eigen::Matrix2cd::Identity()).norm(), 1e-15);
    // Two quarter-wave plates at the same angle make a half-wave plate up to phase.
    Eigen::Matrix2cd twice = q45 * q45;
    Eigen::Matrix2cd hwp = half_wave_plate(M_PI / 4);
    Complex phase = twice(0, 1) / hwp(0, 1);
    ASSERT_NEAR(std::abs(phase), 1, 1e-15);
    ASSERT_LT((twice - phase * hwp).norm(), 1e-15);
}
