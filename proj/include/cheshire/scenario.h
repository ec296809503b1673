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

#ifndef CHESHIRE_SCENARIO_H
#define CHESHIRE_SCENARIO_H

#include <string>
#include <vector>

#include "cheshire/hilbert.h"

namespace cheshire {

/// Jones matrix of a half-wave plate with its fast axis at `theta` (radians) from H:
/// [[cos 2t, sin 2t], [sin 2t, -cos 2t]].
Eigen::Matrix2cd half_wave_plate(double theta);
/// Jones matrix of a quarter-wave plate at `theta`: R(theta) diag(1, i) R(-theta).
Eigen::Matrix2cd quarter_wave_plate(double theta);

/// Strength of the system-pointer coupling. The pointer half-wave plate is set
/// at theta_g and the pointer is rotated by g = 4 theta_g.
class CouplingStrength {
   public:
    /// Throws DomainError if |g| > pi/2 (outside physical waveplate settings).
    static CouplingStrength from_g(double g);
    static CouplingStrength from_theta_g(double theta_g);

    double g() const {
        return g_;
    }
    double theta_g() const {
        return theta_g_;
    }

   private:
    CouplingStrength(double g, double theta_g) : g_(g), theta_g_(theta_g) {
    }
    double g_;
    double theta_g_;
};

/// The system polarization |a> that triggers the pointer rotation. The system
/// half-wave plate at theta_a maps |a> onto |V>, which is the control level of
/// the CZ gate: |a> = HWP(theta_a)|V> = (sin 2theta_a, -cos 2theta_a).
/// theta_a = 45 deg probes H, theta_a = 0 probes V.
class ProbePolarization {
   public:
    static ProbePolarization from_theta_a(double theta_a);
    static ProbePolarization horizontal();
    static ProbePolarization vertical();

    double theta_a() const {
        return theta_a_;
    }
    /// Unit vector on the system polarization space.
    const StateVector &state() const {
        return state_;
    }
    /// Pi_a = |a><a| on the system polarization space.
    Operator projector() const;

   private:
    ProbePolarization(double theta_a, StateVector state) : theta_a_(theta_a), state_(std::move(state)) {
    }
    double theta_a_;
    StateVector state_;
};

/// path (x) pol.
CompositeSpace system_space();
/// path (x) pol (x) pointer.
CompositeSpace joint_space();

/// (|u>|D> + |l>|A>)/sqrt2 after the first beam displacer and half-wave plate.
StateVector initial_system();
/// (|u> + |l>) (x) |D> / sqrt2, the post-selected system state.
StateVector final_system();
/// Pointer input |H>.
StateVector initial_pointer();

/// Pointer rotation R(g/2): |H> -> cos g|H> + sin g|V>, |V> -> sin g|H> - cos g|V>.
Operator rotation_R(double g);

/// U_M = (I - Pi_a) (x) I + Pi_a (x) R(g/2) on pol (x) pointer.
Operator measurement_unitary(const CouplingStrength &g, const ProbePolarization &probe);

/// U_tot = Pi_u (x) I (x) I + Pi_l (x) U_M on path (x) pol (x) pointer.
Operator total_unitary(const CouplingStrength &g, const ProbePolarization &probe);
/// Same operator assembled as (I (x) I - Pi_l (x) Pi_a) (x) I + Pi_l (x) Pi_a (x) R(g/2).
Operator total_unitary_projector_form(const CouplingStrength &g, const ProbePolarization &probe);

struct PostselectedPointer {
    /// (<post| (x) I_p) U_tot (|pre> (x) |pointer_in>), not normalized.
    StateVector pointer;
    /// Squared norm of `pointer`.
    double success_probability;
};

/// Throws PostselectionFailure when the success probability vanishes.
PostselectedPointer postselected_pointer(const CouplingStrength &g,
                                         const ProbePolarization &probe,
                                         const StateVector &pointer_in,
                                         const StateVector &pre = initial_system(),
                                         const StateVector &post = final_system());

struct WeakValue {
    Complex value;
    Operator observable;
    StateVector pre;
    StateVector post;
};

/// <post|O|pre> / <post|pre>. Throws OrthogonalPostselection if |<post|pre>| <= 1e-12.
WeakValue weak_value(const Operator &observable, const StateVector &pre, const StateVector &post);

struct CombinedWeakValues {
    WeakValue identity;  ///< wH + wV
    WeakValue sigma_z;   ///< wH - wV
};

/// Recombination through I = Pi_H + Pi_V and sigma_z = Pi_H - Pi_V.
CombinedWeakValues combine_weak_values(const WeakValue &w_h, const WeakValue &w_v);

struct VirtualPath {
    std::string name;
    Operator observable;
};

struct VirtualPathSet {
    std::vector<VirtualPath> paths;
    std::vector<Complex> amplitudes;
    /// Whether the observables sum to the identity within 1e-12.
    bool complete = false;

    Complex sum() const;
};

/// Pi_u Pi_H, Pi_u Pi_V, Pi_l Pi_H, Pi_l Pi_V on path (x) pol.
std::vector<VirtualPath> polarization_paths();
/// Pi_u I/2, Pi_l I/2, Pi_u sigma_z/2, Pi_l sigma_z/2 on path (x) pol.
/// These sum to I (x) Pi_H rather than the identity; their amplitudes still sum
/// to one whenever <I (x) sigma_z>_w = 1, as for initial_system()/final_system().
std::vector<VirtualPath> pauli_paths();

enum class PathCheck {
    /// Throw IncompletePathSet unless the observables sum to the identity.
    kRequireComplete,
    /// Only record completeness in VirtualPathSet::complete.
    kReportOnly,
};

/// Weak values of each path. Throws OrthogonalPostselection for <post|pre> = 0.
VirtualPathSet virtual_path_decomposition(const std::vector<VirtualPath> &paths,
                                          const StateVector &pre,
                                          const StateVector &post,
                                          PathCheck check = PathCheck::kRequireComplete);

/// True if the observables sum to the identity within 1e-12.
bool is_complete(const std::vector<VirtualPath> &paths);

/// |<post|O_k|pre>|^2 per path: the collapsed (strong-measurement) statistics.
/// Not normalized by |<post|pre>|^2.
std::vector<double> projective_transition_probabilities(const std::vector<VirtualPath> &paths,
                                                        const StateVector &pre,
                                                        const StateVector &post);

}  // namespace cheshire

#endif
