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

#ifndef CHESHIRE_PHOTONICS_H
#define CHESHIRE_PHOTONICS_H

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "cheshire/hilbert.h"

namespace cheshire::photonics {

enum class Arm : unsigned char { kSystem = 0, kPointer = 1, kLossSystem = 2, kLossPointer = 3 };
enum class Pol : unsigned char { kH = 0, kV = 1 };

inline constexpr size_t kNumArms = 4;
inline constexpr size_t kInternalDim = 2;
inline constexpr size_t kNumModes = kNumArms * 2 * kInternalDim;

/// A single bosonic mode: spatial arm, polarization and internal (spectral) index.
struct OpticalMode {
    Arm arm;
    Pol pol;
    unsigned char internal = 0;

    size_t index() const;
    static OpticalMode from_index(size_t index);
    bool is_loss() const {
        return arm == Arm::kLossSystem || arm == Arm::kLossPointer;
    }
    bool operator==(const OpticalMode &) const = default;
};

using ModeVector = Eigen::Matrix<Complex, static_cast<int>(kNumModes), 1>;
using ModeMatrix = Eigen::Matrix<Complex, static_cast<int>(kNumModes), static_cast<int>(kNumModes)>;

/// A single photon in `arm` with polarization `pol` and internal state `internal`.
ModeVector single_photon(Arm arm, Pol pol, const Eigen::Vector2cd &internal);

/// Two-photon state, stored as the symmetric matrix M with
///   |psi> = (1/sqrt2) sum_ij M_ij a_i^dag a_j^dag |0>.
/// For i != j the Fock amplitude of |1_i 1_j> is sqrt2 M_ij; for i == j the
/// amplitude of |2_i> is M_ii. The norm is sum |M_ij|^2.
class TwoPhotonFockState {
   public:
    /// a^dag(u) a^dag(v)|0>. Not normalized when u and v overlap.
    static TwoPhotonFockState from_photons(const ModeVector &u, const ModeVector &v);
    /// Symmetrizes an arbitrary ordered two-photon wavefunction.
    static TwoPhotonFockState from_ordered(const ModeMatrix &ordered);

    const ModeMatrix &ordered() const {
        return sym_;
    }
    /// Fock amplitude of the occupation {a, b} (unordered).
    Complex amplitude(const OpticalMode &a, const OpticalMode &b) const;
    double norm_squared() const {
        return sym_.squaredNorm();
    }
    /// True if any amplitude touches a loss arm.
    bool occupies_loss_arms() const;

    /// a_i^dag -> sum_k U_ki a_k^dag for each photon.
    TwoPhotonFockState scattered(const ModeMatrix &single_photon_unitary) const;

    /// Probability of exactly one photon in `first` and one in `second` (first != second),
    /// summed over polarization and internal indices.
    double coincidence_probability(Arm first, Arm second) const;

   private:
    explicit TwoPhotonFockState(ModeMatrix sym) : sym_(std::move(sym)) {
    }
    ModeMatrix sym_;
};

/// Partial polarizing beam splitter. Amplitude transmission sqrt(T), reflection
/// i sqrt(1 - T), identical for both input ports.
struct PPBSSpec {
    double t_h;
    double t_v;

    /// Central gate element: T_H = 1, T_V = 1/3.
    static PPBSSpec central();
    /// Loss-balancing element: T_H = 1/3, T_V = 1.
    static PPBSSpec balancing();

    /// Throws DomainError unless 0 <= T <= 1.
    void validate() const;
    /// 2x2 port scattering matrix [[t, r], [r, t]] for one polarization.
    Eigen::Matrix2cd scattering(Pol pol) const;
};

/// Single-photon unitary of a PPBS coupling arms `a` and `b`; identity on the other arms.
ModeMatrix ppbs_unitary(const PPBSSpec &spec, Arm a, Arm b);

/// Scatters a state on the two input arms (system, pointer) through a PPBS.
/// Throws DomainError if the state populates a loss arm.
TwoPhotonFockState ppbs_scatter(const TwoPhotonFockState &state, const PPBSSpec &spec);

/// Overlap of the two photons' internal states, in [0, 1].
class Indistinguishability {
   public:
    explicit Indistinguishability(double eta);
    double eta() const {
        return eta_;
    }
    /// Internal state of the system photon: |0>.
    Eigen::Vector2cd system_internal() const;
    /// Internal state of the pointer photon: eta|0> + sqrt(1 - eta^2)|1>.
    Eigen::Vector2cd pointer_internal() const;

   private:
    double eta_;
};

/// Coincidence probability for one photon per input arm, both in the same
/// polarization, at a splitter of transmission T. Computed by Fock-space scattering.
double hom_coincidence(const Indistinguishability &eta, double transmission);

/// A trace-non-increasing completely positive map in Kraus form. All Kraus
/// operators share one composite space.
class KrausMap {
   public:
    explicit KrausMap(std::vector<Operator> kraus);

    const std::vector<Operator> &kraus() const {
        return kraus_;
    }
    const CompositeSpace &space() const {
        return kraus_.front().space();
    }
    size_t dim() const {
        return kraus_.front().dim();
    }

    /// sum_e K_e rho K_e^dag.
    Eigen::MatrixXcd apply(const Eigen::MatrixXcd &rho) const;
    /// Tr(sum_e K_e^dag K_e rho) for a normalized input rho.
    double success_probability(const Eigen::MatrixXcd &rho) const;
    /// Success probability averaged over the maximally mixed input.
    double average_success_probability() const;
    /// Entanglement (process) fidelity of the success-normalized map with U:
    ///   sum_e |Tr(U^dag K_e)|^2 / (d^2 * average success).
    double process_fidelity(const Operator &target) const;
    /// Choi matrix sum_ij |i><j| (x) E(|i><j|), row index (input, output).
    Eigen::MatrixXcd choi() const;
    /// Rescales every Kraus operator by `factor`.
    KrausMap scaled(double factor) const;

   private:
    std::vector<Operator> kraus_;
};

struct CzGate {
    /// Post-selected map on pol (x) pointer, ordered HH, HV, VH, VV.
    KrausMap process;
    /// Average coincidence probability.
    double success_probability;
    bool balanced;
};

/// Builds the PPBS CZ gate: a central PPBS (T_H = 1, T_V = 1/3) mixing the
/// system and pointer arms, followed on each output arm by a balancing PPBS
/// (T_H = 1/3, T_V = 1) that dumps H amplitude into a loss arm, and post-selection
/// on one photon per output arm. Internal states are traced out.
/// With eta = 1 and balancing, the map is CZ/3 with success 1/9.
CzGate cz_from_ppbs(const Indistinguishability &eta, bool balanced = true);

/// True if `process` is a single Kraus operator proportional to `target` up to a
/// global phase, and the success probability is input independent.
bool equals_up_to_phase(const KrausMap &process, const Operator &target, double tolerance);

/// Gate-level U_M: half-wave plates at theta_a on the system polarization and
/// theta_g = g/4 on the pointer, each applied before and after the PPBS CZ.
/// Returned unnormalized (success ~ 1/9); at eta = 1 equals U_M / 3.
KrausMap gate_level_measurement_unitary(double g, double theta_a, const Indistinguishability &eta,
                                        bool balanced = true);

/// Gate-level U_tot on path (x) pol (x) pointer: the lower-path system photon
/// meets the pointer at the PPBS; the upper-path photon traverses the same
/// optics without a partner. Kraus operators share the internal-state
/// environment basis across both branches.
KrausMap gate_level_total_map(double g, double theta_a, const Indistinguishability &eta,
                              bool balanced = true);

}  // namespace cheshire::photonics

#endif
