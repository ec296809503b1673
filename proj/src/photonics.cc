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

#include "cheshire/photonics.h"

#include <cmath>

#include "cheshire/scenario.h"

namespace cheshire::photonics {

namespace {

constexpr std::array<Pol, 2> kPols{Pol::kH, Pol::kV};

// Kraus operators with every entry below this are dropped.
constexpr double kNegligibleKraus = 1e-15;

Eigen::Index idx(Arm arm, Pol pol, size_t internal) {
    return static_cast<Eigen::Index>(OpticalMode{arm, pol, static_cast<unsigned char>(internal)}.index());
}

CompositeSpace gate_space() {
    return {spaces::polarization(), spaces::pointer()};
}

ModeMatrix network_unitary(bool balanced) {
    ModeMatrix u = ppbs_unitary(PPBSSpec::central(), Arm::kSystem, Arm::kPointer);
    if (balanced) {
        u = ppbs_unitary(PPBSSpec::balancing(), Arm::kPointer, Arm::kLossPointer) *
            ppbs_unitary(PPBSSpec::balancing(), Arm::kSystem, Arm::kLossSystem) * u;
    }
    return u;
}

// Kraus operators indexed by the traced-out internal indices (e_sys, e_ptr),
// flattened as 2 * e_sys + e_ptr. Entry [(q_s, q_p), (p_s, p_p)] of each matrix.
using EnvKraus = std::array<Eigen::Matrix4cd, kInternalDim * kInternalDim>;

EnvKraus zero_env_kraus() {
    EnvKraus k;
    for (auto &m : k) {
        m.setZero();
    }
    return k;
}

// Two photons meeting at the network: the post-selected (one photon per output arm) amplitudes.
EnvKraus interfering_branch(const ModeMatrix &net, const Indistinguishability &eta) {
    EnvKraus k = zero_env_kraus();
    for (size_t ps = 0; ps < 2; ps++) {
        for (size_t pp = 0; pp < 2; pp++) {
            auto u = single_photon(Arm::kSystem, kPols[ps], eta.system_internal());
            auto v = single_photon(Arm::kPointer, kPols[pp], eta.pointer_internal());
            auto out = TwoPhotonFockState::from_photons(u, v).scattered(net);
            for (size_t qs = 0; qs < 2; qs++) {
                for (size_t qp = 0; qp < 2; qp++) {
                    for (size_t es = 0; es < kInternalDim; es++) {
                        for (size_t ep = 0; ep < kInternalDim; ep++) {
                            OpticalMode a{Arm::kSystem, kPols[qs], static_cast<unsigned char>(es)};
                            OpticalMode b{Arm::kPointer, kPols[qp], static_cast<unsigned char>(ep)};
                            k[2 * es + ep](2 * qs + qp, 2 * ps + pp) = out.amplitude(a, b);
                        }
                    }
                }
            }
        }
    }
    return k;
}

// Photons traversing the network in separate spatial regions: amplitudes factorize.
// Cross-arm outputs from the unpartnered region are not post-selected.
EnvKraus separated_branch(const ModeMatrix &net, const Indistinguishability &eta) {
    EnvKraus k = zero_env_kraus();
    for (size_t ps = 0; ps < 2; ps++) {
        for (size_t pp = 0; pp < 2; pp++) {
            ModeVector sys_out = net * single_photon(Arm::kSystem, kPols[ps], eta.system_internal());
            ModeVector ptr_out = net * single_photon(Arm::kPointer, kPols[pp], eta.pointer_internal());
            for (size_t qs = 0; qs < 2; qs++) {
                for (size_t qp = 0; qp < 2; qp++) {
                    for (size_t es = 0; es < kInternalDim; es++) {
                        for (size_t ep = 0; ep < kInternalDim; ep++) {
                            k[2 * es + ep](2 * qs + qp, 2 * ps + pp) =
                                sys_out[idx(Arm::kSystem, kPols[qs], es)] * ptr_out[idx(Arm::kPointer, kPols[qp], ep)];
                        }
                    }
                }
            }
        }
    }
    return k;
}

Eigen::Matrix4cd waveplate_frame(double g, double theta_a) {
    Eigen::Matrix2cd w_a = half_wave_plate(theta_a);
    Eigen::Matrix2cd w_g = half_wave_plate(g / 4);
    Eigen::Matrix4cd w;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            w.block<2, 2>(2 * i, 2 * j) = w_a(i, j) * w_g;
        }
    }
    return w;
}

Eigen::Matrix4cd pointer_frame(double g) {
    Eigen::Matrix2cd w_g = half_wave_plate(g / 4);
    Eigen::Matrix4cd w = Eigen::Matrix4cd::Zero();
    w.block<2, 2>(0, 0) = w_g;
    w.block<2, 2>(2, 2) = w_g;
    return w;
}

bool negligible(const Eigen::MatrixXcd &m) {
    return m.cwiseAbs().maxCoeff() <= kNegligibleKraus;
}

}  // namespace

size_t OpticalMode::index() const {
    return (static_cast<size_t>(arm) * 2 + static_cast<size_t>(pol)) * kInternalDim + internal;
}

OpticalMode OpticalMode::from_index(size_t index) {
    auto internal = static_cast<unsigned char>(index % kInternalDim);
    index /= kInternalDim;
    auto pol = static_cast<Pol>(index % 2);
    auto arm = static_cast<Arm>(index / 2);
    return {arm, pol, internal};
}

ModeVector single_photon(Arm arm, Pol pol, const Eigen::Vector2cd &internal) {
    ModeVector v = ModeVector::Zero();
    for (size_t k = 0; k < kInternalDim; k++) {
        v[idx(arm, pol, k)] = internal[static_cast<Eigen::Index>(k)];
    }
    return v;
}

TwoPhotonFockState TwoPhotonFockState::from_photons(const ModeVector &u, const ModeVector &v) {
    ModeMatrix m = (u * v.transpose() + v * u.transpose()) * M_SQRT1_2;
    return TwoPhotonFockState(m);
}

TwoPhotonFockState TwoPhotonFockState::from_ordered(const ModeMatrix &ordered) {
    ModeMatrix m = (ordered + ordered.transpose()) * 0.5;
    return TwoPhotonFockState(m);
}

Complex TwoPhotonFockState::amplitude(const OpticalMode &a, const OpticalMode &b) const {
    auto i = static_cast<Eigen::Index>(a.index());
    auto j = static_cast<Eigen::Index>(b.index());
    if (i == j) {
        return sym_(i, i);
    }
    return M_SQRT2 * sym_(i, j);
}

bool TwoPhotonFockState::occupies_loss_arms() const {
    for (size_t i = 0; i < kNumModes; i++) {
        if (!OpticalMode::from_index(i).is_loss()) {
            continue;
        }
        if (sym_.row(static_cast<Eigen::Index>(i)).cwiseAbs().maxCoeff() > 0) {
            return true;
        }
    }
    return false;
}

TwoPhotonFockState TwoPhotonFockState::scattered(const ModeMatrix &single_photon_unitary) const {
    ModeMatrix m = single_photon_unitary * sym_ * single_photon_unitary.transpose();
    return TwoPhotonFockState(m);
}

double TwoPhotonFockState::coincidence_probability(Arm first, Arm second) const {
    if (first == second) {
        throw DomainError("coincidence_probability needs two distinct arms");
    }
    double p = 0;
    for (size_t i = 0; i < kNumModes; i++) {
        if (OpticalMode::from_index(i).arm != first) {
            continue;
        }
        for (size_t j = 0; j < kNumModes; j++) {
            if (OpticalMode::from_index(j).arm != second) {
                continue;
            }
            p += 2 * std::norm(sym_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        }
    }
    return p;
}

PPBSSpec PPBSSpec::central() {
    return {1.0, 1.0 / 3.0};
}

PPBSSpec PPBSSpec::balancing() {
    return {1.0 / 3.0, 1.0};
}

void PPBSSpec::validate() const {
    for (double t : {t_h, t_v}) {
        if (!(t >= 0 && t <= 1)) {
            throw DomainError("PPBS transmissions must lie in [0, 1]");
        }
    }
}

Eigen::Matrix2cd PPBSSpec::scattering(Pol pol) const {
    validate();
    double trans = pol == Pol::kH ? t_h : t_v;
    Complex t = std::sqrt(trans);
    Complex r(0, std::sqrt(1 - trans));
    Eigen::Matrix2cd s;
    s << t, r, r, t;
    return s;
}

ModeMatrix ppbs_unitary(const PPBSSpec &spec, Arm a, Arm b) {
    if (a == b) {
        throw DomainError("a beam splitter couples two distinct arms");
    }
    ModeMatrix u = ModeMatrix::Identity();
    for (Pol pol : kPols) {
        Eigen::Matrix2cd s = spec.scattering(pol);
        for (size_t k = 0; k < kInternalDim; k++) {
            auto ia = idx(a, pol, k);
            auto ib = idx(b, pol, k);
            u(ia, ia) = s(0, 0);
            u(ib, ia) = s(1, 0);
            u(ia, ib) = s(0, 1);
            u(ib, ib) = s(1, 1);
        }
    }
    return u;
}

TwoPhotonFockState ppbs_scatter(const TwoPhotonFockState &state, const PPBSSpec &spec) {
    if (state.occupies_loss_arms()) {
        throw DomainError("PPBS input may only populate the system and pointer arms");
    }
    return state.scattered(ppbs_unitary(spec, Arm::kSystem, Arm::kPointer));
}

Indistinguishability::Indistinguishability(double eta) : eta_(eta) {
    if (!(eta >= 0 && eta <= 1)) {
        throw DomainError("indistinguishability eta must lie in [0, 1]");
    }
}

Eigen::Vector2cd Indistinguishability::system_internal() const {
    return {1, 0};
}

Eigen::Vector2cd Indistinguishability::pointer_internal() const {
    return {eta_, std::sqrt(1 - eta_ * eta_)};
}

double hom_coincidence(const Indistinguishability &eta, double transmission) {
    PPBSSpec spec{transmission, transmission};
    auto u = single_photon(Arm::kSystem, Pol::kH, eta.system_internal());
    auto v = single_photon(Arm::kPointer, Pol::kH, eta.pointer_internal());
    auto out = ppbs_scatter(TwoPhotonFockState::from_photons(u, v), spec);
    return out.coincidence_probability(Arm::kSystem, Arm::kPointer);
}

KrausMap::KrausMap(std::vector<Operator> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) {
        throw DomainError("a Kraus map needs at least one operator");
    }
    for (const auto &k : kraus_) {
        if (!(k.space() == kraus_.front().space())) {
            throw SpaceMismatch("Kraus operators must share one space");
        }
    }
}

Eigen::MatrixXcd KrausMap::apply(const Eigen::MatrixXcd &rho) const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
    for (const auto &k : kraus_) {
        out += k.matrix() * rho * k.matrix().adjoint();
    }
    return out;
}

double KrausMap::success_probability(const Eigen::MatrixXcd &rho) const {
    return apply(rho).trace().real();
}

double KrausMap::average_success_probability() const {
    double total = 0;
    for (const auto &k : kraus_) {
        total += k.matrix().squaredNorm();
    }
    return total / static_cast<double>(dim());
}

double KrausMap::process_fidelity(const Operator &target) const {
    if (!(target.space() == space())) {
        throw SpaceMismatch("process fidelity against an operator on another space");
    }
    double overlap = 0;
    for (const auto &k : kraus_) {
        overlap += std::norm((target.matrix().adjoint() * k.matrix()).trace());
    }
    auto d = static_cast<double>(dim());
    return overlap / (d * d * average_success_probability());
}

Eigen::MatrixXcd KrausMap::choi() const {
    auto d = static_cast<Eigen::Index>(dim());
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(d * d, d * d);
    for (Eigen::Index i = 0; i < d; i++) {
        for (Eigen::Index j = 0; j < d; j++) {
            Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(d, d);
            e(i, j) = 1;
            c.block(i * d, j * d, d, d) = apply(e);
        }
    }
    return c;
}

KrausMap KrausMap::scaled(double factor) const {
    std::vector<Operator> out;
    for (const auto &k : kraus_) {
        out.push_back(k * factor);
    }
    return KrausMap(std::move(out));
}

CzGate cz_from_ppbs(const Indistinguishability &eta, bool balanced) {
    auto env = interfering_branch(network_unitary(balanced), eta);
    std::vector<Operator> kraus;
    for (const auto &k : env) {
        if (!negligible(k)) {
            kraus.emplace_back(gate_space(), k);
        }
    }
    KrausMap process(std::move(kraus));
    double success = process.average_success_probability();
    return {std::move(process), success, balanced};
}

bool equals_up_to_phase(const KrausMap &process, const Operator &target, double tolerance) {
    if (process.kraus().size() != 1 || !(process.space() == target.space())) {
        return false;
    }
    const auto &k = process.kraus().front().matrix();
    const auto &u = target.matrix();
    Complex c = (u.adjoint() * k).trace() / static_cast<double>(u.rows());
    if (std::abs(c) <= tol::kZero) {
        return false;
    }
    return ((k / c) - u).cwiseAbs().maxCoeff() <= tolerance;
}

KrausMap gate_level_measurement_unitary(double g, double theta_a, const Indistinguishability &eta, bool balanced) {
    Eigen::Matrix4cd w = waveplate_frame(g, theta_a);
    auto env = interfering_branch(network_unitary(balanced), eta);
    std::vector<Operator> kraus;
    for (const auto &k : env) {
        if (!negligible(k)) {
            Eigen::Matrix4cd m = w * k * w;
            kraus.emplace_back(gate_space(), m);
        }
    }
    return KrausMap(std::move(kraus));
}

KrausMap gate_level_total_map(double g, double theta_a, const Indistinguishability &eta, bool balanced) {
    ModeMatrix net = network_unitary(balanced);
    auto lower = interfering_branch(net, eta);
    auto upper = separated_branch(net, eta);
    Eigen::Matrix4cd w_lower = waveplate_frame(g, theta_a);
    Eigen::Matrix4cd w_upper = pointer_frame(g);

    std::vector<Operator> kraus;
    for (size_t e = 0; e < lower.size(); e++) {
        Eigen::Matrix4cd low = w_lower * lower[e] * w_lower;
        Eigen::Matrix4cd up = w_upper * upper[e] * w_upper;
        if (negligible(low) && negligible(up)) {
            continue;
        }
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(8, 8);
        m.block<4, 4>(0, 0) = up;
        m.block<4, 4>(4, 4) = low;
        kraus.emplace_back(joint_space(), m);
    }
    return KrausMap(std::move(kraus));
}

}  // namespace cheshire::photonics
