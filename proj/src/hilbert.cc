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

#include "cheshire/hilbert.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cheshire {

namespace {

const Complex kI(0.0, 1.0);

void require_same_space(const CompositeSpace &a, const CompositeSpace &b, const char *what) {
    if (!(a == b)) {
        throw SpaceMismatch(std::string(what) + ": operands live on different composite spaces");
    }
}

}  // namespace

size_t Space::level_index(std::string_view level) const {
    auto it = std::find(levels.begin(), levels.end(), level);
    if (it == levels.end()) {
        throw SpaceMismatch("space '" + name + "' has no level '" + std::string(level) + "'");
    }
    return static_cast<size_t>(it - levels.begin());
}

namespace spaces {
Space path() {
    return {"path", {"u", "l"}};
}
Space polarization() {
    return {"pol", {"H", "V"}};
}
Space pointer() {
    return {"pointer", {"H", "V"}};
}
}  // namespace spaces

std::string BasisLabel::str() const {
    std::string out = "|";
    for (size_t k = 0; k < factors.size(); k++) {
        if (k) {
            out += ",";
        }
        out += factors[k].second;
    }
    return out + ">";
}

CompositeSpace::CompositeSpace(std::vector<Space> factors) : factors_(std::move(factors)) {
    for (size_t a = 0; a < factors_.size(); a++) {
        if (factors_[a].dim() == 0) {
            throw SpaceMismatch("space '" + factors_[a].name + "' has no levels");
        }
        for (size_t b = a + 1; b < factors_.size(); b++) {
            if (factors_[a].name == factors_[b].name) {
                throw SpaceMismatch("duplicate factor space '" + factors_[a].name + "'");
            }
        }
    }
}

CompositeSpace::CompositeSpace(std::initializer_list<Space> factors)
    : CompositeSpace(std::vector<Space>(factors)) {
}

size_t CompositeSpace::dim() const {
    size_t d = 1;
    for (const auto &f : factors_) {
        d *= f.dim();
    }
    return d;
}

std::vector<std::string> CompositeSpace::names() const {
    std::vector<std::string> out;
    for (const auto &f : factors_) {
        out.push_back(f.name);
    }
    return out;
}

size_t CompositeSpace::find(std::string_view name) const {
    for (size_t k = 0; k < factors_.size(); k++) {
        if (factors_[k].name == name) {
            return k;
        }
    }
    return npos;
}

bool CompositeSpace::disjoint(const CompositeSpace &other) const {
    for (const auto &f : factors_) {
        if (other.contains(f.name)) {
            return false;
        }
    }
    return true;
}

std::vector<size_t> CompositeSpace::digits(size_t index) const {
    std::vector<size_t> out(factors_.size());
    for (size_t k = factors_.size(); k-- > 0;) {
        out[k] = index % factors_[k].dim();
        index /= factors_[k].dim();
    }
    return out;
}

size_t CompositeSpace::flatten(const std::vector<size_t> &digits) const {
    if (digits.size() != factors_.size()) {
        throw SpaceMismatch("digit count does not match factor count");
    }
    size_t index = 0;
    for (size_t k = 0; k < factors_.size(); k++) {
        if (digits[k] >= factors_[k].dim()) {
            throw SpaceMismatch("level index out of range for space '" + factors_[k].name + "'");
        }
        index = index * factors_[k].dim() + digits[k];
    }
    return index;
}

size_t CompositeSpace::index_of(const BasisLabel &label) const {
    if (label.factors.size() != factors_.size()) {
        throw SpaceMismatch("basis label " + label.str() + " has the wrong number of factors");
    }
    std::vector<size_t> d(factors_.size());
    for (size_t k = 0; k < factors_.size(); k++) {
        if (label.factors[k].first != factors_[k].name) {
            throw SpaceMismatch("basis label factor '" + label.factors[k].first + "' where '" +
                                factors_[k].name + "' was expected");
        }
        d[k] = factors_[k].level_index(label.factors[k].second);
    }
    return flatten(d);
}

BasisLabel CompositeSpace::label_at(size_t index) const {
    BasisLabel out;
    auto d = digits(index);
    for (size_t k = 0; k < factors_.size(); k++) {
        out.factors.emplace_back(factors_[k].name, factors_[k].levels[d[k]]);
    }
    return out;
}

CompositeSpace CompositeSpace::concat(const CompositeSpace &other) const {
    if (!disjoint(other)) {
        throw SpaceMismatch("tensor product of overlapping spaces");
    }
    std::vector<Space> f = factors_;
    f.insert(f.end(), other.factors_.begin(), other.factors_.end());
    return CompositeSpace(std::move(f));
}

StateVector::StateVector(CompositeSpace space, Eigen::VectorXcd amplitudes)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
    if (static_cast<size_t>(amplitudes_.size()) != space_.dim()) {
        throw SpaceMismatch("amplitude count does not match the space dimension");
    }
    if (!amplitudes_.allFinite()) {
        throw DomainError("state vector has non-finite amplitudes");
    }
}

StateVector StateVector::basis(const CompositeSpace &space, const std::vector<std::string> &levels) {
    if (levels.size() != space.num_factors()) {
        throw SpaceMismatch("basis(): one level per factor is required");
    }
    std::vector<size_t> d;
    for (size_t k = 0; k < levels.size(); k++) {
        d.push_back(space.factors()[k].level_index(levels[k]));
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.dim()));
    v[static_cast<Eigen::Index>(space.flatten(d))] = 1.0;
    return {space, std::move(v)};
}

StateVector StateVector::zero(const CompositeSpace &space) {
    return {space, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.dim()))};
}

Complex StateVector::amplitude(const BasisLabel &label) const {
    return amplitudes_[static_cast<Eigen::Index>(space_.index_of(label))];
}

bool StateVector::is_normalized() const {
    return std::abs(norm_squared() - 1.0) <= tol::kEquality;
}

StateVector StateVector::normalized() const {
    double n = norm();
    if (n <= tol::kZero) {
        throw DomainError("cannot normalize the zero vector");
    }
    return {space_, amplitudes_ / n};
}

StateVector StateVector::operator+(const StateVector &other) const {
    require_same_space(space_, other.space_, "state addition");
    return {space_, amplitudes_ + other.amplitudes_};
}

StateVector StateVector::operator-(const StateVector &other) const {
    require_same_space(space_, other.space_, "state subtraction");
    return {space_, amplitudes_ - other.amplitudes_};
}

StateVector StateVector::operator*(Complex scale) const {
    return {space_, amplitudes_ * scale};
}

Operator::Operator(CompositeSpace space, Eigen::MatrixXcd matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
    auto d = static_cast<Eigen::Index>(space_.dim());
    if (matrix_.rows() != d || matrix_.cols() != d) {
        throw SpaceMismatch("operator matrix shape does not match the space dimension");
    }
    if (!matrix_.allFinite()) {
        throw DomainError("operator has non-finite entries");
    }
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
    unitary_ = (matrix_.adjoint() * matrix_ - id).cwiseAbs().maxCoeff() <= tol::kUnitarity;
    hermitian_ = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() <= tol::kHermiticity;
}

Operator Operator::identity(const CompositeSpace &space) {
    auto d = static_cast<Eigen::Index>(space.dim());
    return {space, Eigen::MatrixXcd::Identity(d, d)};
}

Operator Operator::zero(const CompositeSpace &space) {
    auto d = static_cast<Eigen::Index>(space.dim());
    return {space, Eigen::MatrixXcd::Zero(d, d)};
}

Operator Operator::projector(const StateVector &psi) {
    double n2 = psi.norm_squared();
    if (n2 <= tol::kZero * tol::kZero) {
        throw DomainError("projector onto the zero vector");
    }
    return {psi.space(), psi.amplitudes() * psi.amplitudes().adjoint() / n2};
}

Operator Operator::outer(const StateVector &ket, const StateVector &bra) {
    require_same_space(ket.space(), bra.space(), "outer product");
    return {ket.space(), ket.amplitudes() * bra.amplitudes().adjoint()};
}

Operator Operator::adjoint() const {
    return {space_, matrix_.adjoint()};
}

Operator Operator::operator+(const Operator &other) const {
    require_same_space(space_, other.space_, "operator addition");
    return {space_, matrix_ + other.matrix_};
}

Operator Operator::operator-(const Operator &other) const {
    require_same_space(space_, other.space_, "operator subtraction");
    return {space_, matrix_ - other.matrix_};
}

Operator Operator::operator*(const Operator &other) const {
    require_same_space(space_, other.space_, "operator product");
    return {space_, matrix_ * other.matrix_};
}

Operator Operator::operator*(Complex scale) const {
    return {space_, matrix_ * scale};
}

double Operator::max_abs_diff(const Operator &other) const {
    require_same_space(space_, other.space_, "operator comparison");
    return (matrix_ - other.matrix_).cwiseAbs().maxCoeff();
}

namespace ops {

namespace {
void require_qubit(const Space &s) {
    if (s.dim() != 2) {
        throw SpaceMismatch("Pauli operators need a two-level space, got '" + s.name + "'");
    }
}
}  // namespace

Operator pauli_x(const Space &s) {
    require_qubit(s);
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return {CompositeSpace{s}, m};
}

Operator pauli_y(const Space &s) {
    require_qubit(s);
    Eigen::Matrix2cd m;
    m << 0, -kI, kI, 0;
    return {CompositeSpace{s}, m};
}

Operator pauli_z(const Space &s) {
    require_qubit(s);
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return {CompositeSpace{s}, m};
}

Operator identity(const Space &s) {
    return Operator::identity(CompositeSpace{s});
}

Operator level_projector(const Space &s, std::string_view level) {
    return Operator::projector(StateVector::basis(CompositeSpace{s}, {std::string(level)}));
}

}  // namespace ops

namespace states {

namespace {
StateVector qubit(const Space &s, Complex a, Complex b) {
    if (s.dim() != 2) {
        throw SpaceMismatch("polarization states need a two-level space, got '" + s.name + "'");
    }
    Eigen::Vector2cd v(a, b);
    return {CompositeSpace{s}, v};
}
}  // namespace

StateVector diagonal(const Space &s) {
    return qubit(s, M_SQRT1_2, M_SQRT1_2);
}
StateVector antidiagonal(const Space &s) {
    return qubit(s, M_SQRT1_2, -M_SQRT1_2);
}
StateVector right_circular(const Space &s) {
    return qubit(s, M_SQRT1_2, -kI * M_SQRT1_2);
}
StateVector left_circular(const Space &s) {
    return qubit(s, M_SQRT1_2, kI * M_SQRT1_2);
}
StateVector level(const Space &s, std::string_view level) {
    return StateVector::basis(CompositeSpace{s}, {std::string(level)});
}

}  // namespace states

StateVector tensor(const StateVector &a, const StateVector &b) {
    auto space = a.space().concat(b.space());
    Eigen::VectorXcd v(static_cast<Eigen::Index>(space.dim()));
    auto nb = b.amplitudes().size();
    for (Eigen::Index i = 0; i < a.amplitudes().size(); i++) {
        v.segment(i * nb, nb) = a.amplitudes()[i] * b.amplitudes();
    }
    return {std::move(space), std::move(v)};
}

Operator tensor(const Operator &a, const Operator &b) {
    auto space = a.space().concat(b.space());
    const auto &ma = a.matrix();
    const auto &mb = b.matrix();
    auto nb = mb.rows();
    Eigen::MatrixXcd m(ma.rows() * nb, ma.cols() * nb);
    for (Eigen::Index i = 0; i < ma.rows(); i++) {
        for (Eigen::Index j = 0; j < ma.cols(); j++) {
            m.block(i * nb, j * nb, nb, nb) = ma(i, j) * mb;
        }
    }
    return {std::move(space), std::move(m)};
}

Operator embed(const Operator &op, const CompositeSpace &target) {
    const auto &src = op.space();
    if (src == target) {
        return op;
    }
    // where[k] = position in target of op's k-th factor.
    std::vector<size_t> where;
    for (const auto &f : src.factors()) {
        size_t pos = target.find(f.name);
        if (pos == CompositeSpace::npos) {
            throw SpaceMismatch("operator factor '" + f.name + "' is absent from the target space");
        }
        if (!(target.factors()[pos] == f)) {
            throw SpaceMismatch("operator factor '" + f.name + "' has different levels in the target space");
        }
        where.push_back(pos);
    }
    std::vector<bool> acted(target.num_factors(), false);
    for (size_t pos : where) {
        acted[pos] = true;
    }

    auto d = target.dim();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    std::vector<size_t> sub_row(where.size());
    std::vector<size_t> sub_col(where.size());
    for (size_t r = 0; r < d; r++) {
        auto dr = target.digits(r);
        for (size_t c = 0; c < d; c++) {
            auto dc = target.digits(c);
            bool spectators_match = true;
            for (size_t k = 0; k < dr.size(); k++) {
                if (!acted[k] && dr[k] != dc[k]) {
                    spectators_match = false;
                    break;
                }
            }
            if (!spectators_match) {
                continue;
            }
            for (size_t k = 0; k < where.size(); k++) {
                sub_row[k] = dr[where[k]];
                sub_col[k] = dc[where[k]];
            }
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                op.matrix()(static_cast<Eigen::Index>(src.flatten(sub_row)),
                            static_cast<Eigen::Index>(src.flatten(sub_col)));
        }
    }
    return {target, std::move(m)};
}

StateVector apply(const Operator &op, const StateVector &psi) {
    if (op.space() == psi.space()) {
        return {psi.space(), op.matrix() * psi.amplitudes()};
    }
    auto full = embed(op, psi.space());
    return {psi.space(), full.matrix() * psi.amplitudes()};
}

Complex inner(const StateVector &a, const StateVector &b) {
    require_same_space(a.space(), b.space(), "inner product");
    return a.amplitudes().dot(b.amplitudes());
}

StateVector contract(const StateVector &bra, const StateVector &psi) {
    const auto &full = psi.space();
    std::vector<size_t> where;
    for (const auto &f : bra.space().factors()) {
        size_t pos = full.find(f.name);
        if (pos == CompositeSpace::npos || !(full.factors()[pos] == f)) {
            throw SpaceMismatch("contract(): factor '" + f.name + "' is not part of the state's space");
        }
        where.push_back(pos);
    }
    std::vector<Space> rest;
    std::vector<size_t> rest_pos;
    for (size_t k = 0; k < full.num_factors(); k++) {
        if (std::find(where.begin(), where.end(), k) == where.end()) {
            rest.push_back(full.factors()[k]);
            rest_pos.push_back(k);
        }
    }
    CompositeSpace out_space(rest);
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(out_space.dim()));
    std::vector<size_t> sub_bra(where.size());
    std::vector<size_t> sub_out(rest_pos.size());
    for (size_t i = 0; i < full.dim(); i++) {
        auto d = full.digits(i);
        for (size_t k = 0; k < where.size(); k++) {
            sub_bra[k] = d[where[k]];
        }
        for (size_t k = 0; k < rest_pos.size(); k++) {
            sub_out[k] = d[rest_pos[k]];
        }
        auto bi = static_cast<Eigen::Index>(bra.space().flatten(sub_bra));
        auto oi = static_cast<Eigen::Index>(out_space.flatten(sub_out));
        out[oi] += std::conj(bra.amplitudes()[bi]) * psi.amplitudes()[static_cast<Eigen::Index>(i)];
    }
    return {std::move(out_space), std::move(out)};
}

Complex expectation(const Operator &op, const StateVector &psi) {
    double n2 = psi.norm_squared();
    if (n2 <= tol::kZero * tol::kZero) {
        throw DomainError("expectation value in the zero vector");
    }
    return inner(psi, apply(op, psi)) / n2;
}

}  // namespace cheshire
