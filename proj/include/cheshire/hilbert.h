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

#ifndef CHESHIRE_HILBERT_H
#define CHESHIRE_HILBERT_H

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cheshire/errors.h"

namespace cheshire {

using Complex = std::complex<double>;

namespace tol {
/// Tolerance used when verifying U^dag U = I on construction.
inline constexpr double kUnitarity = 1e-10;
/// Tolerance used when verifying A = A^dag on construction.
inline constexpr double kHermiticity = 1e-10;
/// Generic numerical equality (normalization, weak-value recomputation).
inline constexpr double kEquality = 1e-12;
/// Magnitudes below this are treated as exact zeros (overlaps, norms).
inline constexpr double kZero = 1e-12;
}  // namespace tol

/// A named finite-dimensional factor space, e.g. path with levels {u, l}.
struct Space {
    std::string name;
    std::vector<std::string> levels;

    size_t dim() const {
        return levels.size();
    }
    size_t level_index(std::string_view level) const;
    bool operator==(const Space &other) const = default;
};

namespace spaces {
/// Interferometer arm of the system photon, levels (u, l).
Space path();
/// Polarization of the system photon, levels (H, V).
Space polarization();
/// Polarization of the pointer photon, levels (H, V).
Space pointer();
}  // namespace spaces

/// One basis vector of a composite space: a (space-name, level-name) per factor, in factor order.
struct BasisLabel {
    std::vector<std::pair<std::string, std::string>> factors;

    std::string str() const;
    bool operator==(const BasisLabel &other) const = default;
};

/// Ordered tensor product of factor spaces. Index ordering is lexicographic with
/// the first factor most significant (row-major Kronecker convention).
class CompositeSpace {
   public:
    CompositeSpace() = default;
    explicit CompositeSpace(std::vector<Space> factors);
    CompositeSpace(std::initializer_list<Space> factors);

    const std::vector<Space> &factors() const {
        return factors_;
    }
    size_t dim() const;
    size_t num_factors() const {
        return factors_.size();
    }
    std::vector<std::string> names() const;

    /// Position of the named factor, or npos.
    size_t find(std::string_view name) const;
    bool contains(std::string_view name) const {
        return find(name) != npos;
    }
    bool disjoint(const CompositeSpace &other) const;

    size_t index_of(const BasisLabel &label) const;
    BasisLabel label_at(size_t index) const;
    /// Per-factor level indices of a flat basis index.
    std::vector<size_t> digits(size_t index) const;
    size_t flatten(const std::vector<size_t> &digits) const;

    CompositeSpace concat(const CompositeSpace &other) const;

    bool operator==(const CompositeSpace &other) const = default;

    static constexpr size_t npos = static_cast<size_t>(-1);

   private:
    std::vector<Space> factors_;
};

class StateVector {
   public:
    StateVector(CompositeSpace space, Eigen::VectorXcd amplitudes);

    /// The basis vector named by `levels`, one level per factor in factor order.
    static StateVector basis(const CompositeSpace &space, const std::vector<std::string> &levels);
    static StateVector zero(const CompositeSpace &space);

    const CompositeSpace &space() const {
        return space_;
    }
    const Eigen::VectorXcd &amplitudes() const {
        return amplitudes_;
    }
    size_t dim() const {
        return static_cast<size_t>(amplitudes_.size());
    }
    Complex amplitude(const BasisLabel &label) const;
    Complex operator[](size_t index) const {
        return amplitudes_[static_cast<Eigen::Index>(index)];
    }

    double norm_squared() const {
        return amplitudes_.squaredNorm();
    }
    double norm() const {
        return amplitudes_.norm();
    }
    bool is_normalized() const;
    /// Throws DomainError for the zero vector.
    StateVector normalized() const;

    StateVector operator+(const StateVector &other) const;
    StateVector operator-(const StateVector &other) const;
    StateVector operator*(Complex scale) const;
    friend StateVector operator*(Complex scale, const StateVector &psi) {
        return psi * scale;
    }

   private:
    CompositeSpace space_;
    Eigen::VectorXcd amplitudes_;
};

/// Dense operator over a composite space. Unitarity and hermiticity are
/// determined once, on construction.
class Operator {
   public:
    Operator(CompositeSpace space, Eigen::MatrixXcd matrix);

    static Operator identity(const CompositeSpace &space);
    static Operator zero(const CompositeSpace &space);
    /// |psi><psi| / <psi|psi>.
    static Operator projector(const StateVector &psi);
    /// |ket><bra|.
    static Operator outer(const StateVector &ket, const StateVector &bra);

    const CompositeSpace &space() const {
        return space_;
    }
    const Eigen::MatrixXcd &matrix() const {
        return matrix_;
    }
    size_t dim() const {
        return static_cast<size_t>(matrix_.rows());
    }
    bool is_unitary() const {
        return unitary_;
    }
    bool is_hermitian() const {
        return hermitian_;
    }

    Operator adjoint() const;
    Operator operator+(const Operator &other) const;
    Operator operator-(const Operator &other) const;
    /// Composition; both operands must live on the same composite space.
    Operator operator*(const Operator &other) const;
    Operator operator*(Complex scale) const;
    friend Operator operator*(Complex scale, const Operator &op) {
        return op * scale;
    }

    /// Largest elementwise deviation from another operator on the same space.
    double max_abs_diff(const Operator &other) const;

   private:
    CompositeSpace space_;
    Eigen::MatrixXcd matrix_;
    bool unitary_ = false;
    bool hermitian_ = false;
};

namespace ops {
Operator pauli_x(const Space &s);
Operator pauli_y(const Space &s);
Operator pauli_z(const Space &s);
Operator identity(const Space &s);
/// Projector onto a single named level of a factor space.
Operator level_projector(const Space &s, std::string_view level);
}  // namespace ops

namespace states {
/// (|H> + |V>)/sqrt2 on a polarization-like space.
StateVector diagonal(const Space &s);
/// (|H> - |V>)/sqrt2.
StateVector antidiagonal(const Space &s);
/// (|H> - i|V>)/sqrt2, the +1 eigenstate of sigma_y under the pinned convention.
StateVector right_circular(const Space &s);
/// (|H> + i|V>)/sqrt2.
StateVector left_circular(const Space &s);
StateVector level(const Space &s, std::string_view level);
}  // namespace states

/// Kronecker product; factor spaces must be disjoint by name.
StateVector tensor(const StateVector &a, const StateVector &b);
Operator tensor(const Operator &a, const Operator &b);

/// Pads `op` with identities and reorders it onto `target`. Every factor of
/// op.space() must appear in target (by name, with identical levels).
Operator embed(const Operator &op, const CompositeSpace &target);

/// op * psi, embedding op into psi's space when it acts on a subset of factors.
StateVector apply(const Operator &op, const StateVector &psi);

/// <a|b>, conjugate-linear in a.
Complex inner(const StateVector &a, const StateVector &b);

/// Partial projection (<bra| (x) I) |psi>: contracts bra over its factors and
/// returns the vector on the remaining factors of psi.
StateVector contract(const StateVector &bra, const StateVector &psi);

/// <psi|O|psi> / <psi|psi>; psi need not be normalized. Throws DomainError on
/// the zero vector.
Complex expectation(const Operator &op, const StateVector &psi);

}  // namespace cheshire

#endif
