#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "cde/field.hpp"

namespace cde {

/// Coefficient vector over GF(q) defining a broadcast as a linear combination
/// of the n packets. Coordinate l-1 multiplies packet x_l.
class CodingVector {
public:
    CodingVector(std::size_t n, FieldSpec field)
        : field_(field), c_(n, 0) {}

    CodingVector(std::vector<std::uint32_t> coeffs, FieldSpec field);

    /// Unit vector e_l for a 1-based packet index.
    static CodingVector unit(std::size_t packet, std::size_t n, FieldSpec field);

    std::size_t size() const { return c_.size(); }
    const FieldSpec& field() const { return field_; }

    std::uint32_t operator[](std::size_t i) const { return c_[i]; }
    FieldElem at(std::size_t i) const { return {c_[i], field_}; }

    const std::vector<std::uint32_t>& coeffs() const { return c_; }

    bool is_zero() const;

    /// this += lambda * other (componentwise, mod q).
    void add_scaled(const CodingVector& other, std::uint32_t lambda);

    /// this *= lambda.
    void scale(std::uint32_t lambda);

    /// Inner product with a payload vector of length n.
    FieldElem dot(const std::vector<FieldElem>& payloads) const;

    bool operator==(const CodingVector& rhs) const;
    bool operator!=(const CodingVector& rhs) const { return !(*this == rhs); }

private:
    FieldSpec field_;
    std::vector<std::uint32_t> c_;
};

/// A subspace of GF(q)^n kept in reduced row-echelon form. RREF is canonical,
/// so equality is structural. No zero row is ever stored.
class Subspace {
public:
    Subspace(std::size_t ambient, FieldSpec field)
        : field_(field), ambient_(ambient) {}

    std::size_t ambient() const { return ambient_; }
    const FieldSpec& field() const { return field_; }
    std::size_t dim() const { return rows_.size(); }
    bool full() const { return dim() == ambient_; }

    const std::vector<CodingVector>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// Adds v to the span, maintaining RREF. Returns true iff the dimension
    /// grew (v was not already contained). Single-owner mutation; share
    /// Subspace values across threads only once no writer remains.
    bool insert(const CodingVector& v);

    bool contains(const CodingVector& v) const;

    /// Containment of an entire subspace: every row of other lies in *this.
    bool contains_all(const Subspace& other) const;

    bool operator==(const Subspace& rhs) const;
    bool operator!=(const Subspace& rhs) const { return !(*this == rhs); }

private:
    void require_compatible(const CodingVector& v) const;

    /// Reduces v against the stored rows; result is zero iff v is contained.
    CodingVector reduce(CodingVector v) const;

    FieldSpec field_;
    std::size_t ambient_;
    std::vector<CodingVector> rows_;
    std::vector<std::size_t> pivots_; // strictly increasing, one per row
};

/// Span of {e_l : l in indices} (1-based packet indices).
Subspace coordinate_subspace(const std::set<int>& indices, std::size_t n, FieldSpec field);

/// Picks b in source with b not in O for every obstacle O. Deterministic:
/// starts from the first source row outside the first violated obstacle and
/// repairs later collisions with the smallest scalar that keeps every earlier
/// obstacle avoided. Requires q >= #obstacles + 1 and source not contained in
/// any obstacle.
CodingVector find_avoiding_vector(const Subspace& source,
                                  const std::vector<const Subspace*>& obstacles);

CodingVector find_avoiding_vector(const Subspace& source,
                                  const std::vector<Subspace>& obstacles);

/// Solves for the unique payload vector consistent with (coding vector, payload)
/// rows. Throws UnderdeterminedError when rank < n and InconsistentSystemError
/// when the rows contradict each other.
std::vector<FieldElem> solve_packets(const std::vector<std::pair<CodingVector, FieldElem>>& rows);

} // namespace cde
