#pragma once

#include <cstdint>
#include <string>

namespace cde {

/// Prime field GF(q). Verifies primality by trial division at construction.
/// q is kept small enough (32-bit) that products fit in 64-bit intermediates.
class FieldSpec {
public:
    explicit FieldSpec(std::uint32_t q);

    std::uint32_t q() const { return q_; }

    bool operator==(const FieldSpec& other) const { return q_ == other.q_; }
    bool operator!=(const FieldSpec& other) const { return q_ != other.q_; }

private:
    std::uint32_t q_;
};

/// One element of GF(q), bound to its field. Value is always reduced to [0, q).
class FieldElem {
public:
    FieldElem(std::uint64_t value, FieldSpec spec)
        : spec_(spec), v_(static_cast<std::uint32_t>(value % spec.q())) {}

    std::uint32_t value() const { return v_; }
    const FieldSpec& spec() const { return spec_; }

    bool is_zero() const { return v_ == 0; }

    FieldElem operator+(const FieldElem& rhs) const;
    FieldElem operator-(const FieldElem& rhs) const;
    FieldElem operator*(const FieldElem& rhs) const;

    /// Multiplicative inverse; throws std::domain_error on zero.
    FieldElem inverse() const;

    bool operator==(const FieldElem& rhs) const;
    bool operator!=(const FieldElem& rhs) const { return !(*this == rhs); }

private:
    void require_same_field(const FieldElem& rhs) const;

    FieldSpec spec_;
    std::uint32_t v_;
};

bool is_prime(std::uint64_t m);

/// Least prime q with q >= max(m, 2).
std::uint32_t smallest_prime_geq(std::uint32_t m);

} // namespace cde
