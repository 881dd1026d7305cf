#include "cde/field.hpp"

#include <limits>
#include <stdexcept>

namespace cde {

bool is_prime(std::uint64_t m) {
    if (m < 2) return false;
    if (m % 2 == 0) return m == 2;
    for (std::uint64_t d = 3; d * d <= m; d += 2) {
        if (m % d == 0) return false;
    }
    return true;
}

std::uint32_t smallest_prime_geq(std::uint32_t m) {
    std::uint64_t q = m < 2 ? 2 : m;
    while (!is_prime(q)) ++q;
    if (q > std::numeric_limits<std::uint32_t>::max())
        throw std::overflow_error("smallest_prime_geq: no 32-bit prime >= m");
    return static_cast<std::uint32_t>(q);
}

FieldSpec::FieldSpec(std::uint32_t q) : q_(q) {
    if (!is_prime(q)) throw std::invalid_argument("FieldSpec: modulus " + std::to_string(q) + " is not prime");
}

void FieldElem::require_same_field(const FieldElem& rhs) const {
    if (spec_ != rhs.spec_)
        throw std::invalid_argument("FieldElem: operands bound to different fields (GF(" +
                                    std::to_string(spec_.q()) + ") vs GF(" + std::to_string(rhs.spec_.q()) + "))");
}

FieldElem FieldElem::operator+(const FieldElem& rhs) const {
    require_same_field(rhs);
    return {static_cast<std::uint64_t>(v_) + rhs.v_, spec_};
}

FieldElem FieldElem::operator-(const FieldElem& rhs) const {
    require_same_field(rhs);
    return {static_cast<std::uint64_t>(v_) + spec_.q() - rhs.v_, spec_};
}

FieldElem FieldElem::operator*(const FieldElem& rhs) const {
    require_same_field(rhs);
    return {static_cast<std::uint64_t>(v_) * rhs.v_, spec_};
}

FieldElem FieldElem::inverse() const {
    if (v_ == 0) throw std::domain_error("FieldElem: zero has no multiplicative inverse");
    // extended Euclid on (q, v)
    std::int64_t q = spec_.q();
    std::int64_t r0 = q, r1 = v_;
    std::int64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
        std::int64_t quot = r0 / r1;
        std::int64_t r2 = r0 - quot * r1;
        std::int64_t t2 = t0 - quot * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (t0 < 0) t0 += q;
    return {static_cast<std::uint64_t>(t0), spec_};
}

bool FieldElem::operator==(const FieldElem& rhs) const {
    require_same_field(rhs);
    return v_ == rhs.v_;
}

} // namespace cde
