#include "cde/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "cde/errors.hpp"

namespace cde {

namespace {

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t q) {
    return FieldElem(a, FieldSpec(q)).inverse().value();
}

} // namespace

CodingVector::CodingVector(std::vector<std::uint32_t> coeffs, FieldSpec field)
    : field_(field), c_(std::move(coeffs)) {
    for (auto& x : c_) x %= field_.q();
}

CodingVector CodingVector::unit(std::size_t packet, std::size_t n, FieldSpec field) {
    if (packet < 1 || packet > n)
        throw std::invalid_argument("CodingVector::unit: packet index " + std::to_string(packet) +
                                    " outside [1, " + std::to_string(n) + "]");
    CodingVector v(n, field);
    v.c_[packet - 1] = 1;
    return v;
}

bool CodingVector::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](std::uint32_t x) { return x == 0; });
}

void CodingVector::add_scaled(const CodingVector& other, std::uint32_t lambda) {
    if (other.size() != size() || other.field_ != field_)
        throw std::invalid_argument("CodingVector::add_scaled: dimension or field mismatch");
    const std::uint64_t q = field_.q();
    for (std::size_t i = 0; i < c_.size(); ++i)
        c_[i] = static_cast<std::uint32_t>((c_[i] + static_cast<std::uint64_t>(lambda) * other.c_[i]) % q);
}

void CodingVector::scale(std::uint32_t lambda) {
    const std::uint64_t q = field_.q();
    for (auto& x : c_) x = static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * lambda % q);
}

FieldElem CodingVector::dot(const std::vector<FieldElem>& payloads) const {
    if (payloads.size() != size())
        throw std::invalid_argument("CodingVector::dot: payload length mismatch");
    const std::uint64_t q = field_.q();
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < c_.size(); ++i)
        acc = (acc + static_cast<std::uint64_t>(c_[i]) * payloads[i].value()) % q;
    return {acc, field_};
}

bool CodingVector::operator==(const CodingVector& rhs) const {
    return field_ == rhs.field_ && c_ == rhs.c_;
}

void Subspace::require_compatible(const CodingVector& v) const {
    if (v.size() != ambient_)
        throw std::invalid_argument("Subspace: vector of length " + std::to_string(v.size()) +
                                    " in ambient dimension " + std::to_string(ambient_));
    if (v.field() != field_)
        throw std::invalid_argument("Subspace: field mismatch (GF(" + std::to_string(v.field().q()) +
                                    ") vs GF(" + std::to_string(field_.q()) + "))");
}

CodingVector Subspace::reduce(CodingVector v) const {
    const std::uint32_t q = field_.q();
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const std::uint32_t coef = v[pivots_[r]];
        if (coef != 0) v.add_scaled(rows_[r], q - coef); // pivot entry of rows_[r] is 1
    }
    return v;
}

bool Subspace::insert(const CodingVector& v) {
    require_compatible(v);
    CodingVector red = reduce(v);

    std::size_t pivot = red.size();
    for (std::size_t i = 0; i < red.size(); ++i) {
        if (red[i] != 0) { pivot = i; break; }
    }
    if (pivot == red.size()) return false; // already contained

    red.scale(mod_inverse(red[pivot], field_.q()));

    // clear the new pivot column from existing rows, then splice in pivot order
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const std::uint32_t coef = rows_[r][pivot];
        if (coef != 0) rows_[r].add_scaled(red, field_.q() - coef);
    }
    const auto pos = std::upper_bound(pivots_.begin(), pivots_.end(), pivot) - pivots_.begin();
    rows_.insert(rows_.begin() + pos, std::move(red));
    pivots_.insert(pivots_.begin() + pos, pivot);
    return true;
}

bool Subspace::contains(const CodingVector& v) const {
    require_compatible(v);
    return reduce(v).is_zero();
}

bool Subspace::contains_all(const Subspace& other) const {
    for (const auto& row : other.rows()) {
        if (!contains(row)) return false;
    }
    return true;
}

bool Subspace::operator==(const Subspace& rhs) const {
    return field_ == rhs.field_ && ambient_ == rhs.ambient_ &&
           pivots_ == rhs.pivots_ && rows_ == rhs.rows_;
}

Subspace coordinate_subspace(const std::set<int>& indices, std::size_t n, FieldSpec field) {
    Subspace s(n, field);
    for (int l : indices) {
        if (l < 1 || static_cast<std::size_t>(l) > n)
            throw std::invalid_argument("coordinate_subspace: packet index " + std::to_string(l) +
                                        " outside [1, " + std::to_string(n) + "]");
        s.insert(CodingVector::unit(static_cast<std::size_t>(l), n, field));
    }
    return s;
}

CodingVector find_avoiding_vector(const Subspace& source,
                                  const std::vector<const Subspace*>& obstacles) {
    const std::uint32_t q = source.field().q();
    if (static_cast<std::uint64_t>(q) < obstacles.size() + 1)
        throw FieldSizeError("find_avoiding_vector: need q >= " + std::to_string(obstacles.size() + 1) +
                             " for " + std::to_string(obstacles.size()) + " obstacles, have q = " +
                             std::to_string(q));
    for (const Subspace* o : obstacles) {
        if (o->contains_all(source))
            throw InfeasibleError("find_avoiding_vector: an obstacle contains the source subspace");
    }
    if (source.dim() == 0)
        throw InfeasibleError("find_avoiding_vector: source is the zero subspace");

    // first source row outside obstacle o
    auto escape_row = [&](const Subspace& o) -> const CodingVector& {
        for (const auto& row : source.rows()) {
            if (!o.contains(row)) return row;
        }
        throw InfeasibleError("find_avoiding_vector: an obstacle contains the source subspace");
    };

    CodingVector b = obstacles.empty() ? source.rows().front() : escape_row(*obstacles.front());

    for (std::size_t j = 1; j < obstacles.size(); ++j) {
        if (!obstacles[j]->contains(b)) continue;
        const CodingVector& w = escape_row(*obstacles[j]);
        bool repaired = false;
        for (std::uint32_t lambda = 0; lambda < q; ++lambda) {
            CodingVector cand = b;
            cand.add_scaled(w, lambda);
            bool clear = true;
            for (std::size_t m = 0; m <= j; ++m) {
                if (obstacles[m]->contains(cand)) { clear = false; break; }
            }
            if (clear) {
                b = std::move(cand);
                repaired = true;
                break;
            }
        }
        if (!repaired)
            throw FieldSizeError("find_avoiding_vector: field GF(" + std::to_string(q) +
                                 ") exhausted while avoiding obstacles");
    }

    if (!source.contains(b)) throw std::logic_error("find_avoiding_vector: result escaped the source");
    for (const Subspace* o : obstacles) {
        if (o->contains(b)) throw std::logic_error("find_avoiding_vector: result hit an obstacle");
    }
    return b;
}

CodingVector find_avoiding_vector(const Subspace& source, const std::vector<Subspace>& obstacles) {
    std::vector<const Subspace*> ptrs;
    ptrs.reserve(obstacles.size());
    for (const auto& o : obstacles) ptrs.push_back(&o);
    return find_avoiding_vector(source, ptrs);
}

std::vector<FieldElem> solve_packets(const std::vector<std::pair<CodingVector, FieldElem>>& rows) {
    if (rows.empty()) throw UnderdeterminedError("solve_packets: no rows");
    const FieldSpec field = rows.front().first.field();
    const std::size_t n = rows.front().first.size();
    const std::uint64_t q = field.q();

    // Gauss-Jordan on the augmented matrix [Gamma | payload]
    std::vector<std::vector<std::uint32_t>> m;
    m.reserve(rows.size());
    for (const auto& [vec, payload] : rows) {
        if (vec.size() != n || vec.field() != field || payload.spec() != field)
            throw std::invalid_argument("solve_packets: mixed dimensions or fields");
        std::vector<std::uint32_t> row(vec.coeffs());
        row.push_back(payload.value());
        m.push_back(std::move(row));
    }

    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < m.size(); ++col) {
        std::size_t piv = rank;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[rank], m[piv]);
        const std::uint64_t inv = mod_inverse(m[rank][col], field.q());
        for (auto& x : m[rank]) x = static_cast<std::uint32_t>(x * inv % q);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == rank || m[r][col] == 0) continue;
            const std::uint64_t f = q - m[r][col];
            for (std::size_t cidx = 0; cidx <= n; ++cidx)
                m[r][cidx] = static_cast<std::uint32_t>((m[r][cidx] + f * m[rank][cidx]) % q);
        }
        ++rank;
    }

    for (std::size_t r = rank; r < m.size(); ++r) {
        if (m[r][n] != 0)
            throw InconsistentSystemError("solve_packets: contradictory rows (corrupted payloads)");
    }
    if (rank < n)
        throw UnderdeterminedError("solve_packets: rank " + std::to_string(rank) + " < n = " +
                                   std::to_string(n));

    // rank == n: rows 0..n-1 are the identity in column order
    std::vector<FieldElem> out;
    out.reserve(n);
    std::size_t r = 0;
    for (std::size_t col = 0; col < n; ++col) {
        // pivot of row r is col by construction when rank == n
        out.emplace_back(m[r][n], field);
        ++r;
    }
    return out;
}

} // namespace cde
