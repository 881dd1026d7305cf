#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cde/field.hpp"
#include "cde/instance.hpp"
#include "cde/linalg.hpp"

namespace cde {

/// Candidate transmission matrix: one row per broadcast, attributed to a
/// sender. Rows may only use coefficients on packets the sender holds, and a
/// sender contributes at most n_i rows.
struct CodingMatrix {
    FieldSpec field;
    std::vector<std::pair<int, CodingVector>> rows; // (sender, vector)

    explicit CodingMatrix(FieldSpec f) : field(f) {}
};

struct OracleResult {
    int tau_star = 0;
    CodingMatrix witness;
    long long nodes_explored = 0;
};

/// Exact search outcome. When the candidate budget runs out the oracle
/// degrades to the closed-form bracket instead of failing.
struct OracleOutcome {
    std::optional<OracleResult> result;
    int bracket_lower = 0;
    int bracket_upper = 0;
    long long nodes_explored = 0;

    bool solved() const { return result.has_value(); }
};

/// True iff stacking A's rows onto every client's side-information rows
/// reaches full rank n for all clients. Throws std::invalid_argument when A
/// violates the support or row-count constraints.
bool feasible(const CodingMatrix& A, const Instance& inst);

inline constexpr long long kDefaultOracleBudget = 10'000'000;

/// Iterative deepening over the transmission count t, enumerating sender
/// multisets (non-decreasing, capped at n_i rows each) and support-constrained
/// rows with leading coefficient 1 (strictly increasing per sender block, so
/// scalar multiples and row reorderings are never revisited). The first t with
/// a feasible matrix is the exact optimum for this field.
OracleOutcome optimal_tau(const Instance& inst, FieldSpec field,
                          long long budget = kDefaultOracleBudget);

std::string oracle_to_json(const OracleOutcome& outcome, FieldSpec field);

} // namespace cde
