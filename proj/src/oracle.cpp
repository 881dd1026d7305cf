#include "cde/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "cde/bounds.hpp"

namespace cde {

namespace {

bool rank_conditions_hold(const std::vector<std::pair<int, CodingVector>>& rows,
                          const std::vector<Subspace>& side_info, int n, int n_min) {
    if (n == 0) return true;

    Subspace global(static_cast<std::size_t>(n), side_info.front().field());
    for (const auto& [sender, vec] : rows) global.insert(vec);
    if (static_cast<int>(global.dim()) < n - n_min) return false;

    for (const auto& b : side_info) {
        Subspace stacked = b;
        if (stacked.full()) continue;
        for (const auto& [sender, vec] : rows) stacked.insert(vec);
        if (!stacked.full()) return false;
    }
    return true;
}

/// Enumerates the support-constrained nonzero vectors of one sender with
/// leading coefficient 1, addressable by a dense index. With m support
/// columns there are 1 + q + ... + q^(m-1) of them.
class CandidateRows {
public:
    CandidateRows(const std::set<int>& support, int n, FieldSpec field, long long cap)
        : field_(field), n_(n), support_(support.begin(), support.end()) {
        long long running = 0;
        const auto m = static_cast<long long>(support_.size());
        for (long long lead = 0; lead < m; ++lead) {
            prefix_.push_back(running);
            long long block = 1;
            for (long long e = 0; e < m - 1 - lead; ++e) {
                if (block > cap / static_cast<long long>(field.q())) { block = cap + 1; break; }
                block *= field.q();
            }
            running = std::min(running + block, cap + 1);
        }
        count_ = running;
    }

    long long count() const { return count_; }

    CodingVector decode(long long index) const {
        auto lead = static_cast<std::size_t>(
            std::upper_bound(prefix_.begin(), prefix_.end(), index) - prefix_.begin() - 1);
        long long suffix = index - prefix_[lead];

        CodingVector v(static_cast<std::size_t>(n_), field_);
        std::vector<std::uint32_t> coeffs(static_cast<std::size_t>(n_), 0);
        coeffs[static_cast<std::size_t>(support_[lead] - 1)] = 1;
        for (std::size_t col = support_.size(); col-- > lead + 1;) {
            coeffs[static_cast<std::size_t>(support_[col] - 1)] =
                static_cast<std::uint32_t>(suffix % field_.q());
            suffix /= field_.q();
        }
        return {std::move(coeffs), field_};
    }

private:
    FieldSpec field_;
    int n_;
    std::vector<int> support_;
    std::vector<long long> prefix_; // start index of each leading position's block
    long long count_ = 0;
};

struct SearchState {
    const Instance& inst;
    const std::vector<CandidateRows>& candidates;
    const std::vector<Subspace>& side_info;
    int n_min;
    long long budget;
    long long nodes = 0;
    bool exhausted = false;
    std::vector<std::pair<int, CodingVector>> rows;
};

bool search(SearchState& st, int depth, int min_sender, long long min_index) {
    if (depth == 0) {
        if (++st.nodes > st.budget) {
            st.exhausted = true;
            return false;
        }
        return rank_conditions_hold(st.rows, st.side_info, st.inst.n, st.n_min);
    }
    for (int s = min_sender; s <= st.inst.k(); ++s) {
        const auto& cand = st.candidates[static_cast<std::size_t>(s - 1)];
        const int used = static_cast<int>(
            std::count_if(st.rows.begin(), st.rows.end(), [&](const auto& r) { return r.first == s; }));
        if (used >= st.inst.n_i(s)) continue;
        const long long start = (s == min_sender) ? min_index : 0;
        for (long long idx = start; idx < cand.count(); ++idx) {
            st.rows.emplace_back(s, cand.decode(idx));
            if (search(st, depth - 1, s, idx + 1)) return true;
            st.rows.pop_back();
            if (st.exhausted) return false;
        }
    }
    return false;
}

} // namespace

bool feasible(const CodingMatrix& A, const Instance& inst) {
    require_valid(inst);
    std::vector<int> per_sender(static_cast<std::size_t>(inst.k()) + 1, 0);
    for (const auto& [sender, vec] : A.rows) {
        if (sender < 1 || sender > inst.k())
            throw std::invalid_argument("feasible: sender " + std::to_string(sender) + " outside [1, " +
                                        std::to_string(inst.k()) + "]");
        if (vec.size() != static_cast<std::size_t>(inst.n) || vec.field() != A.field)
            throw std::invalid_argument("feasible: row dimension or field mismatch");
        for (std::size_t col = 0; col < vec.size(); ++col) {
            if (vec[col] != 0 && !inst.holding(sender).contains(static_cast<int>(col) + 1))
                throw std::invalid_argument("feasible: sender " + std::to_string(sender) +
                                            " uses packet " + std::to_string(col + 1) + " it does not hold");
        }
        if (++per_sender[static_cast<std::size_t>(sender)] > inst.n_i(sender))
            throw std::invalid_argument("feasible: sender " + std::to_string(sender) + " has more than n_i rows");
    }

    std::vector<Subspace> side_info;
    for (int i = 1; i <= inst.k(); ++i)
        side_info.push_back(coordinate_subspace(inst.holding(i), static_cast<std::size_t>(inst.n), A.field));
    const int n_min = inst.n == 0 ? 0 : stats(inst).n_min;
    return rank_conditions_hold(A.rows, side_info, inst.n, n_min);
}

OracleOutcome optimal_tau(const Instance& inst, FieldSpec field, long long budget) {
    require_valid(inst);
    if (budget < 1) throw std::invalid_argument("optimal_tau: budget must be >= 1");

    OracleOutcome outcome;
    outcome.bracket_lower = lower_bound(inst);
    outcome.bracket_upper = upper_bound_leader(inst).first;

    std::vector<CandidateRows> candidates;
    bool oversize = false;
    for (int i = 1; i <= inst.k(); ++i) {
        candidates.emplace_back(inst.holding(i), inst.n, field, budget);
        if (candidates.back().count() > budget) oversize = true;
    }

    std::vector<Subspace> side_info;
    for (int i = 1; i <= inst.k(); ++i)
        side_info.push_back(coordinate_subspace(inst.holding(i), static_cast<std::size_t>(inst.n), field));
    const auto st = stats(inst);

    SearchState state{inst, candidates, side_info, st.n_min, budget};
    for (int t = outcome.bracket_lower; t <= inst.n; ++t) {
        if (t >= 1 && oversize) {
            // a single row already has more candidates than the budget
            outcome.nodes_explored = state.nodes;
            return outcome;
        }
        state.rows.clear();
        if (search(state, t, 1, 0)) {
            OracleResult result{t, CodingMatrix(field), state.nodes};
            result.witness.rows = state.rows;
            outcome.result = std::move(result);
            outcome.nodes_explored = state.nodes;
            return outcome;
        }
        if (state.exhausted) {
            outcome.nodes_explored = state.nodes;
            return outcome;
        }
    }
    // unreachable: broadcasting one unit vector per packet is always feasible at t = n
    throw std::logic_error("optimal_tau: exhausted depths without a feasible matrix");
}

std::string oracle_to_json(const OracleOutcome& outcome, FieldSpec field) {
    nlohmann::ordered_json doc;
    if (outcome.solved()) {
        doc["tau_star"] = outcome.result->tau_star;
        doc["field_q"] = field.q();
        auto rows = nlohmann::ordered_json::array();
        int round = 0;
        for (const auto& [sender, vec] : outcome.result->witness.rows) {
            nlohmann::ordered_json item;
            item["round"] = ++round;
            item["sender"] = sender;
            item["vector"] = vec.coeffs();
            rows.push_back(std::move(item));
        }
        doc["witness"] = std::move(rows);
        doc["nodes"] = outcome.nodes_explored;
    } else {
        doc["budget_exhausted"] = true;
        doc["field_q"] = field.q();
        doc["lower"] = outcome.bracket_lower;
        doc["upper_leader"] = outcome.bracket_upper;
        doc["nodes"] = outcome.nodes_explored;
    }
    return doc.dump();
}

} // namespace cde
