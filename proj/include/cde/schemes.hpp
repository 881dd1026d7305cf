#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cde/field.hpp"
#include "cde/instance.hpp"
#include "cde/linalg.hpp"

namespace cde {

enum class SchemeTag { ie, leader, random };

std::string to_string(SchemeTag tag);

/// One broadcast: the sender emits the packet combination defined by `vector`.
/// The vector must be nonzero and lie in the sender's knowledge subspace at
/// send time; `verify_schedule` re-checks both.
struct Transmission {
    int round = 0; // 1-based position in the schedule
    int sender = 0;
    CodingVector vector;
};

struct Schedule {
    SchemeTag scheme = SchemeTag::ie;
    FieldSpec field;
    std::vector<Transmission> transmissions;

    explicit Schedule(SchemeTag tag, FieldSpec f) : scheme(tag), field(f) {}

    int total() const { return static_cast<int>(transmissions.size()); }
};

struct MergeEvent {
    int round = 0;
    int survivor = 0;
    int removed = 0;
};

struct IERound {
    int round = 0;
    std::vector<int> active; // client ids still standing after this round's merges
    int sender = 0;
    std::vector<int> dims_before; // dim Y_i for every original client, pre-broadcast
    std::vector<int> dims_after;
};

struct IETranscript {
    std::vector<int> initial_dims;
    std::vector<IERound> rounds;
    std::vector<MergeEvent> merges;
};

struct RandomOrderResult {
    std::vector<int> ordering;
    std::vector<int> per_step; // transmissions contributed by each ordering position
    int total = 0;
};

/// Exact average as a reduced fraction.
struct Rational {
    long long num = 0;
    long long den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    long long samples = 0;
};

struct ClientVerdict {
    int client = 0;
    int final_dim = 0;
    bool satisfied = false;
};

struct VerifyReport {
    std::vector<ClientVerdict> clients;
    bool senders_legal = true;
    std::vector<int> illegal_rounds;

    bool all_satisfied() const;
    bool ok() const { return senders_legal && all_satisfied(); }
};

struct SimulationResult {
    std::vector<FieldElem> ground_truth;
    std::vector<std::vector<FieldElem>> decoded; // decoded[i-1] = client i's packets
    bool all_match = false;
};

/// Greedy max-dimension-sender exchange. Every round the highest-dimension
/// client broadcasts a combination outside every other active client's
/// subspace, so all non-senders gain a dimension; clients whose subspaces
/// coincide are merged down to the lowest index first. Requires q >= k.
std::pair<Schedule, IETranscript> run_ie(const Instance& inst, FieldSpec field);

/// Two-phase scheme: uncoded transmissions complete the leader, then the
/// leader serves everyone else with coded broadcasts. Total always equals the
/// leader's term of the closed-form upper bound. Defaults to the best leader.
Schedule run_leader(const Instance& inst, FieldSpec field, std::optional<int> leader = std::nullopt);

/// Transmission count of the fixed-ordering scheme: position j contributes
/// max_{i != j} |X_{pi(j)} ∩ (X̄_{pi(i)} \ (X_{pi(1)} ∪ ... ∪ X_{pi(j-1)}))|.
RandomOrderResult random_tau(const Instance& inst, const std::vector<int>& ordering);

/// Average of random_tau over all k! orderings. CapacityError for k > 9.
Rational random_average_exact(const Instance& inst);

/// Monte Carlo estimate of the same average from uniformly sampled orderings;
/// deterministic given the seed. Needs samples >= 2 for a standard error.
McEstimate random_average_mc(const Instance& inst, long long samples, std::uint64_t seed);

/// Coded realization of the fixed-ordering scheme; its per-position batch
/// lengths match random_tau exactly.
Schedule random_schedule(const Instance& inst, const std::vector<int>& ordering, FieldSpec field);

/// Replays a schedule: tracks every client's subspace, flags transmissions
/// whose vector was outside the sender's subspace (or zero), reports final
/// dimensions.
VerifyReport verify_schedule(const Instance& inst, const Schedule& schedule);

/// End-to-end decode check with concrete payloads: draws random ground truth,
/// computes each broadcast's payload, and solves per client. Requires the
/// schedule to verify as satisfied.
SimulationResult simulate_payloads(const Instance& inst, const Schedule& schedule, std::uint64_t seed);

/// JSON document {"scheme": str, "field_q": int, "total": int,
/// "transmissions": [{"round": int, "sender": int, "vector": [int,...]}, ...]}.
std::string schedule_to_json(const Schedule& schedule);
Schedule parse_schedule(const std::string& text);
Schedule load_schedule_file(const std::string& path);

} // namespace cde
