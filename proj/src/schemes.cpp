#include "cde/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cde/bounds.hpp"
#include "cde/errors.hpp"
#include "cde/rng.hpp"

namespace cde {

namespace {

void require_field_size(FieldSpec field, int k, const char* op) {
    if (field.q() < static_cast<std::uint32_t>(k))
        throw FieldSizeError(std::string(op) + ": need q >= k = " + std::to_string(k) +
                             ", have q = " + std::to_string(field.q()));
}

std::vector<Subspace> initial_subspaces(const Instance& inst, FieldSpec field) {
    std::vector<Subspace> subspaces;
    subspaces.reserve(static_cast<std::size_t>(inst.k()));
    for (int i = 1; i <= inst.k(); ++i)
        subspaces.push_back(coordinate_subspace(inst.holding(i), static_cast<std::size_t>(inst.n), field));
    return subspaces;
}

std::vector<int> dims_of(const std::vector<Subspace>& subspaces) {
    std::vector<int> dims;
    dims.reserve(subspaces.size());
    for (const auto& s : subspaces) dims.push_back(static_cast<int>(s.dim()));
    return dims;
}

void require_permutation(const std::vector<int>& ordering, int k, const char* op) {
    if (static_cast<int>(ordering.size()) != k)
        throw std::invalid_argument(std::string(op) + ": ordering has " + std::to_string(ordering.size()) +
                                    " entries for k = " + std::to_string(k));
    std::vector<bool> seen(static_cast<std::size_t>(k) + 1, false);
    for (int c : ordering) {
        if (c < 1 || c > k || seen[static_cast<std::size_t>(c)])
            throw std::invalid_argument(std::string(op) + ": not a permutation of 1.." + std::to_string(k));
        seen[static_cast<std::size_t>(c)] = true;
    }
}

long long factorial(int k) {
    long long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

} // namespace

std::string to_string(SchemeTag tag) {
    switch (tag) {
        case SchemeTag::ie: return "IE";
        case SchemeTag::leader: return "leader";
        case SchemeTag::random: return "random";
    }
    throw std::logic_error("unknown scheme tag");
}

bool VerifyReport::all_satisfied() const {
    return std::all_of(clients.begin(), clients.end(),
                       [](const ClientVerdict& v) { return v.satisfied; });
}

std::pair<Schedule, IETranscript> run_ie(const Instance& inst, FieldSpec field) {
    require_valid(inst);
    require_field_size(field, inst.k(), "run_ie");

    const int n = inst.n;
    auto subspaces = initial_subspaces(inst, field);
    std::vector<int> active(static_cast<std::size_t>(inst.k()));
    std::iota(active.begin(), active.end(), 1);

    Schedule schedule(SchemeTag::ie, field);
    IETranscript transcript;
    transcript.initial_dims = dims_of(subspaces);

    int round = 0;
    for (;;) {
        const bool someone_short = std::any_of(active.begin(), active.end(), [&](int c) {
            return subspaces[static_cast<std::size_t>(c - 1)].dim() < static_cast<std::size_t>(n);
        });
        if (!someone_short) break;
        ++round;

        // merge clients with identical subspaces down to the lowest index
        std::vector<int> survivors;
        for (int c : active) {
            bool duplicate = false;
            for (int s : survivors) {
                if (subspaces[static_cast<std::size_t>(s - 1)] == subspaces[static_cast<std::size_t>(c - 1)]) {
                    transcript.merges.push_back({round, s, c});
                    duplicate = true;
                    break;
                }
            }
            if (!duplicate) survivors.push_back(c);
        }
        active = std::move(survivors);

        int sender = active.front();
        for (int c : active) {
            if (subspaces[static_cast<std::size_t>(c - 1)].dim() > subspaces[static_cast<std::size_t>(sender - 1)].dim())
                sender = c;
        }

        std::vector<const Subspace*> obstacles;
        for (int c : active) {
            if (c != sender) obstacles.push_back(&subspaces[static_cast<std::size_t>(c - 1)]);
        }

        CodingVector b = find_avoiding_vector(subspaces[static_cast<std::size_t>(sender - 1)], obstacles);

        IERound record;
        record.round = round;
        record.active = active;
        record.sender = sender;
        record.dims_before = dims_of(subspaces);

        schedule.transmissions.push_back({round, sender, b});
        for (auto& s : subspaces) s.insert(b);

        record.dims_after = dims_of(subspaces);
        transcript.rounds.push_back(std::move(record));
    }

    return {std::move(schedule), std::move(transcript)};
}

Schedule run_leader(const Instance& inst, FieldSpec field, std::optional<int> leader) {
    require_valid(inst);
    require_field_size(field, inst.k(), "run_leader");

    const int chosen = leader.value_or(upper_bound_leader(inst).second);
    if (chosen < 1 || chosen > inst.k())
        throw std::invalid_argument("run_leader: leader index " + std::to_string(chosen) +
                                    " outside [1, " + std::to_string(inst.k()) + "]");

    const int n = inst.n;
    auto subspaces = initial_subspaces(inst, field);
    Schedule schedule(SchemeTag::leader, field);
    int round = 0;

    // Phase 1: complete the leader with uncoded packets
    const auto st = stats(inst);
    for (int l : st.complements[static_cast<std::size_t>(chosen - 1)]) {
        int sender = 0;
        for (int i = 1; i <= inst.k(); ++i) {
            if (inst.holding(i).contains(l)) { sender = i; break; }
        }
        CodingVector v = CodingVector::unit(static_cast<std::size_t>(l), static_cast<std::size_t>(n), field);
        ++round;
        schedule.transmissions.push_back({round, sender, v});
        for (auto& s : subspaces) s.insert(v);
    }

    if (!subspaces[static_cast<std::size_t>(chosen - 1)].full())
        throw std::logic_error("run_leader: leader not complete after phase 1");

    // Phase 2: leader broadcasts one innovative combination per round for
    // every client still short of full dimension
    for (;;) {
        std::vector<const Subspace*> deficient;
        for (int i = 1; i <= inst.k(); ++i) {
            if (!subspaces[static_cast<std::size_t>(i - 1)].full())
                deficient.push_back(&subspaces[static_cast<std::size_t>(i - 1)]);
        }
        if (deficient.empty()) break;

        CodingVector b = find_avoiding_vector(subspaces[static_cast<std::size_t>(chosen - 1)], deficient);
        ++round;
        schedule.transmissions.push_back({round, chosen, b});
        for (auto& s : subspaces) s.insert(b);
    }

    return schedule;
}

RandomOrderResult random_tau(const Instance& inst, const std::vector<int>& ordering) {
    require_valid(inst);
    require_permutation(ordering, inst.k(), "random_tau");

    const auto st = stats(inst);
    RandomOrderResult result;
    result.ordering = ordering;

    std::set<int> prefix;
    for (std::size_t pos = 0; pos < ordering.size(); ++pos) {
        const int cj = ordering[pos];
        int best = 0;
        for (int ci : ordering) {
            if (ci == cj) continue;
            int count = 0;
            for (int l : inst.holding(cj)) {
                if (st.complements[static_cast<std::size_t>(ci - 1)].contains(l) && !prefix.contains(l))
                    ++count;
            }
            best = std::max(best, count);
        }
        result.per_step.push_back(best);
        result.total += best;
        prefix.insert(inst.holding(cj).begin(), inst.holding(cj).end());
    }
    return result;
}

Rational random_average_exact(const Instance& inst) {
    require_valid(inst);
    constexpr int kExactCap = 9;
    if (inst.k() > kExactCap)
        throw CapacityError("random_average_exact: k = " + std::to_string(inst.k()) +
                            " exceeds the exact-enumeration cap " + std::to_string(kExactCap) +
                            "; use random_average_mc");

    std::vector<int> ordering(static_cast<std::size_t>(inst.k()));
    std::iota(ordering.begin(), ordering.end(), 1);

    long long sum = 0;
    do {
        sum += random_tau(inst, ordering).total;
    } while (std::next_permutation(ordering.begin(), ordering.end()));

    const long long den = factorial(inst.k());
    const long long g = std::gcd(sum, den);
    return {sum / g, den / g};
}

McEstimate random_average_mc(const Instance& inst, long long samples, std::uint64_t seed) {
    require_valid(inst);
    if (samples < 2) throw std::invalid_argument("random_average_mc: need samples >= 2");

    Rng rng(seed);
    std::vector<int> ordering(static_cast<std::size_t>(inst.k()));
    std::vector<double> totals;
    totals.reserve(static_cast<std::size_t>(samples));
    for (long long s = 0; s < samples; ++s) {
        std::iota(ordering.begin(), ordering.end(), 1);
        rng.shuffle(ordering);
        totals.push_back(static_cast<double>(random_tau(inst, ordering).total));
    }

    const double mean = std::accumulate(totals.begin(), totals.end(), 0.0) / static_cast<double>(samples);
    double ss = 0.0;
    for (double t : totals) ss += (t - mean) * (t - mean);
    const double variance = ss / static_cast<double>(samples - 1);
    return {mean, std::sqrt(variance / static_cast<double>(samples)), samples};
}

Schedule random_schedule(const Instance& inst, const std::vector<int>& ordering, FieldSpec field) {
    require_valid(inst);
    require_permutation(ordering, inst.k(), "random_schedule");
    require_field_size(field, inst.k(), "random_schedule");

    const auto n = static_cast<std::size_t>(inst.n);
    auto subspaces = initial_subspaces(inst, field);
    Schedule schedule(SchemeTag::random, field);

    std::set<int> prefix;
    int round = 0;
    for (int sender : ordering) {
        std::set<int> fresh;
        for (int l : inst.holding(sender)) {
            if (!prefix.contains(l)) fresh.insert(l);
        }
        if (!fresh.empty()) {
            const Subspace source = coordinate_subspace(fresh, n, field);
            for (;;) {
                std::vector<const Subspace*> obstacles;
                for (int c = 1; c <= inst.k(); ++c) {
                    if (!subspaces[static_cast<std::size_t>(c - 1)].contains_all(source))
                        obstacles.push_back(&subspaces[static_cast<std::size_t>(c - 1)]);
                }
                if (obstacles.empty()) break;

                CodingVector b = find_avoiding_vector(source, obstacles);
                ++round;
                schedule.transmissions.push_back({round, sender, b});
                for (auto& s : subspaces) s.insert(b);
            }
        }
        prefix.insert(inst.holding(sender).begin(), inst.holding(sender).end());
    }
    return schedule;
}

VerifyReport verify_schedule(const Instance& inst, const Schedule& schedule) {
    require_valid(inst);
    for (const auto& t : schedule.transmissions) {
        if (t.vector.size() != static_cast<std::size_t>(inst.n))
            throw std::invalid_argument("verify_schedule: transmission vector of length " +
                                        std::to_string(t.vector.size()) + " for n = " + std::to_string(inst.n));
        if (t.sender < 1 || t.sender > inst.k())
            throw std::invalid_argument("verify_schedule: sender " + std::to_string(t.sender) +
                                        " outside [1, " + std::to_string(inst.k()) + "]");
    }

    auto subspaces = initial_subspaces(inst, schedule.field);
    VerifyReport report;
    for (const auto& t : schedule.transmissions) {
        const bool legal = !t.vector.is_zero() &&
                           subspaces[static_cast<std::size_t>(t.sender - 1)].contains(t.vector);
        if (!legal) {
            report.senders_legal = false;
            report.illegal_rounds.push_back(t.round);
        }
        for (auto& s : subspaces) s.insert(t.vector);
    }

    for (int i = 1; i <= inst.k(); ++i) {
        const int dim = static_cast<int>(subspaces[static_cast<std::size_t>(i - 1)].dim());
        report.clients.push_back({i, dim, dim == inst.n});
    }
    return report;
}

SimulationResult simulate_payloads(const Instance& inst, const Schedule& schedule, std::uint64_t seed) {
    const auto report = verify_schedule(inst, schedule);
    if (!report.all_satisfied())
        throw std::invalid_argument("simulate_payloads: schedule does not satisfy every client");

    const FieldSpec field = schedule.field;
    Rng rng(seed);

    SimulationResult result;
    result.ground_truth.reserve(static_cast<std::size_t>(inst.n));
    for (int l = 0; l < inst.n; ++l)
        result.ground_truth.emplace_back(rng.uniform_below(field.q()), field);

    std::vector<FieldElem> payloads;
    payloads.reserve(schedule.transmissions.size());
    for (const auto& t : schedule.transmissions)
        payloads.push_back(t.vector.dot(result.ground_truth));

    result.all_match = true;
    for (int i = 1; i <= inst.k(); ++i) {
        if (inst.n == 0) {
            result.decoded.emplace_back();
            continue;
        }
        std::vector<std::pair<CodingVector, FieldElem>> rows;
        for (int l : inst.holding(i)) {
            rows.emplace_back(CodingVector::unit(static_cast<std::size_t>(l), static_cast<std::size_t>(inst.n), field),
                              result.ground_truth[static_cast<std::size_t>(l - 1)]);
        }
        for (std::size_t t = 0; t < schedule.transmissions.size(); ++t)
            rows.emplace_back(schedule.transmissions[t].vector, payloads[t]);

        result.decoded.push_back(solve_packets(rows));
        if (result.decoded.back() != result.ground_truth) result.all_match = false;
    }
    return result;
}

std::string schedule_to_json(const Schedule& schedule) {
    nlohmann::ordered_json doc;
    doc["scheme"] = to_string(schedule.scheme);
    doc["field_q"] = schedule.field.q();
    doc["total"] = schedule.total();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& t : schedule.transmissions) {
        nlohmann::ordered_json item;
        item["round"] = t.round;
        item["sender"] = t.sender;
        item["vector"] = t.vector.coeffs();
        arr.push_back(std::move(item));
    }
    doc["transmissions"] = std::move(arr);
    return doc.dump();
}

Schedule parse_schedule(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("schedule: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("scheme") || !doc.contains("field_q") ||
        !doc.contains("total") || !doc.contains("transmissions"))
        throw ParseError("schedule: expected object with scheme, field_q, total, transmissions");

    SchemeTag tag;
    const std::string scheme = doc["scheme"].get<std::string>();
    if (scheme == "IE") tag = SchemeTag::ie;
    else if (scheme == "leader") tag = SchemeTag::leader;
    else if (scheme == "random") tag = SchemeTag::random;
    else throw ParseError("schedule: unknown scheme tag \"" + scheme + "\"");

    if (!doc["field_q"].is_number_integer())
        throw ParseError("schedule: field_q must be an integer");
    FieldSpec field = [&] {
        try {
            return FieldSpec(doc["field_q"].get<std::uint32_t>());
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("schedule: ") + e.what());
        }
    }();

    Schedule schedule(tag, field);
    if (!doc["transmissions"].is_array())
        throw ParseError("schedule: transmissions must be an array");
    for (const auto& item : doc["transmissions"]) {
        if (!item.is_object() || !item.contains("round") || !item.contains("sender") || !item.contains("vector"))
            throw ParseError("schedule: each transmission needs round, sender, vector");
        std::vector<std::uint32_t> coeffs;
        for (const auto& entry : item["vector"]) {
            if (!entry.is_number_integer() || entry.get<long long>() < 0 ||
                entry.get<long long>() >= static_cast<long long>(field.q()))
                throw ParseError("schedule: vector entry outside [0, q)");
            coeffs.push_back(entry.get<std::uint32_t>());
        }
        schedule.transmissions.push_back(
            {item["round"].get<int>(), item["sender"].get<int>(), CodingVector(std::move(coeffs), field)});
    }
    if (!doc["total"].is_number_integer() || doc["total"].get<int>() != schedule.total())
        throw ParseError("schedule: total does not match transmission count");
    return schedule;
}

Schedule load_schedule_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open schedule file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_schedule(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

} // namespace cde
