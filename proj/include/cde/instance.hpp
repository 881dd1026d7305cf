#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace cde {

/// One cooperative-exchange problem: n packets, k clients, and per-client
/// holding sets. Packet indices are 1-based; client indices are 1-based in
/// every public API. Instances are plain values; `validate` reports invariant
/// violations instead of the constructor refusing them.
struct Instance {
    int n = 0;
    std::vector<std::set<int>> holdings; // holdings[i-1] = X_i

    int k() const { return static_cast<int>(holdings.size()); }
    const std::set<int>& holding(int client) const { return holdings.at(client - 1); }
    int n_i(int client) const { return static_cast<int>(holding(client).size()); }

    bool operator==(const Instance& rhs) const = default;
};

/// Derived quantities: extreme holding sizes and per-client complements.
struct InstanceStats {
    int n_min = 0;
    int n_max = 0;
    std::vector<std::set<int>> complements; // complements[i-1] = X̄_i
};

struct NormalizedInstance {
    int unique_count = 0;       // packets held by exactly one client
    Instance reduced;           // original minus unique packets
    std::vector<int> index_map; // index_map[j-1] = original index of reduced packet j
};

/// Empty list means the instance satisfies all invariants (coverage, index
/// ranges, k >= 1, n >= 0).
std::vector<std::string> validate(const Instance& inst);

bool is_valid(const Instance& inst);

/// Throws std::invalid_argument listing the violations.
void require_valid(const Instance& inst);

InstanceStats stats(const Instance& inst);

/// Removes every packet held by exactly one client (the holder can broadcast
/// it uncoded up front), remapping the survivors to 1..n-u.
NormalizedInstance normalize_unique(const Instance& inst);

/// Independent Bernoulli(rho) membership per (client, packet); packets left
/// unowned are repaired onto a uniformly chosen client. Pure in (n, k, rho, seed).
Instance random_instance(int n, int k, double rho, std::uint64_t seed);

/// JSON document {"n": int, "clients": [[int,...], ...]}, 1-based indices.
Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);

Instance load_instance_file(const std::string& path);

} // namespace cde
