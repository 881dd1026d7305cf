#pragma once

#include <string>
#include <utility>

#include "cde/instance.hpp"

namespace cde {

struct BoundsReport {
    int lower = 0;        // every client must receive n - n_i packets; +1 when all n_i equal and < n
    int upper_leader = 0; // best two-phase leader scheme value
    int ie_guarantee = 0; // min{n, 2n - n_max - n_min}
    int trivial = 0;      // n uncoded broadcasts always suffice
    int best_leader = 1;  // smallest client index attaining upper_leader
};

int lower_bound(const Instance& inst);

/// Evaluates min_i {|X̄_i| + max_j |X̄_j ∩ X_i|}; second component is the
/// smallest leader index attaining it.
std::pair<int, int> upper_bound_leader(const Instance& inst);

int ie_guarantee(const Instance& inst);

BoundsReport bounds_report(const Instance& inst);

std::string bounds_to_json(const BoundsReport& report);

} // namespace cde
