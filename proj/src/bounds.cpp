#include "cde/bounds.hpp"

#include <algorithm>

#include <json.hpp>

namespace cde {

namespace {

int intersection_size(const std::set<int>& a, const std::set<int>& b) {
    const std::set<int>& small = a.size() <= b.size() ? a : b;
    const std::set<int>& big = a.size() <= b.size() ? b : a;
    int count = 0;
    for (int x : small) {
        if (big.contains(x)) ++count;
    }
    return count;
}

} // namespace

int lower_bound(const Instance& inst) {
    const auto st = stats(inst);
    const bool all_equal = st.n_min == st.n_max;
    int bound = inst.n - st.n_min;
    if (all_equal && st.n_min < inst.n) ++bound;
    return bound;
}

std::pair<int, int> upper_bound_leader(const Instance& inst) {
    const auto st = stats(inst);
    int best = -1;
    int best_leader = 1;
    for (int i = 1; i <= inst.k(); ++i) {
        int phase2 = 0;
        for (int j = 1; j <= inst.k(); ++j)
            phase2 = std::max(phase2, intersection_size(st.complements[static_cast<std::size_t>(j - 1)],
                                                        inst.holding(i)));
        const int total = static_cast<int>(st.complements[static_cast<std::size_t>(i - 1)].size()) + phase2;
        if (best < 0 || total < best) {
            best = total;
            best_leader = i;
        }
    }
    return {best, best_leader};
}

int ie_guarantee(const Instance& inst) {
    const auto st = stats(inst);
    return std::min(inst.n, 2 * inst.n - st.n_max - st.n_min);
}

BoundsReport bounds_report(const Instance& inst) {
    BoundsReport report;
    report.lower = lower_bound(inst);
    const auto [upper, leader] = upper_bound_leader(inst);
    report.upper_leader = upper;
    report.best_leader = leader;
    report.ie_guarantee = ie_guarantee(inst);
    report.trivial = inst.n;
    return report;
}

std::string bounds_to_json(const BoundsReport& report) {
    nlohmann::ordered_json doc;
    doc["lower"] = report.lower;
    doc["upper_leader"] = report.upper_leader;
    doc["ie_guarantee"] = report.ie_guarantee;
    doc["trivial"] = report.trivial;
    doc["best_leader"] = report.best_leader;
    return doc.dump();
}

} // namespace cde
