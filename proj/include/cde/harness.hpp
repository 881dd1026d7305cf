#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cde/field.hpp"
#include "cde/instance.hpp"

namespace cde {

/// Curves to evaluate and emit. The four closed-form/IE curves are always
/// computed internally (the per-trial ordering check needs them); excluded
/// curves are left blank in the CSV.
struct CurveSet {
    bool lower = true;
    bool ie = true;
    bool upper_leader = true;
    bool trivial = true;
    bool random_exact = false;
    bool random_mc = false;
};

struct ExperimentConfig {
    int k = 3;
    std::vector<int> n_values;
    int trials = 100;
    double rho = 0.5;
    std::uint64_t master_seed = 1;
    std::optional<std::uint32_t> field_q; // default: smallest prime >= k
    CurveSet curves;
    long long mc_samples = 2000;
    bool normalize_unique_packets = true; // run schemes on the reduced
                                          // instance, add u to every curve
};

struct ExperimentRow {
    int n = 0;
    int k = 0;
    int trials = 0;
    double u_mean = 0.0;
    double lower_mean = 0.0, lower_sd = 0.0;
    double ie_mean = 0.0, ie_sd = 0.0;
    double upper_leader_mean = 0.0, upper_leader_sd = 0.0;
    int trivial = 0;
    std::optional<double> random_mean, random_sd;
};

/// One row per n value; per-trial seeds derive from (master seed, n, trial),
/// so results are independent of evaluation order. Aborts with a dump of the
/// offending instance if any trial violates lower <= IE <= min(upper, n).
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

/// Header: n,k,trials,u_mean,lower_mean,lower_sd,ie_mean,ie_sd,
/// upper_leader_mean,upper_leader_sd,trivial,random_mean,random_sd
std::string experiment_csv(const std::vector<ExperimentRow>& rows, const CurveSet& curves);

} // namespace cde
