#include "cde/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "cde/bounds.hpp"
#include "cde/rng.hpp"
#include "cde/schemes.hpp"

namespace cde {

namespace {

struct TrialValues {
    double u = 0.0;
    double lower = 0.0;
    double ie = 0.0;
    double upper = 0.0;
    std::optional<double> random;
};

struct Accumulator {
    std::vector<double> values;

    void add(double v) { values.push_back(v); }

    double mean() const {
        double sum = 0.0;
        for (double v : values) sum += v;
        return values.empty() ? 0.0 : sum / static_cast<double>(values.size());
    }

    double sd() const {
        if (values.size() < 2) return 0.0;
        const double m = mean();
        double ss = 0.0;
        for (double v : values) ss += (v - m) * (v - m);
        return std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
};

void validate_config(const ExperimentConfig& config) {
    if (config.k < 1) throw std::invalid_argument("experiment: k must be >= 1");
    if (config.trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
    if (config.n_values.empty()) throw std::invalid_argument("experiment: no n values");
    for (int n : config.n_values) {
        if (n < 1) throw std::invalid_argument("experiment: n values must be positive");
    }
    if (!(config.rho > 0.0) || config.rho > 1.0)
        throw std::invalid_argument("experiment: need 0 < rho <= 1");
    if (config.curves.random_exact && config.curves.random_mc)
        throw std::invalid_argument("experiment: choose one of random_exact / random_mc");
    if (config.curves.random_exact && config.k > 9)
        throw std::invalid_argument("experiment: random_exact needs k <= 9; use random_mc");
    if (config.curves.random_mc && config.mc_samples < 2)
        throw std::invalid_argument("experiment: random_mc needs samples >= 2");
}

TrialValues run_trial(const ExperimentConfig& config, FieldSpec field, int n, int trial) {
    const std::uint64_t seed = derive_seed(config.master_seed, static_cast<std::uint64_t>(n),
                                           static_cast<std::uint64_t>(trial));
    const Instance inst = random_instance(n, config.k, config.rho, seed);

    int u = 0;
    Instance work = inst;
    if (config.normalize_unique_packets) {
        auto norm = normalize_unique(inst);
        u = norm.unique_count;
        work = std::move(norm.reduced);
    }

    TrialValues vals;
    vals.u = u;
    vals.lower = lower_bound(work) + u;
    vals.upper = upper_bound_leader(work).first + u;

    auto [schedule, transcript] = run_ie(work, field);
    if (!verify_schedule(work, schedule).ok())
        throw std::logic_error("experiment: IE schedule failed verification on instance " +
                               serialize_instance(inst));
    vals.ie = schedule.total() + u;

    if (vals.lower > vals.ie || vals.ie > std::min(vals.upper, static_cast<double>(n)))
        throw std::logic_error("experiment: bound ordering violated (lower=" + std::to_string(vals.lower) +
                               ", ie=" + std::to_string(vals.ie) + ", upper=" + std::to_string(vals.upper) +
                               ", n=" + std::to_string(n) + ") on instance " + serialize_instance(inst));

    if (config.curves.random_exact) {
        vals.random = random_average_exact(work).value() + u;
    } else if (config.curves.random_mc) {
        vals.random = random_average_mc(work, config.mc_samples,
                                        derive_seed(seed, 0x6d63 /* per-trial MC stream */))
                          .estimate +
                      u;
    }
    return vals;
}

} // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
    validate_config(config);
    const FieldSpec field(config.field_q ? *config.field_q
                                         : smallest_prime_geq(static_cast<std::uint32_t>(config.k)));

    std::vector<ExperimentRow> rows;
    for (int n : config.n_values) {
        Accumulator u_acc, lower_acc, ie_acc, upper_acc, random_acc;
        for (int trial = 0; trial < config.trials; ++trial) {
            const TrialValues vals = run_trial(config, field, n, trial);
            u_acc.add(vals.u);
            lower_acc.add(vals.lower);
            ie_acc.add(vals.ie);
            upper_acc.add(vals.upper);
            if (vals.random) random_acc.add(*vals.random);
        }

        ExperimentRow row;
        row.n = n;
        row.k = config.k;
        row.trials = config.trials;
        row.u_mean = u_acc.mean();
        row.lower_mean = lower_acc.mean();
        row.lower_sd = lower_acc.sd();
        row.ie_mean = ie_acc.mean();
        row.ie_sd = ie_acc.sd();
        row.upper_leader_mean = upper_acc.mean();
        row.upper_leader_sd = upper_acc.sd();
        row.trivial = n;
        if (!random_acc.values.empty()) {
            row.random_mean = random_acc.mean();
            row.random_sd = random_acc.sd();
        }
        rows.push_back(row);
    }
    return rows;
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

} // namespace

std::string experiment_csv(const std::vector<ExperimentRow>& rows, const CurveSet& curves) {
    std::string out = "n,k,trials,u_mean,lower_mean,lower_sd,ie_mean,ie_sd,"
                      "upper_leader_mean,upper_leader_sd,trivial,random_mean,random_sd\n";
    for (const auto& row : rows) {
        out += std::to_string(row.n) + "," + std::to_string(row.k) + "," + std::to_string(row.trials) + ",";
        out += fmt(row.u_mean) + ",";
        out += (curves.lower ? fmt(row.lower_mean) : "") + ",";
        out += (curves.lower ? fmt(row.lower_sd) : "") + ",";
        out += (curves.ie ? fmt(row.ie_mean) : "") + ",";
        out += (curves.ie ? fmt(row.ie_sd) : "") + ",";
        out += (curves.upper_leader ? fmt(row.upper_leader_mean) : "") + ",";
        out += (curves.upper_leader ? fmt(row.upper_leader_sd) : "") + ",";
        out += (curves.trivial ? std::to_string(row.trivial) : "") + ",";
        out += (row.random_mean ? fmt(*row.random_mean) : "") + ",";
        out += (row.random_sd ? fmt(*row.random_sd) : "");
        out += "\n";
    }
    return out;
}

} // namespace cde
