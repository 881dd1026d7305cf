#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cde/bounds.hpp"
#include "cde/errors.hpp"
#include "cde/harness.hpp"
#include "cde/instance.hpp"
#include "cde/oracle.hpp"
#include "cde/schemes.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitBudgetExhausted = 3;

void emit(const std::string& text, const std::string& out_path) {
    const std::string payload = text.ends_with('\n') ? text : text + "\n";
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw cde::ParseError("cannot open output file: " + out_path);
    out << payload;
}

cde::FieldSpec pick_field(const cde::Instance& inst, std::optional<std::uint32_t> q) {
    if (q) return cde::FieldSpec(*q);
    return cde::FieldSpec(cde::smallest_prime_geq(static_cast<std::uint32_t>(inst.k())));
}

std::vector<int> parse_int_list(const std::string& text, const char* flag) {
    std::vector<int> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            values.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string(flag) + ": \"" + item + "\" is not an integer");
        }
    }
    if (values.empty()) throw std::invalid_argument(std::string(flag) + ": empty list");
    return values;
}

std::string verify_report_json(const cde::VerifyReport& report) {
    nlohmann::ordered_json doc;
    auto clients = nlohmann::ordered_json::array();
    for (const auto& v : report.clients) {
        nlohmann::ordered_json item;
        item["client"] = v.client;
        item["final_dim"] = v.final_dim;
        item["satisfied"] = v.satisfied;
        clients.push_back(std::move(item));
    }
    doc["clients"] = std::move(clients);
    doc["senders_legal"] = report.senders_legal;
    doc["illegal_rounds"] = report.illegal_rounds;
    doc["all_satisfied"] = report.all_satisfied();
    return doc.dump();
}

/// Schedules pass verification before they are written anywhere.
void emit_verified_schedule(const cde::Instance& inst, const cde::Schedule& schedule,
                            const std::string& out_path) {
    if (!cde::verify_schedule(inst, schedule).ok())
        throw std::logic_error("generated schedule failed verification (internal bug)");
    emit(cde::schedule_to_json(schedule), out_path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cooperative data exchange: bounds, schemes, exact optima, experiments"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random instance");
    int gen_n = 10, gen_k = 3;
    double gen_rho = 0.5;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    gen->add_option("--n", gen_n, "packet count")->required();
    gen->add_option("--k", gen_k, "client count")->required();
    gen->add_option("--rho", gen_rho, "membership probability (default 0.5)");
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--out", gen_out, "output file (default stdout)");

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "closed-form bounds for an instance");
    std::string bounds_file, bounds_out;
    bounds_cmd->add_option("instance", bounds_file, "instance JSON file")->required();
    bounds_cmd->add_option("--out", bounds_out, "output file (default stdout)");

    // ie
    auto* ie_cmd = app.add_subcommand("ie", "run the max-dimension greedy scheme");
    std::string ie_file, ie_out;
    std::optional<std::uint32_t> ie_q;
    ie_cmd->add_option("instance", ie_file, "instance JSON file")->required();
    ie_cmd->add_option("--q", ie_q, "field modulus (default: smallest prime >= k)");
    ie_cmd->add_option("--out", ie_out, "output file (default stdout)");

    // leader
    auto* leader_cmd = app.add_subcommand("leader", "run the two-phase leader scheme");
    std::string leader_file, leader_out;
    std::optional<std::uint32_t> leader_q;
    std::optional<int> leader_idx;
    leader_cmd->add_option("instance", leader_file, "instance JSON file")->required();
    leader_cmd->add_option("--leader", leader_idx, "leader client (default: best)");
    leader_cmd->add_option("--q", leader_q, "field modulus (default: smallest prime >= k)");
    leader_cmd->add_option("--out", leader_out, "output file (default stdout)");

    // random-order
    auto* rand_cmd = app.add_subcommand("random-order", "fixed-ordering scheme / ordering averages");
    std::string rand_file, rand_perm, rand_out;
    std::optional<std::uint32_t> rand_q;
    std::optional<long long> rand_samples;
    std::uint64_t rand_seed = 1;
    rand_cmd->add_option("instance", rand_file, "instance JSON file")->required();
    rand_cmd->add_option("--perm", rand_perm, "client ordering, e.g. 2,1,3 (emits a schedule)");
    rand_cmd->add_option("--samples", rand_samples, "Monte Carlo sample count (emits an estimate)");
    rand_cmd->add_option("--seed", rand_seed, "RNG seed for --samples");
    rand_cmd->add_option("--q", rand_q, "field modulus (default: smallest prime >= k)");
    rand_cmd->add_option("--out", rand_out, "output file (default stdout)");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "exact optimum by exhaustive search");
    std::string oracle_file, oracle_out;
    std::optional<std::uint32_t> oracle_q;
    std::optional<long long> oracle_budget;
    oracle_cmd->add_option("instance", oracle_file, "instance JSON file")->required();
    oracle_cmd->add_option("--q", oracle_q, "field modulus (default: smallest prime >= k)");
    oracle_cmd->add_option("--budget", oracle_budget, "candidate matrix limit (default 1e7)");
    oracle_cmd->add_option("--out", oracle_out, "output file (default stdout)");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "replay a schedule against an instance");
    std::string verify_inst_file, verify_sched_file, verify_out;
    verify_cmd->add_option("instance", verify_inst_file, "instance JSON file")->required();
    verify_cmd->add_option("schedule", verify_sched_file, "schedule JSON file")->required();
    verify_cmd->add_option("--out", verify_out, "output file (default stdout)");

    // experiment
    auto* exp_cmd = app.add_subcommand("experiment", "averaged curves over random instances");
    int exp_k = 3, exp_trials = 100;
    double exp_rho = 0.5;
    std::uint64_t exp_seed = 1;
    std::string exp_n_list = "10,20,30,40,50", exp_random = "none", exp_out;
    std::optional<std::uint32_t> exp_q;
    long long exp_samples = 2000;
    bool exp_normalize = true;
    exp_cmd->add_option("--k", exp_k, "client count (default 3)");
    exp_cmd->add_option("--n", exp_n_list, "comma-separated n values (default 10,20,30,40,50)");
    exp_cmd->add_option("--trials", exp_trials, "trials per n (default 100)");
    exp_cmd->add_option("--rho", exp_rho, "membership probability (default 0.5)");
    exp_cmd->add_option("--seed", exp_seed, "master seed");
    exp_cmd->add_option("--q", exp_q, "field modulus (default: smallest prime >= k)");
    exp_cmd->add_option("--random", exp_random, "random-order curve: none|exact|mc");
    exp_cmd->add_option("--samples", exp_samples, "Monte Carlo samples when --random mc");
    exp_cmd->add_flag("--normalize,!--no-normalize", exp_normalize,
                      "strip unique packets and add their count to every curve (default on)");
    exp_cmd->add_option("--out", exp_out, "output CSV file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) {
            const auto inst = cde::random_instance(gen_n, gen_k, gen_rho, gen_seed);
            emit(cde::serialize_instance(inst), gen_out);
            return kExitOk;
        }

        if (bounds_cmd->parsed()) {
            const auto inst = cde::load_instance_file(bounds_file);
            emit(cde::bounds_to_json(cde::bounds_report(inst)), bounds_out);
            return kExitOk;
        }

        if (ie_cmd->parsed()) {
            const auto inst = cde::load_instance_file(ie_file);
            const auto field = pick_field(inst, ie_q);
            auto [schedule, transcript] = cde::run_ie(inst, field);
            emit_verified_schedule(inst, schedule, ie_out);
            return kExitOk;
        }

        if (leader_cmd->parsed()) {
            const auto inst = cde::load_instance_file(leader_file);
            const auto field = pick_field(inst, leader_q);
            const auto schedule = cde::run_leader(inst, field, leader_idx);
            emit_verified_schedule(inst, schedule, leader_out);
            return kExitOk;
        }

        if (rand_cmd->parsed()) {
            const auto inst = cde::load_instance_file(rand_file);
            if (!rand_perm.empty() && rand_samples)
                throw std::invalid_argument("random-order: --perm and --samples are exclusive");
            if (!rand_perm.empty()) {
                const auto ordering = parse_int_list(rand_perm, "--perm");
                const auto field = pick_field(inst, rand_q);
                const auto schedule = cde::random_schedule(inst, ordering, field);
                emit_verified_schedule(inst, schedule, rand_out);
            } else if (rand_samples) {
                const auto est = cde::random_average_mc(inst, *rand_samples, rand_seed);
                nlohmann::ordered_json doc;
                doc["estimate"] = est.estimate;
                doc["std_error"] = est.std_error;
                doc["samples"] = est.samples;
                doc["seed"] = rand_seed;
                emit(doc.dump(), rand_out);
            } else {
                const auto avg = cde::random_average_exact(inst);
                nlohmann::ordered_json doc;
                doc["mean"] = avg.value();
                doc["num"] = avg.num;
                doc["den"] = avg.den;
                emit(doc.dump(), rand_out);
            }
            return kExitOk;
        }

        if (oracle_cmd->parsed()) {
            const auto inst = cde::load_instance_file(oracle_file);
            const auto field = pick_field(inst, oracle_q);
            if (!oracle_budget && (inst.n > 5 || inst.k() > 4 || field.q() > 3))
                throw std::invalid_argument(
                    "oracle: instance beyond the default desk scale (n <= 5, k <= 4, q <= 3); "
                    "pass an explicit --budget to search anyway");
            const auto outcome =
                cde::optimal_tau(inst, field, oracle_budget.value_or(cde::kDefaultOracleBudget));
            emit(cde::oracle_to_json(outcome, field), oracle_out);
            return outcome.solved() ? kExitOk : kExitBudgetExhausted;
        }

        if (verify_cmd->parsed()) {
            const auto inst = cde::load_instance_file(verify_inst_file);
            const auto schedule = cde::load_schedule_file(verify_sched_file);
            const auto report = cde::verify_schedule(inst, schedule);
            emit(verify_report_json(report), verify_out);
            return report.ok() ? kExitOk : kExitVerifyFailed;
        }

        if (exp_cmd->parsed()) {
            cde::ExperimentConfig config;
            config.k = exp_k;
            config.n_values = parse_int_list(exp_n_list, "--n");
            config.trials = exp_trials;
            config.rho = exp_rho;
            config.master_seed = exp_seed;
            config.field_q = exp_q;
            config.mc_samples = exp_samples;
            config.normalize_unique_packets = exp_normalize;
            if (exp_random == "exact") config.curves.random_exact = true;
            else if (exp_random == "mc") config.curves.random_mc = true;
            else if (exp_random != "none")
                throw std::invalid_argument("--random: expected none, exact, or mc");
            const auto rows = cde::run_experiment(config);
            emit(cde::experiment_csv(rows, config.curves), exp_out);
            return kExitOk;
        }
    } catch (const cde::CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudgetExhausted;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
