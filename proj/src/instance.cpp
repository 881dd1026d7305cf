#include "cde/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cde/errors.hpp"
#include "cde/rng.hpp"

namespace cde {

std::vector<std::string> validate(const Instance& inst) {
    std::vector<std::string> violations;
    if (inst.n < 0) violations.push_back("n must be >= 0, got " + std::to_string(inst.n));
    if (inst.holdings.empty()) violations.push_back("no clients (k must be >= 1)");

    std::vector<bool> owned(static_cast<std::size_t>(std::max(inst.n, 0)) + 1, false);
    for (std::size_t i = 0; i < inst.holdings.size(); ++i) {
        for (int l : inst.holdings[i]) {
            if (l < 1 || l > inst.n) {
                violations.push_back("client " + std::to_string(i + 1) + " holds out-of-range packet " +
                                     std::to_string(l));
            } else {
                owned[static_cast<std::size_t>(l)] = true;
            }
        }
    }
    for (int l = 1; l <= inst.n; ++l) {
        if (!owned[static_cast<std::size_t>(l)])
            violations.push_back("packet " + std::to_string(l) + " is held by no client (coverage)");
    }
    return violations;
}

bool is_valid(const Instance& inst) { return validate(inst).empty(); }

void require_valid(const Instance& inst) {
    auto violations = validate(inst);
    if (violations.empty()) return;
    std::string msg = "invalid instance:";
    for (const auto& v : violations) msg += " " + v + ";";
    throw std::invalid_argument(msg);
}

InstanceStats stats(const Instance& inst) {
    require_valid(inst);
    InstanceStats st;
    st.n_min = inst.n;
    st.n_max = 0;
    st.complements.reserve(inst.holdings.size());
    for (const auto& held : inst.holdings) {
        const int ni = static_cast<int>(held.size());
        st.n_min = std::min(st.n_min, ni);
        st.n_max = std::max(st.n_max, ni);
        std::set<int> comp;
        for (int l = 1; l <= inst.n; ++l) {
            if (!held.contains(l)) comp.insert(l);
        }
        st.complements.push_back(std::move(comp));
    }
    return st;
}

NormalizedInstance normalize_unique(const Instance& inst) {
    require_valid(inst);
    std::vector<int> holder_count(static_cast<std::size_t>(inst.n) + 1, 0);
    for (const auto& held : inst.holdings) {
        for (int l : held) ++holder_count[static_cast<std::size_t>(l)];
    }

    NormalizedInstance out;
    std::vector<int> new_index(static_cast<std::size_t>(inst.n) + 1, 0);
    for (int l = 1; l <= inst.n; ++l) {
        if (holder_count[static_cast<std::size_t>(l)] == 1) {
            ++out.unique_count;
        } else {
            out.index_map.push_back(l);
            new_index[static_cast<std::size_t>(l)] = static_cast<int>(out.index_map.size());
        }
    }

    out.reduced.n = inst.n - out.unique_count;
    out.reduced.holdings.resize(inst.holdings.size());
    for (std::size_t i = 0; i < inst.holdings.size(); ++i) {
        for (int l : inst.holdings[i]) {
            if (new_index[static_cast<std::size_t>(l)] != 0)
                out.reduced.holdings[i].insert(new_index[static_cast<std::size_t>(l)]);
        }
    }
    return out;
}

Instance random_instance(int n, int k, double rho, std::uint64_t seed) {
    if (n < 1 || k < 1) throw std::invalid_argument("random_instance: need n >= 1 and k >= 1");
    if (!(rho > 0.0) || rho > 1.0) throw std::invalid_argument("random_instance: need 0 < rho <= 1");

    Rng rng(seed);
    Instance inst;
    inst.n = n;
    inst.holdings.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        for (int l = 1; l <= n; ++l) {
            if (rng.bernoulli(rho)) inst.holdings[static_cast<std::size_t>(i)].insert(l);
        }
    }
    for (int l = 1; l <= n; ++l) {
        bool owned = false;
        for (const auto& held : inst.holdings) {
            if (held.contains(l)) { owned = true; break; }
        }
        if (!owned) {
            auto lucky = static_cast<std::size_t>(rng.uniform_below(static_cast<std::uint64_t>(k)));
            inst.holdings[lucky].insert(l);
        }
    }
    return inst;
}

Instance parse_instance(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("instance: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("clients"))
        throw ParseError("instance: expected object with \"n\" and \"clients\"");
    if (!doc["n"].is_number_integer())
        throw ParseError("instance: \"n\" must be an integer");
    if (!doc["clients"].is_array() || doc["clients"].empty())
        throw ParseError("instance: \"clients\" must be a non-empty array");

    Instance inst;
    inst.n = doc["n"].get<int>();
    if (inst.n < 0) throw ParseError("instance: n must be >= 0");
    for (std::size_t i = 0; i < doc["clients"].size(); ++i) {
        const auto& arr = doc["clients"][i];
        if (!arr.is_array())
            throw ParseError("instance: clients[" + std::to_string(i) + "] must be an array");
        std::set<int> held;
        for (const auto& item : arr) {
            if (!item.is_number_integer())
                throw ParseError("instance: clients[" + std::to_string(i) + "] has a non-integer entry");
            const int l = item.get<int>();
            if (l < 1 || l > inst.n)
                throw ParseError("instance: clients[" + std::to_string(i) + "] holds packet " +
                                 std::to_string(l) + " outside [1, " + std::to_string(inst.n) + "]");
            held.insert(l);
        }
        inst.holdings.push_back(std::move(held));
    }

    auto violations = validate(inst);
    if (!violations.empty()) throw ParseError("instance: " + violations.front());
    return inst;
}

std::string serialize_instance(const Instance& inst) {
    nlohmann::ordered_json doc;
    doc["n"] = inst.n;
    auto clients = nlohmann::ordered_json::array();
    for (const auto& held : inst.holdings)
        clients.push_back(std::vector<int>(held.begin(), held.end()));
    doc["clients"] = clients;
    return doc.dump();
}

Instance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_instance(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

} // namespace cde
