#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "sumdiff/error.hpp"
#include "sumdiff/randmodel.hpp"
#include "sumdiff/setcore.hpp"

namespace sumdiff::harness {

inline constexpr const char* schema_version = "sumdiff-trials/1";
inline constexpr unsigned max_tuple_k = 8;

enum class OutputFormat { csv, json };

struct StatSelection {
    bool sizes = true;
    bool missing = true;
    unsigned max_k = 0;  // 0 disables X_k collection
    std::vector<LinearForm> forms;
    bool y = false;
};

struct ExperimentConfig {
    std::vector<std::uint64_t> n_list;
    PFamily family;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    StatSelection statistics;
    OutputFormat output = OutputFormat::csv;
    unsigned threads = 0;  // 0 = one per hardware thread

    void validate() const {
        if (n_list.empty()) throw ValidationError("config: N_list is empty");
        for (auto n : n_list)
            if (n == 0) throw ValidationError("config: every N must be positive");
        if (trials == 0) throw ValidationError("config: trials must be >= 1");
        if (statistics.max_k > max_tuple_k) throw ValidationError("config: max_k must be <= 8");
        for (auto n : n_list) (void)p_of(family, n);
    }
};

namespace detail {

inline void reject_unknown(const nlohmann::json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ValidationError("config: " + where + " must be an object");
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) throw ValidationError("config: unknown field '" + key + "' in " + where);
    }
}

template <typename T>
T get_as(const nlohmann::json& j, const std::string& what) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ValidationError("config: field '" + what + "' has the wrong type");
    }
}

} // namespace detail

inline PFamily family_from_json(const nlohmann::json& j) {
    detail::reject_unknown(j, {"p", "c", "delta"}, "family");
    if (j.contains("p")) {
        if (j.contains("c") || j.contains("delta")) throw ValidationError("config: family takes either p or c/delta");
        return PFamily::explicit_probability(detail::get_as<double>(j.at("p"), "family.p"));
    }
    if (!j.contains("c") || !j.contains("delta")) throw ValidationError("config: family needs p, or both c and delta");
    return PFamily::power_law(detail::get_as<double>(j.at("c"), "family.c"),
                              detail::get_as<double>(j.at("delta"), "family.delta"));
}

inline nlohmann::json family_to_json(const PFamily& f) {
    if (f.kind == PFamily::Kind::explicit_p) return {{"p", f.p}};
    return {{"c", f.c}, {"delta", f.delta}};
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    detail::reject_unknown(j, {"N_list", "family", "trials", "seed", "statistics", "output", "threads"}, "config");
    ExperimentConfig cfg;
    if (!j.contains("N_list") || !j.contains("family")) throw ValidationError("config: N_list and family are required");
    cfg.n_list = detail::get_as<std::vector<std::uint64_t>>(j.at("N_list"), "N_list");
    cfg.family = family_from_json(j.at("family"));
    if (j.contains("trials")) cfg.trials = detail::get_as<std::uint64_t>(j.at("trials"), "trials");
    if (j.contains("seed")) cfg.seed = detail::get_as<std::uint64_t>(j.at("seed"), "seed");
    if (j.contains("statistics")) {
        const auto& s = j.at("statistics");
        detail::reject_unknown(s, {"sizes", "missing", "max_k", "forms", "Y"}, "statistics");
        if (s.contains("sizes")) cfg.statistics.sizes = detail::get_as<bool>(s.at("sizes"), "statistics.sizes");
        if (s.contains("missing")) cfg.statistics.missing = detail::get_as<bool>(s.at("missing"), "statistics.missing");
        if (s.contains("max_k")) cfg.statistics.max_k = detail::get_as<unsigned>(s.at("max_k"), "statistics.max_k");
        if (s.contains("Y")) cfg.statistics.y = detail::get_as<bool>(s.at("Y"), "statistics.Y");
        if (s.contains("forms")) {
            for (const auto& text : detail::get_as<std::vector<std::string>>(s.at("forms"), "statistics.forms"))
                cfg.statistics.forms.push_back(LinearForm::parse(text));
        }
    }
    if (j.contains("output")) {
        const auto out = detail::get_as<std::string>(j.at("output"), "output");
        if (out == "csv") cfg.output = OutputFormat::csv;
        else if (out == "json") cfg.output = OutputFormat::json;
        else throw ValidationError("config: output must be csv or json");
    }
    if (j.contains("threads")) {
        const auto& t = j.at("threads");
        if (t.is_string()) {
            if (t.get<std::string>() != "auto") throw ValidationError("config: threads must be a positive integer or \"auto\"");
            cfg.threads = 0;
        } else {
            const auto n = detail::get_as<long long>(t, "threads");
            if (n < 1) throw ValidationError("config: threads must be a positive integer or \"auto\"");
            cfg.threads = static_cast<unsigned>(n);
        }
    }
    cfg.validate();
    return cfg;
}

// Thread count is left out: it never changes results.
inline nlohmann::json config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json forms = nlohmann::json::array();
    for (const auto& f : cfg.statistics.forms) forms.push_back(f.label());
    return {
        {"N_list", cfg.n_list},
        {"family", family_to_json(cfg.family)},
        {"trials", cfg.trials},
        {"seed", cfg.seed},
        {"statistics",
         {{"sizes", cfg.statistics.sizes},
          {"missing", cfg.statistics.missing},
          {"max_k", cfg.statistics.max_k},
          {"forms", forms},
          {"Y", cfg.statistics.y}}},
        {"output", cfg.output == OutputFormat::csv ? "csv" : "json"},
    };
}

} // namespace sumdiff::harness
