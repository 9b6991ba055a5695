#pragma once

#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sumdiff/count.hpp"
#include "sumdiff/harness/config.hpp"
#include "sumdiff/harness/experiment.hpp"
#include "sumdiff/predict.hpp"
#include "sumdiff/randmodel.hpp"

namespace sumdiff::harness {

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// RFC 4180: quote when the field holds a comma, quote, CR or LF; double embedded quotes.
inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

inline std::vector<std::string> csv_columns(const ExperimentConfig& cfg) {
    const auto& s = cfg.statistics;
    std::vector<std::string> cols{"schema_version", "N", "p", "trial_index", "set_size"};
    if (s.sizes || s.missing || s.max_k > 0) {
        cols.insert(cols.end(), {"sumset_size", "diffset_size"});
    }
    if (s.missing) cols.insert(cols.end(), {"missing_sums", "missing_diffs"});
    for (const auto& f : s.forms) {
        cols.push_back(form_stat_name(f, "size"));
        cols.push_back(form_stat_name(f, "missing"));
    }
    for (unsigned k = 1; k <= s.max_k; ++k) {
        cols.push_back("xk_sum_" + std::to_string(k));
        cols.push_back("xk_diff_" + std::to_string(k));
        for (const auto& f : s.forms)
            if (f.is_binary()) cols.push_back(form_stat_name(f, "xk_" + std::to_string(k)));
    }
    if (s.y) cols.push_back("Y");
    return cols;
}

inline void write_csv(std::ostream& os, const ExperimentResult& result) {
    const auto& s = result.config.statistics;
    const auto cols = csv_columns(result.config);
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << csv_field(cols[i]);
    os << '\n';
    for (const auto& r : result.records) {
        std::vector<std::string> row{schema_version, std::to_string(r.n), format_double(r.p), std::to_string(r.trial_index),
                                     std::to_string(r.set_size)};
        if (s.sizes || s.missing || s.max_k > 0) {
            row.push_back(std::to_string(r.sumset_size));
            row.push_back(std::to_string(r.diffset_size));
        }
        if (s.missing) {
            row.push_back(std::to_string(r.missing_sums));
            row.push_back(std::to_string(r.missing_diffs));
        }
        for (const auto& f : r.forms) {
            row.push_back(std::to_string(f.image_size));
            row.push_back(std::to_string(f.missing));
        }
        for (unsigned k = 1; k <= s.max_k; ++k) {
            row.push_back(to_string(r.xk_sum[k - 1]));
            row.push_back(to_string(r.xk_diff[k - 1]));
            for (const auto& f : r.forms)
                if (!f.xk.empty()) row.push_back(to_string(f.xk[k - 1]));
        }
        if (s.y) row.push_back(to_string(*r.y));
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
        os << '\n';
    }
}

inline std::string to_csv(const ExperimentResult& result) {
    std::ostringstream os;
    write_csv(os, result);
    return os.str();
}

// Counts beyond 2^64 - 1 are written as decimal strings.
inline nlohmann::json count_to_json(Count c) {
    if (fits_u64(c)) return static_cast<std::uint64_t>(c);
    return to_string(c);
}

inline nlohmann::json optional_to_json(const std::optional<double>& x) {
    if (!x) return nullptr;
    return *x;
}

inline nlohmann::json record_to_json(const TrialRecord& r, const StatSelection& s) {
    nlohmann::json j{{"N", r.n}, {"p", r.p}, {"trial_index", r.trial_index}, {"set_size", r.set_size}};
    if (s.sizes || s.missing || s.max_k > 0) {
        j["sumset_size"] = r.sumset_size;
        j["diffset_size"] = r.diffset_size;
    }
    if (s.missing) {
        j["missing_sums"] = r.missing_sums;
        j["missing_diffs"] = r.missing_diffs;
    }
    if (!s.forms.empty()) {
        nlohmann::json forms = nlohmann::json::array();
        for (std::size_t i = 0; i < s.forms.size(); ++i) {
            nlohmann::json f{{"form", s.forms[i].label()}, {"image_size", r.forms[i].image_size}, {"missing", r.forms[i].missing}};
            if (!r.forms[i].xk.empty()) {
                f["xk"] = nlohmann::json::array();
                for (auto x : r.forms[i].xk) f["xk"].push_back(count_to_json(x));
            }
            forms.push_back(std::move(f));
        }
        j["forms"] = std::move(forms);
    }
    if (s.max_k > 0) {
        j["xk_sum"] = nlohmann::json::array();
        j["xk_diff"] = nlohmann::json::array();
        for (auto x : r.xk_sum) j["xk_sum"].push_back(count_to_json(x));
        for (auto x : r.xk_diff) j["xk_diff"].push_back(count_to_json(x));
    }
    if (r.y) j["Y"] = count_to_json(*r.y);
    return j;
}

inline nlohmann::json prediction_to_json(const PredictionBundle& b) {
    nlohmann::json j{{"N", b.n},
                     {"p", b.p},
                     {"regime", to_string(b.regime)},
                     {"c", optional_to_json(b.c)},
                     {"sums", b.sums},
                     {"diffs", b.diffs},
                     {"missing_sums", b.missing_sums},
                     {"missing_diffs", b.missing_diffs}};
    j["forms"] = nlohmann::json::array();
    for (const auto& f : b.forms) j["forms"].push_back({{"form", f.form.label()}, {"image", f.image}, {"missing", f.missing}});
    return j;
}

inline nlohmann::json summary_to_json(const SummaryStats& s) {
    nlohmann::json stats = nlohmann::json::object();
    for (const auto& st : s.stats) {
        stats[st.name] = {{"count", st.count},
                          {"mean", st.mean},
                          {"std_error", st.std_error},
                          {"min", st.min},
                          {"max", st.max},
                          {"q05", st.q05},
                          {"q50", st.q50},
                          {"q95", st.q95},
                          {"prediction", optional_to_json(st.prediction)},
                          {"relative_error", optional_to_json(st.relative_error)}};
    }
    return {{"N", s.n},
            {"p", s.p},
            {"trials", s.trials},
            {"prediction", s.prediction ? prediction_to_json(*s.prediction) : nlohmann::json(nullptr)},
            {"statistics", std::move(stats)}};
}

// Everything except metadata.wall_time_s is a function of the config.
inline nlohmann::json result_to_json(const ExperimentResult& result) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& r : result.records) records.push_back(record_to_json(r, result.config.statistics));
    nlohmann::json summary = nlohmann::json::array();
    for (const auto& s : result.summaries) summary.push_back(summary_to_json(s));
    return {{"metadata",
             {{"schema_version", schema_version},
              {"seed", result.config.seed},
              {"generator", generator_name},
              {"wall_time_s", result.wall_time_s}}},
            {"config", config_to_json(result.config)},
            {"records", std::move(records)},
            {"summary", std::move(summary)},
            {"partial", result.partial},
            {"error", result.partial ? nlohmann::json(result.error) : nlohmann::json(nullptr)}};
}

inline void write_result(std::ostream& os, const ExperimentResult& result, OutputFormat format) {
    if (format == OutputFormat::csv) {
        write_csv(os, result);
    } else {
        os << result_to_json(result).dump(2) << '\n';
    }
}

} // namespace sumdiff::harness
