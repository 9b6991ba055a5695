// Command-line front end: sample, predict, compare, classify, enumerate, sweep, verify-bounds.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sumdiff/sumdiff.hpp"

namespace {

using namespace sumdiff;
using namespace sumdiff::harness;

enum Exit { ok = 0, usage = 1, runtime = 2, check_failed = 3 };

struct Options {
    std::uint64_t seed = 0;
    std::uint64_t trials = 100;
    std::string threads = "auto";
    std::string out = "csv";
    std::string output_path;

    std::vector<std::uint64_t> n;
    std::optional<double> p, c, delta;
    std::vector<std::string> forms;
    std::string regime;
    std::string config_path;
    std::string set_text;
    double g_exp = 0.0;
    unsigned max_k = 0;
    bool y = false;
    bool no_sizes = false;
    bool no_missing = false;
    std::uint64_t trial_index = 0;
    std::size_t list = 0;
};

unsigned parse_threads(const std::string& s) {
    if (s == "auto") return 0;
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || v < 1) throw UsageError("--threads must be a positive integer or auto");
    return static_cast<unsigned>(v);
}

OutputFormat parse_out(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw UsageError("--out must be csv or json");
}

PFamily family_from(const Options& o) {
    if (o.p) {
        if (o.c || o.delta) throw UsageError("give either --p or --c/--delta, not both");
        return PFamily::explicit_probability(*o.p);
    }
    if (!o.c || !o.delta) throw UsageError("need --p, or both --c and --delta");
    return PFamily::power_law(*o.c, *o.delta);
}

std::vector<LinearForm> forms_from(const Options& o) {
    std::vector<LinearForm> out;
    for (const auto& f : o.forms) out.push_back(LinearForm::parse(f));
    return out;
}

std::optional<Regime> regime_from(const Options& o) {
    if (o.regime.empty()) return std::nullopt;
    if (o.regime == "below") return Regime::below;
    if (o.regime == "at") return Regime::at;
    if (o.regime == "above") return Regime::above;
    throw UsageError("--regime must be below, at or above");
}

std::uint64_t single_n(const Options& o) {
    if (o.n.size() != 1) throw UsageError("exactly one --n is required");
    return o.n.front();
}

// Writes to --output-path when given, stdout otherwise.
template <typename Fn>
void emit(const Options& o, Fn&& write) {
    if (o.output_path.empty()) {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream f(o.output_path, std::ios::binary);
    if (!f) throw ResourceError("cannot open " + o.output_path + " for writing");
    write(f);
    if (!f) throw ResourceError("failed writing " + o.output_path);
}

std::string num(double x) {
    std::ostringstream s;
    s << std::setprecision(10) << x;
    return s.str();
}

int cmd_sample(const Options& o) {
    const auto n = single_n(o);
    const auto family = family_from(o);
    const double p = p_of(family, n);
    const IntegerSet a = sample(n, p, {o.seed, o.trial_index});
    const auto cls = classify(a);
    const auto format = parse_out(o.out);
    nlohmann::json j{{"schema_version", schema_version},
                     {"generator", generator_name},
                     {"seed", o.seed},
                     {"trial_index", o.trial_index},
                     {"N", n},
                     {"p", p},
                     {"set_size", a.size()},
                     {"sumset_size", cls.sumset_size},
                     {"diffset_size", cls.diffset_size},
                     {"missing_sums", cls.missing_sums},
                     {"missing_diffs", cls.missing_diffs},
                     {"classification", to_string(cls.label)}};
    nlohmann::json fj = nlohmann::json::array();
    for (const auto& f : forms_from(o)) {
        const auto size = form_image(a, f).size();
        fj.push_back({{"form", f.label()}, {"image_size", size},
                      {"missing", static_cast<std::uint64_t>(f.abs_sum()) * n + 1 - size}});
    }
    j["forms"] = fj;
    emit(o, [&](std::ostream& os) {
        if (format == OutputFormat::json) {
            os << j.dump(2) << '\n';
            return;
        }
        for (const auto& key : {"N", "p", "set_size", "sumset_size", "diffset_size", "missing_sums", "missing_diffs"})
            os << key << '=' << (j[key].is_number_float() ? format_double(j[key].get<double>()) : j[key].dump()) << '\n';
        os << "classification=" << to_string(cls.label) << '\n';
        for (const auto& f : fj)
            os << "form[" << f["form"].get<std::string>() << "].size=" << f["image_size"] << '\n'
               << "form[" << f["form"].get<std::string>() << "].missing=" << f["missing"] << '\n';
    });
    return ok;
}

int cmd_predict(const Options& o) {
    const auto n = single_n(o);
    const auto family = family_from(o);
    std::vector<LinearForm> binary, kary;
    for (const auto& f : forms_from(o)) (f.is_binary() ? binary : kary).push_back(f);
    const auto b = asymptotic_bundle(n, family, binary, regime_from(o));
    emit(o, [&](std::ostream& os) {
        os << "N=" << n << '\n' << "p=" << num(b.p) << '\n' << "regime=" << to_string(b.regime) << '\n';
        if (b.c) os << "c=" << num(*b.c) << '\n';
        os << "S_pred=" << num(b.sums) << '\n'
           << "D_pred=" << num(b.diffs) << '\n'
           << "Sc_pred=" << num(b.missing_sums) << '\n'
           << "Dc_pred=" << num(b.missing_diffs) << '\n';
        for (const auto& f : b.forms)
            os << "form[" << f.form.label() << "].size_pred=" << num(f.image) << '\n'
               << "form[" << f.form.label() << "].missing_pred=" << num(f.missing) << '\n';
        for (const auto& f : kary) {
            const auto cp = conjecture_prediction(f, n, family, regime_from(o));
            os << "form[" << f.label() << "].regime=" << to_string(cp.regime) << " (conjectural)\n";
            if (!cp.value) os << "form[" << f.label() << "].prediction=none\n";
            else os << "form[" << f.label() << "]." << (cp.is_missing_count ? "missing_pred=" : "size_pred=") << num(*cp.value) << '\n';
        }
    });
    return ok;
}

int cmd_compare(const Options& o) {
    const auto forms = forms_from(o);
    if (forms.size() != 2) throw UsageError("compare needs exactly two --form values");
    const auto& f = forms[0];
    const auto& g = forms[1];
    const auto r = classify_pair(f, g);
    emit(o, [&](std::ostream& os) {
        os << "F=" << f.label() << " G=" << g.label() << '\n'
           << "case=" << to_string(r.kind) << '\n'
           << "dominator_below=" << to_string(r.dominator_below) << '\n'
           << "dominator_above=" << to_string(r.dominator_above) << '\n';
        if (r.c_threshold) os << "c_threshold=" << format_double(*r.c_threshold) << '\n';
        if (!r.validity_note.empty()) os << "note=" << r.validity_note << '\n';
        if (o.p || o.c || o.delta) {
            const auto v = regime_dominator(f, g, family_from(o));
            os << "regime_dominator=" << (v.dominator ? to_string(*v.dominator) : "none (model breakdown)") << '\n'
               << "rationale=" << v.rationale << '\n';
        }
    });
    return ok;
}

int cmd_classify(const Options& o) {
    if (o.set_text.empty()) throw UsageError("classify needs --set a,b,c,...");
    std::vector<std::int64_t> members;
    std::istringstream in(o.set_text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        try {
            members.push_back(std::stoll(item, &used));
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw UsageError("cannot parse set element '" + item + "'");
    }
    std::int64_t lo = 0, hi = 0;
    if (!members.empty()) {
        lo = *std::min_element(members.begin(), members.end());
        hi = *std::max_element(members.begin(), members.end());
    }
    if (!o.n.empty()) hi = lo + static_cast<std::int64_t>(single_n(o));
    const auto cls = classify(make_set(members, lo, hi));
    emit(o, [&](std::ostream& os) {
        os << "classification=" << to_string(cls.label) << '\n'
           << "sumset_size=" << cls.sumset_size << '\n'
           << "diffset_size=" << cls.diffset_size << '\n';
    });
    return ok;
}

int cmd_enumerate(const Options& o) {
    const auto n = single_n(o);
    const auto r = enumerate_exhaustive(n, parse_threads(o.threads), std::max<std::size_t>(o.list, 1));
    emit(o, [&](std::ostream& os) {
        os << "N=" << n << '\n'
           << "subsets=" << r.total() << '\n'
           << "sum_dominated=" << r.sum_dominated << '\n'
           << "balanced=" << r.balanced << '\n'
           << "difference_dominated=" << r.difference_dominated << '\n';
        for (std::size_t i = 0; i < std::min(o.list, r.sum_dominated_sets.size()); ++i) {
            os << "set=";
            const auto m = mask_members(r.sum_dominated_sets[i]);
            for (std::size_t k = 0; k < m.size(); ++k) os << (k ? "," : "") << m[k];
            os << '\n';
        }
    });
    return ok;
}

ExperimentConfig sweep_config(const Options& o, const CLI::App& app) {
    ExperimentConfig cfg;
    if (!o.config_path.empty()) {
        std::ifstream f(o.config_path);
        if (!f) throw UsageError("cannot read config " + o.config_path);
        nlohmann::json j;
        try {
            f >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError(std::string("config is not valid JSON: ") + e.what());
        }
        cfg = config_from_json(j);
        // Explicit command-line flags override the file.
        if (app.count("--seed")) cfg.seed = o.seed;
        if (app.count("--trials")) cfg.trials = o.trials;
        if (app.count("--out")) cfg.output = parse_out(o.out);
        if (app.count("--threads")) cfg.threads = parse_threads(o.threads);
        return cfg;
    }
    if (o.n.empty()) throw UsageError("sweep needs --config or at least one --n");
    cfg.n_list = o.n;
    cfg.family = family_from(o);
    cfg.trials = o.trials;
    cfg.seed = o.seed;
    cfg.statistics.sizes = !o.no_sizes;
    cfg.statistics.missing = !o.no_missing;
    cfg.statistics.max_k = o.max_k;
    cfg.statistics.forms = forms_from(o);
    cfg.statistics.y = o.y;
    cfg.output = parse_out(o.out);
    cfg.threads = parse_threads(o.threads);
    cfg.validate();
    return cfg;
}

int cmd_sweep(const Options& o, const CLI::App& app) {
    const auto cfg = sweep_config(o, app);
    const auto result = run_experiment(cfg);
    emit(o, [&](std::ostream& os) { write_result(os, result, cfg.output); });
    if (result.partial) {
        std::cerr << "error: run stopped early, output is partial: " << result.error << '\n';
        return runtime;
    }
    return ok;
}

int cmd_verify_bounds(const Options& o) {
    if (!o.c || !o.delta) throw UsageError("verify-bounds needs --c and --delta");
    const auto n = single_n(o);
    const auto v = verify_bounds(*o.c, *o.delta, o.g_exp, n, o.trials, o.seed, parse_threads(o.threads));
    const auto& r = v.report;
    emit(o, [&](std::ostream& os) {
        os << "N=" << n << " c=" << num(r.c) << " delta=" << num(r.delta) << " g_exp=" << num(r.g_exp) << '\n'
           << "card_interval=[" << num(r.card_lo) << ", " << num(r.card_hi) << "]\n"
           << "y_threshold=" << num(r.y_threshold) << '\n'
           << "trials=" << v.trials << '\n'
           << "interval_failures=" << v.outside_interval << " freq=" << num(v.freq_interval) << " P1=" << num(r.p1)
           << (v.violation_interval ? " VIOLATION" : "") << '\n'
           << "y_failures=" << v.y_exceeded << " freq=" << num(v.freq_y) << " P2=" << num(r.p2)
           << (v.violation_y ? " VIOLATION" : "") << '\n';
    });
    return v.any_violation() ? check_failed : ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sumdiff: sum and difference sets of random subsets of {0, ..., N}"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;

    app.add_option("--seed", o.seed, "RNG seed");
    app.add_option("--trials", o.trials, "Trials per N");
    app.add_option("--threads", o.threads, "Worker threads, or auto");
    app.add_option("--out", o.out, "Output format: csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--output-path", o.output_path, "Write output here instead of stdout");
    app.add_option("--p", o.p, "Explicit inclusion probability");
    app.add_option("--c", o.c, "p = c N^-delta");
    app.add_option("--delta", o.delta, "p = c N^-delta");
    app.add_option("--form", o.forms, "Linear form u,v or u1,...,uk (repeatable)");
    app.add_option("--n", o.n, "N (repeatable for sweep)");

    auto* sample_cmd = app.add_subcommand("sample", "Sample one set and print its statistics");
    sample_cmd->add_option("--trial-index", o.trial_index, "Which trial's set to draw");

    auto* predict_cmd = app.add_subcommand("predict", "Asymptotic predictions");
    predict_cmd->add_option("--regime", o.regime, "below, at or above (needed with --p)");

    auto* compare_cmd = app.add_subcommand("compare", "Compare two difference forms");
    auto* classify_cmd = app.add_subcommand("classify", "Classify one explicit set");
    classify_cmd->add_option("--set", o.set_text, "Comma-separated elements");

    auto* enumerate_cmd = app.add_subcommand("enumerate", "Classify every subset of {0, ..., N}");
    enumerate_cmd->add_option("--list", o.list, "Print up to this many sum-dominated sets");

    auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo experiment over N_list");
    sweep_cmd->add_option("--config", o.config_path, "JSON config file");
    sweep_cmd->add_option("--max-k", o.max_k, "Collect X_k for k = 1..max_k (<= 8)");
    sweep_cmd->add_flag("--y", o.y, "Collect Y");
    sweep_cmd->add_flag("--no-sizes", o.no_sizes, "Skip |A+A| and |A-A|");
    sweep_cmd->add_flag("--no-missing", o.no_missing, "Skip missing counts");

    auto* verify_cmd = app.add_subcommand("verify-bounds", "Empirical failure rates against the analytic probability bounds");
    verify_cmd->add_option("--g-exp", o.g_exp, "Deviation exponent, 0 < g < f(delta)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (*sample_cmd) return cmd_sample(o);
        if (*predict_cmd) return cmd_predict(o);
        if (*compare_cmd) return cmd_compare(o);
        if (*classify_cmd) return cmd_classify(o);
        if (*enumerate_cmd) return cmd_enumerate(o);
        if (*sweep_cmd) return cmd_sweep(o, app);
        if (*verify_cmd) return cmd_verify_bounds(o);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return runtime;
    }
    return usage;
}
