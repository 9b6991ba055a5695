// Acceptance gate. One PASS/FAIL line per criterion; exit status 1 if any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "oracles/brute_force.hpp"
#include "sumdiff/sumdiff.hpp"

using namespace sumdiff;
using namespace sumdiff::harness;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    const char* id;
    const char* title;
    double time_limit_s;
    std::function<Outcome()> run;
};

std::string fmt(double x, int prec = 6) {
    std::ostringstream s;
    s.precision(prec);
    s << x;
    return s.str();
}

std::string run_cli(const std::string& args, int& status) {
    const std::string cmd = std::string(SUMDIFF_CLI) + " " + args;
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        status = -1;
        return out;
    }
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int st = pclose(pipe);
    status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return out;
}

long long field(const std::string& out, const std::string& key) {
    const auto pos = out.find(key + "=");
    if (pos == std::string::npos) return -1;
    return std::stoll(out.substr(pos + key.size() + 1));
}

ExperimentConfig power_law_config(std::uint64_t n, double c, double delta, std::uint64_t trials, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.n_list = {n};
    cfg.family = PFamily::power_law(c, delta);
    cfg.trials = trials;
    cfg.seed = seed;
    return cfg;
}

Outcome ac1() {
    int st13 = 0, st14 = 0;
    const auto out13 = run_cli("enumerate --n 13", st13);
    const auto out14 = run_cli("enumerate --n 14", st14);
    const long long sd13 = field(out13, "sum_dominated");
    const long long sd14 = field(out14, "sum_dominated");
    const auto cls = classify(make_set({0, 2, 3, 4, 7, 11, 12, 14}, 0, 14));
    const bool pass = st13 == 0 && st14 == 0 && sd13 == 0 && sd14 >= 1 && field(out13, "subsets") == (1 << 14) &&
                      cls.label == Domination::sum_dominated;
    return {pass, "N=13 sum_dominated=" + std::to_string(sd13) + ", N=14 sum_dominated=" + std::to_string(sd14) +
                      ", {0,2,3,4,7,11,12,14} " + to_string(cls.label) + " (" + std::to_string(cls.sumset_size) + " vs " +
                      std::to_string(cls.diffset_size) + ")"};
}

Outcome ac2() {
    const double exact = exact_missing_sums_expectation(10000, 0.5);
    ExperimentConfig cfg;
    cfg.n_list = {10000};
    cfg.family = PFamily::explicit_probability(0.5);
    cfg.trials = 1000;
    cfg.seed = 2;
    cfg.statistics.sizes = false;
    const auto res = run_experiment(cfg);
    const auto& st = res.summaries.at(0).at("missing_sums");
    const bool pass = !res.partial && std::abs(exact - 10.0) <= 1e-6 && std::abs(st.mean - exact) <= 4.0 * st.std_error;
    return {pass, "exact=" + fmt(exact, 12) + ", MC mean=" + fmt(st.mean) + " +- " + fmt(st.std_error) +
                      " (|diff|/SE=" + fmt(std::abs(st.mean - exact) / st.std_error, 3) + ")"};
}

Outcome ac3() {
    const auto b = janson_missing_diffs_bounds(10000, 0.5);
    ExperimentConfig cfg;
    cfg.n_list = {10000};
    cfg.family = PFamily::explicit_probability(0.5);
    cfg.trials = 1000;
    cfg.seed = 3;
    cfg.statistics.sizes = false;
    const auto res = run_experiment(cfg);
    const auto& st = res.summaries.at(0).at("missing_diffs");
    const bool pass = !res.partial && st.mean >= b.lower && st.mean <= b.upper && std::abs(b.lower - 6.0) <= 0.2 &&
                      std::abs(b.upper - 6.0) <= 0.2;
    return {pass, "bounds=[" + fmt(b.lower, 17) + ", " + fmt(b.upper, 17) + "] (width " + fmt(b.upper - b.lower, 3) +
                      "), MC mean=" + fmt(st.mean) + " +- " + fmt(st.std_error) + " (|mean-6|/SE=" +
                      fmt(std::abs(st.mean - 6.0) / st.std_error, 3) + ")"};
}

Outcome ac4() {
    const std::uint64_t n = 1000000;
    const auto res = run_experiment(power_law_config(n, 1.0, 0.7, 100, 4));
    const double p = p_of(PFamily::power_law(1.0, 0.7), n);
    const auto& rs = res.summaries.at(0).at("ratio_diff_sum");
    const auto& ss = res.summaries.at(0).at("sumset_size");
    const double scale = 2.0 / std::pow(static_cast<double>(n) * p, 2);
    const double s_scaled = ss.mean * scale;
    const bool pass = !res.partial && rs.mean >= 1.96 && rs.mean <= 2.04 && s_scaled >= 0.93 && s_scaled <= 1.07;
    return {pass, "mean(D/S)=" + fmt(rs.mean) + " +- " + fmt(rs.std_error, 3) + " in [1.96,2.04], mean(S)*2/(Np)^2=" +
                      fmt(s_scaled) + " +- " + fmt(ss.std_error * scale, 3) + " in [0.93,1.07], Np=" +
                      fmt(static_cast<double>(n) * p, 4)};
}

Outcome ac5() {
    const std::uint64_t n = 1000000;
    const auto res = run_experiment(power_law_config(n, 1.0, 0.5, 100, 5));
    const double s = res.summaries.at(0).at("sumset_size").mean / static_cast<double>(n);
    const double d = res.summaries.at(0).at("diffset_size").mean / static_cast<double>(n);
    const double gs = g_ratio(0.5), gd = g_ratio(1.0);
    const double es = std::abs(s / gs - 1.0), ed = std::abs(d / gd - 1.0);
    const bool pass = !res.partial && es <= 0.02 && ed <= 0.02;
    return {pass, "mean(S)/N=" + fmt(s) + " vs g(1/2)=" + fmt(gs, 8) + " (" + fmt(100 * es, 3) + "%), mean(D)/N=" + fmt(d) +
                      " vs g(1)=" + fmt(gd, 8) + " (" + fmt(100 * ed, 3) + "%)"};
}

// Criteria 6 and 7 share one run: same N, p and trial count.
struct RegimeThree {
    bool done = false;
    ExperimentResult result;
    double seconds = 0.0;
};

RegimeThree& regime_three() {
    static RegimeThree r;
    if (!r.done) {
        auto cfg = power_law_config(1000000, 1.0, 0.3, 50, 6);
        cfg.statistics.forms = {LinearForm::parse("2,-1")};
        const auto t0 = std::chrono::steady_clock::now();
        r.result = run_experiment(cfg);
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.done = true;
    }
    return r;
}

Outcome ac6() {
    const auto& res = regime_three().result;
    const double p = p_of(PFamily::power_law(1.0, 0.3), 1000000);
    const double sc = res.summaries.at(0).at("missing_sums").mean;
    const double dc = res.summaries.at(0).at("missing_diffs").mean;
    const double scaled = sc * p * p / 4.0;
    const bool pass = !res.partial && scaled >= 0.95 && scaled <= 1.05 && sc / dc >= 1.9 && sc / dc <= 2.1;
    return {pass, "mean(Sc)*p^2/4=" + fmt(scaled) + " in [0.95,1.05], mean(Sc)/mean(Dc)=" + fmt(sc / dc) + " in [1.9,2.1]"};
}

Outcome ac7() {
    const auto& res = regime_three().result;
    const double p = p_of(PFamily::power_law(1.0, 0.3), 1000000);
    const double dfc = res.summaries.at(0).at("form[2,-1].missing").mean;
    const double scaled = dfc * p * p / (2.0 * 2.0 * 1.0);
    const bool pass = !res.partial && scaled >= 0.95 && scaled <= 1.05;
    return {pass, "mean(Df^c)*p^2/4=" + fmt(scaled) + " in [0.95,1.05] (shared run, " + fmt(regime_three().seconds, 3) + " s)"};
}

Outcome ac8() {
    const auto f = LinearForm::parse("4,-3");
    const auto g = LinearForm::parse("5,-1");
    const auto report = classify_pair(f, g);
    if (report.kind != DominationCase::case_ii || !report.c_threshold) return {false, "pair is not case-ii"};
    const double root = *report.c_threshold;
    std::vector<double> grid;
    for (int i = 0; i < 7; ++i) grid.push_back(root * (0.7 + 0.1 * i));
    const auto r = empirical_crossover(f, g, 1000000, grid, 200, 8, 0);
    std::string freqs;
    for (const auto& pt : r.points) freqs += (freqs.empty() ? "" : ",") + fmt(pt.frequency, 3);
    if (r.inconclusive) return {false, "case-ii, root=" + fmt(root, 8) + ", crossover inconclusive, freqs=" + freqs};
    const double rel = std::abs(*r.crossover / root - 1.0);
    return {rel <= 0.10, "case-ii, root=" + fmt(root, 8) + ", empirical=" + fmt(*r.crossover) + " (" + fmt(100 * rel, 3) +
                             "% off), freqs=" + freqs};
}

Outcome ac9() {
    const auto f = LinearForm::parse("2,-1");
    std::uint64_t checked = 0, mismatches = 0;
    for (std::uint32_t mask = 0; mask < (1U << 13); ++mask) {
        const auto vals = oracle::members_of(mask);
        const auto a = make_set(vals, 0, 12);
        const auto hs = rep_histogram(a, HistKind::sum);
        const auto hd = rep_histogram(a, HistKind::diff);
        const auto hf = rep_histogram(a, HistKind::form, f);
        const auto ps = oracle::pair_values(vals, oracle::PairKind::sum);
        const auto pd = oracle::pair_values(vals, oracle::PairKind::diff);
        const auto pf = oracle::pair_values(vals, oracle::PairKind::form, 2, -1);
        for (unsigned k = 1; k <= 3; ++k) {
            checked += 3;
            mismatches += tuple_statistic(hs, k) != Count{oracle::k_tuples_same_value(ps, k)};
            mismatches += tuple_statistic(hd, k) != Count{oracle::k_tuples_same_value(pd, k)};
            mismatches += tuple_statistic(hf, k) != Count{oracle::k_tuples_same_value(pf, k)};
        }
    }
    return {mismatches == 0, std::to_string(checked) + " comparisons over 8192 subsets, " + std::to_string(mismatches) +
                                 " mismatches"};
}

Outcome ac10() {
    // (a) alternating partial sums on 1000 sets across the three regimes.
    const auto f = LinearForm::parse("2,-1");
    const double deltas[] = {0.3, 0.5, 0.7};
    const std::uint64_t ns[] = {500, 2000, 8000};
    std::uint64_t sets = 0, violations = 0;
    for (std::uint64_t t = 0; t < 1000; ++t) {
        const std::uint64_t n = ns[t % 3];
        const double delta = deltas[(t / 3) % 3];
        const auto a = sample(n, p_of(PFamily::power_law(1.0, delta), n), {10, t});
        const auto hs = rep_histogram(a, HistKind::sum);
        const auto hd = rep_histogram(a, HistKind::diff);
        const auto hf = rep_histogram(a, HistKind::form, f);
        std::vector<Count> xs, xd, xf;
        for (unsigned k = 1; k <= 3; ++k) {
            xs.push_back(tuple_statistic(hs, k));
            xd.push_back(tuple_statistic(hd, k));
            xf.push_back(tuple_statistic(hf, k));
        }
        const std::uint64_t s = sumset(a).size();
        const std::uint64_t d = diffset(a).size();
        const std::uint64_t fi = form_image(a, f).size();
        for (unsigned m = 1; m <= 3; ++m) {
            violations += !alternating_bound_holds(s, xs, m);
            violations += !alternating_bound_holds(d == 0 ? 0 : d - 1, xd, m);
            violations += !alternating_bound_holds(fi, xf, m);
        }
        ++sets;
    }
    // (b) g_{1,1} against g on a log grid.
    double worst_g = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double x = std::pow(10.0, -6.0 + 9.0 * i / 999.0);
        worst_g = std::max(worst_g, std::abs(g_form(1, 1, x) - g_ratio(x)));
    }
    // (c) |g_{u,v}(c^2/u) - (c^2 - alpha c^4)| / c^6 stays within 1.5x of the exact sixth-order
    // coefficient (2|v|/4! + (u - |v|)/3!) / u^3 over the whole c range.
    bool taylor_ok = true;
    std::string taylor;
    const std::pair<int, int> shapes[] = {{2, 1}, {3, 2}, {5, 1}};
    for (const auto& [u, v] : shapes) {
        const double a = alpha(u, v).to_double();
        const double k3 = (2.0 * v / 24.0 + (u - v) / 6.0) / std::pow(u, 3);
        double worst = 0.0;
        for (int i = 0; i < 400; ++i) {
            const double c = std::pow(10.0, -3.0 + 2.0 * i / 399.0);
            const double c2 = c * c;
            worst = std::max(worst, std::abs(g_form(u, v, c2 / u) - (c2 - a * c2 * c2)) / (c2 * c2 * c2));
        }
        taylor_ok = taylor_ok && worst <= 1.5 * k3;
        taylor += (taylor.empty() ? "" : ", ") + std::to_string(u) + "," + std::to_string(v) + ": " + fmt(worst, 4) + "/" +
                  fmt(k3, 4);
    }
    const bool pass = violations == 0 && worst_g <= 1e-12 && taylor_ok;
    return {pass, std::to_string(sets) + " sets, " + std::to_string(violations) + " bound violations; max|g11-g|=" +
                      fmt(worst_g, 3) + "; residual/c^6 max vs coefficient: " + taylor};
}

Outcome ac11() {
    const auto v = verify_bounds(1.0, 0.6, 0.2, 10000, 10000, 11, 0);
    const bool pass = v.interval_within_bound() && v.y_within_bound();
    return {pass, "interval: " + fmt(v.freq_interval) + " <= P1=" + fmt(v.report.p1) + "; Y>" + fmt(v.report.y_threshold) +
                      ": " + fmt(v.freq_y) + " <= P2=" + fmt(v.report.p2)};
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"AC1", "exhaustive enumeration", 10, ac1},
        {"AC2", "exact expectation of missing sums", 60, ac2},
        {"AC3", "Janson bracket for missing differences", 60, ac3},
        {"AC4", "sparse regime", 120, ac4},
        {"AC5", "critical regime", 300, ac5},
        {"AC6", "dense regime", 600, ac6},
        {"AC7", "form asymptotics", 600, ac7},
        {"AC8", "threshold crossover", 1800, ac8},
        {"AC9", "tuple statistic oracle", 60, ac9},
        {"AC10", "deterministic identities", 600, ac10},
        {"AC11", "probability bounds", 600, ac11},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.time_limit_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::cout << (pass ? "PASS " : "FAIL ") << c.id << " " << c.title << ": " << o.detail << " [" << fmt(secs, 3) << " s"
                  << (in_time ? "" : ", over the " + fmt(c.time_limit_s) + " s limit") << "]" << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
