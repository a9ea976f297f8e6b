#include "cis/acceptance.hpp"

#include "cis/cli.hpp"
#include "cis/record.hpp"

#include <cis/bounds.hpp>
#include <cis/card_game.hpp>
#include <cis/errors.hpp>
#include <cis/exact.hpp>
#include <cis/monte_carlo.hpp>
#include <cis/numeric.hpp>
#include <cis/random.hpp>
#include <cis/spectral.hpp>
#include <cis/words.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <set>
#include <sstream>

namespace cis::cli {

Level parse_level(const std::string& name) {
    if (name == "quick") return Level::Quick;
    if (name == "full") return Level::Full;
    throw InvalidArgument("unknown level '" + name + "'");
}

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (!passed) detail << "; ";
            else detail.str("");
            passed = false;
            detail << what;
        }
    }
};

std::string fmt(double x, int prec = 6) {
    std::ostringstream os;
    os.precision(prec);
    os << x;
    return os.str();
}

/// Instances (m, n) with |S_{m,n}| <= cap; m is bounded because n = 1 is always tiny.
std::vector<std::pair<int, int>> enumerable_grid(std::uint64_t cap, int m_max) {
    std::vector<std::pair<int, int>> grid;
    for (int m = 1; m <= m_max; ++m)
        for (int n = 1; multiset_count(m, n) <= cap; ++n) grid.emplace_back(m, n);
    return grid;
}

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    CliRun r;
    r.code = run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

class ScopedEnv {
public:
    ScopedEnv(const char* name, const std::string& value) : name_(name) {
        if (const char* old = std::getenv(name)) old_ = old;
        setenv(name, value.c_str(), 1);
    }
    ~ScopedEnv() {
        if (old_) setenv(name_, old_->c_str(), 1);
        else unsetenv(name_);
    }
    ScopedEnv(const ScopedEnv&) = delete;
    ScopedEnv& operator=(const ScopedEnv&) = delete;

private:
    const char* name_;
    std::optional<std::string> old_;
};

// 1
Outcome closed_form_exactness(Level) {
    Outcome o;
    const double e = std::exp(1.0);
    const double targets[] = {e - 1.0, e * (std::cos(1.0) + std::sin(1.0)) - 1.0};
    for (int m = 1; m <= 2; ++m) {
        CliRun r = run_cli({"l1-closed", "--m", std::to_string(m), "--no-cache"});
        o.require(r.code == 0, "l1-closed --m " + std::to_string(m) + " exited " + std::to_string(r.code));
        if (r.code != 0) continue;
        const double v = Json::parse(r.out).at("value").get<double>();
        const double dev = std::abs(v - targets[m - 1]);
        o.detail << "m=" << m << " dev " << fmt(dev, 3) << ' ';
        o.require(dev < 1e-10, "m=" + std::to_string(m) + " deviates by " + fmt(dev, 3));
    }
    return o;
}

// 2
Outcome triple_engine(Level level) {
    Outcome o;
    double worst = 0;
    for (int m = 1; m <= 6; ++m) {
        const double series = l1_series(m, 1e-12).value.convert_to<double>();
        const double closed = l1_closed_form(m).value.convert_to<double>();
        worst = std::max(worst, std::abs(series - closed));
    }
    o.require(worst < 1e-8, "series vs closed form " + fmt(worst, 3));
    const int n_max = level == Level::Full ? 12 : 8;
    int checked = 0;
    for (int m = 1; m <= 5; ++m)
        for (int n = 1; n <= n_max; ++n, ++checked)
            o.require(p_value(m, n) == complete_prob(m, n), "p_value != HK at m=" + std::to_string(m) +
                                                                ", n=" + std::to_string(n));
    if (o.passed) o.detail << "max |series-closed| " << fmt(worst, 3) << ", " << checked << " exact pairs";
    return o;
}

// 3
Outcome brute_force_oracle(Level level) {
    Outcome o;
    const std::uint64_t cap = level == Level::Full ? 1'000'000 : 100'000;
    const auto grid = enumerable_grid(cap, 12);
    for (auto [m, n] : grid) {
        const BigInt hk = horton_kurn_h(m, n);
        const BigInt bf = count_complete_bruteforce(m, n, cap);
        o.require(hk == bf, "h_" + std::to_string(m) + "(" + std::to_string(n) + ") = " + hk.str() +
                                " but enumeration gives " + bf.str());
        if (m == 1) o.require(hk == 1, "h_1(" + std::to_string(n) + ") != 1");
    }
    o.require(horton_kurn_h(2, 2) == 5, "h_2(2) != 5");
    if (o.passed) o.detail << grid.size() << " instances with |S| <= " << cap;
    return o;
}

// 4
Outcome approximation_decay(Level) {
    Outcome o;
    auto gap = [](int m) { return std::abs(l1_closed_form(m).value.convert_to<double>() - approx_l1(m)); };
    const double g4 = gap(4), g12 = gap(12);
    o.require(g12 < 0.05, "gap at m=12 is " + fmt(g12));
    o.require(g12 < g4, "gap does not decrease from m=4 to m=12");
    if (o.passed) o.detail << "gap(4)=" << fmt(g4, 3) << " gap(12)=" << fmt(g12, 3);
    return o;
}

// 5
Outcome spectral_identities(Level) {
    Outcome o;
    double worst_ps = 0, worst_c = 0;
    for (int m = 1; m <= 12; ++m) {
        RootSet rs = find_roots(m, 128);
        PowerSumReport ps = power_sum_check(rs);
        worst_ps = std::max(worst_ps, ps.max_deviation);
        ReciprocalSeries s = reciprocal_series(m, 2 * m + 6, 128);
        const double c0 = s.coefficients.at(0).convert_to<double>();
        const double c1 = s.coefficients.at(1).convert_to<double>();
        worst_c = std::max({worst_c, std::abs(c0 - 1.0), std::abs(c1 + 1.0 / (m + 2))});
        o.require(s.within_envelope(), "coefficients leave the envelope at m=" + std::to_string(m));
    }
    o.require(worst_ps < 1e-9, "power sums deviate by " + fmt(worst_ps, 3));
    o.require(worst_c < 1e-12, "c0/c1 deviate by " + fmt(worst_c, 3));
    if (o.passed) o.detail << "power sums " << fmt(worst_ps, 3) << ", c0/c1 " << fmt(worst_c, 3);
    return o;
}

// 6
Outcome bounds_sandwich(Level level) {
    Outcome o;
    const std::uint64_t cap = level == Level::Full ? 1'000'000 : 100'000;
    const auto grid = enumerable_grid(cap, 12);
    int comparisons = 0;
    for (auto [m, n] : grid) {
        std::vector<std::uint64_t> hist(static_cast<std::size_t>(n) + 1, 0);
        enumerate_words(m, n, [&](const Word& w) { ++hist[static_cast<std::size_t>(l_max(w))]; }, cap);
        const Rational total(multiset_count(m, n));
        const std::string at = " at m=" + std::to_string(m) + ", n=" + std::to_string(n);

        const Rational exact_complete = Rational(BigInt(hist[static_cast<std::size_t>(n)])) / total;
        if (m >= 2)
            for (int delta = 1; 2 * delta <= n; ++delta) {
                const BigInt sz = static_cast<unsigned long>(greedy_code(m, n, delta).size());
                o.require(completion_lower(n, sz, delta) <= exact_complete,
                          "completion_lower exceeds Pr[L=n]" + at + ", delta=" + std::to_string(delta));
                ++comparisons;
            }
        o.require(completion_lower(n, BigInt(1), 1) <= exact_complete, "single-word bound fails" + at);

        const auto runs = WordFamily::continuous_runs(n);
        const auto aps = WordFamily::arithmetic_progressions(n);
        std::uint64_t at_least = 0;
        for (int k = n; k >= 1; --k) {
            at_least += hist[static_cast<std::size_t>(k)];
            const Rational exact = Rational(BigInt(at_least)) / total;
            o.require(exact <= tail_bound(runs, m, k), "tail bound fails" + at + ", k=" + std::to_string(k));
            o.require(exact <= tail_bound(aps, m, k), "AP tail bound fails" + at + ", k=" + std::to_string(k));
            comparisons += 2;
        }
    }
    if (o.passed) o.detail << grid.size() << " instances, " << comparisons << " comparisons";
    return o;
}

// 7
Outcome gv_codes(Level level) {
    Outcome o;
    const std::uint64_t cap = level == Level::Full ? 100'000 : 10'000;
    int triples = 0;
    for (int m = 2; static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(m) <= cap; ++m) {
        std::uint64_t size = static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(m);
        for (int n = 2; size <= cap; ++n, size *= static_cast<std::uint64_t>(m)) {
            for (int delta = 1; 2 * delta <= n; ++delta, ++triples) {
                const std::string at =
                    " at (" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(delta) + ")";
                CodeBook code = greedy_code(m, n, delta);
                o.require(Rational(static_cast<unsigned long>(code.size())) >= gv_size_bound(m, n, delta),
                          "size below GV" + at);
                if (delta == 1) {
                    std::set<CodeWord> distinct(code.words.begin(), code.words.end());
                    o.require(distinct.size() == code.size(), "repeated codeword" + at);
                } else {
                    o.require(all_pairs_at_distance(code, delta), "pair closer than delta" + at);
                }
            }
        }
    }
    if (o.passed) o.detail << triples << " (m,n,delta) triples with m^n <= " << cap;
    return o;
}

// 8
Outcome mc_vs_closed(Level level) {
    Outcome o;
    const std::uint64_t trials = level == Level::Full ? 200'000 : 20'000;
    Estimate e = estimate_l1(2, 50, trials, kSeed);
    const double target = 2.7560516;
    o.require(e.within(target, 4.0), "mean " + fmt(e.mean, 8) + " se " + fmt(e.std_error, 3));
    if (o.passed)
        o.detail << "mean " << fmt(e.mean, 8) << " +/- " << fmt(e.std_error, 3) << " (z="
                 << fmt((e.mean - target) / e.std_error, 3) << ")";
    return o;
}

// 9
Outcome lmax_bands(Level level) {
    Outcome o;
    const int n = level == Level::Full ? 100'000 : 10'000;
    const std::uint64_t trials = level == Level::Full ? 500 : 100;
    const double g = inverse_gamma(static_cast<double>(n));
    Estimate e1 = estimate_lmax(1, n, trials, kSeed);
    Estimate e2 = estimate_lmax(2, n, trials, kSeed);
    o.require(e1.mean >= g - 3 && e1.mean <= g + 3,
              "m=1 mean " + fmt(e1.mean) + " outside [" + fmt(g - 3) + ", " + fmt(g + 3) + "]");
    o.require(e2.mean >= g - 2 && e2.mean <= 3 * g,
              "m=2 mean " + fmt(e2.mean) + " outside [" + fmt(g - 2) + ", " + fmt(3 * g) + "]");
    if (o.passed)
        o.detail << "inverse gamma " << fmt(g) << ", m=1 " << fmt(e1.mean) << ", m=2 " << fmt(e2.mean);
    return o;
}

// 10
Outcome card_game(Level level) {
    Outcome o;
    const int m = 2, n = 100;
    const std::uint64_t per_trial = level == Level::Full ? 10'000 : 2'000;
    const std::uint64_t trials = level == Level::Full ? 100'000 : 10'000;
    std::vector<Letter> deck;
    int bad_trivial = 0, bad_shifting = 0;
    for (std::uint64_t i = 0; i < per_trial; ++i) {
        RandomSource rng(kSeed, i);
        sample_uniform_into(m, n, rng, deck);
        bad_trivial += play_score(deck, m, n, StrategyKind::Trivial) != m;
        bad_shifting += play_score(deck, m, n, StrategyKind::Shifting) < l1(deck);
    }
    o.require(bad_trivial == 0, std::to_string(bad_trivial) + " trivial games scored != m");
    o.require(bad_shifting == 0, std::to_string(bad_shifting) + " shifting games scored below l1");
    Estimate safe = expected_score(m, n, StrategyKind::Safe, trials, kSeed);
    Estimate shifting = expected_score(m, n, StrategyKind::Shifting, trials, kSeed);
    const double safe_target = m + 1.0 - 1.0 / (m + 1);
    const double shift_target = m + 1.0 - 1.0 / (m + 2);
    auto band = [](const Estimate& e, double target) {
        return " +/- " + fmt(e.std_error, 3) + " vs " + fmt(target) + ", allowed " +
               fmt(4.0 * e.std_error + 0.02, 3) + ", off by " + fmt(std::abs(e.mean - target), 3);
    };
    o.require(safe.within(safe_target, 4.0, 0.02), "safe mean " + fmt(safe.mean) + band(safe, safe_target));
    o.require(shifting.within(shift_target, 4.0, 0.02),
              "shifting mean " + fmt(shifting.mean) + band(shifting, shift_target));
    if (o.passed)
        o.detail << "safe " << fmt(safe.mean) << " +/- " << fmt(safe.std_error, 3) << ", shifting "
                 << fmt(shifting.mean) << " +/- " << fmt(shifting.std_error, 3);
    return o;
}

// 11
Outcome observations(Level level) {
    Outcome o;
    const std::uint64_t trials = level == Level::Full ? 100'000 : 20'000;
    double worst = 0;
    auto check = [&](const FrequencyComparison& c, const std::string& label) {
        const double z = c.pooled_se() > 0 ? std::abs(c.z()) : (c.freq_a == c.freq_b ? 0.0 : INFINITY);
        worst = std::max(worst, z);
        o.require(z < 4.0, label + " differs by " + fmt(z, 3) + " pooled se");
    };
    struct O1 { int m, n, k; };
    for (auto c : {O1{2, 6, 2}, O1{2, 6, 1}, O1{2, 8, 3}}) {
        auto rep = check_observation1(c.m, c.n, c.k, trials, kSeed);
        check(rep.cmp, "obs1(" + std::to_string(c.m) + "," + std::to_string(c.n) + "," + std::to_string(c.k) + ")");
        if (c.k == 1) o.require(rep.cmp.freq_a == 1.0 && rep.cmp.freq_b == 1.0, "obs1 with k=1 is not exactly 1");
    }
    struct O2 { int m, n; std::vector<Letter> w; };
    for (const auto& c : {O2{2, 4, {1}}, O2{2, 3, {1, 2}}, O2{2, 4, {2, 4}}}) {
        auto rep = check_observation2(c.m, c.n, c.w, trials, kSeed);
        check(rep.cmp, "obs2(" + std::to_string(c.m) + "," + std::to_string(c.n) + ")");
        if (c.w.size() == 1) o.require(rep.cmp.freq_a == 1.0 && rep.cmp.freq_b == 1.0, "obs2 with w=(1) is not 1");
    }
    if (o.passed) o.detail << "max |z| " << fmt(worst, 3);
    return o;
}

// 12
Outcome lis_probe(Level level) {
    Outcome o;
    const std::uint64_t trials = level == Level::Full ? 200 : 50;
    Estimate e = estimate_lis(1, 10'000, trials, kSeed);
    o.require(std::abs(e.mean - 200.0) <= 20.0, "mean " + fmt(e.mean) + " not within 10% of 200");
    if (o.passed) o.detail << "mean " << fmt(e.mean) << " +/- " << fmt(e.std_error, 3);
    return o;
}

// 13
Outcome determinism(Level level) {
    Outcome o;
    const std::string trials = level == Level::Full ? "20000" : "4000";
    const std::vector<std::vector<std::string>> commands = {
        {"mc", "l1", "--m", "2", "--n", "30"},
        {"mc", "lmax", "--m", "2", "--n", "40"},
        {"mc", "lis", "--m", "1", "--n", "200"},
        {"mc", "moments", "--m", "3", "--n", "40", "--r-max", "5"},
        {"mc", "obs1", "--m", "2", "--n", "8", "--k", "3"},
        {"mc", "obs2", "--m", "2", "--n", "4", "--w", "2,4"},
        {"cardgame", "--strategy", "trivial", "--m", "2", "--n", "30"},
        {"cardgame", "--strategy", "safe", "--m", "2", "--n", "30"},
        {"cardgame", "--strategy", "shifting", "--m", "2", "--n", "30"},
    };
    auto strip = [](const std::string& text) {
        Json j = Json::parse(text);
        j["meta"].erase("timestamp");
        return j.dump();
    };
    int compared = 0;
    for (auto args : commands) {
        for (const char* extra : {"--trials", trials.c_str(), "--seed", "977", "--no-cache", "--format", "json"})
            args.emplace_back(extra);
        std::optional<std::string> reference;
        for (const char* threads : {"1", "8", "1", "8"}) {
            ScopedEnv env("CIS_THREADS", threads);
            CliRun r = run_cli(args);
            o.require(r.code == 0, args[0] + " " + args[1] + " exited " + std::to_string(r.code) + ": " + r.err);
            if (r.code != 0) break;
            const std::string s = strip(r.out);
            if (!reference) reference = s;
            else o.require(s == *reference, args[0] + " " + args[1] + " output differs with CIS_THREADS=" + threads);
            ++compared;
        }
    }
    if (o.passed) o.detail << compared << " runs over " << commands.size() << " commands identical";
    return o;
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    Outcome (*fn)(Level);
};

constexpr Criterion kCriteria[] = {
    {1, "closed-form exactness", 1, closed_form_exactness},
    {2, "triple-engine agreement", 120, triple_engine},
    {3, "brute-force oracle", 180, brute_force_oracle},
    {4, "approximation decay", 30, approximation_decay},
    {5, "spectral identities", 60, spectral_identities},
    {6, "bounds sandwich", 300, bounds_sandwich},
    {7, "GV codes", 120, gv_codes},
    {8, "Monte Carlo vs closed form", 60, mc_vs_closed},
    {9, "maximum-start band", 600, lmax_bands},
    {10, "card game", 120, card_game},
    {11, "observation checks", 60, observations},
    {12, "LIS probe", 120, lis_probe},
    {13, "determinism", 0, determinism},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(Level level,
                                            const std::function<void(const CriterionResult&)>& on_result) {
    std::vector<CriterionResult> results;
    for (const auto& c : kCriteria) {
        CriterionResult r;
        r.id = c.id;
        r.name = c.name;
        r.budget_seconds = c.budget_seconds;
        const auto start = std::chrono::steady_clock::now();
        try {
            Outcome o = c.fn(level);
            r.passed = o.passed;
            r.detail = o.detail.str();
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (r.budget_seconds > 0 && r.seconds > r.budget_seconds) {
            r.passed = false;
            r.detail += " (took " + fmt(r.seconds, 3) + " s, budget " + fmt(r.budget_seconds, 3) + " s)";
        }
        if (on_result) on_result(r);
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace cis::cli
