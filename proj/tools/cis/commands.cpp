#include "cis/cli.hpp"

#include "cis/acceptance.hpp"
#include "cis/cache.hpp"
#include "cis/record.hpp"

#include <cis/bounds.hpp>
#include <cis/card_game.hpp>
#include <cis/errors.hpp>
#include <cis/exact.hpp>
#include <cis/monte_carlo.hpp>
#include <cis/numeric.hpp>
#include <cis/spectral.hpp>
#include <cis/words.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

namespace cis::cli {

namespace {

std::string digits(const HpReal& x, unsigned bits) {
    return x.str(static_cast<std::streamsize>(bits_to_digits10(bits)));
}

double to_d(const HpReal& x) { return x.convert_to<double>(); }

Json estimate_diagnostics(const Estimate& e) {
    return Json{{"ci95", Json::array({e.ci95_lo, e.ci95_hi})}};
}

ResultRecord estimate_record(const Estimate& e) {
    ResultRecord r;
    r.value = e.mean;
    r.std_error = e.std_error;
    r.meta.seed = e.seed;
    r.meta.trials = e.trials;
    r.diagnostics = estimate_diagnostics(e);
    return r;
}

std::vector<Letter> parse_letters(const std::string& text) {
    std::vector<Letter> out;
    std::string token;
    std::istringstream is(text);
    bool separated = text.find_first_of(", ") != std::string::npos;
    if (!separated) {
        for (char c : text) {
            if (c < '0' || c > '9') throw InvalidArgument("bad letter '" + std::string(1, c) + "'");
            out.push_back(c - '0');
        }
        return out;
    }
    while (std::getline(is, token, ',')) {
        std::istringstream ts(token);
        std::string part;
        while (ts >> part) {
            try {
                out.push_back(static_cast<Letter>(std::stoi(part)));
            } catch (const std::exception&) {
                throw InvalidArgument("bad letter '" + part + "'");
            }
        }
    }
    return out;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
};

class Runner {
public:
    Runner(bool use_cache, std::ostream& err) : use_cache_(use_cache), cache_(ResultCache::default_dir(), &err) {}

    /// Looks up or computes a record. `compute` fills value, stderr, meta and diagnostics.
    ResultRecord produce(const std::string& quantity, const Json& params, bool cacheable,
                         const std::function<ResultRecord()>& compute) {
        const bool cache = use_cache_ && cacheable;
        if (cache) {
            if (auto hit = cache_.load(quantity, params)) return *hit;
        }
        ResultRecord r = compute();
        r.quantity = quantity;
        r.params = params;
        r.meta.timestamp = utc_timestamp();
        if (cache) cache_.store(r);
        return r;
    }

private:
    bool use_cache_;
    ResultCache cache_;
};

void attach_table(ResultRecord& r, Table t) {
    r.columns = std::move(t.columns);
    r.rows = std::move(t.rows);
}

Table moments_table(const Json& value) {
    Table t{{"kind", "r", "value", "stderr", "target"}, {}};
    for (const auto& row : value)
        t.rows.push_back({row.at("kind"), row.at("r"), row.at("value"), row.at("stderr"), row.at("target")});
    return t;
}

Table roots_table(const Json& value, const Json& diagnostics) {
    Table t{{"index", "re", "im", "residual"}, {}};
    const Json& res = diagnostics.at("residuals");
    for (std::size_t i = 0; i < value.size(); ++i)
        t.rows.push_back({static_cast<int>(i), value[i][0], value[i][1], res[i]});
    return t;
}

Table series_table(const Json& value, const Json& diagnostics) {
    Table t{{"k", "exact", "numeric", "envelope"}, {}};
    for (std::size_t i = 0; i < value.size(); ++i)
        t.rows.push_back({static_cast<int>(i), value[i], diagnostics.at("numeric")[i], diagnostics.at("envelope")[i]});
    return t;
}

Table code_table(const Json& words) {
    Table t{{"index", "codeword"}, {}};
    for (std::size_t i = 0; i < words.size(); ++i) t.rows.push_back({static_cast<int>(i), words[i]});
    return t;
}

std::string code_word_string(const CodeWord& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(w[i] + 1);
    }
    return s;
}

std::uint64_t fresh_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

struct Options {
    std::string format = "json";
    std::string out_path;
    bool no_cache = false;

    int m = 0;
    int n = 0;
    int k = 0;
    int t = 0;
    int delta = 0;
    int r_max = 6;
    unsigned bits = 128;
    double eps = 1e-12;
    int max_n = 2000;
    double y = 0;
    double c = 0.1;
    std::string engine = "hk";
    std::string series_engine = "gf";
    std::string family = "continuous";
    std::string cap;
    std::string size;
    std::string pattern;
    std::string strategy = "shifting";
    std::string deck;
    std::string word;
    std::string level = "quick";
    std::vector<double> gammas;
    std::uint64_t trials = 10000;
    std::optional<std::uint64_t> seed;
    bool check_power_sums = false;
    bool list = false;
};

CLI::Option* add_seed(CLI::App* app, Options& o) {
    return app->add_option_function<std::uint64_t>("--seed", [&o](const std::uint64_t& s) { o.seed = s; },
                                                    "random seed; results are cached only when given");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Continuously increasing subsequences of random multiset permutations", "cis"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(CIS_VERSION));
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv", "plain"}));
    app.add_option("--out", o.out_path, "write output to FILE");
    app.add_flag("--no-cache", o.no_cache, "bypass the result cache");

    auto* l1_exact = app.add_subcommand("l1-exact", "E[L^1] limit as a truncated exact series");
    l1_exact->add_option("--m", o.m)->required();
    l1_exact->add_option("--eps", o.eps, "truncation tolerance");
    l1_exact->add_option("--max-n", o.max_n);
    l1_exact->add_option("--bits", o.bits);
    l1_exact->add_option("--engine", o.series_engine)->check(CLI::IsMember({"hk", "gf", "brute"}));

    auto* l1_closed = app.add_subcommand("l1-closed", "E[L^1] limit from the roots of the truncated exponential");
    l1_closed->add_option("--m", o.m)->required();
    l1_closed->add_option("--bits", o.bits);

    auto* l1_approx = app.add_subcommand("l1-approx", "m + 1 - 1/(m + 2)");
    l1_approx->add_option("--m", o.m)->required();

    auto* prob = app.add_subcommand("prob-complete", "Pr[L^1_{m,n} = n] as an exact rational");
    prob->add_option("--m", o.m)->required();
    prob->add_option("--n", o.n)->required();
    prob->add_option("--engine", o.engine)->check(CLI::IsMember({"hk", "gf", "brute"}));

    auto* roots = app.add_subcommand("roots", "certified roots of the truncated exponential");
    roots->add_option("--m", o.m)->required();
    roots->add_option("--bits", o.bits);
    roots->add_flag("--check-power-sums", o.check_power_sums);

    auto* partition = app.add_subcommand("partition", "small/large root partition diagnostic");
    partition->add_option("--m", o.m)->required();
    partition->add_option("--bits", o.bits);
    partition->add_option("--gammas", o.gammas, "gamma-, gamma, gamma+")->expected(3)->delimiter(',');

    auto* recip = app.add_subcommand("recip-series", "coefficients of the reciprocal series");
    recip->add_option("--m", o.m)->required();
    recip->add_option("--k", o.k, "number of coefficients")->required();
    recip->add_option("--bits", o.bits);

    auto* invgamma = app.add_subcommand("invgamma", "inverse of the gamma function on [2, inf)");
    invgamma->add_option("--y", o.y)->required();

    auto* word = app.add_subcommand("word", "statistics of a single word");
    word->add_option("--w", o.word, "letters, e.g. 211323 or 10,2,1")->required();
    word->add_option("--m", o.m)->required();
    word->add_option("--n", o.n)->required();

    auto* bounds = app.add_subcommand("bounds", "upper and lower bounds");
    bounds->require_subcommand(1);
    auto* b_tail = bounds->add_subcommand("tail", "union bound on Pr[L >= k]");
    b_tail->add_option("--family", o.family)->check(CLI::IsMember({"continuous", "arithmetic"}));
    b_tail->add_option("--m", o.m)->required();
    b_tail->add_option("--n", o.n)->required();
    b_tail->add_option("--k", o.k)->required();
    auto* b_exp = bounds->add_subcommand("expectation-upper", "upper bound on E[L] for a family of size at most cap");
    b_exp->add_option("--m", o.m)->required();
    auto* cap_opt = b_exp->add_option("--cap", o.cap, "family size cap (integer)");
    auto* fam_opt = b_exp->add_option("--family", o.family)->check(CLI::IsMember({"continuous", "arithmetic"}));
    auto* fam_n = b_exp->add_option("--n", o.n, "length, used with --family");
    cap_opt->excludes(fam_opt);
    fam_opt->needs(fam_n);
    auto* b_block = bounds->add_subcommand("block-lower", "block-independence lower bound on Pr[L >= k]");
    b_block->add_option("--m", o.m)->required();
    b_block->add_option("--n", o.n)->required();
    b_block->add_option("--k", o.k)->required();
    auto* b_gv = bounds->add_subcommand("gv-code", "greedy code with a given minimum distance");
    b_gv->add_option("--m", o.m)->required();
    b_gv->add_option("--n", o.n)->required();
    b_gv->add_option("--delta", o.delta)->required();
    b_gv->add_flag("--list", o.list, "include the codewords");
    auto* b_comp = bounds->add_subcommand("completion-lower", "lower bound on Pr[L = n] from a code");
    b_comp->add_option("--n", o.n)->required();
    b_comp->add_option("--delta", o.delta)->required();
    auto* size_opt = b_comp->add_option("--size", o.size, "code size |T|");
    auto* code_m = b_comp->add_option("--m", o.m, "build a greedy code over [n] of this multiplicity");
    size_opt->excludes(code_m);
    auto* b_fact = bounds->add_subcommand("factorial-threshold", "k with m^{ct} near k!");
    b_fact->add_option("--m", o.m)->required();
    b_fact->add_option("--t", o.t)->required();
    b_fact->add_option("--c", o.c);
    auto* b_cont = bounds->add_subcommand("lower-cont", "asymptotic lower expression, in log form");
    b_cont->add_option("--m", o.m)->required();
    b_cont->add_option("--n", o.n)->required();
    auto* b_ent = bounds->add_subcommand("entropy", "C(n, delta) against 2^{H(delta/n) n}");
    b_ent->add_option("--n", o.n)->required();
    b_ent->add_option("--delta", o.delta)->required();

    auto* mc = app.add_subcommand("mc", "Monte Carlo estimators");
    mc->require_subcommand(1);
    std::vector<CLI::App*> mc_subs;
    auto add_mc = [&](const std::string& name, const std::string& desc) {
        auto* s = mc->add_subcommand(name, desc);
        s->add_option("--m", o.m)->required();
        s->add_option("--n", o.n)->required();
        s->add_option("--trials", o.trials);
        add_seed(s, o);
        mc_subs.push_back(s);
        return s;
    };
    auto* mc_l1 = add_mc("l1", "E[L^1_{m,n}]");
    auto* mc_lmax = add_mc("lmax", "E[L_{m,n}]");
    auto* mc_lis = add_mc("lis", "longest strictly increasing subsequence");
    auto* mc_mom = add_mc("moments", "raw and central moments of L^1");
    mc_mom->add_option("--r-max", o.r_max);
    auto* mc_obs1 = add_mc("obs1", "Pr[L^1_{m,n} >= k] against Pr[L^1_{m,k} = k]");
    mc_obs1->add_option("--k", o.k)->required();
    auto* mc_obs2 = add_mc("obs2", "pattern containment against labeled type containment");
    mc_obs2->add_option("--w", o.pattern, "pattern of distinct letters")->required();

    auto* card = app.add_subcommand("cardgame", "guessing game with correct/incorrect feedback");
    card->add_option("--strategy", o.strategy)->check(CLI::IsMember({"trivial", "safe", "shifting"}));
    card->add_option("--m", o.m)->required();
    card->add_option("--n", o.n)->required();
    card->add_option("--trials", o.trials);
    card->add_option("--deck", o.deck, "play one given deck instead of sampling");
    add_seed(card, o);

    auto* verify = app.add_subcommand("verify-all", "run the acceptance suite");
    verify->add_option("--level", o.level)->check(CLI::IsMember({"quick", "full"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << (dynamic_cast<const CLI::CallForVersion*>(&e) ? std::string(CIS_VERSION) + "\n"
                                                                 : app.help());
            return kExitOk;
        }
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }

    std::vector<ResultRecord> records;
    int exit_code = kExitOk;
    try {
        const Format format = parse_format(o.format);
        Runner runner(!o.no_cache, err);
        const McOptions mco{};
        const bool seeded = o.seed.has_value();
        const std::uint64_t seed = seeded ? *o.seed : fresh_seed();

        if (l1_exact->parsed()) {
            const auto eng = parse_engine(o.series_engine);
            Json params{{"m", o.m}, {"eps", o.eps}, {"max_n", o.max_n}, {"bits", o.bits}, {"engine", engine_name(eng)}};
            records.push_back(runner.produce("l1-exact", params, true, [&] {
                SeriesResult s = l1_series(o.m, o.eps, o.max_n, o.bits, eng);
                ResultRecord r;
                r.value = to_d(s.value);
                r.meta.bits = o.bits;
                r.meta.engine = engine_name(eng);
                r.diagnostics = {{"digits", digits(s.value, o.bits)},
                                 {"terms_used", s.terms_used},
                                 {"truncation_bound", s.truncation_bound}};
                return r;
            }));
        } else if (l1_closed->parsed()) {
            Json params{{"m", o.m}, {"bits", o.bits}};
            records.push_back(runner.produce("l1-closed", params, true, [&] {
                RootSet rs = find_roots(o.m, o.bits);
                ClosedFormResult cf = l1_closed_form(rs);
                ResultRecord r;
                r.value = to_d(cf.value);
                r.meta.bits = o.bits;
                r.diagnostics = {{"digits", digits(cf.value, o.bits)},
                                 {"imag_residue", cf.imag_residue},
                                 {"max_root_residual", rs.max_residual()}};
                return r;
            }));
        } else if (l1_approx->parsed()) {
            records.push_back(runner.produce("l1-approx", Json{{"m", o.m}}, false, [&] {
                ResultRecord r;
                r.value = approx_l1(o.m);
                return r;
            }));
        } else if (prob->parsed()) {
            const auto eng = parse_engine(o.engine);
            Json params{{"m", o.m}, {"n", o.n}, {"engine", engine_name(eng)}};
            records.push_back(runner.produce("prob-complete", params, true, [&] {
                Rational p = complete_prob(o.m, o.n, eng);
                ResultRecord r;
                r.value = to_string(p);
                r.meta.engine = engine_name(eng);
                r.diagnostics = {{"decimal", to_double(p)}};
                return r;
            }));
        } else if (roots->parsed()) {
            Json params{{"m", o.m}, {"bits", o.bits}, {"check_power_sums", o.check_power_sums}};
            ResultRecord r = runner.produce("roots", params, true, [&] {
                RootSet rs = find_roots(o.m, o.bits);
                ResultRecord r;
                r.value = Json::array();
                Json hp = Json::array(), res = Json::array();
                for (std::size_t i = 0; i < rs.roots.size(); ++i) {
                    r.value.push_back(Json::array({to_d(rs.roots[i].re), to_d(rs.roots[i].im)}));
                    hp.push_back(Json::array({digits(rs.roots[i].re, o.bits), digits(rs.roots[i].im, o.bits)}));
                    res.push_back(to_d(rs.residuals[i]));
                }
                r.meta.bits = o.bits;
                r.diagnostics = {{"digits", hp},
                                 {"residuals", res},
                                 {"max_residual", rs.max_residual()},
                                 {"min_separation", rs.min_pairwise_distance()},
                                 {"conjugate_mismatch", rs.conjugate_mismatch()},
                                 {"iterations", rs.iterations}};
                if (o.check_power_sums) {
                    PowerSumReport ps = power_sum_check(rs);
                    Json rows = Json::array();
                    for (const auto& row : ps.rows)
                        rows.push_back({{"t", row.t},
                                        {"real", to_d(row.real)},
                                        {"imag", to_d(row.imag)},
                                        {"expected", to_string(row.expected)},
                                        {"deviation", row.deviation}});
                    r.diagnostics["power_sums"] = rows;
                    r.diagnostics["power_sum_max_deviation"] = ps.max_deviation;
                    r.diagnostics["newton_max_deviation"] = ps.max_newton_deviation;
                }
                return r;
            });
            attach_table(r, roots_table(r.value, r.diagnostics));
            records.push_back(std::move(r));
        } else if (partition->parsed()) {
            if (o.gammas.empty()) o.gammas = {kDefaultGammaMinus, kDefaultGamma, kDefaultGammaPlus};
            Json params{{"m", o.m}, {"bits", o.bits}, {"gammas", o.gammas}};
            records.push_back(runner.produce("partition", params, true, [&] {
                RootSet rs = find_roots(o.m, o.bits);
                PartitionReport pr = root_partition_diagnostic(rs, o.gammas[0], o.gammas[1], o.gammas[2]);
                ResultRecord r;
                r.value = pr.all_ok() ? "ok" : "violated";
                r.meta.bits = o.bits;
                r.diagnostics = {{"small", pr.small.size()},
                                 {"large", pr.large.size()},
                                 {"large_magnitude_ok", pr.large_magnitude_ok},
                                 {"small_magnitude_ok", pr.small_magnitude_ok},
                                 {"small_half_ok", pr.small_half_ok},
                                 {"large_sum_abs", pr.large_sum_abs},
                                 {"large_sum_bound", pr.large_sum_bound}};
                return r;
            }));
        } else if (recip->parsed()) {
            Json params{{"m", o.m}, {"k", o.k}, {"bits", o.bits}};
            ResultRecord r = runner.produce("recip-series", params, true, [&] {
                ReciprocalSeries rs = reciprocal_series(o.m, o.k, o.bits);
                ResultRecord r;
                r.value = Json::array();
                Json num = Json::array(), env = Json::array();
                for (std::size_t i = 0; i < rs.exact.size(); ++i) {
                    r.value.push_back(to_string(rs.exact[i]));
                    num.push_back(to_d(rs.coefficients[i]));
                    env.push_back(rs.envelope(static_cast<int>(i)));
                }
                r.meta.bits = o.bits;
                r.diagnostics = {{"numeric", num}, {"envelope", env}, {"within_envelope", rs.within_envelope()}};
                return r;
            });
            attach_table(r, series_table(r.value, r.diagnostics));
            records.push_back(std::move(r));
        } else if (invgamma->parsed()) {
            records.push_back(runner.produce("invgamma", Json{{"y", o.y}}, false, [&] {
                ResultRecord r;
                r.value = inverse_gamma(o.y);
                return r;
            }));
        } else if (word->parsed()) {
            records.push_back(runner.produce("word", Json{{"w", o.word}, {"m", o.m}, {"n", o.n}}, false, [&] {
                Word w = make_word(parse_letters(o.word), o.m, o.n);
                Json starts = Json::array();
                for (int i = 1; i <= o.n; ++i) starts.push_back(l_start(w, i));
                ResultRecord r;
                r.value = l1(w);
                r.diagnostics = {{"l_start", starts},
                                 {"l_max", l_max(w)},
                                 {"longest_increasing", longest_increasing(w.letters())}};
                return r;
            }));
        } else if (b_tail->parsed()) {
            Json params{{"family", o.family}, {"m", o.m}, {"n", o.n}, {"k", o.k}};
            records.push_back(runner.produce("bounds-tail", params, false, [&] {
                WordFamily f = o.family == "continuous" ? WordFamily::continuous_runs(o.n)
                                                        : WordFamily::arithmetic_progressions(o.n);
                Rational b = tail_bound(f, o.m, o.k);
                ResultRecord r;
                r.value = to_string(b);
                r.diagnostics = {{"decimal", to_double(b)}, {"family_size", f.size_at(o.k).str()}};
                return r;
            }));
        } else if (b_exp->parsed()) {
            BigInt cap;
            if (!o.cap.empty()) {
                try {
                    cap = BigInt(o.cap);
                } catch (const std::exception&) {
                    throw InvalidArgument("--cap must be an integer");
                }
            } else if (o.n > 0) {
                cap = (o.family == "continuous" ? WordFamily::continuous_runs(o.n)
                                                : WordFamily::arithmetic_progressions(o.n))
                          .size_cap();
            } else {
                throw InvalidArgument("expectation-upper needs --cap or --family with --n");
            }
            Json params{{"m", o.m}, {"cap", cap.str()}};
            records.push_back(runner.produce("bounds-expectation-upper", params, false, [&] {
                ExpectationUpper e = expectation_upper(o.m, cap);
                ResultRecord r;
                r.value = e.bound;
                r.diagnostics = {{"t", e.t}, {"k", e.k}, {"regime_ok", e.regime_ok}};
                return r;
            }));
        } else if (b_block->parsed()) {
            Json params{{"m", o.m}, {"n", o.n}, {"k", o.k}};
            records.push_back(runner.produce("bounds-block-lower", params, true, [&] {
                BlockLower b = block_lower_bound(o.m, o.n, o.k);
                ResultRecord r;
                r.value = b.value;
                r.diagnostics = {{"p_k", to_string(b.p_k)}, {"blocks", b.blocks}};
                return r;
            }));
        } else if (b_gv->parsed()) {
            Json params{{"m", o.m}, {"n", o.n}, {"delta", o.delta}, {"list", o.list}};
            ResultRecord r = runner.produce("bounds-gv-code", params, true, [&] {
                CodeBook code = greedy_code(o.m, o.n, o.delta);
                Rational gv = gv_size_bound(o.m, o.n, o.delta);
                ResultRecord r;
                r.value = code.size();
                r.diagnostics = {{"gv_bound", to_string(gv)},
                                 {"meets_bound", Rational(static_cast<unsigned long>(code.size())) >= gv}};
                if (o.list) {
                    Json words = Json::array();
                    for (const auto& w : code.words) words.push_back(code_word_string(w));
                    r.diagnostics["codewords"] = words;
                }
                return r;
            });
            if (o.list) attach_table(r, code_table(r.diagnostics.at("codewords")));
            records.push_back(std::move(r));
        } else if (b_comp->parsed()) {
            BigInt size;
            Json params{{"n", o.n}, {"delta", o.delta}};
            if (!o.size.empty()) {
                try {
                    size = BigInt(o.size);
                } catch (const std::exception&) {
                    throw InvalidArgument("--size must be an integer");
                }
                params["size"] = size.str();
            } else if (o.m > 0) {
                size = static_cast<unsigned long>(greedy_code(o.m, o.n, o.delta).size());
                params["m"] = o.m;
            } else {
                throw InvalidArgument("completion-lower needs --size or --m");
            }
            records.push_back(runner.produce("bounds-completion-lower", params, false, [&] {
                Rational b = completion_lower(o.n, size, o.delta);
                ResultRecord r;
                r.value = to_string(b);
                r.diagnostics = {{"decimal", to_double(b)}, {"code_size", size.str()}};
                return r;
            }));
        } else if (b_fact->parsed()) {
            Json params{{"m", o.m}, {"t", o.t}, {"c", o.c}};
            records.push_back(runner.produce("bounds-factorial-threshold", params, false, [&] {
                FactorialThreshold f = factorial_threshold(o.m, o.t, o.c);
                ResultRecord r;
                r.value = f.k;
                r.diagnostics = {{"adjusted_c", f.adjusted_c},
                                 {"lower_ok", f.lower_ok},
                                 {"upper_ok", f.upper_ok},
                                 {"upper_applies", f.upper_applies}};
                return r;
            }));
        } else if (b_cont->parsed()) {
            records.push_back(runner.produce("bounds-lower-cont", Json{{"m", o.m}, {"n", o.n}}, false, [&] {
                LowerContAsymptotic l = lower_cont_asymptotic(o.m, o.n);
                ResultRecord r;
                r.value = l.log_value;
                r.diagnostics = {{"value", l.value()}, {"domain_ok", l.domain_ok}};
                return r;
            }));
        } else if (b_ent->parsed()) {
            records.push_back(runner.produce("bounds-entropy", Json{{"n", o.n}, {"delta", o.delta}}, false, [&] {
                EntropyCheck e = entropy_binom_check(o.n, o.delta);
                ResultRecord r;
                r.value = e.holds ? "holds" : "violated";
                r.diagnostics = {{"binom", e.binom.str()},
                                 {"log2_binom", e.log2_binom},
                                 {"log2_bound", e.log2_bound},
                                 {"entropy", e.entropy}};
                return r;
            }));
        } else if (mc->parsed()) {
            Json params{{"m", o.m}, {"n", o.n}, {"trials", o.trials}, {"seed", seed}};
            if (mc_l1->parsed()) {
                records.push_back(runner.produce("mc-l1", params, seeded, [&] {
                    return estimate_record(estimate_l1(o.m, o.n, o.trials, seed, mco));
                }));
            } else if (mc_lmax->parsed()) {
                records.push_back(runner.produce("mc-lmax", params, seeded, [&] {
                    return estimate_record(estimate_lmax(o.m, o.n, o.trials, seed, mco));
                }));
            } else if (mc_lis->parsed()) {
                records.push_back(runner.produce("mc-lis", params, seeded, [&] {
                    return estimate_record(estimate_lis(o.m, o.n, o.trials, seed, mco));
                }));
            } else if (mc_mom->parsed()) {
                params["r_max"] = o.r_max;
                ResultRecord r = runner.produce("mc-moments", params, seeded, [&] {
                    MomentReport rep = moments(o.m, o.n, o.r_max, o.trials, seed, mco);
                    ResultRecord r;
                    r.value = Json::array();
                    for (const auto& row : rep.raw)
                        r.value.push_back({{"kind", "raw"}, {"r", row.r}, {"value", row.value},
                                           {"stderr", row.std_error}, {"target", row.target}});
                    for (const auto& row : rep.central)
                        r.value.push_back({{"kind", "central"}, {"r", row.r}, {"value", row.value},
                                           {"stderr", row.std_error}, {"target", row.target}});
                    r.meta.seed = seed;
                    r.meta.trials = o.trials;
                    r.diagnostics = {{"mean", rep.mu}, {"mean_stderr", rep.mu_std_error}, {"caveat", rep.caveat}};
                    return r;
                });
                attach_table(r, moments_table(r.value));
                records.push_back(std::move(r));
            } else if (mc_obs1->parsed()) {
                params["k"] = o.k;
                records.push_back(runner.produce("mc-obs1", params, seeded, [&] {
                    Observation1Report rep = check_observation1(o.m, o.n, o.k, o.trials, seed, mco);
                    ResultRecord r;
                    r.value = Json::array({rep.cmp.freq_a, rep.cmp.freq_b});
                    r.std_error = rep.cmp.pooled_se();
                    r.meta.seed = seed;
                    r.meta.trials = o.trials;
                    r.diagnostics = {{"z", rep.cmp.z()}, {"exact", to_string(rep.exact)}};
                    return r;
                }));
            } else if (mc_obs2->parsed()) {
                std::vector<Letter> pattern = parse_letters(o.pattern);
                Json pj = Json::array();
                for (Letter l : pattern) pj.push_back(l);
                params["w"] = pj;
                records.push_back(runner.produce("mc-obs2", params, seeded, [&] {
                    Observation2Report rep = check_observation2(o.m, o.n, pattern, o.trials, seed, mco);
                    ResultRecord r;
                    r.value = Json::array({rep.cmp.freq_a, rep.cmp.freq_b});
                    r.std_error = rep.cmp.pooled_se();
                    r.meta.seed = seed;
                    r.meta.trials = o.trials;
                    r.diagnostics = {{"z", rep.cmp.z()}};
                    return r;
                }));
            }
        } else if (card->parsed()) {
            const StrategyKind s = parse_strategy(o.strategy);
            if (!o.deck.empty()) {
                Json params{{"strategy", strategy_name(s)}, {"m", o.m}, {"n", o.n}, {"deck", o.deck}};
                records.push_back(runner.produce("cardgame-play", params, false, [&] {
                    GameTrace g = play(make_word(parse_letters(o.deck), o.m, o.n), s);
                    Json guesses = Json::array(), fb = Json::array();
                    for (Letter l : g.guesses) guesses.push_back(l);
                    for (bool b : g.feedback) fb.push_back(b);
                    ResultRecord r;
                    r.value = g.score;
                    r.diagnostics = {{"guesses", guesses}, {"feedback", fb}, {"l1", l1(g.word)}};
                    return r;
                }));
            } else {
                Json params{{"strategy", strategy_name(s)}, {"m", o.m}, {"n", o.n}, {"trials", o.trials},
                            {"seed", seed}};
                records.push_back(runner.produce("cardgame", params, seeded, [&] {
                    return estimate_record(expected_score(o.m, o.n, s, o.trials, seed, mco));
                }));
            }
        } else if (verify->parsed()) {
            const Level level = parse_level(o.level);
            ResultRecord r;
            r.quantity = "verify-all";
            r.params = {{"level", o.level}};
            r.value = Json::array();
            r.columns = {"id", "criterion", "status", "seconds", "detail"};
            bool all = true;
            for (const auto& c : run_acceptance(level, [&err](const CriterionResult& c) {
                     err << (c.passed ? "PASS " : "FAIL ") << c.id << ' ' << c.name << '\n';
                 })) {
                all = all && c.passed;
                r.value.push_back({{"id", c.id}, {"criterion", c.name}, {"passed", c.passed},
                                   {"seconds", c.seconds}, {"detail", c.detail}});
                r.rows.push_back({c.id, c.name, c.passed ? "pass" : "fail", c.seconds, c.detail});
            }
            r.diagnostics = {{"all_passed", all}};
            r.meta.timestamp = utc_timestamp();
            records.push_back(std::move(r));
            if (!all) exit_code = kExitFailure;
        }

        if (o.out_path.empty()) {
            render(records, format, out);
        } else {
            std::ofstream file(o.out_path);
            if (!file) throw InvalidArgument("cannot open output file '" + o.out_path + "'");
            render(records, format, file);
        }
    } catch (const NoConvergence& e) {
        err << "error: " << e.what() << '\n';
        return kExitNoConvergence;
    } catch (const SpaceTooLarge& e) {
        err << "error: " << e.what() << '\n';
        return kExitResource;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return exit_code;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace cis::cli
