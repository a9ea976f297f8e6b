#include <doctest.h>

#include "cis/cache.hpp"
#include "cis/cli.hpp"
#include "cis/record.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace cis::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
    Json json() const { return Json::parse(out); }
};

Result cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempCache {
    fs::path dir;
    TempCache() {
        dir = fs::temp_directory_path() / ("cis-test-cache-" + std::to_string(::getpid()));
        fs::remove_all(dir);
        setenv("CIS_CACHE_DIR", dir.c_str(), 1);
    }
    ~TempCache() { fs::remove_all(dir); }
};

}  // namespace

TEST_CASE("prob-complete emits exact rationals") {
    TempCache tc;
    auto r = cli({"prob-complete", "--m", "2", "--n", "2", "--engine", "hk", "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = r.json();
    CHECK(j["schema"] == 1);
    CHECK(j["quantity"] == "prob-complete");
    CHECK(j["value"] == "5/6");
    CHECK(j["params"]["engine"] == "hk");
    CHECK(j["meta"]["cached"] == false);
    CHECK(j["meta"]["version"] == CIS_VERSION);
    CHECK(cli({"prob-complete", "--m", "2", "--n", "3", "--engine", "brute"}).json()["value"] ==
          cli({"prob-complete", "--m", "2", "--n", "3", "--engine", "gf"}).json()["value"]);
}

TEST_CASE("closed form, approximation and inverse gamma") {
    TempCache tc;
    auto c = cli({"l1-closed", "--m", "1"});
    REQUIRE(c.code == 0);
    CHECK(std::abs(c.json()["value"].get<double>() - (std::exp(1.0) - 1)) < 1e-14);
    CHECK(c.json()["diagnostics"]["digits"].get<std::string>().rfind("1.71828182845904523536", 0) == 0);
    auto a = cli({"l1-approx", "--m", "2"});
    CHECK(a.json()["value"].get<double>() == doctest::Approx(2.75));
    auto g = cli({"invgamma", "--y", "24"});
    REQUIRE(g.code == 0);
    CHECK(g.json()["value"].get<double>() == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("exit codes") {
    TempCache tc;
    CHECK(cli({}).code == kExitInvalid);
    CHECK(cli({"no-such-command"}).code == kExitInvalid);
    CHECK(cli({"l1-closed"}).code == kExitInvalid);
    CHECK(cli({"l1-closed", "--m", "x"}).code == kExitInvalid);
    CHECK(cli({"prob-complete", "--m", "0", "--n", "2"}).code == kExitInvalid);
    CHECK(cli({"invgamma", "--y", "0.5"}).code == kExitInvalid);
    CHECK(cli({"l1-exact", "--m", "3", "--max-n", "4", "--no-cache"}).code == kExitNoConvergence);
    CHECK(cli({"prob-complete", "--m", "4", "--n", "5", "--engine", "brute"}).code == kExitResource);
    CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("cache hit, clear and corruption") {
    TempCache tc;
    auto first = cli({"l1-exact", "--m", "6"});
    REQUIRE(first.code == 0);
    CHECK(first.json()["meta"]["cached"] == false);
    auto second = cli({"l1-exact", "--m", "6"});
    CHECK(second.json()["meta"]["cached"] == true);
    CHECK(second.json()["value"] == first.json()["value"]);

    fs::remove_all(tc.dir);
    auto third = cli({"l1-exact", "--m", "6"});
    CHECK(third.json()["meta"]["cached"] == false);
    CHECK(third.json()["value"] == first.json()["value"]);

    for (const auto& entry : fs::directory_iterator(tc.dir)) std::ofstream(entry.path()) << "{not json";
    auto fourth = cli({"l1-exact", "--m", "6"});
    CHECK(fourth.code == 0);
    CHECK(fourth.err.find("warning") != std::string::npos);
    CHECK(fourth.json()["meta"]["cached"] == false);
    CHECK(fourth.json()["value"] == first.json()["value"]);
}

TEST_CASE("cache keys depend on the tool version") {
    TempCache tc;
    ResultCache cache(tc.dir);
    const Json params{{"m", 3}};
    CHECK(ResultCache::key("l1-exact", params, "0.0.1") != ResultCache::key("l1-exact", params));
    CHECK(cache.path_for(ResultCache::key("l1-exact", params, "0.0.1")) !=
          cache.path_for(ResultCache::key("l1-exact", params)));

    ResultRecord r;
    r.quantity = "l1-exact";
    r.params = params;
    r.value = 1.5;
    cache.store(r);
    REQUIRE(cache.load("l1-exact", params).has_value());

    // an entry written by another version under our file name must not be served
    Json stale;
    stale["key"] = ResultCache::key("l1-exact", params, "0.0.1");
    stale["record"] = to_json(r);
    std::ofstream(cache.path_for(ResultCache::key("l1-exact", params))) << stale.dump();
    CHECK_FALSE(cache.load("l1-exact", params).has_value());
}

TEST_CASE("Monte Carlo results are cached only with a seed") {
    TempCache tc;
    auto a = cli({"mc", "l1", "--m", "2", "--n", "10", "--trials", "500", "--seed", "5"});
    auto b = cli({"mc", "l1", "--m", "2", "--n", "10", "--trials", "500", "--seed", "5"});
    CHECK(b.json()["meta"]["cached"] == true);
    CHECK(a.json()["value"] == b.json()["value"]);
    CHECK(a.json()["meta"]["seed"] == 5);
    auto c = cli({"mc", "l1", "--m", "2", "--n", "10", "--trials", "500"});
    auto d = cli({"mc", "l1", "--m", "2", "--n", "10", "--trials", "500"});
    CHECK(c.json()["meta"]["cached"] == false);
    CHECK(d.json()["meta"]["cached"] == false);
}

TEST_CASE("JSON output round-trips") {
    TempCache tc;
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"prob-complete", "--m", "3", "--n", "4"},
             {"roots", "--m", "5", "--check-power-sums"},
             {"recip-series", "--m", "3", "--k", "6"},
             {"mc", "moments", "--m", "2", "--n", "20", "--trials", "300", "--seed", "1"},
             {"cardgame", "--strategy", "safe", "--m", "2", "--n", "10", "--trials", "300", "--seed", "2"},
             {"bounds", "gv-code", "--m", "2", "--n", "6", "--delta", "2"}}) {
        auto r = cli(args);
        REQUIRE(r.code == 0);
        const Json j = r.json();
        const ResultRecord rec = record_from_json(j);
        CHECK(to_json(rec) == j);
        CHECK(record_from_json(Json::parse(to_json(rec).dump())) == rec);
    }
}

TEST_CASE("csv and plain rendering") {
    TempCache tc;
    auto csv = cli({"mc", "moments", "--m", "2", "--n", "20", "--trials", "300", "--seed", "1", "--format", "csv"});
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("kind,r,value,stderr,target\n", 0) == 0);
    auto single = cli({"prob-complete", "--m", "2", "--n", "2", "--format", "csv"});
    CHECK(single.out == "quantity,engine,m,n,value,stderr\nprob-complete,hk,2,2,5/6,\n");
    auto plain = cli({"prob-complete", "--m", "2", "--n", "2", "--format", "plain"});
    CHECK(plain.out.find("value = 5/6") != std::string::npos);
}

TEST_CASE("--out writes to a file") {
    TempCache tc;
    fs::create_directories(tc.dir);
    const fs::path file = tc.dir / "out.json";
    auto r = cli({"invgamma", "--y", "120", "--out", file.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(file);
    CHECK(Json::parse(in)["value"].get<double>() == doctest::Approx(6.0));
}

TEST_CASE("bounds, word and card game commands") {
    TempCache tc;
    CHECK(cli({"bounds", "tail", "--family", "continuous", "--m", "1", "--n", "4", "--k", "4"}).json()["value"] ==
          "1/24");
    CHECK(cli({"bounds", "completion-lower", "--n", "5", "--size", "1", "--delta", "3"}).json()["value"] == "1/144");
    CHECK(cli({"bounds", "gv-code", "--m", "2", "--n", "4", "--delta", "1"}).json()["value"] == 16);
    CHECK(cli({"bounds", "expectation-upper", "--m", "1", "--cap", "120"}).json()["diagnostics"]["t"] == 5);
    CHECK(cli({"bounds", "factorial-threshold", "--m", "2", "--t", "2048", "--c", "0.1"}).json()["value"] == 2067);
    CHECK(cli({"bounds", "entropy", "--n", "10", "--delta", "3"}).json()["value"] == "holds");
    auto w = cli({"word", "--w", "211323", "--m", "2", "--n", "3"}).json();
    CHECK(w["value"] == 3);
    CHECK(w["diagnostics"]["l_max"] == 3);
    auto g = cli({"cardgame", "--strategy", "shifting", "--m", "2", "--n", "3", "--deck", "211323"}).json();
    CHECK(g["value"] == 3);
    CHECK(g["diagnostics"]["guesses"] == Json::array({1, 1, 2, 2, 2, 3}));
    CHECK(cli({"cardgame", "--strategy", "trivial", "--m", "3", "--n", "5", "--trials", "100", "--seed", "3"})
              .json()["value"] == 3.0);
}
