#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "unitaria/cli.hpp"

using namespace unitaria;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
    Json json() const { return Json::parse(out); }
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = dispatch(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("unitaria-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

}  // namespace

TEST_CASE("zeta --neg --k 6 prints 691/32760") {
    auto r = run({"zeta", "--neg", "--k", "6"});
    REQUIRE(r.code == 0);
    CHECK(r.json()["result"]["value"] == "691/32760");
    CHECK(r.err.empty());
}

TEST_CASE("bernoulli") {
    auto r = run({"bernoulli", "--n", "12"});
    REQUIRE(r.code == 0);
    CHECK(r.json()["result"]["value"] == "-691/2730");
}

TEST_CASE("doubling-orbits counts for n=2 q=2") {
    auto r = run({"doubling-orbits", "--n", "2", "--q", "2", "--negligible"});
    REQUIRE(r.code == 0);
    Json counts = r.json()["result"]["counts"];
    CHECK(counts["total"] == 27);
    CHECK(counts["X0"] == 18);
    CHECK(counts["X1"] == 9);
    Json orbits = r.json()["result"]["orbits"];
    CHECK(orbits[0]["negligible"] == false);
    CHECK(orbits[1]["negligible"] == true);
    CHECK(orbits[1]["stabilizer_order"] == 36);
}

TEST_CASE("unknown command exits 2 with usage on stderr") {
    auto r = run({"nonsense"});
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(!r.err.empty());
}

TEST_CASE("domain errors exit 1 with structured JSON") {
    auto r = run({"zeta", "--neg", "--k", "0"});
    CHECK(r.code == 1);
    Json j = r.json();
    CHECK(j.contains("error"));
    CHECK(r.err.empty());
}

TEST_CASE("precision floor is enforced") {
    auto r = run({"--precision", "32", "bernoulli", "--n", "2"});
    CHECK(r.code == 1);
    CHECK(r.json().contains("error"));
}

TEST_CASE("cache round trip and determinism") {
    TempDir dir;
    std::string payload = "{\"x\": 1, \"y\": [2, 3]}";
    std::string key = cache_key("some description");
    cache_put(dir.path.string(), key, payload);
    auto hit = cache_get(dir.path.string(), key);
    REQUIRE(hit.payload.has_value());
    CHECK(*hit.payload == payload);  // byte-identical
    CHECK_FALSE(hit.corrupt);

    auto miss = cache_get(dir.path.string(), cache_key("other"));
    CHECK_FALSE(miss.payload.has_value());
    CHECK_FALSE(miss.corrupt);
}

TEST_CASE("cold and warm g2k runs produce identical results") {
    TempDir dir;
    std::vector<std::string> args{"--cache-dir", dir.path.string(), "g2k", "--k", "8", "--bound", "50"};
    auto cold = run(args);
    REQUIRE(cold.code == 0);
    CHECK(cold.json()["result"]["cache_hit"] == false);
    auto warm = run(args);
    REQUIRE(warm.code == 0);
    CHECK(warm.json()["result"]["cache_hit"] == true);
    CHECK(cold.json()["result"]["expansion"] == warm.json()["result"]["expansion"]);
}

TEST_CASE("corrupt cache entries are recomputed with a warning") {
    TempDir dir;
    std::vector<std::string> args{"--cache-dir", dir.path.string(), "g2k", "--k", "4", "--bound", "10"};
    auto first = run(args);
    REQUIRE(first.code == 0);
    // clobber the entry
    std::string key = cache_key("g2k|4|10");
    std::ofstream(cache_path(dir.path.string(), key)) << "unitaria-cache v1 deadbeef\ngarbage";
    auto repaired = run(args);
    REQUIRE(repaired.code == 0);
    CHECK(repaired.json()["result"]["cache_hit"] == false);
    CHECK(repaired.json()["result"]["cache_warning"] == "corrupt entry recomputed and overwritten");
    CHECK(repaired.json()["result"]["expansion"] == first.json()["result"]["expansion"]);
}

TEST_CASE("reports are reproducible including numeric payloads") {
    std::vector<std::string> args{"eis-num", "--lambda", "4", "--z-re", "0.2", "--z-im", "1.1",
                                  "--cutoff", "40"};
    auto a = run(args);
    auto b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.json()["result"] == b.json()["result"]);  // bit-identical at fixed precision
}

TEST_CASE("euler subcommand consumes a Satake file") {
    TempDir dir;
    auto file = dir.path / "satake.json";
    std::ofstream(file) << R"({"schema":1, "default_factor": {"params": ["1"]}})";
    auto r = run({"euler", "--satake", file.string(), "--s", "2", "--cutoff", "2000"});
    REQUIRE(r.code == 0);
    // zeta(2) up to the truncated tail
    double re = std::stod(r.json()["result"]["value"]["re"].get<std::string>());
    CHECK(re == doctest::Approx(1.6449340668).epsilon(1e-3));

    // excluding 2 divides out (1 - 2^{-s})^{-1}
    auto r2 = run({"euler", "--satake", file.string(), "--s", "2", "--cutoff", "2000", "--exclude", "2"});
    double re2 = std::stod(r2.json()["result"]["value"]["re"].get<std::string>());
    CHECK(re2 == doctest::Approx(re * 0.75).epsilon(1e-12));
}

TEST_CASE("signature and pel-validate consume JSON files") {
    TempDir dir;
    auto space_file = dir.path / "space.json";
    std::ofstream(space_file) << R"({"schema":1, "d":1, "n":2, "gram":
        [[{"a":"2/1","b":"0/1"},{"a":"0/1","b":"0/1"}],
         [{"a":"0/1","b":"0/1"},{"a":"-3/1","b":"0/1"}]]})";
    auto r = run({"signature", "--input", space_file.string()});
    REQUIRE(r.code == 0);
    CHECK(r.json()["result"]["a"] == 1);
    CHECK(r.json()["result"]["b"] == 1);

    auto pel_file = dir.path / "pel.json";
    std::ofstream(pel_file) << R"({"schema":1, "d":1, "alpha":{"a":"0/1","b":"1/1"}, "spaces":
        [[[{"a":"1/1","b":"0/1"}]]]})";
    auto p = run({"pel-validate", "--input", pel_file.string()});
    REQUIRE(p.code == 0);
    CHECK(p.json()["result"]["valid"] == true);
    CHECK(p.json()["result"]["signatures"][0]["a"] == 1);
}

TEST_CASE("dual-lattice and psd-enum on builtins") {
    auto r = run({"dual-lattice", "--builtin", "gaussian2"});
    REQUIRE(r.code == 0);
    CHECK(r.json()["result"]["dual"]["basis"].size() == 4);

    auto p = run({"psd-enum", "--builtin", "gaussian2", "--trace-bound", "1"});
    REQUIRE(p.code == 0);
    CHECK(p.json()["result"]["count"] == 3);
}

TEST_CASE("ms-verify emits the (lhs, rhs, error) report") {
    auto r = run({"ms-verify", "--lambda", "8", "--r", "1", "--z-re", "0.2", "--z-im", "1.1",
                  "--cutoff", "60"});
    REQUIRE(r.code == 0);
    Json res = r.json()["result"];
    CHECK(res.contains("lhs"));
    CHECK(res.contains("rhs"));
    CHECK(res.contains("rel_error"));
}

TEST_CASE("csv format flattens the result") {
    auto r = run({"--format", "csv", "zeta", "--neg", "--k", "6"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "value,691/32760\n");
}

TEST_CASE("expansion JSON round trip") {
    auto f = g2k_qexp(3, 12);
    auto back = fourier_expansion_from_json(to_json(f));
    CHECK(back.coeffs() == f.coeffs());
    CHECK(back.lattice().equals(f.lattice()));
    CHECK(back.trace_bound() == f.trace_bound());

    HermLattice gauss = integer_hermitian_lattice(1, 2);
    CHECK(herm_lattice_from_json(to_json(gauss)).equals(gauss));

    // exact decimal parsing
    CHECK(rational_from_string("1.5") == Rational(3, 2));
    CHECK(rational_from_string("-0.125") == Rational(-1, 8));
    CHECK(rational_from_string("7/3") == Rational(7, 3));
}
