#include "rcu/errors.hpp"
#include "rcu/experiment.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace rcu;
namespace fs = std::filesystem;

namespace {

Json base_config()
{
    return Json::parse(R"({
        "schema_version": 1,
        "family": "linear_poly",
        "sampler": {"kind": "iid_gaussian", "n": 1},
        "target": {"name": "geometric_ma", "lambda": 0.5},
        "capacity": {"param": "degree", "values": [1, 2]},
        "reservoir": {"N": 5, "sigma_max": 0.8},
        "p": 2, "T": 20, "washout": 19, "M_train": 200, "M_eval": 500,
        "seeds": {"reservoir": [1], "train": 2, "eval": 3}
    })");
}

fs::path scratch(const std::string& name)
{
    const auto d = fs::temp_directory_path() / ("rcu_harness_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

int run_cli(const std::string& args, const fs::path& stdout_file = "/dev/null")
{
    const std::string cmd = std::string(RCU_CLI_PATH) + " " + args + " > " + stdout_file.string() + " 2> /dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write(const fs::path& p, const Json& j) { std::ofstream(p) << j.dump(2); }

}  // namespace

TEST_CASE("config parsing")
{
    const auto c = parse_experiment_config(base_config());
    CHECK(c.family == "linear_poly");
    CHECK(c.capacity_values == std::vector<std::size_t>{1, 2});
    CHECK(c.reservoir.N == 5);
    CHECK(c.train_seed == std::optional<std::uint64_t>(2));

    auto j = base_config();
    j["extra"] = 1;
    CHECK_THROWS_AS(parse_experiment_config(j), ConfigError);
    j = base_config();
    j["family"] = "transformer";
    CHECK_THROWS_AS(parse_experiment_config(j), ConfigError);
    j = base_config();
    j["seeds"].erase("train");
    CHECK_THROWS_AS(parse_experiment_config(j), ConfigError);
    j = base_config();
    j["seeds"]["train"] = 3;
    CHECK_THROWS_AS(parse_experiment_config(j), ConfigError);
    j = base_config();
    j["target"] = {{"name", "peak_hold"}};
    CHECK_THROWS_AS(parse_experiment_config(j), ConfigError);
    j = base_config();
    j["schema_version"] = 2;
    CHECK_THROWS_AS(parse_experiment_config(j), ConfigError);
    j = base_config();
    j["sampler"] = {{"kind", "garch11"}, {"n", 1}, {"omega", 0.1}, {"alpha", 0.5}, {"beta", 0.6}};
    CHECK_THROWS_AS(parse_experiment_config(j), ConfigError);
}

TEST_CASE("results rows render as CSV")
{
    ResultRow r;
    r.family = "esn";
    r.N = 10;
    r.target = "finite_poly(n=1,K=2,d=2)";
    r.value = 0.1;
    CHECK(results_csv_header().rfind("family,N,target,p,value,stderr", 0) == 0);
    const auto line = to_csv(r);
    CHECK(line.find("\"finite_poly(n=1,K=2,d=2)\"") != std::string::npos);
}

TEST_CASE("cli run is reproducible")
{
    const auto d = scratch("run");
    write(d / "cfg.json", base_config());
    REQUIRE(run_cli("run " + (d / "cfg.json").string() + " --out " + (d / "a").string()) == 0);
    REQUIRE(run_cli("run " + (d / "cfg.json").string() + " --out " + (d / "b").string()) == 0);
    const auto a = slurp(d / "a" / "results.csv");
    CHECK(a == slurp(d / "b" / "results.csv"));
    CHECK(std::count(a.begin(), a.end(), '\n') == 3);
    CHECK(fs::exists(d / "a" / "runs" / "run_0000.json"));
    const auto rec = Json::parse(slurp(d / "a" / "runs" / "run_0000.json"));
    CHECK(rec.is_object());

    REQUIRE(run_cli("run " + std::string(RCU_SOURCE_DIR) + "/configs/shift_register.json --out " + (d / "s").string()) == 0);
    CHECK(fs::exists(d / "s" / "results.csv"));
    fs::remove_all(d);
}

TEST_CASE("cli error exits")
{
    const auto d = scratch("errors");
    auto j = base_config();
    j["family"] = "transformer";
    write(d / "bad.json", j);
    CHECK(run_cli("run " + (d / "bad.json").string() + " --out " + (d / "out").string()) == 2);
    CHECK_FALSE(fs::exists(d / "out" / "results.csv"));

    j = base_config();
    j["reservoir"]["sigma_max"] = 1.5;
    write(d / "esp.json", j);
    CHECK(run_cli("run " + (d / "esp.json").string() + " --out " + (d / "esp").string()) == 3);

    CHECK(run_cli("sample --sampler '{\"kind\":\"garch11\",\"n\":1,\"omega\":0.1,\"alpha\":0.5,\"beta\":0.6}'"
                  " --length 5 --paths 2 --seed 1 --out " + (d / "g").string()) == 2);
    CHECK(run_cli("verify nonsense") == 2);
    CHECK(run_cli("frobnicate") == 2);
    fs::remove_all(d);
}

TEST_CASE("cli sample and verify")
{
    const auto d = scratch("sample");
    const std::string sampler = "'{\"kind\":\"arma\",\"n\":1,\"phi\":[0.5],\"theta\":[],\"sigma\":1}'";
    REQUIRE(run_cli("sample --sampler " + sampler + " --length 6 --paths 3 --seed 4 --out " + (d / "a").string()) == 0);
    REQUIRE(run_cli("sample --sampler " + sampler + " --length 6 --paths 3 --seed 4 --out " + (d / "b").string()) == 0);
    for (const char* f : {"path_0000.csv", "path_0001.csv", "path_0002.csv"}) {
        REQUIRE(fs::exists(d / "a" / f));
        CHECK(slurp(d / "a" / f) == slurp(d / "b" / f));
    }

    REQUIRE(run_cli("verify lemma2", d / "report.json") == 0);
    const auto report = Json::parse(slurp(d / "report.json"));
    CHECK(report.dump().find("lemma2") != std::string::npos);
    fs::remove_all(d);
}
