// rcu: run experiment configs, property suites and sampler exports.
//
// Exit codes: 0 success, 1 I/O or runtime failure (or a failed verify), 2 config error,
// 3 ESP certification failure, 4 numeric overflow.

#include "rcu/errors.hpp"
#include "rcu/experiment.hpp"
#include "rcu/processes.hpp"
#include "rcu/properties.hpp"
#include "rcu/window.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

enum Exit { ok = 0, failure = 1, config_error = 2, esp_error = 3, overflow = 4 };

int run_cmd(const std::string& config_path, const std::string& out_dir)
{
    // Everything is validated before the output directory is touched.
    const auto cfg = rcu::load_experiment_config(config_path);
    const auto rows = rcu::run_experiment(cfg, out_dir);
    std::cerr << "wrote " << rows.size() << " rows to " << (std::filesystem::path(out_dir) / "results.csv").string()
              << '\n';
    return ok;
}

int verify_cmd(const std::string& suite, const std::string& report_path)
{
    std::vector<std::string> names;
    if (suite == "all") {
        names = rcu::suite_names();
    } else {
        const auto& all = rcu::suite_names();
        if (std::find(all.begin(), all.end(), suite) == all.end())
            throw rcu::ConfigError("unknown suite '" + suite + "'; expected one of all, " + [&] {
                std::string s;
                for (const auto& n : all) s += (s.empty() ? "" : ", ") + n;
                return s;
            }());
        names = {suite};
    }
    rcu::Json report = {{"suites", rcu::Json::array()}};
    bool passed = true;
    for (const auto& n : names) {
        const auto r = rcu::run_suite(n);
        std::cerr << (r.passed() ? "PASS " : "FAIL ") << n << " (" << r.seconds << " s)\n";
        passed = passed && r.passed();
        report["suites"].push_back(rcu::to_json(r));
    }
    report["passed"] = passed;
    const std::string text = report.dump(2);
    if (report_path.empty()) {
        std::cout << text << '\n';
    } else {
        std::ofstream os(report_path);
        if (!os) throw std::runtime_error("cannot write " + report_path);
        os << text << '\n';
    }
    return passed ? ok : failure;
}

int sample_cmd(const std::string& sampler_arg, std::size_t T, std::size_t M, std::uint64_t seed,
               const std::string& out_dir)
{
    rcu::Json j;
    try {
        if (!sampler_arg.empty() && sampler_arg.front() == '{') {
            j = rcu::Json::parse(sampler_arg);
        } else {
            std::ifstream is(sampler_arg);
            if (!is) throw rcu::ConfigError("cannot open sampler file " + sampler_arg);
            is >> j;
        }
    } catch (const rcu::Json::exception& e) {
        throw rcu::ConfigError(std::string("sampler JSON: ") + e.what());
    }
    const auto sampler = rcu::sampler_from_json(j);
    if (T < 1) throw rcu::ConfigError("--length must be >= 1");
    const auto windows = rcu::sample_windows(sampler, T, M, seed);
    std::filesystem::create_directories(out_dir);
    for (std::size_t m = 0; m < windows.size(); ++m) {
        char name[32];
        std::snprintf(name, sizeof name, "path_%04zu.csv", m);
        rcu::write_window_csv(std::filesystem::path(out_dir) / name, windows[m]);
    }
    std::cerr << "wrote " << M << " paths of length " << T << " to " << out_dir << '\n';
    return ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Reservoir computing universality toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    auto* run = app.add_subcommand("run", "Run an experiment config and write results.csv plus per-run JSON");
    run->add_option("config", config_path, "Experiment config (JSON)")->required();
    run->add_option("--out", out_dir, "Output directory")->required();

    std::string suite = "all", report_path;
    auto* verify = app.add_subcommand("verify", "Run property suites and print a JSON report");
    verify->add_option("suite", suite, "Suite name or 'all'");
    verify->add_option("--report", report_path, "Write the report here instead of stdout");

    std::string sampler_arg, sample_out;
    std::size_t T = 0, M = 1;
    std::uint64_t seed = 0;
    auto* sample = app.add_subcommand("sample", "Export sampled paths as window CSV files");
    sample->add_option("--sampler", sampler_arg, "Sampler JSON, inline or a file path")->required();
    sample->add_option("--length", T, "Window length T")->required();
    sample->add_option("--paths", M, "Number of paths M")->required();
    sample->add_option("--seed", seed, "Seed")->required();
    sample->add_option("--out", sample_out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    try {
        if (*run) return run_cmd(config_path, out_dir);
        if (*verify) return verify_cmd(suite, report_path);
        if (*sample) return sample_cmd(sampler_arg, T, M, seed, sample_out);
    } catch (const rcu::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const rcu::EspError& e) {
        std::cerr << "ESP certification failed: " << e.what() << '\n';
        return esp_error;
    } catch (const rcu::NumericOverflow& e) {
        std::cerr << "numeric overflow: " << e.what() << '\n';
        return overflow;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return failure;
    }
    return failure;
}
