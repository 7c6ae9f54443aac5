#include "rcu/experiment.hpp"

#include "rcu/constructions.hpp"
#include "rcu/errors.hpp"
#include "rcu/metrics.hpp"
#include "rcu/rng.hpp"
#include "rcu/targets.hpp"
#include "rcu/training.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

namespace rcu {

namespace {

void expect_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where)
{
    if (!j.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
}

const Json& require(const Json& j, const std::string& key, const std::string& where)
{
    if (!j.contains(key)) throw ConfigError("missing key '" + key + "' in " + where);
    return j.at(key);
}

double get_number(const Json& j, const std::string& key, const std::string& where)
{
    const auto& v = require(j, key, where);
    if (!v.is_number()) throw ConfigError("'" + key + "' in " + where + " must be a number");
    return v.get<double>();
}

double get_number(const Json& j, const std::string& key, const std::string& where, double fallback)
{
    return j.contains(key) ? get_number(j, key, where) : fallback;
}

std::uint64_t get_unsigned(const Json& v, const std::string& what)
{
    if (!v.is_number_unsigned()) throw ConfigError(what + " must be a nonnegative integer");
    return v.get<std::uint64_t>();
}

std::size_t get_count(const Json& j, const std::string& key, const std::string& where)
{
    return static_cast<std::size_t>(get_unsigned(require(j, key, where), "'" + key + "' in " + where));
}

std::size_t get_count(const Json& j, const std::string& key, const std::string& where, std::size_t fallback)
{
    return j.contains(key) ? get_count(j, key, where) : fallback;
}

std::vector<double> get_numbers(const Json& j, const std::string& key, const std::string& where)
{
    std::vector<double> out;
    if (!j.contains(key)) return out;
    if (!j.at(key).is_array()) throw ConfigError("'" + key + "' in " + where + " must be an array");
    for (const auto& v : j.at(key)) {
        if (!v.is_number()) throw ConfigError("'" + key + "' in " + where + " must hold numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

bool is_constructed(const std::string& family) { return family.rfind("constructed_", 0) == 0; }

template <class F>
auto rethrow_as_config(F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

std::string fmt17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

const std::vector<std::string>& experiment_families()
{
    static const std::vector<std::string> f{"linear_poly",       "linear_nn",
                                            "trig_sas",          "esn",
                                            "constructed_shift", "constructed_nilpotent_sas",
                                            "constructed_block_esn"};
    return f;
}

ProcessSampler sampler_from_json(const Json& j)
{
    const std::string where = "sampler";
    if (!j.is_object()) throw ConfigError("sampler must be an object");
    const auto kind = require(j, "kind", where).get<std::string>();
    const std::size_t n = get_count(j, "n", where, 1);
    return rethrow_as_config([&] {
        if (kind == "iid_gaussian") {
            expect_keys(j, {"kind", "n", "mean", "sd"}, where);
            return ProcessSampler::iid_gaussian(n, get_number(j, "mean", where, 0.0), get_number(j, "sd", where, 1.0));
        }
        if (kind == "iid_uniform_bounded") {
            expect_keys(j, {"kind", "n", "a_min", "a_max"}, where);
            return ProcessSampler::iid_uniform_bounded(n, get_number(j, "a_min", where), get_number(j, "a_max", where));
        }
        if (kind == "iid_lognormal") {
            expect_keys(j, {"kind", "n", "mu", "sigma"}, where);
            return ProcessSampler::iid_lognormal(n, get_number(j, "mu", where, 0.0), get_number(j, "sigma", where, 1.0));
        }
        if (kind == "arma") {
            expect_keys(j, {"kind", "n", "phi", "theta", "sigma", "mean"}, where);
            ArmaParams p;
            p.phi = get_numbers(j, "phi", where);
            p.theta = get_numbers(j, "theta", where);
            p.sigma = get_number(j, "sigma", where, 1.0);
            p.mean = get_number(j, "mean", where, 0.0);
            return ProcessSampler::arma(n, std::move(p));
        }
        if (kind == "garch11") {
            expect_keys(j, {"kind", "n", "omega", "alpha", "beta"}, where);
            return ProcessSampler::garch11(n, get_number(j, "omega", where), get_number(j, "alpha", where),
                                           get_number(j, "beta", where));
        }
        throw ConfigError("unknown sampler kind '" + kind + "'");
    });
}

FunctionalSpec target_from_json(const Json& j, std::size_t n)
{
    const std::string where = "target";
    if (!j.is_object()) throw ConfigError("target must be an object");
    const auto name = require(j, "name", where).get<std::string>();
    return rethrow_as_config([&] {
        if (name == "constant") {
            expect_keys(j, {"name", "value"}, where);
            return FunctionalSpec::constant(get_number(j, "value", where));
        }
        if (name == "finite_poly") {
            expect_keys(j, {"name", "K", "degree", "seed", "coefficients"}, where);
            const std::size_t K = get_count(j, "K", where), d = get_count(j, "degree", where);
            if (j.contains("coefficients")) {
                if (j.contains("seed")) throw ConfigError("finite_poly takes either 'seed' or 'coefficients'");
                const auto c = get_numbers(j, "coefficients", where);
                return FunctionalSpec::finite_poly(
                    n, K, PolynomialReadout(n * (K + 1), d, Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size()))));
            }
            return random_finite_poly(n, K, d, get_unsigned(require(j, "seed", where), "'seed' in target"));
        }
        if (name == "geometric_ma") {
            expect_keys(j, {"name", "lambda"}, where);
            return FunctionalSpec::geometric_ma(get_number(j, "lambda", where));
        }
        if (name == "peak_hold") {
            expect_keys(j, {"name"}, where);
            return FunctionalSpec::peak_hold();
        }
        if (name == "trig_product") {
            expect_keys(j, {"name", "freqs", "sine", "K", "scale", "seed"}, where);
            if (j.contains("freqs")) {
                const Eigen::MatrixXd freqs = matrix_from_json(j.at("freqs"));
                const auto& s = require(j, "sine", where);
                if (!s.is_array()) throw ConfigError("'sine' in target must be an array of booleans");
                std::vector<bool> sine;
                for (const auto& b : s) sine.push_back(b.get<bool>());
                return FunctionalSpec::trig_product(freqs, sine);
            }
            return random_trig_product(n, get_count(j, "K", where), get_number(j, "scale", where, 1.0),
                                       get_unsigned(require(j, "seed", where), "'seed' in target"));
        }
        if (name == "garch_vol") {
            expect_keys(j, {"name", "omega", "alpha", "beta"}, where);
            return FunctionalSpec::garch_vol(get_number(j, "omega", where), get_number(j, "alpha", where),
                                             get_number(j, "beta", where));
        }
        throw ConfigError("unknown target '" + name + "'");
    });
}

ExperimentConfig parse_experiment_config(const Json& j)
{
    const std::string where = "config";
    expect_keys(j,
                {"schema_version", "family", "sampler", "target", "capacity", "reservoir", "p", "T", "washout",
                 "M_train", "M_eval", "ridge", "seeds"},
                where);
    const auto& version = require(j, "schema_version", where);
    if (!version.is_number_integer() || version.get<int>() != kSchemaVersion)
        throw ConfigError("unsupported schema_version " + version.dump() + " (expected " +
                          std::to_string(kSchemaVersion) + ")");

    ExperimentConfig c;
    c.family = require(j, "family", where).get<std::string>();
    const auto& fams = experiment_families();
    if (std::find(fams.begin(), fams.end(), c.family) == fams.end())
        throw ConfigError("unknown family '" + c.family + "'");
    const bool constructed = is_constructed(c.family);
    const bool trained = !constructed || c.family == "constructed_block_esn";

    c.sampler = sampler_from_json(require(j, "sampler", where));
    c.target_json = require(j, "target", where);
    c.target = target_from_json(c.target_json, c.sampler->channels());

    c.p = get_number(j, "p", where, 2.0);
    if (!(c.p >= 1.0) || !std::isfinite(c.p)) throw ConfigError("p must be a finite number >= 1");
    c.T = get_count(j, "T", where);
    if (c.T < 1) throw ConfigError("T must be >= 1");
    c.washout = get_count(j, "washout", where, c.T - 1);
    if (c.washout >= c.T) throw ConfigError("washout must be smaller than T");
    c.M_eval = get_count(j, "M_eval", where);
    if (c.M_eval < 2) throw ConfigError("M_eval must be >= 2");
    c.ridge = get_number(j, "ridge", where, 1e-8);
    if (!(c.ridge >= 0.0)) throw ConfigError("ridge must be >= 0");

    // Seeds are always explicit.
    const auto& seeds = require(j, "seeds", where);
    expect_keys(seeds, {"reservoir", "train", "eval"}, "seeds");
    c.eval_seed = get_unsigned(require(seeds, "eval", "seeds"), "seeds.eval");
    const bool random_reservoir = !constructed || c.family == "constructed_block_esn";
    if (random_reservoir) {
        const auto& rs = require(seeds, "reservoir", "seeds");
        if (!rs.is_array() || rs.empty()) throw ConfigError("seeds.reservoir must be a nonempty array");
        for (const auto& s : rs) c.reservoir_seeds.push_back(get_unsigned(s, "seeds.reservoir entries"));
    } else if (seeds.contains("reservoir")) {
        throw ConfigError("seeds.reservoir is not used by " + c.family);
    }
    if (trained) {
        c.train_seed = get_unsigned(require(seeds, "train", "seeds"), "seeds.train");
        if (*c.train_seed == c.eval_seed) throw ConfigError("seeds.train and seeds.eval must differ");
        c.M_train = get_count(j, "M_train", where);
        if (c.M_train < 2) throw ConfigError("M_train must be >= 2");
    } else {
        if (seeds.contains("train")) throw ConfigError("seeds.train is not used by " + c.family);
        if (j.contains("M_train")) throw ConfigError("M_train is not used by " + c.family);
    }

    if (j.contains("reservoir")) {
        const auto& r = j.at("reservoir");
        const std::string rw = "reservoir";
        expect_keys(r,
                    {"N", "degree", "hidden", "sigma_max", "input_scale", "bias_scale", "activation", "terms",
                     "contraction", "frequency_scale", "feature_scale", "K", "identity_hidden", "identity_m",
                     "moment_alpha"},
                    rw);
        auto& p = c.reservoir;
        p.N = get_count(r, "N", rw, p.N);
        p.degree = get_count(r, "degree", rw, p.degree);
        p.hidden = get_count(r, "hidden", rw, p.hidden);
        p.sigma_max = get_number(r, "sigma_max", rw, p.sigma_max);
        p.input_scale = get_number(r, "input_scale", rw, p.input_scale);
        p.bias_scale = get_number(r, "bias_scale", rw, p.bias_scale);
        if (r.contains("activation"))
            p.activation = rethrow_as_config([&] { return activation_from_string(r.at("activation").get<std::string>()); });
        p.terms = get_count(r, "terms", rw, p.terms);
        p.contraction = get_number(r, "contraction", rw, p.contraction);
        p.frequency_scale = get_number(r, "frequency_scale", rw, p.frequency_scale);
        p.feature_scale = get_number(r, "feature_scale", rw, p.feature_scale);
        if (r.contains("K")) p.K = get_count(r, "K", rw);
        p.identity_hidden = get_count(r, "identity_hidden", rw, p.identity_hidden);
        p.identity_m = get_number(r, "identity_m", rw, p.identity_m);
        if (r.contains("moment_alpha")) p.moment_alpha = get_number(r, "moment_alpha", rw);
    }

    // Capacity grid: which parameter each family may sweep.
    std::set<std::string> params;
    if (c.family == "linear_poly") params = {"N", "degree"};
    else if (c.family == "linear_nn") params = {"N", "hidden"};
    else if (c.family == "trig_sas" || c.family == "esn") params = {"N"};
    else if (c.family == "constructed_block_esn") params = {"hidden"};
    if (j.contains("capacity")) {
        const auto& cap = j.at("capacity");
        expect_keys(cap, {"param", "values"}, "capacity");
        c.capacity_param = require(cap, "param", "capacity").get<std::string>();
        if (!params.count(c.capacity_param))
            throw ConfigError("capacity param '" + c.capacity_param + "' is not valid for " + c.family);
        const auto& vals = require(cap, "values", "capacity");
        if (!vals.is_array() || vals.empty()) throw ConfigError("capacity.values must be a nonempty array");
        for (const auto& v : vals) {
            const auto x = static_cast<std::size_t>(get_unsigned(v, "capacity values"));
            if (x < 1 && c.capacity_param != "degree") throw ConfigError("capacity values must be >= 1");
            c.capacity_values.push_back(x);
        }
    } else if (!params.empty()) {
        c.capacity_param = params.count("N") ? "N" : *params.begin();
    }

    // Family/target compatibility.
    const auto kind = c.target->kind();
    if (c.family == "constructed_shift" && kind != FunctionalKind::finite_poly)
        throw ConfigError("constructed_shift realizes finite_poly targets only");
    if (c.family == "constructed_nilpotent_sas" && kind != FunctionalKind::trig_product)
        throw ConfigError("constructed_nilpotent_sas realizes trig_product targets only");
    if (c.family == "constructed_block_esn" && !c.reservoir.K && !c.target->memory())
        throw ConfigError("constructed_block_esn needs reservoir.K for an infinite-memory target");
    if (trained && c.family != "constructed_block_esn") {
        if (const auto K = c.target->memory(); K && *K > c.washout)
            throw ConfigError("target memory " + std::to_string(*K) + " exceeds the washout " + std::to_string(c.washout));
    }
    if (const auto K = c.target->memory(); K && *K + 1 > c.T)
        throw ConfigError("T must be at least the target memory + 1");
    rethrow_as_config([&] {
        require_admissible(*c.target, *c.sampler);
        return 0;
    });
    return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path)
{
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config " + path.string());
    Json j;
    try {
        is >> j;
    } catch (const Json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    try {
        return parse_experiment_config(j);
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("ill-typed config value: ") + e.what());
    }
}

std::string results_csv_header()
{
    return "family,N,target,p,value,stderr,M,seed,train_seed,reservoir_seed,capacity_param,capacity,target_norm,"
           "esp_method,esp_bound";
}

std::string to_csv(const ResultRow& r)
{
    const auto opt = [](const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : std::string(); };
    std::string target = r.target;
    if (target.find_first_of(",\"") != std::string::npos) {
        std::string q = "\"";
        for (char ch : target) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        target = q + "\"";
    }
    return r.family + "," + std::to_string(r.N) + "," + target + "," + fmt17(r.p) + "," + fmt17(r.value) + "," +
           fmt17(r.stderr_value) + "," + std::to_string(r.M) + "," + std::to_string(r.seed) + "," + opt(r.train_seed) +
           "," + opt(r.reservoir_seed) + "," + r.capacity_param + "," + std::to_string(r.capacity) + "," +
           fmt17(r.target_norm) + "," + r.esp_method + "," + fmt17(r.esp_bound);
}

namespace {

struct BuiltModel {
    ReservoirModel model;
    std::optional<TrainDiagnostics> diagnostics;
    Json extra = Json::object();
};

TrainConfig train_config(const ExperimentConfig& c)
{
    TrainConfig t;
    t.ridge = c.ridge;
    t.paths = c.M_train;
    t.window_length = c.T;
    t.washout = c.washout;
    t.seed = *c.train_seed;
    return t;
}

BuiltModel build_point(const ExperimentConfig& c, ReservoirParams p, std::uint64_t rseed)
{
    const auto& sampler = *c.sampler;
    const auto& target = *c.target;
    const std::size_t n = sampler.channels();
    if (c.family == "constructed_shift") {
        const auto& def = std::get<FinitePolyFunctional>(target.definition());
        return {ReservoirModel{build_shift_register(n, def.lags), Readout{def.poly}}, std::nullopt};
    }
    if (c.family == "constructed_nilpotent_sas") {
        const auto& def = std::get<TrigProductFunctional>(target.definition());
        return {ReservoirModel{build_nilpotent_trig_sas(def.freqs, def.sine), std::nullopt}, std::nullopt};
    }
    if (c.family == "linear_poly") {
        const auto sys = random_linear_reservoir(p.N, n, p.sigma_max, p.input_scale, rseed);
        std::optional<MomentDiagnostic> md;
        Json extra = Json::object();
        if (p.moment_alpha) {
            md = exp_moment_check(sampler, *p.moment_alpha, 2, default_moment_sizes(), derive_seed(*c.train_seed, 0x30));
            extra["moment_check"] = to_json(*md);
        }
        auto fit = fit_polynomial_readout(sys, p.degree, target, sampler, train_config(c), md ? &*md : nullptr);
        return {ReservoirModel{sys, Readout{std::move(fit.readout)}}, std::move(fit.diagnostics), extra};
    }
    if (c.family == "linear_nn") {
        const auto sys = random_linear_reservoir(p.N, n, p.sigma_max, p.input_scale, rseed);
        NetworkFeatureOptions o;
        o.activation = p.activation;
        o.weight_scale = p.feature_scale;
        auto fit = fit_network_readout(sys, p.hidden, target, sampler, train_config(c), o);
        return {ReservoirModel{sys, Readout{std::move(fit.readout)}}, std::move(fit.diagnostics)};
    }
    if (c.family == "trig_sas" || c.family == "esn") {
        ReservoirSystem sys;
        if (c.family == "esn") {
            RandomEsnOptions o;
            o.sigma_max = p.sigma_max;
            o.input_scale = p.input_scale;
            o.bias_scale = p.bias_scale;
            o.activation = p.activation;
            sys = random_esn(p.N, n, o, rseed);
        } else {
            RandomTrigSasOptions o;
            o.terms = p.terms;
            o.contraction = p.contraction;
            o.frequency_scale = p.frequency_scale;
            sys = random_trig_sas(p.N, n, o, rseed);
        }
        auto fit = fit_linear_readout(sys, target, sampler, train_config(c));
        return {ReservoirModel{with_readout(std::move(sys), fit.readout.W), std::nullopt}, std::move(fit.diagnostics)};
    }
    // constructed_block_esn: fit a shallow network on the stacked history z_0..z_{-K} (the state of a
    // shift register), then realize it as a block ESN with an identity network fitted on [-m, m]^n.
    const std::size_t K = p.K ? *p.K : *target.memory();
    TrainConfig tc = train_config(c);
    tc.washout = std::max(tc.washout, K);
    if (tc.window_length <= tc.washout) tc.window_length = tc.washout + 1;
    NetworkFeatureOptions o;
    o.activation = p.activation;
    o.weight_scale = p.feature_scale;
    auto fit = fit_network_readout(build_shift_register(n, K), p.hidden, target, sampler, tc, o);
    const ShallowNetwork inner = shallow_from_readout(fit.readout, n, K);
    IdentityFitOptions io;
    io.hidden_per_channel = p.identity_hidden;
    io.m = p.identity_m;
    const IdentityNetwork J = fit_identity_network(n, p.activation, io, rseed);
    Json extra = {{"identity_epsilon", J.epsilon}, {"identity_m", J.m}, {"K", K}};
    return {ReservoirModel{build_block_esn(inner, J), std::nullopt}, std::move(fit.diagnostics), extra};
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& c, const std::filesystem::path& out_dir)
{
    std::filesystem::create_directories(out_dir / "runs");
    const auto csv_path = out_dir / "results.csv";
    std::ofstream csv(csv_path, std::ios::trunc);
    if (!csv) throw Error("cannot write " + csv_path.string());
    csv << results_csv_header() << '\n';
    csv.flush();

    const auto& sampler = *c.sampler;
    const auto& target = *c.target;
    const auto target_norm = lp_norm(target, sampler, c.p, c.T, c.M_eval, c.eval_seed);
    if (!std::isfinite(target_norm.value)) throw NumericOverflow("target L^p norm estimate is not finite");

    std::vector<std::size_t> grid = c.capacity_values;
    if (grid.empty()) grid.push_back(0);
    std::vector<std::optional<std::uint64_t>> rseeds;
    for (auto s : c.reservoir_seeds) rseeds.emplace_back(s);
    if (rseeds.empty()) rseeds.emplace_back(std::nullopt);

    std::vector<ResultRow> rows;
    std::size_t index = 0;
    for (std::size_t cap : grid) {
        ReservoirParams p = c.reservoir;
        if (!c.capacity_values.empty()) {
            if (c.capacity_param == "N") p.N = cap;
            else if (c.capacity_param == "degree") p.degree = cap;
            else if (c.capacity_param == "hidden") p.hidden = cap;
        }
        for (const auto& rseed : rseeds) {
            auto built = build_point(c, p, rseed.value_or(0));
            const auto esp = certify_esp(built.model.system);
            if (!esp.certified)
                throw EspError(family_name(built.model.system) + " reservoir failed ESP certification: " +
                               to_json(esp).dump());
            const auto est = approx_error(target, built.model, sampler, c.p, c.T, c.M_eval, c.eval_seed, c.train_seed);
            if (!std::isfinite(est.value) || !std::isfinite(est.std_error))
                throw NumericOverflow("approximation error estimate is not finite");

            ResultRow r;
            r.family = c.family;
            r.N = state_dimension(built.model.system);
            r.target = target.name();
            r.p = c.p;
            r.value = est.value;
            r.stderr_value = est.std_error;
            r.M = est.M;
            r.seed = c.eval_seed;
            r.train_seed = c.train_seed;
            r.reservoir_seed = rseed;
            r.capacity_param = c.capacity_param;
            r.capacity = c.capacity_values.empty() ? 0 : cap;
            if (c.capacity_values.empty()) {
                if (c.capacity_param == "N") r.capacity = p.N;
                else if (c.capacity_param == "degree") r.capacity = p.degree;
                else if (c.capacity_param == "hidden") r.capacity = p.hidden;
            }
            r.target_norm = target_norm.value;
            r.esp_method = to_string(esp.method);
            r.esp_bound = esp.bound;
            csv << to_csv(r) << '\n';
            csv.flush();

            Json art = {{"row",
                         {{"family", r.family},
                          {"N", r.N},
                          {"target", r.target},
                          {"capacity_param", r.capacity_param},
                          {"capacity", r.capacity},
                          {"reservoir_seed", rseed ? Json(*rseed) : Json(nullptr)},
                          {"train_seed", c.train_seed ? Json(*c.train_seed) : Json(nullptr)},
                          {"eval_seed", c.eval_seed}}},
                        {"sampler", sampler.describe()},
                        {"target", c.target_json},
                        {"estimate", to_json(est)},
                        {"target_norm", to_json(target_norm)},
                        {"esp", to_json(esp)},
                        {"training", built.diagnostics ? to_json(*built.diagnostics) : Json(nullptr)},
                        {"extra", built.extra},
                        {"model", to_json(built.model)}};
            char name[32];
            std::snprintf(name, sizeof name, "run_%04zu.json", index++);
            std::ofstream js(out_dir / "runs" / name);
            if (!js) throw Error("cannot write " + (out_dir / "runs" / name).string());
            js << art.dump(2) << '\n';
            rows.push_back(std::move(r));
        }
    }
    if (!csv) throw Error("failed writing " + csv_path.string());
    return rows;
}

}  // namespace rcu
