#include "rcu/properties.hpp"

#include "rcu/conditional.hpp"
#include "rcu/constructions.hpp"
#include "rcu/errors.hpp"
#include "rcu/metrics.hpp"
#include "rcu/nilpotent.hpp"
#include "rcu/rng.hpp"
#include "rcu/targets.hpp"
#include "rcu/training.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace rcu {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

PropertyResult check(std::string name, double measured, std::string relation, double threshold, double seconds,
                     std::string detail = {})
{
    bool ok = false;
    if (relation == "<") ok = measured < threshold;
    else if (relation == "<=") ok = measured <= threshold;
    else if (relation == ">") ok = measured > threshold;
    else if (relation == ">=") ok = measured >= threshold;
    else if (relation == "==") ok = measured == threshold;
    return {std::move(name), ok, measured, std::move(relation), threshold, seconds, std::move(detail)};
}

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

/// prod_k sin/cos(u_k . z_{-k}) computed directly from the window rows.
double trig_product_oracle(const Eigen::MatrixXd& freqs, const std::vector<bool>& sine, const Window& w)
{
    double prod = 1.0;
    for (Eigen::Index k = 0; k < freqs.rows(); ++k) {
        double a = 0.0;
        for (Eigen::Index i = 0; i < freqs.cols(); ++i)
            a += freqs(k, i) * w.at(static_cast<std::size_t>(k), static_cast<std::size_t>(i));
        prod *= sine[static_cast<std::size_t>(k)] ? std::sin(a) : std::cos(a);
    }
    return prod;
}

struct RandomTrig {
    Eigen::MatrixXd freqs;
    std::vector<bool> sine;
};

RandomTrig random_trig(RandomStream& rng, std::size_t n, std::size_t K)
{
    RandomTrig t{Eigen::MatrixXd(static_cast<Eigen::Index>(K + 1), static_cast<Eigen::Index>(n)),
                 std::vector<bool>(K + 1)};
    for (Eigen::Index k = 0; k < t.freqs.rows(); ++k)
        for (Eigen::Index i = 0; i < t.freqs.cols(); ++i) t.freqs(k, i) = 1.5 * rng.normal();
    for (std::size_t k = 0; k <= K; ++k) t.sine[k] = rng.uniform() < 0.5;
    return t;
}

double output(const ReservoirSystem& s, const Window& w) { return reservoir_functional(ReservoirModel{s, {}}, w); }

// ---------------------------------------------------------------------------------------------

SuiteReport lemma2_suite()
{
    const auto t0 = Clock::now();
    std::size_t sequences = 0, product_mismatch = 0, predicate_mismatch = 0, support_mismatch = 0;
    for (std::size_t N = 2; N <= 5; ++N) {
        std::vector<Eigen::MatrixXd> shifts(N);
        for (std::size_t j = 1; j < N; ++j) {
            shifts[j] = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
            shifts[j](static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j - 1)) = 1.0;
        }
        for (std::size_t L = 1; L <= 6; ++L) {
            std::vector<std::size_t> idx(L, 1);
            while (true) {
                ++sequences;
                // Dense oracle A_{j_L} ... A_{j_0}.
                Eigen::MatrixXd dense = shifts[idx[0]];
                for (std::size_t i = 1; i < L; ++i) dense = shifts[idx[i]] * dense;
                if (nilpotent_product(idx, N) != dense) ++product_mismatch;
                const bool nonzero = dense.cwiseAbs().maxCoeff() > 0.0;
                bool run = true;
                for (std::size_t i = 1; i < L; ++i) run = run && idx[i] == idx[0] + i;
                if (nonzero != run || is_consecutive_run(idx) != run) ++predicate_mismatch;
                const auto sup = nilpotent_product_support(idx, N);
                if (nonzero) {
                    Eigen::Index r = 0, c = 0;
                    dense.cwiseAbs().maxCoeff(&r, &c);
                    const bool single = dense.sum() == 1.0 && dense(r, c) == 1.0;
                    if (!sup || !single || sup->first != static_cast<std::size_t>(r) + 1 ||
                        sup->second != static_cast<std::size_t>(c) + 1 || sup->first != idx.back() + 1 ||
                        sup->second != idx.front())
                        ++support_mismatch;
                } else if (sup) {
                    ++support_mismatch;
                }
                std::size_t pos = 0;
                while (pos < L && idx[pos] == N - 1) idx[pos++] = 1;
                if (pos == L) break;
                ++idx[pos];
            }
        }
    }
    const double dt = since(t0);
    const std::string d = std::to_string(sequences) + " sequences, N <= 5, length <= 6";
    return {"lemma2",
            {check("product equals dense oracle (mismatches)", static_cast<double>(product_mismatch), "==", 0, dt, d),
             check("nonzero iff consecutive run (mismatches)", static_cast<double>(predicate_mismatch), "==", 0, dt, d),
             check("single 1 at (j_L+1, j_0) (mismatches)", static_cast<double>(support_mismatch), "==", 0, dt, d)},
            dt};
}

SuiteReport lemma1_suite()
{
    const auto t0 = Clock::now();
    const double lambda = 0.5;
    const auto spec = FunctionalSpec::geometric_ma(lambda);
    const auto sampler = ProcessSampler::iid_gaussian(1);
    SuiteReport rep{"lemma1", {}, 0};
    std::vector<LpEstimate> est;
    for (std::size_t K : {1, 3, 5, 7}) {
        const auto t1 = Clock::now();
        const auto e = truncated_conditional_error(spec, K, sampler, 2.0, 20000, 1000 + K);
        const double closed = std::pow(lambda, static_cast<double>(K + 1)) / std::sqrt(1.0 - lambda * lambda);
        rep.results.push_back(check("K=" + std::to_string(K) + " |estimate - closed form| / stderr",
                                    std::abs(e.value - closed) / e.std_error, "<=", 3.0, since(t1),
                                    "estimate " + fmt(e.value) + ", closed form " + fmt(closed) + ", stderr " +
                                        fmt(e.std_error)));
        est.push_back(e);
    }
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < est.size(); ++i)
        worst = std::max(worst, (est[i].value - est[i - 1].value) / combined_stderr(est[i], est[i - 1]));
    rep.results.push_back(check("monotone in K: max increase / combined stderr", worst, "<=", 3.0, 0.0));
    rep.seconds = since(t0);
    return rep;
}

SuiteReport shift_register_suite()
{
    const auto t0 = Clock::now();
    double worst = 0.0;
    std::string where;
    for (std::uint64_t i = 0; i < 20; ++i) {
        RandomStream rng(0x5151, i);
        const std::size_t n = 1 + rng.below(2), K = rng.below(4), d = 1 + rng.below(3);
        const auto target = random_finite_poly(n, K, d, derive_seed(0x5152, i));
        const auto& q = std::get<FinitePolyFunctional>(target.definition()).poly;
        const ReservoirModel model{build_shift_register(n, K), Readout{q}};
        const auto e = approx_error(target, model, ProcessSampler::iid_gaussian(n), 2.0, K + 4, 1000,
                                    derive_seed(0x5153, i));
        if (e.value >= worst) {
            worst = e.value;
            where = "n=" + std::to_string(n) + " K=" + std::to_string(K) + " d=" + std::to_string(d);
        }
    }
    const double dt = since(t0);
    return {"shift_register", {check("max approx_error over 20 targets (p=2, M=1000)", worst, "<", 1e-8, dt, where)}, dt};
}

SuiteReport nilpotent_sas_suite()
{
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 20; ++i) {
        RandomStream rng(0x7A5, i);
        const std::size_t n = 1 + rng.below(2), K = rng.below(5);
        const auto t = random_trig(rng, n, K);
        const TrigSAS sas = build_nilpotent_trig_sas(t.freqs, t.sine);
        const auto windows = sample_windows(ProcessSampler::iid_gaussian(n), K + 3, 100, derive_seed(0x7A6, i));
        for (const auto& w : windows)
            worst = std::max(worst, std::abs(output(sas, w) - trig_product_oracle(t.freqs, t.sine, w)));
    }
    const double dt = since(t0);
    return {"nilpotent_sas", {check("max |H_SAS - trig product| over 20 systems x 100 windows", worst, "<", 1e-10, dt)}, dt};
}

SuiteReport direct_sum_suite()
{
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 20; ++i) {
        RandomStream rng(0xD5, i);
        const std::size_t n = 1 + rng.below(2), K1 = rng.below(5), K2 = rng.below(5);
        const auto t1 = random_trig(rng, n, K1);
        const auto t2 = random_trig(rng, n, K2);
        const TrigSAS s1 = build_nilpotent_trig_sas(t1.freqs, t1.sine);
        const TrigSAS s2 = build_nilpotent_trig_sas(t2.freqs, t2.sine);
        const auto windows =
            sample_windows(ProcessSampler::iid_gaussian(n), std::max(K1, K2) + 3, 50, derive_seed(0xD6, i));
        for (double lambda : {-1.0, 0.0, 2.5}) {
            const TrigSAS sum = direct_sum_sas(s1, s2, lambda);
            for (const auto& w : windows) {
                const double oracle = trig_product_oracle(t1.freqs, t1.sine, w) + lambda * trig_product_oracle(t2.freqs, t2.sine, w);
                worst = std::max(worst, std::abs(output(sum, w) - oracle));
                worst = std::max(worst, std::abs(output(sum, w) - (output(s1, w) + lambda * output(s2, w))));
            }
        }
    }
    const double dt = since(t0);
    return {"direct_sum",
            {check("max |H_sum - (H_1 + lambda H_2)| over 20 pairs x 3 lambdas x 50 windows", worst, "<", 1e-10, dt)},
            dt};
}

ShallowNetwork random_shallow(RandomStream& rng, std::size_t n, std::size_t K, std::size_t hidden, Activation act)
{
    ShallowNetwork s;
    s.activation = act;
    const auto h = static_cast<Eigen::Index>(hidden), ni = static_cast<Eigen::Index>(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n * (K + 1)));
    s.W.resize(h);
    s.zeta.resize(h);
    for (Eigen::Index r = 0; r < h; ++r) {
        s.W(r) = rng.normal();
        s.zeta(r) = 0.5 * rng.normal();
    }
    for (std::size_t k = 0; k <= K; ++k) {
        Eigen::MatrixXd b(h, ni);
        for (Eigen::Index r = 0; r < h; ++r)
            for (Eigen::Index c = 0; c < ni; ++c) b(r, c) = scale * rng.normal();
        s.blocks.push_back(std::move(b));
    }
    return s;
}

struct BlockFixture {
    ShallowNetwork inner;
    IdentityNetwork J;
    EchoStateNetwork esn;
};

BlockFixture block_fixture(std::size_t n, std::size_t K, Activation act, std::uint64_t seed)
{
    RandomStream rng(seed, 0);
    auto inner = random_shallow(rng, n, K, 6, act);
    IdentityFitOptions o;
    o.hidden_per_channel = 16;
    auto J = fit_identity_network(n, act, o, derive_seed(seed, 1));
    auto esn = build_block_esn(inner, J);
    return {std::move(inner), std::move(J), std::move(esn)};
}

SuiteReport block_esn_suite()
{
    const auto t0 = Clock::now();
    SuiteReport rep{"block_esn", {}, 0};
    for (Activation act : {Activation::logistic, Activation::tanh}) {
        const auto t1 = Clock::now();
        double worst = 0.0;
        for (std::size_t K = 0; K <= 3; ++K) {
            const std::size_t n = 1 + K % 2;
            const auto f = block_fixture(n, K, act, derive_seed(0xB10C, K * 2 + (act == Activation::tanh)));
            const auto windows =
                sample_windows(ProcessSampler::iid_uniform_bounded(n, -1.0, 1.0), K + 4, 100, derive_seed(0xB10D, K));
            for (const auto& w : windows) {
                const double direct = block_esn_closed_form(f.inner, f.J, w);
                const double rel = std::abs(output(f.esn, w) - direct) / std::max(std::abs(direct), 1e-300);
                worst = std::max(worst, rel);
            }
        }
        rep.results.push_back(check(std::string(to_string(act)) + ": max relative |ESN - closed form|, K <= 3, 100 windows",
                                    worst, "<", 1e-8, since(t1)));
    }
    rep.seconds = since(t0);
    return rep;
}

struct EspFixture {
    std::string name;
    ReservoirSystem system;
    std::size_t channels;
};

std::vector<EspFixture> esp_fixtures()
{
    std::vector<EspFixture> f;
    f.push_back({"linear N=20", random_linear_reservoir(20, 1, 0.9, 1.0, 11), 1});
    f.push_back({"linear N=12 n=2", random_linear_reservoir(12, 2, 0.7, 1.0, 12), 2});
    RandomEsnOptions tanh_opts;
    f.push_back({"esn tanh N=30", random_esn(30, 1, tanh_opts, 13), 1});
    RandomEsnOptions logi;
    logi.activation = Activation::logistic;
    logi.sigma_max = 2.0;
    logi.input_scale = 1.0;
    f.push_back({"esn logistic N=30", random_esn(30, 1, logi, 14), 1});
    RandomEsnOptions hard;
    hard.activation = Activation::hard_sigmoid;
    hard.sigma_max = 3.0;
    hard.input_scale = 1.0;
    f.push_back({"esn hard_sigmoid N=30", random_esn(30, 1, hard, 15), 1});
    const RandomTrigSasOptions tso;
    const TrigSAS r1 = random_trig_sas(8, 1, tso, 16), r2 = random_trig_sas(5, 1, tso, 17);
    f.push_back({"trig_sas N=8", r1, 1});
    f.push_back({"direct sum of contracting trig_sas", direct_sum_sas(r1, r2, 0.5), 1});
    f.push_back({"shift register n=2 K=3", build_shift_register(2, 3), 2});
    RandomStream rng(0xE5, 0);
    const auto a = random_trig(rng, 1, 4), b = random_trig(rng, 1, 2);
    const TrigSAS na = build_nilpotent_trig_sas(a.freqs, a.sine), nb = build_nilpotent_trig_sas(b.freqs, b.sine);
    f.push_back({"nilpotent trig_sas K=4", na, 1});
    f.push_back({"direct sum of nilpotent trig_sas", direct_sum_sas(na, nb, 2.5), 1});
    return f;
}

SuiteReport esp_suite()
{
    const auto t0 = Clock::now();
    SuiteReport rep{"esp", {}, 0};
    const std::size_t T = 30;
    for (const auto& fx : esp_fixtures()) {
        const auto t1 = Clock::now();
        const auto cert = certify_esp(fx.system);
        if (!cert.certified) {
            rep.results.push_back(check(fx.name + ": certified", 0.0, "==", 1.0, since(t1), to_string(cert.method)));
            continue;
        }
        const auto windows = sample_windows(ProcessSampler::iid_gaussian(fx.channels), T, 50, derive_seed(0xE50, 0));
        double worst = 0.0;
        bool within = true;
        for (std::size_t m = 0; m < windows.size(); ++m) {
            const auto d = washout_decay(fx.system, windows[m], derive_seed(0xE51, m));
            within = within && washout_within_certificate(cert, d, 1e-9);
            for (std::size_t t = 1; t < d.size(); ++t) {
                if (cert.nilpotency_depth) {
                    if (t >= *cert.nilpotency_depth) worst = std::max(worst, d[t]);
                } else {
                    worst = std::max(worst, d[t] / (d[0] * std::pow(cert.bound, static_cast<double>(t))));
                }
            }
        }
        const double dt = since(t1);
        if (cert.nilpotency_depth)
            rep.results.push_back(check(fx.name + ": max distance after depth " + std::to_string(*cert.nilpotency_depth),
                                        worst, "==", 0.0, dt, to_string(cert.method)));
        else
            rep.results.push_back(check(fx.name + ": max d_t / (d_0 bound^t)", worst, "<=", 1.0 + 1e-9, dt,
                                        to_string(cert.method) + " bound " + fmt(cert.bound)));
        if (!within) rep.results.push_back(check(fx.name + ": washout_within_certificate", 0.0, "==", 1.0, dt));
    }
    for (Activation act : {Activation::logistic, Activation::tanh}) {
        const auto t1 = Clock::now();
        const std::size_t K = 3;
        const auto f = block_fixture(1, K, act, derive_seed(0xE52, act == Activation::tanh));
        const auto cert = certify_esp(f.esn);
        const std::string name = std::string("block esn ") + std::string(to_string(act)) + " K=3";
        rep.results.push_back(check(name + ": nilpotency depth", cert.nilpotency_depth ? double(*cert.nilpotency_depth) : -1.0,
                                    "==", double(K + 1), 0.0, to_string(cert.method)));
        const auto windows = sample_windows(ProcessSampler::iid_uniform_bounded(1, -1.0, 1.0), T, 50, derive_seed(0xE53, 0));
        double worst = 0.0;
        for (std::size_t m = 0; m < windows.size(); ++m) {
            const auto d = washout_decay(f.esn, windows[m], derive_seed(0xE54, m));
            for (std::size_t t = K + 1; t < d.size(); ++t) worst = std::max(worst, d[t]);
        }
        rep.results.push_back(check(name + ": max distance after K+1 steps", worst, "==", 0.0, since(t1)));
    }
    rep.seconds = since(t0);
    return rep;
}

SuiteReport stationarity_suite()
{
    const auto t0 = Clock::now();
    SuiteReport rep{"stationarity", {}, 0};
    const std::vector<long> shifts{0, -5, -10};
    struct Case {
        std::string name;
        FunctionalSpec spec;
        ProcessSampler sampler;
        std::size_t T;
    };
    const std::vector<Case> cases{
        {"geometric_ma(0.5), iid gaussian", FunctionalSpec::geometric_ma(0.5), ProcessSampler::iid_gaussian(1), 40},
        {"garch_vol(0.1,0.1,0.8), garch11", FunctionalSpec::garch_vol(0.1, 0.1, 0.8),
         ProcessSampler::garch11(1, 0.1, 0.1, 0.8), 120}};
    for (std::size_t c = 0; c < cases.size(); ++c) {
        const auto t1 = Clock::now();
        const auto& cs = cases[c];
        const auto est = shift_invariance_probe(cs.sampler, cs.spec, 2.0, shifts, cs.T, 20000, derive_seed(0x57A7, c));
        double worst = 0.0;
        std::string values;
        for (std::size_t i = 0; i < est.size(); ++i) {
            values += (i ? ", " : "") + fmt(est[i].value) + " +- " + fmt(est[i].std_error);
            for (std::size_t j = i + 1; j < est.size(); ++j)
                worst = std::max(worst, std::abs(est[i].value - est[j].value) / combined_stderr(est[i], est[j]));
        }
        rep.results.push_back(check(cs.name + ": max pairwise |diff| / combined stderr, shifts {0,-5,-10}", worst,
                                    "<=", 3.0, since(t1), values));
        const auto t2 = Clock::now();
        const auto fn = filter_norm(cs.spec, cs.sampler, 2.0, shifts, cs.T, 20000, derive_seed(0x57A8, c));
        const auto ln = lp_norm(cs.spec, cs.sampler, 2.0, cs.T, 20000, derive_seed(0x57A9, c));
        rep.results.push_back(check(cs.name + ": |filter_norm - lp_norm| / combined stderr",
                                    std::abs(fn.value - ln.value) / combined_stderr(fn, ln), "<=", 3.0, since(t2)));
    }
    rep.seconds = since(t0);
    return rep;
}

SuiteReport lognormal_suite()
{
    const auto t0 = Clock::now();
    SuiteReport rep{"lognormal", {}, 0};
    const auto sizes = default_moment_sizes();
    const std::vector<std::pair<std::string, ProcessSampler>> samplers{
        {"iid_lognormal", ProcessSampler::iid_lognormal(1)},
        {"iid_gaussian", ProcessSampler::iid_gaussian(1)},
        {"iid_uniform_bounded[0,1]", ProcessSampler::iid_uniform_bounded(1, 0.0, 1.0)}};
    for (double alpha : {0.1, 1.0}) {
        for (std::size_t i = 0; i < samplers.size(); ++i) {
            const auto t1 = Clock::now();
            const auto d = exp_moment_check(samplers[i].second, alpha, 2, sizes, derive_seed(0x1060, i));
            const bool heavy = i == 0;
            rep.results.push_back(check(samplers[i].first + " alpha=" + fmt(alpha) + ": tail growth (" +
                                            (heavy ? "suspect_infinite" : "plausible") + " expected)",
                                        d.tail_growth, heavy ? ">" : "<=", d.threshold, since(t1),
                                        "verdict " + to_string(d.verdict)));
        }
    }
    rep.seconds = since(t0);
    return rep;
}

double median3(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

SuiteReport universality_suite()
{
    const auto t0 = Clock::now();
    SuiteReport rep{"universality", {}, 0};
    const auto target = FunctionalSpec::geometric_ma(0.9);
    const auto sampler = ProcessSampler::iid_gaussian(1);
    const std::size_t T = 80;
    std::map<std::size_t, std::vector<double>> errors;
    for (std::size_t N : {10, 50, 200}) {
        const auto t1 = Clock::now();
        for (std::uint64_t seed : {1, 2, 3}) {
            const auto esn = random_esn(N, 1, RandomEsnOptions{}, seed);
            TrainConfig cfg;
            cfg.paths = 5000;
            cfg.window_length = T;
            cfg.washout = T - 1;
            cfg.seed = 100 + seed;
            const auto fit = fit_linear_readout(esn, target, sampler, cfg);
            const ReservoirModel model{with_readout(esn, fit.readout.W), std::nullopt};
            errors[N].push_back(approx_error(target, model, sampler, 2.0, T, 5000, 200 + seed, cfg.seed).value);
        }
        std::string v;
        for (double e : errors[N]) v += (v.empty() ? "" : ", ") + fmt(e);
        rep.results.push_back(check("N=" + std::to_string(N) + ": median approx_error over 3 seeds", median3(errors[N]),
                                    ">=", 0.0, since(t1), v));
    }
    const auto norm = lp_norm(target, sampler, 2.0, T, 5000, 300);
    const double m10 = median3(errors[10]), m200 = median3(errors[200]);
    rep.results.push_back(check("median(N=200) / median(N=10)", m200 / m10, "<", 0.5, 0.0));
    rep.results.push_back(check("median(N=200) / lp_norm(target)", m200 / norm.value, "<", 0.2, 0.0,
                                "lp_norm " + fmt(norm.value) + " +- " + fmt(norm.std_error)));
    rep.seconds = since(t0);
    return rep;
}

const std::map<std::string, std::function<SuiteReport()>>& registry()
{
    static const std::map<std::string, std::function<SuiteReport()>> r{
        {"lemma1", lemma1_suite},           {"lemma2", lemma2_suite},
        {"esp", esp_suite},                 {"direct_sum", direct_sum_suite},
        {"block_esn", block_esn_suite},     {"stationarity", stationarity_suite},
        {"shift_register", shift_register_suite}, {"nilpotent_sas", nilpotent_sas_suite},
        {"lognormal", lognormal_suite},     {"universality", universality_suite}};
    return r;
}

}  // namespace

bool SuiteReport::passed() const
{
    return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.passed; });
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"lemma2",    "lemma1",         "esp",          "direct_sum",
                                                "block_esn", "shift_register", "nilpotent_sas", "stationarity",
                                                "lognormal", "universality"};
    return names;
}

SuiteReport run_suite(const std::string& name)
{
    const auto& r = registry();
    const auto it = r.find(name);
    if (it == r.end()) throw DomainError("unknown suite '" + name + "'");
    return it->second();
}

Json to_json(const PropertyResult& r)
{
    return {{"name", r.name},
            {"passed", r.passed},
            {"measured", std::isfinite(r.measured) ? Json(r.measured) : Json(nullptr)},
            {"relation", r.relation},
            {"threshold", r.threshold},
            {"seconds", r.seconds},
            {"detail", r.detail}};
}

Json to_json(const SuiteReport& r)
{
    Json props = Json::array();
    for (const auto& p : r.results) props.push_back(to_json(p));
    return {{"suite", r.suite}, {"passed", r.passed()}, {"seconds", r.seconds}, {"properties", props}};
}

}  // namespace rcu
