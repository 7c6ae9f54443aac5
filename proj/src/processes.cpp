#include "rcu/processes.hpp"

#include "rcu/errors.hpp"
#include "rcu/parallel.hpp"
#include "rcu/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rcu {

std::string to_string(SamplerKind k)
{
    switch (k) {
    case SamplerKind::iid_gaussian: return "iid_gaussian";
    case SamplerKind::iid_uniform_bounded: return "iid_uniform_bounded";
    case SamplerKind::iid_lognormal: return "iid_lognormal";
    case SamplerKind::arma: return "arma";
    case SamplerKind::garch11: return "garch11";
    }
    return "unknown";
}

std::string to_string(MomentVerdict v)
{
    return v == MomentVerdict::plausible ? "plausible" : "suspect_infinite";
}

namespace {

void check_channels(std::size_t n)
{
    if (n < 1) throw DomainError("sampler needs at least one channel");
}

// Largest modulus of the inverse roots of 1 + c_1 z + ... + c_p z^p (companion eigenvalues).
double inverse_root_radius(const std::vector<double>& c)
{
    if (c.empty()) return 0.0;
    const auto p = static_cast<Eigen::Index>(c.size());
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(p, p);
    for (Eigen::Index i = 0; i < p; ++i) comp(0, i) = -c[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 1; i < p; ++i) comp(i, i - 1) = 1.0;
    return comp.eigenvalues().cwiseAbs().maxCoeff();
}

std::vector<double> negated(const std::vector<double>& v)
{
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [](double x) { return -x; });
    return out;
}

}  // namespace

ProcessSampler ProcessSampler::iid_gaussian(std::size_t n, double mean, double sd)
{
    check_channels(n);
    if (!(sd > 0.0) || !std::isfinite(mean) || !std::isfinite(sd))
        throw DomainError("iid_gaussian requires finite mean and sd > 0");
    return ProcessSampler(n, GaussianParams{mean, sd});
}

ProcessSampler ProcessSampler::iid_uniform_bounded(std::size_t n, double a_min, double a_max)
{
    check_channels(n);
    if (!(a_min < a_max) || !std::isfinite(a_min) || !std::isfinite(a_max))
        throw DomainError("iid_uniform_bounded requires finite a_min < a_max");
    return ProcessSampler(n, UniformParams{a_min, a_max});
}

ProcessSampler ProcessSampler::iid_lognormal(std::size_t n, double mu, double sigma)
{
    check_channels(n);
    if (!(sigma > 0.0) || !std::isfinite(mu) || !std::isfinite(sigma))
        throw DomainError("iid_lognormal requires finite mu and sigma > 0");
    return ProcessSampler(n, LognormalParams{mu, sigma});
}

ProcessSampler ProcessSampler::arma(std::size_t n, ArmaParams p)
{
    check_channels(n);
    if (!(p.sigma > 0.0)) throw DomainError("arma requires sigma > 0");
    if (inverse_root_radius(negated(p.phi)) >= 1.0)
        throw DomainError("arma AR polynomial is not causal: all roots of 1 - phi_1 z - ... must lie outside the unit circle");
    if (inverse_root_radius(p.theta) >= 1.0)
        throw DomainError("arma MA polynomial is not invertible: all roots of 1 + theta_1 z + ... must lie outside the unit circle");
    return ProcessSampler(n, std::move(p));
}

ProcessSampler ProcessSampler::garch11(std::size_t n, double omega, double alpha, double beta)
{
    check_channels(n);
    if (!(omega > 0.0)) throw DomainError("garch11 requires omega > 0");
    if (!(alpha >= 0.0 && beta >= 0.0)) throw DomainError("garch11 requires alpha >= 0 and beta >= 0");
    if (!(alpha + beta < 1.0))
        throw DomainError("garch11 requires alpha + beta < 1 (second-order stationarity); got alpha + beta = " +
                          std::to_string(alpha + beta));
    return ProcessSampler(n, Garch11Params{omega, alpha, beta});
}

bool ProcessSampler::independent_values() const
{
    const auto k = kind();
    return k == SamplerKind::iid_gaussian || k == SamplerKind::iid_uniform_bounded || k == SamplerKind::iid_lognormal;
}

std::optional<std::pair<double, double>> ProcessSampler::bounded_support() const
{
    if (const auto* u = std::get_if<UniformParams>(&params_)) return std::make_pair(u->a_min, u->a_max);
    return std::nullopt;
}

double ProcessSampler::characteristic_time() const
{
    if (const auto* a = std::get_if<ArmaParams>(&params_)) return 1.0 / (1.0 - inverse_root_radius(negated(a->phi)));
    if (const auto* g = std::get_if<Garch11Params>(&params_)) return 1.0 / (1.0 - g->alpha - g->beta);
    return 0.0;
}

std::size_t ProcessSampler::burn_in() const
{
    if (independent_values()) return 0;
    return std::max<std::size_t>(1000, static_cast<std::size_t>(std::ceil(50.0 * characteristic_time())));
}

double ProcessSampler::stationary_variance() const
{
    struct {
        double operator()(const GaussianParams& p) const { return p.sd * p.sd; }
        double operator()(const UniformParams& p) const { return (p.a_max - p.a_min) * (p.a_max - p.a_min) / 12.0; }
        double operator()(const LognormalParams& p) const
        {
            const double s2 = p.sigma * p.sigma;
            return (std::exp(s2) - 1.0) * std::exp(2.0 * p.mu + s2);
        }
        double operator()(const ArmaParams& p) const
        {
            // Sum of squared psi-weights of the MA(infinity) representation.
            double var = 0.0;
            std::vector<double> psi;
            for (std::size_t j = 0; j < 100000; ++j) {
                double w = j == 0 ? 1.0 : (j <= p.theta.size() ? p.theta[j - 1] : 0.0);
                for (std::size_t i = 1; i <= std::min(j, p.phi.size()); ++i) w += p.phi[i - 1] * psi[j - i];
                psi.push_back(w);
                var += w * w;
                if (j > p.theta.size() + p.phi.size() && std::abs(w) < 1e-17) break;
            }
            return p.sigma * p.sigma * var;
        }
        double operator()(const Garch11Params& p) const { return p.omega / (1.0 - p.alpha - p.beta); }
    } v;
    return std::visit(v, params_);
}

double ProcessSampler::stationary_mean() const
{
    struct {
        double operator()(const GaussianParams& p) const { return p.mean; }
        double operator()(const UniformParams& p) const { return 0.5 * (p.a_min + p.a_max); }
        double operator()(const LognormalParams& p) const { return std::exp(p.mu + 0.5 * p.sigma * p.sigma); }
        double operator()(const ArmaParams& p) const { return p.mean; }
        double operator()(const Garch11Params&) const { return 0.0; }
    } v;
    return std::visit(v, params_);
}

std::string ProcessSampler::describe() const
{
    std::ostringstream os;
    os << to_string(kind()) << "(n=" << n_;
    struct {
        std::ostringstream& os;
        void operator()(const GaussianParams& p) { os << ", mean=" << p.mean << ", sd=" << p.sd; }
        void operator()(const UniformParams& p) { os << ", a_min=" << p.a_min << ", a_max=" << p.a_max; }
        void operator()(const LognormalParams& p) { os << ", mu=" << p.mu << ", sigma=" << p.sigma; }
        void operator()(const ArmaParams& p) { os << ", p=" << p.phi.size() << ", q=" << p.theta.size(); }
        void operator()(const Garch11Params& p)
        {
            os << ", omega=" << p.omega << ", alpha=" << p.alpha << ", beta=" << p.beta;
        }
    } v{os};
    std::visit(v, params_);
    os << ")";
    return os.str();
}

namespace {

// Writes chronological step t (0 = oldest emitted) into row T-1-t.
struct PathWriter {
    Eigen::Ref<Eigen::MatrixXd> out;
    void put(std::size_t t, std::size_t c, double v)
    {
        out(out.rows() - 1 - static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(c)) = v;
    }
};

void generate_arma(const ArmaParams& p, std::size_t n, std::size_t burn, RandomStream& rng, PathWriter& w)
{
    const std::size_t T = static_cast<std::size_t>(w.out.rows());
    const std::size_t ar = p.phi.size(), ma = p.theta.size();
    // Ring buffers of centered values and innovations, per channel.
    std::vector<std::vector<double>> xs(n, std::vector<double>(ar, 0.0)), es(n, std::vector<double>(ma, 0.0));
    for (std::size_t t = 0; t < burn + T; ++t) {
        for (std::size_t c = 0; c < n; ++c) {
            const double e = p.sigma * rng.normal();
            double x = e;
            for (std::size_t i = 0; i < ar; ++i) x += p.phi[i] * xs[c][i];
            for (std::size_t j = 0; j < ma; ++j) x += p.theta[j] * es[c][j];
            if (ar > 0) {
                std::rotate(xs[c].rbegin(), xs[c].rbegin() + 1, xs[c].rend());
                xs[c][0] = x;
            }
            if (ma > 0) {
                std::rotate(es[c].rbegin(), es[c].rbegin() + 1, es[c].rend());
                es[c][0] = e;
            }
            if (t >= burn) w.put(t - burn, c, p.mean + x);
        }
    }
}

// Emits z_t; if `variance` is non-null also the conditional variance of channel 0.
void generate_garch(const Garch11Params& p, std::size_t n, std::size_t burn, RandomStream& rng, PathWriter& w,
                    Eigen::VectorXd* variance)
{
    const std::size_t T = static_cast<std::size_t>(w.out.rows());
    const double s2_init = p.omega / (1.0 - p.alpha - p.beta);
    std::vector<double> s2(n, s2_init), z(n, 0.0);
    for (std::size_t t = 0; t < burn + T; ++t) {
        for (std::size_t c = 0; c < n; ++c) {
            s2[c] = p.omega + p.alpha * z[c] * z[c] + p.beta * s2[c];
            z[c] = std::sqrt(s2[c]) * rng.normal();
            if (t >= burn) {
                w.put(t - burn, c, z[c]);
                if (variance && c == 0) (*variance)(static_cast<Eigen::Index>(T - 1 - (t - burn))) = s2[c];
            }
        }
    }
}

void generate_impl(const ProcessSampler& s, std::uint64_t seed, std::uint64_t path, Eigen::Ref<Eigen::MatrixXd> out,
                   Eigen::VectorXd* variance)
{
    if (out.cols() != static_cast<Eigen::Index>(s.channels()))
        throw DimensionError("output buffer has " + std::to_string(out.cols()) + " columns, sampler has " +
                             std::to_string(s.channels()) + " channels");
    RandomStream rng(seed, path);
    PathWriter w{out};
    const std::size_t T = static_cast<std::size_t>(out.rows());
    const std::size_t n = s.channels();
    struct {
        RandomStream& rng;
        PathWriter& w;
        std::size_t T, n, burn;
        Eigen::VectorXd* variance;
        void operator()(const GaussianParams& p)
        {
            for (std::size_t t = 0; t < T; ++t)
                for (std::size_t c = 0; c < n; ++c) w.put(t, c, p.mean + p.sd * rng.normal());
        }
        void operator()(const UniformParams& p)
        {
            for (std::size_t t = 0; t < T; ++t)
                for (std::size_t c = 0; c < n; ++c) w.put(t, c, rng.uniform(p.a_min, p.a_max));
        }
        void operator()(const LognormalParams& p)
        {
            for (std::size_t t = 0; t < T; ++t)
                for (std::size_t c = 0; c < n; ++c) w.put(t, c, std::exp(p.mu + p.sigma * rng.normal()));
        }
        void operator()(const ArmaParams& p) { generate_arma(p, n, burn, rng, w); }
        void operator()(const Garch11Params& p) { generate_garch(p, n, burn, rng, w, variance); }
    } v{rng, w, T, n, s.burn_in(), variance};
    std::visit(v, s.params());
}

}  // namespace

void generate_path(const ProcessSampler& s, std::uint64_t seed, std::uint64_t path, Eigen::Ref<Eigen::MatrixXd> out)
{
    generate_impl(s, seed, path, out, nullptr);
}

Window sample_window(const ProcessSampler& s, std::size_t T, std::uint64_t seed, std::uint64_t path)
{
    if (T < 1) throw DomainError("window length must be at least 1");
    Eigen::MatrixXd data(static_cast<Eigen::Index>(T), static_cast<Eigen::Index>(s.channels()));
    generate_path(s, seed, path, data);
    return Window(std::move(data));
}

std::vector<Window> sample_windows(const ProcessSampler& s, std::size_t T, std::size_t M, std::uint64_t seed)
{
    if (T < 1) throw DomainError("window length must be at least 1");
    std::vector<Eigen::MatrixXd> data(M);
    parallel_for(M, [&](std::size_t m) {
        data[m].resize(static_cast<Eigen::Index>(T), static_cast<Eigen::Index>(s.channels()));
        generate_path(s, seed, m, data[m]);
    });
    std::vector<Window> out;
    out.reserve(M);
    for (auto& d : data) out.emplace_back(std::move(d));
    return out;
}

Eigen::VectorXd garch_variance_path(const ProcessSampler& s, std::size_t T, std::uint64_t seed, std::uint64_t path)
{
    if (s.kind() != SamplerKind::garch11) throw DomainError("conditional variances exist only for garch11 samplers");
    Eigen::MatrixXd data(static_cast<Eigen::Index>(T), static_cast<Eigen::Index>(s.channels()));
    Eigen::VectorXd var(static_cast<Eigen::Index>(T));
    generate_impl(s, seed, path, data, &var);
    return var;
}

std::vector<std::size_t> doubling_sizes(unsigned lo, unsigned hi)
{
    std::vector<std::size_t> out;
    for (unsigned e = lo; e <= hi; ++e) out.push_back(std::size_t{1} << e);
    return out;
}

MomentDiagnostic exp_moment_check(const ProcessSampler& s, double alpha, std::size_t K,
                                  const std::vector<std::size_t>& sizes, std::uint64_t seed, double threshold)
{
    if (!(alpha > 0.0)) throw DomainError("exp_moment_check requires alpha > 0");
    if (sizes.size() < 3) throw DomainError("exp_moment_check requires at least 3 sample sizes");
    for (std::size_t i = 0; i < sizes.size(); ++i)
        if (sizes[i] < 1 || (i > 0 && sizes[i] <= sizes[i - 1]))
            throw DomainError("exp_moment_check sample sizes must be positive and strictly ascending");

    // Samples are consecutive blocks of K+1 rows inside chunk paths; for i.i.d. samplers this is the
    // same as independent windows, for dependent ones it amortizes the burn-in.
    constexpr std::size_t kChunk = 4096;
    const std::size_t total = sizes.back();
    const std::size_t chunks = (total + kChunk - 1) / kChunk;
    const std::size_t L = K + 1;
    std::vector<double> logv(total);
    parallel_for(chunks, [&](std::size_t c) {
        const std::size_t first = c * kChunk;
        const std::size_t count = std::min(kChunk, total - first);
        Eigen::MatrixXd buf(static_cast<Eigen::Index>(count * L), static_cast<Eigen::Index>(s.channels()));
        generate_path(s, seed, c, buf);
        for (std::size_t i = 0; i < count; ++i)
            logv[first + i] = alpha * buf.middleRows(static_cast<Eigen::Index>(i * L), static_cast<Eigen::Index>(L))
                                          .cwiseAbs()
                                          .sum();
    });

    MomentDiagnostic d;
    d.alpha = alpha;
    d.K = K;
    d.sample_sizes = sizes;
    d.threshold = threshold;
    // Running log-sum-exp.
    double run_max = -std::numeric_limits<double>::infinity();
    double run_sum = 0.0;
    std::size_t next = 0;
    for (std::size_t i = 0; i < total; ++i) {
        const double v = logv[i];
        if (v > run_max) {
            run_sum = run_sum * std::exp(run_max - v) + 1.0;
            run_max = v;
        } else {
            run_sum += std::exp(v - run_max);
        }
        if (i + 1 == sizes[next]) {
            d.log_estimates.push_back(run_max + std::log(run_sum) - std::log(static_cast<double>(i + 1)));
            ++next;
        }
    }
    d.estimate = std::exp(d.log_estimates.back());

    const auto m = static_cast<double>(sizes.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const double x = std::log2(static_cast<double>(sizes[i]));
        const double y = d.log_estimates[i];
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    d.tail_growth = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    d.verdict = d.tail_growth > threshold ? MomentVerdict::suspect_infinite : MomentVerdict::plausible;
    return d;
}

}  // namespace rcu
