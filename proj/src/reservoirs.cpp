#include "rcu/reservoirs.hpp"

#include "rcu/errors.hpp"
#include "rcu/rng.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>

namespace rcu {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string dims(Eigen::Index r, Eigen::Index c) { return std::to_string(r) + "x" + std::to_string(c); }

double sigma_max(const Eigen::MatrixXd& A)
{
    if (A.size() == 0) return 0.0;
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A);
    return svd.singularValues()(0);
}

Eigen::MatrixXd gaussian_matrix(RandomStream& rng, Eigen::Index rows, Eigen::Index cols, double scale)
{
    Eigen::MatrixXd M(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) M(i, j) = scale * rng.normal();
    return M;
}

Eigen::MatrixXd haar_orthogonal(RandomStream& rng, Eigen::Index N)
{
    const Eigen::MatrixXd G = gaussian_matrix(rng, N, N, 1.0);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
    Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(N, N);
    const Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < N; ++i)
        if (R(i, i) < 0) Q.col(i) *= -1.0;
    return Q;
}

Eigen::MatrixXd symmetric_with_spread(RandomStream& rng, Eigen::Index N, double sigma_max_value)
{
    const Eigen::MatrixXd Q = haar_orthogonal(rng, N);
    Eigen::VectorXd s(N);
    for (Eigen::Index i = 0; i < N; ++i) s(i) = rng.uniform(0.0, sigma_max_value);
    // Pin the largest singular value so the certificate bound is exactly sigma_max_value.
    if (N > 0) {
        Eigen::Index imax = 0;
        s.maxCoeff(&imax);
        s(imax) = sigma_max_value;
    }
    return Q * s.asDiagonal() * Q.transpose();
}

void check_finite(const Eigen::VectorXd& x, std::size_t step_index)
{
    if (!x.allFinite())
        throw NumericOverflow("reservoir state became non-finite at step " + std::to_string(step_index));
}

}  // namespace

TrigPolynomial::TrigPolynomial(std::size_t rows, std::size_t cols, std::size_t inputs, std::vector<TrigTerm> terms)
    : rows_(rows), cols_(cols), inputs_(inputs)
{
    for (auto& t : terms) add_term(std::move(t));
}

void TrigPolynomial::add_term(TrigTerm t)
{
    const auto r = static_cast<Eigen::Index>(rows_), c = static_cast<Eigen::Index>(cols_);
    const auto n = static_cast<Eigen::Index>(inputs_);
    if (t.A.size() == 0) t.A = Eigen::MatrixXd::Zero(r, c);
    if (t.B.size() == 0) t.B = Eigen::MatrixXd::Zero(r, c);
    if (t.u.size() == 0) t.u = Eigen::VectorXd::Zero(n);
    if (t.v.size() == 0) t.v = Eigen::VectorXd::Zero(n);
    if (t.A.rows() != r || t.A.cols() != c || t.B.rows() != r || t.B.cols() != c)
        throw DimensionError("trig term coefficients must be " + dims(r, c));
    if (t.u.size() != n || t.v.size() != n) throw DimensionError("trig term frequencies must have length " + std::to_string(n));
    terms_.push_back(std::move(t));
}

Eigen::MatrixXd TrigPolynomial::operator()(const Eigen::VectorXd& z) const
{
    if (z.size() != static_cast<Eigen::Index>(inputs_))
        throw DimensionError("trig polynomial expects inputs of length " + std::to_string(inputs_));
    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
    for (const auto& t : terms_) R += t.A * std::cos(t.u.dot(z)) + t.B * std::sin(t.v.dot(z));
    return R;
}

double TrigPolynomial::operator_norm_bound() const
{
    double b = 0.0;
    for (const auto& t : terms_) b += sigma_max(t.A) + sigma_max(t.B);
    return b;
}

std::string family_name(const ReservoirSystem& s)
{
    return std::visit(overloaded{[](const LinearReservoir&) { return std::string("linear"); },
                                 [](const TrigSAS&) { return std::string("trig_sas"); },
                                 [](const EchoStateNetwork&) { return std::string("esn"); }},
                      s);
}

std::size_t state_dimension(const ReservoirSystem& s)
{
    return std::visit(overloaded{[](const LinearReservoir& r) { return static_cast<std::size_t>(r.A.rows()); },
                                 [](const TrigSAS& r) { return r.P.rows(); },
                                 [](const EchoStateNetwork& r) { return static_cast<std::size_t>(r.A.rows()); }},
                      s);
}

std::size_t input_dimension(const ReservoirSystem& s)
{
    return std::visit(overloaded{[](const LinearReservoir& r) { return static_cast<std::size_t>(r.c.cols()); },
                                 [](const TrigSAS& r) { return r.P.inputs(); },
                                 [](const EchoStateNetwork& r) { return static_cast<std::size_t>(r.C.cols()); }},
                      s);
}

void validate(const ReservoirSystem& s)
{
    std::visit(overloaded{[](const LinearReservoir& r) {
                              if (r.A.rows() != r.A.cols() || r.c.rows() != r.A.rows())
                                  throw DimensionError("linear reservoir: A is " + dims(r.A.rows(), r.A.cols()) +
                                                       ", c is " + dims(r.c.rows(), r.c.cols()));
                          },
                          [](const TrigSAS& r) {
                              const auto N = r.P.rows();
                              if (r.P.cols() != N || r.Q.rows() != N || r.Q.cols() != 1 ||
                                  static_cast<std::size_t>(r.W.size()) != N || r.Q.inputs() != r.P.inputs())
                                  throw DimensionError("trig-SAS: P must be NxN, Q Nx1 and W of length N");
                          },
                          [](const EchoStateNetwork& r) {
                              const auto N = r.A.rows();
                              if (r.A.cols() != N || r.C.rows() != N || r.zeta.size() != N || r.W.size() != N)
                                  throw DimensionError("ESN: A must be NxN, C Nxn, zeta and W of length N");
                          }},
               s);
}

Eigen::VectorXd step(const ReservoirSystem& s, const Eigen::VectorXd& x, const Eigen::VectorXd& z)
{
    if (static_cast<std::size_t>(x.size()) != state_dimension(s) ||
        static_cast<std::size_t>(z.size()) != input_dimension(s))
        throw DimensionError(family_name(s) + " step expects state " + std::to_string(state_dimension(s)) +
                             " and input " + std::to_string(input_dimension(s)));
    return std::visit(overloaded{[&](const LinearReservoir& r) -> Eigen::VectorXd { return r.A * x + r.c * z; },
                                 [&](const TrigSAS& r) -> Eigen::VectorXd {
                                     return r.P(z) * x + r.Q(z).col(0);
                                 },
                                 [&](const EchoStateNetwork& r) -> Eigen::VectorXd {
                                     return activate(r.activation, r.A * x + r.C * z + r.zeta);
                                 }},
                      s);
}

namespace {

void check_run_shapes(const ReservoirSystem& s, const Window& w, const Eigen::VectorXd& x0)
{
    validate(s);
    if (w.channels() != input_dimension(s))
        throw DimensionError(family_name(s) + " reservoir expects " + std::to_string(input_dimension(s)) +
                             " input channels, window has " + std::to_string(w.channels()));
    if (static_cast<std::size_t>(x0.size()) != state_dimension(s))
        throw DimensionError("initial state must have length " + std::to_string(state_dimension(s)));
}

std::optional<double> system_output(const ReservoirSystem& s, const Eigen::VectorXd& x)
{
    if (const auto* t = std::get_if<TrigSAS>(&s)) return t->W.dot(x);
    if (const auto* e = std::get_if<EchoStateNetwork>(&s)) return e->W.dot(x);
    return std::nullopt;
}

}  // namespace

Trajectory run_reservoir(const ReservoirSystem& s, const Window& w, const std::optional<Eigen::VectorXd>& x_init)
{
    const auto N = static_cast<Eigen::Index>(state_dimension(s));
    Eigen::VectorXd x = x_init ? *x_init : Eigen::VectorXd::Zero(N);
    check_run_shapes(s, w, x);
    Trajectory tr;
    tr.states.resize(static_cast<Eigen::Index>(w.length()), N);
    for (std::size_t k = w.length(); k-- > 0;) {
        x = step(s, x, w.at(k).transpose());
        check_finite(x, w.length() - k);
        tr.states.row(static_cast<Eigen::Index>(k)) = x.transpose();
    }
    tr.output = system_output(s, x);
    return tr;
}

Eigen::VectorXd final_state(const ReservoirSystem& s, const Window& w)
{
    const auto N = static_cast<Eigen::Index>(state_dimension(s));
    Eigen::VectorXd x = Eigen::VectorXd::Zero(N);
    check_run_shapes(s, w, x);
    for (std::size_t k = w.length(); k-- > 0;) x = step(s, x, w.at(k).transpose());
    check_finite(x, w.length());
    return x;
}

Eigen::MatrixXd final_states(const ReservoirSystem& s, const std::vector<Window>& windows)
{
    const auto N = static_cast<Eigen::Index>(state_dimension(s));
    const auto M = static_cast<Eigen::Index>(windows.size());
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(N, M);
    if (windows.empty()) return X;
    const std::size_t T = windows.front().length();
    for (const auto& w : windows) {
        if (w.length() != T) throw DimensionError("final_states needs windows of equal length");
        check_run_shapes(s, w, X.col(0));
    }
    if (std::holds_alternative<TrigSAS>(s)) {
        for (Eigen::Index m = 0; m < M; ++m) X.col(m) = final_state(s, windows[static_cast<std::size_t>(m)]);
        return X;
    }
    const auto n = static_cast<Eigen::Index>(input_dimension(s));
    Eigen::MatrixXd Z(n, M);
    for (std::size_t k = T; k-- > 0;) {
        for (Eigen::Index m = 0; m < M; ++m) Z.col(m) = windows[static_cast<std::size_t>(m)].at(k).transpose();
        if (const auto* r = std::get_if<LinearReservoir>(&s)) {
            X = r->A * X + r->c * Z;
        } else {
            const auto& e = std::get<EchoStateNetwork>(s);
            Eigen::MatrixXd pre = e.A * X + e.C * Z;
            pre.colwise() += e.zeta;
            X = pre.unaryExpr([a = e.activation](double v) { return activate(a, v); });
        }
    }
    if (!X.allFinite()) throw NumericOverflow("reservoir state became non-finite");
    return X;
}

std::string to_string(EspMethod m)
{
    switch (m) {
    case EspMethod::spectral: return "spectral";
    case EspMethod::nilpotent: return "nilpotent";
    case EspMethod::lipschitz_spectral: return "lipschitz_spectral";
    case EspMethod::empirical: return "empirical";
    }
    return "unknown";
}

std::optional<std::size_t> support_nilpotency_depth(const std::vector<const Eigen::MatrixXd*>& matrices)
{
    if (matrices.empty()) return 1;
    const auto N = matrices.front()->rows();
    // in_edges[k] lists l with some matrix having a nonzero (k, l) entry.
    std::vector<std::vector<Eigen::Index>> out_edges(static_cast<std::size_t>(N));
    std::vector<std::size_t> indegree(static_cast<std::size_t>(N), 0);
    for (Eigen::Index k = 0; k < N; ++k)
        for (Eigen::Index l = 0; l < N; ++l) {
            bool nz = false;
            for (const auto* M : matrices) nz = nz || (*M)(k, l) != 0.0;
            if (nz) {
                out_edges[static_cast<std::size_t>(l)].push_back(k);
                ++indegree[static_cast<std::size_t>(k)];
            }
        }
    // Kahn's algorithm with longest-path labels.
    std::vector<std::size_t> longest(static_cast<std::size_t>(N), 0), queue;
    for (std::size_t v = 0; v < indegree.size(); ++v)
        if (indegree[v] == 0) queue.push_back(v);
    std::size_t visited = 0, best = 0;
    while (visited < queue.size()) {
        const std::size_t v = queue[visited++];
        best = std::max(best, longest[v]);
        for (auto k : out_edges[v]) {
            const auto ku = static_cast<std::size_t>(k);
            longest[ku] = std::max(longest[ku], longest[v] + 1);
            if (--indegree[ku] == 0) queue.push_back(ku);
        }
    }
    if (visited != static_cast<std::size_t>(N)) return std::nullopt;
    return best + 1;
}

namespace {

// max over decoupled state blocks of sum_k (||A_k||_2 + ||B_k||_2) restricted to the block. Blocks
// are the connected components of the undirected support graph of all coefficient matrices; the
// state map acts block-diagonally on them, so ||P(z)|| is at most the largest block bound.
double decoupled_norm_bound(const TrigPolynomial& P)
{
    const auto N = static_cast<Eigen::Index>(P.rows());
    std::vector<Eigen::Index> parent(static_cast<std::size_t>(N));
    for (Eigen::Index i = 0; i < N; ++i) parent[static_cast<std::size_t>(i)] = i;
    const auto find = [&](Eigen::Index i) {
        while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
        return i;
    };
    for (const auto& t : P.terms())
        for (Eigen::Index k = 0; k < N; ++k)
            for (Eigen::Index l = 0; l < N; ++l)
                if (t.A(k, l) != 0.0 || t.B(k, l) != 0.0) parent[static_cast<std::size_t>(find(k))] = find(l);

    std::vector<std::vector<Eigen::Index>> groups(static_cast<std::size_t>(N));
    for (Eigen::Index i = 0; i < N; ++i) groups[static_cast<std::size_t>(find(i))].push_back(i);
    double worst = 0.0;
    for (const auto& g : groups) {
        if (g.empty()) continue;
        const auto m = static_cast<Eigen::Index>(g.size());
        double b = 0.0;
        for (const auto& t : P.terms()) {
            Eigen::MatrixXd a(m, m), bb(m, m);
            for (Eigen::Index i = 0; i < m; ++i)
                for (Eigen::Index j = 0; j < m; ++j) {
                    a(i, j) = t.A(g[static_cast<std::size_t>(i)], g[static_cast<std::size_t>(j)]);
                    bb(i, j) = t.B(g[static_cast<std::size_t>(i)], g[static_cast<std::size_t>(j)]);
                }
            b += sigma_max(a) + sigma_max(bb);
        }
        worst = std::max(worst, b);
    }
    return worst;
}

}  // namespace

EspReport certify_esp(const ReservoirSystem& s)
{
    EspReport rep;
    const auto nilpotent = [&rep](const std::vector<const Eigen::MatrixXd*>& mats) {
        if (const auto depth = support_nilpotency_depth(mats)) {
            rep.certified = true;
            rep.method = EspMethod::nilpotent;
            rep.bound = 0.0;
            rep.nilpotency_depth = depth;
        }
    };
    std::visit(overloaded{[&](const LinearReservoir& r) {
                              rep.method = EspMethod::spectral;
                              rep.bound = sigma_max(r.A);
                              rep.certified = rep.bound < 1.0;
                              if (!rep.certified) nilpotent({&r.A});
                          },
                          [&](const TrigSAS& r) {
                              rep.method = EspMethod::spectral;
                              rep.bound = decoupled_norm_bound(r.P);
                              rep.certified = rep.bound < 1.0;
                              if (!rep.certified) {
                                  std::vector<const Eigen::MatrixXd*> mats;
                                  for (const auto& t : r.P.terms()) {
                                      mats.push_back(&t.A);
                                      mats.push_back(&t.B);
                                  }
                                  nilpotent(mats);
                              }
                          },
                          [&](const EchoStateNetwork& r) {
                              rep.method = EspMethod::lipschitz_spectral;
                              rep.bound = lipschitz_constant(r.activation) * sigma_max(r.A);
                              rep.certified = rep.bound < 1.0;
                              if (!rep.certified) nilpotent({&r.A});
                          }},
               s);
    return rep;
}

std::vector<double> washout_decay(const ReservoirSystem& s, const Window& w, const Eigen::VectorXd& xa,
                                  const Eigen::VectorXd& xb)
{
    check_run_shapes(s, w, xa);
    check_run_shapes(s, w, xb);
    std::vector<double> d;
    d.reserve(w.length() + 1);
    Eigen::VectorXd a = xa, b = xb;
    d.push_back((a - b).norm());
    for (std::size_t k = w.length(); k-- > 0;) {
        const Eigen::VectorXd z = w.at(k).transpose();
        a = step(s, a, z);
        b = step(s, b, z);
        check_finite(a, w.length() - k);
        check_finite(b, w.length() - k);
        d.push_back((a - b).norm());
    }
    return d;
}

std::vector<double> washout_decay(const ReservoirSystem& s, const Window& w, std::uint64_t seed)
{
    const auto N = static_cast<Eigen::Index>(state_dimension(s));
    RandomStream rng(seed, 0x3A5);
    Eigen::VectorXd a(N), b(N);
    for (Eigen::Index i = 0; i < N; ++i) a(i) = rng.uniform(-1.0, 1.0);
    for (Eigen::Index i = 0; i < N; ++i) b(i) = rng.uniform(-1.0, 1.0);
    return washout_decay(s, w, a, b);
}

std::optional<double> fit_decay_rate(const std::vector<double>& distances)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (std::size_t t = 0; t < distances.size(); ++t) {
        if (!(distances[t] > 0.0)) continue;
        const double x = static_cast<double>(t), y = std::log(distances[t]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2) return std::nullopt;
    const double md = static_cast<double>(m);
    const double denom = md * sxx - sx * sx;
    if (denom == 0.0) return std::nullopt;
    return std::exp((md * sxy - sx * sy) / denom);
}

bool washout_within_certificate(const EspReport& report, const std::vector<double>& d, double slack)
{
    if (!report.certified || d.empty()) return false;
    if (report.method == EspMethod::nilpotent) {
        const std::size_t depth = report.nilpotency_depth.value_or(0);
        for (std::size_t t = depth; t < d.size(); ++t)
            if (d[t] != 0.0) return false;
        return true;
    }
    double envelope = d[0];
    for (std::size_t t = 1; t < d.size(); ++t) {
        envelope *= report.bound;
        if (d[t] > envelope * (1.0 + slack)) return false;
    }
    return true;
}

void ReservoirModel::validate() const
{
    rcu::validate(system);
    const bool linear = std::holds_alternative<LinearReservoir>(system);
    if (linear && !readout) throw DimensionError("a linear reservoir model needs a readout");
    if (!linear && readout) throw DimensionError(family_name(system) + " carries its own linear readout W");
    if (readout && readout_inputs(*readout) != state_dimension(system))
        throw DimensionError("readout expects " + std::to_string(readout_inputs(*readout)) +
                             " inputs, reservoir state has dimension " + std::to_string(state_dimension(system)));
}

double reservoir_functional(const ReservoirModel& m, const Window& w)
{
    const Eigen::VectorXd x = final_state(m.system, w);
    if (m.readout) return eval_readout(*m.readout, x);
    return *system_output(m.system, x);
}

FunctionalSpec as_functional(ReservoirModel m, std::string name, std::optional<std::size_t> memory)
{
    m.validate();
    return FunctionalSpec::custom(std::move(name), memory,
                                  [model = std::move(m)](const Window& w) { return reservoir_functional(model, w); });
}

LinearReservoir random_linear_reservoir(std::size_t N, std::size_t n, double sigma_max_value, double input_scale,
                                        std::uint64_t seed)
{
    if (N < 1 || n < 1) throw DomainError("random reservoir needs N >= 1 and n >= 1");
    RandomStream rng(seed, 0x11);
    LinearReservoir r;
    r.A = symmetric_with_spread(rng, static_cast<Eigen::Index>(N), sigma_max_value);
    r.c = gaussian_matrix(rng, static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(n), input_scale);
    return r;
}

EchoStateNetwork random_esn(std::size_t N, std::size_t n, const RandomEsnOptions& o, std::uint64_t seed)
{
    if (N < 1 || n < 1) throw DomainError("random ESN needs N >= 1 and n >= 1");
    RandomStream rng(seed, 0x22);
    EchoStateNetwork e;
    const auto Ni = static_cast<Eigen::Index>(N);
    e.A = symmetric_with_spread(rng, Ni, o.sigma_max);
    e.C = gaussian_matrix(rng, Ni, static_cast<Eigen::Index>(n), o.input_scale);
    e.zeta = gaussian_matrix(rng, Ni, 1, o.bias_scale).col(0);
    e.W = Eigen::VectorXd::Zero(Ni);
    e.activation = o.activation;
    return e;
}

TrigSAS random_trig_sas(std::size_t N, std::size_t n, const RandomTrigSasOptions& o, std::uint64_t seed)
{
    if (N < 1 || n < 1 || o.terms < 1) throw DomainError("random trig-SAS needs N, n and terms >= 1");
    RandomStream rng(seed, 0x33);
    const auto Ni = static_cast<Eigen::Index>(N), ni = static_cast<Eigen::Index>(n);
    TrigPolynomial P(N, N, n), Q(N, 1, n);
    std::vector<TrigTerm> pterms;
    double total = 0.0;
    for (std::size_t k = 0; k < o.terms; ++k) {
        TrigTerm t{gaussian_matrix(rng, Ni, Ni, 1.0), gaussian_matrix(rng, Ni, Ni, 1.0),
                   gaussian_matrix(rng, ni, 1, o.frequency_scale).col(0),
                   gaussian_matrix(rng, ni, 1, o.frequency_scale).col(0)};
        total += sigma_max(t.A) + sigma_max(t.B);
        pterms.push_back(std::move(t));
    }
    for (auto& t : pterms) {
        t.A *= o.contraction / total;
        t.B *= o.contraction / total;
        P.add_term(std::move(t));
    }
    for (std::size_t k = 0; k < o.terms; ++k)
        Q.add_term(TrigTerm{gaussian_matrix(rng, Ni, 1, 1.0), gaussian_matrix(rng, Ni, 1, 1.0),
                            gaussian_matrix(rng, ni, 1, o.frequency_scale).col(0),
                            gaussian_matrix(rng, ni, 1, o.frequency_scale).col(0)});
    return TrigSAS{std::move(P), std::move(Q), Eigen::VectorXd::Zero(Ni)};
}

ReservoirSystem with_readout(ReservoirSystem s, const Eigen::VectorXd& W)
{
    std::visit(overloaded{[](LinearReservoir&) {
                              throw DomainError("linear reservoirs take a separate readout, not W");
                          },
                          [&](TrigSAS& r) {
                              if (W.size() != r.W.size()) throw DimensionError("readout length mismatch");
                              r.W = W;
                          },
                          [&](EchoStateNetwork& r) {
                              if (W.size() != r.W.size()) throw DimensionError("readout length mismatch");
                              r.W = W;
                          }},
               s);
    return s;
}

}  // namespace rcu
