#include "rcu/serialize.hpp"

#include "rcu/errors.hpp"

#include <cmath>
#include <fstream>

namespace rcu {

namespace {

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
    return j.at(key);
}

double number(const Json& j)
{
    if (!j.is_number()) throw ConfigError("expected a number, got " + j.dump());
    return j.get<double>();
}

std::size_t count(const Json& j, const char* key)
{
    const auto& v = field(j, key);
    if (!v.is_number_unsigned()) throw ConfigError(std::string("field '") + key + "' must be a nonnegative integer");
    return v.get<std::size_t>();
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json trig_to_json(const TrigPolynomial& p)
{
    Json terms = Json::array();
    for (const auto& t : p.terms())
        terms.push_back({{"A", matrix_to_json(t.A)},
                         {"B", matrix_to_json(t.B)},
                         {"u", vector_to_json(t.u)},
                         {"v", vector_to_json(t.v)}});
    return {{"rows", p.rows()}, {"cols", p.cols()}, {"inputs", p.inputs()}, {"terms", terms}};
}

TrigPolynomial trig_from_json(const Json& j)
{
    TrigPolynomial p(count(j, "rows"), count(j, "cols"), count(j, "inputs"));
    for (const auto& t : field(j, "terms"))
        p.add_term(TrigTerm{matrix_from_json(field(t, "A")), matrix_from_json(field(t, "B")),
                            vector_from_json(field(t, "u")), vector_from_json(field(t, "v"))});
    return p;
}

EspMethod esp_method_from_string(const std::string& s)
{
    for (auto m : {EspMethod::spectral, EspMethod::nilpotent, EspMethod::lipschitz_spectral, EspMethod::empirical})
        if (to_string(m) == s) return m;
    throw ConfigError("unknown ESP method '" + s + "'");
}

}  // namespace

Json matrix_to_json(const Eigen::MatrixXd& m)
{
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const Json& j)
{
    if (!j.is_array()) throw ConfigError("matrix must be an array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows ? static_cast<Eigen::Index>(j.at(0).size()) : 0;
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& row = j.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw ConfigError("matrix rows must be arrays of equal length");
        for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = number(row.at(static_cast<std::size_t>(k)));
    }
    return m;
}

Json vector_to_json(const Eigen::VectorXd& v)
{
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

Eigen::VectorXd vector_from_json(const Json& j)
{
    if (!j.is_array()) throw ConfigError("vector must be an array");
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = number(j.at(static_cast<std::size_t>(i)));
    return v;
}

Json to_json(const Readout& r)
{
    struct {
        Json operator()(const LinearReadout& l) const { return {{"type", "linear"}, {"W", vector_to_json(l.W)}}; }
        Json operator()(const PolynomialReadout& p) const
        {
            return {{"type", "polynomial"},
                    {"n_vars", p.n_vars},
                    {"degree", p.degree},
                    {"coefficients", vector_to_json(p.coefficients)}};
        }
        Json operator()(const NetworkReadout& n) const
        {
            return {{"type", "network"},
                    {"activation", to_string(n.activation)},
                    {"alpha", matrix_to_json(n.alpha)},
                    {"theta", vector_to_json(n.theta)},
                    {"beta", vector_to_json(n.beta)}};
        }
    } v;
    return std::visit(v, r);
}

Readout readout_from_json(const Json& j)
{
    const auto type = field(j, "type").get<std::string>();
    if (type == "linear") return LinearReadout{vector_from_json(field(j, "W"))};
    if (type == "polynomial")
        return PolynomialReadout(count(j, "n_vars"), count(j, "degree"), vector_from_json(field(j, "coefficients")));
    if (type == "network") {
        NetworkReadout n;
        n.activation = activation_from_string(field(j, "activation").get<std::string>());
        n.alpha = matrix_from_json(field(j, "alpha"));
        n.theta = vector_from_json(field(j, "theta"));
        n.beta = vector_from_json(field(j, "beta"));
        if (n.alpha.rows() != n.beta.size() || n.theta.size() != n.beta.size())
            throw ConfigError("network readout has inconsistent hidden sizes");
        return n;
    }
    throw ConfigError("unknown readout type '" + type + "'");
}

Json to_json(const EspReport& r)
{
    Json j = {{"certified", r.certified}, {"method", to_string(r.method)}, {"bound", finite_or_null(r.bound)}};
    j["nilpotency_depth"] = r.nilpotency_depth ? Json(*r.nilpotency_depth) : Json(nullptr);
    j["empirical_decay_rate"] = r.empirical_decay_rate ? finite_or_null(*r.empirical_decay_rate) : Json(nullptr);
    return j;
}

EspReport esp_report_from_json(const Json& j)
{
    EspReport r;
    r.certified = field(j, "certified").get<bool>();
    r.method = esp_method_from_string(field(j, "method").get<std::string>());
    const auto& b = field(j, "bound");
    r.bound = b.is_null() ? std::numeric_limits<double>::infinity() : number(b);
    if (j.contains("nilpotency_depth") && !j["nilpotency_depth"].is_null())
        r.nilpotency_depth = j["nilpotency_depth"].get<std::size_t>();
    if (j.contains("empirical_decay_rate") && !j["empirical_decay_rate"].is_null())
        r.empirical_decay_rate = number(j["empirical_decay_rate"]);
    return r;
}

Json to_json(const ReservoirModel& m)
{
    Json j = {{"format", "rcu-reservoir"}, {"version", 1}, {"family", family_name(m.system)}};
    if (const auto* l = std::get_if<LinearReservoir>(&m.system)) {
        j["A"] = matrix_to_json(l->A);
        j["c"] = matrix_to_json(l->c);
    } else if (const auto* t = std::get_if<TrigSAS>(&m.system)) {
        j["P"] = trig_to_json(t->P);
        j["Q"] = trig_to_json(t->Q);
        j["W"] = vector_to_json(t->W);
    } else {
        const auto& e = std::get<EchoStateNetwork>(m.system);
        j["activation"] = to_string(e.activation);
        j["A"] = matrix_to_json(e.A);
        j["C"] = matrix_to_json(e.C);
        j["zeta"] = vector_to_json(e.zeta);
        j["W"] = vector_to_json(e.W);
    }
    j["readout"] = m.readout ? to_json(*m.readout) : Json(nullptr);
    j["esp"] = to_json(certify_esp(m.system));
    return j;
}

ReservoirModel model_from_json(const Json& j)
{
    if (!j.is_object() || j.value("format", "") != "rcu-reservoir")
        throw ConfigError("not an rcu-reservoir document");
    if (j.value("version", 0) != 1) throw ConfigError("unsupported reservoir document version");
    const auto family = field(j, "family").get<std::string>();
    ReservoirModel m{LinearReservoir{}, std::nullopt};
    if (family == "linear") {
        m.system = LinearReservoir{matrix_from_json(field(j, "A")), matrix_from_json(field(j, "c"))};
    } else if (family == "trig_sas") {
        m.system = TrigSAS{trig_from_json(field(j, "P")), trig_from_json(field(j, "Q")), vector_from_json(field(j, "W"))};
    } else if (family == "esn") {
        m.system = EchoStateNetwork{matrix_from_json(field(j, "A")), matrix_from_json(field(j, "C")),
                                    vector_from_json(field(j, "zeta")), vector_from_json(field(j, "W")),
                                    activation_from_string(field(j, "activation").get<std::string>())};
    } else {
        throw ConfigError("unknown reservoir family '" + family + "'");
    }
    if (j.contains("readout") && !j["readout"].is_null()) m.readout = readout_from_json(j["readout"]);
    try {
        m.validate();
    } catch (const Error& e) {
        throw ConfigError(std::string("invalid reservoir document: ") + e.what());
    }
    return m;
}

void save_model(const std::filesystem::path& path, const ReservoirModel& m)
{
    std::ofstream os(path);
    if (!os) throw Error("cannot open " + path.string() + " for writing");
    os << to_json(m).dump(2) << '\n';
    if (!os) throw Error("failed writing " + path.string());
}

ReservoirModel load_model(const std::filesystem::path& path)
{
    std::ifstream is(path);
    if (!is) throw Error("cannot open " + path.string());
    Json j;
    try {
        is >> j;
    } catch (const Json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return model_from_json(j);
}

Json to_json(const TrainDiagnostics& d)
{
    return {{"lambda", d.lambda},
            {"paths", d.paths},
            {"rmse_train", finite_or_null(d.rmse_train)},
            {"rmse_holdout", finite_or_null(d.rmse_holdout)},
            {"coeff_count", d.coeff_count},
            {"seed", d.seed},
            {"train_rows", d.train_rows},
            {"holdout_rows", d.holdout_rows},
            {"warnings", d.warnings}};
}

Json to_json(const LpEstimate& e)
{
    return {{"p", e.p},
            {"value", finite_or_null(e.value)},
            {"stderr", finite_or_null(e.std_error)},
            {"M", e.M},
            {"seed", e.seed},
            {"heavy_tail_warning", e.heavy_tail_warning}};
}

Json to_json(const MomentDiagnostic& d)
{
    Json logs = Json::array();
    for (double v : d.log_estimates) logs.push_back(finite_or_null(v));
    return {{"alpha", d.alpha},
            {"K", d.K},
            {"sample_sizes", d.sample_sizes},
            {"log_estimates", logs},
            {"estimate", finite_or_null(d.estimate)},
            {"tail_growth", finite_or_null(d.tail_growth)},
            {"threshold", d.threshold},
            {"verdict", to_string(d.verdict)}};
}

}  // namespace rcu
