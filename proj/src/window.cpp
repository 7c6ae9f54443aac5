#include "rcu/window.hpp"

#include "rcu/errors.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace rcu {

Window::Window(Eigen::MatrixXd data) : data_(std::move(data))
{
    if (data_.rows() < 1 || data_.cols() < 1)
        throw DomainError("window must have at least one lag and one channel");
    if (!data_.allFinite()) throw DomainError("window contains non-finite entries");
}

Window Window::shifted(std::size_t first_lag, std::size_t len) const
{
    if (len < 1 || first_lag + len > length())
        throw DomainError("window shift [" + std::to_string(first_lag) + ", " + std::to_string(first_lag + len) +
                          ") exceeds window length " + std::to_string(length()));
    return Window(data_.middleRows(static_cast<Eigen::Index>(first_lag), static_cast<Eigen::Index>(len)));
}

Eigen::VectorXd Window::stacked(std::size_t K) const
{
    if (K + 1 > length())
        throw DomainError("window of length " + std::to_string(length()) + " is too short for memory " +
                          std::to_string(K));
    const auto n = data_.cols();
    Eigen::VectorXd out(static_cast<Eigen::Index>(K + 1) * n);
    for (Eigen::Index k = 0; k <= static_cast<Eigen::Index>(K); ++k) out.segment(k * n, n) = data_.row(k).transpose();
    return out;
}

void write_window_csv(std::ostream& os, const Window& w)
{
    os << "lag";
    for (std::size_t c = 0; c < w.channels(); ++c) os << ",ch" << c;
    os << '\n';
    char buf[32];
    for (std::size_t k = 0; k < w.length(); ++k) {
        os << k;
        for (std::size_t c = 0; c < w.channels(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", w.at(k, c));
            os << ',' << buf;
        }
        os << '\n';
    }
}

void write_window_csv(const std::filesystem::path& path, const Window& w)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open " + path.string() + " for writing");
    write_window_csv(os, w);
    if (!os) throw Error("failed writing " + path.string());
}

namespace {

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_double(const std::string& s, std::size_t row)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw DomainError("bad numeric cell '" + s + "' in row " + std::to_string(row));
    return v;
}

}  // namespace

Window read_window_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line)) throw DomainError("empty window CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_csv(line);
    if (header.size() < 2 || header[0] != "lag") throw DomainError("window CSV header must start with 'lag'");
    for (std::size_t c = 1; c < header.size(); ++c)
        if (header[c] != "ch" + std::to_string(c - 1)) throw DomainError("unexpected column '" + header[c] + "'");
    const std::size_t n = header.size() - 1;

    std::vector<std::vector<double>> rows;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != n + 1) throw DomainError("row " + std::to_string(rows.size()) + " has wrong column count");
        if (cells[0] != std::to_string(rows.size()))
            throw DomainError("lag column must count 0,1,2,...; got '" + cells[0] + "'");
        std::vector<double> r(n);
        for (std::size_t c = 0; c < n; ++c) r[c] = parse_double(cells[c + 1], rows.size());
        rows.push_back(std::move(r));
    }
    Eigen::MatrixXd data(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < rows.size(); ++k)
        for (std::size_t c = 0; c < n; ++c) data(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(c)) = rows[k][c];
    return Window(std::move(data));
}

Window read_window_csv(const std::filesystem::path& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open " + path.string());
    return read_window_csv(is);
}

}  // namespace rcu
