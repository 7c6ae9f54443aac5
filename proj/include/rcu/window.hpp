#pragma once

// Finite sample paths of an R^n-valued input process.
//
// Row k of a window holds z_{-k}: row 0 is the most recent input, the last row
// the oldest. Every module uses this orientation.

#include <Eigen/Dense>

#include <cstddef>
#include <filesystem>
#include <iosfwd>

namespace rcu {

class Window {
public:
    /// Takes a T x n array in lag order. Throws DomainError on empty shapes or non-finite entries.
    explicit Window(Eigen::MatrixXd data);

    /// Number of lags T.
    std::size_t length() const { return static_cast<std::size_t>(data_.rows()); }
    /// Channel count n.
    std::size_t channels() const { return static_cast<std::size_t>(data_.cols()); }

    /// z_{-lag} as a row vector.
    auto at(std::size_t lag) const { return data_.row(static_cast<Eigen::Index>(lag)); }
    double at(std::size_t lag, std::size_t channel) const
    {
        return data_(static_cast<Eigen::Index>(lag), static_cast<Eigen::Index>(channel));
    }

    const Eigen::MatrixXd& data() const { return data_; }

    /// Rows [first_lag, first_lag + length): the path as seen from time -first_lag.
    Window shifted(std::size_t first_lag, std::size_t length) const;
    /// The most recent `length` rows.
    Window truncated(std::size_t length) const { return shifted(0, length); }

    /// (z_0^T, z_{-1}^T, ..., z_{-K}^T)^T, the stacked vector of the K+1 most recent inputs.
    Eigen::VectorXd stacked(std::size_t K) const;

private:
    Eigen::MatrixXd data_;
};

/// CSV with header `lag,ch0,...,ch{n-1}` and one row per lag, values printed with 17 significant digits.
void write_window_csv(std::ostream& os, const Window& w);
void write_window_csv(const std::filesystem::path& path, const Window& w);
Window read_window_csv(std::istream& is);
Window read_window_csv(const std::filesystem::path& path);

}  // namespace rcu
