#pragma once

#include <stdexcept>
#include <string>

namespace qcournot {

/// Base class for everything this library throws on purpose.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Pivoting detected rank deficiency; carries the offending pivot magnitude.
class singular_matrix_error : public error {
public:
    singular_matrix_error(std::size_t column, double pivot, const std::string& msg)
        : error(msg), column_(column), pivot_(pivot) {}
    std::size_t column() const noexcept { return column_; }
    double pivot() const noexcept { return pivot_; }

private:
    std::size_t column_;
    double pivot_;
};

/// An iterative method ran out of its iteration budget.
class no_convergence_error : public error {
public:
    no_convergence_error(std::size_t iterations, const std::string& msg)
        : error(msg), iterations_(iterations) {}
    std::size_t iterations() const noexcept { return iterations_; }

private:
    std::size_t iterations_;
};

/// Input outside the mathematical domain of an operation.
class domain_error : public error {
public:
    explicit domain_error(const std::string& msg) : error(msg) {}
};

/// A closed-form denominator degenerated; names the computation stage.
class degenerate_denominator_error : public error {
public:
    degenerate_denominator_error(const std::string& stage, const std::string& msg)
        : error(msg), stage_(stage) {}
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

/// A bracket does not straddle a sign change.
class no_sign_change_error : public error {
public:
    no_sign_change_error(double lo, double hi, const std::string& msg)
        : error(msg), lo_(lo), hi_(hi) {}
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

/// Malformed or inconsistent run configuration.
class config_error : public error {
public:
    explicit config_error(const std::string& msg) : error(msg) {}
};

} // namespace qcournot
