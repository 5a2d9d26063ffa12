#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nchh/core.hpp"
#include "nchh/expr.hpp"

namespace nchh {

/// A nonnegative error function Phi on [0, domain_length].
///
/// Catalog kinds are validated analytically; the expression kind is sampled on a
/// 1024-point grid at construction and rejected if it dips below zero.
class ErrorFunction {
public:
    enum class Kind { Constant, Power, Affine, Expression };

    /// Phi(d) = eps.
    static ErrorFunction constant(double eps, double domain_length);
    /// Phi(d) = c d^p, requires c >= 0 and p >= 0 (p = 0 means Phi = c).
    static ErrorFunction power(double c, double p, double domain_length);
    /// Phi(d) = c d + d0, requires c, d0 >= 0.
    static ErrorFunction affine(double c, double d0, double domain_length);
    /// Phi given by an expression in the variable "d".
    static ErrorFunction expression(ExprPtr tree, std::string source, double domain_length);

    Kind kind() const noexcept { return kind_; }
    /// Canonical textual form, e.g. "pow:1,2".
    const std::string& label() const noexcept { return label_; }
    double domain_length() const noexcept { return domain_length_; }
    /// (eps) for constant, (c, p) for power, (c, d0) for affine, empty for expressions.
    const std::vector<double>& parameters() const noexcept { return params_; }

    /// Phi(d). Throws EvaluationError when d is outside [0, domain_length] or
    /// when an expression kind produces a negative value (witness d).
    double operator()(double d) const;

    /// True for the zero function (only decidable for catalog kinds).
    bool is_identically_zero() const noexcept;

private:
    ErrorFunction() = default;
    double raw(double d) const;

    Kind kind_ = Kind::Constant;
    std::string label_;
    double domain_length_ = 0.0;
    std::vector<double> params_;
    ExprPtr tree_;
};

inline double eval_phi(const ErrorFunction& phi, double d) { return phi(d); }

/// Parses "const:<eps>", "pow:<c>,<p>", "affine:<c>,<d0>" or "expr:<expression in d>".
/// Throws ParseError, including for coefficients that would make Phi negative.
ErrorFunction parse_error_function(std::string_view text, double domain_length);

enum class Superadditivity {
    Yes,        ///< proven for the catalog kind
    No,         ///< a witness pair violates Phi(x) + Phi(y) <= Phi(x + y)
    Empirical,  ///< no violation on the grid, no analytic proof
};

std::string_view to_string(Superadditivity verdict) noexcept;

struct SuperadditivityReport {
    Superadditivity verdict = Superadditivity::Empirical;
    /// Violating pair for `No`; otherwise the pair closest to violation on the grid (if searched).
    std::optional<std::pair<double, double>> witness;
    /// Phi(x) + Phi(y) - Phi(x + y) at the witness.
    double excess = 0.0;
};

inline constexpr std::size_t kDefaultSuperadditivityGrid = 128;

/// Checks Phi(x) + Phi(y) <= Phi(x + y) (slack 1e-12 (1 + |Phi(x + y)|)).
/// Catalog kinds are decided analytically; expressions are searched on a grid of
/// `grid_size` points over [0, domain_length]. Throws InvalidArgument if grid_size < 2.
SuperadditivityReport is_superadditive(const ErrorFunction& phi,
                                       std::size_t grid_size = kDefaultSuperadditivityGrid);

/// n Phi((b - a) / n) <= Phi(b - a) + 1e-12 (1 + |Phi(b - a)|).
bool telescoped_bound_check(const ErrorFunction& phi, const Interval& interval, std::size_t n);

/// (n, n^2 Phi((b - a) / n)) for n = 1..n_max.
std::vector<std::pair<std::size_t, double>> limit_sequence(const ErrorFunction& phi,
                                                           const Interval& interval,
                                                           std::size_t n_max);

}  // namespace nchh
