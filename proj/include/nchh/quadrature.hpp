#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "nchh/core.hpp"

namespace nchh {

enum class Rule { Trapezoid, Simpson, Simpson38 };

std::string_view to_string(Rule rule) noexcept;
std::optional<Rule> rule_from_string(std::string_view name) noexcept;

/// Trapezoid: any n >= 1. Simpson: n even. Simpson 3/8: n a multiple of 3.
bool admissible(Rule rule, std::size_t n) noexcept;

/// Throws ParityError when `admissible(rule, n)` is false.
void require_admissible(Rule rule, std::size_t n);

struct QuadratureResult {
    Rule rule;
    std::size_t n;
    double value;  ///< approximation of the integral over [a, b]
    double mean;   ///< value / (b - a); value is formed as mean * (b - a)
};

QuadratureResult trapezoid(const FunctionSpec& f, const Interval& interval, std::size_t n);
QuadratureResult simpson(const FunctionSpec& f, const Interval& interval, std::size_t n);
QuadratureResult simpson38(const FunctionSpec& f, const Interval& interval, std::size_t n);

/// Dispatches on `rule`. Each rule evaluates f exactly n + 1 times.
QuadratureResult integrate(Rule rule, const FunctionSpec& f, const Interval& interval, std::size_t n);

/// Composite trapezoid values at n = 64, 128, ... until two successive values differ by
/// less than `target_tol`; returns the Richardson value (4 T_2n - T_n) / 3.
/// Throws ConvergenceError past n = 2^22.
double reference_integral(const FunctionSpec& f, const Interval& interval, double target_tol);

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + correction_; }

private:
    double sum_ = 0.0;
    double correction_ = 0.0;
};

}  // namespace nchh
