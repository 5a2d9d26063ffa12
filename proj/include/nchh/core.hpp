#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace nchh {

/// Closed interval [a, b] with a < b.
class Interval {
public:
    /// Throws InvalidArgument unless a < b and both ends are finite.
    Interval(double a, double b);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double length() const noexcept { return b_ - a_; }
    double midpoint() const noexcept;

    bool contains(double x) const noexcept { return a_ <= x && x <= b_; }

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    double a_;
    double b_;
};

/// Equidistant partition a = x_0 < x_1 < ... < x_n = b.
class Partition {
public:
    const Interval& interval() const noexcept { return interval_; }
    std::size_t n() const noexcept { return nodes_.size() - 1; }
    /// Nominal spacing (b - a) / n.
    double step() const noexcept { return interval_.length() / static_cast<double>(n()); }
    std::span<const double> nodes() const noexcept { return nodes_; }
    double operator[](std::size_t i) const { return nodes_[i]; }

private:
    friend Partition make_partition(const Interval&, std::size_t);
    Partition(Interval interval, std::vector<double> nodes)
        : interval_(interval), nodes_(std::move(nodes)) {}

    Interval interval_;
    std::vector<double> nodes_;
};

/// Nodes are x_i = a + i (b - a) / n, with x_n pinned to b. Throws InvalidArgument for n = 0.
Partition make_partition(const Interval& interval, std::size_t n);

/// A deterministic real function of one variable together with a display label.
///
/// The callable must be pure; copies share it. Evaluation results that are not
/// finite are reported as EvaluationError rather than returned.
class FunctionSpec {
public:
    using Callable = std::function<double(double)>;

    FunctionSpec(std::string label, Callable fn);

    const std::string& label() const noexcept { return label_; }

    /// Throws EvaluationError (carrying x) on a domain violation or non-finite result.
    double operator()(double x) const;

private:
    std::string label_;
    std::shared_ptr<const Callable> fn_;
};

inline double evaluate(const FunctionSpec& f, double x) { return f(x); }

}  // namespace nchh
