#include "nchh/quadrature.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "nchh/errors.hpp"

namespace nchh {

namespace {

constexpr std::size_t kReferenceStart = 64;
constexpr std::size_t kReferenceCap = std::size_t{1} << 22;

// mean = scale * sum_i w_i f(x_i), with weights from `weight(i)`.
template <class Weight>
QuadratureResult weighted_mean(Rule rule, const FunctionSpec& f, const Interval& interval, std::size_t n,
                               double scale, Weight weight) {
    const auto partition = make_partition(interval, n);
    CompensatedSum sum;
    for (std::size_t i = 0; i <= n; ++i) {
        sum.add(weight(i) * f(partition[i]));
    }
    const double mean = scale * sum.value();
    return {rule, n, mean * interval.length(), mean};
}

}  // namespace

void CompensatedSum::add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
        correction_ += (sum_ - t) + x;
    } else {
        correction_ += (x - t) + sum_;
    }
    sum_ = t;
}

std::string_view to_string(Rule rule) noexcept {
    switch (rule) {
    case Rule::Trapezoid: return "trapezoid";
    case Rule::Simpson: return "simpson";
    case Rule::Simpson38: return "simpson38";
    }
    return "?";
}

std::optional<Rule> rule_from_string(std::string_view name) noexcept {
    if (name == "trapezoid") return Rule::Trapezoid;
    if (name == "simpson") return Rule::Simpson;
    if (name == "simpson38") return Rule::Simpson38;
    return std::nullopt;
}

bool admissible(Rule rule, std::size_t n) noexcept {
    if (n == 0) return false;
    switch (rule) {
    case Rule::Trapezoid: return true;
    case Rule::Simpson: return n % 2 == 0;
    case Rule::Simpson38: return n % 3 == 0;
    }
    return false;
}

void require_admissible(Rule rule, std::size_t n) {
    if (admissible(rule, n)) return;
    std::ostringstream os;
    os << to_string(rule) << " rule cannot use n = " << n;
    switch (rule) {
    case Rule::Trapezoid: os << " (n must be positive)"; break;
    case Rule::Simpson: os << " (n must be a positive even number)"; break;
    case Rule::Simpson38: os << " (n must be a positive multiple of 3)"; break;
    }
    throw ParityError(os.str());
}

QuadratureResult trapezoid(const FunctionSpec& f, const Interval& interval, std::size_t n) {
    require_admissible(Rule::Trapezoid, n);
    return weighted_mean(Rule::Trapezoid, f, interval, n, 1.0 / (2.0 * static_cast<double>(n)),
                         [n](std::size_t i) { return (i == 0 || i == n) ? 1.0 : 2.0; });
}

QuadratureResult simpson(const FunctionSpec& f, const Interval& interval, std::size_t n) {
    require_admissible(Rule::Simpson, n);
    return weighted_mean(Rule::Simpson, f, interval, n, 1.0 / (3.0 * static_cast<double>(n)),
                         [n](std::size_t i) {
                             if (i == 0 || i == n) return 1.0;
                             return i % 2 == 1 ? 4.0 : 2.0;
                         });
}

QuadratureResult simpson38(const FunctionSpec& f, const Interval& interval, std::size_t n) {
    require_admissible(Rule::Simpson38, n);
    // Block boundaries x_{3i} shared by two blocks carry weight 1 + 1.
    return weighted_mean(Rule::Simpson38, f, interval, n, 3.0 / (8.0 * static_cast<double>(n)),
                         [n](std::size_t i) {
                             if (i == 0 || i == n) return 1.0;
                             return i % 3 == 0 ? 2.0 : 3.0;
                         });
}

QuadratureResult integrate(Rule rule, const FunctionSpec& f, const Interval& interval, std::size_t n) {
    switch (rule) {
    case Rule::Trapezoid: return trapezoid(f, interval, n);
    case Rule::Simpson: return simpson(f, interval, n);
    case Rule::Simpson38: return simpson38(f, interval, n);
    }
    throw InvalidArgument("unknown rule");
}

double reference_integral(const FunctionSpec& f, const Interval& interval, double target_tol) {
    if (!(target_tol > 0.0)) throw InvalidArgument("reference tolerance must be positive");
    const double a = interval.a();
    const double len = interval.length();

    // Trapezoid sums are refined by adding midpoints, reusing earlier evaluations.
    std::size_t n = kReferenceStart;
    double node_sum;  // f(x_0)/2 + f(x_1) + ... + f(x_{n-1}) + f(x_n)/2
    {
        const auto p = make_partition(interval, n);
        CompensatedSum s;
        s.add(0.5 * f(p[0]));
        for (std::size_t i = 1; i < n; ++i) s.add(f(p[i]));
        s.add(0.5 * f(p[n]));
        node_sum = s.value();
    }
    double coarse = len * node_sum / static_cast<double>(n);

    for (;;) {
        const std::size_t fine_n = 2 * n;
        CompensatedSum s;
        s.add(node_sum);
        for (std::size_t i = 1; i < fine_n; i += 2) {
            s.add(f(a + (static_cast<double>(i) * len) / static_cast<double>(fine_n)));
        }
        node_sum = s.value();
        const double fine = len * node_sum / static_cast<double>(fine_n);
        if (std::fabs(fine - coarse) < target_tol) {
            return (4.0 * fine - coarse) / 3.0;
        }
        if (fine_n >= kReferenceCap) {
            std::ostringstream os;
            os.precision(17);
            os << "reference integral of '" << f.label() << "' did not reach tolerance " << target_tol
               << " by n = " << fine_n << " (last estimates " << coarse << ", " << fine << ")";
            throw ConvergenceError(coarse, fine, os.str());
        }
        coarse = fine;
        n = fine_n;
    }
}

}  // namespace nchh
