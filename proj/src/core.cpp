#include "nchh/core.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "nchh/errors.hpp"

namespace nchh {

Interval::Interval(double a, double b) : a_(a), b_(b) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw InvalidArgument("interval endpoints must be finite");
    }
    if (!(a < b)) {
        std::ostringstream os;
        os << "interval [" << a << ", " << b << "] must satisfy a < b";
        throw InvalidArgument(os.str());
    }
    if (!std::isfinite(b - a)) {
        throw InvalidArgument("interval length overflows");
    }
}

double Interval::midpoint() const noexcept { return std::midpoint(a_, b_); }

Partition make_partition(const Interval& interval, std::size_t n) {
    if (n == 0) {
        throw InvalidArgument("partition needs at least one sub-interval");
    }
    const double a = interval.a();
    const double len = interval.length();
    const double dn = static_cast<double>(n);
    std::vector<double> nodes(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        nodes[i] = a + (static_cast<double>(i) * len) / dn;
    }
    nodes[n] = interval.b();
    return Partition(interval, std::move(nodes));
}

FunctionSpec::FunctionSpec(std::string label, Callable fn)
    : label_(std::move(label)), fn_(std::make_shared<const Callable>(std::move(fn))) {
    if (!*fn_) {
        throw InvalidArgument("function '" + label_ + "' has no body");
    }
}

double FunctionSpec::operator()(double x) const {
    const double y = (*fn_)(x);
    if (!std::isfinite(y)) {
        std::ostringstream os;
        os.precision(17);
        os << "'" << label_ << "' is not finite at x = " << x;
        throw EvaluationError(x, os.str());
    }
    return y;
}

}  // namespace nchh
