#include "nchh/errfun.hpp"

#include <charconv>
#include <cmath>

#include "nchh/errors.hpp"

namespace nchh {

namespace {

constexpr std::size_t kExpressionValidationGrid = 1024;

// Shortest round-trip form.
std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void require_domain(double domain_length) {
    if (!(domain_length > 0.0) || !std::isfinite(domain_length)) {
        throw InvalidArgument("error function domain length must be positive and finite");
    }
}

double superadditivity_slack(double phi_sum) { return 1e-12 * (1.0 + std::fabs(phi_sum)); }

// Reads a comma separated list of finite reals, reporting offsets relative to the full text.
std::vector<double> parse_numbers(std::string_view body, std::size_t offset, std::size_t expected) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (true) {
        while (pos < body.size() && body[pos] == ' ') ++pos;
        double v = 0.0;
        const char* first = body.data() + pos;
        const char* last = body.data() + body.size();
        if (first != last && *first == '+') ++first;
        auto [ptr, ec] = std::from_chars(first, last, v, std::chars_format::general);
        if (ec != std::errc() || !std::isfinite(v)) {
            throw ParseError(offset + pos, "expected a finite number");
        }
        out.push_back(v);
        pos = static_cast<std::size_t>(ptr - body.data());
        while (pos < body.size() && body[pos] == ' ') ++pos;
        if (pos == body.size()) break;
        if (body[pos] != ',') throw ParseError(offset + pos, "expected ','");
        ++pos;
    }
    if (out.size() != expected) {
        throw ParseError(offset, "expected " + std::to_string(expected) + " parameter(s), got " +
                                     std::to_string(out.size()));
    }
    return out;
}

}  // namespace

ErrorFunction ErrorFunction::constant(double eps, double domain_length) {
    require_domain(domain_length);
    if (!(eps >= 0.0) || !std::isfinite(eps)) throw InvalidArgument("constant error function needs eps >= 0");
    ErrorFunction phi;
    phi.kind_ = Kind::Constant;
    phi.params_ = {eps};
    phi.domain_length_ = domain_length;
    phi.label_ = "const:" + format_number(eps);
    return phi;
}

ErrorFunction ErrorFunction::power(double c, double p, double domain_length) {
    require_domain(domain_length);
    if (!(c >= 0.0) || !std::isfinite(c)) throw InvalidArgument("power error function needs c >= 0");
    if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidArgument("power error function needs p >= 0");
    ErrorFunction phi;
    phi.kind_ = Kind::Power;
    phi.params_ = {c, p};
    phi.domain_length_ = domain_length;
    phi.label_ = "pow:" + format_number(c) + "," + format_number(p);
    return phi;
}

ErrorFunction ErrorFunction::affine(double c, double d0, double domain_length) {
    require_domain(domain_length);
    if (!(c >= 0.0) || !std::isfinite(c)) throw InvalidArgument("affine error function needs c >= 0");
    if (!(d0 >= 0.0) || !std::isfinite(d0)) throw InvalidArgument("affine error function needs d0 >= 0");
    ErrorFunction phi;
    phi.kind_ = Kind::Affine;
    phi.params_ = {c, d0};
    phi.domain_length_ = domain_length;
    phi.label_ = "affine:" + format_number(c) + "," + format_number(d0);
    return phi;
}

ErrorFunction ErrorFunction::expression(ExprPtr tree, std::string source, double domain_length) {
    require_domain(domain_length);
    if (!tree) throw InvalidArgument("expression error function has no body");
    ErrorFunction phi;
    phi.kind_ = Kind::Expression;
    phi.tree_ = std::move(tree);
    phi.domain_length_ = domain_length;
    phi.label_ = "expr:" + std::move(source);
    const auto grid = make_partition(Interval(0.0, domain_length), kExpressionValidationGrid - 1);
    for (double d : grid.nodes()) {
        phi(d);  // throws on negativity or evaluation failure
    }
    return phi;
}

double ErrorFunction::raw(double d) const {
    switch (kind_) {
    case Kind::Constant:
        return params_[0];
    case Kind::Power:
        // 0^0 is taken as 1 so that p = 0 is the constant c.
        return params_[1] == 0.0 ? params_[0] : params_[0] * std::pow(d, params_[1]);
    case Kind::Affine:
        return params_[0] * d + params_[1];
    case Kind::Expression:
        return tree_->evaluate(d);
    }
    return 0.0;
}

double ErrorFunction::operator()(double d) const {
    if (!(d >= 0.0 && d <= domain_length_)) {
        throw EvaluationError(d, "error function " + label_ + " evaluated at d = " + format_number(d) +
                                     " outside [0, " + format_number(domain_length_) + "]");
    }
    const double v = raw(d);
    if (!std::isfinite(v)) {
        throw EvaluationError(d, "error function " + label_ + " is not finite at d = " + format_number(d));
    }
    if (v < 0.0) {
        throw EvaluationError(d, "error function " + label_ + " is negative at d = " + format_number(d));
    }
    return v;
}

bool ErrorFunction::is_identically_zero() const noexcept {
    switch (kind_) {
    case Kind::Constant: return params_[0] == 0.0;
    case Kind::Power:
    case Kind::Affine: return params_[0] == 0.0 && (kind_ == Kind::Power || params_[1] == 0.0);
    case Kind::Expression: return false;
    }
    return false;
}

ErrorFunction parse_error_function(std::string_view text, double domain_length) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw ParseError(0, "error function must look like const:, pow:, affine: or expr:");
    }
    const std::string_view kind = text.substr(0, colon);
    const std::string_view body = text.substr(colon + 1);
    const std::size_t offset = colon + 1;
    if (body.empty()) throw ParseError(colon, "missing parameters after ':'");

    if (kind == "expr") {
        ParseOptions options;
        options.variable = "d";
        ExprPtr tree;
        try {
            tree = parse_expression(body, options);
        } catch (const ParseError& e) {
            throw ParseError(offset + e.position(), e.detail());
        }
        try {
            return ErrorFunction::expression(std::move(tree), std::string(body), domain_length);
        } catch (const EvaluationError& e) {
            throw ParseError(offset, "error function is not a nonnegative map on [0, " +
                                         format_number(domain_length) + "]: " + e.what());
        }
    }

    auto check_nonnegative = [&](double v, const char* name) {
        if (v < 0.0) {
            throw ParseError(offset, std::string(name) + " must be nonnegative, otherwise Phi is negative");
        }
    };
    if (kind == "const") {
        const auto v = parse_numbers(body, offset, 1);
        check_nonnegative(v[0], "eps");
        return ErrorFunction::constant(v[0], domain_length);
    }
    if (kind == "pow") {
        const auto v = parse_numbers(body, offset, 2);
        check_nonnegative(v[0], "coefficient c");
        check_nonnegative(v[1], "exponent p");
        return ErrorFunction::power(v[0], v[1], domain_length);
    }
    if (kind == "affine") {
        const auto v = parse_numbers(body, offset, 2);
        check_nonnegative(v[0], "slope c");
        check_nonnegative(v[1], "offset d0");
        return ErrorFunction::affine(v[0], v[1], domain_length);
    }
    throw ParseError(0, "unknown error function kind '" + std::string(kind) + "'");
}

std::string_view to_string(Superadditivity verdict) noexcept {
    switch (verdict) {
    case Superadditivity::Yes: return "yes";
    case Superadditivity::No: return "no";
    case Superadditivity::Empirical: return "empirically superadditive";
    }
    return "?";
}

SuperadditivityReport is_superadditive(const ErrorFunction& phi, std::size_t grid_size) {
    if (grid_size < 2) throw InvalidArgument("superadditivity grid needs at least 2 points");
    const double len = phi.domain_length();
    const auto& p = phi.parameters();

    auto quarter_witness = [&] {
        const double q = len / 4.0;
        SuperadditivityReport r;
        r.verdict = Superadditivity::No;
        r.witness = {q, q};
        r.excess = phi(q) + phi(q) - phi(q + q);
        return r;
    };

    switch (phi.kind()) {
    case ErrorFunction::Kind::Constant:
        if (p[0] > 0.0) return quarter_witness();
        return {Superadditivity::Yes, std::nullopt, 0.0};
    case ErrorFunction::Kind::Affine:
        if (p[1] > 0.0) return quarter_witness();
        return {Superadditivity::Yes, std::nullopt, 0.0};
    case ErrorFunction::Kind::Power:
        if (p[0] == 0.0 || p[1] >= 1.0) return {Superadditivity::Yes, std::nullopt, 0.0};
        if (p[1] == 0.0) return quarter_witness();
        break;  // 0 < p < 1: locate the worst pair on the grid
    case ErrorFunction::Kind::Expression:
        break;
    }

    const auto grid = make_partition(Interval(0.0, len), grid_size - 1);
    const auto nodes = grid.nodes();
    std::vector<double> values(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) values[i] = phi(nodes[i]);

    SuperadditivityReport worst;
    bool have = false;
    bool violated = false;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i; j < nodes.size(); ++j) {
            const double sum = nodes[i] + nodes[j];
            if (sum > len) break;
            const double whole = phi(sum);
            const double excess = values[i] + values[j] - whole;
            if (excess > superadditivity_slack(whole)) violated = true;
            if (!have || excess > worst.excess) {
                worst.excess = excess;
                worst.witness = {nodes[i], nodes[j]};
                have = true;
            }
        }
    }
    worst.verdict = violated ? Superadditivity::No : Superadditivity::Empirical;
    return worst;
}

bool telescoped_bound_check(const ErrorFunction& phi, const Interval& interval, std::size_t n) {
    if (n == 0) throw InvalidArgument("n must be positive");
    const double len = interval.length();
    const double whole = phi(len);
    const double parts = static_cast<double>(n) * phi(len / static_cast<double>(n));
    return parts <= whole + superadditivity_slack(whole);
}

std::vector<std::pair<std::size_t, double>> limit_sequence(const ErrorFunction& phi,
                                                           const Interval& interval,
                                                           std::size_t n_max) {
    if (n_max == 0) throw InvalidArgument("n_max must be positive");
    std::vector<std::pair<std::size_t, double>> out;
    out.reserve(n_max);
    const double len = interval.length();
    for (std::size_t n = 1; n <= n_max; ++n) {
        const double dn = static_cast<double>(n);
        out.emplace_back(n, dn * dn * phi(len / dn));
    }
    return out;
}

}  // namespace nchh
