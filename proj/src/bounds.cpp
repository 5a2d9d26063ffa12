#include "nchh/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "nchh/errors.hpp"

namespace nchh {

namespace {

double step_phi(const ErrorFunction& phi, const Interval& interval, std::size_t n) {
    return phi(interval.length() / static_cast<double>(n));
}

// (n/2) Phi((b-a)/n)
double half_n_term(const ErrorFunction& phi, const Interval& interval, std::size_t n) {
    return 0.5 * static_cast<double>(n) * step_phi(phi, interval, n);
}

// (n^2-1)/6 Phi((b-a)/n)
double chord_term(const ErrorFunction& phi, const Interval& interval, std::size_t n) {
    const double dn = static_cast<double>(n);
    return (dn * dn - 1.0) / 6.0 * step_phi(phi, interval, n);
}

void require_superadditive(const ErrorFunction& phi) {
    const auto report = is_superadditive(phi);
    if (report.verdict == Superadditivity::No) {
        throw UnsupportedError("n-free bounds need a superadditive error function; " + phi.label() +
                               " is not superadditive");
    }
}

void require_n(std::size_t n) {
    if (n == 0) throw InvalidArgument("n must be positive");
}

}  // namespace

Envelope monotone_bounds(Rule rule, double fa, double fb, const ErrorFunction& phi, const Interval& interval,
                         std::size_t n) {
    require_admissible(rule, n);
    const double slack = half_n_term(phi, interval, n);
    return {fa - slack, fb + slack};
}

Envelope holder_bounds(Rule rule, double fa, double fb, const ErrorFunction& phi, const Interval& interval,
                       std::size_t n) {
    require_admissible(rule, n);
    const double slack = half_n_term(phi, interval, n);
    return {std::max(fa, fb) - slack, std::min(fa, fb) + slack};
}

Envelope superadditive_monotone_bounds(Rule, double fa, double fb, const ErrorFunction& phi,
                                       const Interval& interval) {
    require_superadditive(phi);
    const double slack = 0.5 * phi(interval.length());
    return {fa - slack, fb + slack};
}

Envelope superadditive_holder_bounds(Rule, double fa, double fb, const ErrorFunction& phi,
                                     const Interval& interval) {
    require_superadditive(phi);
    const double slack = 0.5 * phi(interval.length());
    return {std::max(fa, fb) - slack, std::min(fa, fb) + slack};
}

EnTerm e_n(const ErrorFunction& phi, const Interval& interval, std::size_t n) {
    require_n(n);
    const double dn = static_cast<double>(n);
    const double step = step_phi(phi, interval, n);
    if (n % 2 == 0) {
        return {n, (dn * dn + 2.0) / 12.0 * step};
    }
    return {n, (dn * dn - 1.0) / 12.0 * step + phi(interval.length() / (2.0 * dn))};
}

Envelope convex_trapezoid_bounds(double f_mid, double fa, double fb, const ErrorFunction& phi,
                                 const Interval& interval, std::size_t n) {
    require_n(n);
    return {f_mid - e_n(phi, interval, n).value, 0.5 * (fa + fb) + chord_term(phi, interval, n)};
}

Envelope affine_trapezoid_bounds(double f_mid, double fa, double fb, const ErrorFunction& phi,
                                 const Interval& interval, std::size_t n) {
    require_n(n);
    const double en = e_n(phi, interval, n).value;
    const double chord = chord_term(phi, interval, n);
    const double ends = 0.5 * (fa + fb);
    return {std::max(f_mid - en, ends - chord), std::min(f_mid + en, ends + chord)};
}

std::string_view to_string(Hypothesis h) noexcept {
    switch (h) {
    case Hypothesis::NotChecked: return "not-checked";
    case Hypothesis::Verified: return "verified";
    case Hypothesis::Unverified: return "hypothesis-unverified";
    }
    return "?";
}

bool envelope_holds(double mean, const Envelope& env) noexcept {
    const double tol = 1e-9 * (1.0 + std::fabs(mean));
    return env.lower - tol <= mean && mean <= env.upper + tol;
}

BoundCertificate certify(const FunctionSpec& f, const ErrorFunction& phi, FunctionClass cls, Rule rule,
                         const Interval& interval, std::size_t n, const CertifyOptions& options) {
    require_admissible(rule, n);
    const bool chord_class = cls == FunctionClass::Convex || cls == FunctionClass::Affine;
    if (chord_class && rule != Rule::Trapezoid) {
        throw UnsupportedError("no " + std::string(to_string(cls)) + " bound is available for the " +
                               std::string(to_string(rule)) +
                               " rule; only the trapezoid form has been derived");
    }
    if (chord_class && options.n_free) {
        throw UnsupportedError("n-free bounds exist only for the monotone and holder classes");
    }
    if (interval.length() > phi.domain_length()) {
        throw InvalidArgument("interval is longer than the error function's domain");
    }

    BoundCertificate cert;
    cert.rule = rule;
    cert.n = n;
    cert.cls = cls;
    cert.phi = phi.label();
    cert.a = interval.a();
    cert.b = interval.b();
    cert.function = f.label();
    cert.n_free = options.n_free;

    cert.mean = integrate(rule, f, interval, n).mean;
    const double fa = f(interval.a());
    const double fb = f(interval.b());

    const std::string rule_name(to_string(rule));
    Envelope env;
    switch (cls) {
    case FunctionClass::Monotone:
        if (options.n_free) {
            env = superadditive_monotone_bounds(rule, fa, fb, phi, interval);
            cert.theorem = "monotone-superadditive." + rule_name;
            cert.stated = rule == Rule::Trapezoid;
        } else {
            env = monotone_bounds(rule, fa, fb, phi, interval, n);
            cert.theorem = "monotone." + rule_name;
        }
        break;
    case FunctionClass::Holder:
        if (options.n_free) {
            env = superadditive_holder_bounds(rule, fa, fb, phi, interval);
            cert.theorem = "holder-superadditive." + rule_name;
            cert.stated = rule == Rule::Simpson;
        } else {
            env = holder_bounds(rule, fa, fb, phi, interval, n);
            cert.theorem = "holder." + rule_name;
        }
        break;
    case FunctionClass::Convex:
    case FunctionClass::Affine: {
        const double f_mid = f(interval.midpoint());
        if (cls == FunctionClass::Convex) {
            env = convex_trapezoid_bounds(f_mid, fa, fb, phi, interval, n);
            cert.theorem = "convex.trapezoid";
        } else {
            env = affine_trapezoid_bounds(f_mid, fa, fb, phi, interval, n);
            cert.theorem = "affine.trapezoid";
        }
        if (n == 1) cert.notes.emplace_back("n=1: single-panel case, E_1 = Phi((b-a)/2)");
        break;
    }
    }
    if (options.n_free && phi.kind() == ErrorFunction::Kind::Expression) {
        cert.notes.emplace_back("superadditivity of the expression error function checked on a grid only");
    }
    if (!cert.stated) {
        cert.notes.emplace_back("n-free form extended by analogy to the " + rule_name + " rule");
    }

    cert.lower = env.lower;
    cert.upper = env.upper;
    cert.margin_lower = cert.mean - env.lower;
    cert.margin_upper = env.upper - cert.mean;
    cert.tol = 1e-9 * (1.0 + std::fabs(cert.mean));
    cert.holds = envelope_holds(cert.mean, env);
    cert.empty_envelope = env.empty();
    if (cert.empty_envelope) cert.notes.emplace_back("empty envelope: the class hypothesis fails for this data");

    if (options.verify) {
        cert.class_report = verify_class(cls, f, phi, interval, options.grid_points, options.t_samples);
        cert.hypothesis = cert.class_report->pass ? Hypothesis::Verified : Hypothesis::Unverified;
    }
    return cert;
}

std::vector<IdentityCheck> identity_suite(std::uint64_t n_max) {
    using i64 = std::int64_t;
    std::vector<IdentityCheck> out;
    auto record = [&](std::string_view tag, std::uint64_t n, i64 sum, i64 num, i64 den) {
        out.push_back({tag, n, sum, num, den, sum * den == num});
    };
    for (std::uint64_t un = 1; un <= n_max; ++un) {
        const i64 n = static_cast<i64>(un);
        {
            i64 s = 0;
            for (i64 i = 1; i <= n; ++i) s += 2 * i - 1;
            record(kIdentityTags[0], un, s, n * n, 1);
        }
        if (n % 2 == 0) {
            i64 s = 0;
            for (i64 i = 1; i <= n / 2; ++i) s += (6 * i - 1) + (6 * i - 5);
            record(kIdentityTags[1], un, s, 3 * n * n, 2);
        }
        if (n % 3 == 0) {
            i64 s = 0;
            for (i64 k = 1; k <= n / 3; ++k) s += 24 * k - 12;
            record(kIdentityTags[2], un, s, 4 * n * n, 3);
        }
        if (n % 2 == 0) {
            i64 s = 0;
            for (i64 i = 1; i <= n / 2; ++i) s += (2 * i - 1) * (2 * i - 1);
            record(kIdentityTags[3], un, 2 * s, n * n * n - n, 3);
        }
        if (n % 2 == 0) {
            i64 s = 0;
            for (i64 i = 1; i <= n / 2; ++i) s += (2 * i - 1) * (n - (2 * i - 1));
            record(kIdentityTags[4], un, 2 * s, n * (n * n + 2), 6);
        }
        if (n % 2 == 1) {
            i64 s = 0;
            for (i64 i = 1; i <= (n - 1) / 2; ++i) s += 2 * i * (n - 2 * i);
            record(kIdentityTags[5], un, 2 * s, n * n * n - n, 6);
        }
    }
    return out;
}

}  // namespace nchh
