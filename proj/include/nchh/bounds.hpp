#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nchh/classcheck.hpp"
#include "nchh/core.hpp"
#include "nchh/errfun.hpp"
#include "nchh/quadrature.hpp"

namespace nchh {

/// Certified range for the numerical integral mean. `lower > upper` is a valid
/// result: it shows the class hypothesis cannot hold for the given data.
struct Envelope {
    double lower = 0.0;
    double upper = 0.0;

    bool empty() const noexcept { return lower > upper; }
};

struct EnTerm {
    std::size_t n;
    double value;
};

// All bound operations take f(a), f(b) and f((a+b)/2) as scalars and evaluate
// Phi only at (b-a)/n, (b-a)/(2n) or b-a.

/// [f(a) - (n/2) Phi((b-a)/n), f(b) + (n/2) Phi((b-a)/n)], same shape for all three rules.
Envelope monotone_bounds(Rule rule, double fa, double fb, const ErrorFunction& phi, const Interval& interval,
                         std::size_t n);

/// [max(fa, fb) - (n/2) Phi((b-a)/n), min(fa, fb) + (n/2) Phi((b-a)/n)].
Envelope holder_bounds(Rule rule, double fa, double fb, const ErrorFunction& phi, const Interval& interval,
                       std::size_t n);

/// n-free version of monotone_bounds: [f(a) - Phi(b-a)/2, f(b) + Phi(b-a)/2].
/// Throws UnsupportedError when Phi is shown not to be superadditive.
Envelope superadditive_monotone_bounds(Rule rule, double fa, double fb, const ErrorFunction& phi,
                                       const Interval& interval);

/// n-free version of holder_bounds.
Envelope superadditive_holder_bounds(Rule rule, double fa, double fb, const ErrorFunction& phi,
                                     const Interval& interval);

/// E_n = (n^2+2)/12 Phi((b-a)/n) for even n, (n^2-1)/12 Phi((b-a)/n) + Phi((b-a)/(2n)) for odd n.
EnTerm e_n(const ErrorFunction& phi, const Interval& interval, std::size_t n);

/// Trapezoid envelope for Phi-convex f: [f_mid - E_n, (fa+fb)/2 + (n^2-1)/6 Phi((b-a)/n)].
Envelope convex_trapezoid_bounds(double f_mid, double fa, double fb, const ErrorFunction& phi,
                                 const Interval& interval, std::size_t n);

/// Intersection of the convex envelope for f with the mirrored one obtained from -f.
Envelope affine_trapezoid_bounds(double f_mid, double fa, double fb, const ErrorFunction& phi,
                                 const Interval& interval, std::size_t n);

enum class Hypothesis { NotChecked, Verified, Unverified };

std::string_view to_string(Hypothesis h) noexcept;

struct BoundCertificate {
    Rule rule = Rule::Trapezoid;
    std::size_t n = 0;
    FunctionClass cls = FunctionClass::Monotone;
    std::string phi;       ///< error function label
    std::string theorem;   ///< which bound produced the envelope, e.g. "monotone.simpson"
    bool stated = true;    ///< false for forms extended by analogy to other rules
    double a = 0.0;
    double b = 0.0;
    std::string function;  ///< function label
    double mean = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double margin_lower = 0.0;  ///< mean - lower
    double margin_upper = 0.0;  ///< upper - mean
    double tol = 0.0;           ///< 1e-9 (1 + |mean|)
    bool holds = false;
    bool n_free = false;
    bool empty_envelope = false;
    Hypothesis hypothesis = Hypothesis::NotChecked;
    std::optional<ClassReport> class_report;
    std::vector<std::string> notes;
};

struct CertifyOptions {
    bool verify = false;
    bool n_free = false;
    std::size_t grid_points = kDefaultGridPoints;
    std::size_t t_samples = kDefaultTSamples;
};

/// Runs the rule, evaluates f at a, b and the midpoint, and applies the bound for `cls`.
///
/// Throws ParityError for an inadmissible n and UnsupportedError for class/rule
/// pairs without a bound (convex or affine with Simpson rules, n-free convex).
/// A failed class check does not throw; the certificate is marked Unverified.
BoundCertificate certify(const FunctionSpec& f, const ErrorFunction& phi, FunctionClass cls, Rule rule,
                         const Interval& interval, std::size_t n, const CertifyOptions& options = {});

/// Holds flag for a mean against an envelope, tolerance 1e-9 (1 + |mean|).
bool envelope_holds(double mean, const Envelope& env) noexcept;

struct IdentityCheck {
    std::string_view tag;
    std::uint64_t n;
    std::int64_t sum;                ///< literal left-hand sum
    std::int64_t closed_numerator;   ///< closed form = numerator / denominator
    std::int64_t closed_denominator;
    bool pass;                       ///< sum * denominator == numerator
};

/// The integer weight-sum identities behind the bound constants, checked by literal
/// summation for every admissible n <= n_max:
///   odd-weights          sum_{i=1}^{n} (2i-1) = n^2
///   simpson-weights      sum_{i=1}^{n/2} (6i-1) + (6i-5) = 3n^2/2            (n even)
///   simpson38-weights    sum_{k=1}^{n/3} (24k-12) = 4n^2/3                   (3 | n)
///   even-square-weights  2 sum_{i=1}^{n/2} (2i-1)^2 = (n^3-n)/3              (n even)
///   midpoint-weights     2 sum_{i=1}^{n/2} (2i-1)(n-(2i-1)) = n(n^2+2)/6     (n even)
///   odd-midpoint-weights 2 sum_{i=1}^{(n-1)/2} 2i(n-2i) = (n^3-n)/6          (n odd)
std::vector<IdentityCheck> identity_suite(std::uint64_t n_max);

inline constexpr std::string_view kIdentityTags[] = {
    "odd-weights",       "simpson-weights",  "simpson38-weights",
    "even-square-weights", "midpoint-weights", "odd-midpoint-weights",
};

}  // namespace nchh
