#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nchh/core.hpp"
#include "nchh/errfun.hpp"

namespace nchh {

enum class FunctionClass { Monotone, Holder, Convex, Affine };

std::string_view to_string(FunctionClass cls) noexcept;
std::optional<FunctionClass> class_from_string(std::string_view name) noexcept;

inline constexpr std::size_t kDefaultGridPoints = 201;
inline constexpr std::size_t kDefaultTSamples = 9;  // {0, 1/8, ..., 1}

struct Witness {
    double x = 0.0;
    double y = 0.0;
    std::optional<double> t;  ///< only for the convex / affine classes
};

/// Outcome of sampling a class inequality; pass means no violation above `tol`
/// among `samples_checked` samples, not a proof.
struct ClassReport {
    FunctionClass cls = FunctionClass::Monotone;
    bool pass = false;
    double worst_violation = 0.0;  ///< max over samples of lhs - rhs
    Witness witness;               ///< lexicographically first sample attaining the max
    std::size_t samples_checked = 0;
    double tol = 0.0;              ///< 1e-9 (1 + |f(a)| + |f(b)|)
};

/// f(x) <= f(y) + Phi(y - x) for grid pairs x < y.
ClassReport verify_monotone(const FunctionSpec& f, const ErrorFunction& phi, const Interval& interval,
                            std::size_t grid_points = kDefaultGridPoints);

/// |f(x) - f(y)| <= Phi(|y - x|) for grid pairs.
ClassReport verify_holder(const FunctionSpec& f, const ErrorFunction& phi, const Interval& interval,
                          std::size_t grid_points = kDefaultGridPoints);

/// f(tx + (1-t)y) <= t f(x) + (1-t) f(y) + t Phi((1-t)|y-x|) + (1-t) Phi(t|y-x|).
///
/// The t grid is k / (t_samples - 1), closed under t -> 1 - t, with 1/2 added when
/// missing; t_samples must be at least 3.
ClassReport verify_convex(const FunctionSpec& f, const ErrorFunction& phi, const Interval& interval,
                          std::size_t grid_points = kDefaultGridPoints, std::size_t t_samples = kDefaultTSamples);

/// Two-sided form of verify_convex on the absolute chord defect.
ClassReport verify_affine(const FunctionSpec& f, const ErrorFunction& phi, const Interval& interval,
                          std::size_t grid_points = kDefaultGridPoints, std::size_t t_samples = kDefaultTSamples);

/// As above with the t values used verbatim (each in [0, 1]). Only grid pairs x < y
/// are visited, so a t set that is not closed under t -> 1 - t checks one orientation.
ClassReport verify_convex(const FunctionSpec& f, const ErrorFunction& phi, const Interval& interval,
                          std::size_t grid_points, std::span<const double> t_values);
ClassReport verify_affine(const FunctionSpec& f, const ErrorFunction& phi, const Interval& interval,
                          std::size_t grid_points, std::span<const double> t_values);

ClassReport verify_class(FunctionClass cls, const FunctionSpec& f, const ErrorFunction& phi,
                         const Interval& interval, std::size_t grid_points = kDefaultGridPoints,
                         std::size_t t_samples = kDefaultTSamples);

/// max(0, max over grid pairs x < y of f(x) - f(y)).
double min_epsilon_monotone(const FunctionSpec& f, const Interval& interval,
                            std::size_t grid_points = kDefaultGridPoints);

/// The t values used by verify_convex / verify_affine.
std::vector<double> t_grid(std::size_t t_samples);

}  // namespace nchh
