#include "nchh/classcheck.hpp"

#include <algorithm>
#include <cmath>

#include "nchh/errors.hpp"

namespace nchh {

namespace {

struct Grid {
    std::vector<double> x;
    std::vector<double> fx;
};

Grid sample(const FunctionSpec& f, const ErrorFunction& phi, const Interval& interval, std::size_t grid_points) {
    if (grid_points < 2) throw InvalidArgument("class check grid needs at least 2 points");
    if (interval.length() > phi.domain_length()) {
        throw InvalidArgument("interval is longer than the error function's domain");
    }
    const auto p = make_partition(interval, grid_points - 1);
    Grid g;
    g.x.assign(p.nodes().begin(), p.nodes().end());
    g.fx.reserve(g.x.size());
    for (double x : g.x) g.fx.push_back(f(x));
    return g;
}

double class_tol(const Grid& g) { return 1e-9 * (1.0 + std::fabs(g.fx.front()) + std::fabs(g.fx.back())); }

// Keeps the first maximum in iteration order; callers iterate lexicographically.
class WorstTracker {
public:
    void offer(double violation, double x, double y, std::optional<double> t = std::nullopt) {
        ++count_;
        if (!have_ || violation > worst_) {
            worst_ = violation;
            witness_ = {x, y, t};
            have_ = true;
        }
    }

    ClassReport finish(FunctionClass cls, double tol) const {
        ClassReport r;
        r.cls = cls;
        r.worst_violation = worst_;
        r.witness = witness_;
        r.samples_checked = count_;
        r.tol = tol;
        r.pass = worst_ <= tol;
        return r;
    }

private:
    bool have_ = false;
    double worst_ = 0.0;
    Witness witness_;
    std::size_t count_ = 0;
};

template <class Defect>
ClassReport chord_check(FunctionClass cls, const FunctionSpec& f, const ErrorFunction& phi,
                        const Interval& interval, std::size_t grid_points, std::span<const double> ts,
                        Defect defect) {
    for (double t : ts) {
        if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("t samples must lie in [0, 1]");
    }
    const Grid g = sample(f, phi, interval, grid_points);
    WorstTracker worst;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        for (std::size_t j = i + 1; j < g.x.size(); ++j) {
            const double x = g.x[i];
            const double y = g.x[j];
            const double dist = y - x;
            for (double t : ts) {
                // endpoints reuse the sampled values so the t in {0, 1} cases are exact
                double fz;
                if (t == 0.0) {
                    fz = g.fx[j];
                } else if (t == 1.0) {
                    fz = g.fx[i];
                } else {
                    fz = f(t * x + (1.0 - t) * y);
                }
                const double chord = t * g.fx[i] + (1.0 - t) * g.fx[j];
                const double allowance = t * phi((1.0 - t) * dist) + (1.0 - t) * phi(t * dist);
                worst.offer(defect(fz - chord) - allowance, x, y, t);
            }
        }
    }
    return worst.finish(cls, class_tol(g));
}

}  // namespace

std::string_view to_string(FunctionClass cls) noexcept {
    switch (cls) {
    case FunctionClass::Monotone: return "monotone";
    case FunctionClass::Holder: return "holder";
    case FunctionClass::Convex: return "convex";
    case FunctionClass::Affine: return "affine";
    }
    return "?";
}

std::optional<FunctionClass> class_from_string(std::string_view name) noexcept {
    if (name == "monotone") return FunctionClass::Monotone;
    if (name == "holder") return FunctionClass::Holder;
    if (name == "convex") return FunctionClass::Convex;
    if (name == "affine") return FunctionClass::Affine;
    return std::nullopt;
}

std::vector<double> t_grid(std::size_t t_samples) {
    if (t_samples < 3) throw InvalidArgument("need at least 3 t samples (0, 1/2, 1)");
    std::vector<double> ts;
    const double m = static_cast<double>(t_samples - 1);
    for (std::size_t k = 0; k < t_samples; ++k) {
        ts.push_back(static_cast<double>(k) / m);
        ts.push_back(static_cast<double>(t_samples - 1 - k) / m);
    }
    ts.push_back(0.5);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
}

ClassReport verify_monotone(const FunctionSpec& f, const ErrorFunction& phi, const Interval& interval,
                            std::size_t grid_points) {
    const Grid g = sample(f, phi, interval, grid_points);
    WorstTracker worst;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        for (std::size_t j = i + 1; j < g.x.size(); ++j) {
            worst.offer(g.fx[i] - g.fx[j] - phi(g.x[j] - g.x[i]), g.x[i], g.x[j]);
        }
    }
    return worst.finish(FunctionClass::Monotone, class_tol(g));
}

ClassReport verify_holder(const FunctionSpec& f, const ErrorFunction& phi, const Interval& interval,
                          std::size_t grid_points) {
    const Grid g = sample(f, phi, interval, grid_points);
    WorstTracker worst;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        for (std::size_t j = i + 1; j < g.x.size(); ++j) {
            worst.offer(std::fabs(g.fx[i] - g.fx[j]) - phi(g.x[j] - g.x[i]), g.x[i], g.x[j]);
        }
    }
    return worst.finish(FunctionClass::Holder, class_tol(g));
}

ClassReport verify_convex(const FunctionSpec& f, const ErrorFunction& phi, const Interval& interval,
                          std::size_t grid_points, std::span<const double> t_values) {
    return chord_check(FunctionClass::Convex, f, phi, interval, grid_points, t_values,
                       [](double d) { return d; });
}

ClassReport verify_affine(const FunctionSpec& f, const ErrorFunction& phi, const Interval& interval,
                          std::size_t grid_points, std::span<const double> t_values) {
    return chord_check(FunctionClass::Affine, f, phi, interval, grid_points, t_values,
                       [](double d) { return std::fabs(d); });
}

ClassReport verify_convex(const FunctionSpec& f, const ErrorFunction& phi, const Interval& interval,
                          std::size_t grid_points, std::size_t t_samples) {
    return verify_convex(f, phi, interval, grid_points, t_grid(t_samples));
}

ClassReport verify_affine(const FunctionSpec& f, const ErrorFunction& phi, const Interval& interval,
                          std::size_t grid_points, std::size_t t_samples) {
    return verify_affine(f, phi, interval, grid_points, t_grid(t_samples));
}

ClassReport verify_class(FunctionClass cls, const FunctionSpec& f, const ErrorFunction& phi,
                         const Interval& interval, std::size_t grid_points, std::size_t t_samples) {
    switch (cls) {
    case FunctionClass::Monotone: return verify_monotone(f, phi, interval, grid_points);
    case FunctionClass::Holder: return verify_holder(f, phi, interval, grid_points);
    case FunctionClass::Convex: return verify_convex(f, phi, interval, grid_points, t_samples);
    case FunctionClass::Affine: return verify_affine(f, phi, interval, grid_points, t_samples);
    }
    throw InvalidArgument("unknown class");
}

double min_epsilon_monotone(const FunctionSpec& f, const Interval& interval, std::size_t grid_points) {
    if (grid_points < 2) throw InvalidArgument("class check grid needs at least 2 points");
    const auto p = make_partition(interval, grid_points - 1);
    double running_max = f(p[0]);
    double eps = 0.0;
    for (std::size_t j = 1; j < p.nodes().size(); ++j) {
        const double fy = f(p[j]);
        eps = std::max(eps, running_max - fy);
        running_max = std::max(running_max, fy);
    }
    return eps;
}

}  // namespace nchh
