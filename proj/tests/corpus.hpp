#pragma once

// Test corpora of (f, Phi, interval) triples, shared by the unit and acceptance suites.
// Every entry is expected to pass the class check for its class.

#include <string>
#include <vector>

#include "nchh/core.hpp"
#include "nchh/errfun.hpp"
#include "nchh/expr.hpp"

namespace corpus {

struct Pair {
    std::string f;
    std::string phi;
    double a = 0.0;
    double b = 1.0;

    nchh::Interval interval() const { return {a, b}; }
    nchh::FunctionSpec function() const { return nchh::parse_function(f); }
    nchh::ErrorFunction error_function() const { return nchh::parse_error_function(phi, b - a); }
};

inline std::vector<Pair> monotone() {
    std::vector<Pair> out;
    for (int seed = 1; seed <= 5; ++seed) {
        out.push_back({"x + noise(" + std::to_string(seed) + ", 0.05)", "const:0.1", 0.0, 1.0});
    }
    out.push_back({"x", "const:0", 0.0, 1.0});
    out.push_back({"exp(x)", "const:0", 0.0, 1.0});
    out.push_back({"x^3", "const:0", -1.0, 1.0});
    out.push_back({"sqrt(x)", "pow:0,1", 0.0, 4.0});
    out.push_back({"x + 0.1*sin(20*x)", "const:0.2", 0.0, 1.0});
    out.push_back({"0-x", "pow:1,1", 0.0, 1.0});
    out.push_back({"x^2 - x", "pow:1,1", 0.0, 1.0});
    out.push_back({"0-x^2", "pow:2,1", 0.0, 1.0});
    return out;
}

inline std::vector<Pair> holder() {
    return {
        {"x", "pow:1,1", 0.0, 1.0},
        {"x^2", "pow:2,1", 0.0, 1.0},
        {"3", "const:0", 0.0, 1.0},
        {"0-2.5", "const:0", -2.0, 5.0},
        {"0-2*x", "pow:2,1", 0.0, 1.0},
        {"sin(x)", "pow:1,1", 0.0, 3.141592653589793},
        {"x + noise(4, 0.05)", "affine:1,0.1", 0.0, 1.0},
        {"sqrt(x)", "pow:1,0.5", 0.0, 1.0},
    };
}

// Phi = pow:c,p with c > 0 and p >= 1, so superadditive.
inline std::vector<Pair> superadditive_monotone() {
    return {
        {"x", "pow:1,1", 0.0, 1.0},
        {"0-x", "pow:1,1", 0.0, 1.0},
        {"x^2 - x", "pow:1,1", 0.0, 1.0},
        {"sin(6*x)", "pow:6,1", 0.0, 1.0},
        {"x^3 - x", "pow:1,1", 0.0, 1.0},
        {"exp(0-x)", "pow:1,1", 0.0, 2.0},
    };
}

inline std::vector<Pair> superadditive_holder() {
    return {
        {"x", "pow:1,1", 0.0, 1.0},
        {"x^2", "pow:2,1", 0.0, 1.0},
        {"sin(6*x)", "pow:6,1", 0.0, 1.0},
        {"0-3*x", "pow:3,1", -1.0, 1.0},
        {"7", "pow:1,2", 0.0, 1.0},
    };
}

inline std::vector<Pair> convex() {
    return {
        {"x^2", "const:0", 0.0, 1.0},
        {"x^2", "pow:1,1", 0.0, 1.0},
        {"x^2 + 0.01*sin(50*x)", "const:0.02", 0.0, 1.0},
        {"sin(x)", "pow:0.5,2", 0.0, 3.141592653589793},
        {"exp(x)", "const:0", -1.0, 1.0},
        {"abs(x - 0.3)", "const:0", -1.0, 1.0},
        {"x^4", "pow:0.5,1", 0.0, 1.0},
        {"cos(3*x)", "pow:4.5,2", 0.0, 2.0},
        {"x^2 + noise(9, 0.01)", "const:0.02", 0.0, 1.0},
        {"0-x^2", "pow:1.01,2", 0.0, 1.0},
    };
}

inline std::vector<Pair> affine() {
    return {
        {"2*x + 1", "const:0", 0.0, 1.0},
        {"x^2", "pow:1,1", 0.0, 1.0},
        {"0-x^2", "pow:1,1", 0.0, 1.0},
        {"3*x + noise(2, 0.01)", "const:0.02", -1.0, 1.0},
        {"sin(x)", "pow:0.5,2", 0.0, 3.141592653589793},
    };
}

}  // namespace corpus
