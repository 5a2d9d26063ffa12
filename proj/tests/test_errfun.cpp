#include <doctest.h>

#include <cmath>
#include <random>

#include "nchh/errfun.hpp"
#include "nchh/errors.hpp"

using namespace nchh;

TEST_CASE("parse_error_function catalog") {
    const auto c = parse_error_function("const:0.1", 1.0);
    CHECK(c.kind() == ErrorFunction::Kind::Constant);
    CHECK(c(0.7) == 0.1);
    CHECK(c(0.0) == 0.1);
    CHECK(c.label() == "const:0.1");

    const auto sq = parse_error_function("pow:1,2", 1.0);
    CHECK(sq.kind() == ErrorFunction::Kind::Power);
    CHECK(sq(0.5) == 0.25);
    CHECK(sq(0.0) == 0.0);

    const auto flat = parse_error_function("pow:3,0", 1.0);
    CHECK(flat(0.0) == 3.0);
    CHECK(flat(0.5) == 3.0);

    const auto aff = parse_error_function("affine:2, 0.5", 2.0);
    CHECK(aff(1.0) == 2.5);
    CHECK(aff.label() == "affine:2,0.5");

    const auto ex = parse_error_function("expr:d^2 + 0.1", 1.0);
    CHECK(ex.kind() == ErrorFunction::Kind::Expression);
    CHECK(ex(0.5) == doctest::Approx(0.35));
}

TEST_CASE("parse_error_function rejects malformed and negative specifications") {
    CHECK_THROWS_AS(parse_error_function("pow:-1,2", 1.0), ParseError);
    CHECK_THROWS_AS(parse_error_function("pow:1,-2", 1.0), ParseError);
    CHECK_THROWS_AS(parse_error_function("const:-0.1", 1.0), ParseError);
    CHECK_THROWS_AS(parse_error_function("affine:1,-1", 1.0), ParseError);
    CHECK_THROWS_AS(parse_error_function("pow:1", 1.0), ParseError);
    CHECK_THROWS_AS(parse_error_function("pow:1,2,3", 1.0), ParseError);
    CHECK_THROWS_AS(parse_error_function("const:abc", 1.0), ParseError);
    CHECK_THROWS_AS(parse_error_function("gauss:1", 1.0), ParseError);
    CHECK_THROWS_AS(parse_error_function("0.1", 1.0), ParseError);
    CHECK_THROWS_AS(parse_error_function("const:", 1.0), ParseError);
    CHECK_THROWS_AS(parse_error_function("expr:x^2", 1.0), ParseError);
    // negative somewhere on [0, 1]
    CHECK_THROWS_AS(parse_error_function("expr:d-0.5", 1.0), ParseError);
    CHECK_THROWS_AS(parse_error_function("expr:log(d)", 1.0), ParseError);
}

TEST_CASE("eval_phi domain") {
    const auto phi = parse_error_function("pow:2,1", 1.0);
    CHECK_THROWS_AS(eval_phi(phi, 1.5), EvaluationError);
    CHECK_THROWS_AS(eval_phi(phi, -0.1), EvaluationError);
    CHECK_THROWS_AS(eval_phi(phi, std::nan("")), EvaluationError);
    CHECK(eval_phi(phi, 1.0) == 2.0);
    try {
        eval_phi(phi, 1.5);
    } catch (const EvaluationError& e) {
        CHECK(e.where() == 1.5);
    }
}

TEST_CASE("eval_phi is nonnegative on samples of every catalog kind") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int k = 0; k < 200; ++k) {
        const double len = 0.1 + u(rng);
        const ErrorFunction phis[] = {
            ErrorFunction::constant(u(rng), len),
            ErrorFunction::power(u(rng), u(rng), len),
            ErrorFunction::affine(u(rng), u(rng), len),
            parse_error_function("expr:abs(sin(5*d)) + d^3", len),
        };
        for (const auto& phi : phis) {
            for (int s = 0; s <= 50; ++s) REQUIRE(phi(std::min(len, len * s / 50.0)) >= 0.0);
        }
    }
}

TEST_CASE("is_superadditive examples") {
    const auto sq = is_superadditive(parse_error_function("pow:1,2", 1.0));
    CHECK(sq.verdict == Superadditivity::Yes);

    const auto c = is_superadditive(parse_error_function("const:0.1", 1.0));
    CHECK(c.verdict == Superadditivity::No);
    REQUIRE(c.witness);
    CHECK(c.witness->first == 0.25);
    CHECK(c.witness->second == 0.25);
    CHECK(c.excess == doctest::Approx(0.1));

    const auto root_phi = parse_error_function("pow:1,0.5", 1.0);
    const auto root = is_superadditive(root_phi);
    CHECK(root.verdict == Superadditivity::No);
    REQUIRE(root.witness);
    const auto [x, y] = *root.witness;
    // witness independently confirmed: sqrt(x) + sqrt(y) > sqrt(x + y)
    CHECK(std::sqrt(x) + std::sqrt(y) > std::sqrt(x + y) + 1e-6);
    CHECK(x + y <= 1.0);

    CHECK(is_superadditive(parse_error_function("affine:1,0.2", 1.0)).verdict == Superadditivity::No);
    CHECK(is_superadditive(parse_error_function("affine:1,0", 1.0)).verdict == Superadditivity::Yes);
    CHECK(is_superadditive(parse_error_function("const:0", 1.0)).verdict == Superadditivity::Yes);
    CHECK(is_superadditive(parse_error_function("pow:0,0.5", 1.0)).verdict == Superadditivity::Yes);
    CHECK(is_superadditive(parse_error_function("pow:2,0", 1.0)).verdict == Superadditivity::No);
}

TEST_CASE("is_superadditive on expressions searches the grid") {
    const auto cubic = is_superadditive(parse_error_function("expr:d^2 + d^3", 2.0));
    CHECK(cubic.verdict == Superadditivity::Empirical);
    CHECK(to_string(cubic.verdict) == "empirically superadditive");

    const auto root = is_superadditive(parse_error_function("expr:sqrt(d)", 2.0));
    CHECK(root.verdict == Superadditivity::No);
    REQUIRE(root.witness);
    CHECK(std::sqrt(root.witness->first) + std::sqrt(root.witness->second) >
          std::sqrt(root.witness->first + root.witness->second));

    CHECK_THROWS_AS(is_superadditive(parse_error_function("expr:d", 1.0), 1), InvalidArgument);
}

TEST_CASE("telescoped_bound_check examples") {
    CHECK(telescoped_bound_check(parse_error_function("pow:1,2", 1.0), Interval(0, 1), 4));
    for (std::size_t n = 1; n <= 50; ++n) {
        CHECK(telescoped_bound_check(parse_error_function("pow:1,1", 1.0), Interval(0, 1), n));
    }
    CHECK(telescoped_bound_check(parse_error_function("pow:3,2", 2.0), Interval(0, 2), 2));
    // constant phi: n * eps > eps
    CHECK_FALSE(telescoped_bound_check(parse_error_function("const:0.1", 1.0), Interval(0, 1), 2));
}

TEST_CASE("superadditive power functions telescope for every n up to 1024") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> c(0.0, 10.0);
    std::uniform_real_distribution<double> p(1.0, 4.0);
    std::uniform_real_distribution<double> a(-5.0, 5.0);
    std::uniform_real_distribution<double> len(0.01, 10.0);
    for (int trial = 0; trial < 40; ++trial) {
        const double left = a(rng);
        const Interval iv(left, left + len(rng));
        const auto phi = ErrorFunction::power(c(rng), trial == 0 ? 1.0 : p(rng), iv.length());
        REQUIRE(is_superadditive(phi).verdict == Superadditivity::Yes);
        for (std::size_t n = 1; n <= 1024; ++n) REQUIRE(telescoped_bound_check(phi, iv, n));
    }
}

TEST_CASE("limit_sequence examples") {
    const auto cubic = limit_sequence(parse_error_function("pow:1,3", 1.0), Interval(0, 1), 4);
    REQUIRE(cubic.size() == 4);
    CHECK(cubic[0].first == 1);
    CHECK(cubic[0].second == doctest::Approx(1.0));
    CHECK(cubic[1].second == doctest::Approx(0.5));
    CHECK(cubic[2].second == doctest::Approx(1.0 / 3.0));
    CHECK(cubic[3].second == doctest::Approx(0.25));

    const auto sq = limit_sequence(parse_error_function("pow:1,2", 1.0), Interval(0, 1), 3);
    for (const auto& [n, v] : sq) CHECK(v == doctest::Approx(1.0));

    const auto c = limit_sequence(parse_error_function("const:0.1", 1.0), Interval(0, 1), 2);
    CHECK(c[0].second == doctest::Approx(0.1));
    CHECK(c[1].second == doctest::Approx(0.4));
}

TEST_CASE("limit_sequence trend follows the exponent") {
    const Interval iv(0.0, 3.0);
    for (double p : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0}) {
        const auto seq = limit_sequence(ErrorFunction::power(1.7, p, iv.length()), iv, 64);
        for (std::size_t i = 1; i < seq.size(); ++i) {
            const double prev = seq[i - 1].second;
            const double cur = seq[i].second;
            if (p > 2.0) {
                REQUIRE(cur < prev);
            } else if (p < 2.0) {
                REQUIRE(cur > prev);
            } else {
                REQUIRE(cur == doctest::Approx(prev).epsilon(1e-14));
            }
        }
    }
}
