#include <doctest.h>

#include <bit>
#include <cmath>
#include <optional>
#include <random>

#include "nchh/errors.hpp"
#include "nchh/expr.hpp"

using namespace nchh;

namespace {

double eval(const char* text, double x) { return parse_expression(text)->evaluate(x); }

std::size_t error_position(const char* text) {
    try {
        parse_expression(text);
    } catch (const ParseError& e) {
        return e.position();
    }
    FAIL("expected a parse error for " << text);
    return 0;
}

// Random trees over x, including negative constants and every operator.
ExprPtr random_tree(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9);
    std::uniform_real_distribution<double> value(-5.0, 5.0);
    switch (pick(rng)) {
    case 0: return Expr::constant(value(rng));
    case 1: return Expr::variable("x");
    case 2: return Expr::negate(random_tree(rng, depth - 1));
    case 3: return Expr::binary(Expr::Op::Add, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 4: return Expr::binary(Expr::Op::Sub, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 5: return Expr::binary(Expr::Op::Mul, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 6: return Expr::binary(Expr::Op::Div, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 7: return Expr::binary(Expr::Op::Pow, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 8: {
        std::uniform_int_distribution<int> fn(0, 5);
        return Expr::call(static_cast<Expr::Function>(fn(rng)), {random_tree(rng, depth - 1)});
    }
    default: {
        std::uniform_int_distribution<int> seed(0, 1000);
        return Expr::call(Expr::Function::Noise,
                          {Expr::constant(seed(rng)), Expr::constant(std::fabs(value(rng)))});
    }
    }
}

std::optional<std::uint64_t> bits_or_error(const Expr& e, double x) {
    try {
        return std::bit_cast<std::uint64_t>(e.evaluate(x));
    } catch (const EvaluationError&) {
        return std::nullopt;
    }
}

}  // namespace

TEST_CASE("parse_function examples") {
    CHECK(parse_function("x^2 + 0.5*sin(3*x)")(0.0) == 0.0);
    CHECK(parse_function("2*x+1")(2.0) == 5.0);
    CHECK(parse_function("x^(1/2)")(4.0) == 2.0);
}

TEST_CASE("operator precedence and associativity") {
    CHECK(eval("2+3*4", 0) == 14.0);
    CHECK(eval("2*3^2", 0) == 18.0);
    CHECK(eval("-x^2", 3) == -9.0);
    CHECK(eval("2^3^2", 0) == 512.0);
    CHECK(eval("2^-1", 0) == 0.5);
    CHECK(eval("8/4/2", 0) == 1.0);
    CHECK(eval("1-2-3", 0) == -4.0);
    CHECK(eval("--x", 2) == 2.0);
    CHECK(eval("abs(x) + sqrt(x*x) + exp(0) + log(1) + cos(0)", -2) == 6.0);
    CHECK(eval("1.5e1 + .5", 0) == 15.5);
    CHECK(eval("sin(pi)", 0) == doctest::Approx(0.0));
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_expression("y + 1"), ParseError);
    CHECK_THROWS_AS(parse_expression("(x + 1"), ParseError);
    CHECK_THROWS_AS(parse_expression("x + 1)"), ParseError);
    CHECK_THROWS_AS(parse_expression("x 2"), ParseError);
    CHECK_THROWS_AS(parse_expression(""), ParseError);
    CHECK_THROWS_AS(parse_expression("sin x"), ParseError);
    CHECK_THROWS_AS(parse_expression("noise(1)"), ParseError);
    CHECK_THROWS_AS(parse_expression("2*"), ParseError);
    CHECK(error_position("x + foo") == 4);
    CHECK(error_position("x + 1)") == 5);
    CHECK(error_position("(x + 1") == 0);
    CHECK(error_position("x +") < 3);
}

TEST_CASE("error-function expressions use d, not x") {
    ParseOptions opts;
    opts.variable = "d";
    CHECK(parse_expression("d^2", opts)->evaluate(3.0) == 9.0);
    CHECK_THROWS_AS(parse_expression("x^2", opts), ParseError);
}

TEST_CASE("domain violations surface as evaluation errors") {
    CHECK_THROWS_AS(eval("log(x)", 0.0), EvaluationError);
    CHECK_THROWS_AS(eval("sqrt(x)", -1.0), EvaluationError);
    CHECK_THROWS_AS(eval("1/x", 0.0), EvaluationError);
    CHECK_THROWS_AS(eval("x^0.5", -1.0), EvaluationError);
    CHECK_THROWS_AS(eval("exp(x)", 1000.0), EvaluationError);
    CHECK_THROWS_AS(eval("noise(0.5, 1)", 0.0), EvaluationError);
    CHECK_THROWS_AS(eval("noise(1, -1)", 0.0), EvaluationError);
}

TEST_CASE("render examples") {
    CHECK(render(*parse_expression("x+1")) == "x+1");
    CHECK(parse_expression(render(*parse_expression("-(x)")))->evaluate(2.0) == -2.0);
    CHECK(parse_expression(render(*parse_expression("x*x")))->evaluate(3.0) == 9.0);
    CHECK(render(*parse_expression("(1-x)-(2-x)")) == "1-x-(2-x)");
    CHECK(render(*parse_expression("(2^3)^2")) == "(2^3)^2");
    CHECK(render(*parse_expression("2^-x")) == "2^-x");
    CHECK(render(*parse_expression("(-x)^2")) == "(-x)^2");
    CHECK(render(*Expr::binary(Expr::Op::Pow, Expr::constant(-2.0), Expr::variable("x"))) == "(-2)^x");
}

TEST_CASE("render/parse round trip evaluates bit-identically") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> xs(-4.0, 4.0);
    for (int tree = 0; tree < 400; ++tree) {
        const auto original = random_tree(rng, 5);
        const std::string text = render(*original);
        const auto reparsed = parse_expression(text);
        CHECK_MESSAGE(render(*reparsed) == text, text);
        for (int k = 0; k < 100; ++k) {
            const double x = xs(rng);
            REQUIRE_MESSAGE(bits_or_error(*original, x) == bits_or_error(*reparsed, x), text << " at " << x);
        }
    }
}

TEST_CASE("noise is deterministic and bounded") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> xs(-10.0, 10.0);
    double lo = 0.0;
    double hi = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double x = xs(rng);
        const double v = noise(7, 0.05, x);
        REQUIRE(std::fabs(v) <= 0.05);
        REQUIRE(v == noise(7, 0.05, x));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    // the perturbation actually spans its range
    CHECK(lo < -0.049);
    CHECK(hi > 0.049);
    CHECK(noise(7, 1.0, 0.3) != noise(8, 1.0, 0.3));
    CHECK(noise(7, 0.0, 0.3) == 0.0);
}

TEST_CASE("noise salt re-rolls seeds and zero salt is the identity") {
    const auto plain = parse_function("noise(7, 1)");
    const auto salted = parse_function("noise(7, 1)", 99);
    CHECK(plain(0.25) == parse_function("noise(7, 1)", 0)(0.25));
    CHECK(plain(0.25) != salted(0.25));
    CHECK(salted(0.25) == parse_function("noise(7, 1)", 99)(0.25));
    CHECK(plain(0.25) == noise(7, 1.0, 0.25));
}
