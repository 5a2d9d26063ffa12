#include "nchh/expr.hpp"

#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "nchh/errors.hpp"

namespace nchh {

namespace {

constexpr std::array<std::pair<std::string_view, Expr::Function>, 7> kFunctions{{
    {"sin", Expr::Function::Sin},
    {"cos", Expr::Function::Cos},
    {"exp", Expr::Function::Exp},
    {"log", Expr::Function::Log},
    {"abs", Expr::Function::Abs},
    {"sqrt", Expr::Function::Sqrt},
    {"noise", Expr::Function::Noise},
}};

// splitmix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

[[noreturn]] void domain_error(double x, const std::string& what) {
    std::ostringstream os;
    os.precision(17);
    os << what << " at x = " << x;
    throw EvaluationError(x, os.str());
}

}  // namespace

int arity(Expr::Function fn) noexcept { return fn == Expr::Function::Noise ? 2 : 1; }

std::string_view function_name(Expr::Function fn) noexcept {
    for (const auto& [name, f] : kFunctions) {
        if (f == fn) return name;
    }
    return "?";
}

double noise(std::uint64_t seed, double amplitude, double x) noexcept {
    const std::uint64_t h = mix64(std::bit_cast<std::uint64_t>(x) ^ mix64(seed + 0x9e3779b97f4a7c15ULL));
    const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
    return amplitude * (2.0 * u - 1.0);
}

ExprPtr Expr::constant(double value) {
    auto e = std::shared_ptr<Expr>(new Expr());
    e->kind_ = Kind::Constant;
    e->value_ = value;
    return e;
}

ExprPtr Expr::variable(std::string name) {
    auto e = std::shared_ptr<Expr>(new Expr());
    e->kind_ = Kind::Variable;
    e->name_ = std::move(name);
    return e;
}

ExprPtr Expr::negate(ExprPtr operand) {
    auto e = std::shared_ptr<Expr>(new Expr());
    e->kind_ = Kind::Negate;
    e->children_.push_back(std::move(operand));
    return e;
}

ExprPtr Expr::binary(Op op, ExprPtr lhs, ExprPtr rhs) {
    auto e = std::shared_ptr<Expr>(new Expr());
    e->kind_ = Kind::Binary;
    e->op_ = op;
    e->children_ = {std::move(lhs), std::move(rhs)};
    return e;
}

ExprPtr Expr::call(Function fn, std::vector<ExprPtr> args) {
    if (static_cast<int>(args.size()) != arity(fn)) {
        throw InvalidArgument(std::string(function_name(fn)) + " expects " +
                              std::to_string(arity(fn)) + " argument(s)");
    }
    auto e = std::shared_ptr<Expr>(new Expr());
    e->kind_ = Kind::Call;
    e->fn_ = fn;
    e->children_ = std::move(args);
    return e;
}

double Expr::evaluate(double x) const {
    switch (kind_) {
    case Kind::Constant:
        return value_;
    case Kind::Variable:
        return x;
    case Kind::Negate:
        return -children_[0]->evaluate(x);
    case Kind::Binary: {
        const double l = children_[0]->evaluate(x);
        const double r = children_[1]->evaluate(x);
        double y = 0.0;
        switch (op_) {
        case Op::Add: y = l + r; break;
        case Op::Sub: y = l - r; break;
        case Op::Mul: y = l * r; break;
        case Op::Div:
            if (r == 0.0) domain_error(x, "division by zero");
            y = l / r;
            break;
        case Op::Pow:
            y = std::pow(l, r);
            if (std::isnan(y)) domain_error(x, "power of a negative base to a non-integer exponent");
            break;
        }
        if (!std::isfinite(y)) domain_error(x, "arithmetic overflow");
        return y;
    }
    case Kind::Call: {
        const double u = children_[0]->evaluate(x);
        switch (fn_) {
        case Function::Sin: return std::sin(u);
        case Function::Cos: return std::cos(u);
        case Function::Exp: {
            const double y = std::exp(u);
            if (!std::isfinite(y)) domain_error(x, "exp overflow");
            return y;
        }
        case Function::Log:
            if (!(u > 0.0)) domain_error(x, "log of a nonpositive argument");
            return std::log(u);
        case Function::Abs: return std::fabs(u);
        case Function::Sqrt:
            if (u < 0.0) domain_error(x, "sqrt of a negative argument");
            return std::sqrt(u);
        case Function::Noise: {
            const double amp = children_[1]->evaluate(x);
            if (!(amp >= 0.0)) domain_error(x, "noise amplitude must be nonnegative");
            if (u != std::trunc(u) || std::fabs(u) > 0x1.0p62) {
                domain_error(x, "noise seed must be an integer");
            }
            return noise(static_cast<std::uint64_t>(static_cast<std::int64_t>(u)), amp, x);
        }
        }
        break;
    }
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    Parser(std::string_view text, const ParseOptions& options) : text_(text), options_(options) {}

    ExprPtr parse() {
        if (text_.find_first_not_of(" \t\r\n") == std::string_view::npos) {
            fail(0, "empty expression");
        }
        auto e = parse_sum();
        skip_space();
        if (pos_ != text_.size()) {
            fail(pos_, std::string("unexpected trailing '") + text_[pos_] + "'");
        }
        return e;
    }

private:
    [[noreturn]] void fail(std::size_t at, const std::string& message) const {
        // keep the reported offset inside the input
        const std::size_t clamped = text_.empty() ? 0 : std::min(at, text_.size() - 1);
        throw ParseError(clamped, message);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, std::size_t opened_at) {
        if (!accept(c)) {
            if (pos_ >= text_.size()) fail(opened_at, std::string("unbalanced parenthesis, missing '") + c + "'");
            fail(pos_, std::string("expected '") + c + "'");
        }
    }

    ExprPtr parse_sum() {
        auto lhs = parse_product();
        for (;;) {
            if (accept('+')) {
                lhs = Expr::binary(Expr::Op::Add, lhs, parse_product());
            } else if (accept('-')) {
                lhs = Expr::binary(Expr::Op::Sub, lhs, parse_product());
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_product() {
        auto lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = Expr::binary(Expr::Op::Mul, lhs, parse_unary());
            } else if (accept('/')) {
                lhs = Expr::binary(Expr::Op::Div, lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_unary() {
        if (accept('-')) return Expr::negate(parse_unary());
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    ExprPtr parse_power() {
        auto base = parse_primary();
        if (accept('^')) {
            return Expr::binary(Expr::Op::Pow, base, parse_unary());
        }
        return base;
    }

    ExprPtr parse_primary() {
        skip_space();
        if (pos_ >= text_.size()) fail(pos_, "unexpected end of expression");
        const char c = text_[pos_];
        if (c == '(') {
            const std::size_t opened = pos_++;
            auto e = parse_sum();
            expect(')', opened);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        if (c == ')') fail(pos_, "unbalanced parenthesis, unexpected ')'");
        fail(pos_, std::string("unexpected '") + c + "'");
    }

    ExprPtr parse_number() {
        const std::size_t start = pos_;
        double value = 0.0;
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
        if (ec == std::errc::result_out_of_range) fail(start, "numeric literal out of range");
        if (ec != std::errc()) fail(start, "malformed numeric literal");
        pos_ += static_cast<std::size_t>(ptr - first);
        return Expr::constant(value);
    }

    ExprPtr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view id = text_.substr(start, pos_ - start);
        if (id == options_.variable) return Expr::variable(std::string(id));
        if (id == "pi") return Expr::constant(std::numbers::pi);
        for (const auto& [name, fn] : kFunctions) {
            if (name != id) continue;
            skip_space();
            if (pos_ >= text_.size() || text_[pos_] != '(') fail(pos_, "expected '(' after " + std::string(id));
            const std::size_t opened = pos_++;
            std::vector<ExprPtr> args;
            args.push_back(parse_sum());
            while (accept(',')) args.push_back(parse_sum());
            expect(')', opened);
            if (static_cast<int>(args.size()) != arity(fn)) {
                fail(start, std::string(id) + " expects " + std::to_string(arity(fn)) + " argument(s)");
            }
            if (fn == Expr::Function::Noise && options_.noise_salt != 0) {
                args[0] = salted_seed(args[0], start);
            }
            return Expr::call(fn, std::move(args));
        }
        fail(start, "unknown identifier '" + std::string(id) + "'");
    }

    ExprPtr salted_seed(const ExprPtr& seed, std::size_t at) const {
        if (seed->kind() != Expr::Kind::Constant || seed->value() != std::trunc(seed->value()) ||
            std::fabs(seed->value()) > 0x1.0p31) {
            fail(at, "noise seed must be an integer literal when a salt is applied");
        }
        const auto raw = static_cast<std::uint64_t>(static_cast<std::int64_t>(seed->value()));
        // Salted seeds stay exactly representable as doubles.
        const auto salted = (raw ^ mix64(options_.noise_salt)) & ((std::uint64_t{1} << 52) - 1);
        return Expr::constant(static_cast<double>(salted));
    }

    std::string_view text_;
    const ParseOptions& options_;
    std::size_t pos_ = 0;
};

// Binding strength used by the renderer.
int precedence(const Expr& e) {
    switch (e.kind()) {
    case Expr::Kind::Binary:
        switch (e.op()) {
        case Expr::Op::Add:
        case Expr::Op::Sub: return 1;
        case Expr::Op::Mul:
        case Expr::Op::Div: return 2;
        case Expr::Op::Pow: return 4;
        }
        return 0;
    case Expr::Kind::Negate: return 3;
    case Expr::Kind::Constant: return e.value() < 0.0 || std::signbit(e.value()) ? 3 : 5;
    default: return 5;
    }
}

void render_into(const Expr& e, std::string& out);

void render_child(const Expr& child, int min_precedence, std::string& out) {
    const bool wrap = precedence(child) < min_precedence;
    if (wrap) out += '(';
    render_into(child, out);
    if (wrap) out += ')';
}

void render_constant(double v, std::string& out) {
    if (std::signbit(v)) {
        out += '-';
        v = -v;
    }
    if (v == std::numbers::pi) {
        out += "pi";
        return;
    }
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    std::string s(buf.data(), ptr);
    // "1e+20" reparses fine; bare "inf"/"nan" cannot occur for parsed trees
    out += s;
}

void render_into(const Expr& e, std::string& out) {
    switch (e.kind()) {
    case Expr::Kind::Constant:
        render_constant(e.value(), out);
        return;
    case Expr::Kind::Variable:
        out += e.name();
        return;
    case Expr::Kind::Negate:
        out += '-';
        render_child(*e.children()[0], 3, out);
        return;
    case Expr::Kind::Binary: {
        const int p = precedence(e);
        // Left operand of ^ must be atomic; right operands of left-assoc ops
        // need parentheses at equal strength so the tree shape is preserved.
        const int left_min = e.op() == Expr::Op::Pow ? 5 : p;
        const int right_min = e.op() == Expr::Op::Pow ? 3 : p + 1;
        render_child(*e.children()[0], left_min, out);
        out += static_cast<char>(e.op());
        render_child(*e.children()[1], right_min, out);
        return;
    }
    case Expr::Kind::Call:
        out += function_name(e.function());
        out += '(';
        for (std::size_t i = 0; i < e.children().size(); ++i) {
            if (i) out += ',';
            render_into(*e.children()[i], out);
        }
        out += ')';
        return;
    }
}

}  // namespace

ExprPtr parse_expression(std::string_view text, const ParseOptions& options) {
    return Parser(text, options).parse();
}

FunctionSpec parse_function(std::string_view text, std::uint64_t noise_salt) {
    ParseOptions options;
    options.noise_salt = noise_salt;
    ExprPtr tree = parse_expression(text, options);
    return FunctionSpec(std::string(text), [tree](double x) { return tree->evaluate(x); });
}

std::string render(const Expr& expr) {
    std::string out;
    render_into(expr, out);
    return out;
}

}  // namespace nchh
