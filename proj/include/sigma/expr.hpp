#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sigma/number.hpp"

// Minimal computer-algebra kernel over the three coordinates (x, y, p) of the
// ODE manifold. Expressions are immutable, reference-counted trees; every
// operation below is a pure function and Expr values may be shared freely
// between threads.
namespace sigma::expr {

enum class Var : std::uint8_t { x, y, p };
enum class Func : std::uint8_t { sin, cos, exp, ln, sqrt };
enum class Kind : std::uint8_t { constant, variable, sum, product, power, function };

[[nodiscard]] std::string_view name(Var v);
[[nodiscard]] std::string_view name(Func f);

struct Point {
    double x = 0.0;
    double y = 0.0;
    double p = 0.0;

    [[nodiscard]] double operator[](Var v) const { return v == Var::x ? x : (v == Var::y ? y : p); }
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset) : std::runtime_error(what), offset_(offset) {}
    [[nodiscard]] std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// Raised by eval for poles, logarithms of non-positive values, even roots of
// negatives and non-finite intermediate results.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Floating-point overflow while evaluating an otherwise defined expression.
class OverflowError : public DomainError {
public:
    using DomainError::DomainError;
};

struct Node;

class Expr {
public:
    Expr();                           // the constant 0
    Expr(Number n);                   // NOLINT(google-explicit-constructor)
    Expr(int n) : Expr(Number(n)) {}  // NOLINT(google-explicit-constructor)

    static Expr variable(Var v);
    static Expr rational(std::int64_t num, std::int64_t den) { return Expr(Number::rational(num, den)); }

    [[nodiscard]] Kind kind() const;
    // Valid for Kind::constant.
    [[nodiscard]] const Number& value() const;
    // Valid for Kind::variable.
    [[nodiscard]] Var var() const;
    // Valid for Kind::function.
    [[nodiscard]] Func func() const;
    // Sum/product terms; {base, exponent} for powers; {argument} for functions.
    [[nodiscard]] std::span<const Expr> operands() const;

    [[nodiscard]] bool is_constant() const { return kind() == Kind::constant; }
    [[nodiscard]] bool is_literal_zero() const { return is_constant() && value().is_zero(); }
    [[nodiscard]] bool is_literal_one() const { return is_constant() && value().is_one(); }

    [[nodiscard]] std::string str() const;

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a);
    Expr& operator+=(const Expr& b) { return *this = *this + b; }
    Expr& operator-=(const Expr& b) { return *this = *this - b; }
    Expr& operator*=(const Expr& b) { return *this = *this * b; }

    // Structural (tree) equality.
    friend bool operator==(const Expr& a, const Expr& b);

private:
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    friend Expr make_node(Node&& node);

    std::shared_ptr<const Node> node_;
};

inline const Expr x = Expr::variable(Var::x);
inline const Expr y = Expr::variable(Var::y);
inline const Expr p = Expr::variable(Var::p);

[[nodiscard]] Expr pow(const Expr& base, const Expr& exponent);
[[nodiscard]] Expr apply(Func f, const Expr& arg);
[[nodiscard]] inline Expr sin(const Expr& a) { return apply(Func::sin, a); }
[[nodiscard]] inline Expr cos(const Expr& a) { return apply(Func::cos, a); }
[[nodiscard]] inline Expr exp(const Expr& a) { return apply(Func::exp, a); }
[[nodiscard]] inline Expr ln(const Expr& a) { return apply(Func::ln, a); }
[[nodiscard]] inline Expr sqrt(const Expr& a) { return apply(Func::sqrt, a); }

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | base ('^' factor)?
//   base   := number | 'x' | 'y' | 'p' | func '(' expr ')' | '(' expr ')'
// '^' is right-associative and binds tighter than unary minus.
[[nodiscard]] Expr parse(std::string_view text);

[[nodiscard]] std::string to_string(const Expr& e);

// Canonical form: a Laurent polynomial with exact coefficients over the
// coordinates and over non-polynomial atoms (function applications, powers
// with symbolic exponents, negative powers of sums). No trigonometric or
// logarithmic rewriting.
[[nodiscard]] Expr simplify(const Expr& e);

// Partial derivative, simplified.
[[nodiscard]] Expr diff(const Expr& e, Var v);

[[nodiscard]] double eval(const Expr& e, const Point& q);

struct ZeroTestOptions {
    std::uint64_t seed = 0x5157'6d61'466f'7267ULL;
    int samples = 12;
    double tolerance = 1e-9;
};

// Fixed seed, overridable once per process through SIGMA_FORGE_SEED.
// Seed text as accepted in SIGMA_FORGE_SEED: a non-negative integer in
// decimal, hex (0x) or octal (leading 0) that fits in 64 bits.
[[nodiscard]] std::optional<std::uint64_t> parse_seed(const std::string& text);

[[nodiscard]] const ZeroTestOptions& default_zero_test_options();

// True when e simplifies to the literal 0, or when it evaluates below the
// tolerance at every sample point drawn from ([-2,-0.1] U [0.1,2])^3.
[[nodiscard]] bool is_zero(const Expr& e, const ZeroTestOptions& options = default_zero_test_options());
[[nodiscard]] inline bool equivalent(const Expr& a, const Expr& b) { return is_zero(a - b); }

// Structural dependence of the simplified form.
[[nodiscard]] bool depends_on(const Expr& e, Var v);

// Replaces every occurrence of v by value, then simplifies.
[[nodiscard]] Expr substitute(const Expr& e, Var v, const Expr& value);

// Term-by-term antiderivative in v with zero constant of integration; nullopt
// unless e is a polynomial in v alone with non-negative integer powers.
[[nodiscard]] std::optional<Expr> integrate_polynomial(const Expr& e, Var v);

}  // namespace sigma::expr
