#pragma once

#include <cstdint>
#include <string>

namespace sigma::expr {

// Scalar constant: an exact rational while it fits in 64-bit numerator and
// denominator, otherwise a finite double. Arithmetic between an exact and a
// real operand yields a real.
class Number {
public:
    Number() = default;
    Number(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
    Number(int n) : num_(n) {}           // NOLINT(google-explicit-constructor)

    // Throws std::domain_error when den == 0.
    static Number rational(std::int64_t num, std::int64_t den);
    // Throws std::domain_error for non-finite v.
    static Number real(double v);

    [[nodiscard]] bool is_exact() const { return exact_; }
    [[nodiscard]] std::int64_t numerator() const { return num_; }
    [[nodiscard]] std::int64_t denominator() const { return den_; }
    [[nodiscard]] double to_double() const;

    [[nodiscard]] bool is_zero() const;
    [[nodiscard]] bool is_one() const;
    [[nodiscard]] bool is_negative() const;
    [[nodiscard]] bool is_integer() const { return exact_ && den_ == 1; }

    // Exact when possible; falls back to double on overflow.
    [[nodiscard]] Number pow(std::int64_t exponent) const;
    [[nodiscard]] Number abs() const { return is_negative() ? -*this : *this; }

    // Parseable text: "3", "-3/2", or a 17-significant-digit decimal.
    [[nodiscard]] std::string str() const;

    friend Number operator+(const Number& a, const Number& b);
    friend Number operator-(const Number& a, const Number& b);
    friend Number operator*(const Number& a, const Number& b);
    // Throws std::domain_error on exact division by zero.
    friend Number operator/(const Number& a, const Number& b);
    Number operator-() const;

    // Structural: exact 1/2 and real 0.5 compare unequal.
    friend bool operator==(const Number& a, const Number& b);

private:
    static Number from_wide(__int128 num, __int128 den);

    bool exact_ = true;
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    double real_ = 0.0;
};

}  // namespace sigma::expr
