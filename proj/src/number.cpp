#include "sigma/number.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sigma::expr {

namespace {

__int128 gcd_wide(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();

}  // namespace

Number Number::from_wide(__int128 num, __int128 den) {
    if (den == 0) throw std::domain_error("division by zero");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const __int128 g = gcd_wide(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (num > kMax || num < -kMax || den > kMax) {
        return real(static_cast<double>(num) / static_cast<double>(den));
    }
    Number out;
    out.num_ = static_cast<std::int64_t>(num);
    out.den_ = static_cast<std::int64_t>(den);
    return out;
}

Number Number::rational(std::int64_t num, std::int64_t den) {
    return from_wide(num, den);
}

Number Number::real(double v) {
    if (!std::isfinite(v)) throw std::domain_error("non-finite constant");
    Number out;
    out.exact_ = false;
    out.real_ = v;
    return out;
}

double Number::to_double() const {
    if (!exact_) return real_;
    return static_cast<double>(num_) / static_cast<double>(den_);
}

bool Number::is_zero() const { return exact_ ? num_ == 0 : real_ == 0.0; }

bool Number::is_one() const { return exact_ ? (num_ == 1 && den_ == 1) : real_ == 1.0; }

bool Number::is_negative() const { return exact_ ? num_ < 0 : real_ < 0.0; }

Number Number::pow(std::int64_t exponent) const {
    if (!exact_) return real(std::pow(real_, static_cast<double>(exponent)));
    if (exponent < 0) {
        if (num_ == 0) throw std::domain_error("division by zero");
        return Number::rational(den_, num_).pow(-exponent);
    }
    Number result(1);
    Number base = *this;
    std::int64_t e = exponent;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

std::string Number::str() const {
    if (exact_) {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", real_);
    return buf;
}

Number operator+(const Number& a, const Number& b) {
    if (!a.exact_ || !b.exact_) return Number::real(a.to_double() + b.to_double());
    return Number::from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                             static_cast<__int128>(a.den_) * b.den_);
}

Number operator-(const Number& a, const Number& b) { return a + (-b); }

Number operator*(const Number& a, const Number& b) {
    if (!a.exact_ || !b.exact_) return Number::real(a.to_double() * b.to_double());
    return Number::from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

Number operator/(const Number& a, const Number& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (!a.exact_ || !b.exact_) return Number::real(a.to_double() / b.to_double());
    return Number::from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}

Number Number::operator-() const {
    if (!exact_) return real(-real_);
    return from_wide(-static_cast<__int128>(num_), den_);
}

bool operator==(const Number& a, const Number& b) {
    if (a.exact_ != b.exact_) return false;
    if (a.exact_) return a.num_ == b.num_ && a.den_ == b.den_;
    return a.real_ == b.real_;
}

}  // namespace sigma::expr
