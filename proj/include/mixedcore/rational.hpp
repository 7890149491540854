#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace mixedcore {

/// Exact arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(int value) : value_(value) {}
    Rational(long value) : value_(value) {}
    Rational(long long value);
    Rational(long numerator, long denominator);
    explicit Rational(mpq_class value);

    /// Parses `"p"` or `"p/q"` (base 10, optional leading minus, q > 0).
    /// Returns nullopt on anything else.
    static std::optional<Rational> parse(std::string_view text);

    /// Canonical fraction string, e.g. "3/4", "-2", "0".
    std::string str() const;

    int sign() const { return sgn(value_); }
    bool is_zero() const { return sign() == 0; }
    bool is_positive() const { return sign() > 0; }
    bool is_negative() const { return sign() < 0; }

    Rational numerator() const;
    Rational denominator() const;
    Rational abs() const;
    Rational reciprocal() const;

    const mpq_class& raw() const { return value_; }

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    Rational operator-() const;

    friend bool operator==(const Rational& lhs, const Rational& rhs) {
        return cmp(lhs.value_, rhs.value_) == 0;
    }
    friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
        const int c = cmp(lhs.value_, rhs.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class value_;
};

using RationalVector = std::vector<Rational>;

Rational dot(std::span<const Rational> lhs, std::span<const Rational> rhs);
Rational sum(std::span<const Rational> values);
RationalVector scaled(std::span<const Rational> values, const Rational& factor);

std::ostream& operator<<(std::ostream& os, const Rational& value);

}  // namespace mixedcore
