#include "mixedcore/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace mixedcore {

namespace {

bool all_digits(std::string_view text) {
    if (text.empty()) {
        return false;
    }
    for (char ch : text) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) {
            return false;
        }
    }
    return true;
}

}  // namespace

Rational::Rational(long long value) : value_(std::to_string(value)) {}

Rational::Rational(long numerator, long denominator) : value_(numerator, denominator) {
    if (denominator == 0) {
        throw std::domain_error("Rational: zero denominator");
    }
    value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) {
    if (sgn(value_.get_den()) == 0) {
        throw std::domain_error("Rational: zero denominator");
    }
    value_.canonicalize();
}

std::optional<Rational> Rational::parse(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && body.front() == '-') {
        negative = true;
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"}
                                                           : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
        return std::nullopt;
    }
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (sgn(d) == 0) {
        return std::nullopt;
    }
    if (negative) {
        n = -n;
    }
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(std::move(q));
}

std::string Rational::str() const { return value_.get_str(10); }

Rational Rational::numerator() const { return Rational(mpq_class(value_.get_num())); }
Rational Rational::denominator() const { return Rational(mpq_class(value_.get_den())); }

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational Rational::reciprocal() const {
    if (is_zero()) {
        throw std::domain_error("Rational: reciprocal of zero");
    }
    return Rational(mpq_class(1) / value_);
}

Rational& Rational::operator+=(const Rational& rhs) {
    value_ += rhs.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    value_ -= rhs.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    value_ *= rhs.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) {
        throw std::domain_error("Rational: division by zero");
    }
    value_ /= rhs.value_;
    return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

Rational dot(std::span<const Rational> lhs, std::span<const Rational> rhs) {
    if (lhs.size() != rhs.size()) {
        throw std::invalid_argument("dot: length mismatch");
    }
    mpq_class acc;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        acc += lhs[i].raw() * rhs[i].raw();
    }
    return Rational(std::move(acc));
}

Rational sum(std::span<const Rational> values) {
    mpq_class acc;
    for (const auto& v : values) {
        acc += v.raw();
    }
    return Rational(std::move(acc));
}

RationalVector scaled(std::span<const Rational> values, const Rational& factor) {
    RationalVector out;
    out.reserve(values.size());
    for (const auto& v : values) {
        out.push_back(v * factor);
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.str(); }

}  // namespace mixedcore
