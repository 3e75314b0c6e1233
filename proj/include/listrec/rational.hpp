#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace listrec {

/// Exact rational with 64-bit numerator/denominator, always reduced, den > 0.
/// Intermediate products use 128-bit arithmetic; overflow of the reduced
/// result throws InvalidArgument.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num);  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t num, std::int64_t den);

    static Rational parse(const std::string& text);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
    long double to_long_double() const noexcept {
        return static_cast<long double>(num_) / static_cast<long double>(den_);
    }
    std::int64_t floor() const noexcept;
    std::int64_t ceil() const noexcept;
    bool is_integer() const noexcept { return den_ == 1; }
    std::string str() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

private:
    static Rational from_wide(__int128 num, __int128 den);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace listrec
