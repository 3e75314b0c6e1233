#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace listrec {

using Residue = std::uint32_t;

bool is_prime(std::uint64_t n) noexcept;

/// Arithmetic in the prime field F_p. Values passed in are assumed canonical.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p);

    std::uint32_t p() const noexcept { return p_; }

    Residue reduce(std::int64_t v) const noexcept {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        return static_cast<Residue>(r < 0 ? r + p_ : r);
    }
    Residue add(Residue a, Residue b) const noexcept {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Residue mul(Residue a, Residue b) const noexcept {
        return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p_);
    }
    Residue pow(Residue a, std::uint64_t e) const noexcept;
    /// Throws DivisionByZero for a == 0.
    Residue inv(Residue a) const;

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint32_t p_;
};

/// A residue tagged with its modulus; mixing moduli throws ModulusMismatch.
class FieldElement {
public:
    FieldElement(std::uint32_t p, std::int64_t value);

    std::uint32_t p() const noexcept { return p_; }
    Residue value() const noexcept { return value_; }
    bool is_zero() const noexcept { return value_ == 0; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement pow(std::uint64_t e) const;

    friend bool operator==(const FieldElement&, const FieldElement&) = default;

private:
    struct Unchecked {};
    FieldElement(std::uint32_t p, Residue v, Unchecked) : p_(p), value_(v) {}
    void require_same(const FieldElement& o) const;

    std::uint32_t p_;
    Residue value_;

    friend FieldElement field_inverse(const FieldElement& a);
};

FieldElement field_inverse(const FieldElement& a);

/// Smallest primitive root modulo p (p = 2 gives 1).
FieldElement find_generator(std::uint32_t p);

/// Multiplicative order of a nonzero residue.
std::uint64_t multiplicative_order(const PrimeField& f, Residue a);

/// C(m, j) mod p via Lucas' theorem.
Residue binomial_mod(const PrimeField& f, std::uint64_t m, std::uint64_t j);

/// Univariate polynomial over F_p, coefficient i multiplies x^i. Trailing zeros are trimmed.
class DensePoly {
public:
    explicit DensePoly(std::uint32_t p) : p_(p) {}
    DensePoly(std::uint32_t p, std::vector<std::int64_t> coeffs);

    static DensePoly from_residues(std::uint32_t p, std::span<const Residue> coeffs);
    static DensePoly monomial(std::uint32_t p, std::size_t degree, Residue c = 1);

    std::uint32_t p() const noexcept { return p_; }
    const std::vector<Residue>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    Residue coeff(std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : 0; }

    DensePoly operator+(const DensePoly& o) const;
    DensePoly operator-(const DensePoly& o) const;
    DensePoly operator*(const DensePoly& o) const;

    friend bool operator==(const DensePoly&, const DensePoly&) = default;

private:
    void normalize();
    void require_same(const DensePoly& o) const;

    std::uint32_t p_;
    std::vector<Residue> coeffs_;
};

FieldElement poly_eval(const DensePoly& f, const FieldElement& x);
Residue poly_eval(const PrimeField& field, std::span<const Residue> coeffs, Residue x) noexcept;

/// j-th Hasse derivative: x^m -> C(m, j) x^(m-j).
DensePoly hasse_derivative(const DensePoly& f, std::size_t j);

}  // namespace listrec
