#include "listrec/field.hpp"

#include <string>

#include "listrec/error.hpp"

namespace listrec {

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    if (!is_prime(p)) throw InvalidArgument("modulus " + std::to_string(p) + " is not prime");
}

Residue PrimeField::pow(Residue a, std::uint64_t e) const noexcept {
    std::uint64_t base = a % p_;
    std::uint64_t acc = 1 % p_;
    while (e > 0) {
        if (e & 1U) acc = acc * base % p_;
        base = base * base % p_;
        e >>= 1U;
    }
    return static_cast<Residue>(acc);
}

Residue PrimeField::inv(Residue a) const {
    if (a == 0) throw DivisionByZero();
    // Extended Euclid on (a, p).
    std::int64_t r0 = p_, r1 = a, t0 = 0, t1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        std::int64_t t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    return reduce(t0);
}

FieldElement::FieldElement(std::uint32_t p, std::int64_t value) : p_(p), value_(PrimeField(p).reduce(value)) {}

void FieldElement::require_same(const FieldElement& o) const {
    if (p_ != o.p_) throw ModulusMismatch(p_, o.p_);
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    require_same(o);
    std::uint32_t s = value_ + o.value_;
    return {p_, s >= p_ ? s - p_ : s, Unchecked{}};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    require_same(o);
    return {p_, value_ >= o.value_ ? value_ - o.value_ : value_ + p_ - o.value_, Unchecked{}};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    require_same(o);
    return {p_, static_cast<Residue>(static_cast<std::uint64_t>(value_) * o.value_ % p_), Unchecked{}};
}

FieldElement FieldElement::operator-() const { return {p_, value_ == 0 ? 0 : p_ - value_, Unchecked{}}; }

FieldElement FieldElement::pow(std::uint64_t e) const {
    std::uint64_t base = value_, acc = 1 % p_;
    while (e > 0) {
        if (e & 1U) acc = acc * base % p_;
        base = base * base % p_;
        e >>= 1U;
    }
    return {p_, static_cast<Residue>(acc), Unchecked{}};
}

FieldElement field_inverse(const FieldElement& a) {
    if (a.is_zero()) throw DivisionByZero();
    return {a.p_, PrimeField(a.p_).inv(a.value_), FieldElement::Unchecked{}};
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

FieldElement find_generator(std::uint32_t p) {
    PrimeField f(p);
    if (p == 2) return {2, 1};
    const std::uint64_t order = p - 1;
    const auto factors = prime_factors(order);
    for (Residue g = 2; g < p; ++g) {
        bool primitive = true;
        for (auto r : factors) {
            if (f.pow(g, order / r) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return {p, g};
    }
    throw InvalidArgument("no primitive root found");  // unreachable for prime p
}

std::uint64_t multiplicative_order(const PrimeField& f, Residue a) {
    if (a % f.p() == 0) throw DivisionByZero();
    std::uint64_t order = 1;
    Residue x = a % f.p();
    while (x != 1) {
        x = f.mul(x, a);
        ++order;
    }
    return order;
}

Residue binomial_mod(const PrimeField& f, std::uint64_t m, std::uint64_t j) {
    const std::uint64_t p = f.p();
    Residue acc = 1;
    while (m > 0 || j > 0) {
        std::uint64_t mi = m % p, ji = j % p;
        if (ji > mi) return 0;
        // C(mi, ji) with mi < p: numerator and denominator are units.
        Residue num = 1, den = 1;
        for (std::uint64_t t = 0; t < ji; ++t) {
            num = f.mul(num, static_cast<Residue>(mi - t));
            den = f.mul(den, static_cast<Residue>(t + 1));
        }
        acc = f.mul(acc, f.mul(num, f.inv(den)));
        m /= p;
        j /= p;
    }
    return acc;
}

DensePoly::DensePoly(std::uint32_t p, std::vector<std::int64_t> coeffs) : p_(p) {
    PrimeField f(p);
    coeffs_.reserve(coeffs.size());
    for (auto c : coeffs) coeffs_.push_back(f.reduce(c));
    normalize();
}

DensePoly DensePoly::from_residues(std::uint32_t p, std::span<const Residue> coeffs) {
    DensePoly out(p);
    out.coeffs_.assign(coeffs.begin(), coeffs.end());
    for (auto& c : out.coeffs_) c %= p;
    out.normalize();
    return out;
}

DensePoly DensePoly::monomial(std::uint32_t p, std::size_t degree, Residue c) {
    DensePoly out(p);
    out.coeffs_.assign(degree + 1, 0);
    out.coeffs_[degree] = c % p;
    out.normalize();
    return out;
}

void DensePoly::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

void DensePoly::require_same(const DensePoly& o) const {
    if (p_ != o.p_) throw ModulusMismatch(p_, o.p_);
}

DensePoly DensePoly::operator+(const DensePoly& o) const {
    require_same(o);
    PrimeField f(p_);
    DensePoly out(p_);
    out.coeffs_.resize(std::max(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] = f.add(coeff(i), o.coeff(i));
    out.normalize();
    return out;
}

DensePoly DensePoly::operator-(const DensePoly& o) const {
    require_same(o);
    PrimeField f(p_);
    DensePoly out(p_);
    out.coeffs_.resize(std::max(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] = f.sub(coeff(i), o.coeff(i));
    out.normalize();
    return out;
}

DensePoly DensePoly::operator*(const DensePoly& o) const {
    require_same(o);
    DensePoly out(p_);
    if (is_zero() || o.is_zero()) return out;
    PrimeField f(p_);
    out.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
            out.coeffs_[i + j] = f.add(out.coeffs_[i + j], f.mul(coeffs_[i], o.coeffs_[j]));
        }
    }
    out.normalize();
    return out;
}

Residue poly_eval(const PrimeField& field, std::span<const Residue> coeffs, Residue x) noexcept {
    Residue acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = field.add(field.mul(acc, x), *it);
    return acc;
}

FieldElement poly_eval(const DensePoly& f, const FieldElement& x) {
    if (f.p() != x.p()) throw ModulusMismatch(f.p(), x.p());
    return {f.p(), poly_eval(PrimeField(f.p()), f.coeffs(), x.value())};
}

DensePoly hasse_derivative(const DensePoly& f, std::size_t j) {
    if (j == 0) return f;
    const auto& c = f.coeffs();
    if (c.size() <= j) return DensePoly(f.p());
    PrimeField field(f.p());
    std::vector<Residue> out(c.size() - j, 0);
    for (std::size_t m = j; m < c.size(); ++m) out[m - j] = field.mul(binomial_mod(field, m, j), c[m]);
    return DensePoly::from_residues(f.p(), out);
}

}  // namespace listrec
