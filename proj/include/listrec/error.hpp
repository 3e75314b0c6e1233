#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace listrec {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero in prime field") {}
};

class ModulusMismatch : public InvalidArgument {
public:
    ModulusMismatch(std::uint64_t a, std::uint64_t b)
        : InvalidArgument("modulus mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class DimensionMismatch : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Raised when an exhaustive enumeration would exceed its configured budget.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& what, std::uint64_t required, std::uint64_t budget)
        : Error(what + ": " + std::to_string(required) + " candidates exceed budget " +
                std::to_string(budget)),
          required_(required), budget_(budget) {}

    std::uint64_t required() const noexcept { return required_; }
    std::uint64_t budget() const noexcept { return budget_; }

private:
    std::uint64_t required_;
    std::uint64_t budget_;
};

class NonConvergence : public Error {
public:
    NonConvergence(const std::string& what, double residual)
        : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

}  // namespace listrec
