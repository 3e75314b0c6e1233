#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "listrec/rational.hpp"

namespace listrec {

inline constexpr double kGuardBand = 1e-12;

/// Principal branch W0 on z >= 0 by Halley iteration from ln(1 + z).
double lambert_w0(double z);

enum class Verdict { kHolds, kFails, kBoundary };
std::string verdict_name(Verdict v);

/// A strict inequality lhs < rhs decided with the guard band: within it the
/// verdict is kBoundary.
Verdict strict_less(double lhs, double rhs, double guard = kGuardBand);

struct Precondition {
    bool met;
    std::string message;
};

/// Result of a closed-form evaluation. `value` is set only when every
/// precondition is met.
struct BoundReport {
    std::string name;
    std::variant<std::monostate, Rational, double> value;
    std::vector<Precondition> preconditions;
    std::string anchor;  // the formula evaluated
    // Extra named quantities (e.g. both sides of an inequality).
    std::vector<std::pair<std::string, std::variant<Rational, double, std::int64_t, std::string>>> details;

    bool ok() const;
};

struct ZeroErrorCheck {
    Rational lhs;        // (k - 1) / (n (s - L + 1))
    double rhs;          // 1 - ln l / ln(L + 1)
    std::optional<Rational> rhs_exact;  // when L + 1 is a power of l
    Verdict verdict;
};

/// Zero-error list-recovery condition (k-1)/(n(s-L+1)) < 1 - ln l / ln(L+1).
ZeroErrorCheck zero_error_ok(std::int64_t k, std::int64_t n, std::int64_t s, std::int64_t ell, std::int64_t L);

struct ZeroErrorListSize {
    std::int64_t L;      // floor(l^{1/(1-R-eps)})
    std::int64_t s_min;  // ceil((R/eps + 1)(L - 1))
};
ZeroErrorListSize zero_error_list_size(const Rational& R, const Rational& eps, std::int64_t ell);

struct RadiusThreshold {
    double rho_star;   // 1 - R' ln(L+1) / W(R'(L+1) ln(L+1) / l)
    double cap;        // 1 - l / (L+1)
    double capped;     // min(rho_star, cap)
    bool cap_applied;
    double w_argument;
};
RadiusThreshold radius_threshold(double R, double mu, std::int64_t ell, double L);

/// Residual of R' ln(L+1) = t ln t + t ln((L+1)/l) at t = 1 - rho.
double radius_threshold_residual(double R, double mu, std::int64_t ell, double L, double rho);

enum class ListVariant { kBase, kRlc, kRrs };
std::string variant_name(ListVariant v);

struct AsymptoticL {
    double exponent;     // 3+2R/eps, 5+4R/eps or 9+8R/eps
    double base;         // l / (R + eps/2)
    double log10_value;
    std::optional<double> value;        // when finite in double precision
    std::optional<std::int64_t> ceiling;
    std::int64_t m;      // least m >= 1 with l^m >= (l/(R+eps/2))^{2+2R/eps}
};
AsymptoticL asymptotic_L(std::int64_t ell, double R, double eps, ListVariant variant);

enum class RequirementVariant { kFrs, kMult, kRlc, kRrs, kFrsAverageRadius, kMultAverageRadius };
std::string requirement_variant_name(RequirementVariant v);
RequirementVariant parse_requirement_variant(const std::string& name);

struct Requirement {
    std::string quantity;    // "s" or "q"
    std::string expression;  // e.g. "s >= 16*l/eps^2"
    std::optional<double> value;     // threshold when representable (<= 1e300)
    std::optional<double> log10_value;
    std::optional<Rational> exact;
};

/// Alphabet / folding requirements. R is needed only by the average-radius variants.
std::vector<Requirement> alphabet_and_folding_requirements(std::int64_t ell, const Rational& eps, std::int64_t L,
                                                           RequirementVariant variant,
                                                           std::optional<Rational> R = std::nullopt);

/// L/(L+1) (1 - (k-1)/(n(s-L+1))); requires 1 <= L <= s.
Rational singleton_radius(std::int64_t k, std::int64_t n, std::int64_t s, std::int64_t L);

struct ConjectureRho {
    std::int64_t L;  // l^a - 1
    Rational rho_star;
};
ConjectureRho conjecture_rho_star(std::int64_t ell, std::int64_t a, const Rational& R);

double johnson_radius(double ell, double R);

/// Table-1-shaped rows for one (l, R, eps) grid point, one per code family.
struct TableRow {
    std::string family;
    std::int64_t ell;
    Rational R;
    Rational eps;
    std::string alphabet_requirement;
    double list_size_log10;
    std::string list_size;
    std::string explicitness;
};
std::vector<TableRow> table1_rows(std::int64_t ell, const Rational& R, const Rational& eps);

/// Inputs for evaluate_bound; each mode reads only the fields it needs.
struct BoundParams {
    std::optional<std::int64_t> ell, L, k, n, s, a;
    std::optional<Rational> R, eps, mu;
    std::optional<std::string> variant;
};

/// Evaluates one formula by mode name: zero-error, zero-error-size, asymptotic,
/// threshold, singleton, conjecture, johnson, requirements. Missing fields and
/// violated preconditions are reported in the result rather than thrown; an
/// unknown mode throws InvalidArgument.
BoundReport evaluate_bound(const std::string& mode, const BoundParams& params);

/// Formatting helper: 12 significant digits.
std::string format_real(double v);

}  // namespace listrec
