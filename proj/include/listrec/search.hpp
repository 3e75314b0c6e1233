#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "listrec/codes.hpp"
#include "listrec/exec.hpp"
#include "listrec/rational.hpp"

namespace listrec {

/// Received table: one candidate set S_i of s-vectors per coordinate.
struct ListTable {
    std::vector<std::vector<Symbol>> sets;

    /// Checks n sets, symbol lengths s, entries < p and, when given, |S_i| <= ell.
    void validate(const CodeSpec& spec, std::optional<std::size_t> ell = std::nullopt) const;
    friend bool operator==(const ListTable&, const ListTable&) = default;
};

/// Every message f with |{i : C(f)_i not in S_i}| <= rho n, ordered by
/// vector_index of the message (coefficient 0 least significant).
std::vector<Vec> brute_list_recover(const CodeSpec& spec, const ListTable& table, const Rational& rho,
                                    const ExecOptions& opts = {});

struct ZeroErrorListResult {
    std::size_t L_max = 0;
    std::vector<Vec> witness;  // messages attaining L_max
    bool exhaustive = true;
    std::uint64_t nodes = 0;
};

/// Largest message set whose encodings take at most ell distinct symbols in
/// every coordinate (branch and bound; the set may be assumed to contain 0 by
/// linearity). Node budget exhaustion returns the best found with exhaustive = false.
ZeroErrorListResult max_zero_error_list(const CodeSpec& spec, std::size_t ell, const ExecOptions& opts = {});

enum class AdversaryMode { kListRecovery, kListDecoding };

struct SearchOutcome {
    bool found = false;
    std::vector<Vec> witness_messages;
    /// rho_i = (list members whose symbol i misses S_i) / (L + 1).
    std::vector<Rational> per_coordinate_errors;
    std::uint64_t total_errors = 0;
    ListTable adversary;  // S_i (list recovery) or {y_i} (list decoding) for the witness
    std::uint64_t total_budget_used = 0;
    bool exhaustive = true;
    std::uint64_t budget = 0;
    std::optional<std::uint64_t> seed;
    std::uint64_t trials = 0;
};

struct AverageRadiusOptions {
    ExecOptions exec;
    /// When the C(p^k, L+1) subsets exceed the budget, sample `trials` random subsets instead of failing.
    bool randomized = false;
    std::uint64_t seed = 0;
    std::uint64_t trials = 100'000;
};

/// Enumerates (L+1)-subsets of messages in colex order and builds the optimal
/// per-coordinate adversary (plurality symbol, or the ell most frequent symbols,
/// ties to the smallest symbol). Reports the colex-first subset with total
/// errors <= rho (L+1) n. OpenMP-parallel over the largest subset element.
SearchOutcome average_radius_bad_list_search(const CodeSpec& spec, std::size_t ell, std::size_t L,
                                             const Rational& rho, AdversaryMode mode,
                                             const AverageRadiusOptions& opts = {});

struct ZeroErrorConfirmation {
    bool applicable = false;
    std::string reason;              // why not applicable
    std::vector<std::size_t> holding_L;  // L in [ell, s] where the zero-error condition holds
    std::optional<std::size_t> guaranteed_L;  // smallest holding L
    std::optional<std::size_t> largest_L;
    std::optional<bool> design_hypothesis;    // GK design bound checked for d <= min(s, k)
    ZeroErrorListResult search;
    bool confirmed = false;  // L_max <= guaranteed_L
    std::int64_t margin = 0; // guaranteed_L - L_max
};

ZeroErrorConfirmation confirm_zero_error_theorem(const CodeSpec& spec, std::size_t ell, const ExecOptions& opts = {});

/// Per-coordinate error counts of a message list against a table, recomputed through encode().
std::vector<std::uint64_t> score_list(const CodeSpec& spec, const std::vector<Vec>& messages, const ListTable& table);

/// n choose r, or nullopt past 64 bits.
std::optional<std::uint64_t> binomial_u64(std::uint64_t n, std::uint64_t r);

namespace reference {

/// Serial, encode()-per-message scan.
std::vector<Vec> brute_list_recover(const CodeSpec& spec, const ListTable& table, const Rational& rho,
                                    std::uint64_t budget = kDefaultEnumerationBudget);

/// Serial lexicographic-recursion subset scan with std::map frequency counts;
/// returns the colex-first witness like the parallel kernel.
SearchOutcome average_radius_bad_list_search(const CodeSpec& spec, std::size_t ell, std::size_t L,
                                             const Rational& rho, AdversaryMode mode,
                                             std::uint64_t budget = kDefaultEnumerationBudget);

/// Plain recursion over all subsets containing message 0 (no bounding).
std::size_t max_zero_error_list(const CodeSpec& spec, std::size_t ell);

}  // namespace reference

}  // namespace listrec
