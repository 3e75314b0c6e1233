#pragma once

#include <optional>
#include <vector>

#include "listrec/codes.hpp"
#include "listrec/exec.hpp"
#include "listrec/linalg.hpp"
#include "listrec/rational.hpp"

namespace listrec {

/// d (k - 1) / (s - d + 1); requires d <= s.
Rational design_bound_gk(std::size_t d, std::size_t k, std::size_t s);
/// d (k - d) / (s - d + 1); requires d <= s.
Rational design_bound_improved(std::size_t d, std::size_t k, std::size_t s);

struct DesignReport {
    std::size_t d = 0;
    std::size_t max_sum = 0;
    Subspace witness = Subspace::zero(2, 0);
    std::uint64_t witness_index = 0;
    std::uint64_t subspaces_checked = 0;
    // Present only when the folding parameter is known and d <= s.
    std::optional<Rational> bound_gk;
    std::optional<Rational> bound_improved;
    std::optional<bool> holds_gk;
    std::optional<bool> holds_improved;
    // Filled by check_slacked_designable: (R + mu) d n.
    std::optional<Rational> bound_slacked;
    std::optional<bool> holds_slacked;
};

/// Exact max over d-dimensional U of sum_i dim(U ∩ H_i), OpenMP-parallel over
/// the subspace index. Ties go to the smallest enumeration index.
DesignReport verify_design(const std::vector<Subspace>& kernels, std::size_t d,
                           std::optional<std::size_t> s = std::nullopt, const ExecOptions& opts = {});

/// Runs verify_design for d' = 1..min(d, k) on the spec's coordinate kernels and
/// compares each max_sum against (R + mu) d' n exactly.
std::vector<DesignReport> check_slacked_designable(const CodeSpec& spec, std::size_t d, const Rational& mu,
                                                   const ExecOptions& opts = {});

/// sum_i dim(U ∩ H_i) for one subspace.
std::size_t design_sum(const std::vector<Subspace>& kernels, const Subspace& u);

namespace reference {

/// Serial implementation forming every intersection explicitly.
DesignReport verify_design(const std::vector<Subspace>& kernels, std::size_t d,
                           std::optional<std::size_t> s = std::nullopt,
                           std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace reference

}  // namespace listrec
