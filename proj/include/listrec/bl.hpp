#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "listrec/exec.hpp"
#include "listrec/linalg.hpp"
#include "listrec/rational.hpp"
#include "listrec/rng.hpp"

namespace listrec {

inline constexpr double kSlackTolerance = 1e-9;
inline constexpr std::size_t kMaxSupport = 100'000;
inline constexpr std::uint64_t kMaxAmbientSize = 1'000'000;

/// Ambient space F_p^{v_dim}, maps pi_i : F_p^{v_dim} -> F_p^{rows_i}, and
/// nonnegative scalars s_i.
struct BLInstance {
    std::uint32_t p = 2;
    std::size_t v_dim = 0;
    std::vector<MatrixFp> maps;
    std::vector<Rational> scalars;

    void validate() const;
    friend bool operator==(const BLInstance&, const BLInstance&) = default;
};

/// Finitely supported distribution on F_p^{v_dim}. Keys are vector_index() of
/// the support vector, so iteration order is deterministic.
class DiscreteDistribution {
public:
    DiscreteDistribution(std::uint32_t p, std::size_t v_dim);

    static DiscreteDistribution point_mass(std::uint32_t p, std::size_t v_dim, std::span<const Residue> v);
    static DiscreteDistribution uniform(std::uint32_t p, std::size_t v_dim, const std::vector<Vec>& points);
    static DiscreteDistribution uniform_on(const Subspace& u);

    std::uint32_t p() const noexcept { return p_; }
    std::size_t v_dim() const noexcept { return v_dim_; }
    const std::map<std::uint64_t, double>& support() const noexcept { return mass_; }
    std::size_t support_size() const noexcept { return mass_.size(); }

    /// Adds mass to a vector (accumulating).
    void add(std::span<const Residue> v, double probability);
    double probability(std::span<const Residue> v) const;
    Vec vector_at(std::uint64_t key) const { return vector_from_index(p_, v_dim_, key); }
    double total() const;
    /// Probabilities nonnegative and total within 1e-9 of 1.
    void validate() const;

    friend bool operator==(const DiscreteDistribution&, const DiscreteDistribution&) = default;

private:
    std::uint32_t p_;
    std::size_t v_dim_;
    std::map<std::uint64_t, double> mass_;
};

/// Sum of s_i dim(pi_i(U)).
Rational weighted_image_dim(const BLInstance& inst, const Subspace& u);

/// First subspace (by dimension, then enumeration order) with
/// dim U > sum_i s_i dim pi_i(U), or nullopt when the condition holds everywhere.
std::optional<Subspace> check_dim_condition(const BLInstance& inst, const ExecOptions& opts = {});

/// Shannon entropy in nats.
double entropy(const DiscreteDistribution& x);
DiscreteDistribution pushforward(const DiscreteDistribution& x, const MatrixFp& m);
/// 1 - max probability.
double remainder(const DiscreteDistribution& x);

/// sum_i s_i H(pi_i X) - H(X).
double verify_entropy_bl(const BLInstance& inst, const DiscreteDistribution& x);
/// sum_i s_i r(pi_i X) - r(X).
double verify_remainder_bl(const BLInstance& inst, const DiscreteDistribution& x);

/// All subspaces where the dimension condition is an exact equality; {0} first.
std::vector<Subspace> find_critical(const BLInstance& inst, const ExecOptions& opts = {});

/// Uniformly rescaled instance: scalars times c = max over nonzero U of
/// dim U / sum_i s_i dim pi_i(U). The result still satisfies the dimension
/// condition and is critical at some nonzero subspace.
BLInstance tighten_scalars(const BLInstance& inst, const ExecOptions& opts = {});

struct ChainDecomposition {
    QuotientData quotient;
    /// Distribution of the coset, over quotient coordinates F_p^{v_dim - dim W}.
    DiscreteDistribution quotient_distribution;
    /// Keyed by quotient coordinate index; conditional law of X on each
    /// positive-probability coset, as a distribution over the ambient space.
    std::map<std::uint64_t, DiscreteDistribution> conditionals;

    /// X_{v+W}: the stored conditional or, for a zero-probability coset, the
    /// uniform distribution on v + W.
    DiscreteDistribution conditional(std::span<const Residue> quotient_coords) const;
};

ChainDecomposition chain_decompose(const DiscreteDistribution& x, const Subspace& w);

/// Random instance: m maps with random target dimension 0..v_dim+1, scalars num/den
/// with den in [1, max_den] and num in [0, max_num].
BLInstance random_bl_instance(Rng& rng, std::uint32_t p, std::size_t v_dim, std::size_t m,
                              std::int64_t max_num = 6, std::int64_t max_den = 4);

/// Random distribution: support of the given size (<= p^v_dim) drawn without
/// replacement, exponential(1) weights normalized.
DiscreteDistribution random_distribution(Rng& rng, std::uint32_t p, std::size_t v_dim, std::size_t support_size);

}  // namespace listrec

namespace listrec {

/// psi(X_{/W}) for psi(v + W) = pi(v) + pi(W), as a distribution over the
/// quotient coordinates of F_p^{rows} / pi(W).
DiscreteDistribution quotient_pushforward(const ChainDecomposition& chain, const DiscreteDistribution& x,
                                          const MatrixFp& pi);

}  // namespace listrec
