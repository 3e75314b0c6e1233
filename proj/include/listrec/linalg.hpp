#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "listrec/field.hpp"

namespace listrec {

using Vec = std::vector<Residue>;

/// Dense row-major matrix over F_p.
class MatrixFp {
public:
    MatrixFp(std::uint32_t p, std::size_t rows, std::size_t cols);
    MatrixFp(std::uint32_t p, const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols);

    static MatrixFp identity(std::uint32_t p, std::size_t n);
    static MatrixFp from_rows(std::uint32_t p, std::size_t cols, const std::vector<Vec>& rows);

    std::uint32_t p() const noexcept { return p_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Residue& at(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    Residue at(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
    std::span<const Residue> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
    const std::vector<Residue>& data() const noexcept { return data_; }

    /// M * v for a column vector v of length cols().
    Vec apply(std::span<const Residue> v) const;
    MatrixFp transpose() const;
    /// Rows of *this followed by rows of other.
    MatrixFp stack(const MatrixFp& other) const;
    void append_row(std::span<const Residue> r);

    friend bool operator==(const MatrixFp&, const MatrixFp&) = default;
    friend auto operator<=>(const MatrixFp&, const MatrixFp&) = default;

private:
    std::uint32_t p_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Residue> data_;
};

/// Subspace of F_p^k held as its reduced row echelon basis (no zero rows), so
/// equality of values is equality of sets.
class Subspace {
public:
    static Subspace zero(std::uint32_t p, std::size_t ambient_dim);
    static Subspace full(std::uint32_t p, std::size_t ambient_dim);
    static Subspace span(std::uint32_t p, std::size_t ambient_dim, const std::vector<Vec>& vectors);

    std::uint32_t p() const noexcept { return basis_.p(); }
    std::size_t ambient_dim() const noexcept { return basis_.cols(); }
    std::size_t dim() const noexcept { return basis_.rows(); }
    const MatrixFp& basis() const noexcept { return basis_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

    bool contains(std::span<const Residue> v) const;
    /// All p^dim elements, ordered by coefficient vector (first basis row most significant).
    std::vector<Vec> elements() const;

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }
    friend auto operator<=>(const Subspace& a, const Subspace& b) { return a.basis_ <=> b.basis_; }

private:
    explicit Subspace(MatrixFp basis, std::vector<std::size_t> pivots)
        : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

    MatrixFp basis_;
    std::vector<std::size_t> pivots_;

    friend Subspace rref(const MatrixFp& m);
    friend class SubspaceEnumeration;
};

/// Row space of m in canonical form.
Subspace rref(const MatrixFp& m);
std::size_t rank(const MatrixFp& m);
/// {x : m x = 0}.
Subspace kernel(const MatrixFp& m);
/// Orthogonal complement under the standard dot product.
Subspace annihilator(const Subspace& u);
Subspace intersect(const Subspace& u, const Subspace& w);
Subspace subspace_sum(const Subspace& u, const Subspace& w);
/// dim(U ∩ W) through rank of the stacked bases, without forming the intersection.
std::size_t intersection_dim(const Subspace& u, const Subspace& w);
/// m(U) where m maps F_p^{cols} -> F_p^{rows}.
Subspace image(const MatrixFp& m, const Subspace& u);
std::size_t image_dim(const MatrixFp& m, const Subspace& u);

/// Number of d-dimensional subspaces of F_p^k, or nullopt on 64-bit overflow.
std::optional<std::uint64_t> gaussian_binomial(std::uint64_t p, std::size_t k, std::size_t d);

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// Indexable enumeration of all d-dimensional subspaces of F_p^k. Order: pivot
/// profiles in ascending lexicographic order, then free entries lexicographically
/// (row-major free positions, earliest most significant). Indexing makes the
/// stream splittable across workers.
class SubspaceEnumeration {
public:
    SubspaceEnumeration(std::uint32_t p, std::size_t k, std::size_t d,
                        std::uint64_t budget = kDefaultEnumerationBudget);

    std::uint64_t size() const noexcept { return total_; }
    Subspace at(std::uint64_t index) const;
    void for_each(const std::function<void(std::uint64_t, const Subspace&)>& fn) const;

private:
    struct Profile {
        std::vector<std::size_t> pivots;
        std::vector<std::pair<std::size_t, std::size_t>> free_positions;
        std::uint64_t offset;
        std::uint64_t count;
    };

    std::uint32_t p_;
    std::size_t k_;
    std::size_t d_;
    std::vector<Profile> profiles_;
    std::uint64_t total_ = 0;
};

/// Convenience: materialize all d-dimensional subspaces.
std::vector<Subspace> enumerate_subspaces(std::uint32_t p, std::size_t k, std::size_t d,
                                          std::uint64_t budget = kDefaultEnumerationBudget);

/// Every subspace of F_p^k ordered by dimension then enumeration order.
/// Budget applies to the total.
std::vector<Subspace> enumerate_all_subspaces(std::uint32_t p, std::size_t k,
                                              std::uint64_t budget = kDefaultEnumerationBudget);

/// Linear surjection F_p^k -> F_p^{k - dim W} with kernel W; the coset
/// representative of v is v reduced against W's echelon basis, and the quotient
/// coordinates are its entries at W's non-pivot columns.
class QuotientData {
public:
    explicit QuotientData(Subspace w);

    const Subspace& subspace() const noexcept { return w_; }
    std::size_t ambient_dim() const noexcept { return w_.ambient_dim(); }
    std::size_t quotient_dim() const noexcept { return free_columns_.size(); }
    Vec representative(std::span<const Residue> v) const;
    Vec coordinates(std::span<const Residue> v) const;
    /// Inverse of coordinates(): the representative with these free-column entries.
    Vec lift(std::span<const Residue> coords) const;
    /// Quotient map as a (k - dim W) x k matrix.
    MatrixFp projection() const;

private:
    Subspace w_;
    std::vector<std::size_t> free_columns_;
};

QuotientData quotient_data(std::size_t v_dim, const Subspace& w);

/// Base-p index <-> vector, coordinate 0 least significant.
std::uint64_t vector_index(std::uint32_t p, std::span<const Residue> v) noexcept;
Vec vector_from_index(std::uint32_t p, std::size_t dim, std::uint64_t index);
/// p^dim, or nullopt on overflow.
std::optional<std::uint64_t> checked_power(std::uint64_t p, std::size_t dim) noexcept;

}  // namespace listrec
