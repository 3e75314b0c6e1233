#include "listrec/linalg.hpp"

#include <algorithm>
#include <string>

#include "listrec/error.hpp"

namespace listrec {

MatrixFp::MatrixFp(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

MatrixFp::MatrixFp(std::uint32_t p, const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols)
    : MatrixFp(p, rows.size(), cols) {
    PrimeField f(p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw DimensionMismatch("matrix row " + std::to_string(r) + " has wrong length");
        for (std::size_t c = 0; c < cols; ++c) at(r, c) = f.reduce(rows[r][c]);
    }
}

MatrixFp MatrixFp::identity(std::uint32_t p, std::size_t n) {
    MatrixFp m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1 % p;
    return m;
}

MatrixFp MatrixFp::from_rows(std::uint32_t p, std::size_t cols, const std::vector<Vec>& rows) {
    MatrixFp m(p, 0, cols);
    for (const auto& r : rows) m.append_row(r);
    return m;
}

Vec MatrixFp::apply(std::span<const Residue> v) const {
    if (v.size() != cols_) throw DimensionMismatch("matrix-vector size mismatch");
    Vec out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::uint64_t acc = 0;
        for (std::size_t c = 0; c < cols_; ++c) {
            acc += static_cast<std::uint64_t>(at(r, c)) * v[c];
            if (acc >= (1ULL << 62)) acc %= p_;
        }
        out[r] = static_cast<Residue>(acc % p_);
    }
    return out;
}

MatrixFp MatrixFp::transpose() const {
    MatrixFp t(p_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

MatrixFp MatrixFp::stack(const MatrixFp& other) const {
    if (other.p_ != p_) throw ModulusMismatch(p_, other.p_);
    if (other.cols_ != cols_) throw DimensionMismatch("stacking matrices with different column counts");
    MatrixFp out = *this;
    out.data_.insert(out.data_.end(), other.data_.begin(), other.data_.end());
    out.rows_ += other.rows_;
    return out;
}

void MatrixFp::append_row(std::span<const Residue> r) {
    if (r.size() != cols_) throw DimensionMismatch("appended row has wrong length");
    for (auto v : r) data_.push_back(v % p_);
    ++rows_;
}

namespace {

// In-place Gauss-Jordan elimination; returns pivot columns. Rows beyond the
// rank are zero afterwards.
std::vector<std::size_t> eliminate(MatrixFp& m) {
    PrimeField f(m.p());
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && m.at(sel, col) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(sel, c), m.at(row, c));
        Residue inv = f.inv(m.at(row, col));
        for (std::size_t c = col; c < m.cols(); ++c) m.at(row, c) = f.mul(m.at(row, c), inv);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m.at(r, col) == 0) continue;
            Residue factor = m.at(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(row, c)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

void require_compatible(const Subspace& u, const Subspace& w) {
    if (u.p() != w.p()) throw ModulusMismatch(u.p(), w.p());
    if (u.ambient_dim() != w.ambient_dim()) throw DimensionMismatch("subspaces live in different ambient spaces");
}

}  // namespace

Subspace rref(const MatrixFp& m) {
    MatrixFp work = m;
    auto pivots = eliminate(work);
    MatrixFp basis(m.p(), pivots.size(), m.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) basis.at(r, c) = work.at(r, c);
    return Subspace(std::move(basis), std::move(pivots));
}

std::size_t rank(const MatrixFp& m) {
    MatrixFp work = m;
    return eliminate(work).size();
}

Subspace Subspace::zero(std::uint32_t p, std::size_t ambient_dim) {
    return Subspace(MatrixFp(p, 0, ambient_dim), {});
}

Subspace Subspace::full(std::uint32_t p, std::size_t ambient_dim) {
    return rref(MatrixFp::identity(p, ambient_dim));
}

Subspace Subspace::span(std::uint32_t p, std::size_t ambient_dim, const std::vector<Vec>& vectors) {
    return rref(MatrixFp::from_rows(p, ambient_dim, vectors));
}

bool Subspace::contains(std::span<const Residue> v) const {
    if (v.size() != ambient_dim()) throw DimensionMismatch("vector length differs from ambient dimension");
    PrimeField f(p());
    Vec rem(v.begin(), v.end());
    for (auto& x : rem) x %= p();
    for (std::size_t r = 0; r < dim(); ++r) {
        Residue c = rem[pivots_[r]];
        if (c == 0) continue;
        for (std::size_t j = 0; j < ambient_dim(); ++j) rem[j] = f.sub(rem[j], f.mul(c, basis_.at(r, j)));
    }
    return std::all_of(rem.begin(), rem.end(), [](Residue x) { return x == 0; });
}

std::vector<Vec> Subspace::elements() const {
    auto count = checked_power(p(), dim());
    if (!count || *count > kDefaultEnumerationBudget)
        throw BudgetExceeded("subspace element listing", count.value_or(UINT64_MAX), kDefaultEnumerationBudget);
    PrimeField f(p());
    std::vector<Vec> out;
    out.reserve(*count);
    for (std::uint64_t idx = 0; idx < *count; ++idx) {
        Vec coef = vector_from_index(p(), dim(), idx);
        Vec v(ambient_dim(), 0);
        // First basis row most significant: reverse the little-endian digits.
        for (std::size_t r = 0; r < dim(); ++r) {
            Residue c = coef[dim() - 1 - r];
            if (c == 0) continue;
            for (std::size_t j = 0; j < ambient_dim(); ++j) v[j] = f.add(v[j], f.mul(c, basis_.at(r, j)));
        }
        out.push_back(std::move(v));
    }
    return out;
}

Subspace kernel(const MatrixFp& m) {
    MatrixFp work = m;
    auto pivots = eliminate(work);
    PrimeField f(m.p());
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<Vec> vectors;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(m.cols(), 0);
        v[free] = 1 % m.p();
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(work.at(r, free));
        vectors.push_back(std::move(v));
    }
    return Subspace::span(m.p(), m.cols(), vectors);
}

Subspace annihilator(const Subspace& u) { return kernel(u.basis()); }

Subspace intersect(const Subspace& u, const Subspace& w) {
    require_compatible(u, w);
    return annihilator(rref(annihilator(u).basis().stack(annihilator(w).basis())));
}

Subspace subspace_sum(const Subspace& u, const Subspace& w) {
    require_compatible(u, w);
    return rref(u.basis().stack(w.basis()));
}

std::size_t intersection_dim(const Subspace& u, const Subspace& w) {
    require_compatible(u, w);
    return u.dim() + w.dim() - rank(u.basis().stack(w.basis()));
}

namespace {

MatrixFp image_rows(const MatrixFp& m, const Subspace& u) {
    if (m.p() != u.p()) throw ModulusMismatch(m.p(), u.p());
    if (m.cols() != u.ambient_dim()) throw DimensionMismatch("map domain differs from subspace ambient dimension");
    MatrixFp out(m.p(), 0, m.rows());
    for (std::size_t r = 0; r < u.dim(); ++r) out.append_row(m.apply(u.basis().row(r)));
    return out;
}

}  // namespace

Subspace image(const MatrixFp& m, const Subspace& u) { return rref(image_rows(m, u)); }

std::size_t image_dim(const MatrixFp& m, const Subspace& u) { return rank(image_rows(m, u)); }

std::optional<std::uint64_t> checked_power(std::uint64_t p, std::size_t dim) noexcept {
    unsigned __int128 acc = 1;
    for (std::size_t i = 0; i < dim; ++i) {
        acc *= p;
        if (acc > UINT64_MAX) return std::nullopt;
    }
    return static_cast<std::uint64_t>(acc);
}

std::optional<std::uint64_t> gaussian_binomial(std::uint64_t p, std::size_t k, std::size_t d) {
    if (d > k) return 0;
    // Sum over pivot profiles of p^(free entries); equivalently the q-Pascal recurrence
    // [k, d] = [k-1, d-1] + p^d [k-1, d].
    std::vector<std::optional<std::uint64_t>> row(d + 1, std::optional<std::uint64_t>(0));
    row[0] = 1;
    for (std::size_t n = 1; n <= k; ++n) {
        for (std::size_t j = std::min(n, d); j >= 1; --j) {
            auto pj = checked_power(p, j);
            if (!row[j] || !row[j - 1] || !pj) {
                row[j] = std::nullopt;
                continue;
            }
            unsigned __int128 v = static_cast<unsigned __int128>(*pj) * *row[j] + *row[j - 1];
            row[j] = v > UINT64_MAX ? std::nullopt : std::optional<std::uint64_t>(static_cast<std::uint64_t>(v));
        }
    }
    return row[d];
}

SubspaceEnumeration::SubspaceEnumeration(std::uint32_t p, std::size_t k, std::size_t d, std::uint64_t budget)
    : p_(p), k_(k), d_(d) {
    PrimeField{p};
    if (d > k) throw InvalidArgument("subspace dimension exceeds ambient dimension");
    auto count = gaussian_binomial(p, k, d);
    if (!count || *count > budget) {
        throw BudgetExceeded("subspace enumeration of [" + std::to_string(k) + " choose " + std::to_string(d) +
                                 "]_" + std::to_string(p),
                             count.value_or(UINT64_MAX), budget);
    }
    // Pivot profiles in ascending lexicographic order.
    std::vector<std::size_t> pivots(d);
    for (std::size_t i = 0; i < d; ++i) pivots[i] = i;
    std::uint64_t offset = 0;
    while (true) {
        Profile prof;
        prof.pivots = pivots;
        std::vector<bool> is_pivot(k, false);
        for (auto c : pivots) is_pivot[c] = true;
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = pivots[r] + 1; c < k; ++c)
                if (!is_pivot[c]) prof.free_positions.emplace_back(r, c);
        prof.count = *checked_power(p, prof.free_positions.size());
        prof.offset = offset;
        offset += prof.count;
        profiles_.push_back(std::move(prof));
        // next combination
        std::size_t i = d;
        while (i > 0 && pivots[i - 1] == k - d + i - 1) --i;
        if (i == 0) break;
        ++pivots[i - 1];
        for (std::size_t j = i; j < d; ++j) pivots[j] = pivots[j - 1] + 1;
    }
    total_ = offset;
}

Subspace SubspaceEnumeration::at(std::uint64_t index) const {
    if (index >= total_) throw InvalidArgument("subspace index out of range");
    auto it = std::upper_bound(profiles_.begin(), profiles_.end(), index,
                               [](std::uint64_t i, const Profile& pr) { return i < pr.offset; });
    const Profile& prof = *std::prev(it);
    std::uint64_t local = index - prof.offset;
    MatrixFp basis(p_, d_, k_);
    for (std::size_t r = 0; r < d_; ++r) basis.at(r, prof.pivots[r]) = 1 % p_;
    // Last free position least significant.
    for (std::size_t t = prof.free_positions.size(); t-- > 0;) {
        auto [r, c] = prof.free_positions[t];
        basis.at(r, c) = static_cast<Residue>(local % p_);
        local /= p_;
    }
    return Subspace(std::move(basis), prof.pivots);
}

void SubspaceEnumeration::for_each(const std::function<void(std::uint64_t, const Subspace&)>& fn) const {
    for (std::uint64_t i = 0; i < total_; ++i) fn(i, at(i));
}

std::vector<Subspace> enumerate_subspaces(std::uint32_t p, std::size_t k, std::size_t d, std::uint64_t budget) {
    SubspaceEnumeration e(p, k, d, budget);
    std::vector<Subspace> out;
    out.reserve(e.size());
    for (std::uint64_t i = 0; i < e.size(); ++i) out.push_back(e.at(i));
    return out;
}

std::vector<Subspace> enumerate_all_subspaces(std::uint32_t p, std::size_t k, std::uint64_t budget) {
    std::uint64_t total = 0;
    for (std::size_t d = 0; d <= k; ++d) {
        auto c = gaussian_binomial(p, k, d);
        if (!c || total + *c > budget)
            throw BudgetExceeded("enumeration of all subspaces of F_" + std::to_string(p) + "^" + std::to_string(k),
                                 c ? total + *c : UINT64_MAX, budget);
        total += *c;
    }
    std::vector<Subspace> out;
    out.reserve(total);
    for (std::size_t d = 0; d <= k; ++d) {
        auto part = enumerate_subspaces(p, k, d, budget);
        std::move(part.begin(), part.end(), std::back_inserter(out));
    }
    return out;
}

QuotientData::QuotientData(Subspace w) : w_(std::move(w)) {
    std::vector<bool> is_pivot(w_.ambient_dim(), false);
    for (auto c : w_.pivots()) is_pivot[c] = true;
    for (std::size_t c = 0; c < w_.ambient_dim(); ++c)
        if (!is_pivot[c]) free_columns_.push_back(c);
}

Vec QuotientData::representative(std::span<const Residue> v) const {
    if (v.size() != ambient_dim()) throw DimensionMismatch("vector length differs from ambient dimension");
    PrimeField f(w_.p());
    Vec rem(v.begin(), v.end());
    for (auto& x : rem) x %= w_.p();
    for (std::size_t r = 0; r < w_.dim(); ++r) {
        Residue c = rem[w_.pivots()[r]];
        if (c == 0) continue;
        for (std::size_t j = 0; j < ambient_dim(); ++j) rem[j] = f.sub(rem[j], f.mul(c, w_.basis().at(r, j)));
    }
    return rem;
}

Vec QuotientData::coordinates(std::span<const Residue> v) const {
    Vec rep = representative(v);
    Vec out;
    out.reserve(free_columns_.size());
    for (auto c : free_columns_) out.push_back(rep[c]);
    return out;
}

Vec QuotientData::lift(std::span<const Residue> coords) const {
    if (coords.size() != quotient_dim()) throw DimensionMismatch("quotient coordinate length mismatch");
    Vec v(ambient_dim(), 0);
    for (std::size_t i = 0; i < coords.size(); ++i) v[free_columns_[i]] = coords[i] % w_.p();
    return v;
}

MatrixFp QuotientData::projection() const {
    MatrixFp m(w_.p(), quotient_dim(), ambient_dim());
    Vec e(ambient_dim(), 0);
    for (std::size_t c = 0; c < ambient_dim(); ++c) {
        e.assign(ambient_dim(), 0);
        e[c] = 1 % w_.p();
        Vec q = coordinates(e);
        for (std::size_t r = 0; r < q.size(); ++r) m.at(r, c) = q[r];
    }
    return m;
}

QuotientData quotient_data(std::size_t v_dim, const Subspace& w) {
    if (w.ambient_dim() != v_dim) throw DimensionMismatch("quotient subspace not in the ambient space");
    return QuotientData(w);
}

std::uint64_t vector_index(std::uint32_t p, std::span<const Residue> v) noexcept {
    std::uint64_t idx = 0;
    for (std::size_t i = v.size(); i-- > 0;) idx = idx * p + v[i];
    return idx;
}

Vec vector_from_index(std::uint32_t p, std::size_t dim, std::uint64_t index) {
    Vec v(dim, 0);
    for (std::size_t i = 0; i < dim; ++i) {
        v[i] = static_cast<Residue>(index % p);
        index /= p;
    }
    return v;
}

}  // namespace listrec
