#include "listrec/designs.hpp"

#include <limits>

#include "listrec/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace listrec {

namespace {

void require_d_le_s(std::size_t d, std::size_t s) {
    if (d > s) throw InvalidArgument("design bound requires d <= s (d = " + std::to_string(d) + ", s = " +
                                     std::to_string(s) + ")");
}

std::size_t ambient_of(const std::vector<Subspace>& kernels) {
    if (kernels.empty()) throw InvalidArgument("design verification needs at least one kernel");
    for (const auto& h : kernels) {
        if (h.ambient_dim() != kernels.front().ambient_dim() || h.p() != kernels.front().p())
            throw DimensionMismatch("kernels do not share an ambient space");
    }
    return kernels.front().ambient_dim();
}

void fill_bounds(DesignReport& report, std::size_t k, std::optional<std::size_t> s) {
    if (!s || report.d > *s) return;
    report.bound_gk = design_bound_gk(report.d, k, *s);
    report.bound_improved = design_bound_improved(report.d, k, *s);
    const Rational sum(static_cast<std::int64_t>(report.max_sum));
    report.holds_gk = sum <= *report.bound_gk;
    report.holds_improved = sum <= *report.bound_improved;
}

}  // namespace

Rational design_bound_gk(std::size_t d, std::size_t k, std::size_t s) {
    require_d_le_s(d, s);
    if (d == 0) return Rational(0);
    return Rational(static_cast<std::int64_t>(d) * (static_cast<std::int64_t>(k) - 1),
                    static_cast<std::int64_t>(s - d + 1));
}

Rational design_bound_improved(std::size_t d, std::size_t k, std::size_t s) {
    require_d_le_s(d, s);
    return Rational(static_cast<std::int64_t>(d) * (static_cast<std::int64_t>(k) - static_cast<std::int64_t>(d)),
                    static_cast<std::int64_t>(s - d + 1));
}

std::size_t design_sum(const std::vector<Subspace>& kernels, const Subspace& u) {
    std::size_t sum = 0;
    for (const auto& h : kernels) sum += intersection_dim(u, h);
    return sum;
}

DesignReport verify_design(const std::vector<Subspace>& kernels, std::size_t d, std::optional<std::size_t> s,
                           const ExecOptions& opts) {
    const std::size_t k = ambient_of(kernels);
    SubspaceEnumeration subspaces(kernels.front().p(), k, d, opts.budget);
    const std::int64_t total = static_cast<std::int64_t>(subspaces.size());

    std::size_t best_sum = 0;
    std::uint64_t best_index = std::numeric_limits<std::uint64_t>::max();
#pragma omp parallel num_threads(resolve_threads(opts.threads))
    {
        std::size_t local_sum = 0;
        std::uint64_t local_index = std::numeric_limits<std::uint64_t>::max();
#pragma omp for schedule(static) nowait
        for (std::int64_t i = 0; i < total; ++i) {
            const std::size_t sum = design_sum(kernels, subspaces.at(static_cast<std::uint64_t>(i)));
            if (local_index == std::numeric_limits<std::uint64_t>::max() || sum > local_sum) {
                local_sum = sum;
                local_index = static_cast<std::uint64_t>(i);
            }
        }
#pragma omp critical
        {
            if (local_index != std::numeric_limits<std::uint64_t>::max() &&
                (best_index == std::numeric_limits<std::uint64_t>::max() || local_sum > best_sum ||
                 (local_sum == best_sum && local_index < best_index))) {
                best_sum = local_sum;
                best_index = local_index;
            }
        }
    }

    DesignReport report;
    report.d = d;
    report.max_sum = best_sum;
    report.witness_index = best_index;
    report.witness = subspaces.at(best_index);
    report.subspaces_checked = subspaces.size();
    fill_bounds(report, k, s);
    return report;
}

std::vector<DesignReport> check_slacked_designable(const CodeSpec& spec, std::size_t d, const Rational& mu,
                                                   const ExecOptions& opts) {
    if (d < 1) throw InvalidArgument("slacked designability requires d >= 1");
    if (mu <= Rational(0) || mu >= Rational(1)) throw InvalidArgument("slack mu must lie in (0, 1)");
    const auto kernels = coordinate_kernels(spec);
    const Rational rate = spec.rate();
    std::vector<DesignReport> out;
    for (std::size_t dp = 1; dp <= std::min(d, spec.k); ++dp) {
        DesignReport r = verify_design(kernels, dp, spec.s, opts);
        r.bound_slacked = (rate + mu) * Rational(static_cast<std::int64_t>(dp * spec.n));
        r.holds_slacked = Rational(static_cast<std::int64_t>(r.max_sum)) <= *r.bound_slacked;
        out.push_back(std::move(r));
    }
    return out;
}

namespace reference {

DesignReport verify_design(const std::vector<Subspace>& kernels, std::size_t d, std::optional<std::size_t> s,
                           std::uint64_t budget) {
    const std::size_t k = ambient_of(kernels);
    auto all = enumerate_subspaces(kernels.front().p(), k, d, budget);
    DesignReport report;
    report.d = d;
    bool first = true;
    for (std::uint64_t i = 0; i < all.size(); ++i) {
        std::size_t sum = 0;
        for (const auto& h : kernels) sum += intersect(all[i], h).dim();
        if (first || sum > report.max_sum) {
            report.max_sum = sum;
            report.witness = all[i];
            report.witness_index = i;
            first = false;
        }
    }
    report.subspaces_checked = all.size();
    fill_bounds(report, k, s);
    return report;
}

}  // namespace reference

}  // namespace listrec
