#include "listrec/bl.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "listrec/error.hpp"

namespace listrec {

void BLInstance::validate() const {
    PrimeField f(p);
    if (maps.empty()) throw InvalidArgument("BL instance needs at least one map");
    if (maps.size() != scalars.size()) throw DimensionMismatch("BL instance needs one scalar per map");
    for (const auto& m : maps) {
        if (m.p() != p) throw ModulusMismatch(m.p(), p);
        if (m.cols() != v_dim) throw DimensionMismatch("BL map domain differs from v_dim");
    }
    for (const auto& s : scalars)
        if (s < Rational(0)) throw InvalidArgument("BL scalars must be nonnegative");
}

DiscreteDistribution::DiscreteDistribution(std::uint32_t p, std::size_t v_dim) : p_(p), v_dim_(v_dim) {
    PrimeField f(p);
    auto size = checked_power(p, v_dim);
    if (!size || *size > kMaxAmbientSize) {
        throw InvalidArgument("ambient space p^v_dim exceeds " + std::to_string(kMaxAmbientSize));
    }
}

DiscreteDistribution DiscreteDistribution::point_mass(std::uint32_t p, std::size_t v_dim, std::span<const Residue> v) {
    DiscreteDistribution d(p, v_dim);
    d.add(v, 1.0);
    return d;
}

DiscreteDistribution DiscreteDistribution::uniform(std::uint32_t p, std::size_t v_dim, const std::vector<Vec>& points) {
    if (points.empty()) throw InvalidArgument("uniform distribution over an empty set");
    DiscreteDistribution d(p, v_dim);
    for (const auto& v : points) {
        if (d.probability(v) > 0) throw InvalidArgument("uniform distribution over repeated points");
        d.add(v, 1.0 / static_cast<double>(points.size()));
    }
    return d;
}

DiscreteDistribution DiscreteDistribution::uniform_on(const Subspace& u) {
    return uniform(u.p(), u.ambient_dim(), u.elements());
}

void DiscreteDistribution::add(std::span<const Residue> v, double probability) {
    if (v.size() != v_dim_) throw DimensionMismatch("support vector length differs from v_dim");
    for (auto x : v)
        if (x >= p_) throw InvalidArgument("support vector entry out of range");
    if (!(probability >= 0.0)) throw InvalidArgument("negative probability");
    if (probability == 0.0) return;
    mass_[vector_index(p_, v)] += probability;
    if (mass_.size() > kMaxSupport) throw InvalidArgument("distribution support exceeds cap");
}

double DiscreteDistribution::probability(std::span<const Residue> v) const {
    auto it = mass_.find(vector_index(p_, v));
    return it == mass_.end() ? 0.0 : it->second;
}

double DiscreteDistribution::total() const {
    double t = 0.0;
    for (const auto& [key, pr] : mass_) t += pr;
    return t;
}

void DiscreteDistribution::validate() const {
    for (const auto& [key, pr] : mass_)
        if (!(pr >= 0.0)) throw InvalidArgument("negative probability");
    if (std::abs(total() - 1.0) > 1e-9) throw InvalidArgument("probabilities do not sum to 1");
}

Rational weighted_image_dim(const BLInstance& inst, const Subspace& u) {
    Rational sum(0);
    for (std::size_t i = 0; i < inst.maps.size(); ++i) {
        if (inst.scalars[i] == Rational(0)) continue;
        sum += inst.scalars[i] * Rational(static_cast<std::int64_t>(image_dim(inst.maps[i], u)));
    }
    return sum;
}

std::optional<Subspace> check_dim_condition(const BLInstance& inst, const ExecOptions& opts) {
    inst.validate();
    for (const auto& u : enumerate_all_subspaces(inst.p, inst.v_dim, opts.budget)) {
        if (Rational(static_cast<std::int64_t>(u.dim())) > weighted_image_dim(inst, u)) return u;
    }
    return std::nullopt;
}

double entropy(const DiscreteDistribution& x) {
    double h = 0.0;
    for (const auto& [key, pr] : x.support())
        if (pr > 0.0) h -= pr * std::log(pr);
    return h;
}

DiscreteDistribution pushforward(const DiscreteDistribution& x, const MatrixFp& m) {
    if (m.p() != x.p()) throw ModulusMismatch(m.p(), x.p());
    if (m.cols() != x.v_dim()) throw DimensionMismatch("pushforward map domain differs from v_dim");
    DiscreteDistribution out(x.p(), m.rows());
    for (const auto& [key, pr] : x.support()) out.add(m.apply(x.vector_at(key)), pr);
    return out;
}

double remainder(const DiscreteDistribution& x) {
    double best = 0.0;
    for (const auto& [key, pr] : x.support()) best = std::max(best, pr);
    return 1.0 - best;
}

namespace {

template <typename Functional>
double bl_slack(const BLInstance& inst, const DiscreteDistribution& x, Functional fn) {
    inst.validate();
    if (x.p() != inst.p) throw ModulusMismatch(x.p(), inst.p);
    if (x.v_dim() != inst.v_dim) throw DimensionMismatch("distribution lives outside the instance's ambient space");
    double rhs = 0.0;
    for (std::size_t i = 0; i < inst.maps.size(); ++i) {
        if (inst.scalars[i] == Rational(0)) continue;
        rhs += inst.scalars[i].to_double() * fn(pushforward(x, inst.maps[i]));
    }
    return rhs - fn(x);
}

}  // namespace

double verify_entropy_bl(const BLInstance& inst, const DiscreteDistribution& x) {
    return bl_slack(inst, x, [](const DiscreteDistribution& d) { return entropy(d); });
}

double verify_remainder_bl(const BLInstance& inst, const DiscreteDistribution& x) {
    return bl_slack(inst, x, [](const DiscreteDistribution& d) { return remainder(d); });
}

std::vector<Subspace> find_critical(const BLInstance& inst, const ExecOptions& opts) {
    inst.validate();
    std::vector<Subspace> out;
    for (auto& u : enumerate_all_subspaces(inst.p, inst.v_dim, opts.budget)) {
        if (Rational(static_cast<std::int64_t>(u.dim())) == weighted_image_dim(inst, u)) out.push_back(std::move(u));
    }
    return out;
}

BLInstance tighten_scalars(const BLInstance& inst, const ExecOptions& opts) {
    inst.validate();
    if (std::all_of(inst.maps.begin(), inst.maps.end(), [](const MatrixFp& m) {
            return std::all_of(m.data().begin(), m.data().end(), [](Residue v) { return v == 0; });
        })) {
        throw InvalidArgument("tighten_scalars: every map is zero, scaling factor undefined");
    }
    std::optional<Rational> factor;
    for (const auto& u : enumerate_all_subspaces(inst.p, inst.v_dim, opts.budget)) {
        if (u.dim() == 0) continue;
        Rational rhs = weighted_image_dim(inst, u);
        if (rhs == Rational(0)) throw InvalidArgument("tighten_scalars: dimension condition fails");
        Rational ratio = Rational(static_cast<std::int64_t>(u.dim())) / rhs;
        if (!factor || ratio > *factor) factor = ratio;
    }
    if (!factor) throw InvalidArgument("tighten_scalars: ambient space is zero-dimensional");
    if (*factor > Rational(1)) throw InvalidArgument("tighten_scalars: dimension condition fails");
    BLInstance out = inst;
    for (auto& s : out.scalars) s *= *factor;
    return out;
}

DiscreteDistribution ChainDecomposition::conditional(std::span<const Residue> quotient_coords) const {
    const std::uint32_t p = quotient_distribution.p();
    auto it = conditionals.find(vector_index(p, quotient_coords));
    if (it != conditionals.end()) return it->second;
    Vec rep = quotient.lift(quotient_coords);
    std::vector<Vec> coset;
    PrimeField f(p);
    for (auto w : quotient.subspace().elements()) {
        for (std::size_t j = 0; j < w.size(); ++j) w[j] = f.add(w[j], rep[j]);
        coset.push_back(std::move(w));
    }
    return DiscreteDistribution::uniform(p, quotient.ambient_dim(), coset);
}

ChainDecomposition chain_decompose(const DiscreteDistribution& x, const Subspace& w) {
    if (w.p() != x.p()) throw ModulusMismatch(w.p(), x.p());
    QuotientData q = quotient_data(x.v_dim(), w);
    DiscreteDistribution quotient_dist(x.p(), q.quotient_dim());
    std::map<std::uint64_t, DiscreteDistribution> conditionals;
    for (const auto& [key, pr] : x.support()) {
        Vec v = x.vector_at(key);
        Vec coords = q.coordinates(v);
        quotient_dist.add(coords, pr);
        auto [it, inserted] = conditionals.try_emplace(vector_index(x.p(), coords), x.p(), x.v_dim());
        it->second.add(v, pr);
    }
    for (auto& [coset, dist] : conditionals) {
        double mass = dist.total();
        DiscreteDistribution normalized(x.p(), x.v_dim());
        for (const auto& [key, pr] : dist.support()) normalized.add(dist.vector_at(key), pr / mass);
        dist = std::move(normalized);
    }
    return ChainDecomposition{std::move(q), std::move(quotient_dist), std::move(conditionals)};
}

DiscreteDistribution quotient_pushforward(const ChainDecomposition& chain, const DiscreteDistribution& x,
                                          const MatrixFp& pi) {
    const Subspace pi_w = image(pi, chain.quotient.subspace());
    QuotientData target(pi_w);
    DiscreteDistribution out(x.p(), target.quotient_dim());
    for (const auto& [key, pr] : chain.quotient_distribution.support()) {
        Vec rep = chain.quotient.lift(chain.quotient_distribution.vector_at(key));
        out.add(target.coordinates(pi.apply(rep)), pr);
    }
    return out;
}

BLInstance random_bl_instance(Rng& rng, std::uint32_t p, std::size_t v_dim, std::size_t m, std::int64_t max_num,
                              std::int64_t max_den) {
    BLInstance inst;
    inst.p = p;
    inst.v_dim = v_dim;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t rows = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(std::max<std::size_t>(v_dim, 1))));
        MatrixFp map(p, rows, v_dim);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < v_dim; ++c) map.at(r, c) = static_cast<Residue>(rng.uniform(p));
        inst.maps.push_back(std::move(map));
        const std::int64_t den = rng.uniform_int(1, max_den);
        inst.scalars.emplace_back(rng.uniform_int(0, max_num), den);
    }
    return inst;
}

DiscreteDistribution random_distribution(Rng& rng, std::uint32_t p, std::size_t v_dim, std::size_t support_size) {
    DiscreteDistribution out(p, v_dim);
    const std::uint64_t space = *checked_power(p, v_dim);
    support_size = static_cast<std::size_t>(std::min<std::uint64_t>(std::max<std::size_t>(support_size, 1), space));
    // Floyd's sampling of distinct indices.
    std::vector<std::uint64_t> chosen;
    for (std::uint64_t j = space - support_size; j < space; ++j) {
        std::uint64_t t = rng.uniform(j + 1);
        if (std::find(chosen.begin(), chosen.end(), t) != chosen.end()) t = j;
        chosen.push_back(t);
    }
    std::vector<double> weights;
    for (std::size_t i = 0; i < chosen.size(); ++i) weights.push_back(-std::log(1.0 - rng.uniform_real()));
    const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    for (std::size_t i = 0; i < chosen.size(); ++i) out.add(vector_from_index(p, v_dim, chosen[i]), weights[i] / sum);
    return out;
}

}  // namespace listrec
