// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <set>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "listrec/bl.hpp"
#include "listrec/bounds.hpp"
#include "listrec/cli.hpp"
#include "listrec/designs.hpp"
#include "listrec/search.hpp"

using namespace listrec;
using Big = boost::multiprecision::cpp_dec_float_50;

namespace {

constexpr double kFloatTol = 1e-9;
constexpr double kLambertTol = 1e-10;
constexpr double kThresholdResidualTol = 1e-9;
const Big kDigits12("1e-12");

struct Check {
    bool ok = true;
    std::string note;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) note = what;
        ok = ok && cond;
    }
    void info(const std::string& s) { note += (note.empty() ? "" : "; ") + s; }
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<void(Check&)>& body) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > limit_s) {
        c.ok = false;
        c.info("runtime limit " + std::to_string(limit_s) + " s exceeded");
    }
    if (!c.ok) ++failures;
    std::printf("criterion %d: %s - %s (%.2f s)%s%s\n", id, c.ok ? "PASS" : "FAIL", title, secs,
                c.note.empty() ? "" : " | ", c.note.c_str());
    std::fflush(stdout);
}

Big w_bisect(const Big& z) {
    Big lo = 0, hi = 1;
    while (hi * exp(hi) < z) hi *= 2;
    for (int i = 0; i < 250; ++i) {
        Big mid = (lo + hi) / 2;
        (mid * exp(mid) < z ? lo : hi) = mid;
    }
    return (lo + hi) / 2;
}

bool agree12(double got, const Big& want) { return abs(Big(got) - want) <= kDigits12 * abs(want); }

std::string num(double v) {
    char b[64];
    std::snprintf(b, sizeof b, "%.6g", v);
    return b;
}

ExecOptions single_thread() { return {kDefaultEnumerationBudget, 1}; }

// Random BL harness shared by criteria 2 and 3.
struct BLHarness {
    std::size_t verified = 0, failing = 0, samples = 0;
    double min_slack = INFINITY;
    double worst_witness_error = 0;
};

BLHarness run_bl_harness(bool remainder_mode) {
    Rng rng(20240601);
    BLHarness h;
    const std::array<std::uint32_t, 3> primes{2, 3, 5};
    std::size_t attempts = 0;
    while ((h.verified < 200 || (!remainder_mode && h.failing < 50)) && attempts < 100000) {
        ++attempts;
        const auto p = primes[rng.uniform(3)];
        const auto v_dim = static_cast<std::size_t>(rng.uniform_int(1, 4));
        const auto m = static_cast<std::size_t>(rng.uniform_int(1, 5));
        const auto inst = random_bl_instance(rng, p, v_dim, m);
        const auto witness = check_dim_condition(inst, single_thread());
        if (witness) {
            if (remainder_mode || h.failing >= 50) continue;
            ++h.failing;
            const Rational gap = weighted_image_dim(inst, *witness) - Rational(static_cast<std::int64_t>(witness->dim()));
            const double slack = verify_entropy_bl(inst, DiscreteDistribution::uniform_on(*witness));
            const double want = gap.to_double() * std::log(static_cast<double>(p));
            h.worst_witness_error = std::max(h.worst_witness_error, std::abs(slack - want));
            if (!(gap < Rational(0)) || !(slack < 0)) h.worst_witness_error = INFINITY;
            continue;
        }
        if (h.verified >= 200) continue;
        ++h.verified;
        const auto ambient = *checked_power(p, v_dim);
        for (int t = 0; t < 100; ++t) {
            const auto support = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(std::min<std::uint64_t>(ambient, 64))));
            const auto x = random_distribution(rng, p, v_dim, support);
            const double slack = remainder_mode ? verify_remainder_bl(inst, x) : verify_entropy_bl(inst, x);
            h.min_slack = std::min(h.min_slack, slack);
            ++h.samples;
        }
    }
    return h;
}

}  // namespace

int main() {
    std::printf("listrec acceptance suite\n");

    criterion(1, "design-bound conformance, FRS(13, 2, s=3, k=4, n=4)", 60.0, [](Check& c) {
        const auto spec = make_frs(13, 3, 4, 4, 2);
        const auto kernels = coordinate_kernels(spec);
        const std::array<std::int64_t, 3> gk{1, 3, 9};
        const std::array<std::int64_t, 2> improved{1, 2};
        std::ostringstream sums;
        for (std::size_t d = 1; d <= 3; ++d) {
            const auto rep = verify_design(kernels, d, spec.s, single_thread());
            c.require(rep.subspaces_checked == *gaussian_binomial(13, 4, d), "enumeration incomplete");
            c.require(*rep.bound_gk == Rational(gk[d - 1]), "GK bound value");
            c.require(rep.max_sum <= static_cast<std::size_t>(gk[d - 1]), "max_sum above GK bound at d=" + std::to_string(d));
            c.require(design_sum(kernels, rep.witness) == rep.max_sum, "witness does not attain max_sum");
            if (d <= 2)
                c.require(rep.max_sum <= static_cast<std::size_t>(improved[d - 1]), "max_sum above improved bound");
            sums << (d > 1 ? "," : "") << rep.max_sum;
            if (d == 3) c.info("d=3 improved bound " + rep.bound_improved->str() + (*rep.holds_improved ? " holds" : " fails"));
        }
        c.info("max_sum(d=1,2,3) = " + sums.str());
    });

    criterion(2, "entropic BL suite, 200 verified / 50 failing random instances", 300.0, [](Check& c) {
        const auto h = run_bl_harness(false);
        c.require(h.verified == 200, "not enough verified instances");
        c.require(h.failing == 50, "not enough failing instances");
        c.require(h.samples == 20000, "sample count");
        c.require(h.min_slack >= -kFloatTol, "negative entropy slack " + num(h.min_slack));
        c.require(h.worst_witness_error <= kFloatTol, "witness slack differs from gap*ln p");
        c.info("min slack " + num(h.min_slack) + ", witness error " + num(h.worst_witness_error));
    });

    criterion(3, "remainder BL suite, 200 verified random instances", 300.0, [](Check& c) {
        const auto h = run_bl_harness(true);
        c.require(h.verified == 200, "not enough verified instances");
        c.require(h.samples == 20000, "sample count");
        c.require(h.min_slack >= -kFloatTol, "negative remainder slack " + num(h.min_slack));
        c.info("min slack " + num(h.min_slack));
    });

    criterion(4, "zero-error theorem, FRS(7, 3, s=2, k=2, n=3), l=2", 10.0, [](Check& c) {
        const auto spec = make_frs(7, 2, 3, 2, 3);
        const auto chk = zero_error_ok(2, 3, 2, 2, 2);
        const Big rhs = 1 - log(Big(2)) / log(Big(3));
        c.require(chk.lhs == Rational(1, 3), "lhs != 1/3");
        c.require(agree12(chk.rhs, rhs), "rhs disagrees with 50-digit value");
        c.require(chk.verdict == Verdict::kHolds, "condition does not hold at L=2");
        const auto res = max_zero_error_list(spec, 2, single_thread());
        c.require(res.exhaustive && res.L_max == 2, "L_max != 2");
        // Independent oracle: scan all C(49,3) triples directly.
        const auto book = build_codebook(spec, 1000);
        std::size_t triples = 0, qualifying = 0;
        for (std::size_t a = 0; a < 49; ++a)
            for (std::size_t b = a + 1; b < 49; ++b)
                for (std::size_t d = b + 1; d < 49; ++d) {
                    ++triples;
                    bool ok = true;
                    for (std::size_t i = 0; i < 3 && ok; ++i) {
                        const auto x = book.at(a, i), y = book.at(b, i), z = book.at(d, i);
                        ok = x == y || y == z || x == z;
                    }
                    qualifying += ok;
                }
        c.require(triples == 18424, "triple count");
        c.require(qualifying == 0, "a triple takes <= 2 values in every coordinate");
        std::ostringstream out, err;
        const int code = cli::run({"confirm", "--code", R"({"family":"frs","p":7,"s":2,"n":3,"k":2,"gamma":3})", "--ell",
                                   "2", "--no-meta", "--threads", "1"},
                                  out, err);
        c.require(code == 0, "confirm exit code " + std::to_string(code));
        c.info("rhs " + num(chk.rhs) + ", L_max " + std::to_string(res.L_max) + ", qualifying triples " + std::to_string(qualifying));
    });

    criterion(5, "generalized Singleton, FRS(7, 3, s=2, k=3, n=3), L=2, list decoding", 900.0, [](Check& c) {
        const auto spec = make_frs(7, 2, 3, 3, 3);
        const Rational radius = singleton_radius(3, 3, 2, 2);
        c.require(radius == Rational(2, 9), "singleton radius != 2/9");
        const Rational rho = radius - Rational(1, 100);
        AverageRadiusOptions opts;
        opts.exec = single_thread();
        const auto out = average_radius_bad_list_search(spec, 1, 2, rho, AdversaryMode::kListDecoding, opts);
        c.require(out.exhaustive, "search not exhaustive");
        c.require(!out.found, "bad list found below the radius");
        c.require(*binomial_u64(343, 3) == 6666891, "subset count");
        // Independent oracle: minimum total plurality error over all triples, no pruning.
        const auto book = build_codebook(spec, 1000);
        std::uint64_t best = UINT64_MAX, scanned = 0;
        for (std::size_t a = 0; a < 343; ++a)
            for (std::size_t b = a + 1; b < 343; ++b)
                for (std::size_t d = b + 1; d < 343; ++d) {
                    ++scanned;
                    std::uint64_t total = 0;
                    for (std::size_t i = 0; i < 3; ++i) {
                        const auto x = book.at(a, i), y = book.at(b, i), z = book.at(d, i);
                        total += (x == y && y == z) ? 0 : (x == y || y == z || x == z) ? 1 : 2;
                    }
                    best = std::min(best, total);
                }
        c.require(scanned == 6666891, "oracle scan count");
        c.require(Rational(static_cast<std::int64_t>(best)) > rho * Rational(9), "oracle minimum within the radius");
        c.info("rho*9 = " + (rho * Rational(9)).str() + ", oracle minimum total plurality error " + std::to_string(best) +
               ", search nodes " + std::to_string(out.total_budget_used));
    });

    criterion(6, "Lambert W0 residual on a 100-point log grid [1e-6, 1e6]", 10.0, [](Check& c) {
        double worst = 0, worst_vs_oracle = 0;
        for (int i = 0; i < 100; ++i) {
            const double z = std::pow(10.0, -6.0 + 12.0 * i / 99.0);
            const double w = lambert_w0(z);
            const double res = std::abs(w * std::exp(w) - z) / (1 + z);
            worst = std::max(worst, res);
            c.require(w >= 0, "negative W");
            c.require(res <= kLambertTol, "residual above tolerance at z=" + num(z));
            const Big o = w_bisect(Big(z));
            worst_vs_oracle = std::max(worst_vs_oracle, static_cast<double>(abs(Big(w) - o) / o));
        }
        c.info("max scaled residual " + num(worst) + ", max rel. error vs bisection " + num(worst_vs_oracle));
    });

    criterion(7, "threshold / list-size consistency sweep", 10.0, [](Check& c) {
        std::size_t points = 0;
        double worst_res = 0, worst_margin = 1;
        for (std::int64_t ell : {2, 4, 8})
            for (int r = 1; r <= 8; ++r)
                for (const char* e : {"0.05", "0.1", "0.2"}) {
                    const Rational R(r, 10), eps = Rational::parse(e);
                    if (!(R + eps < Rational(1))) continue;
                    ++points;
                    const double Rd = R.to_double(), ed = eps.to_double();
                    const auto L = asymptotic_L(ell, Rd, ed, ListVariant::kBase);
                    // m exactly: least m with l^(m b) u^a >= l^a v^a, where
                    // 2 + 2R/eps = a/b and R + eps/2 = u/v.
                    const Rational ex = Rational(2) + Rational(2) * R / eps, half = R + eps / Rational(2);
                    using boost::multiprecision::cpp_int;
                    const cpp_int rhs = boost::multiprecision::pow(cpp_int(ell) * half.den(), static_cast<unsigned>(ex.num()));
                    const cpp_int lhs_u = boost::multiprecision::pow(cpp_int(half.num()), static_cast<unsigned>(ex.num()));
                    std::int64_t m_oracle = 1;
                    while (boost::multiprecision::pow(cpp_int(ell), static_cast<unsigned>(m_oracle * ex.den())) * lhs_u < rhs) ++m_oracle;
                    c.require(L.m == m_oracle, "m differs from oracle");
                    c.require(static_cast<double>(L.m) * std::log10(static_cast<double>(ell)) <= L.log10_value + 1e-12,
                              "l^m > asymptotic L");
                    const double Lm = std::pow(static_cast<double>(ell), static_cast<double>(L.m)) - 1.0;
                    const auto th = radius_threshold(Rd, ed / 3.0, ell, Lm);
                    const double res = std::abs(radius_threshold_residual(Rd, ed / 3.0, ell, Lm, th.rho_star));
                    worst_res = std::max(worst_res, res);
                    c.require(res <= kThresholdResidualTol, "defining-equation residual");
                    c.require(th.capped >= 1.0 - Rd - ed, "threshold below 1-R-eps");
                    worst_margin = std::min(worst_margin, th.capped - (1.0 - Rd - ed));
                }
        c.require(points == 69, "grid size " + std::to_string(points));
        c.info(std::to_string(points) + " grid points, max residual " + num(worst_res) + ", min margin " + num(worst_margin));
    });

    criterion(8, "formula reproduction against 50-digit recomputation", 10.0, [](Check& c) {
        for (std::int64_t ell : {2, 3, 5})
            for (int r = 1; r <= 8; ++r)
                for (int e = 1; e <= 4; ++e) {
                    const Big R = Big(r) / 10, eps = Big(e) / 20;
                    if (R + eps >= 1) continue;
                    const double Rd = r / 10.0, ed = e / 20.0;
                    const std::array<std::pair<ListVariant, Big>, 3> expo{
                        {{ListVariant::kBase, 3 + 2 * R / eps}, {ListVariant::kRlc, 5 + 4 * R / eps}, {ListVariant::kRrs, 9 + 8 * R / eps}}};
                    for (const auto& [v, x] : expo) {
                        const auto a = asymptotic_L(ell, Rd, ed, v);
                        c.require(agree12(a.exponent, x), "exponent mismatch");
                        const Big log10L = x * log10(Big(ell) / (R + eps / 2));
                        c.require(agree12(a.log10_value, log10L), "log10 L mismatch");
                        if (a.value) c.require(agree12(*a.value, pow(Big(10), log10L)), "L value mismatch");
                    }
                    const Rational er(e, 20);
                    const auto frs = alphabet_and_folding_requirements(ell, er, 0, RequirementVariant::kFrs);
                    const auto mult = alphabet_and_folding_requirements(ell, er, 0, RequirementVariant::kMult);
                    c.require(*frs[0].exact == Rational(16 * ell) / (er * er), "16l/eps^2");
                    c.require(*mult[0].exact == Rational(32 * ell) / (er * er), "32l/eps^2");
                }
        c.require(alphabet_and_folding_requirements(2, Rational(1, 2), 0, RequirementVariant::kFrs)[0].exact == Rational(128), "s >= 128");
        c.require(alphabet_and_folding_requirements(2, Rational(1, 2), 0, RequirementVariant::kMult)[0].exact == Rational(256), "s >= 256");
        c.require(conjecture_rho_star(2, 2, Rational(1, 2)).rho_star == Rational(0), "conjecture rho* != 0");
        c.require(zero_error_list_size(Rational(1, 2), Rational(1, 6), 2).L == 8, "zero-error list size != 8");
        const auto a = asymptotic_L(2, 0.5, 0.5, ListVariant::kBase);
        c.require(a.value && agree12(*a.value, pow(Big(8) / 3, 5)), "(8/3)^5");
        c.info("(8/3)^5 = " + format_real(*a.value));
    });

    criterion(9, "structural invariants", 120.0, [](Check& c) {
        Rng rng(99);
        // rank-nullity
        for (int t = 0; t < 500; ++t) {
            const std::uint32_t p = std::array<std::uint32_t, 4>{2, 3, 5, 7}[t % 4];
            const auto r = static_cast<std::size_t>(rng.uniform_int(0, 6)), cols = static_cast<std::size_t>(rng.uniform_int(0, 6));
            MatrixFp m(p, r, cols);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = static_cast<Residue>(rng.uniform(p));
            c.require(rank(m) + kernel(m).dim() == cols, "rank-nullity");
        }
        // Gaussian binomial counts, p <= 3, k <= 4, by product formula
        for (std::uint32_t p : {2u, 3u})
            for (std::size_t k = 0; k <= 4; ++k)
                for (std::size_t d = 0; d <= k; ++d) {
                    std::uint64_t num = 1, den = 1;
                    for (std::size_t i = 0; i < d; ++i) {
                        num *= *checked_power(p, k - i) - 1;
                        den *= *checked_power(p, i + 1) - 1;
                    }
                    std::uint64_t count = 0;
                    std::set<Subspace> seen;
                    SubspaceEnumeration(p, k, d).for_each([&](std::uint64_t, const Subspace& u) {
                        ++count;
                        seen.insert(u);
                    });
                    c.require(count == num / den && seen.size() == count, "subspace count");
                }
        // chain rule and injection equality
        double worst_chain = 0, worst_inj = 0;
        for (int t = 0; t < 300; ++t) {
            const std::uint32_t p = std::array<std::uint32_t, 3>{2, 3, 5}[t % 3];
            const std::size_t d = 2 + static_cast<std::size_t>(t % 2);
            const auto ambient = *checked_power(p, d);
            const auto x = random_distribution(rng, p, d, static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(std::min<std::uint64_t>(ambient, 40)))));
            MatrixFp wm(p, static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(d))), d);
            for (std::size_t i = 0; i < wm.rows(); ++i)
                for (std::size_t j = 0; j < d; ++j) wm.at(i, j) = static_cast<Residue>(rng.uniform(p));
            const auto chain = chain_decompose(x, rref(wm));
            double cond = 0;
            for (const auto& [key, q] : chain.quotient_distribution.support()) cond += q * entropy(chain.conditionals.at(key));
            worst_chain = std::max(worst_chain, std::abs(entropy(x) - entropy(chain.quotient_distribution) - cond));
            MatrixFp pi(p, d + 1, d);  // injective: identity on top of a random row
            for (std::size_t j = 0; j < d; ++j) {
                pi.at(j, j) = 1;
                pi.at(d, j) = static_cast<Residue>(rng.uniform(p));
            }
            double rhs = entropy(quotient_pushforward(chain, x, pi));
            for (const auto& [key, q] : chain.quotient_distribution.support())
                rhs += q * entropy(pushforward(chain.conditionals.at(key), pi));
            worst_inj = std::max(worst_inj, std::abs(entropy(pushforward(x, pi)) - rhs));
        }
        c.require(worst_chain <= kFloatTol, "chain rule");
        c.require(worst_inj <= kFloatTol, "injection equality");
        // bridge identity, exhaustive at p=7, s=2, k<=3, n=3
        std::size_t subspaces = 0;
        for (std::size_t k = 1; k <= 3; ++k) {
            const auto spec = make_frs(7, 2, 3, k, 3);
            const auto kernels = coordinate_kernels(spec);
            std::vector<MatrixFp> maps;
            for (std::size_t i = 0; i < 3; ++i) maps.push_back(coordinate_map(spec, i));
            for (const auto& u : enumerate_all_subspaces(7, k)) {
                std::size_t images = 0;
                for (const auto& m : maps) images += image_dim(m, u);
                c.require(images == 3 * u.dim() - design_sum(kernels, u), "bridge identity");
                ++subspaces;
            }
        }
        c.info("chain " + num(worst_chain) + ", injection " + num(worst_inj) + ", bridge over " + std::to_string(subspaces) + " subspaces");
    });

    std::printf("%d criteria failed\n", failures);
    return failures;
}
