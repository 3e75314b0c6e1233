#include <doctest.h>

#include "listrec/codes.hpp"
#include "listrec/error.hpp"
#include "listrec/rng.hpp"

using namespace listrec;

namespace {

Vec random_message(Rng& rng, std::uint32_t p, std::size_t k) {
    Vec v(k);
    for (auto& x : v) x = static_cast<Residue>(rng.uniform(p));
    return v;
}

// Encoder from the definition, independent of encoding_matrix().
Codeword frs_by_definition(std::uint32_t p, Residue gamma, std::size_t s, const std::vector<Residue>& alphas,
                           const Vec& f) {
    Codeword cw;
    for (auto a : alphas) {
        Symbol sym;
        std::uint64_t pt = a;
        for (std::size_t j = 0; j < s; ++j) {
            std::uint64_t acc = 0, pw = 1;
            for (auto c : f) {
                acc = (acc + c * pw) % p;
                pw = pw * pt % p;
            }
            sym.push_back(static_cast<Residue>(acc));
            pt = pt * gamma % p;
        }
        cw.symbols.push_back(sym);
    }
    return cw;
}

std::vector<CodeSpec> small_specs() {
    std::vector<CodeSpec> out;
    out.push_back(make_frs(7, 2, 3, 2, 3));
    out.push_back(make_frs(7, 2, 3, 3, 3));
    out.push_back(make_frs(5, 2, 2, 3, 2));
    out.push_back(make_frs(7, 1, 5, 3));
    out.push_back(make_mult(5, 2, 2, 3));
    out.push_back(make_mult(7, 3, 2, 3));
    out.push_back(make_mult(7, 2, 3, 2, {6, 1, 3}));
    out.push_back(sample_code(Family::kRrs, 7, 1, 6, 3, 9));
    return out;
}

// Evaluation-only spec: skips the rate and distinct-point invariants that
// the constructors enforce.
CodeSpec raw_spec(Family family, std::uint32_t p, std::size_t s, std::size_t k, std::vector<Residue> alphas,
                  std::optional<Residue> gamma = std::nullopt) {
    CodeSpec spec;
    spec.family = family;
    spec.p = p;
    spec.s = s;
    spec.n = alphas.size();
    spec.k = k;
    spec.gamma = gamma;
    spec.alphas = std::move(alphas);
    return spec;
}

}  // namespace

TEST_CASE("frs_encode examples") {
    // orbits {1,2} and {3,1} overlap, so this is only an evaluation example
    const auto spec = raw_spec(Family::kFrs, 5, 2, 2, {1, 3}, 2);
    CHECK_THROWS_AS(spec.validate(), InvalidArgument);
    CHECK(frs_encode(spec, DensePoly(5)) == Codeword{{{0, 0}, {0, 0}}});
    CHECK(frs_encode(spec, DensePoly(5, {0, 1})) == Codeword{{{1, 2}, {3, 1}}});
    const auto spec7 = make_frs(7, 2, 3, 2, 3, {1, 2, 4});
    CHECK(frs_encode(spec7, DensePoly(7, {1, 1})) == Codeword{{{2, 4}, {3, 0}, {5, 6}}});
    CHECK(encode(spec7, Vec{1, 1}) == Codeword{{{2, 4}, {3, 0}, {5, 6}}});
    CHECK_THROWS_AS(frs_encode(spec7, DensePoly(7, {0, 0, 1})), InvalidArgument);
}

TEST_CASE("mult_encode examples") {
    const auto spec = raw_spec(Family::kMult, 5, 2, 3, {1});
    CHECK(mult_encode(spec, DensePoly(5)).symbols[0] == Symbol{0, 0});
    CHECK(mult_encode(spec, DensePoly::monomial(5, 2)).symbols[0] == Symbol{1, 2});
    const auto spec7 = raw_spec(Family::kMult, 7, 3, 4, {2});
    CHECK_THROWS_AS(make_mult(7, 3, 1, 4, {2}), InvalidArgument);  // rate 4/3
    CHECK(mult_encode(spec7, DensePoly::monomial(7, 3)).symbols[0] == Symbol{1, 5, 6});
    CHECK_THROWS_AS(mult_encode(spec7, DensePoly::monomial(7, 4)), InvalidArgument);
}

TEST_CASE("mult encoder against Hasse derivatives") {
    Rng rng(4);
    const auto spec = make_mult(11, 3, 3, 5, {2, 5, 9});
    for (int t = 0; t < 50; ++t) {
        const Vec f = random_message(rng, 11, 5);
        const auto poly = DensePoly::from_residues(11, f);
        const auto cw = encode(spec, f);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                CHECK(cw.symbols[i][j] == poly_eval(hasse_derivative(poly, j), FieldElement(11, spec.alphas[i])).value());
    }
}

TEST_CASE("default_frs_points") {
    CHECK(default_frs_points(7, 3, 2, 3) == std::vector<Residue>{1, 2, 4});
    CHECK(default_frs_points(5, 2, 1, 4) == std::vector<Residue>{1, 2, 4, 3});
    CHECK_THROWS_AS(default_frs_points(5, 2, 2, 3), InvalidArgument);
    CHECK(make_frs(13, 3, 4, 4, 2).alphas == std::vector<Residue>{1, 8, 12, 5});
    CHECK(make_frs(7, 2, 3, 2).gamma == Residue{3});
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(make_frs(7, 2, 3, 7, 3), InvalidArgument);       // k > sn
    CHECK_THROWS_AS(make_frs(7, 2, 3, 2, 2), InvalidArgument);       // 2 is not a generator mod 7
    CHECK_THROWS_AS(make_frs(7, 2, 3, 2, 3, {1, 3, 4}), InvalidArgument);  // orbits collide: 3 = 3*1
    CHECK_THROWS_AS(make_mult(5, 2, 3, 2), InvalidArgument);         // p < sn
    CHECK_THROWS_AS(make_mult(7, 2, 2, 2, {1, 1}), InvalidArgument);
    CHECK_THROWS_AS(sample_code(Family::kRrs, 5, 1, 6, 2, 1), InvalidArgument);
    CHECK_THROWS_AS(sample_code(Family::kRrs, 7, 2, 3, 2, 1), InvalidArgument);
    CHECK_THROWS_AS(coordinate_kernel(make_frs(7, 2, 3, 2, 3), 0), InvalidArgument);
    CHECK_THROWS_AS(coordinate_kernel(make_frs(7, 2, 3, 2, 3), 4), InvalidArgument);
    CHECK(make_frs(7, 2, 3, 2, 3).rate() == Rational(1, 3));
}

TEST_CASE("sample_code") {
    const auto rrs = sample_code(Family::kRrs, 7, 1, 7, 1, 123);
    auto sorted = rrs.alphas;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<Residue>{0, 1, 2, 3, 4, 5, 6});
    CHECK(rrs.seed == std::uint64_t{123});
    CHECK(rrs.rng == "mt19937_64-v1");

    for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
        const auto a = sample_code(Family::kRlc, 2, 1, 1, 1, seed);
        const auto b = sample_code(Family::kRlc, 2, 1, 1, 1, seed);
        CHECK(a == b);
        CHECK(a.generator_matrix->at(0, 0) <= 1);
    }
    CHECK(sample_code(Family::kRlc, 5, 2, 3, 2, 42) == sample_code(Family::kRlc, 5, 2, 3, 2, 42));
    CHECK(sample_code(Family::kRlc, 5, 2, 3, 2, 42) != sample_code(Family::kRlc, 5, 2, 3, 2, 43));
}

TEST_CASE("rlc golden matrix, seed 42") {
    // Recorded from the first build; guards the generator and draw order.
    const auto spec = sample_code(Family::kRlc, 5, 2, 3, 2, 42);
    const MatrixFp golden(5, {{1, 4, 0, 2, 1, 3}, {1, 4, 0, 2, 0, 2}}, 6);
    CHECK(*spec.generator_matrix == golden);
}

TEST_CASE("coordinate kernels") {
    const auto frs = make_frs(7, 2, 3, 2, 3);
    for (std::size_t i = 1; i <= 3; ++i) CHECK(coordinate_kernel(frs, i).dim() == 0);  // k = s
    CHECK(coordinate_kernel(raw_spec(Family::kFrs, 5, 2, 3, {1}, 2), 1) == Subspace::span(5, 3, {{2, 2, 1}}));
    CHECK(coordinate_kernel(raw_spec(Family::kMult, 5, 2, 3, {0}), 1) == Subspace::span(5, 3, {{0, 0, 1}}));

    for (const auto& spec : small_specs()) {
        const auto kernels = coordinate_kernels(spec);
        REQUIRE(kernels.size() == spec.n);
        for (std::size_t i = 0; i < spec.n; ++i) {
            const auto& h = kernels[i];
            CHECK(h.dim() == spec.k - rank(coordinate_map(spec, i)));
            if (spec.k >= spec.s) CHECK(h.dim() == spec.k - spec.s);
            // H_i is exactly the zero set of symbol i (brute force)
            for (std::uint64_t m = 0; m < *checked_power(spec.p, spec.k); ++m) {
                const Vec f = vector_from_index(spec.p, spec.k, m);
                const auto sym = encode(spec, f).symbols[i];
                const bool zero = std::all_of(sym.begin(), sym.end(), [](Residue x) { return x == 0; });
                CHECK(zero == h.contains(f));
            }
        }
    }
}

TEST_CASE("encoder linearity and definition") {
    Rng rng(17);
    for (const auto& spec : small_specs()) {
        for (int t = 0; t < 30; ++t) {
            const Vec f = random_message(rng, spec.p, spec.k), g = random_message(rng, spec.p, spec.k);
            Vec h(spec.k);
            for (std::size_t i = 0; i < spec.k; ++i) h[i] = (f[i] + g[i]) % spec.p;
            const auto ef = encode(spec, f), eg = encode(spec, g), eh = encode(spec, h);
            for (std::size_t i = 0; i < spec.n; ++i)
                for (std::size_t j = 0; j < spec.s; ++j)
                    CHECK(eh.symbols[i][j] == (ef.symbols[i][j] + eg.symbols[i][j]) % spec.p);
            if (spec.family == Family::kFrs) CHECK(ef == frs_by_definition(spec.p, *spec.gamma, spec.s, spec.alphas, f));
        }
    }
}

TEST_CASE("injectivity and FRS distance, exhaustive") {
    for (const auto& spec : small_specs()) {
        const auto kernels = coordinate_kernels(spec);
        Subspace common = Subspace::full(spec.p, spec.k);
        for (const auto& h : kernels) common = intersect(common, h);
        CHECK(common.dim() == 0);

        const auto book = build_codebook(spec, kDefaultEnumerationBudget);
        CHECK(book.messages == *checked_power(spec.p, spec.k));
        for (std::size_t a = 1; a < book.messages; ++a) {
            bool nonzero = false;
            for (std::size_t i = 0; i < spec.n; ++i) nonzero = nonzero || book.at(a, i) != 0;
            CHECK(nonzero);
        }
        if (spec.family != Family::kFrs) continue;
        const std::size_t max_agree = (spec.k - 1) / spec.s;
        for (std::size_t a = 0; a < book.messages; ++a)
            for (std::size_t b = a + 1; b < book.messages; ++b) {
                std::size_t agree = 0;
                for (std::size_t i = 0; i < spec.n; ++i) agree += book.at(a, i) == book.at(b, i);
                CHECK(agree <= max_agree);
            }
    }
}

TEST_CASE("codebook packing") {
    const auto spec = make_frs(7, 2, 3, 2, 3);
    const auto book = build_codebook(spec, 1000);
    for (std::size_t m = 0; m < book.messages; ++m) {
        const auto cw = encode(spec, vector_from_index(7, 2, m));
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(book.at(m, i) == pack_symbol(7, cw.symbols[i]));
            CHECK(unpack_symbol(7, 2, book.at(m, i)) == cw.symbols[i]);
        }
    }
    CHECK_THROWS_AS(build_codebook(spec, 10), BudgetExceeded);
}
