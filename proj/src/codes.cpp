#include "listrec/codes.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "listrec/error.hpp"
#include "listrec/rng.hpp"

namespace listrec {

std::string family_name(Family f) {
    switch (f) {
        case Family::kFrs: return "frs";
        case Family::kMult: return "mult";
        case Family::kRlc: return "rlc";
        case Family::kRrs: return "rrs";
    }
    return "?";
}

Family parse_family(const std::string& name) {
    std::string lower = name;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "frs") return Family::kFrs;
    if (lower == "mult") return Family::kMult;
    if (lower == "rlc") return Family::kRlc;
    if (lower == "rrs") return Family::kRrs;
    throw InvalidArgument("unknown code family '" + name + "'");
}

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw InvalidArgument(msg);
}

bool pairwise_distinct(const std::vector<Residue>& v) {
    std::set<Residue> seen(v.begin(), v.end());
    return seen.size() == v.size();
}

}  // namespace

void CodeSpec::validate() const {
    require(is_prime(p), "modulus " + std::to_string(p) + " is not prime");
    require(s >= 1 && n >= 1 && k >= 1, "s, n, k must be positive");
    require(k <= s * n, "rate k/(s n) exceeds 1");
    PrimeField f(p);
    switch (family) {
        case Family::kFrs: {
            require(gamma.has_value(), "FRS code requires gamma");
            require(*gamma % p != 0 && multiplicative_order(f, *gamma) == p - 1, "gamma is not a generator of F_p^x");
            require(s * n < p, "FRS code requires s n < p");
            require(alphas.size() == n, "FRS code requires n evaluation points");
            std::vector<Residue> orbit;
            for (auto a : alphas) {
                require(a < p, "evaluation point out of range");
                Residue x = a;
                for (std::size_t j = 0; j < s; ++j) {
                    orbit.push_back(x);
                    x = f.mul(x, *gamma);
                }
            }
            require(pairwise_distinct(orbit), "FRS orbit points gamma^j alpha_i are not pairwise distinct");
            break;
        }
        case Family::kMult:
            require(p >= s * n, "multiplicity code requires p >= s n");
            require(alphas.size() == n, "multiplicity code requires n evaluation points");
            require(std::all_of(alphas.begin(), alphas.end(), [&](Residue a) { return a < p; }),
                    "evaluation point out of range");
            require(pairwise_distinct(alphas), "multiplicity evaluation points are not distinct");
            break;
        case Family::kRrs:
            require(s == 1, "random RS code requires s = 1");
            require(p >= n, "random RS code requires p >= n");
            require(alphas.size() == n, "random RS code requires n evaluation points");
            require(std::all_of(alphas.begin(), alphas.end(), [&](Residue a) { return a < p; }),
                    "evaluation point out of range");
            require(pairwise_distinct(alphas), "RS evaluation points are not distinct");
            break;
        case Family::kRlc:
            require(generator_matrix.has_value(), "random linear code requires a generator matrix");
            require(generator_matrix->p() == p, "generator matrix modulus mismatch");
            require(generator_matrix->rows() == k && generator_matrix->cols() == s * n,
                    "generator matrix must be k x (s n)");
            break;
    }
}

void CodeSpec::validate_structure() const {
    require(is_prime(p), "modulus " + std::to_string(p) + " is not prime");
    require(s >= 1 && n >= 1 && k >= 1, "s, n, k must be positive");
    if (family == Family::kRlc) {
        require(generator_matrix.has_value(), "random linear code requires a generator matrix");
        require(generator_matrix->p() == p, "generator matrix modulus mismatch");
        require(generator_matrix->rows() == k && generator_matrix->cols() == s * n,
                "generator matrix must be k x (s n)");
        return;
    }
    require(alphas.size() == n, "evaluation point count differs from n");
    require(std::all_of(alphas.begin(), alphas.end(), [&](Residue a) { return a < p; }), "evaluation point out of range");
    if (family == Family::kFrs) require(gamma.has_value() && *gamma % p != 0, "FRS code requires a nonzero gamma");
}

std::vector<Residue> default_frs_points(std::uint32_t p, Residue gamma, std::size_t s, std::size_t n) {
    PrimeField f(p);
    if (n * s > p - 1) {
        throw InvalidArgument("default FRS points infeasible: n s = " + std::to_string(n * s) + " > p - 1 = " +
                              std::to_string(p - 1));
    }
    std::vector<Residue> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(f.pow(gamma, i * s));
    return out;
}

CodeSpec make_frs(std::uint32_t p, std::size_t s, std::size_t n, std::size_t k, std::optional<Residue> gamma,
                  std::vector<Residue> alphas) {
    CodeSpec spec;
    spec.family = Family::kFrs;
    spec.p = p;
    spec.s = s;
    spec.n = n;
    spec.k = k;
    spec.gamma = gamma ? *gamma : find_generator(p).value();
    spec.alphas = alphas.empty() ? default_frs_points(p, *spec.gamma, s, n) : std::move(alphas);
    spec.validate();
    return spec;
}

CodeSpec make_mult(std::uint32_t p, std::size_t s, std::size_t n, std::size_t k, std::vector<Residue> alphas) {
    CodeSpec spec;
    spec.family = Family::kMult;
    spec.p = p;
    spec.s = s;
    spec.n = n;
    spec.k = k;
    if (alphas.empty()) {
        alphas.resize(n);
        std::iota(alphas.begin(), alphas.end(), Residue{0});
    }
    spec.alphas = std::move(alphas);
    spec.validate();
    return spec;
}

CodeSpec make_rlc(MatrixFp generator, std::size_t s, std::size_t n) {
    CodeSpec spec;
    spec.family = Family::kRlc;
    spec.p = generator.p();
    spec.s = s;
    spec.n = n;
    spec.k = generator.rows();
    spec.generator_matrix = std::move(generator);
    spec.validate();
    return spec;
}

CodeSpec sample_code(Family family, std::uint32_t p, std::size_t s, std::size_t n, std::size_t k, std::uint64_t seed) {
    PrimeField f(p);
    Rng rng(seed);
    CodeSpec spec;
    spec.family = family;
    spec.p = p;
    spec.s = s;
    spec.n = n;
    spec.k = k;
    spec.seed = seed;
    spec.rng = std::string(Rng::kName);
    if (family == Family::kRlc) {
        MatrixFp g(p, k, s * n);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < s * n; ++c) g.at(r, c) = static_cast<Residue>(rng.uniform(p));
        spec.generator_matrix = std::move(g);
    } else if (family == Family::kRrs) {
        if (s != 1) throw InvalidArgument("random RS code requires s = 1");
        if (p < n) throw InvalidArgument("random RS code requires p >= n distinct evaluation points");
        // Partial Fisher-Yates over F_p.
        std::vector<Residue> pool(p);
        std::iota(pool.begin(), pool.end(), Residue{0});
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t j = i + static_cast<std::size_t>(rng.uniform(p - i));
            std::swap(pool[i], pool[j]);
        }
        spec.alphas.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
    } else {
        throw InvalidArgument("sample_code supports only rlc and rrs");
    }
    spec.validate();
    return spec;
}

MatrixFp encoding_matrix(const CodeSpec& spec) {
    spec.validate_structure();
    if (spec.family == Family::kRlc) return *spec.generator_matrix;
    PrimeField f(spec.p);
    MatrixFp g(spec.p, spec.k, spec.s * spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        for (std::size_t j = 0; j < spec.s; ++j) {
            const std::size_t col = i * spec.s + j;
            for (std::size_t t = 0; t < spec.k; ++t) {
                Residue entry = 0;
                switch (spec.family) {
                    case Family::kFrs: {
                        // (gamma^j alpha_i)^t
                        Residue pt = f.mul(f.pow(*spec.gamma, j), spec.alphas[i]);
                        entry = f.pow(pt, t);
                        break;
                    }
                    case Family::kRrs: entry = f.pow(spec.alphas[i], t); break;
                    case Family::kMult:
                        // H^(j)(x^t) at alpha_i = C(t, j) alpha_i^(t-j)
                        entry = t < j ? 0 : f.mul(binomial_mod(f, t, j), f.pow(spec.alphas[i], t - j));
                        break;
                    case Family::kRlc: break;
                }
                g.at(t, col) = entry;
            }
        }
    }
    return g;
}

MatrixFp coordinate_map(const CodeSpec& spec, std::size_t coordinate) {
    if (coordinate >= spec.n) throw InvalidArgument("coordinate index out of range");
    MatrixFp g = encoding_matrix(spec);
    MatrixFp m(spec.p, spec.s, spec.k);
    for (std::size_t j = 0; j < spec.s; ++j)
        for (std::size_t t = 0; t < spec.k; ++t) m.at(j, t) = g.at(t, coordinate * spec.s + j);
    return m;
}

Codeword encode(const CodeSpec& spec, std::span<const Residue> message) {
    if (message.size() != spec.k) throw DimensionMismatch("message length differs from k");
    MatrixFp g = encoding_matrix(spec);
    PrimeField f(spec.p);
    Codeword cw;
    cw.symbols.assign(spec.n, Symbol(spec.s, 0));
    for (std::size_t col = 0; col < spec.s * spec.n; ++col) {
        Residue acc = 0;
        for (std::size_t t = 0; t < spec.k; ++t) acc = f.add(acc, f.mul(message[t] % spec.p, g.at(t, col)));
        cw.symbols[col / spec.s][col % spec.s] = acc;
    }
    return cw;
}

namespace {

Vec message_of(const CodeSpec& spec, const DensePoly& f) {
    if (f.p() != spec.p) throw ModulusMismatch(f.p(), spec.p);
    if (f.degree() >= static_cast<int>(spec.k)) {
        throw InvalidArgument("message degree " + std::to_string(f.degree()) + " not below k = " + std::to_string(spec.k));
    }
    Vec msg(spec.k, 0);
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) msg[i] = f.coeffs()[i];
    return msg;
}

}  // namespace

Codeword frs_encode(const CodeSpec& spec, const DensePoly& f) {
    if (spec.family != Family::kFrs) throw InvalidArgument("frs_encode requires an FRS spec");
    return encode(spec, message_of(spec, f));
}

Codeword mult_encode(const CodeSpec& spec, const DensePoly& f) {
    if (spec.family != Family::kMult) throw InvalidArgument("mult_encode requires a multiplicity spec");
    return encode(spec, message_of(spec, f));
}

Subspace coordinate_kernel(const CodeSpec& spec, std::size_t i) {
    if (i < 1 || i > spec.n) throw InvalidArgument("coordinate index must be in 1..n");
    return kernel(coordinate_map(spec, i - 1));
}

std::vector<Subspace> coordinate_kernels(const CodeSpec& spec) {
    std::vector<Subspace> out;
    out.reserve(spec.n);
    for (std::size_t i = 1; i <= spec.n; ++i) out.push_back(coordinate_kernel(spec, i));
    return out;
}

std::uint64_t pack_symbol(std::uint32_t p, std::span<const Residue> symbol) noexcept {
    return vector_index(p, symbol);
}

Symbol unpack_symbol(std::uint32_t p, std::size_t s, std::uint64_t packed) { return vector_from_index(p, s, packed); }

CodebookTable build_codebook(const CodeSpec& spec, std::uint64_t budget) {
    auto count = checked_power(spec.p, spec.k);
    if (!count || *count > budget) throw BudgetExceeded("message enumeration p^k", count.value_or(UINT64_MAX), budget);
    if (!checked_power(spec.p, spec.s)) throw InvalidArgument("symbol alphabet p^s overflows 64 bits");
    MatrixFp g = encoding_matrix(spec);
    PrimeField f(spec.p);
    CodebookTable table;
    table.n = spec.n;
    table.messages = static_cast<std::size_t>(*count);
    table.packed.assign(table.messages * spec.n, 0);
    Vec msg(spec.k, 0);
    Vec word(spec.s * spec.n, 0);
    for (std::size_t m = 0; m < table.messages; ++m) {
        // msg already holds digits of m (incremented below).
        std::fill(word.begin(), word.end(), 0);
        for (std::size_t t = 0; t < spec.k; ++t) {
            if (msg[t] == 0) continue;
            for (std::size_t col = 0; col < word.size(); ++col) word[col] = f.add(word[col], f.mul(msg[t], g.at(t, col)));
        }
        for (std::size_t i = 0; i < spec.n; ++i)
            table.packed[m * spec.n + i] = pack_symbol(spec.p, std::span<const Residue>(word).subspan(i * spec.s, spec.s));
        for (std::size_t t = 0; t < spec.k; ++t) {
            if (++msg[t] < spec.p) break;
            msg[t] = 0;
        }
    }
    return table;
}

}  // namespace listrec
