#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "listrec/field.hpp"
#include "listrec/linalg.hpp"
#include "listrec/rational.hpp"

namespace listrec {

enum class Family { kFrs, kMult, kRlc, kRrs };

std::string family_name(Family f);
Family parse_family(const std::string& name);

/// Declarative code description. Every family is realized as an F_p-linear
/// encoder f -> f * G with G a k x (s n) matrix; symbol i is columns
/// [i s, (i+1) s) of the product.
struct CodeSpec {
    Family family = Family::kFrs;
    std::uint32_t p = 2;
    std::size_t s = 1;
    std::size_t n = 1;
    std::size_t k = 1;
    std::optional<Residue> gamma;             // FRS
    std::vector<Residue> alphas;              // FRS / MULT / RRS
    std::optional<MatrixFp> generator_matrix; // RLC
    std::optional<std::uint64_t> seed;        // RLC / RRS provenance
    std::string rng;                          // generator name when sampled

    Rational rate() const { return Rational(static_cast<std::int64_t>(k), static_cast<std::int64_t>(s * n)); }
    /// Throws InvalidArgument describing the first violated invariant.
    void validate() const;
    /// Weaker check: enough for the evaluation map to be well defined (rate
    /// and distinctness of points are not required).
    void validate_structure() const;

    friend bool operator==(const CodeSpec&, const CodeSpec&) = default;
};

using Symbol = std::vector<Residue>;

struct Codeword {
    std::vector<Symbol> symbols;

    friend bool operator==(const Codeword&, const Codeword&) = default;
};

/// FRS spec with default evaluation points when alphas is empty.
CodeSpec make_frs(std::uint32_t p, std::size_t s, std::size_t n, std::size_t k,
                  std::optional<Residue> gamma = std::nullopt, std::vector<Residue> alphas = {});
/// Multiplicity code; alphas default to 0, 1, ..., n-1.
CodeSpec make_mult(std::uint32_t p, std::size_t s, std::size_t n, std::size_t k, std::vector<Residue> alphas = {});
CodeSpec make_rlc(MatrixFp generator, std::size_t s, std::size_t n);

/// alpha_i = gamma^{(i-1) s}. Throws InvalidArgument when n s > p - 1.
std::vector<Residue> default_frs_points(std::uint32_t p, Residue gamma, std::size_t s, std::size_t n);

CodeSpec sample_code(Family family, std::uint32_t p, std::size_t s, std::size_t n, std::size_t k, std::uint64_t seed);

/// k x (s n) generator matrix of the spec's encoder.
MatrixFp encoding_matrix(const CodeSpec& spec);
/// s x k matrix whose rows evaluate symbol `coordinate` (0-based).
MatrixFp coordinate_map(const CodeSpec& spec, std::size_t coordinate);

Codeword encode(const CodeSpec& spec, std::span<const Residue> message);
Codeword frs_encode(const CodeSpec& spec, const DensePoly& f);
Codeword mult_encode(const CodeSpec& spec, const DensePoly& f);

/// H_i = messages whose symbol i is zero; `i` is 1-based like the coordinates it names.
Subspace coordinate_kernel(const CodeSpec& spec, std::size_t i);
std::vector<Subspace> coordinate_kernels(const CodeSpec& spec);

/// Flattened encoding of every message, indexed by vector_index(message). Symbol
/// (msg, i) is packed base p into one integer. Used by the search kernels.
struct CodebookTable {
    std::size_t n = 0;
    std::size_t messages = 0;
    std::vector<std::uint64_t> packed;  // messages x n

    std::uint64_t at(std::size_t msg, std::size_t coord) const noexcept { return packed[msg * n + coord]; }
};

CodebookTable build_codebook(const CodeSpec& spec, std::uint64_t budget);

std::uint64_t pack_symbol(std::uint32_t p, std::span<const Residue> symbol) noexcept;
Symbol unpack_symbol(std::uint32_t p, std::size_t s, std::uint64_t packed);

}  // namespace listrec
