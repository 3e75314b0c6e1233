#include "listrec/search.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <set>
#include <tuple>

#include "listrec/bounds.hpp"
#include "listrec/designs.hpp"
#include "listrec/error.hpp"
#include "listrec/rng.hpp"

namespace listrec {

void ListTable::validate(const CodeSpec& spec, std::optional<std::size_t> ell) const {
    if (sets.size() != spec.n) throw DimensionMismatch("table has " + std::to_string(sets.size()) + " sets, code has n = " + std::to_string(spec.n));
    for (const auto& set : sets) {
        if (ell && set.size() > *ell) throw InvalidArgument("table set larger than l");
        for (const auto& sym : set) {
            if (sym.size() != spec.s) throw DimensionMismatch("table symbol length differs from s");
            for (auto v : sym)
                if (v >= spec.p) throw InvalidArgument("table symbol entry out of range");
        }
    }
}

std::optional<std::uint64_t> binomial_u64(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        acc = acc * (n - r + i) / i;
        if (acc > UINT64_MAX) return std::nullopt;
    }
    return static_cast<std::uint64_t>(acc);
}

namespace {

std::int64_t error_limit(const Rational& rho, std::uint64_t scale) {
    // Largest integer E with E <= rho * scale.
    return (rho * Rational(static_cast<std::int64_t>(scale))).floor();
}

std::vector<std::vector<std::uint64_t>> packed_table(const CodeSpec& spec, const ListTable& table) {
    std::vector<std::vector<std::uint64_t>> out(table.sets.size());
    for (std::size_t i = 0; i < table.sets.size(); ++i) {
        for (const auto& sym : table.sets[i]) out[i].push_back(pack_symbol(spec.p, sym));
        std::sort(out[i].begin(), out[i].end());
        out[i].erase(std::unique(out[i].begin(), out[i].end()), out[i].end());
    }
    return out;
}

// Errors for one coordinate: members outside the ell most frequent symbols.
// `syms` is scratch and gets sorted.
std::uint64_t coordinate_errors(std::uint64_t* syms, std::size_t count, std::size_t ell,
                                std::uint64_t* run_counts) {
    std::sort(syms, syms + count);
    std::size_t runs = 0;
    for (std::size_t j = 0; j < count;) {
        std::size_t e = j;
        while (e < count && syms[e] == syms[j]) ++e;
        run_counts[runs++] = e - j;
        j = e;
    }
    std::sort(run_counts, run_counts + runs, std::greater<>());
    std::uint64_t kept = 0;
    for (std::size_t j = 0; j < std::min(ell, runs); ++j) kept += run_counts[j];
    return count - kept;
}

// The ell most frequent symbols, ties to the lexicographically smallest symbol.
std::vector<std::uint64_t> top_symbols(const CodeSpec& spec, std::vector<std::uint64_t> syms, std::size_t ell) {
    std::map<std::uint64_t, std::size_t> freq;
    for (auto s : syms) ++freq[s];
    std::vector<std::tuple<std::size_t, Symbol, std::uint64_t>> order;
    for (auto [sym, c] : freq) order.emplace_back(c, unpack_symbol(spec.p, spec.s, sym), sym);
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
        return std::get<1>(a) < std::get<1>(b);
    });
    std::vector<std::uint64_t> out;
    for (std::size_t j = 0; j < std::min(ell, order.size()); ++j) out.push_back(std::get<2>(order[j]));
    std::sort(out.begin(), out.end());
    return out;
}

SearchOutcome describe_witness(const CodeSpec& spec, const CodebookTable& book, const std::vector<std::size_t>& subset,
                               std::size_t ell_eff) {
    SearchOutcome out;
    out.found = true;
    const auto r = static_cast<std::int64_t>(subset.size());
    out.adversary.sets.resize(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        std::vector<std::uint64_t> syms;
        for (auto m : subset) syms.push_back(book.at(m, i));
        auto top = top_symbols(spec, syms, ell_eff);
        std::uint64_t errors = 0;
        for (auto s : syms)
            if (!std::binary_search(top.begin(), top.end(), s)) ++errors;
        out.total_errors += errors;
        out.per_coordinate_errors.emplace_back(static_cast<std::int64_t>(errors), r);
        for (auto s : top) out.adversary.sets[i].push_back(unpack_symbol(spec.p, spec.s, s));
    }
    for (auto m : subset) out.witness_messages.push_back(vector_from_index(spec.p, spec.k, m));
    return out;
}

// Colex DFS over subsets of [0, bound) of size `need`, extending a partial list.
// Elements are chosen largest first, each level ascending, which visits subsets
// in colex order. Returns true at the first subset within the error limit.
struct SubsetDfs {
    const CodebookTable& book;
    std::size_t n;
    std::size_t ell;
    std::int64_t limit;
    std::vector<std::size_t> chosen;  // descending
    std::vector<std::uint64_t> scratch;
    std::vector<std::uint64_t> runs;
    std::uint64_t nodes = 0;

    std::int64_t partial_errors() {
        std::int64_t total = 0;
        const std::size_t count = chosen.size();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < count; ++j) scratch[j] = book.at(chosen[j], i);
            total += static_cast<std::int64_t>(coordinate_errors(scratch.data(), count, ell, runs.data()));
            if (total > limit) return total;
        }
        return total;
    }

    bool run(std::size_t bound, std::size_t need) {
        if (need == 0) return true;
        for (std::size_t c = need - 1; c < bound; ++c) {
            chosen.push_back(c);
            ++nodes;
            if (partial_errors() <= limit && run(c, need - 1)) return true;
            chosen.pop_back();
        }
        return false;
    }
};

}  // namespace

std::vector<Vec> brute_list_recover(const CodeSpec& spec, const ListTable& table, const Rational& rho,
                                    const ExecOptions& opts) {
    spec.validate();
    table.validate(spec);
    const CodebookTable book = build_codebook(spec, opts.budget);
    const auto sets = packed_table(spec, table);
    const std::int64_t limit = error_limit(rho, spec.n);
    std::vector<char> keep(book.messages, 0);
    const auto total = static_cast<std::int64_t>(book.messages);
#pragma omp parallel for schedule(static) num_threads(resolve_threads(opts.threads))
    for (std::int64_t m = 0; m < total; ++m) {
        std::int64_t miss = 0;
        for (std::size_t i = 0; i < spec.n; ++i)
            if (!std::binary_search(sets[i].begin(), sets[i].end(), book.at(static_cast<std::size_t>(m), i))) ++miss;
        keep[static_cast<std::size_t>(m)] = miss <= limit ? 1 : 0;
    }
    std::vector<Vec> out;
    for (std::size_t m = 0; m < book.messages; ++m)
        if (keep[m]) out.push_back(vector_from_index(spec.p, spec.k, m));
    return out;
}

ZeroErrorListResult max_zero_error_list(const CodeSpec& spec, std::size_t ell, const ExecOptions& opts) {
    spec.validate();
    if (ell < 1) throw InvalidArgument("zero-error search requires l >= 1");
    const CodebookTable book = build_codebook(spec, opts.budget);
    const std::size_t n = spec.n;

    // Upper bound: l^n, and l |H_i| per coordinate (messages sharing symbol i form a coset of H_i).
    std::uint64_t upper = book.messages;
    if (auto pw = checked_power(ell, n)) upper = std::min(upper, *pw);
    for (const auto& h : coordinate_kernels(spec)) {
        if (auto sz = checked_power(spec.p, h.dim())) upper = std::min<std::uint64_t>(upper, ell * *sz);
    }

    ZeroErrorListResult result;
    std::vector<std::size_t> best{0}, current{0};
    std::vector<std::vector<std::uint64_t>> symbol_sets(n);
    for (std::size_t i = 0; i < n; ++i) symbol_sets[i].push_back(book.at(0, i));

    auto compatible = [&](std::size_t m) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto& set = symbol_sets[i];
            if (set.size() >= ell && std::find(set.begin(), set.end(), book.at(m, i)) == set.end()) return false;
        }
        return true;
    };

    std::vector<std::size_t> initial;
    for (std::size_t m = 1; m < book.messages; ++m)
        if (compatible(m)) initial.push_back(m);

    bool stop = false;
    std::uint64_t nodes = 0;
    auto dfs = [&](auto& self, const std::vector<std::size_t>& candidates) -> void {
        if (current.size() > best.size()) best = current;
        if (best.size() >= upper) {
            stop = true;
            return;
        }
        for (std::size_t idx = 0; idx < candidates.size() && !stop; ++idx) {
            if (current.size() + (candidates.size() - idx) <= best.size()) return;
            if (++nodes > opts.budget) {
                result.exhaustive = false;
                stop = true;
                return;
            }
            const std::size_t m = candidates[idx];
            std::vector<std::size_t> added;
            for (std::size_t i = 0; i < n; ++i) {
                auto& set = symbol_sets[i];
                if (std::find(set.begin(), set.end(), book.at(m, i)) == set.end()) {
                    set.push_back(book.at(m, i));
                    added.push_back(i);
                }
            }
            current.push_back(m);
            std::vector<std::size_t> next;
            for (std::size_t j = idx + 1; j < candidates.size(); ++j)
                if (compatible(candidates[j])) next.push_back(candidates[j]);
            self(self, next);
            current.pop_back();
            for (auto i : added) symbol_sets[i].pop_back();
        }
    };
    dfs(dfs, initial);

    result.L_max = best.size();
    result.nodes = nodes;
    for (auto m : best) result.witness.push_back(vector_from_index(spec.p, spec.k, m));
    return result;
}

SearchOutcome average_radius_bad_list_search(const CodeSpec& spec, std::size_t ell, std::size_t L,
                                             const Rational& rho, AdversaryMode mode,
                                             const AverageRadiusOptions& opts) {
    spec.validate();
    const std::size_t ell_eff = mode == AdversaryMode::kListDecoding ? 1 : ell;
    if (ell_eff < 1) throw InvalidArgument("list recovery search requires l >= 1");
    const std::size_t r = L + 1;
    const CodebookTable book = build_codebook(spec, opts.exec.budget);
    if (r > book.messages) throw InvalidArgument("list size L + 1 exceeds the number of codewords");
    const std::int64_t limit = error_limit(rho, r * spec.n);
    const auto subsets = binomial_u64(book.messages, r);

    SearchOutcome out;
    out.budget = opts.exec.budget;

    if (!subsets || *subsets > opts.exec.budget) {
        if (!opts.randomized)
            throw BudgetExceeded("average-radius subset enumeration", subsets.value_or(UINT64_MAX), opts.exec.budget);
        Rng rng(opts.seed);
        SubsetDfs scorer{book, spec.n, ell_eff, limit, {}, std::vector<std::uint64_t>(r), std::vector<std::uint64_t>(r)};
        for (std::uint64_t t = 0; t < opts.trials; ++t) {
            std::vector<std::size_t> pick;
            for (std::uint64_t j = book.messages - r; j < book.messages; ++j) {
                auto v = static_cast<std::size_t>(rng.uniform(j + 1));
                if (std::find(pick.begin(), pick.end(), v) != pick.end()) v = static_cast<std::size_t>(j);
                pick.push_back(v);
            }
            std::sort(pick.begin(), pick.end(), std::greater<>());
            scorer.chosen = pick;
            if (limit >= 0 && scorer.partial_errors() <= limit) {
                std::sort(pick.begin(), pick.end());
                out = describe_witness(spec, book, pick, ell_eff);
                out.budget = opts.exec.budget;
                out.trials = t + 1;
                break;
            }
            out.trials = t + 1;
        }
        out.exhaustive = false;
        out.seed = opts.seed;
        out.total_budget_used = out.trials;
        return out;
    }

    if (limit < 0) {
        out.total_budget_used = 0;
        return out;
    }

    const auto leads = static_cast<std::int64_t>(book.messages);
    std::atomic<std::int64_t> best_lead{leads};
    std::vector<std::size_t> best_subset;
    std::uint64_t nodes_total = 0;
#pragma omp parallel num_threads(resolve_threads(opts.exec.threads))
    {
        SubsetDfs dfs{book, spec.n, ell_eff, limit, {}, std::vector<std::uint64_t>(r), std::vector<std::uint64_t>(r)};
#pragma omp for schedule(dynamic, 1) reduction(+ : nodes_total)
        for (std::int64_t lead = static_cast<std::int64_t>(r) - 1; lead < leads; ++lead) {
            if (lead > best_lead.load(std::memory_order_relaxed)) continue;
            dfs.chosen.assign(1, static_cast<std::size_t>(lead));
            dfs.nodes = 1;
            bool hit = dfs.partial_errors() <= limit && dfs.run(static_cast<std::size_t>(lead), r - 1);
            nodes_total += dfs.nodes;
            if (hit) {
#pragma omp critical
                {
                    if (lead < best_lead.load()) {
                        best_lead.store(lead);
                        best_subset = dfs.chosen;
                    }
                }
            }
        }
    }

    if (!best_subset.empty()) {
        std::sort(best_subset.begin(), best_subset.end());
        out = describe_witness(spec, book, best_subset, ell_eff);
        out.budget = opts.exec.budget;
    }
    out.exhaustive = true;
    out.total_budget_used = nodes_total;
    return out;
}

ZeroErrorConfirmation confirm_zero_error_theorem(const CodeSpec& spec, std::size_t ell, const ExecOptions& opts) {
    spec.validate();
    ZeroErrorConfirmation out;
    const auto alphabet = checked_power(spec.p, spec.s);
    if (ell < 2) {
        out.reason = "requires l >= 2";
        return out;
    }
    if (alphabet && ell >= *alphabet) {
        out.reason = "l >= alphabet size p^s";
        return out;
    }
    for (std::size_t L = ell; L <= spec.s; ++L) {
        auto chk = zero_error_ok(static_cast<std::int64_t>(spec.k), static_cast<std::int64_t>(spec.n),
                                 static_cast<std::int64_t>(spec.s), static_cast<std::int64_t>(ell),
                                 static_cast<std::int64_t>(L));
        if (chk.verdict == Verdict::kHolds) out.holding_L.push_back(L);
    }
    if (out.holding_L.empty()) {
        out.reason = "no L in [l, s] satisfies the zero-error condition";
        return out;
    }
    out.guaranteed_L = out.holding_L.front();
    out.largest_L = out.holding_L.back();

    try {
        const auto kernels = coordinate_kernels(spec);
        bool all = true;
        for (std::size_t d = 0; d <= std::min(spec.s, spec.k); ++d) {
            auto rep = verify_design(kernels, d, spec.s, opts);
            all = all && rep.holds_gk.value_or(true);
        }
        out.design_hypothesis = all;
    } catch (const BudgetExceeded&) {
        out.design_hypothesis.reset();
    }
    if (out.design_hypothesis == false) {
        out.reason = "coordinate kernels violate the (d, d(k-1)/(s-d+1)) design bound";
        return out;
    }

    out.applicable = true;
    out.search = max_zero_error_list(spec, ell, opts);
    out.margin = static_cast<std::int64_t>(*out.guaranteed_L) - static_cast<std::int64_t>(out.search.L_max);
    out.confirmed = out.search.L_max <= *out.guaranteed_L;
    return out;
}

std::vector<std::uint64_t> score_list(const CodeSpec& spec, const std::vector<Vec>& messages, const ListTable& table) {
    table.validate(spec);
    std::vector<std::uint64_t> errors(spec.n, 0);
    for (const auto& msg : messages) {
        const Codeword cw = encode(spec, msg);
        for (std::size_t i = 0; i < spec.n; ++i) {
            const auto& set = table.sets[i];
            if (std::find(set.begin(), set.end(), cw.symbols[i]) == set.end()) ++errors[i];
        }
    }
    return errors;
}

namespace reference {

std::vector<Vec> brute_list_recover(const CodeSpec& spec, const ListTable& table, const Rational& rho,
                                    std::uint64_t budget) {
    spec.validate();
    table.validate(spec);
    auto count = checked_power(spec.p, spec.k);
    if (!count || *count > budget) throw BudgetExceeded("message enumeration p^k", count.value_or(UINT64_MAX), budget);
    std::vector<Vec> out;
    for (std::uint64_t m = 0; m < *count; ++m) {
        Vec msg = vector_from_index(spec.p, spec.k, m);
        const Codeword cw = encode(spec, msg);
        std::size_t miss = 0;
        for (std::size_t i = 0; i < spec.n; ++i) {
            const auto& set = table.sets[i];
            if (std::find(set.begin(), set.end(), cw.symbols[i]) == set.end()) ++miss;
        }
        if (Rational(static_cast<std::int64_t>(miss)) <= rho * Rational(static_cast<std::int64_t>(spec.n)))
            out.push_back(std::move(msg));
    }
    return out;
}

SearchOutcome average_radius_bad_list_search(const CodeSpec& spec, std::size_t ell, std::size_t L,
                                             const Rational& rho, AdversaryMode mode, std::uint64_t budget) {
    spec.validate();
    const std::size_t ell_eff = mode == AdversaryMode::kListDecoding ? 1 : ell;
    const std::size_t r = L + 1;
    auto count = checked_power(spec.p, spec.k);
    if (!count || *count > budget) throw BudgetExceeded("message enumeration p^k", count.value_or(UINT64_MAX), budget);
    std::vector<Codeword> words;
    for (std::uint64_t m = 0; m < *count; ++m) words.push_back(encode(spec, vector_from_index(spec.p, spec.k, m)));
    if (r > words.size()) throw InvalidArgument("list size L + 1 exceeds the number of codewords");
    auto subsets = binomial_u64(words.size(), r);
    if (!subsets || *subsets > budget) throw BudgetExceeded("average-radius subset enumeration", subsets.value_or(UINT64_MAX), budget);

    const Rational cap = rho * Rational(static_cast<std::int64_t>(r * spec.n));
    std::optional<std::vector<std::size_t>> best;  // colex-minimal
    auto colex_less = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        for (std::size_t j = a.size(); j-- > 0;)
            if (a[j] != b[j]) return a[j] < b[j];
        return false;
    };
    std::vector<std::size_t> idx(r);
    for (std::size_t j = 0; j < r; ++j) idx[j] = j;
    std::uint64_t scanned = 0;
    while (true) {
        ++scanned;
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < spec.n; ++i) {
            std::map<Symbol, std::size_t> freq;
            for (auto m : idx) ++freq[words[m].symbols[i]];
            std::vector<std::size_t> counts;
            for (const auto& [sym, c] : freq) counts.push_back(c);
            std::sort(counts.rbegin(), counts.rend());
            std::size_t kept = 0;
            for (std::size_t j = 0; j < std::min(ell_eff, counts.size()); ++j) kept += counts[j];
            total += r - kept;
        }
        if (Rational(static_cast<std::int64_t>(total)) <= cap && (!best || colex_less(idx, *best))) best = idx;
        // next lexicographic combination
        std::size_t j = r;
        while (j > 0 && idx[j - 1] == words.size() - r + j - 1) --j;
        if (j == 0) break;
        ++idx[j - 1];
        for (std::size_t t = j; t < r; ++t) idx[t] = idx[t - 1] + 1;
    }

    SearchOutcome out;
    if (best) {
        CodebookTable book = build_codebook(spec, budget);
        out = describe_witness(spec, book, *best, ell_eff);
    }
    out.budget = budget;
    out.exhaustive = true;
    out.total_budget_used = scanned;
    return out;
}

std::size_t max_zero_error_list(const CodeSpec& spec, std::size_t ell) {
    spec.validate();
    auto count = checked_power(spec.p, spec.k);
    if (!count || *count > 4096) throw BudgetExceeded("reference zero-error search", count.value_or(UINT64_MAX), 4096);
    std::vector<Codeword> words;
    for (std::uint64_t m = 0; m < *count; ++m) words.push_back(encode(spec, vector_from_index(spec.p, spec.k, m)));
    std::vector<std::set<Symbol>> sets(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) sets[i].insert(words[0].symbols[i]);
    std::size_t best = 1;
    auto rec = [&](auto& self, std::size_t from, std::size_t size) -> void {
        best = std::max(best, size);
        for (std::size_t m = from; m < words.size(); ++m) {
            std::vector<std::size_t> added;
            bool ok = true;
            for (std::size_t i = 0; i < spec.n && ok; ++i) {
                if (sets[i].count(words[m].symbols[i])) continue;
                if (sets[i].size() >= ell) ok = false;
                else {
                    sets[i].insert(words[m].symbols[i]);
                    added.push_back(i);
                }
            }
            if (ok) self(self, m + 1, size + 1);
            for (auto i : added) sets[i].erase(words[m].symbols[i]);
        }
    };
    rec(rec, 1, 1);
    return best;
}

}  // namespace reference

}  // namespace listrec
