#include "listrec/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "listrec/bl.hpp"
#include "listrec/bounds.hpp"
#include "listrec/designs.hpp"
#include "listrec/error.hpp"
#include "listrec/io.hpp"
#include "listrec/search.hpp"

namespace listrec::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

struct Globals {
    int threads = 0;
    std::uint64_t budget = 0;  // 0: LISTREC_BUDGET or the default
    bool no_meta = false;
    std::string output;
    std::string format = "json";
    std::uint64_t seed = 1;

    ExecOptions exec() const { return {budget ? budget : budget_from_env(), threads}; }
};

// A violation or witness: the report is still emitted.
struct Outcome {
    json report;
    int code = kOk;
    std::string csv;  // used when --format csv is supported by the command
};

CodeSpec load_code(const std::string& arg) {
    if (!arg.empty() && arg.front() == '{') return code_spec_from_json(json::parse(arg));
    return code_spec_from_json(read_json_file(arg));
}

json load_json(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return json::parse(arg);
    return read_json_file(arg);
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string scalar_text(const json& v) {
    if (v.is_object() && v.contains("num")) {
        return std::to_string(v["num"].get<std::int64_t>()) + "/" + std::to_string(v["den"].get<std::int64_t>());
    }
    if (v.is_number_float()) return format_real(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    return v.dump();
}

// bounds

Outcome cmd_bounds(const std::string& mode, const BoundParams& params) {
    const BoundReport rep = evaluate_bound(mode, params);
    Outcome o{to_json(rep), rep.ok() ? kOk : kInvalidInput, {}};
    std::ostringstream csv;
    csv << "name,key,value\n";
    csv << csv_field(rep.name) << ",value," << csv_field(scalar_text(o.report["value"])) << "\n";
    for (const auto& [k, v] : o.report["details"].items())
        csv << csv_field(rep.name) << "," << csv_field(k) << "," << csv_field(scalar_text(v)) << "\n";
    o.csv = csv.str();
    return o;
}

// table1

Outcome cmd_table1(const std::vector<std::int64_t>& ells, const std::vector<std::string>& rates,
                   const std::vector<std::string>& epss) {
    Outcome o;
    o.report = json::array();
    std::ostringstream csv;
    csv << "family,ell,R,eps,alphabet_requirement,list_size,list_size_log10,explicitness\n";
    for (auto ell : ells) {
        for (const auto& rt : rates) {
            const Rational R = Rational::parse(rt);
            for (const auto& et : epss) {
                const Rational eps = Rational::parse(et);
                if (!(R + eps < Rational(1))) continue;
                for (const auto& row : table1_rows(ell, R, eps)) {
                    csv << csv_field(row.family) << "," << row.ell << "," << row.R.str() << "," << row.eps.str() << ","
                        << csv_field(row.alphabet_requirement) << "," << csv_field(row.list_size) << ","
                        << format_real(row.list_size_log10) << "," << row.explicitness << "\n";
                    o.report.push_back(json{{"family", row.family},
                                            {"ell", row.ell},
                                            {"R", to_json(row.R)},
                                            {"eps", to_json(row.eps)},
                                            {"alphabet_requirement", row.alphabet_requirement},
                                            {"list_size", row.list_size},
                                            {"list_size_log10", row.list_size_log10},
                                            {"explicitness", row.explicitness}});
                }
            }
        }
    }
    o.csv = csv.str();
    return o;
}

// design verify

Outcome cmd_design_verify(const CodeSpec& spec, std::optional<std::size_t> d, std::optional<std::string> mu,
                          const ExecOptions& exec) {
    Outcome o;
    o.report["code"] = to_json(spec);
    const auto kernels = coordinate_kernels(spec);
    json reports = json::array();
    std::ostringstream csv;
    csv << "d,max_sum,bound_gk,holds_gk,bound_improved,holds_improved\n";
    const std::size_t top = d.value_or(std::min(spec.s, spec.k));
    const std::size_t first = d ? *d : 1;
    for (std::size_t dd = first; dd <= top; ++dd) {
        auto rep = verify_design(kernels, dd, spec.s, exec);
        if (rep.holds_gk == false) o.code = kViolation;
        json jr = to_json(rep);
        csv << dd << "," << rep.max_sum << "," << (rep.bound_gk ? rep.bound_gk->str() : "") << ","
            << (rep.holds_gk ? (*rep.holds_gk ? "true" : "false") : "") << ","
            << (rep.bound_improved ? rep.bound_improved->str() : "") << ","
            << (rep.holds_improved ? (*rep.holds_improved ? "true" : "false") : "") << "\n";
        reports.push_back(std::move(jr));
    }
    o.report["reports"] = std::move(reports);
    if (mu) {
        const Rational m = Rational::parse(*mu);
        json slacked = json::array();
        for (const auto& rep : check_slacked_designable(spec, top, m, exec)) {
            if (rep.holds_slacked == false) o.code = kViolation;
            slacked.push_back(to_json(rep));
        }
        o.report["mu"] = to_json(m);
        o.report["slacked"] = std::move(slacked);
    }
    o.csv = csv.str();
    return o;
}

// bl check

struct SlackStats {
    std::size_t samples = 0;
    double min_slack = INFINITY;
    std::size_t violations = 0;
};

json stats_json(const SlackStats& s) {
    return json{{"samples", s.samples},
                {"min_slack", s.samples ? json(s.min_slack) : json(nullptr)},
                {"violations", s.violations},
                {"tolerance", kSlackTolerance}};
}

json check_instance(const BLInstance& inst, std::size_t samples, std::size_t max_support, Rng& rng,
                    const ExecOptions& exec, int& code) {
    json j;
    j["instance"] = to_json(inst);
    const auto witness = check_dim_condition(inst, exec);
    if (witness) {
        j["dim_condition"] = "fails";
        j["witness"] = to_json(*witness);
        const Rational gap = weighted_image_dim(inst, *witness) - Rational(static_cast<std::int64_t>(witness->dim()));
        j["gap"] = to_json(gap);
        const auto x = DiscreteDistribution::uniform_on(*witness);
        j["witness_entropy_slack"] = verify_entropy_bl(inst, x);
        j["expected_entropy_slack"] = gap.to_double() * std::log(static_cast<double>(inst.p));
        code = kViolation;
        return j;
    }
    j["dim_condition"] = "ok";
    SlackStats ent, rem;
    const auto ambient = checked_power(inst.p, inst.v_dim).value_or(kMaxAmbientSize);
    for (std::size_t t = 0; t < samples; ++t) {
        const auto cap = std::min<std::uint64_t>(ambient, max_support);
        const auto support = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(cap)));
        const auto x = random_distribution(rng, inst.p, inst.v_dim, support);
        const double se = verify_entropy_bl(inst, x);
        const double sr = verify_remainder_bl(inst, x);
        for (auto [stats, v] : {std::pair{&ent, se}, std::pair{&rem, sr}}) {
            ++stats->samples;
            stats->min_slack = std::min(stats->min_slack, v);
            if (v < -kSlackTolerance) ++stats->violations;
        }
    }
    if (ent.violations || rem.violations) code = kViolation;
    j["entropy"] = stats_json(ent);
    j["remainder"] = stats_json(rem);
    return j;
}

// search avg-radius

AdversaryMode parse_mode(const std::string& m) {
    if (m == "list-recovery") return AdversaryMode::kListRecovery;
    if (m == "list-decoding") return AdversaryMode::kListDecoding;
    throw InvalidArgument("unknown adversary mode '" + m + "' (list-recovery or list-decoding)");
}

void emit(const Globals& g, const Outcome& o, std::ostream& out, const std::vector<std::string>& args,
          const std::string& command) {
    std::string text;
    if (g.format == "csv") {
        if (o.csv.empty()) throw InvalidArgument("command '" + command + "' has no csv output");
        text = o.csv;
    } else {
        json doc = o.report;
        if (!g.no_meta) {
            json meta{{"tool", "listrec"}, {"version", kVersion}, {"command", command}, {"argv", args},
                      {"threads", resolve_threads(g.threads)}, {"timestamp", iso_timestamp()}};
            if (doc.is_object()) doc["meta"] = std::move(meta);
            else doc = json{{"rows", std::move(doc)}, {"meta", std::move(meta)}};
        }
        text = g.format == "table" && doc.is_object() ? doc.dump(4) + "\n" : doc.dump(2) + "\n";
    }
    if (g.output.empty()) {
        out << text;
    } else {
        std::ofstream f(g.output, std::ios::binary);
        if (!f) throw InvalidArgument("cannot write " + g.output);
        f << text;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact list-recovery experiments over prime fields"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    Globals g;
    app.add_option("--threads", g.threads, "cap on OpenMP workers (0 = default)");
    app.add_option("--budget", g.budget, "enumeration budget (overrides LISTREC_BUDGET)")->check(CLI::PositiveNumber);
    app.add_flag("--no-meta", g.no_meta, "omit the meta block (timestamps) for byte-identical output");
    app.add_option("--output", g.output, "write the report here instead of stdout");
    app.add_option("--format", g.format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--seed", g.seed, "seed for randomized commands");
    app.fallthrough();

    // bounds
    auto* bounds = app.add_subcommand("bounds", "evaluate a closed-form bound");
    std::string bound_mode;
    BoundParams bp;
    std::optional<std::string> bR, beps, bmu;
    bounds->add_option("mode", bound_mode, "zero-error, zero-error-size, asymptotic, threshold, singleton, conjecture, johnson, requirements")
        ->required();
    bounds->add_option("--ell", bp.ell);
    bounds->add_option("--L", bp.L);
    bounds->add_option("--k", bp.k);
    bounds->add_option("--n", bp.n);
    bounds->add_option("--s", bp.s);
    bounds->add_option("--a", bp.a);
    bounds->add_option("--R", bR, "rate, exact: 1/2 or 0.5");
    bounds->add_option("--eps", beps);
    bounds->add_option("--mu", bmu);
    bounds->add_option("--variant", bp.variant, "list-size variant (base, rlc, rrs) or requirement variant");

    // table1
    auto* table1 = app.add_subcommand("table1", "list-size and alphabet rows over an (l, R, eps) grid");
    std::vector<std::int64_t> t_ells{2, 4, 8};
    std::vector<std::string> t_rates{"0.1", "0.2", "0.3", "0.4", "0.5", "0.6", "0.7", "0.8"};
    std::vector<std::string> t_eps{"0.05", "0.1", "0.2"};
    table1->add_option("--ell", t_ells)->delimiter(',');
    table1->add_option("--R", t_rates)->delimiter(',');
    table1->add_option("--eps", t_eps)->delimiter(',');

    // code
    auto* code = app.add_subcommand("code", "build or sample a code spec");
    std::string c_family = "frs";
    std::uint32_t c_p = 0;
    std::size_t c_s = 1, c_n = 1, c_k = 1;
    std::optional<Residue> c_gamma;
    bool c_sample = false;
    code->add_option("--family", c_family)->check(CLI::IsMember({"frs", "mult", "rlc", "rrs"}));
    code->add_option("--p", c_p)->required();
    code->add_option("--s", c_s);
    code->add_option("--n", c_n);
    code->add_option("--k", c_k);
    code->add_option("--gamma", c_gamma);
    code->add_flag("--sample", c_sample, "sample rlc / rrs codes from --seed");

    // design verify
    auto* design = app.add_subcommand("design", "subspace design checks");
    design->require_subcommand(1);
    auto* dverify = design->add_subcommand("verify", "exhaustive design bound check on the coordinate kernels");
    std::string d_code;
    std::optional<std::size_t> d_dim;
    std::optional<std::string> d_mu;
    dverify->add_option("--code", d_code, "CodeSpec JSON file or inline JSON")->required();
    dverify->add_option("--d", d_dim, "single dimension (default 1..min(s,k))");
    dverify->add_option("--mu", d_mu, "also check (R+mu)-slacked designability");

    // bl check
    auto* bl = app.add_subcommand("bl", "Brascamp-Lieb checks");
    bl->require_subcommand(1);
    auto* blcheck = bl->add_subcommand("check", "dimension condition, then sampled entropy / remainder slacks");
    std::string b_instance;
    std::size_t b_samples = 100, b_count = 1, b_support = 64;
    std::uint32_t b_p = 2;
    std::size_t b_vdim = 3, b_m = 3;
    blcheck->add_option("--instance", b_instance, "BLInstance JSON (default: random instances from --seed)");
    blcheck->add_option("--samples", b_samples, "random distributions per instance");
    blcheck->add_option("--count", b_count, "random instances");
    blcheck->add_option("--p", b_p);
    blcheck->add_option("--v-dim", b_vdim);
    blcheck->add_option("--m", b_m);
    blcheck->add_option("--max-support", b_support)->check(CLI::PositiveNumber);

    // recover
    auto* recover = app.add_subcommand("recover", "brute-force list recovery");
    std::string r_code, r_table, r_rho = "0";
    std::optional<std::size_t> r_L;
    recover->add_option("--code", r_code)->required();
    recover->add_option("--table", r_table, "ListTable JSON file or inline JSON")->required();
    recover->add_option("--rho", r_rho);
    recover->add_option("--L", r_L, "flag a violation when more than L messages are recovered");

    // search
    auto* search = app.add_subcommand("search", "exhaustive bad-list searches");
    search->require_subcommand(1);
    auto* szero = search->add_subcommand("zero-error", "largest zero-error list");
    std::string s_code;
    std::size_t s_ell = 1, s_L = 1;
    std::optional<std::size_t> sz_L;
    szero->add_option("--code", s_code)->required();
    szero->add_option("--ell", s_ell)->required();
    szero->add_option("--L", sz_L, "flag a violation when the largest list exceeds L");
    auto* savg = search->add_subcommand("avg-radius", "average-radius bad list search");
    std::string s_rho, s_mode = "list-recovery";
    bool s_randomized = false;
    std::uint64_t s_trials = 100'000;
    savg->add_option("--code", s_code)->required();
    savg->add_option("--ell", s_ell);
    savg->add_option("--L", s_L)->required();
    savg->add_option("--rho", s_rho)->required();
    savg->add_option("--mode", s_mode)->check(CLI::IsMember({"list-recovery", "list-decoding"}));
    savg->add_flag("--randomized", s_randomized, "sample subsets when the exhaustive search exceeds the budget");
    savg->add_option("--trials", s_trials);

    // confirm
    auto* confirm = app.add_subcommand("confirm", "zero-error theorem: formula guarantee vs exhaustive search");
    std::string cf_code;
    std::size_t cf_ell = 2;
    confirm->add_option("--code", cf_code)->required();
    confirm->add_option("--ell", cf_ell)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kOk : kInvalidInput;
    }

    try {
        const ExecOptions exec = g.exec();
        Outcome o;
        std::string command;
        if (*bounds) {
            command = "bounds";
            if (bR) bp.R = Rational::parse(*bR);
            if (beps) bp.eps = Rational::parse(*beps);
            if (bmu) bp.mu = Rational::parse(*bmu);
            o = cmd_bounds(bound_mode, bp);
            if (o.code != kOk) err << "listrec: preconditions not met for bound '" << bound_mode << "'\n";
        } else if (*table1) {
            command = "table1";
            o = cmd_table1(t_ells, t_rates, t_eps);
        } else if (*code) {
            command = "code";
            const Family fam = parse_family(c_family);
            CodeSpec spec;
            if (c_sample || fam == Family::kRlc || fam == Family::kRrs) spec = sample_code(fam, c_p, c_s, c_n, c_k, g.seed);
            else if (fam == Family::kFrs) spec = make_frs(c_p, c_s, c_n, c_k, c_gamma);
            else spec = make_mult(c_p, c_s, c_n, c_k);
            o.report = to_json(spec);
        } else if (*dverify) {
            command = "design verify";
            o = cmd_design_verify(load_code(d_code), d_dim, d_mu, exec);
        } else if (*blcheck) {
            command = "bl check";
            Rng rng(g.seed);
            json results = json::array();
            int rc = kOk;
            if (!b_instance.empty()) {
                results.push_back(check_instance(bl_instance_from_json(load_json(b_instance)), b_samples, b_support, rng,
                                                 exec, rc));
            } else {
                for (std::size_t i = 0; i < b_count; ++i) {
                    auto inst = random_bl_instance(rng, b_p, b_vdim, b_m);
                    results.push_back(check_instance(inst, b_samples, b_support, rng, exec, rc));
                }
            }
            o.report = json{{"seed", g.seed}, {"samples", b_samples}, {"results", std::move(results)}};
            o.code = rc;
        } else if (*recover) {
            command = "recover";
            const CodeSpec spec = load_code(r_code);
            const ListTable table = list_table_from_json(load_json(r_table));
            const Rational rho = Rational::parse(r_rho);
            const auto msgs = brute_list_recover(spec, table, rho, exec);
            json jm = json::array();
            for (const auto& m : msgs) jm.push_back(to_json(m));
            o.report = json{{"rho", to_json(rho)}, {"count", msgs.size()}, {"messages", std::move(jm)}};
            if (r_L && msgs.size() > *r_L) o.code = kViolation;
        } else if (*szero) {
            command = "search zero-error";
            const auto res = max_zero_error_list(load_code(s_code), s_ell, exec);
            o.report = to_json(res);
            o.report["ell"] = s_ell;
            o.report["budget"] = exec.budget;
            if (!res.exhaustive) o.code = kBudgetExceeded;
            else if (sz_L && res.L_max > *sz_L) o.code = kViolation;
        } else if (*savg) {
            command = "search avg-radius";
            AverageRadiusOptions opts;
            opts.exec = exec;
            opts.randomized = s_randomized;
            opts.seed = g.seed;
            opts.trials = s_trials;
            const auto res = average_radius_bad_list_search(load_code(s_code), s_ell, s_L, Rational::parse(s_rho),
                                                            parse_mode(s_mode), opts);
            o.report = to_json(res);
            if (res.found) o.code = kViolation;
        } else if (*confirm) {
            command = "confirm";
            const auto res = confirm_zero_error_theorem(load_code(cf_code), cf_ell, exec);
            o.report = to_json(res);
            if (!res.applicable) {
                err << "listrec: theorem not applicable: " << res.reason << "\n";
                o.code = kInvalidInput;
            } else if (!res.search.exhaustive) {
                o.code = kBudgetExceeded;
            } else if (!res.confirmed) {
                o.code = kViolation;
            }
        }
        emit(g, o, out, args, command);
        return o.code;
    } catch (const BudgetExceeded& e) {
        err << "listrec: " << e.what() << "\n";
        return kBudgetExceeded;
    } catch (const json::exception& e) {
        err << "listrec: invalid JSON: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const std::exception& e) {
        err << "listrec: " << e.what() << "\n";
        return kInvalidInput;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace listrec::cli
