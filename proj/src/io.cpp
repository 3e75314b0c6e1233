#include "listrec/io.hpp"

#include <fstream>
#include <sstream>

#include "listrec/error.hpp"

namespace listrec {

namespace {

template <class T>
T get_uint(const json& j, const char* key) {
    if (!j.contains(key)) throw InvalidArgument(std::string("missing field \"") + key + "\"");
    const auto& v = j.at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        throw InvalidArgument(std::string("field \"") + key + "\" must be a nonnegative integer");
    return static_cast<T>(v.get<std::uint64_t>());
}

std::vector<Residue> residues(const json& j, const char* what) {
    if (!j.is_array()) throw InvalidArgument(std::string(what) + " must be an array");
    std::vector<Residue> out;
    for (const auto& e : j) {
        if (!e.is_number_integer() || e.get<std::int64_t>() < 0)
            throw InvalidArgument(std::string(what) + " entries must be nonnegative integers");
        out.push_back(static_cast<Residue>(e.get<std::uint64_t>()));
    }
    return out;
}

json value_json(const std::variant<std::monostate, Rational, double>& v) {
    if (std::holds_alternative<Rational>(v)) return to_json(std::get<Rational>(v));
    if (std::holds_alternative<double>(v)) return std::get<double>(v);
    return nullptr;
}

}  // namespace

json to_json(const Rational& r) { return json{{"num", r.num()}, {"den", r.den()}}; }

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_object() && j.contains("num") && j.contains("den") && j["num"].is_number_integer() &&
        j["den"].is_number_integer())
        return Rational(j["num"].get<std::int64_t>(), j["den"].get<std::int64_t>());
    throw InvalidArgument("expected a rational {\"num\":a,\"den\":b}, integer or \"a/b\" string");
}

json to_json(const Vec& v) {
    json out = json::array();
    for (auto x : v) out.push_back(x);
    return out;
}

json to_json(const MatrixFp& m) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        auto row = m.row(r);
        out.push_back(to_json(Vec(row.begin(), row.end())));
    }
    return out;
}

MatrixFp matrix_from_json(std::uint32_t p, std::size_t cols, const json& j) {
    if (!j.is_array()) throw InvalidArgument("matrix must be an array of rows");
    std::vector<Vec> rows;
    for (const auto& row : j) {
        Vec v = residues(row, "matrix row");
        if (v.size() != cols) throw DimensionMismatch("matrix row has wrong length");
        for (auto& x : v) x %= p;
        rows.push_back(std::move(v));
    }
    return MatrixFp::from_rows(p, cols, rows);
}

json to_json(const Subspace& u) {
    return json{{"p", u.p()}, {"ambient_dim", u.ambient_dim()}, {"dim", u.dim()}, {"basis", to_json(u.basis())}};
}

json to_json(const CodeSpec& spec) {
    json j;
    j["family"] = family_name(spec.family);
    j["p"] = spec.p;
    j["s"] = spec.s;
    j["n"] = spec.n;
    j["k"] = spec.k;
    if (spec.gamma) j["gamma"] = *spec.gamma;
    if (!spec.alphas.empty()) j["alphas"] = to_json(spec.alphas);
    if (spec.generator_matrix) j["generator_matrix"] = to_json(*spec.generator_matrix);
    if (spec.seed) j["seed"] = *spec.seed;
    if (!spec.rng.empty()) j["rng"] = spec.rng;
    return j;
}

CodeSpec code_spec_from_json(const json& j) {
    if (!j.is_object()) throw InvalidArgument("code spec must be a JSON object");
    if (!j.contains("family") || !j["family"].is_string()) throw InvalidArgument("missing field \"family\"");
    const Family family = parse_family(j["family"].get<std::string>());
    const auto p = get_uint<std::uint32_t>(j, "p");
    const auto s = get_uint<std::size_t>(j, "s");
    const auto n = get_uint<std::size_t>(j, "n");
    if (!is_prime(p)) throw InvalidArgument("p must be prime");
    std::vector<Residue> alphas;
    if (j.contains("alphas")) alphas = residues(j["alphas"], "alphas");

    CodeSpec spec;
    switch (family) {
        case Family::kFrs: {
            std::optional<Residue> gamma;
            if (j.contains("gamma")) gamma = get_uint<Residue>(j, "gamma");
            spec = make_frs(p, s, n, get_uint<std::size_t>(j, "k"), gamma, alphas);
            break;
        }
        case Family::kMult: spec = make_mult(p, s, n, get_uint<std::size_t>(j, "k"), alphas); break;
        case Family::kRrs:
            spec.family = family;
            spec.p = p;
            spec.s = s;
            spec.n = n;
            spec.k = get_uint<std::size_t>(j, "k");
            spec.alphas = alphas;
            break;
        case Family::kRlc: {
            if (!j.contains("generator_matrix")) throw InvalidArgument("rlc code requires \"generator_matrix\"");
            MatrixFp g = matrix_from_json(p, s * n, j["generator_matrix"]);
            if (j.contains("k") && get_uint<std::size_t>(j, "k") != g.rows())
                throw DimensionMismatch("k differs from the generator matrix row count");
            spec = make_rlc(std::move(g), s, n);
            break;
        }
    }
    if (j.contains("seed")) spec.seed = get_uint<std::uint64_t>(j, "seed");
    if (j.contains("rng")) spec.rng = j["rng"].get<std::string>();
    spec.validate();
    return spec;
}

json to_json(const ListTable& t) {
    json sets = json::array();
    for (const auto& set : t.sets) {
        json js = json::array();
        for (const auto& sym : set) js.push_back(to_json(sym));
        sets.push_back(std::move(js));
    }
    return json{{"sets", std::move(sets)}};
}

ListTable list_table_from_json(const json& j) {
    if (!j.is_object() || !j.contains("sets") || !j["sets"].is_array())
        throw InvalidArgument("list table must be {\"sets\":[...]}");
    ListTable t;
    for (const auto& set : j["sets"]) {
        if (!set.is_array()) throw InvalidArgument("each table set must be an array of symbols");
        std::vector<Symbol> syms;
        for (const auto& sym : set) syms.push_back(residues(sym, "table symbol"));
        t.sets.push_back(std::move(syms));
    }
    return t;
}

json to_json(const BLInstance& inst) {
    json maps = json::array();
    for (const auto& m : inst.maps) maps.push_back(to_json(m));
    json scalars = json::array();
    for (const auto& c : inst.scalars) scalars.push_back(to_json(c));
    return json{{"p", inst.p}, {"v_dim", inst.v_dim}, {"maps", std::move(maps)}, {"scalars", std::move(scalars)}};
}

BLInstance bl_instance_from_json(const json& j) {
    if (!j.is_object()) throw InvalidArgument("BL instance must be a JSON object");
    BLInstance inst;
    inst.p = get_uint<std::uint32_t>(j, "p");
    inst.v_dim = get_uint<std::size_t>(j, "v_dim");
    if (!is_prime(inst.p)) throw InvalidArgument("p must be prime");
    if (!j.contains("maps") || !j["maps"].is_array()) throw InvalidArgument("missing array \"maps\"");
    if (!j.contains("scalars") || !j["scalars"].is_array()) throw InvalidArgument("missing array \"scalars\"");
    for (const auto& m : j["maps"]) inst.maps.push_back(matrix_from_json(inst.p, inst.v_dim, m));
    for (const auto& c : j["scalars"]) inst.scalars.push_back(rational_from_json(c));
    inst.validate();
    return inst;
}

json to_json(const DiscreteDistribution& x) {
    json pts = json::array();
    for (const auto& [key, prob] : x.support()) pts.push_back(json::array({to_json(x.vector_at(key)), prob}));
    return json{{"p", x.p()}, {"v_dim", x.v_dim()}, {"points", std::move(pts)}};
}

DiscreteDistribution distribution_from_json(const json& j) {
    if (!j.is_object()) throw InvalidArgument("distribution must be a JSON object");
    DiscreteDistribution x(get_uint<std::uint32_t>(j, "p"), get_uint<std::size_t>(j, "v_dim"));
    if (!j.contains("points") || !j["points"].is_array()) throw InvalidArgument("missing array \"points\"");
    for (const auto& pt : j["points"]) {
        if (!pt.is_array() || pt.size() != 2 || !pt[1].is_number())
            throw InvalidArgument("distribution points are [vector, probability] pairs");
        Vec v = residues(pt[0], "distribution vector");
        if (v.size() != x.v_dim()) throw DimensionMismatch("distribution vector has wrong length");
        x.add(v, pt[1].get<double>());
    }
    x.validate();
    return x;
}

json to_json(const DesignReport& r) {
    json j{{"d", r.d}, {"max_sum", r.max_sum}, {"witness", to_json(r.witness)}, {"witness_index", r.witness_index},
           {"subspaces_checked", r.subspaces_checked}};
    if (r.bound_gk) j["bound_gk"] = to_json(*r.bound_gk);
    if (r.holds_gk) j["holds_gk"] = *r.holds_gk;
    if (r.bound_improved) j["bound_improved"] = to_json(*r.bound_improved);
    if (r.holds_improved) j["holds_improved"] = *r.holds_improved;
    if (r.bound_slacked) j["bound_slacked"] = to_json(*r.bound_slacked);
    if (r.holds_slacked) j["holds_slacked"] = *r.holds_slacked;
    return j;
}

json to_json(const BoundReport& r) {
    json pre = json::array();
    for (const auto& c : r.preconditions) pre.push_back(json{{"met", c.met}, {"message", c.message}});
    json details = json::object();
    for (const auto& [key, v] : r.details) {
        std::visit(
            [&, k = key](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, Rational>) details[k] = to_json(x);
                else details[k] = x;
            },
            v);
    }
    return json{{"name", r.name}, {"value", value_json(r.value)}, {"preconditions", std::move(pre)},
                {"anchor", r.anchor}, {"details", std::move(details)}};
}

json to_json(const ZeroErrorListResult& r) {
    json w = json::array();
    for (const auto& m : r.witness) w.push_back(to_json(m));
    return json{{"L_max", r.L_max}, {"witness", std::move(w)}, {"exhaustive", r.exhaustive}, {"nodes", r.nodes}};
}

json to_json(const SearchOutcome& r) {
    json w = json::array();
    for (const auto& m : r.witness_messages) w.push_back(to_json(m));
    json per = json::array();
    for (const auto& e : r.per_coordinate_errors) per.push_back(to_json(e));
    json j{{"found", r.found},
           {"witness_messages", std::move(w)},
           {"per_coordinate_errors", std::move(per)},
           {"total_errors", r.total_errors},
           {"adversary", r.found ? to_json(r.adversary) : json(nullptr)},
           {"total_budget_used", r.total_budget_used},
           {"exhaustive", r.exhaustive},
           {"budget", r.budget},
           {"seed", r.seed ? json(*r.seed) : json(nullptr)}};
    if (!r.exhaustive) j["trials"] = r.trials;
    return j;
}

json to_json(const ZeroErrorConfirmation& r) {
    json j{{"applicable", r.applicable}, {"holding_L", r.holding_L}};
    if (!r.reason.empty()) j["reason"] = r.reason;
    j["guaranteed_L"] = r.guaranteed_L ? json(*r.guaranteed_L) : json(nullptr);
    j["largest_L"] = r.largest_L ? json(*r.largest_L) : json(nullptr);
    j["design_hypothesis"] = r.design_hypothesis ? json(*r.design_hypothesis) : json(nullptr);
    if (r.applicable) {
        j["L_max"] = r.search.L_max;
        j["search"] = to_json(r.search);
        j["confirmed"] = r.confirmed;
        j["margin"] = r.margin;
    }
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json read_json_file(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw InvalidArgument(path + ": " + e.what());
    }
}

}  // namespace listrec
