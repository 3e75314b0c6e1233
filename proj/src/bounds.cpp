#include "listrec/bounds.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdio>
#include <limits>

#include "listrec/error.hpp"

namespace listrec {

namespace {

using BigInt = boost::multiprecision::cpp_int;

void require(bool ok, const std::string& msg) {
    if (!ok) throw InvalidArgument(msg);
}

BigInt big_pow(std::int64_t base, std::int64_t exp) {
    BigInt b = base;
    return boost::multiprecision::pow(b, static_cast<unsigned>(exp));
}

}  // namespace

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::kHolds: return "holds";
        case Verdict::kFails: return "fails";
        case Verdict::kBoundary: return "boundary";
    }
    return "?";
}

Verdict strict_less(double lhs, double rhs, double guard) {
    const double diff = rhs - lhs;
    if (diff > guard) return Verdict::kHolds;
    if (diff < -guard) return Verdict::kFails;
    return Verdict::kBoundary;
}

bool BoundReport::ok() const {
    for (const auto& pc : preconditions)
        if (!pc.met) return false;
    return true;
}

double lambert_w0(double z) {
    if (std::isnan(z) || z < 0.0) throw InvalidArgument("lambert_w0 requires z >= 0");
    if (std::isinf(z)) throw InvalidArgument("lambert_w0 requires finite z");
    if (z == 0.0) return 0.0;
    double w = std::log1p(z);
    for (int iter = 0; iter < 100; ++iter) {
        const double ew = std::exp(w);
        const double f = w * ew - z;
        const double wp1 = w + 1.0;
        const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w))) break;
    }
    const double residual = std::abs(w * std::exp(w) - z);
    if (!(residual <= 1e-10 * (1.0 + z))) throw NonConvergence("lambert_w0 did not converge", residual);
    return w;
}

ZeroErrorCheck zero_error_ok(std::int64_t k, std::int64_t n, std::int64_t s, std::int64_t ell, std::int64_t L) {
    require(ell >= 2 && L >= ell, "zero-error condition requires L >= l >= 2");
    require(s - L + 1 >= 1, "zero-error condition requires s - L + 1 >= 1");
    require(k >= 1 && n >= 1, "zero-error condition requires k, n >= 1");
    ZeroErrorCheck out;
    out.lhs = Rational(k - 1, n * (s - L + 1));
    out.rhs = 1.0 - std::log(static_cast<double>(ell)) / std::log(static_cast<double>(L + 1));
    // Exact right side when L + 1 = l^a: 1 - 1/a.
    std::int64_t power = ell, a = 1;
    while (power < L + 1 && power <= std::numeric_limits<std::int64_t>::max() / ell) {
        power *= ell;
        ++a;
    }
    if (power == L + 1) {
        out.rhs_exact = Rational(1) - Rational(1, a);
        out.verdict = out.lhs < *out.rhs_exact ? Verdict::kHolds : Verdict::kFails;
    } else {
        out.verdict = strict_less(out.lhs.to_double(), out.rhs);
    }
    return out;
}

ZeroErrorListSize zero_error_list_size(const Rational& R, const Rational& eps, std::int64_t ell) {
    require(ell >= 1, "zero-error list size requires l >= 1");
    require(R > Rational(0) && eps > Rational(0), "R and eps must be positive");
    require(R + eps < Rational(1), "zero-error list size requires R + eps < 1");
    const Rational exponent = Rational(1) / (Rational(1) - R - eps);  // a / b
    const std::int64_t a = exponent.num(), b = exponent.den();
    const long double estimate = std::pow(static_cast<long double>(ell), exponent.to_long_double());
    require(estimate < 4e18L, "zero-error list size overflows 64 bits");
    require(a <= 4096, "exponent numerator too large for exact evaluation");
    // Largest L with L^b <= l^a.
    const BigInt target = big_pow(ell, a);
    auto L = static_cast<std::int64_t>(std::floor(estimate));
    while (L > 1 && big_pow(L, b) > target) --L;
    while (big_pow(L + 1, b) <= target) ++L;
    ZeroErrorListSize out;
    out.L = L;
    out.s_min = ((R / eps + Rational(1)) * Rational(L - 1)).ceil();
    return out;
}

RadiusThreshold radius_threshold(double R, double mu, std::int64_t ell, double L) {
    const double rp = R + mu;
    require(rp > 0.0 && rp < 1.0, "radius threshold requires R + mu in (0, 1)");
    require(ell >= 2, "radius threshold requires l >= 2");
    require(L + 1.0 >= static_cast<double>(ell), "radius threshold requires L + 1 >= l");
    RadiusThreshold out;
    const double lnL1 = std::log(L + 1.0);
    out.w_argument = rp * (L + 1.0) * lnL1 / static_cast<double>(ell);
    require(out.w_argument > 0.0, "Lambert W argument must be positive");
    out.rho_star = 1.0 - rp * lnL1 / lambert_w0(out.w_argument);
    out.cap = 1.0 - static_cast<double>(ell) / (L + 1.0);
    out.cap_applied = out.cap < out.rho_star;
    out.capped = out.cap_applied ? out.cap : out.rho_star;
    return out;
}

double radius_threshold_residual(double R, double mu, std::int64_t ell, double L, double rho) {
    const double t = 1.0 - rho;
    return (R + mu) * std::log(L + 1.0) - (t * std::log(t) + t * std::log((L + 1.0) / static_cast<double>(ell)));
}

std::string variant_name(ListVariant v) {
    switch (v) {
        case ListVariant::kBase: return "base";
        case ListVariant::kRlc: return "rlc";
        case ListVariant::kRrs: return "rrs";
    }
    return "?";
}

AsymptoticL asymptotic_L(std::int64_t ell, double R, double eps, ListVariant variant) {
    require(ell >= 2, "asymptotic list size requires l >= 2");
    require(R > 0.0 && R < 1.0 && eps > 0.0 && eps < 1.0, "asymptotic list size requires R, eps in (0, 1)");
    AsymptoticL out;
    const double ratio = R / eps;
    switch (variant) {
        case ListVariant::kBase: out.exponent = 3.0 + 2.0 * ratio; break;
        case ListVariant::kRlc: out.exponent = 5.0 + 4.0 * ratio; break;
        case ListVariant::kRrs: out.exponent = 9.0 + 8.0 * ratio; break;
    }
    out.base = static_cast<double>(ell) / (R + eps / 2.0);
    out.log10_value = out.exponent * std::log10(out.base);
    if (out.log10_value <= 300.0) {
        out.value = std::pow(out.base, out.exponent);
        if (*out.value < 9.0e18) out.ceiling = static_cast<std::int64_t>(std::ceil(*out.value));
    }
    const double needed = (2.0 + 2.0 * ratio) * std::log(out.base) / std::log(static_cast<double>(ell));
    out.m = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(needed - 1e-12)));
    return out;
}

std::string requirement_variant_name(RequirementVariant v) {
    switch (v) {
        case RequirementVariant::kFrs: return "frs";
        case RequirementVariant::kMult: return "mult";
        case RequirementVariant::kRlc: return "rlc";
        case RequirementVariant::kRrs: return "rrs";
        case RequirementVariant::kFrsAverageRadius: return "frs-avg";
        case RequirementVariant::kMultAverageRadius: return "mult-avg";
    }
    return "?";
}

RequirementVariant parse_requirement_variant(const std::string& name) {
    for (auto v : {RequirementVariant::kFrs, RequirementVariant::kMult, RequirementVariant::kRlc,
                   RequirementVariant::kRrs, RequirementVariant::kFrsAverageRadius,
                   RequirementVariant::kMultAverageRadius}) {
        if (requirement_variant_name(v) == name) return v;
    }
    throw InvalidArgument("unknown requirement variant '" + name + "'");
}

std::vector<Requirement> alphabet_and_folding_requirements(std::int64_t ell, const Rational& eps, std::int64_t L,
                                                           RequirementVariant variant, std::optional<Rational> R) {
    require(ell >= 1, "requirements need l >= 1");
    require(eps > Rational(0) && eps < Rational(1), "requirements need eps in (0, 1)");
    std::vector<Requirement> out;
    auto folding = [&](std::int64_t factor) {
        Requirement r;
        r.quantity = "s";
        r.expression = "s >= " + std::to_string(factor) + "*l/eps^2";
        r.exact = Rational(factor * ell) / (eps * eps);
        r.value = r.exact->to_double();
        r.log10_value = std::log10(*r.value);
        return r;
    };
    auto average_radius = [&]() {
        require(R.has_value(), "average-radius requirement needs the rate R");
        require(L >= 0, "average-radius requirement needs L >= 0");
        Requirement r;
        r.quantity = "s";
        r.expression = "s >= L*(3R/eps+1)";
        r.exact = Rational(L) * (Rational(3) * *R / eps + Rational(1));
        r.value = r.exact->to_double();
        r.log10_value = r.value > 0 ? std::optional<double>(std::log10(*r.value)) : std::nullopt;
        return r;
    };
    switch (variant) {
        case RequirementVariant::kFrs:
            out.push_back(folding(16));
            out.push_back({"q", "q > s*n", std::nullopt, std::nullopt, std::nullopt});
            break;
        case RequirementVariant::kMult:
            out.push_back(folding(32));
            out.push_back({"q", "p >= s*n (p prime)", std::nullopt, std::nullopt, std::nullopt});
            break;
        case RequirementVariant::kFrsAverageRadius:
            out.push_back(average_radius());
            out.push_back({"q", "q > s*n", std::nullopt, std::nullopt, std::nullopt});
            break;
        case RequirementVariant::kMultAverageRadius:
            out.push_back(average_radius());
            out.push_back({"q", "p >= s*n (p prime)", std::nullopt, std::nullopt, std::nullopt});
            break;
        case RequirementVariant::kRlc: {
            require(L >= 0, "alphabet requirement needs L >= 0");
            Requirement r;
            r.quantity = "q";
            const Rational exponent = Rational(6 * (L + 1)) / eps;
            r.expression = "q >= (3l)^(6(L+1)/eps) = " + std::to_string(3 * ell) + "^" + exponent.str();
            r.log10_value = exponent.to_double() * std::log10(static_cast<double>(3 * ell));
            if (*r.log10_value <= 300.0) r.value = std::pow(static_cast<double>(3 * ell), exponent.to_double());
            r.exact = exponent;  // the exponent of 3l
            out.push_back(std::move(r));
            break;
        }
        case RequirementVariant::kRrs:
            out.push_back({"q", "q >= c*n (c constant in n)", std::nullopt, std::nullopt, std::nullopt});
            break;
    }
    return out;
}

Rational singleton_radius(std::int64_t k, std::int64_t n, std::int64_t s, std::int64_t L) {
    require(L >= 1 && L <= s, "singleton radius requires 1 <= L <= s");
    require(k >= 1 && n >= 1, "singleton radius requires k, n >= 1");
    return Rational(L, L + 1) * (Rational(1) - Rational(k - 1, n * (s - L + 1)));
}

ConjectureRho conjecture_rho_star(std::int64_t ell, std::int64_t a, const Rational& R) {
    require(a >= 2, "conjecture requires integer a >= 2");
    require(ell >= 2, "conjecture requires l >= 2");
    require(R <= Rational(a - 1, a), "conjecture requires R <= (a-1)/a");
    std::int64_t power = 1;
    for (std::int64_t i = 0; i < a; ++i) {
        require(power <= std::numeric_limits<std::int64_t>::max() / ell, "l^a overflows 64 bits");
        power *= ell;
    }
    ConjectureRho out;
    out.L = power - 1;
    out.rho_star = Rational(power - ell, power) * (Rational(1) - Rational(a) * R / Rational(a - 1));
    return out;
}

double johnson_radius(double ell, double R) { return 1.0 - std::sqrt(ell * R); }

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<TableRow> table1_rows(std::int64_t ell, const Rational& R, const Rational& eps) {
    const double r = R.to_double(), e = eps.to_double();
    auto list = [&](ListVariant v) { return asymptotic_L(ell, r, e, v); };
    auto list_text = [](const AsymptoticL& a) {
        return a.value ? format_real(*a.value) : "10^" + format_real(a.log10_value);
    };
    std::vector<TableRow> rows;

    const auto rlc = list(ListVariant::kRlc);
    // q >= (3l)^{6(L+1)/eps} with L the (real) list size.
    const double l_plus_1_log10 = rlc.log10_value > 15 ? rlc.log10_value : std::log10(*rlc.value + 1.0);
    const double q_log10_log10 = std::log10(6.0 / e) + l_plus_1_log10 + std::log10(std::log10(3.0 * ell));
    std::string rlc_alpha = rlc.value ? "log10(q) >= " + format_real(6.0 * (*rlc.value + 1.0) / e * std::log10(3.0 * ell))
                                      : "log10(log10(q)) >= " + format_real(q_log10_log10);
    rows.push_back({"random-linear", ell, R, eps, rlc_alpha, rlc.log10_value, list_text(rlc), "No"});

    const auto rrs = list(ListVariant::kRrs);
    rows.push_back({"random-rs", ell, R, eps, "q >= c*n", rrs.log10_value, list_text(rrs), "No"});

    const auto base = list(ListVariant::kBase);
    const Rational frs_s = Rational(16 * ell) / (eps * eps);
    const Rational mult_s = Rational(32 * ell) / (eps * eps);
    rows.push_back({"folded-rs", ell, R, eps, "q > s*n, s >= " + frs_s.str(), base.log10_value, list_text(base), "Yes"});
    rows.push_back({"multiplicity", ell, R, eps, "p >= s*n, s >= " + mult_s.str(), base.log10_value, list_text(base),
                    "Yes"});
    return rows;
}

}  // namespace listrec

namespace listrec {

namespace {

template <class T>
T need(const std::optional<T>& v, const char* name) {
    if (!v) throw InvalidArgument(std::string("missing parameter --") + name);
    return *v;
}

ListVariant parse_list_variant(const std::string& name) {
    for (auto v : {ListVariant::kBase, ListVariant::kRlc, ListVariant::kRrs})
        if (variant_name(v) == name) return v;
    throw InvalidArgument("unknown list-size variant '" + name + "'");
}

void fill_zero_error(BoundReport& rep, const BoundParams& q) {
    const auto chk = zero_error_ok(need(q.k, "k"), need(q.n, "n"), need(q.s, "s"), need(q.ell, "ell"), need(q.L, "L"));
    rep.anchor = "(k-1)/(n(s-L+1)) < 1 - ln(l)/ln(L+1)";
    rep.value = chk.lhs;
    rep.details.emplace_back("lhs", chk.lhs);
    rep.details.emplace_back("rhs", chk.rhs);
    if (chk.rhs_exact) rep.details.emplace_back("rhs_exact", *chk.rhs_exact);
    rep.details.emplace_back("verdict", verdict_name(chk.verdict));
}

void fill_zero_error_size(BoundReport& rep, const BoundParams& q) {
    const auto out = zero_error_list_size(need(q.R, "R"), need(q.eps, "eps"), need(q.ell, "ell"));
    rep.anchor = "L = floor(l^(1/(1-R-eps))), s >= (R/eps+1)(L-1)";
    rep.value = Rational(out.L);
    rep.details.emplace_back("L", out.L);
    rep.details.emplace_back("s_min", out.s_min);
}

void fill_asymptotic(BoundReport& rep, const BoundParams& q) {
    const auto variant = parse_list_variant(q.variant.value_or("base"));
    const auto out = asymptotic_L(need(q.ell, "ell"), need(q.R, "R").to_double(), need(q.eps, "eps").to_double(), variant);
    rep.anchor = std::string("L = (l/(R+eps/2))^(") +
                 (variant == ListVariant::kBase ? "3+2R/eps" : variant == ListVariant::kRlc ? "5+4R/eps" : "9+8R/eps") +
                 ")";
    rep.details.emplace_back("variant", variant_name(variant));
    rep.details.emplace_back("exponent", out.exponent);
    rep.details.emplace_back("base", out.base);
    rep.details.emplace_back("log10_value", out.log10_value);
    if (out.ceiling) rep.details.emplace_back("ceiling", *out.ceiling);
    rep.details.emplace_back("m", out.m);
    if (out.value) {
        rep.value = *out.value;
    } else {
        rep.value = out.log10_value;
        rep.details.emplace_back("value_scale", std::string("log10"));
    }
}

void fill_threshold(BoundReport& rep, const BoundParams& q) {
    const double R = need(q.R, "R").to_double();
    const double mu = q.mu.value_or(Rational(0)).to_double();
    const auto ell = need(q.ell, "ell");
    const auto L = static_cast<double>(need(q.L, "L"));
    const auto out = radius_threshold(R, mu, ell, L);
    rep.anchor = "rho* = 1 - R' ln(L+1) / W(R'(L+1) ln(L+1)/l), R' = R + mu, capped at 1 - l/(L+1)";
    rep.value = out.capped;
    rep.details.emplace_back("rho_star", out.rho_star);
    rep.details.emplace_back("cap", out.cap);
    rep.details.emplace_back("cap_applied", std::string(out.cap_applied ? "true" : "false"));
    rep.details.emplace_back("w_argument", out.w_argument);
    rep.details.emplace_back("residual", radius_threshold_residual(R, mu, ell, L, out.rho_star));
}

void fill_singleton(BoundReport& rep, const BoundParams& q) {
    rep.anchor = "rho < L/(L+1) (1 - (k-1)/(n(s-L+1)))";
    rep.value = singleton_radius(need(q.k, "k"), need(q.n, "n"), need(q.s, "s"), need(q.L, "L"));
}

void fill_conjecture(BoundReport& rep, const BoundParams& q) {
    const auto out = conjecture_rho_star(need(q.ell, "ell"), need(q.a, "a"), need(q.R, "R"));
    rep.anchor = "rho* = (L+1-l)/(L+1) (1 - aR/(a-1)), L+1 = l^a";
    rep.value = out.rho_star;
    rep.details.emplace_back("L", out.L);
}

void fill_johnson(BoundReport& rep, const BoundParams& q) {
    rep.anchor = "1 - sqrt(l R)";
    rep.value = johnson_radius(static_cast<double>(need(q.ell, "ell")), need(q.R, "R").to_double());
}

void fill_requirements(BoundReport& rep, const BoundParams& q) {
    const auto variant = parse_requirement_variant(need(q.variant, "variant"));
    const auto reqs = alphabet_and_folding_requirements(need(q.ell, "ell"), need(q.eps, "eps"), q.L.value_or(-1),
                                                        variant, q.R);
    rep.anchor = "alphabet and folding requirements (" + requirement_variant_name(variant) + ")";
    bool have_value = false;
    for (std::size_t i = 0; i < reqs.size(); ++i) {
        const auto& r = reqs[i];
        const std::string key = r.quantity + (i == 0 ? "" : std::to_string(i));
        rep.details.emplace_back(key + "_expression", r.expression);
        if (r.exact) rep.details.emplace_back(key + (r.quantity == "q" ? "_exponent" : "_exact"), *r.exact);
        if (r.value) rep.details.emplace_back(key + "_value", *r.value);
        if (r.log10_value) rep.details.emplace_back(key + "_log10", *r.log10_value);
        if (!have_value && (r.value || r.log10_value)) {
            if (r.exact && r.quantity == "s") rep.value = *r.exact;
            else if (r.value) rep.value = *r.value;
            else {
                rep.value = *r.log10_value;
                rep.details.emplace_back("value_scale", std::string("log10"));
            }
            have_value = true;
        }
    }
    if (!have_value) rep.preconditions.push_back({false, "no numeric requirement for this variant"});
}

}  // namespace

BoundReport evaluate_bound(const std::string& mode, const BoundParams& params) {
    using Fill = void (*)(BoundReport&, const BoundParams&);
    static const std::vector<std::pair<std::string, Fill>> modes = {
        {"zero-error", fill_zero_error},   {"zero-error-size", fill_zero_error_size},
        {"asymptotic", fill_asymptotic},   {"threshold", fill_threshold},
        {"singleton", fill_singleton},     {"conjecture", fill_conjecture},
        {"johnson", fill_johnson},         {"requirements", fill_requirements},
    };
    auto it = std::find_if(modes.begin(), modes.end(), [&](const auto& m) { return m.first == mode; });
    if (it == modes.end()) throw InvalidArgument("unknown bound '" + mode + "'");
    BoundReport rep;
    rep.name = mode;
    try {
        it->second(rep, params);
        if (rep.preconditions.empty()) rep.preconditions.push_back({true, "all preconditions met"});
    } catch (const InvalidArgument& e) {
        rep.value = std::monostate{};
        rep.details.clear();
        rep.preconditions.push_back({false, e.what()});
    }
    if (!rep.ok()) rep.value = std::monostate{};
    return rep;
}

}  // namespace listrec
