#include <doctest.h>

#include "listrec/error.hpp"
#include "listrec/io.hpp"

using namespace listrec;

TEST_CASE("code spec json") {
    const auto j = json::parse(R"({"family":"frs","p":13,"s":3,"n":4,"k":4,"gamma":2,"alphas":[1,8,12,5]})");
    const auto spec = code_spec_from_json(j);
    CHECK(spec == make_frs(13, 3, 4, 4, 2));
    CHECK(to_json(spec) == j);
    // omitted alphas and gamma use the defaults
    CHECK(code_spec_from_json(json::parse(R"({"family":"frs","p":13,"s":3,"n":4,"k":4})")) == spec);
    CHECK(code_spec_from_json(json::parse(R"({"family":"mult","p":7,"s":2,"n":3,"k":3})")).alphas ==
          std::vector<Residue>{0, 1, 2});

    for (const auto& s : {make_frs(7, 2, 3, 2, 3), make_mult(7, 2, 3, 4, {6, 1, 3}), sample_code(Family::kRlc, 5, 2, 3, 2, 42),
                          sample_code(Family::kRrs, 11, 1, 6, 3, 9)}) {
        const auto round = code_spec_from_json(json::parse(to_json(s).dump()));
        CHECK(round == s);
    }
    const auto rlc = to_json(sample_code(Family::kRlc, 5, 2, 3, 2, 42));
    CHECK(rlc["generator_matrix"].size() == 2);
    CHECK(rlc["generator_matrix"][0].size() == 6);
    CHECK(rlc["rng"] == "mt19937_64-v1");
    CHECK(rlc["seed"] == 42);

    CHECK_THROWS_AS(code_spec_from_json(json::parse(R"({"family":"ag","p":7,"s":1,"n":3,"k":2})")), InvalidArgument);
    CHECK_THROWS_AS(code_spec_from_json(json::parse(R"({"family":"frs","p":8,"s":1,"n":3,"k":2})")), InvalidArgument);
    CHECK_THROWS_AS(code_spec_from_json(json::parse(R"({"family":"frs","p":7,"s":1,"n":3})")), InvalidArgument);
    CHECK_THROWS_AS(code_spec_from_json(json::parse(R"({"family":"rlc","p":7,"s":1,"n":2,"k":1,
        "generator_matrix":[[1,2,3]]})")), DimensionMismatch);
    CHECK_THROWS_AS(code_spec_from_json(json::parse(R"([1,2])")), InvalidArgument);
}

TEST_CASE("list table json") {
    const auto j = json::parse(R"({"sets":[[[1,2],[3,4]],[[0,0]],[]]})");
    const auto t = list_table_from_json(j);
    REQUIRE(t.sets.size() == 3);
    CHECK(t.sets[0][1] == Symbol{3, 4});
    CHECK(t.sets[2].empty());
    CHECK(to_json(t) == j);
    CHECK(list_table_from_json(json::parse(to_json(t).dump())) == t);
    CHECK_THROWS_AS(list_table_from_json(json::parse(R"({"sets":[[[-1]]]})")), InvalidArgument);
}

TEST_CASE("rational json") {
    CHECK(to_json(Rational(1, 3)) == json::parse(R"({"num":1,"den":3})"));
    CHECK(rational_from_json(json::parse(R"({"num":2,"den":6})")) == Rational(1, 3));
    CHECK(rational_from_json(json(5)) == Rational(5));
    CHECK(rational_from_json(json("0.25")) == Rational(1, 4));
    CHECK(rational_from_json(json("-3/9")) == Rational(-1, 3));
    CHECK_THROWS_AS(rational_from_json(json(0.5)), InvalidArgument);
}

TEST_CASE("bl instance and distribution json") {
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        const auto inst = random_bl_instance(rng, 3, 3, 4);
        CHECK(bl_instance_from_json(json::parse(to_json(inst).dump())) == inst);
        const auto x = random_distribution(rng, 3, 3, 6);
        CHECK(distribution_from_json(json::parse(to_json(x).dump())) == x);
    }
    const auto j = json::parse(R"({"p":2,"v_dim":2,"maps":[[[1,0]],[]],"scalars":[{"num":1,"den":2},"3"]})");
    const auto inst = bl_instance_from_json(j);
    CHECK(inst.maps[1].rows() == 0);
    CHECK(inst.maps[1].cols() == 2);
    CHECK(inst.scalars[0] == Rational(1, 2));
    CHECK(inst.scalars[1] == Rational(3));
    CHECK_THROWS_AS(bl_instance_from_json(json::parse(R"({"p":2,"v_dim":2,"maps":[[[1,0,1]]],"scalars":[1]})")),
                    DimensionMismatch);
    CHECK_THROWS_AS(distribution_from_json(json::parse(R"({"p":2,"v_dim":1,"points":[[[0],0.3]]})")), InvalidArgument);
}

TEST_CASE("report json") {
    const auto spec = make_frs(7, 2, 3, 2, 3);
    const auto kernels = coordinate_kernels(spec);
    const auto rep = to_json(verify_design(kernels, 1, spec.s));
    CHECK(rep["bound_gk"] == json::parse(R"({"num":1,"den":2})"));
    CHECK(rep.contains("witness"));
    CHECK(rep["max_sum"] == 0);

    BoundParams q;
    q.k = 2;
    q.n = 3;
    q.s = 2;
    q.L = 1;
    CHECK(to_json(evaluate_bound("singleton", q))["value"] == json::parse(R"({"num":5,"den":12})"));

    AverageRadiusOptions opts;
    const auto out = to_json(average_radius_bad_list_search(spec, 1, 1, Rational(1, 2), AdversaryMode::kListDecoding, opts));
    CHECK(out.contains("seed"));
    CHECK(out.contains("budget"));
    CHECK(out["exhaustive"] == true);
    CHECK(out["found"] == true);
    CHECK(list_table_from_json(out["adversary"]).sets.size() == 3);
}
