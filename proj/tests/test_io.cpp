#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "strata/io.hpp"

using namespace strata;

TEST_CASE("field spec round trip") {
    CHECK(field_from_json(field_to_json(FieldSpec::make_prime(103))) ==
          FieldSpec::make_prime(103));
    CHECK(field_from_json(json("rational")).kind == FieldSpec::Kind::Rational);
    CHECK_THROWS_AS(field_from_json(json("octonion")), std::invalid_argument);
    CHECK_THROWS_AS(field_from_json(json{{"prime", 4}}), std::invalid_argument);
}

TEST_CASE("morphism files round trip bit-exactly") {
    PrimeField k(101);
    for (int s = 0; s < 7; ++s) {
        auto phi = random_morphism(k, shape_of(static_cast<Stratum>(s)), split_seed(19, s));
        MorphismFile f;
        f.field = FieldSpec::make_prime(101);
        f.prime = phi;
        auto j = morphism_to_json(f);
        auto back = morphism_from_json(j);
        CHECK(back.field == f.field);
        REQUIRE(back.prime.has_value());
        CHECK(*back.prime == phi);
        CHECK(morphism_to_json(back) == j);
    }
}

TEST_CASE("rational morphism parsing") {
    auto j = json::parse(R"({"field":"rational","source":[-4,0],"target":[1,1],
        "entries":[["X^5 - 1/3*Y^5","X"],["Y^5","Y - Z"]]})");
    auto f = morphism_from_json(j);
    REQUIRE(f.rational.has_value());
    CHECK(f.rational->at(0, 0).coeffs[mono_index(5, 0, 5)] == Rational(-1, 3));
    auto rep = classify_file(f);
    CHECK(rep.outcome == "X6");
    CHECK(rep.notes.size() == 1);
}

TEST_CASE("zero cells keep their required degree through IO") {
    PrimeField k(101);
    auto phi = zero_morphism(k, shape_of(Stratum::X1).source, shape_of(Stratum::X1).target);
    phi.at(4, 4) = parse_poly(k, "X");
    MorphismFile f;
    f.field = FieldSpec::make_prime(101);
    f.prime = phi;
    auto back = morphism_from_json(morphism_to_json(f));
    CHECK(*back.prime == phi);
    CHECK(validate_morphism(k, *back.prime).empty());
}

TEST_CASE("report serialization carries version and certificates") {
    PrimeField k(101);
    auto phi = random_morphism(k, shape_of(Stratum::X0), 12);
    phi.at(0, 1) = poly_zero(k, 1);
    phi.at(0, 2) = poly_zero(k, 1);
    phi.at(0, 3) = poly_zero(k, 1);
    auto rep = classify(k, phi);
    auto j = report_to_json(rep, FieldSpec::make_prime(101), 12);
    CHECK(j["version"] == kVersion);
    CHECK(j["seed"] == 12);
    CHECK(j["label"] == rep.outcome);
    if (rep.outcome == "rejected" && !rep.certificates.empty())
        CHECK(j["certificates"][0].contains("name"));
}

TEST_CASE("points file parsing") {
    PrimeField k(101);
    auto pts = points_from_json(k, json::parse(R"([["1","0","0"],["-1","2","1"]])"));
    REQUIRE(pts.size() == 2);
    CHECK(pts[1].x[0] == k.from_int(-1));
    CHECK_THROWS_AS(points_from_json(k, json::parse(R"([["1","0"]])")), std::invalid_argument);
    CHECK_THROWS_AS(points_from_json(k, json::parse(R"([["X","0","1"]])")),
                    std::invalid_argument);
}

TEST_CASE("cli classify and exit codes") {
    auto run = [](std::vector<const char*> args) {
        args.insert(args.begin(), "strata-lab");
        std::ostringstream out, err;
        int code = run_cli(static_cast<int>(args.size()), args.data(), out, err);
        return std::tuple<int, std::string, std::string>{code, out.str(), err.str()};
    };

    // valid file
    {
        std::ofstream f("/tmp/strata_io_x6.json");
        f << R"({"field":{"prime":101},"source":[-4,0],"target":[1,1],)"
          << R"("entries":[["X^5","X"],["Y^5","Y"]]})";
    }
    auto [c0, o0, e0] = run({"classify", "/tmp/strata_io_x6.json"});
    CHECK(c0 == 0);
    CHECK(json::parse(o0)["label"] == "X6");

    // degree violation -> exit 2 with cell coordinates
    {
        std::ofstream f("/tmp/strata_io_bad.json");
        f << R"({"field":{"prime":101},"source":[-4,0],"target":[1,1],)"
          << R"("entries":[["X^5","X^2"],["Y^5","Y"]]})";
    }
    auto [c1, o1, e1] = run({"classify", "/tmp/strata_io_bad.json"});
    CHECK(c1 == 2);
    CHECK(e1.find("(0,1)") != std::string::npos);

    // missing file -> exit 2
    auto [c2, o2, e2] = run({"classify", "/tmp/strata_io_missing.json"});
    CHECK(c2 == 2);

    // dims always succeeds
    auto [c3, o3, e3] = run({"dims"});
    CHECK(c3 == 0);
    CHECK(o3.find("| X6 | 28 | 9 |") != std::string::npos);

    // identical configs reproduce identical bytes
    auto [c4, o4, e4] = run({"sample", "X6", "--samples", "2", "--seed", "8"});
    auto [c5, o5, e5] = run({"sample", "X6", "--samples", "2", "--seed", "8"});
    CHECK(c4 == 0);
    CHECK(o4 == o5);
}
