#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "strata/classify.hpp"
#include "strata/morphism.hpp"

using namespace strata;

TEST_CASE("the seven templates") {
    CHECK(stratum_shapes().size() == 7);
    for (const auto& s : stratum_shapes()) {
        CHECK(s.source.rank() == s.target.rank());
        CHECK(s.target.twist_sum() - s.source.twist_sum() == 6);
    }
    CHECK(shapes_pairwise_distinct());
    CHECK(stratum_from_name("X3") == Stratum::X3);
    CHECK(!stratum_from_name("X7").has_value());
}

TEST_CASE("degree validation") {
    PrimeField k(101);
    auto phi = zero_morphism(k, shape_of(Stratum::X6).source, shape_of(Stratum::X6).target);
    CHECK(validate_morphism(k, phi).empty()); // all-zero is degree-legal
    phi.at(0, 1) = parse_poly(k, "X^2");
    auto v = validate_morphism(k, phi);
    REQUIRE(v.size() == 1);
    CHECK(v[0].row == 0);
    CHECK(v[0].col == 1);
    CHECK(v[0].required_degree == 1);
    CHECK(v[0].actual_degree == 2);
}

TEST_CASE("determinant on the X6 example") {
    PrimeField k(101);
    auto phi = zero_morphism(k, shape_of(Stratum::X6).source, shape_of(Stratum::X6).target);
    phi.at(0, 0) = parse_poly(k, "X^5");
    phi.at(0, 1) = parse_poly(k, "X");
    phi.at(1, 0) = parse_poly(k, "Y^5");
    phi.at(1, 1) = parse_poly(k, "Y");
    auto d = determinant(k, phi);
    CHECK(d == parse_poly(k, "X^5*Y - X*Y^5"));
    CHECK(is_injective(k, phi));
    CHECK(hilbert_polynomial(k, phi) == std::pair<long long, long long>{6, 2});
}

TEST_CASE("determinant multiplies under equivalence up to scalar") {
    PrimeField k(101);
    for (int s = 0; s < 7; ++s) {
        auto shape = shape_of(static_cast<Stratum>(s));
        auto phi = random_morphism(k, shape, split_seed(99, s));
        if (!is_injective(k, phi)) continue;
        auto g = random_equivalence(k, phi, split_seed(100, s));
        auto psi = apply_equivalence(k, g, phi);
        auto d1 = determinant(k, phi);
        auto d2 = determinant(k, psi);
        auto c = k.mul(scalar_det(k, constant_block(k, g.target_auto)),
                       scalar_det(k, constant_block(k, g.source_auto)));
        CHECK(d2 == poly_scale(k, c, d1));
    }
}

TEST_CASE("dual resolution") {
    PrimeField k(101);
    for (int s = 0; s < 7; ++s) {
        auto shape = shape_of(static_cast<Stratum>(s));
        auto phi = random_morphism(k, shape, split_seed(7, s));
        auto d = dual_resolution(k, phi);
        for (size_t i = 0; i < d.source.twists.size(); ++i)
            CHECK(d.source.twists[i] == -shape.target.twists[i] - 2);
        auto dd = dual_resolution(k, d);
        CHECK(dd == phi);
        if (is_injective(k, phi))
            CHECK(hilbert_polynomial(k, d) == std::pair<long long, long long>{6, 4});
    }
}

TEST_CASE("random_morphism is deterministic in the seed") {
    PrimeField k(101);
    auto a = random_morphism(k, shape_of(Stratum::X2), 42);
    auto b = random_morphism(k, shape_of(Stratum::X2), 42);
    auto c = random_morphism(k, shape_of(Stratum::X2), 43);
    CHECK(a == b);
    CHECK(a != c);
}

TEST_CASE("equivalence application checks invertibility") {
    PrimeField k(101);
    auto phi = random_morphism(k, shape_of(Stratum::X0), 5);
    auto g = identity_equivalence(k, phi);
    CHECK(apply_equivalence(k, g, phi) == phi);
    g.source_auto.at(0, 0) = poly_zero(k, 0);
    CHECK_THROWS_AS(apply_equivalence(k, g, phi), std::invalid_argument);
}

TEST_CASE("canonical_shape permutes into template order") {
    PrimeField k(101);
    // X2 template with shuffled source and target order
    Morphism<PrimeField> phi;
    phi.source.twists = {-1, -3, -2};
    phi.target.twists = {0, 0, 0};
    phi.entries.assign(9, poly_zero(k, 0));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int d = phi.required_degree(i, j);
            phi.at(i, j) = poly_monomial(k, d, 0, 0, k.from_int(10 * i + j + 1));
        }
    auto canon = canonical_shape(k, phi);
    REQUIRE(canon.has_value());
    CHECK(canon->first == Stratum::X2);
    const auto& c = canon->second;
    CHECK(c.source.twists == std::vector<int>{-3, -2, -1});
    // column that held twist -3 moves to position 0
    CHECK(c.at(0, 0) == phi.at(0, 1));
    CHECK(c.at(0, 2) == phi.at(0, 0));
}
