#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "strata/geometry.hpp"

using namespace strata;

namespace {

template <class F>
PointP2<F> pt(const F& k, long long a, long long b, long long c) {
    return normalize_point(k, {k.from_int(a), k.from_int(b), k.from_int(c)});
}

} // namespace

TEST_CASE("point normalization") {
    PrimeField k(101);
    auto p = normalize_point(k, {k.from_int(2), k.from_int(4), k.from_int(6)});
    CHECK(p.x[2] == 1);
    CHECK(p.x[0] == k.div(2, 6));
    auto q = normalize_point(k, {k.from_int(3), k.from_int(5), k.zero()});
    CHECK(q.x[1] == 1);
    CHECK_THROWS_AS(normalize_point(k, {0, 0, 0}), std::invalid_argument);
    CHECK(pt(k, 2, 4, 6) == pt(k, 1, 2, 3)); // scale invariance
}

TEST_CASE("conic through five rational points") {
    RationalField q;
    std::vector<PointP2<RationalField>> pts{pt(q, 1, 0, 0), pt(q, 0, 1, 0), pt(q, 0, 0, 1),
                                            pt(q, 1, 1, 1), pt(q, 1, 2, 3)};
    auto f = conic_through(q, pts);
    CHECK(f.degree == 2);
    CHECK(!poly_is_zero(q, f));
    for (const auto& p : pts) CHECK(q.is_zero(eval_at(q, f, p)));
}

TEST_CASE("five collinear points have no unique conic") {
    PrimeField k(101);
    std::vector<PointP2<PrimeField>> pts;
    for (int t = 0; t < 5; ++t) pts.push_back(pt(k, t, 1, 0)); // all on the line Z = 0
    CHECK_THROWS_AS(conic_through(k, pts), std::invalid_argument);
}

TEST_CASE("line through two points") {
    PrimeField k(101);
    auto l = line_through(k, pt(k, 1, 0, 0), pt(k, 0, 1, 0));
    CHECK(l.degree == 1);
    CHECK(k.is_zero(poly_eval(k, l, 1, 0, 0)));
    CHECK(k.is_zero(poly_eval(k, l, 0, 1, 0)));
    CHECK(!k.is_zero(poly_eval(k, l, 0, 0, 1)));
    CHECK_THROWS_AS(line_through(k, pt(k, 1, 1, 1), pt(k, 2, 2, 2)), std::invalid_argument);
}

TEST_CASE("construct_x6 explicit example") {
    PrimeField k(101);
    auto x = pt(k, 0, 0, 1);
    auto phi = construct_x6(k, x, parse_poly(k, "X^5"), parse_poly(k, "Y^5"));
    auto d = determinant(k, phi);
    CHECK(k.is_zero(eval_at(k, d, x)));
    CHECK(classify(k, phi).outcome == "X6");
    // degenerate input: zero quintics give det = 0
    CHECK_THROWS_AS(construct_x6(k, x, poly_zero(k, 5), poly_zero(k, 5)), std::invalid_argument);
}

TEST_CASE("construct_x6 point recovery from the linear column") {
    PrimeField k(101);
    for (int trial = 0; trial < 10; ++trial) {
        std::mt19937_64 rng(split_seed(91, trial));
        auto x = detail::random_point(k, rng);
        auto phi = construct_x6(k, x, split_seed(92, trial));
        // the 2x3 coefficient matrix of the linear column has kernel {x}
        Matrix<PrimeField> m(2, 3, k.zero());
        for (int i = 0; i < 2; ++i) {
            m.at(i, 0) = phi.at(i, 1).coeffs[mono_index(1, 1, 0)];
            m.at(i, 1) = phi.at(i, 1).coeffs[mono_index(1, 0, 1)];
            m.at(i, 2) = phi.at(i, 1).coeffs[mono_index(1, 0, 0)];
        }
        auto ker = kernel_basis(k, m);
        REQUIRE(ker.size() == 1);
        CHECK(normalize_point(k, {ker[0][0], ker[0][1], ker[0][2]}) == x);
        // determinant stays proportional under target automorphisms
        auto g = identity_equivalence(k, phi);
        g.target_auto = random_equivalence(k, phi, split_seed(93, trial)).target_auto;
        auto moved = apply_equivalence(k, g, phi);
        CHECK(k.is_zero(eval_at(k, determinant(k, moved), x)));
    }
}

TEST_CASE("construct_x4 incidence and classification") {
    PrimeField k(101);
    std::vector<PointP2<PrimeField>> pts{pt(k, 1, 0, 0), pt(k, 0, 1, 0), pt(k, 0, 0, 1),
                                         pt(k, 1, 1, 1), pt(k, 1, 2, 3)};
    auto f = conic_through(k, pts);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto phi = construct_x4(k, pts, seed);
        auto d = determinant(k, phi);
        for (const auto& p : pts) CHECK(k.is_zero(eval_at(k, d, p)));
        CHECK(classify(k, phi).outcome == "X4");
        // the linear block's 2x2 determinant is the conic up to scale
        auto block = poly_sub(k, poly_mul(k, phi.at(0, 1), phi.at(1, 2)),
                              poly_mul(k, phi.at(0, 2), phi.at(1, 1)));
        int i0 = 0;
        while (k.is_zero(f.coeffs[i0])) ++i0;
        auto c = k.div(block.coeffs[i0], f.coeffs[i0]);
        CHECK(!k.is_zero(c));
        CHECK(block == poly_scale(k, c, f));
    }
    std::vector<PointP2<PrimeField>> bad{pt(k, 1, 0, 0), pt(k, 2, 1, 0), pt(k, 3, 1, 0),
                                         pt(k, 1, 1, 1), pt(k, 1, 2, 3)};
    CHECK_THROWS(construct_x4(k, bad, 1)); // three collinear points
}

TEST_CASE("stratified_sample determinism and forced zeros") {
    PrimeField k(101);
    auto a = stratified_sample(k, Stratum::X1, 3, 55);
    auto b = stratified_sample(k, Stratum::X1, 3, 55);
    CHECK(a.samples == b.samples);
    CHECK(a.attempts == b.attempts);
    for (const auto& phi : a.samples)
        for (int i = 0; i < 3; ++i) CHECK(poly_is_zero(k, phi.at(i, 4)));
    auto c = stratified_sample(k, Stratum::X3, 2, 56);
    for (const auto& phi : c.samples) {
        CHECK(poly_is_zero(k, phi.at(0, 2)));
        CHECK(poly_is_zero(k, phi.at(0, 3)));
    }
}

TEST_CASE("sample profiles match the table") {
    PrimeField k(101);
    for (int s = 0; s < 7; ++s) {
        auto label = static_cast<Stratum>(s);
        auto batch = stratified_sample(k, label, 2, split_seed(61, s));
        for (const auto& phi : batch.samples) {
            CHECK(hilbert_polynomial(k, phi) == std::pair<long long, long long>{6, 2});
            CHECK(cohomology_profile(k, phi) == expected_profile(label));
        }
    }
}
