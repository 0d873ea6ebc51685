#pragma once

#include <array>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "strata/classify.hpp"
#include "strata/morphism.hpp"

namespace strata {

template <class F>
struct PointP2 {
    std::array<typename F::Elem, 3> x;

    bool operator==(const PointP2&) const = default;
};

/// Scales so the last nonzero coordinate is 1; rejects the zero triple.
template <class F>
PointP2<F> normalize_point(const F& k, std::array<typename F::Elem, 3> c) {
    int last = -1;
    for (int i = 0; i < 3; ++i)
        if (!k.is_zero(c[i])) last = i;
    if (last < 0) throw std::invalid_argument("zero coordinate triple is not a point");
    auto s = k.inv(c[last]);
    for (auto& v : c) v = k.mul(s, v);
    return {c};
}

template <class F>
typename F::Elem eval_at(const F& k, const HomPoly<F>& f, const PointP2<F>& p) {
    return poly_eval(k, f, p.x[0], p.x[1], p.x[2]);
}

/// Row of all degree-d monomial values at a point.
template <class F>
std::vector<typename F::Elem> monomial_row(const F& k, int d, const PointP2<F>& p) {
    std::vector<typename F::Elem> row(mono_count(d));
    for (int i = 0; i < mono_count(d); ++i) {
        auto [ax, ay, az] = mono_exponents(d, i);
        auto v = k.one();
        for (int t = 0; t < ax; ++t) v = k.mul(v, p.x[0]);
        for (int t = 0; t < ay; ++t) v = k.mul(v, p.x[1]);
        for (int t = 0; t < az; ++t) v = k.mul(v, p.x[2]);
        row[i] = v;
    }
    return row;
}

/// Basis of forms of degree d vanishing at all given points.
template <class F>
std::vector<HomPoly<F>> forms_through(const F& k, int d, const std::vector<PointP2<F>>& pts) {
    std::vector<std::vector<typename F::Elem>> rows;
    for (const auto& p : pts) rows.push_back(monomial_row(k, d, p));
    auto ker = kernel_basis(k, matrix_from_rows(k, rows, mono_count(d)));
    std::vector<HomPoly<F>> out;
    for (auto& v : ker) {
        HomPoly<F> f(d);
        f.coeffs = std::move(v);
        out.push_back(std::move(f));
    }
    return out;
}

/// The unique conic through five points; throws when the five points fail
/// to determine one (fewer than five distinct points, or four collinear).
template <class F>
HomPoly<F> conic_through(const F& k, const std::vector<PointP2<F>>& pts) {
    if (pts.size() != 5) throw std::invalid_argument("conic_through expects five points");
    auto basis = forms_through(k, 2, pts);
    if (basis.size() != 1)
        throw std::invalid_argument("the five points do not determine a unique conic");
    return basis[0];
}

template <class F>
HomPoly<F> line_through(const F& k, const PointP2<F>& a, const PointP2<F>& b) {
    auto basis = forms_through(k, 1, {a, b});
    if (basis.size() != 1) throw std::invalid_argument("line through coincident points");
    return basis[0];
}

/// Resolution matrix of a sheaf in the closed stratum supported with a
/// distinguished point: [[f1, l1], [f2, l2]] with l1, l2 spanning the
/// forms vanishing at x. The determinant f1 l2 - f2 l1 vanishes at x.
template <class F>
Morphism<F> construct_x6(const F& k, const PointP2<F>& x, const HomPoly<F>& f1,
                         const HomPoly<F>& f2) {
    auto lines = forms_through(k, 1, {x});
    if (lines.size() != 2) throw std::logic_error("point has a wrong linear system");
    const auto& shape = shape_of(Stratum::X6);
    auto phi = zero_morphism(k, shape.source, shape.target);
    phi.at(0, 0) = f1;
    phi.at(0, 1) = lines[0];
    phi.at(1, 0) = f2;
    phi.at(1, 1) = lines[1];
    if (!is_injective(k, phi))
        throw std::invalid_argument("quintics are dependent over the point's pencil");
    return phi;
}

/// Seeded variant: quintics resampled until the determinant is nonzero.
inline Morphism<PrimeField> construct_x6(const PrimeField& k, const PointP2<PrimeField>& x,
                                         std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        auto f1 = random_poly(k, 5, rng);
        auto f2 = random_poly(k, 5, rng);
        try {
            return construct_x6(k, x, f1, f2);
        } catch (const std::invalid_argument&) {
        }
    }
    throw std::runtime_error("construct_x6: no injective sample found");
}

namespace detail {

inline PointP2<PrimeField> random_point(const PrimeField& k, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> dist(0, k.modulus() - 1);
    for (;;) {
        std::array<PrimeField::Elem, 3> c{dist(rng), dist(rng), dist(rng)};
        if (c[0] || c[1] || c[2]) return normalize_point(k, c);
    }
}

/// Second intersection of the conic with a line through p (on the conic);
/// nullopt for tangent or degenerate sweeps.
inline std::optional<PointP2<PrimeField>> conic_second_point(const PrimeField& k,
                                                             const HomPoly<PrimeField>& f,
                                                             const PointP2<PrimeField>& p,
                                                             const PointP2<PrimeField>& dir) {
    auto fd = eval_at(k, f, dir);
    if (k.is_zero(fd)) return std::nullopt;
    PointP2<PrimeField> sum{{k.add(p.x[0], dir.x[0]), k.add(p.x[1], dir.x[1]),
                             k.add(p.x[2], dir.x[2])}};
    auto two_b = k.sub(eval_at(k, f, sum), fd); // f(p) = 0
    if (k.is_zero(two_b)) return std::nullopt;  // tangent direction
    auto t = k.neg(k.div(two_b, fd));
    std::array<PrimeField::Elem, 3> c;
    for (int i = 0; i < 3; ++i) c[i] = k.add(p.x[i], k.mul(t, dir.x[i]));
    return normalize_point(k, c);
}

/// Solves a*u + b*v = rhs for polynomials u, v of fitting degrees.
inline std::optional<std::pair<HomPoly<PrimeField>, HomPoly<PrimeField>>> solve_pair(
    const PrimeField& k, const HomPoly<PrimeField>& a, const HomPoly<PrimeField>& b,
    const HomPoly<PrimeField>& rhs) {
    int du = rhs.degree - a.degree;
    int dv = rhs.degree - b.degree;
    auto ma = multiplication_matrix(k, a, du);
    auto mb = multiplication_matrix(k, b, dv);
    Matrix<PrimeField> sys(mono_count(rhs.degree), mono_count(du) + mono_count(dv), k.zero());
    for (int i = 0; i < sys.rows(); ++i) {
        for (int j = 0; j < mono_count(du); ++j) sys.at(i, j) = ma.at(i, j);
        for (int j = 0; j < mono_count(dv); ++j) sys.at(i, mono_count(du) + j) = mb.at(i, j);
    }
    auto sol = solve(k, sys, rhs.coeffs);
    if (!sol) return std::nullopt;
    HomPoly<PrimeField> u(du), v(dv);
    std::copy(sol->begin(), sol->begin() + mono_count(du), u.coeffs.begin());
    std::copy(sol->begin() + mono_count(du), sol->end(), v.coeffs.begin());
    return {{std::move(u), std::move(v)}};
}

} // namespace detail

/// Resolution matrix whose determinant is a quintic vanishing at the five
/// given points, with the linear 2x2 block cutting out their common conic.
/// The five points must be in general position (unique smooth conic).
inline Morphism<PrimeField> construct_x4(const PrimeField& k,
                                         const std::vector<PointP2<PrimeField>>& pts,
                                         std::uint64_t seed) {
    auto f = conic_through(k, pts);
    std::mt19937_64 rng(seed);
    const auto& shape = shape_of(Stratum::X4);
    for (int attempt = 0; attempt < 256; ++attempt) {
        auto dir = detail::random_point(k, rng);
        auto p6 = detail::conic_second_point(k, f, pts[0], dir);
        if (!p6) continue;
        bool clash = false;
        for (const auto& p : pts) clash = clash || (*p6 == p);
        if (clash) continue;

        auto l_at_p6 = forms_through(k, 1, {*p6});
        if (l_at_p6.size() != 2) continue;
        const auto& l12 = l_at_p6[0];
        const auto& l22 = l_at_p6[1];

        // f = l11*l22 - l21*l12: solvable since f vanishes at p6
        auto top = detail::solve_pair(k, l22, poly_neg(k, l12), f);
        if (!top) continue;
        auto [l11, l21] = *top;

        // the three-line cubic through all six points
        HomPoly<PrimeField> g;
        try {
            g = poly_mul(k, poly_mul(k, line_through(k, pts[0], pts[1]),
                                     line_through(k, pts[2], pts[3])),
                         line_through(k, pts[4], *p6));
        } catch (const std::invalid_argument&) {
            continue;
        }
        auto quads = detail::solve_pair(k, l22, poly_neg(k, l12), g);
        if (!quads) continue;
        auto [q1, q2] = *quads;

        auto phi = zero_morphism(k, shape.source, shape.target);
        phi.at(0, 0) = q1;
        phi.at(0, 1) = l11;
        phi.at(0, 2) = l12;
        phi.at(1, 0) = q2;
        phi.at(1, 1) = l21;
        phi.at(1, 2) = l22;
        phi.at(2, 0) = random_poly(k, 4, rng);
        phi.at(2, 1) = random_poly(k, 3, rng);
        phi.at(2, 2) = random_poly(k, 3, rng);

        if (!is_injective(k, phi)) continue;
        if (!x4_condition(k, phi).satisfied()) continue;
        return phi;
    }
    throw std::runtime_error("construct_x4: no admissible configuration found");
}

// ---------------------------------------------------------------------------
// Rejection sampling per stratum
// ---------------------------------------------------------------------------

struct SampleBatch {
    std::vector<Morphism<PrimeField>> samples;
    long long attempts = 0;
    std::map<std::string, long long> rejections; // first failing predicate -> count
};

/// Draws `count` matrices classified into the requested stratum: uniform
/// coefficients on the template cells, with structurally forced zero
/// blocks, filtered through the classifier.
inline SampleBatch stratified_sample(const PrimeField& k, Stratum s, int count,
                                     std::uint64_t seed, long long budget = 100000) {
    SampleBatch batch;
    const auto& shape = shape_of(s);
    for (long long attempt = 0; static_cast<int>(batch.samples.size()) < count; ++attempt) {
        if (attempt >= budget)
            throw std::runtime_error("sampling budget exhausted for " +
                                     std::string(stratum_name(s)));
        batch.attempts = attempt + 1;
        auto phi = random_morphism(k, shape, split_seed(seed, static_cast<std::uint64_t>(attempt)));
        if (s == Stratum::X1)
            for (int i = 0; i < 3; ++i) phi.at(i, 4) = poly_zero(k, 0);
        if (s == Stratum::X3) {
            phi.at(0, 2) = poly_zero(k, 0);
            phi.at(0, 3) = poly_zero(k, 0);
        }
        auto rep = classify(k, phi);
        if (rep.outcome == stratum_name(s)) {
            batch.samples.push_back(std::move(phi));
            continue;
        }
        std::string why = rep.outcome;
        for (const auto& p : rep.predicates)
            if (!p.value) { why = p.name; break; }
        ++batch.rejections[why];
    }
    return batch;
}

} // namespace strata
