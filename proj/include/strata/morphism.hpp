#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "strata/polynomial.hpp"

namespace strata {

/// A formal direct sum of line-bundle twists O(a_1) + ... + O(a_r),
/// order preserved as given.
struct TwistedSum {
    std::vector<int> twists;

    int rank() const { return static_cast<int>(twists.size()); }
    int twist_sum() const { return std::accumulate(twists.begin(), twists.end(), 0); }
    bool operator==(const TwistedSum&) const = default;
};

enum class Stratum { X0, X1, X2, X3, X4, X5, X6 };

inline const char* stratum_name(Stratum s) {
    static const char* names[] = {"X0", "X1", "X2", "X3", "X4", "X5", "X6"};
    return names[static_cast<int>(s)];
}

inline std::optional<Stratum> stratum_from_name(std::string_view name) {
    for (int i = 0; i < 7; ++i)
        if (name == stratum_name(static_cast<Stratum>(i))) return static_cast<Stratum>(i);
    return std::nullopt;
}

/// Resolution template of one stratum: twists of the source and target sums.
struct StratumShape {
    Stratum label;
    TwistedSum source;
    TwistedSum target;
};

/// The seven resolution templates. All are square with twist gap 6.
inline const std::array<StratumShape, 7>& stratum_shapes() {
    static const std::array<StratumShape, 7> shapes = {{
        {Stratum::X0, {{-2, -2, -2, -2}}, {{-1, -1, 0, 0}}},
        {Stratum::X1, {{-2, -2, -2, -2, -1}}, {{-1, -1, -1, 0, 0}}},
        {Stratum::X2, {{-3, -2, -1}}, {{0, 0, 0}}},
        {Stratum::X3, {{-3, -2, -1, -1}}, {{-1, 0, 0, 0}}},
        {Stratum::X4, {{-3, -2, -2}}, {{-1, -1, 1}}},
        {Stratum::X5, {{-3, -3, -1}}, {{-2, 0, 1}}},
        {Stratum::X6, {{-4, 0}}, {{1, 1}}},
    }};
    return shapes;
}

inline const StratumShape& shape_of(Stratum s) { return stratum_shapes()[static_cast<int>(s)]; }

/// A matrix of homogeneous polynomials between two twisted sums; entry
/// (i, j) has degree target[i] - source[j] (zero polynomial when that
/// is negative).
template <class F>
struct Morphism {
    TwistedSum source;
    TwistedSum target;
    std::vector<HomPoly<F>> entries; // row-major, target rows x source columns

    int rows() const { return target.rank(); }
    int cols() const { return source.rank(); }

    HomPoly<F>& at(int i, int j) { return entries[static_cast<size_t>(i) * cols() + j]; }
    const HomPoly<F>& at(int i, int j) const {
        return entries[static_cast<size_t>(i) * cols() + j];
    }

    int required_degree(int i, int j) const { return target.twists[i] - source.twists[j]; }

    bool operator==(const Morphism&) const = default;
};

template <class F>
Morphism<F> zero_morphism(const F& k, TwistedSum source, TwistedSum target) {
    Morphism<F> m{std::move(source), std::move(target), {}};
    m.entries.reserve(static_cast<size_t>(m.rows()) * m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            m.entries.push_back(poly_zero(k, std::max(m.required_degree(i, j), 0)));
    return m;
}

struct CellViolation {
    int row, col;
    int required_degree;
    int actual_degree;
};

/// Degree-legality check; one violation per offending cell.
template <class F>
std::vector<CellViolation> validate_morphism(const F& k, const Morphism<F>& phi) {
    std::vector<CellViolation> out;
    if (phi.entries.size() != static_cast<size_t>(phi.rows()) * phi.cols())
        throw std::invalid_argument("entry count does not match shape");
    for (int i = 0; i < phi.rows(); ++i)
        for (int j = 0; j < phi.cols(); ++j) {
            int req = phi.required_degree(i, j);
            const auto& e = phi.at(i, j);
            bool ok = req < 0 ? poly_is_zero(k, e)
                              : (e.degree == req || poly_is_zero(k, e));
            if (!ok) out.push_back({i, j, req, e.degree});
        }
    return out;
}

/// Entry with the degree coerced to the cell requirement (used after
/// parsing, where "0" carries no degree of its own).
template <class F>
HomPoly<F> coerce_cell(const F& k, const HomPoly<F>& e, int required) {
    if (required < 0 || e.degree == required) return e;
    if (poly_is_zero(k, e)) return poly_zero(k, required);
    return e; // leave as-is; validate_morphism will flag it
}

namespace detail {

template <class F>
HomPoly<F> det_recurse(const F& k, const Morphism<F>& phi, std::vector<int>& cols, int row,
                       int total_degree) {
    if (cols.empty()) return poly_monomial(k, 0, 0, 0, k.one());
    HomPoly<F> acc = poly_zero(k, total_degree);
    for (size_t ci = 0; ci < cols.size(); ++ci) {
        int j = cols[ci];
        const auto& e = phi.at(row, j);
        if (phi.required_degree(row, j) < 0 || poly_is_zero(k, e)) continue;
        std::vector<int> rest;
        rest.reserve(cols.size() - 1);
        for (size_t t = 0; t < cols.size(); ++t)
            if (t != ci) rest.push_back(cols[t]);
        auto sub = det_recurse(k, phi, rest, row + 1, total_degree - e.degree);
        auto term = poly_mul(k, e, sub);
        if (ci % 2 == 1) term = poly_neg(k, term);
        acc = poly_add(k, acc, term);
    }
    return acc;
}

} // namespace detail

/// Cofactor-expansion determinant with exact polynomial arithmetic;
/// degree is the twist gap (6 for every stratum template).
template <class F>
HomPoly<F> determinant(const F& k, const Morphism<F>& phi) {
    if (phi.rows() != phi.cols()) throw std::invalid_argument("determinant: non-square shape");
    int deg = phi.target.twist_sum() - phi.source.twist_sum();
    if (deg < 0) return poly_zero(k, 0);
    std::vector<int> cols(phi.cols());
    std::iota(cols.begin(), cols.end(), 0);
    return detail::det_recurse(k, phi, cols, 0, deg);
}

template <class F>
bool is_injective(const F& k, const Morphism<F>& phi) {
    return !poly_is_zero(k, determinant(k, phi));
}

/// Transpose with the dual twist convention t -> -t-2; the dual cokernel
/// has Hilbert polynomial 6m+4.
template <class F>
Morphism<F> dual_resolution(const F& k, const Morphism<F>& phi) {
    if (phi.rows() != phi.cols()) throw std::invalid_argument("dual: non-square shape");
    Morphism<F> d;
    for (int b : phi.target.twists) d.source.twists.push_back(-b - 2);
    for (int a : phi.source.twists) d.target.twists.push_back(-a - 2);
    d.entries.resize(phi.entries.size(), poly_zero(k, 0));
    for (int i = 0; i < d.rows(); ++i)
        for (int j = 0; j < d.cols(); ++j)
            d.at(i, j) = phi.at(j, i);
    return d;
}

/// Coefficients (leading, constant) of sum chi(b_i+m) - sum chi(a_j+m).
/// Requires a square injective shape; the quadratic term cancels.
template <class F>
std::pair<long long, long long> hilbert_polynomial(const F& k, const Morphism<F>& phi) {
    if (phi.rows() != phi.cols()) throw std::invalid_argument("hilbert: non-square shape");
    if (!is_injective(k, phi))
        throw std::invalid_argument("hilbert: non-injective morphism");
    auto value = [&](long long m) {
        long long v = 0;
        for (int b : phi.target.twists) v += euler_chi(b + m);
        for (int a : phi.source.twists) v -= euler_chi(a + m);
        return v;
    };
    long long p0 = value(0), p1 = value(1), pm1 = value(-1);
    if (p1 - 2 * p0 + pm1 != 0)
        throw std::logic_error("hilbert: quadratic term did not cancel");
    return {p1 - p0, p0};
}

// ---------------------------------------------------------------------------
// Equivalence group: pairs of twist-legal automorphisms acting by
// target_auto . phi . source_auto.
// ---------------------------------------------------------------------------

template <class F>
struct EquivalenceElement {
    Morphism<F> source_auto; // source -> source
    Morphism<F> target_auto; // target -> target
};

/// Constant part of an endomorphism: entries between equal twists.
template <class F>
Matrix<F> constant_block(const F& k, const Morphism<F>& a) {
    int n = a.rows();
    Matrix<F> c(n, n, k.zero());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (a.required_degree(i, j) == 0) c.at(i, j) = a.at(i, j).coeffs[0];
    return c;
}

/// A twist-legal endomorphism is invertible iff its constant part is.
template <class F>
bool is_invertible_auto(const F& k, const Morphism<F>& a) {
    if (a.rows() != a.cols() || !(a.source == a.target)) return false;
    return !k.is_zero(scalar_det(k, constant_block(k, a)));
}

template <class F>
Morphism<F> compose(const F& k, const Morphism<F>& g, const Morphism<F>& f) {
    if (!(f.target == g.source)) throw std::invalid_argument("compose: shape mismatch");
    Morphism<F> r = zero_morphism(k, f.source, g.target);
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < r.cols(); ++j) {
            if (r.required_degree(i, j) < 0) continue;
            auto acc = poly_zero(k, r.required_degree(i, j));
            for (int l = 0; l < g.cols(); ++l) {
                if (g.required_degree(i, l) < 0 || f.required_degree(l, j) < 0) continue;
                acc = poly_add(k, acc, poly_mul(k, g.at(i, l), f.at(l, j)));
            }
            r.at(i, j) = acc;
        }
    return r;
}

template <class F>
Morphism<F> apply_equivalence(const F& k, const EquivalenceElement<F>& g,
                              const Morphism<F>& phi) {
    if (!(g.source_auto.source == phi.source) || !(g.target_auto.source == phi.target))
        throw std::invalid_argument("apply_equivalence: shape mismatch");
    if (!is_invertible_auto(k, g.source_auto) || !is_invertible_auto(k, g.target_auto))
        throw std::invalid_argument("apply_equivalence: non-invertible automorphism");
    return compose(k, g.target_auto, compose(k, phi, g.source_auto));
}

template <class F>
EquivalenceElement<F> identity_equivalence(const F& k, const Morphism<F>& phi) {
    auto ident = [&](const TwistedSum& t) {
        auto a = zero_morphism(k, t, t);
        for (int i = 0; i < a.rows(); ++i) a.at(i, i) = poly_monomial(k, 0, 0, 0, k.one());
        return a;
    };
    return {ident(phi.source), ident(phi.target)};
}

// ---------------------------------------------------------------------------
// Seeded sampling (prime fields only)
// ---------------------------------------------------------------------------

/// splitmix64; used to derive independent per-sample streams from one seed.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (counter + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline HomPoly<PrimeField> random_poly(const PrimeField& k, int degree, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> dist(0, k.modulus() - 1);
    HomPoly<PrimeField> p = poly_zero(k, degree);
    for (auto& c : p.coeffs) c = dist(rng);
    return p;
}

/// Uniform independent coefficients for every degree-legal cell,
/// deterministic in the seed.
inline Morphism<PrimeField> random_morphism(const PrimeField& k, const StratumShape& shape,
                                            std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto phi = zero_morphism(k, shape.source, shape.target);
    for (int i = 0; i < phi.rows(); ++i)
        for (int j = 0; j < phi.cols(); ++j) {
            int d = phi.required_degree(i, j);
            if (d >= 0) phi.at(i, j) = random_poly(k, d, rng);
        }
    return phi;
}

/// Random invertible twist-legal automorphism pair for phi's shape.
inline EquivalenceElement<PrimeField> random_equivalence(const PrimeField& k,
                                                         const Morphism<PrimeField>& phi,
                                                         std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto sample_auto = [&](const TwistedSum& t) {
        for (;;) {
            auto a = zero_morphism(k, t, t);
            for (int i = 0; i < a.rows(); ++i)
                for (int j = 0; j < a.cols(); ++j) {
                    int d = a.required_degree(i, j);
                    if (d >= 0) a.at(i, j) = random_poly(k, d, rng);
                }
            if (is_invertible_auto(k, a)) return a;
        }
    };
    return {sample_auto(phi.source), sample_auto(phi.target)};
}

} // namespace strata
