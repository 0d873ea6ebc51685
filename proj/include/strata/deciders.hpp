#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strata/kronecker.hpp"
#include "strata/morphism.hpp"

namespace strata {

// ---------------------------------------------------------------------------
// Small helpers on coefficient matrices of forms
// ---------------------------------------------------------------------------

/// Rows = coefficient vectors of the given forms (all of one degree).
template <class F>
Matrix<F> coefficient_matrix(const F& k, const std::vector<HomPoly<F>>& forms) {
    if (forms.empty()) return Matrix<F>(0, 0);
    int d = forms[0].degree;
    Matrix<F> m(static_cast<int>(forms.size()), mono_count(d), k.zero());
    for (size_t i = 0; i < forms.size(); ++i) {
        if (forms[i].degree != d) throw std::invalid_argument("mixed degrees");
        for (int j = 0; j < mono_count(d); ++j) m.at(static_cast<int>(i), j) = forms[i].coeffs[j];
    }
    return m;
}

template <class F>
bool forms_independent(const F& k, const std::vector<HomPoly<F>>& forms) {
    return rank(k, coefficient_matrix(k, forms)) == static_cast<int>(forms.size());
}

/// The three 2x2 minors of a 3x2 matrix of linear forms are linearly
/// independent quadrics.
template <class F>
bool minors_independent(const F& k, const Morphism<F>& phi, int row0, int col0) {
    auto minor = [&](int r1, int r2) {
        return poly_sub(k, poly_mul(k, phi.at(row0 + r1, col0), phi.at(row0 + r2, col0 + 1)),
                        poly_mul(k, phi.at(row0 + r1, col0 + 1), phi.at(row0 + r2, col0)));
    };
    std::vector<HomPoly<F>> minors{minor(0, 1), minor(0, 2), minor(1, 2)};
    return rank(k, coefficient_matrix(k, minors)) == 3;
}

// ---------------------------------------------------------------------------
// Binary quadratic forms in (c1, c2): common-root detection over the
// algebraic closure by gcd degree, rational roots by scan.
// ---------------------------------------------------------------------------

/// A c1^2 + B c1 c2 + C c2^2
struct BinaryQuadratic {
    PrimeField::Elem a, b, c;
};

namespace detail {

using UniPoly = std::vector<PrimeField::Elem>; // coeffs, index = power, trimmed

inline UniPoly trim(UniPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

inline UniPoly uni_mod(const PrimeField& k, UniPoly a, const UniPoly& b) {
    while (a.size() >= b.size() && !a.empty()) {
        auto f = k.div(a.back(), b.back());
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[off + i] = k.sub(a[off + i], k.mul(f, b[i]));
        a = trim(std::move(a));
    }
    return a;
}

inline UniPoly uni_gcd(const PrimeField& k, UniPoly a, UniPoly b) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        auto r = uni_mod(k, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

} // namespace detail

struct PencilRootResult {
    bool has_root = false;          // over the algebraic closure
    bool all_zero = false;          // every form identically zero
    std::optional<std::pair<PrimeField::Elem, PrimeField::Elem>> rational_root; // (c1:c2)
};

/// Decides whether the given binary quadratics share a projective root.
/// Exact over the closure (gcd of forms); a rational root is also
/// extracted when one exists.
inline PencilRootResult common_pencil_root(const PrimeField& k,
                                           const std::vector<BinaryQuadratic>& forms) {
    PencilRootResult res;
    detail::UniPoly g; // gcd of the dehomogenizations at c2 = 1
    bool all_zero = true, all_a_zero = true, first = true;
    for (const auto& f : forms) {
        if (f.a == 0 && f.b == 0 && f.c == 0) continue;
        all_zero = false;
        if (f.a != 0) all_a_zero = false;
        detail::UniPoly p = detail::trim({f.c, f.b, f.a});
        g = first ? p : detail::uni_gcd(k, g, p);
        first = false;
    }
    if (all_zero) {
        res.has_root = true;
        res.all_zero = true;
        res.rational_root = {{k.one(), k.zero()}};
        return res;
    }
    bool root_at_infinity = all_a_zero; // (1:0) kills every form
    bool affine_root_closure = g.size() >= 2;
    res.has_root = root_at_infinity || affine_root_closure;
    if (root_at_infinity) {
        res.rational_root = {{k.one(), k.zero()}};
        return res;
    }
    if (affine_root_closure && k.modulus() <= (1u << 20)) {
        for (PrimeField::Elem t = 0; t < k.modulus(); ++t) {
            auto v = k.zero();
            for (size_t i = g.size(); i-- > 0;) v = k.add(k.mul(v, t), g[i]);
            if (v == 0) {
                res.rational_root = {{t, k.one()}};
                break;
            }
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Pattern deciders
// ---------------------------------------------------------------------------

struct PatternDecision {
    bool reachable = false;
    /// equivalence element realizing the zero pattern (when a rational
    /// witness exists)
    std::optional<EquivalenceElement<PrimeField>> certificate;
    std::string witness; // human-readable witness payload
    std::string note;    // e.g. closure-only root
};

struct X0Decision {
    PatternDecision pattern1, pattern2, pattern3;
    bool pattern_free() const {
        return !pattern1.reachable && !pattern2.reachable && !pattern3.reachable;
    }
};

namespace detail {

/// 3x4 coefficient matrix of one linear row of an X0 morphism.
inline Matrix<PrimeField> linear_row_coeffs(const PrimeField& k, const Morphism<PrimeField>& phi,
                                            int row) {
    Matrix<PrimeField> m(3, phi.cols(), k.zero());
    for (int j = 0; j < phi.cols(); ++j) {
        const auto& e = phi.at(row, j);
        m.at(0, j) = e.coeffs[mono_index(1, 1, 0)];
        m.at(1, j) = e.coeffs[mono_index(1, 0, 1)];
        m.at(2, j) = e.coeffs[mono_index(1, 0, 0)];
    }
    return m;
}

inline Morphism<PrimeField> const_auto_from_columns(const PrimeField& k, const TwistedSum& t,
                                                    const Matrix<PrimeField>& cols) {
    auto a = zero_morphism(k, t, t);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a.required_degree(i, j) == 0)
                a.at(i, j) = poly_monomial(k, 0, 0, 0, cols.at(i, j));
    return a;
}

/// Identity automorphism with two rows of one equal-twist group replaced
/// by a combination: new row r0 = c0*row r0 + c1*row r1, row r1 completed
/// to keep it invertible.
inline Morphism<PrimeField> row_combo_auto(const PrimeField& k, const TwistedSum& t, int r0,
                                           int r1, PrimeField::Elem c0, PrimeField::Elem c1) {
    auto a = identity_equivalence(k, Morphism<PrimeField>{t, t, {}}).source_auto;
    a.at(r0, r0) = poly_monomial(k, 0, 0, 0, c0);
    a.at(r0, r1) = poly_monomial(k, 0, 0, 0, c1);
    if (c0 != 0) {
        a.at(r1, r0) = poly_monomial(k, 0, 0, 0, k.zero());
        a.at(r1, r1) = poly_monomial(k, 0, 0, 0, k.one());
    } else {
        a.at(r1, r0) = poly_monomial(k, 0, 0, 0, k.one());
        a.at(r1, r1) = poly_monomial(k, 0, 0, 0, k.zero());
    }
    return a;
}

inline std::string vec_to_string(const std::vector<PrimeField::Elem>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

} // namespace detail

/// Prop-2.1 forbidden patterns for the open-stratum shape
/// 4O(-2) -> 2O(-1) + 2O.
inline X0Decision x0_patterns(const PrimeField& k, const Morphism<PrimeField>& phi) {
    X0Decision dec;
    const auto& src = phi.source;
    const auto& tgt = phi.target;
    auto r1 = detail::linear_row_coeffs(k, phi, 0);
    auto r2 = detail::linear_row_coeffs(k, phi, 1);

    // pattern 1: some pencil member c1*row0 + c2*row1 has its four linear
    // forms spanning a line; detected by a common root of all 2x2 minors
    std::vector<BinaryQuadratic> minors;
    for (int i1 = 0; i1 < 3; ++i1)
        for (int i2 = i1 + 1; i2 < 3; ++i2)
            for (int j1 = 0; j1 < 4; ++j1)
                for (int j2 = j1 + 1; j2 < 4; ++j2) {
                    BinaryQuadratic q;
                    q.a = k.sub(k.mul(r1.at(i1, j1), r1.at(i2, j2)),
                                k.mul(r1.at(i1, j2), r1.at(i2, j1)));
                    q.c = k.sub(k.mul(r2.at(i1, j1), r2.at(i2, j2)),
                                k.mul(r2.at(i1, j2), r2.at(i2, j1)));
                    q.b = k.sub(k.add(k.mul(r1.at(i1, j1), r2.at(i2, j2)),
                                      k.mul(r2.at(i1, j1), r1.at(i2, j2))),
                                k.add(k.mul(r1.at(i1, j2), r2.at(i2, j1)),
                                      k.mul(r2.at(i1, j2), r1.at(i2, j1))));
                    minors.push_back(q);
                }
    auto root = common_pencil_root(k, minors);
    dec.pattern1.reachable = root.has_root;
    if (root.has_root && root.rational_root) {
        auto [c1, c2] = *root.rational_root;
        dec.pattern1.witness = "pencil root (" + std::to_string(c1) + ":" + std::to_string(c2) + ")";
        Matrix<PrimeField> m(3, 4, k.zero());
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 4; ++j)
                m.at(i, j) = k.add(k.mul(c1, r1.at(i, j)), k.mul(c2, r2.at(i, j)));
        auto ker = kernel_basis(k, m);
        if (ker.size() >= 3) {
            std::vector<std::vector<PrimeField::Elem>> kv(ker.begin(), ker.begin() + 3);
            auto full = complete_to_basis(k, kv, 4);
            // reorder so the non-kernel column leads
            Matrix<PrimeField> cols(4, 4, k.zero());
            for (int i = 0; i < 4; ++i) {
                cols.at(i, 0) = full.at(i, 3);
                for (int j = 0; j < 3; ++j) cols.at(i, j + 1) = full.at(i, j);
            }
            EquivalenceElement<PrimeField> g;
            g.source_auto = detail::const_auto_from_columns(k, src, cols);
            g.target_auto = detail::row_combo_auto(k, tgt, 0, 1, c1, c2);
            dec.pattern1.certificate = std::move(g);
        }
    } else if (root.has_root) {
        dec.pattern1.note = "root exists over the closure only; no rational certificate";
    }

    // pattern 2: both linear rows vanish on a 2-dimensional column space
    Matrix<PrimeField> stacked(6, 4, k.zero());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) {
            stacked.at(i, j) = r1.at(i, j);
            stacked.at(3 + i, j) = r2.at(i, j);
        }
    auto ker = kernel_basis(k, stacked);
    dec.pattern2.reachable = ker.size() >= 2;
    if (dec.pattern2.reachable) {
        std::vector<std::vector<PrimeField::Elem>> kv(ker.begin(), ker.begin() + 2);
        dec.pattern2.witness =
            "kernel " + detail::vec_to_string(kv[0]) + ", " + detail::vec_to_string(kv[1]);
        auto full = complete_to_basis(k, kv, 4);
        Matrix<PrimeField> cols(4, 4, k.zero());
        for (int i = 0; i < 4; ++i) {
            cols.at(i, 0) = full.at(i, 2);
            cols.at(i, 1) = full.at(i, 3);
            cols.at(i, 2) = full.at(i, 0);
            cols.at(i, 3) = full.at(i, 1);
        }
        EquivalenceElement<PrimeField> g;
        g.source_auto = detail::const_auto_from_columns(k, src, cols);
        g.target_auto = identity_equivalence(k, phi).target_auto;
        dec.pattern2.certificate = std::move(g);
    }

    // pattern 3: a column killed by both linear rows whose two quadratic
    // values are dependent
    if (ker.size() >= 2) {
        dec.pattern3.reachable = true; // subsumed by pattern 2
        dec.pattern3.note = "kernel dimension >= 2; pattern 2 already holds";
    } else if (ker.size() == 1) {
        const auto& v = ker[0];
        auto col_combo = [&](int row) {
            auto q = poly_zero(k, 2);
            for (int j = 0; j < 4; ++j)
                q = poly_add(k, q, poly_scale(k, v[j], phi.at(row, j)));
            return q;
        };
        auto q1 = col_combo(2), q2 = col_combo(3);
        auto cm = coefficient_matrix(k, std::vector<HomPoly<PrimeField>>{q1, q2});
        if (rank(k, cm) <= 1) {
            dec.pattern3.reachable = true;
            dec.pattern3.witness = "column " + detail::vec_to_string(v);
            auto lk = left_kernel_basis(k, cm);
            auto c = lk.at(0); // c[0]*q1 + c[1]*q2 = 0
            auto full = complete_to_basis(k, {v}, 4);
            Matrix<PrimeField> cols(4, 4, k.zero());
            for (int i = 0; i < 4; ++i) {
                for (int j = 0; j < 3; ++j) cols.at(i, j) = full.at(i, j + 1);
                cols.at(i, 3) = full.at(i, 0);
            }
            EquivalenceElement<PrimeField> g;
            g.source_auto = detail::const_auto_from_columns(k, src, cols);
            g.target_auto = detail::row_combo_auto(k, tgt, 2, 3, c[0], c[1]);
            dec.pattern3.certificate = std::move(g);
        }
    }
    return dec;
}

struct X2Decision {
    PatternDecision form1, form2, form3;
    bool form_free() const { return !form1.reachable && !form2.reachable && !form3.reachable; }
};

/// Prop-3.3 forbidden forms for the shape O(-3)+O(-2)+O(-1) -> 3O.
inline X2Decision x2_forms(const PrimeField& k, const Morphism<PrimeField>& phi) {
    X2Decision dec;
    auto column = [&](int j) {
        std::vector<HomPoly<PrimeField>> c;
        for (int i = 0; i < 3; ++i) c.push_back(phi.at(i, j));
        return c;
    };
    auto quad_col = coefficient_matrix(k, column(1));  // 3x6
    auto lin_col = coefficient_matrix(k, column(2));   // 3x3

    // form 1: the three linear entries span a line
    if (rank(k, lin_col) <= 1) {
        dec.form1.reachable = true;
        auto lk = left_kernel_basis(k, lin_col);
        std::vector<std::vector<PrimeField::Elem>> rows{lk[0], lk[1]};
        auto full = complete_to_basis(k, rows, 3); // columns: lk0, lk1, completion
        Matrix<PrimeField> rowmat(3, 3, k.zero());
        for (int i = 0; i < 3; ++i) {
            rowmat.at(0, i) = full.at(i, 2);
            rowmat.at(1, i) = full.at(i, 0);
            rowmat.at(2, i) = full.at(i, 1);
        }
        EquivalenceElement<PrimeField> g;
        g.source_auto = identity_equivalence(k, phi).source_auto;
        g.target_auto = detail::const_auto_from_columns(k, phi.target, rowmat);
        dec.form1.witness = "linear column rank " + std::to_string(rank(k, lin_col));
        dec.form1.certificate = std::move(g);
    }

    // form 3: a covector kills both the quadratic and the linear column
    Matrix<PrimeField> stack(3, 9, k.zero());
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 6; ++j) stack.at(i, j) = quad_col.at(i, j);
        for (int j = 0; j < 3; ++j) stack.at(i, 6 + j) = lin_col.at(i, j);
    }
    auto lk3 = left_kernel_basis(k, stack); // covectors c with c*stack = 0
    if (!lk3.empty()) {
        dec.form3.reachable = true;
        const auto& c = lk3[0];
        dec.form3.witness = "covector " + detail::vec_to_string(c);
        auto full = complete_to_basis(k, {c}, 3);
        Matrix<PrimeField> rowmat(3, 3, k.zero());
        for (int i = 0; i < 3; ++i) {
            rowmat.at(0, i) = full.at(i, 1);
            rowmat.at(1, i) = full.at(i, 2);
            rowmat.at(2, i) = full.at(i, 0);
        }
        EquivalenceElement<PrimeField> g;
        g.source_auto = identity_equivalence(k, phi).source_auto;
        g.target_auto = detail::const_auto_from_columns(k, phi.target, rowmat);
        dec.form3.certificate = std::move(g);
    }

    // form 2: a 2-dimensional covector space C and a linear form l with
    // c.(quadratic col) + l * (c.(linear col)) = 0 for all c in C;
    // rational planes are enumerated
    bool found2 = false;
    for_each_subspace(k, 3, 2, [&](const std::vector<std::vector<PrimeField::Elem>>& cbasis) {
        Matrix<PrimeField> sys(12, 3, k.zero());
        std::vector<PrimeField::Elem> rhs(12, k.zero());
        for (int b = 0; b < 2; ++b) {
            const auto& c = cbasis[b];
            auto quad = poly_zero(k, 2);
            auto lin = poly_zero(k, 1);
            for (int i = 0; i < 3; ++i) {
                quad = poly_add(k, quad, poly_scale(k, c[i], phi.at(i, 1)));
                lin = poly_add(k, lin, poly_scale(k, c[i], phi.at(i, 2)));
            }
            auto mm = multiplication_matrix(k, lin, 1); // 6x3, l -> lin*l
            for (int r = 0; r < 6; ++r) {
                for (int j = 0; j < 3; ++j) sys.at(6 * b + r, j) = mm.at(r, j);
                rhs[6 * b + r] = k.neg(quad.coeffs[r]);
            }
        }
        auto sol = solve(k, sys, rhs);
        if (!sol) return false;
        dec.form2.reachable = true;
        dec.form2.witness = "plane " + detail::vec_to_string(cbasis[0]) + "," +
                            detail::vec_to_string(cbasis[1]) + " ell " +
                            detail::vec_to_string(*sol);
        auto full = complete_to_basis(k, {cbasis[0], cbasis[1]}, 3);
        Matrix<PrimeField> rowmat(3, 3, k.zero());
        for (int i = 0; i < 3; ++i) {
            rowmat.at(0, i) = full.at(i, 2);
            rowmat.at(1, i) = full.at(i, 0);
            rowmat.at(2, i) = full.at(i, 1);
        }
        EquivalenceElement<PrimeField> g;
        g.target_auto = detail::const_auto_from_columns(k, phi.target, rowmat);
        g.source_auto = identity_equivalence(k, phi).source_auto;
        HomPoly<PrimeField> ell = poly_zero(k, 1);
        ell.coeffs = *sol;
        g.source_auto.at(2, 1) = ell; // adds ell * (linear column) to the quadratic column
        dec.form2.certificate = std::move(g);
        found2 = true;
        return true;
    });
    (void)found2;
    return dec;
}

/// Prop-4.4 closed-form criterion for the shape O(-3)+2O(-2) -> 2O(-1)+O(1):
/// the linear 2x2 block has nonzero determinant f, and the two mixed
/// minors are independent modulo f*V* inside S^3.
struct X4Decision {
    bool conic_nonzero = false;
    bool minors_independent_mod_conic = false;
    bool satisfied() const { return conic_nonzero && minors_independent_mod_conic; }
};

template <class F>
X4Decision x4_condition(const F& k, const Morphism<F>& phi) {
    X4Decision dec;
    const auto& q1 = phi.at(0, 0);
    const auto& q2 = phi.at(1, 0);
    const auto& l11 = phi.at(0, 1);
    const auto& l12 = phi.at(0, 2);
    const auto& l21 = phi.at(1, 1);
    const auto& l22 = phi.at(1, 2);
    auto f = poly_sub(k, poly_mul(k, l11, l22), poly_mul(k, l12, l21));
    dec.conic_nonzero = !poly_is_zero(k, f);
    if (!dec.conic_nonzero) return dec;
    auto m1 = poly_sub(k, poly_mul(k, q1, l21), poly_mul(k, q2, l11));
    auto m2 = poly_sub(k, poly_mul(k, q1, l22), poly_mul(k, q2, l12));
    std::vector<HomPoly<F>> cubics{poly_mul(k, f, parse_poly(k, "X")),
                                   poly_mul(k, f, parse_poly(k, "Y")),
                                   poly_mul(k, f, parse_poly(k, "Z")), m1, m2};
    dec.minors_independent_mod_conic = rank(k, coefficient_matrix(k, cubics)) == 5;
    return dec;
}

/// Exact zero check of the forbidden-pattern cells, used by certificate
/// replay and by random-probe tests. Patterns are indexed 1..3 for the X0
/// shape and 1..3 for the X2 shape.
inline bool has_x0_pattern(const PrimeField& k, const Morphism<PrimeField>& phi, int pattern) {
    auto z = [&](int i, int j) { return poly_is_zero(k, phi.at(i, j)); };
    switch (pattern) {
        case 1: return z(0, 1) && z(0, 2) && z(0, 3);
        case 2: return z(0, 2) && z(0, 3) && z(1, 2) && z(1, 3);
        case 3: return z(0, 3) && z(1, 3) && z(2, 3);
        default: throw std::invalid_argument("pattern index");
    }
}

inline bool has_x2_form(const PrimeField& k, const Morphism<PrimeField>& phi, int form) {
    auto z = [&](int i, int j) { return poly_is_zero(k, phi.at(i, j)); };
    switch (form) {
        case 1: return z(1, 2) && z(2, 2);
        case 2: return z(1, 1) && z(2, 1);
        case 3: return z(2, 1) && z(2, 2);
        default: throw std::invalid_argument("form index");
    }
}

} // namespace strata
