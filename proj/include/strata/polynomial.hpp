#pragma once

#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "strata/field.hpp"
#include "strata/matrix.hpp"

namespace strata {

// ---------------------------------------------------------------------------
// Monomial bookkeeping: homogeneous degree-d monomials in X, Y, Z on the
// graded-lex order X >= Y >= Z. Index 0 is X^d, then X^(d-1)Y, X^(d-1)Z, ...
// ---------------------------------------------------------------------------

inline int mono_count(int d) { return d < 0 ? 0 : (d + 1) * (d + 2) / 2; }

inline int mono_index(int d, int ax, int ay) {
    int kyz = d - ax; // degree carried by Y, Z
    return kyz * (kyz + 1) / 2 + (kyz - ay);
}

inline std::array<int, 3> mono_exponents(int d, int idx) {
    for (int ax = d; ax >= 0; --ax) {
        int kyz = d - ax;
        int base = kyz * (kyz + 1) / 2;
        if (idx < base + kyz + 1) {
            int ay = kyz - (idx - base);
            return {ax, ay, kyz - ay};
        }
    }
    throw std::out_of_range("monomial index");
}

/// chi(O(k)) on the projective plane: (k+1)(k+2)/2, any integer k.
inline long long euler_chi(long long k) { return (k + 1) * (k + 2) / 2; }

/// h^0(O(k)): sections vanish for negative twists.
inline long long h0_line(long long k) { return k < 0 ? 0 : euler_chi(k); }

// ---------------------------------------------------------------------------
// Homogeneous polynomials
// ---------------------------------------------------------------------------

/// Homogeneous polynomial of a formal degree; the all-zero vector is the
/// zero polynomial of that degree.
template <class F>
struct HomPoly {
    using Elem = typename F::Elem;
    int degree = 0;
    std::vector<Elem> coeffs; // length mono_count(degree)

    HomPoly() : coeffs(1) {}
    explicit HomPoly(int d) : degree(d), coeffs(mono_count(d)) {}

    bool operator==(const HomPoly&) const = default;
};

template <class F>
HomPoly<F> poly_zero(const F& k, int degree) {
    HomPoly<F> p(degree);
    for (auto& c : p.coeffs) c = k.zero();
    return p;
}

template <class F>
HomPoly<F> poly_monomial(const F& k, int ax, int ay, int az, typename F::Elem c) {
    HomPoly<F> p = poly_zero(k, ax + ay + az);
    p.coeffs[mono_index(p.degree, ax, ay)] = c;
    return p;
}

template <class F>
bool poly_is_zero(const F& k, const HomPoly<F>& p) {
    for (const auto& c : p.coeffs)
        if (!k.is_zero(c)) return false;
    return true;
}

template <class F>
HomPoly<F> poly_add(const F& k, const HomPoly<F>& f, const HomPoly<F>& g) {
    if (f.degree != g.degree) {
        // degree is formal; mixing is only legal when one side is zero
        if (poly_is_zero(k, f)) return g;
        if (poly_is_zero(k, g)) return f;
        throw std::invalid_argument("adding polynomials of different degrees");
    }
    HomPoly<F> r(f.degree);
    for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = k.add(f.coeffs[i], g.coeffs[i]);
    return r;
}

template <class F>
HomPoly<F> poly_sub(const F& k, const HomPoly<F>& f, const HomPoly<F>& g) {
    return poly_add(k, f, poly_neg(k, g));
}

template <class F>
HomPoly<F> poly_neg(const F& k, const HomPoly<F>& f) {
    HomPoly<F> r(f.degree);
    for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = k.neg(f.coeffs[i]);
    return r;
}

template <class F>
HomPoly<F> poly_scale(const F& k, typename F::Elem c, const HomPoly<F>& f) {
    HomPoly<F> r(f.degree);
    for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = k.mul(c, f.coeffs[i]);
    return r;
}

template <class F>
HomPoly<F> poly_mul(const F& k, const HomPoly<F>& f, const HomPoly<F>& g) {
    HomPoly<F> r = poly_zero(k, f.degree + g.degree);
    for (int i = 0; i < mono_count(f.degree); ++i) {
        if (k.is_zero(f.coeffs[i])) continue;
        auto [fx, fy, fz] = mono_exponents(f.degree, i);
        for (int j = 0; j < mono_count(g.degree); ++j) {
            if (k.is_zero(g.coeffs[j])) continue;
            auto [gx, gy, gz] = mono_exponents(g.degree, j);
            int idx = mono_index(r.degree, fx + gx, fy + gy);
            r.coeffs[idx] = k.add(r.coeffs[idx], k.mul(f.coeffs[i], g.coeffs[j]));
        }
    }
    return r;
}

template <class F>
typename F::Elem poly_eval(const F& k, const HomPoly<F>& f, typename F::Elem x,
                           typename F::Elem y, typename F::Elem z) {
    int d = f.degree;
    std::vector<typename F::Elem> px(d + 1, k.one()), py(d + 1, k.one()), pz(d + 1, k.one());
    for (int i = 1; i <= d; ++i) {
        px[i] = k.mul(px[i - 1], x);
        py[i] = k.mul(py[i - 1], y);
        pz[i] = k.mul(pz[i - 1], z);
    }
    auto acc = k.zero();
    for (int i = 0; i < mono_count(d); ++i) {
        if (k.is_zero(f.coeffs[i])) continue;
        auto [ax, ay, az] = mono_exponents(d, i);
        acc = k.add(acc, k.mul(f.coeffs[i], k.mul(px[ax], k.mul(py[ay], pz[az]))));
    }
    return acc;
}

/// Matrix of the multiplication map S^d -> S^(d+deg g), h -> g*h, on the
/// fixed monomial bases. Row/column labels are monomial indices.
template <class F>
Matrix<F> multiplication_matrix(const F& k, const HomPoly<F>& g, int d) {
    if (d < 0) throw std::invalid_argument("multiplication_matrix: negative source degree");
    int dr = d + g.degree;
    Matrix<F> m(mono_count(dr), mono_count(d), k.zero());
    for (int j = 0; j < mono_count(d); ++j) {
        auto [mx, my, mz] = mono_exponents(d, j);
        for (int i = 0; i < mono_count(g.degree); ++i) {
            if (k.is_zero(g.coeffs[i])) continue;
            auto [gx, gy, gz] = mono_exponents(g.degree, i);
            m.at(mono_index(dr, gx + mx, gy + my), j) = g.coeffs[i];
        }
    }
    return m;
}

/// Decides divisibility by solving the linear system in the quotient's
/// coefficients; returns q with f = q*g, or nullopt.
template <class F>
std::optional<HomPoly<F>> exact_divide(const F& k, const HomPoly<F>& f, const HomPoly<F>& g) {
    if (poly_is_zero(k, g)) throw std::invalid_argument("exact_divide: zero divisor");
    int dq = f.degree - g.degree;
    if (dq < 0) {
        if (poly_is_zero(k, f)) return poly_zero(k, 0);
        return std::nullopt;
    }
    auto m = multiplication_matrix(k, g, dq);
    auto x = solve(k, m, f.coeffs);
    if (!x) return std::nullopt;
    // solve() picks one solution; multiplication by a nonzero g is injective,
    // so it is the quotient whenever the product matches
    HomPoly<F> q(dq);
    q.coeffs = *x;
    if (!(poly_mul(k, q, g) == f)) return std::nullopt;
    return q;
}

template <class F>
bool poly_divides(const F& k, const HomPoly<F>& g, const HomPoly<F>& f) {
    return exact_divide(k, f, g).has_value();
}

// ---------------------------------------------------------------------------
// Text grammar: integers (rationals a/b over Q), X/Y/Z, + - * ^ ( ).
// ---------------------------------------------------------------------------

class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

/// Recursive-descent parser producing a sparse exponent->coefficient map;
/// homogeneity is checked after the whole expression is read.
template <class F>
class PolyParser {
public:
    using Elem = typename F::Elem;
    using Term = std::map<std::array<int, 3>, Elem>;

    PolyParser(const F& k, std::string_view text, bool allow_rational)
        : k_(k), s_(text), allow_rational_(allow_rational) {}

    Term run() {
        auto t = parse_sum();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return t;
    }

private:
    const F& k_;
    std::string_view s_;
    size_t pos_ = 0;
    bool allow_rational_;

    [[noreturn]] void fail(const std::string& msg) const {
        throw parse_error(msg + " at position " + std::to_string(pos_));
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    static Term add_terms(const F& k, const Term& a, const Term& b) {
        Term r = a;
        for (const auto& [e, c] : b) {
            auto it = r.find(e);
            if (it == r.end()) r.emplace(e, c);
            else it->second = k.add(it->second, c);
        }
        return r;
    }

    static Term mul_terms(const F& k, const Term& a, const Term& b) {
        Term r;
        for (const auto& [ea, ca] : a)
            for (const auto& [eb, cb] : b) {
                std::array<int, 3> e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
                auto v = k.mul(ca, cb);
                auto it = r.find(e);
                if (it == r.end()) r.emplace(e, v);
                else it->second = k.add(it->second, v);
            }
        return r;
    }

    Term parse_sum() {
        bool neg = false;
        if (eat('-')) neg = true;
        else (void)eat('+');
        Term acc = parse_product();
        if (neg)
            for (auto& [e, c] : acc) c = k_.neg(c);
        for (;;) {
            if (eat('+')) acc = add_terms(k_, acc, parse_product());
            else if (eat('-')) {
                auto t = parse_product();
                for (auto& [e, c] : t) c = k_.neg(c);
                acc = add_terms(k_, acc, t);
            } else break;
        }
        return acc;
    }

    Term parse_product() {
        Term acc = parse_power();
        for (;;) {
            if (eat('*')) acc = mul_terms(k_, acc, parse_power());
            else if (peek() == '/') fail("division is not part of the grammar");
            else break;
        }
        return acc;
    }

    Term parse_power() {
        Term base = parse_atom();
        if (eat('^')) {
            long long e = parse_uint();
            Term acc{{{0, 0, 0}, k_.one()}};
            for (long long i = 0; i < e; ++i) acc = mul_terms(k_, acc, base);
            return acc;
        }
        return base;
    }

    Term parse_atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            auto t = parse_sum();
            if (!eat(')')) fail("expected ')'");
            return t;
        }
        if (c == 'X' || c == 'Y' || c == 'Z') {
            ++pos_;
            std::array<int, 3> e{c == 'X' ? 1 : 0, c == 'Y' ? 1 : 0, c == 'Z' ? 1 : 0};
            return Term{{e, k_.one()}};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long long num = parse_uint();
            Elem v = k_.from_int(num);
            // rational literal a/b, only over Q
            size_t save = pos_;
            if (eat('/')) {
                if (!allow_rational_) fail("division is not part of the grammar");
                if (!std::isdigit(static_cast<unsigned char>(peek()))) { pos_ = save; }
                else {
                    long long den = parse_uint();
                    if (den == 0) fail("zero denominator");
                    v = k_.div(v, k_.from_int(den));
                }
            }
            return Term{{{0, 0, 0}, v}};
        }
        fail(std::string("unknown symbol '") + c + "'");
    }

    long long parse_uint() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected integer");
        long long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > (1ll << 62)) fail("integer literal too large");
            ++pos_;
        }
        return v;
    }
};

} // namespace detail

/// Parses a homogeneous polynomial. "0" (or any expression collapsing to
/// zero) parses as the zero polynomial of degree 0; callers with a degree
/// expectation coerce it.
template <class F>
HomPoly<F> parse_poly(const F& k, std::string_view text) {
    constexpr bool rational = std::is_same_v<F, RationalField>;
    detail::PolyParser<F> parser(k, text, rational);
    auto terms = parser.run();
    int degree = -1;
    for (const auto& [e, c] : terms) {
        if (k.is_zero(c)) continue;
        int d = e[0] + e[1] + e[2];
        if (degree < 0) degree = d;
        else if (d != degree)
            throw parse_error("non-homogeneous input: degrees " + std::to_string(degree) +
                              " and " + std::to_string(d));
    }
    if (degree < 0) return poly_zero(k, 0);
    HomPoly<F> p = poly_zero(k, degree);
    for (const auto& [e, c] : terms)
        if (!k.is_zero(c)) p.coeffs[mono_index(degree, e[0], e[1])] = c;
    return p;
}

template <class F>
std::string poly_to_string(const F& k, const HomPoly<F>& f) {
    std::string out;
    for (int i = 0; i < mono_count(f.degree); ++i) {
        const auto& c = f.coeffs[i];
        if (k.is_zero(c)) continue;
        if (!out.empty()) out += " + ";
        auto [ax, ay, az] = mono_exponents(f.degree, i);
        std::string mono;
        auto app = [&](char v, int e) {
            if (e == 0) return;
            if (!mono.empty()) mono += "*";
            mono += v;
            if (e > 1) mono += "^" + std::to_string(e);
        };
        app('X', ax); app('Y', ay); app('Z', az);
        std::string cs = k.to_string(c);
        if (mono.empty()) out += cs;
        else if (cs == "1") out += mono;
        else out += cs + "*" + mono;
    }
    return out.empty() ? "0" : out;
}

} // namespace strata
