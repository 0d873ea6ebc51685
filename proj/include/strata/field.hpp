#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace strata {

using Rational = boost::multiprecision::cpp_rational;

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Arithmetic context for F_p, p prime < 2^31. Elements are residues in
/// [0, p). File and CLI entry points restrict to odd primes; p = 2 is
/// allowed here for internal cross-checks.
class PrimeField {
public:
    using Elem = std::uint64_t;

    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (p >= (1ull << 31) || !is_prime_u64(p))
            throw std::invalid_argument("modulus must be a prime < 2^31");
    }

    std::uint64_t modulus() const { return p_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    bool is_zero(Elem a) const { return a == 0; }

    Elem add(Elem a, Elem b) const { Elem s = a + b; return s >= p_ ? s - p_ : s; }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const { return (a * b) % p_; }

    Elem inv(Elem a) const {
        if (a == 0) throw std::domain_error("inverse of zero");
        // extended Euclid on (a, p)
        std::int64_t t = 0, newt = 1;
        std::int64_t r = static_cast<std::int64_t>(p_), newr = static_cast<std::int64_t>(a);
        while (newr != 0) {
            std::int64_t q = r / newr;
            t -= q * newt; std::swap(t, newt);
            r -= q * newr; std::swap(r, newr);
        }
        if (t < 0) t += static_cast<std::int64_t>(p_);
        return static_cast<Elem>(t);
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem from_int(long long v) const {
        long long m = v % static_cast<long long>(p_);
        if (m < 0) m += static_cast<long long>(p_);
        return static_cast<Elem>(m);
    }

    /// Reduce a rational a/b; throws if p divides b.
    Elem from_rational(const Rational& q) const {
        using boost::multiprecision::cpp_int;
        cpp_int num = boost::multiprecision::numerator(q);
        cpp_int den = boost::multiprecision::denominator(q);
        cpp_int pp = p_;
        cpp_int nm = num % pp; if (nm < 0) nm += pp;
        cpp_int dm = den % pp;
        if (dm == 0) throw std::domain_error("denominator divisible by modulus");
        Elem n = static_cast<Elem>(static_cast<std::uint64_t>(nm));
        Elem d = static_cast<Elem>(static_cast<std::uint64_t>(dm));
        return div(n, d);
    }

    std::string to_string(Elem a) const { return std::to_string(a); }

private:
    std::uint64_t p_;
};

/// Arithmetic context over exact rationals.
class RationalField {
public:
    using Elem = Rational;

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    bool is_zero(const Elem& a) const { return a == 0; }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem inv(const Elem& a) const {
        if (a == 0) throw std::domain_error("inverse of zero");
        return Elem(1) / a;
    }
    Elem div(const Elem& a, const Elem& b) const { return a / b; }
    Elem from_int(long long v) const { return Elem(v); }

    std::string to_string(const Elem& a) const { return a.str(); }
};

/// Runtime tag for the field a file or CLI invocation works over.
struct FieldSpec {
    enum class Kind { Prime, Rational };
    Kind kind = Kind::Prime;
    std::uint64_t prime = 101;

    static FieldSpec make_prime(std::uint64_t p) {
        if (p < 3 || p >= (1ull << 31) || !is_prime_u64(p))
            throw std::invalid_argument("field spec needs an odd prime < 2^31");
        return FieldSpec{Kind::Prime, p};
    }
    static FieldSpec make_rational() { return FieldSpec{Kind::Rational, 0}; }

    bool operator==(const FieldSpec&) const = default;
};

} // namespace strata
