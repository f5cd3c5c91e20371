#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "anticyclo/errors.hpp"

namespace anticyclo {

using Int = boost::multiprecision::cpp_int;

// p^e for e >= 0
Int pow_int(long p, long e);

// inverse of a modulo m, m > 1, gcd(a, m) = 1
Int mod_inverse(Int a, const Int& m);

// largest e with p^e | x; x must be nonzero
long int_valuation(Int x, long p);

/// Element of Q_p known modulo p^N (absolute precision N).
///
/// Nonzero values are stored as unit * p^val with the unit reduced
/// modulo p^(N - val) and coprime to p. Zero is a flagged value with
/// infinite valuation: "zero at precision N" means O(p^N).
class Padic {
public:
    Padic() = default;

    static Padic zero(long p, long prec);
    static Padic from_integer(long p, const Int& value, long prec);
    static Padic from_rational(long p, const Int& num, const Int& den, long prec);
    // unit must be coprime to p (it is reduced mod p^(prec - val) here)
    static Padic from_unit(long p, const Int& unit, long val, long prec);

    long prime() const { return p_; }
    bool is_zero() const { return zero_; }
    long precision() const { return prec_; }

    // valuation of a nonzero element; throws for the zero flag
    long valuation() const;
    // valuation with zero mapped to the absolute precision (the best
    // lower bound the representation certifies)
    long valuation_or_prec() const { return zero_ ? prec_ : val_; }

    const Int& unit_part() const;

    Padic operator-() const;
    Padic operator+(const Padic& rhs) const;
    Padic operator-(const Padic& rhs) const;
    Padic operator*(const Padic& rhs) const;
    Padic inv() const;
    Padic pow(long e) const;

    // a == b at precision N := min(prec, rhs.prec) iff v_p(a - b) >= N
    bool eq(const Padic& rhs) const;
    bool is_unit() const { return !zero_ && val_ == 0; }

    // representative integer in [0, p^k) congruent to the value mod p^k;
    // requires valuation >= 0 and k <= precision
    Int residue(long k) const;

    // p-adic digit expansion, e.g. "…2103.2 (p=5)" style lists are
    // produced by the CLI; here we emit "p^v * u mod p^N"
    std::string to_string() const;

private:
    Padic(long p, bool zero, long val, Int unit, long prec)
        : p_(p), zero_(zero), val_(val), unit_(std::move(unit)), prec_(prec) {}

    void normalize();

    long p_ = 0;
    bool zero_ = true;
    long val_ = 0;
    Int unit_ = 0;
    long prec_ = 0;
};

/// p-adic unit root of X^2 - a_p X + p by Hensel lifting from the seed
/// a_p mod p. Requires p odd and p not dividing a_p.
Padic unit_root(long a_p, long p, long prec);

constexpr long kDefaultPrecision = 20;

} // namespace anticyclo
