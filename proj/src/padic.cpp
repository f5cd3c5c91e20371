#include "anticyclo/padic.hpp"

#include <utility>

namespace anticyclo {

Int pow_int(long p, long e) {
    if (e < 0) throw BadInput("pow_int: negative exponent");
    Int r = 1, b = p;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

Int mod_inverse(Int a, const Int& m) {
    a %= m;
    if (a < 0) a += m;
    // extended Euclid
    Int r0 = m, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        Int s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1) throw DivisionByZero("mod_inverse: not invertible");
    s0 %= m;
    if (s0 < 0) s0 += m;
    return s0;
}

long int_valuation(Int x, long p) {
    if (x == 0) throw BadInput("int_valuation of zero");
    long v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

Padic Padic::zero(long p, long prec) {
    return Padic(p, true, 0, 0, prec);
}

Padic Padic::from_integer(long p, const Int& value, long prec) {
    if (prec < 1) throw PrecisionExhausted("from_integer: precision < 1");
    if (value == 0) return zero(p, prec);
    long v = int_valuation(value, p);
    if (v >= prec) return zero(p, prec);
    Int u = value / pow_int(p, v);
    Int m = pow_int(p, prec - v);
    u %= m;
    if (u < 0) u += m;
    return Padic(p, false, v, std::move(u), prec);
}

Padic Padic::from_rational(long p, const Int& num, const Int& den, long prec) {
    if (den == 0) throw DivisionByZero("from_rational: zero denominator");
    Padic n = from_integer(p, num, prec);
    long vd = int_valuation(den, p);
    // shift precision so the quotient still carries `prec` digits
    Padic d = from_integer(p, den, prec + 2 * (vd > 0 ? vd : 0) + 1);
    Padic q = n * d.inv();
    return q;
}

Padic Padic::from_unit(long p, const Int& unit, long val, long prec) {
    if (prec - val < 1) throw PrecisionExhausted("from_unit: no unit digits");
    Int m = pow_int(p, prec - val);
    Int u = unit % m;
    if (u < 0) u += m;
    if (u % p == 0) throw BadInput("from_unit: unit divisible by p");
    return Padic(p, false, val, std::move(u), prec);
}

long Padic::valuation() const {
    if (zero_) throw BadInput("valuation of zero is +infinity");
    return val_;
}

const Int& Padic::unit_part() const {
    if (zero_) throw BadInput("unit_part of zero");
    return unit_;
}

void Padic::normalize() {
    if (zero_) return;
    long rel = prec_ - val_;
    if (rel < 1) {
        zero_ = true;
        val_ = 0;
        unit_ = 0;
        return;
    }
    Int m = pow_int(p_, rel);
    unit_ %= m;
    if (unit_ < 0) unit_ += m;
    if (unit_ == 0) {
        zero_ = true;
        val_ = 0;
        return;
    }
    long shift = 0;
    while (unit_ % p_ == 0) {
        unit_ /= p_;
        ++shift;
    }
    if (shift > 0) {
        val_ += shift;
        normalize();
    }
}

Padic Padic::operator-() const {
    if (zero_) return *this;
    Int m = pow_int(p_, prec_ - val_);
    return Padic(p_, false, val_, m - unit_, prec_);
}

Padic Padic::operator+(const Padic& rhs) const {
    if (p_ != rhs.p_) throw PrimeMismatch();
    long N = std::min(prec_, rhs.prec_);
    if (zero_ && rhs.zero_) return zero(p_, N);
    if (zero_) {
        Padic r = rhs;
        r.prec_ = N;
        r.normalize();
        return r;
    }
    if (rhs.zero_) {
        Padic r = *this;
        r.prec_ = N;
        r.normalize();
        return r;
    }
    long v = std::min(val_, rhs.val_);
    if (N - v < 1) return zero(p_, N);
    Int m = pow_int(p_, N - v);
    Int s = unit_ * pow_int(p_, val_ - v) + rhs.unit_ * pow_int(p_, rhs.val_ - v);
    s %= m;
    if (s < 0) s += m;
    Padic r(p_, false, v, std::move(s), N);
    if (r.unit_ == 0) return zero(p_, N);
    r.normalize();
    return r;
}

Padic Padic::operator-(const Padic& rhs) const { return *this + (-rhs); }

Padic Padic::operator*(const Padic& rhs) const {
    if (p_ != rhs.p_) throw PrimeMismatch();
    if (zero_ || rhs.zero_) {
        long va = zero_ ? prec_ : val_;
        long vb = rhs.zero_ ? rhs.prec_ : rhs.val_;
        long N = va + vb;
        return zero(p_, N < 1 ? 1 : N);
    }
    long rel = std::min(prec_ - val_, rhs.prec_ - rhs.val_);
    long v = val_ + rhs.val_;
    if (rel < 1) throw PrecisionExhausted("mul: no unit digits left");
    if (v + rel < 1) throw PrecisionExhausted("mul: absolute precision below 1");
    Int m = pow_int(p_, rel);
    Int u = (unit_ * rhs.unit_) % m;
    return Padic(p_, false, v, std::move(u), v + rel);
}

Padic Padic::inv() const {
    if (zero_) throw DivisionByZero("inv(0)");
    long rel = prec_ - val_;
    long N = rel - val_;
    if (N < 1) throw PrecisionExhausted("inv: absolute precision below 1");
    Int m = pow_int(p_, rel);
    return Padic(p_, false, -val_, mod_inverse(unit_, m), N);
}

Padic Padic::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    if (e == 0) {
        long rel = zero_ ? prec_ : prec_ - val_;
        return from_integer(p_, 1, rel < 1 ? 1 : rel);
    }
    Padic b = *this;
    Padic acc = b;
    --e;
    while (e > 0) {
        if (e & 1) acc = acc * b;
        b = b * b;
        e >>= 1;
    }
    return acc;
}

bool Padic::eq(const Padic& rhs) const {
    Padic d = *this - rhs;
    return d.is_zero();
}

Int Padic::residue(long k) const {
    if (k < 0) throw BadInput("residue: negative k");
    if (zero_) {
        if (k > prec_) throw PrecisionExhausted("residue beyond precision");
        return 0;
    }
    if (val_ < 0) throw BadInput("residue of element with negative valuation");
    if (k > prec_) throw PrecisionExhausted("residue beyond precision");
    Int m = pow_int(p_, k);
    Int r = (unit_ * pow_int(p_, val_)) % m;
    return r;
}

std::string Padic::to_string() const {
    if (zero_) return "O(" + std::to_string(p_) + "^" + std::to_string(prec_) + ")";
    std::string s = std::to_string(p_) + "^" + std::to_string(val_) + " * " + unit_.str();
    s += " + O(" + std::to_string(p_) + "^" + std::to_string(prec_) + ")";
    return s;
}

Padic unit_root(long a_p, long p, long prec) {
    if (p == 2) throw OddPrimeOnly();
    if (a_p % p == 0) throw NotOrdinary("unit_root: p divides a_p");
    if (prec < 1) throw PrecisionExhausted("unit_root: precision < 1");
    Int x = a_p % p;
    if (x < 0) x += p;
    long cur = 1;
    while (cur < prec) {
        cur = std::min(2 * cur, prec);
        Int m = pow_int(p, cur);
        Int f = (x * x - a_p * x + p) % m;
        Int df = (2 * x - a_p) % m;
        if (df < 0) df += m;
        x = (x - f * mod_inverse(df, m)) % m;
        if (x < 0) x += m;
    }
    // final correctness pass at full modulus
    Int m = pow_int(p, prec);
    Int f = (x * x - a_p * x + p) % m;
    if (f != 0) {
        Int df = (2 * x - a_p) % m;
        if (df < 0) df += m;
        x = (x - f * mod_inverse(df, m)) % m;
        if (x < 0) x += m;
    }
    return Padic::from_unit(p, x, 0, prec);
}

} // namespace anticyclo
