#include "anticyclo/elliptic.hpp"

#include <map>
#include <mutex>
#include <set>
#include <tuple>
#include <vector>

namespace anticyclo {

namespace {

using Rat = boost::multiprecision::cpp_rational;
using Series = std::vector<Rat>;    // power series over Q, index = degree
using ISeries = std::vector<Int>;   // power series over Z

template <typename S>
S mul(const S& a, const S& b, std::size_t len) {
    S c(len, 0);
    for (std::size_t i = 0; i < a.size() && i < len; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

Series inverse(const Series& a, std::size_t len) {
    // requires a[0] != 0
    Series r(len, 0);
    r[0] = 1 / a[0];
    for (std::size_t k = 1; k < len; ++k) {
        Rat acc = 0;
        for (std::size_t j = 1; j <= k; ++j)
            if (j < a.size()) acc += a[j] * r[k - j];
        r[k] = -acc / a[0];
    }
    return r;
}

using CurveKey = std::tuple<Int, Int, Int, Int, Int>;
CurveKey curve_key(const CurveData& E) { return {E.a1, E.a2, E.a3, E.a4, E.a6}; }

// w(t) with x = t/w, y = -1/w, solved by fixed-point iteration of
// w = t^3 + a1 t w + a2 t^2 w + a3 w^2 + a4 t w^2 + a6 w^3
// (integral coefficients; cached per curve since the iteration is the
// dominant cost)
const ISeries& formal_w(const CurveData& E, std::size_t len) {
    static std::mutex mx;
    static std::map<std::pair<CurveKey, std::size_t>, ISeries> cache;
    std::lock_guard<std::mutex> lock(mx);
    auto key = std::make_pair(curve_key(E), len);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    ISeries w(len, 0);
    if (len > 3) w[3] = 1;
    bool stable = false;
    while (!stable) {
        ISeries w2 = mul(w, w, len);
        ISeries w3 = mul(w2, w, len);
        ISeries next(len, 0);
        if (len > 3) next[3] = 1;
        for (std::size_t i = 0; i + 1 < len; ++i) {
            next[i + 1] += E.a1 * w[i] + E.a4 * w2[i];
            if (i + 2 < len) next[i + 2] += E.a2 * w[i];
        }
        for (std::size_t i = 0; i < len; ++i) next[i] += E.a3 * w2[i] + E.a6 * w3[i];
        stable = (next == w);
        w = std::move(next);
    }
    return cache.emplace(key, std::move(w)).first->second;
}

// coefficients l_1..l_D of the logarithm series l(z) = sum l_i z^i,
// l_i = f_{i-1}/i where f dt is the invariant differential in the
// formal parameter
std::vector<Rat> log_coefficients(const CurveData& E, std::size_t D) {
    const std::size_t len = D + 1;
    const ISeries& w = formal_w(E, len + 3);
    Series u(len, 0); // w / t^3, constant term 1
    for (std::size_t i = 0; i < len; ++i) u[i] = Rat(w[i + 3]);
    Series uinv = inverse(u, len);
    Series uinv_d(len, 0); // t * d/dt(uinv)
    for (std::size_t i = 1; i < len; ++i) uinv_d[i] = Rat(i) * uinv[i];

    // x = t^-2 uinv; dx/dt = t^-3 (-2 uinv + t uinv');
    // 2y + a1 x + a3 = t^-3 (-2 uinv + a1 t uinv + a3 t^3)
    Series num(len, 0), den(len, 0);
    for (std::size_t i = 0; i < len; ++i) {
        num[i] = -2 * uinv[i] + uinv_d[i];
        den[i] = -2 * uinv[i];
        if (i >= 1) den[i] += Rat(E.a1) * uinv[i - 1];
    }
    if (len > 3) den[3] += Rat(E.a3);
    Series f = mul(num, inverse(den, len), len);

    std::vector<Rat> l(D + 1, 0);
    for (std::size_t i = 1; i <= D; ++i) l[i] = f[i - 1] / Rat(i);
    return l;
}

Padic eval_rat(long p, const Rat& r, long prec) {
    return Padic::from_rational(p, Int(boost::multiprecision::numerator(r)),
                                Int(boost::multiprecision::denominator(r)), prec);
}

} // namespace

Int CurveData::discriminant() const {
    Int B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
}

bool CurveData::good_reduction(long q) const { return discriminant() % q != 0; }

PointCount count_points_scan(const CurveData& E, long q) {
    if (!E.good_reduction(q)) throw BadReduction("bad reduction at q");
    auto md = [q](Int v) { v %= q; if (v < 0) v += q; return static_cast<long>(v); };
    long count = 1; // infinity
    for (long x = 0; x < q; ++x)
        for (long y = 0; y < q; ++y) {
            Int lhs = Int(y) * y + E.a1 * x * y + E.a3 * y;
            Int rhs = Int(x) * x * x + E.a2 * x * x + E.a4 * x + E.a6;
            if (md(lhs - rhs) == 0) ++count;
        }
    return {count, q + 1 - count};
}

PointCount count_points(const CurveData& E, long q) {
    if (!E.good_reduction(q)) throw BadReduction("bad reduction at q");
    if (q == 2) return count_points_scan(E, q);
    auto md = [q](Int v) { v %= q; if (v < 0) v += q; return static_cast<long>(v); };
    std::set<long> squares;
    for (long y = 0; y < q; ++y) squares.insert((y * y) % q);
    long count = 1;
    for (long x = 0; x < q; ++x) {
        // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
        long rhs = md(4 * Int(x) * x * x + E.b2() * x * x + 2 * E.b4() * x + E.b6());
        if (rhs == 0)
            count += 1;
        else if (squares.count(rhs))
            count += 2;
    }
    return {count, q + 1 - count};
}

bool is_good_ordinary(const CurveData& E, long p) {
    return count_points(E, p).a_q % p != 0;
}

bool anomalous_check(const CurveData& E, long p) {
    long r = count_points(E, p).a_q % p;
    if (r < 0) r += p;
    return r == 1;
}

bool on_curve(const CurveData& E, const LocalPoint& P) {
    if (P.infinity) return true;
    const long p = P.x.prime();
    const long prec = P.x.precision();
    auto c = [&](const Int& v) { return Padic::from_integer(p, v, prec); };
    auto lhs = P.y * P.y + c(E.a1) * P.x * P.y + c(E.a3) * P.y;
    auto rhs = P.x * P.x * P.x + c(E.a2) * P.x * P.x + c(E.a4) * P.x + c(E.a6);
    return lhs.eq(rhs);
}

LocalPoint point_negate(const CurveData& E, long p, long prec, const LocalPoint& P) {
    if (P.infinity) return P;
    auto c = [&](const Int& v) { return Padic::from_integer(p, v, prec); };
    return LocalPoint::affine(P.x, -P.y - c(E.a1) * P.x - c(E.a3));
}

LocalPoint point_add(const CurveData& E, const LocalPoint& P, const LocalPoint& Q) {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    const long p = P.x.prime();
    const long prec = P.x.precision();
    auto c = [&](const Int& v) { return Padic::from_integer(p, v, prec); };
    Padic lambda = Padic::zero(p, prec), nu = Padic::zero(p, prec);
    if (!P.x.eq(Q.x)) {
        lambda = (Q.y - P.y) * (Q.x - P.x).inv();
        nu = (P.y * Q.x - Q.y * P.x) * (Q.x - P.x).inv();
    } else {
        // same x: either inverse points (includes 2-torsion doubling) or
        // a genuine doubling
        Padic neg_y = -P.y - c(E.a1) * P.x - c(E.a3);
        if (Q.y.eq(neg_y)) return LocalPoint::at_infinity();
        Padic denom = P.y - neg_y; // 2y + a1 x + a3, nonzero here
        auto three = c(3), two = c(2);
        lambda = (three * P.x * P.x + two * c(E.a2) * P.x + c(E.a4) - c(E.a1) * P.y) * denom.inv();
        nu = (-(P.x * P.x * P.x) + c(E.a4) * P.x + two * c(E.a6) - c(E.a3) * P.y) * denom.inv();
    }
    Padic x3 = lambda * lambda + c(E.a1) * lambda - c(E.a2) - P.x - Q.x;
    Padic y3 = -(lambda + c(E.a1)) * x3 - nu - c(E.a3);
    return LocalPoint::affine(x3, y3);
}

LocalPoint point_mul(const CurveData& E, long m, const LocalPoint& P) {
    if (m < 0) throw BadInput("point_mul: negative multiplier");
    LocalPoint acc = LocalPoint::at_infinity();
    LocalPoint base = P;
    while (m > 0) {
        if (m & 1) acc = point_add(E, acc, base);
        base = point_add(E, base, base);
        m >>= 1;
    }
    return acc;
}

LocalPoint point_from_parameter(const CurveData& E, long p, const Padic& z, long prec) {
    if (z.is_zero()) return LocalPoint::at_infinity();
    if (z.valuation() < 1) throw BadInput("formal parameter must have valuation >= 1");
    // tail terms w_i z^i with i > prec sit below the working precision
    const std::size_t len = static_cast<std::size_t>(prec) + 4;
    const ISeries& w = formal_w(E, len);
    Padic acc = Padic::zero(p, prec);
    Padic zi = z.pow(3);
    for (std::size_t i = 3; i < len; ++i) {
        if (w[i] != 0) acc = acc + Padic::from_integer(p, w[i], prec) * zi;
        zi = zi * z;
    }
    Padic winv = acc.inv();
    return LocalPoint::affine(z * winv, -winv);
}

Padic formal_log(const CurveData& E, long p, const LocalPoint& P, long N) {
    if (!E.good_reduction(p)) throw BadReduction("bad reduction at p");
    if (anomalous_check(E, p)) throw AnomalousPrime("p divides #E(F_p)");
    if (P.infinity) return Padic::zero(p, N);
    if (!on_curve(E, P)) throw BadInput("point not on the curve at precision");

    const long m = count_points(E, p).count;
    LocalPoint Q = point_mul(E, m, P);
    if (Q.infinity) return Padic::zero(p, N); // prime-to-p torsion
    if (Q.x.is_zero() || Q.x.valuation() > -2)
        throw BadInput("multiple did not land in the kernel of reduction");

    Padic z = -(Q.x * Q.y.inv());
    const std::size_t D = static_cast<std::size_t>(2 * std::max(N, 2L));
    auto l = log_coefficients(E, D);
    const long prec = P.x.precision();
    Padic acc = Padic::zero(p, prec);
    Padic zi = z;
    for (std::size_t i = 1; i <= D; ++i) {
        if (l[i] != 0) acc = acc + eval_rat(p, l[i], prec) * zi;
        zi = zi * z;
    }
    // cap the reported precision at N: the series was truncated with a
    // tail bound certified only to p^N
    return acc * Padic::from_integer(p, m, prec).inv() + Padic::zero(p, N);
}

CokerSize coker_size_from_log(const Padic& log_y, long a_p) {
    const long p = log_y.prime();
    long r = a_p % p;
    if (r < 0) r += p;
    if (r == 1) throw AnomalousPrime("a_p = 1 mod p");
    if (log_y.is_zero()) throw ZeroLogarithm("logarithm vanishes at precision");
    long v = log_y.valuation();
    if (v < 1) throw OutOfRange("logarithm of an integral point has positive valuation");
    CokerSize out;
    out.p_exponent = v - 1;
    out.size = pow_int(p, out.p_exponent);
    return out;
}

} // namespace anticyclo
