#pragma once

#include "anticyclo/padic.hpp"

namespace anticyclo {

/// Integral Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
struct CurveData {
    Int a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;

    Int b2() const { return a1 * a1 + 4 * a2; }
    Int b4() const { return 2 * a4 + a1 * a3; }
    Int b6() const { return a3 * a3 + 4 * a6; }
    Int b8() const {
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    }
    Int discriminant() const;
    bool good_reduction(long q) const;
};

struct PointCount {
    long count = 0;
    long a_q = 0;
};

// #E(F_q) by looping over x with a quadratic-residue test on the
// completed square; a_q = q + 1 - #E(F_q)
PointCount count_points(const CurveData& E, long q);

// independent oracle: full scan of all (x, y) in F_q x F_q
PointCount count_points_scan(const CurveData& E, long q);

bool is_good_ordinary(const CurveData& E, long p);
// true iff a_p = 1 mod p, i.e. p divides #E(F_p)
bool anomalous_check(const CurveData& E, long p);

/// Point of E(Q_p) at tracked precision, or the point at infinity.
struct LocalPoint {
    bool infinity = true;
    Padic x, y;

    static LocalPoint at_infinity() { return LocalPoint{}; }
    static LocalPoint affine(Padic x, Padic y) { return LocalPoint{false, std::move(x), std::move(y)}; }
};

bool on_curve(const CurveData& E, const LocalPoint& P);
LocalPoint point_negate(const CurveData& E, long p, long prec, const LocalPoint& P);
LocalPoint point_add(const CurveData& E, const LocalPoint& P, const LocalPoint& Q);
LocalPoint point_mul(const CurveData& E, long m, const LocalPoint& P);

// point of the kernel of reduction with formal parameter z = -x/y
// (requires v_p(z) >= 1); inverse of the parameter map at precision
LocalPoint point_from_parameter(const CurveData& E, long p, const Padic& z, long prec);

/// Formal group logarithm of P in E(Q_p), to absolute precision N.
/// Computed by multiplying P into the kernel of reduction by
/// m = #E(F_p), evaluating the logarithm series at z = -x/y, and
/// dividing by m (a p-adic unit away from anomalous primes).
Padic formal_log(const CurveData& E, long p, const LocalPoint& P, long N);

/// p^(v(log_y) - 1), the cokernel size of the localization map attached
/// to a universal-norm generator with logarithm log_y.
struct CokerSize {
    long p_exponent = 0;
    Int size = 1;
};
CokerSize coker_size_from_log(const Padic& log_y, long a_p);

} // namespace anticyclo
