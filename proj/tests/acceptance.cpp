// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. All checks are exact at the stated p-adic precision.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>

#include "anticyclo/bsd.hpp"
#include "anticyclo/heegner.hpp"
#include "anticyclo/json_io.hpp"
#include "anticyclo/zmod_linalg.hpp"

using namespace anticyclo;

namespace {

int g_failures = 0;

void run_criterion(int idx, const char* name, const std::function<bool()>& body) {
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string error;
    try {
        ok = body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%2d] %-58s %s (%.2fs)%s%s\n", idx, name, ok ? "PASS" : "FAIL", secs,
                error.empty() ? "" : " error: ", error.c_str());
    if (!ok) ++g_failures;
}

// ---------------------------------------------------------------- helpers

Int rand_mod(std::mt19937_64& rng, const Int& mod) {
    Int acc = 0;
    for (int i = 0; i < 3; ++i) acc = (acc << 62) + Int(rng() & ((1ULL << 62) - 1));
    acc %= mod;
    if (acc < 0) acc += mod;
    return acc;
}

Padic rand_padic(std::mt19937_64& rng, long p, long prec, long max_val) {
    std::uniform_int_distribution<long> v(0, max_val);
    Int u = rand_mod(rng, pow_int(p, prec));
    while (u % p == 0) u += 1;
    return Padic::from_unit(p, u, v(rng), prec);
}

std::vector<GroupRingElement> all_r1_elements(long p) {
    std::vector<GroupRingElement> out;
    for (long a = 0; a < p; ++a)
        for (long b = 0; b < p; ++b)
            for (long c = 0; c < p; ++c) out.push_back(GroupRingElement(p, 1, {a, b, c}));
    return out;
}

GroupRingElement rand_r(std::mt19937_64& rng, long p, long n) {
    const long m = static_cast<long>(pow_int(p, n));
    const Int mod = pow_int(p, std::max(n, 1L));
    std::vector<Int> c(static_cast<std::size_t>(m));
    for (auto& x : c) x = rand_mod(rng, mod);
    return GroupRingElement(p, n, std::move(c));
}

// integer column-echelon membership oracle: f lies in the Z-span of the
// given columns together with p^e Z^m, decided by forward substitution
struct EchelonOracle {
    std::vector<std::vector<Int>> cols; // echelon columns, pivot rows ascending
    std::vector<std::size_t> pivot_row;

    EchelonOracle(std::vector<std::vector<Int>> input, const Int& mod) {
        const std::size_t m = input[0].size();
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<Int> unit(m, 0);
            unit[i] = mod;
            input.push_back(unit);
        }
        std::size_t start = 0;
        for (std::size_t r = 0; r < m && start < input.size(); ++r) {
            // gcd-eliminate row r across columns start..end
            while (true) {
                std::size_t a = input.size();
                for (std::size_t j = start; j < input.size(); ++j)
                    if (input[j][r] != 0 &&
                        (a == input.size() ||
                         boost::multiprecision::abs(input[j][r]) <
                             boost::multiprecision::abs(input[a][r])))
                        a = j;
                if (a == input.size()) break; // row has no pivot
                bool reduced_all = true;
                for (std::size_t j = start; j < input.size(); ++j) {
                    if (j == a || input[j][r] == 0) continue;
                    Int qt = input[j][r] / input[a][r];
                    for (std::size_t i = 0; i < m; ++i) input[j][i] -= qt * input[a][i];
                    if (input[j][r] != 0) reduced_all = false;
                }
                if (reduced_all) {
                    std::swap(input[a], input[start]);
                    cols.push_back(input[start]);
                    pivot_row.push_back(r);
                    ++start;
                    break;
                }
            }
        }
    }

    bool contains(const std::vector<Int>& f) const {
        std::vector<Int> g = f;
        for (std::size_t k = 0; k < cols.size(); ++k) {
            std::size_t r = pivot_row[k];
            if (g[r] == 0) continue;
            if (g[r] % cols[k][r] != 0) return false;
            Int qt = g[r] / cols[k][r];
            for (std::size_t i = 0; i < g.size(); ++i) g[i] -= qt * cols[k][i];
        }
        for (const auto& x : g)
            if (x != 0) return false;
        return true;
    }
};

// columns of multiplication by g on R_n in the T basis
std::vector<std::vector<Int>> mult_columns(const GroupRingElement& g) {
    const long m = g.group_order();
    GroupRingElement t = GroupRingElement::monomial(g.prime(), g.level(), 1);
    std::vector<std::vector<Int>> cols;
    GroupRingElement col = g;
    for (long j = 0; j < m; ++j) {
        cols.push_back(col.coeffs());
        if (j + 1 < m) col = col * t;
    }
    return cols;
}

// random element of the kernel of x -> a * x over R_n
GroupRingElement kernel_sample(std::mt19937_64& rng, const GroupRingElement& a) {
    const long p = a.prime();
    const long n = a.level();
    const long e = a.coeff_exponent();
    const long m = a.group_order();
    auto cols = mult_columns(a);
    zmod::Mat M(static_cast<std::size_t>(m), zmod::Vec(static_cast<std::size_t>(m), 0));
    for (long i = 0; i < m; ++i)
        for (long j = 0; j < m; ++j)
            M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    auto d = zmod::diagonalize(M, p, e);
    const Int mod = pow_int(p, e);
    std::vector<Int> w(static_cast<std::size_t>(m), 0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        long dv = i < d.diag_vals.size() ? d.diag_vals[i] : e;
        w[i] = pow_int(p, std::max(e - dv, 0L)) * rand_mod(rng, mod) % mod;
    }
    std::vector<Int> x(static_cast<std::size_t>(m), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) x[i] += d.V[i][j] * w[j];
        x[i] %= mod;
        if (x[i] < 0) x[i] += mod;
    }
    return GroupRingElement(p, n, x);
}

PadicMat rand_alternating(std::mt19937_64& rng, std::size_t n, long p, long prec) {
    PadicMat m(n, n, Padic::zero(p, prec));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Padic x = rand_padic(rng, p, prec, 2);
            m.at(i, j) = x;
            m.at(j, i) = -x;
        }
    return m;
}

BSDInput rank_one_bsd(long p, long prec, long a_p, const Int& sha, std::vector<Int> tam,
                      const Int& t, const Padic& log_y) {
    BSDInput in;
    in.p = p;
    in.a_p = a_p;
    in.r_plus = 1;
    in.r_minus = 0;
    in.sha = sha;
    in.tamagawa = std::move(tam);
    in.log_y = log_y;
    in.heights.r_plus = 1;
    in.heights.r_minus = 0;
    in.heights.H = {PadicMat(1, 1, Padic::zero(p, prec))};
    in.heights.t = Padic::from_integer(p, t, prec);
    in.heights.t_prime = in.heights.t;
    return in;
}

// ---------------------------------------------------------------- criteria

bool criterion_norm_compat() {
    std::mt19937_64 rng(20260823);
    for (long p : {3L, 5L, 7L}) {
        std::set<long> used;
        int done = 0;
        while (done < 5) {
            long a_p = static_cast<long>(rng() % (10 * static_cast<unsigned long>(p))) - 5 * p;
            long r = ((a_p % p) + p) % p;
            if (r == 0 || r == 1 || used.count(a_p)) continue;
            used.insert(a_p);
            ++done;
            auto sys = generate_heegner_system(p, a_p, 4, 20, rng());
            auto alpha = unit_root(a_p, p, 20);
            auto z = regularize(sys, alpha);
            for (long n = 0; n < 4; ++n)
                if (!vec_eq(norm_map(z[static_cast<std::size_t>(n) + 1], p, n),
                            z[static_cast<std::size_t>(n)]))
                    return false;
        }
    }
    return true;
}

bool criterion_ordj_oracle() {
    const long p = 3;
    // n = 1: exhaustive ideal enumeration
    auto all = all_r1_elements(p);
    for (long k = 0; k <= 3; ++k) {
        std::set<std::vector<Int>> ideal;
        GroupRingElement tk = k == 0 ? GroupRingElement::one(p, 1)
                                     : GroupRingElement::monomial(p, 1, k);
        for (const auto& g : all) ideal.insert((tk * g).coeffs());
        for (const auto& f : all)
            if (in_augmentation_power(f, k) != (ideal.count(f.coeffs()) == 1)) return false;
    }
    // n = 2: independent integer-echelon membership oracle, 200 elements
    std::mt19937_64 rng(417);
    const Int mod = pow_int(p, 2);
    std::vector<EchelonOracle> oracles;
    for (long k = 0; k <= 6; ++k) {
        GroupRingElement tk = k == 0 ? GroupRingElement::one(p, 2)
                                     : GroupRingElement::monomial(p, 2, k);
        oracles.emplace_back(mult_columns(tk), mod);
    }
    for (int trial = 0; trial < 200; ++trial) {
        GroupRingElement f = rand_r(rng, p, 2);
        if (trial % 2 == 0) f = f * GroupRingElement::monomial(p, 2, 1 + trial % 4);
        for (long k = 0; k <= 6; ++k)
            if (in_augmentation_power(f, k) != oracles[static_cast<std::size_t>(k)].contains(f.coeffs()))
                return false;
    }
    return true;
}

bool criterion_derivative_pairing() {
    const long p = 3;
    // exhaustive at n = 1
    auto all = all_r1_elements(p);
    auto t1 = GroupRingElement::monomial(p, 1, 1);
    for (long k = 1; k <= 3; ++k) {
        auto dk1 = derivative_operator(p, 1, k - 1);
        for (const auto& x : all) {
            if (!(t1 * (dk1 * x)).is_zero()) continue;
            for (const auto& y : all) {
                if (y.augmentation() % p != 0) continue;
                if (!in_augmentation_power(equivariant_pairing(RnVec{x}, RnVec{y}), k))
                    return false;
            }
        }
    }
    // randomized at n = 2: sample x directly from the hypothesis kernel
    std::mt19937_64 rng(5150);
    auto t2 = GroupRingElement::monomial(p, 2, 1);
    for (int trial = 0; trial < 500; ++trial) {
        long k = 1 + trial % 3;
        auto cond = t2 * derivative_operator(p, 2, k - 1);
        GroupRingElement x = kernel_sample(rng, cond);
        if (!(cond * x).is_zero()) return false;
        GroupRingElement y = rand_r(rng, p, 2);
        y = y - GroupRingElement::one(p, 2).scaled(y.augmentation());
        if (!in_augmentation_power(equivariant_pairing(RnVec{x}, RnVec{y}), k)) return false;
    }
    return true;
}

bool criterion_pfaffian_adjugate() {
    const long p = 5, prec = 10;
    std::mt19937_64 rng(808017);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 2 * (1 + trial % 3);
        PadicMat m = rand_alternating(rng, n, p, prec);
        Padic pf = pfaffian(m);
        if (!(pf * pf).eq(padic_det(m))) return false;
    }
    const Padic one = Padic::from_integer(p, 1, prec);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 3 + trial % 3;
        PadicMat m(n, n, Padic::zero(p, prec));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (rng() % 5 != 0) m.at(i, j) = rand_padic(rng, p, prec, 1);
        PadicMat adj = adjugate(m, one);
        Padic det = det_cofactor(m);
        PadicMat prod = m * adj;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (!prod.at(i, j).eq(i == j ? det : Padic::zero(p, prec))) return false;
    }
    return true;
}

bool criterion_fitting() {
    const long p = 3;
    auto all = all_r1_elements(p);
    std::mt19937_64 rng(90210);
    for (int trial = 0; trial < 50; ++trial) {
        GroupRingMat m(2, 2, GroupRingElement::zero(p, 1));
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) m.at(i, j) = rand_r(rng, p, 1);
        GroupRingElement fit = fitting_ideal(m);
        GroupRingElement det = m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
        std::set<std::vector<Int>> ideal_fit, ideal_det;
        for (const auto& g : all) {
            ideal_fit.insert((fit * g).coeffs());
            ideal_det.insert((det * g).coeffs());
        }
        if (ideal_fit != ideal_det) return false;
    }
    return true;
}

bool criterion_elliptic() {
    CurveData E{0, 0, 0, 1, 1};
    if (count_points(E, 5).a_q != -3) return false;
    if (count_points_scan(E, 5).a_q != -3) return false;
    for (long q = 2; q <= 50; ++q) {
        bool prime = q >= 2;
        for (long d = 2; d * d <= q; ++d)
            if (q % d == 0) prime = false;
        if (!prime || !E.good_reduction(q)) continue;
        PointCount a = count_points(E, q);
        PointCount b = count_points_scan(E, q);
        if (a.count != b.count || a.a_q != b.a_q) return false;
        if (static_cast<double>(a.a_q) * a.a_q > 4.0 * q) return false;
    }
    const long p = 5, N = 8, work = 60;
    std::mt19937_64 rng(343);
    for (int trial = 0; trial < 20; ++trial) {
        Padic z1 = Padic::from_unit(p, 1 + rng() % 4 + p * (rng() % 100), 1 + rng() % 2, work);
        Padic z2 = Padic::from_unit(p, 1 + rng() % 4 + p * (rng() % 100), 1 + rng() % 2, work);
        LocalPoint P = point_from_parameter(E, p, z1, work);
        LocalPoint Q = point_from_parameter(E, p, z2, work);
        Padic lp = formal_log(E, p, P, N);
        Padic lq = formal_log(E, p, Q, N);
        if (!formal_log(E, p, point_add(E, P, Q), N).eq(lp + lq)) return false;
        if (!formal_log(E, p, point_mul(E, 2, P), N).eq(lp + lp)) return false;
    }
    return true;
}

bool criterion_regulators() {
    const long p = 5, prec = 14;
    std::mt19937_64 rng(777321);
    const Padic one = Padic::from_integer(p, 1, prec);
    long sign_discrepancies = 0;
    for (int trial = 0; trial < 100; ++trial) {
        // corank >= 2 kills the enhanced regulator
        {
            std::size_t r = 3 + trial % 2;
            PadicMat h(r, r, Padic::zero(p, prec));
            for (std::size_t i = 0; i + 2 < r; ++i)
                for (std::size_t j = i; j + 2 < r; ++j)
                    h.at(j, i) = h.at(i, j) = rand_padic(rng, p, prec, 1);
            EnhancedRegulator er = enhanced_regulator(h, one);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j)
                    if (!er.coeff.at(i, j).is_zero()) return false;
        }
        // isotropic block identity det[[0,B],[B^T,0]] = (-1)^s det(B)^2
        {
            std::size_t s = 1 + trial % 3;
            PadicMat b(s, s, Padic::zero(p, prec));
            for (std::size_t i = 0; i < s; ++i)
                for (std::size_t j = 0; j < s; ++j) b.at(i, j) = rand_padic(rng, p, prec, 1);
            PadicMat m(2 * s, 2 * s, Padic::zero(p, prec));
            for (std::size_t i = 0; i < s; ++i)
                for (std::size_t j = 0; j < s; ++j) {
                    m.at(i, s + j) = b.at(i, j);
                    m.at(s + j, i) = b.at(i, j);
                }
            Padic db = padic_det(b);
            Padic dm = padic_det(m);
            Padic signed_sq = (s % 2 == 0) ? db * db : -(db * db);
            if (!dm.eq(signed_sq)) return false;
            if (s % 2 == 1 && !db.is_zero()) ++sign_discrepancies;
        }
        // derived regulator = (r, r) cofactor when |r+ - r-| = 1
        {
            std::size_t r = 3 + trial % 2;
            PadicMat M(r - 1, r - 1, Padic::zero(p, prec));
            for (std::size_t i = 0; i + 1 < r; ++i)
                for (std::size_t j = i; j + 1 < r; ++j) M.at(j, i) = M.at(i, j) = rand_padic(rng, p, prec, 1);
            if (padic_det(M).is_zero()) continue;
            PadicMat h(r, r, Padic::zero(p, prec));
            for (std::size_t i = 0; i + 1 < r; ++i)
                for (std::size_t j = 0; j + 1 < r; ++j) h.at(i, j) = M.at(i, j);
            HeightSystem sys;
            sys.r_plus = static_cast<long>(r + 1) / 2;
            sys.r_minus = static_cast<long>(r) - sys.r_plus; // |r+ - r-| = 1
            sys.H = {h};
            sys.t = Padic::from_integer(p, 3, prec);
            sys.t_prime = sys.t;
            GradedValue der = derived_enhanced_regulator(sys);
            EnhancedRegulator er = enhanced_regulator(h, sys.t_prime);
            if (!der.coeff.eq(er.coeff.at(r - 1, r - 1))) return false;
        }
    }
    std::printf("     note: odd isotropic blocks give det = -det(B)^2 in %ld/100 trials\n",
                sign_discrepancies);
    return true;
}

bool criterion_bsd_pipeline() {
    const long p = 5, prec = 16;
    std::mt19937_64 rng(24601);
    for (int trial = 0; trial < 100; ++trial) {
        Int u = 1 + rng() % 4, c = 1 + rng() % 4, cl = 1 + rng() % 4;
        Int sha = pow_int(p, 2 * (rng() % 2));
        Int index = u * c * cl;
        if (sha > 1) index *= p;
        bool tweak = trial % 2 == 1;
        if (tweak) index *= 2;
        Padic log_y = Padic::from_integer(p, static_cast<long>(1 + rng() % 4) * p, prec);
        auto in = rank_one_bsd(p, prec, 2, sha, {cl}, index, log_y);
        GradedValue pred = predict_conjecture_BSD(in);
        Padic direct = bdp_value(u, c, 2, p, log_y);
        bool consistent = rank_one_consistency(index, u, c, sha, {cl});
        if (consistent != !tweak) return false;
        if (direct.eq(pred.coeff) != consistent) return false;
    }
    // valuation agreement with the up-to-unit formula when all factors are units
    for (int trial = 0; trial < 20; ++trial) {
        Int sha = pow_int(p, rng() % 3);
        Int cl = 1 + rng() % 4, t = 1 + rng() % 4;
        Padic log_y = Padic::from_unit(p, 1 + rng() % 4, 1 + rng() % 3, prec);
        auto in = rank_one_bsd(p, prec, 2 + static_cast<long>(rng() % 3), sha, {cl}, t, log_y);
        if (theorem_A_value(in).valuation != predict_conjecture_BSD(in).coeff.valuation())
            return false;
    }
    return true;
}

bool criterion_admissible() {
    CurveData E{0, 0, 0, 1, 1};
    const long p = 5;
    const Int DK = -7;
    auto found = admissible_search(E, DK, p, 1, 200);
    std::set<long> got;
    for (const auto& cert : found) {
        got.insert(cert.q);
        // re-verify each certificate independently
        bool nonsquare = true;
        for (long x = 0; x < cert.q; ++x)
            if ((Int(x) * x - DK) % cert.q == 0) nonsquare = false;
        if (!nonsquare || DK % cert.q == 0) return false;
        long r = cert.q % p;
        if (r == 1 || r == p - 1) return false;
        long aq = count_points_scan(E, cert.q).a_q;
        if (aq != cert.a_q) return false;
        if ((Int(cert.q) + 1 - aq) % p != 0 && (Int(cert.q) + 1 + aq) % p != 0) return false;
    }
    // no omitted prime satisfies all three conditions
    for (long q = 3; q <= 200; ++q) {
        bool prime = true;
        for (long d = 2; d * d <= q; ++d)
            if (q % d == 0) prime = false;
        if (!prime || q == p || !E.good_reduction(q) || got.count(q)) continue;
        bool nonsquare = true;
        for (long x = 0; x < q; ++x)
            if ((Int(x) * x - DK) % q == 0) nonsquare = false;
        if (!nonsquare || DK % q == 0) continue;
        long r = q % p;
        if (r == 1 || r == p - 1) continue;
        long aq = count_points_scan(E, q).a_q;
        if ((Int(q) + 1 - aq) % p == 0 || (Int(q) + 1 + aq) % p == 0) return false;
    }
    return true;
}

bool criterion_sel_quotient() {
    const long p = 5, prec = 16;
    std::mt19937_64 rng(10101);
    for (int trial = 0; trial < 100; ++trial) {
        long v = 1 + static_cast<long>(rng() % 4);
        Int sha = pow_int(p, rng() % 3) * (1 + 2 * (rng() % 2)); // may carry a unit part
        Padic log_y = Padic::from_unit(p, 1 + rng() % 4, v, prec);
        CokerSize ck = coker_size_from_log(log_y, 2);
        if (ck.p_exponent != v - 1) return false;
        Int via_coker = sha_p_part(sha, p) * ck.size * ck.size;
        if (via_coker != selmer_quotient_order(sha, p, v)) return false;
    }
    return true;
}

} // namespace

int main() {
    run_criterion(1, "norm compatibility of regularized points", criterion_norm_compat);
    run_criterion(2, "ord_J normal form vs independent membership oracles", criterion_ordj_oracle);
    run_criterion(3, "derivative-operator pairing lands in J^k", criterion_derivative_pairing);
    run_criterion(4, "Pfaffian square and adjugate identities", criterion_pfaffian_adjugate);
    run_criterion(5, "Fitting ideal equals the determinant ideal", criterion_fitting);
    run_criterion(6, "elliptic counts, Hasse bound, formal log additivity", criterion_elliptic);
    run_criterion(7, "regulator stack: corank, blocks, derived cofactor", criterion_regulators);
    run_criterion(8, "rank-one pipeline and up-to-unit valuations", criterion_bsd_pipeline);
    run_criterion(9, "admissible primes re-verified both directions", criterion_admissible);
    run_criterion(10, "Selmer quotient order via both evaluation paths", criterion_sel_quotient);
    if (g_failures > 0) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
