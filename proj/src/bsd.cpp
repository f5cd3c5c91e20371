#include "anticyclo/bsd.hpp"

#include <boost/multiprecision/integer.hpp>

#include "anticyclo/zmod_linalg.hpp"

namespace anticyclo {

namespace {

void validate(const BSDInput& in) {
    if (in.p < 3) throw OddPrimeOnly("p must be an odd prime");
    if (in.sha <= 0) throw BadInput("sha order must be positive");
    if (in.r_plus < 0 || in.r_minus < 0) throw BadInput("negative eigenspace rank");
    if (in.heegner_hypothesis && (in.r_plus + in.r_minus) % 2 == 0)
        throw BadInput("root number -1 forces odd rank");
}

long rho_of(const BSDInput& in) {
    long mx = std::max(in.r_plus, in.r_minus);
    if (mx < 1) throw BadInput("rank must be at least one");
    return mx - 1;
}

Padic tamagawa_square(const BSDInput& in, long prec) {
    Padic acc = Padic::from_integer(in.p, 1, prec);
    for (const auto& c : in.tamagawa) {
        if (c <= 0) throw BadInput("Tamagawa numbers are positive");
        Padic cp = Padic::from_integer(in.p, c, prec);
        acc = acc * cp * cp;
    }
    return acc;
}

} // namespace

Padic euler_factor(long p, long a_p, long prec) {
    return Padic::from_rational(p, Int(1) - a_p + p, p, prec);
}

Int sha_p_part(const Int& sha, long p) {
    if (sha <= 0) throw BadInput("sha order must be positive");
    Int out = 1;
    Int s = sha;
    while (s % p == 0) {
        s /= p;
        out *= p;
    }
    return out;
}

Padic bdp_value(const Int& u_K, const Int& c_E, long a_p, long p, const Padic& log_zK) {
    if (u_K % p == 0 || c_E % p == 0) throw NonUnitFactors("p divides u_K or c_E");
    const long prec = log_zK.precision();
    if (log_zK.is_zero()) return Padic::zero(p, prec);
    Padic e = euler_factor(p, a_p, prec);
    Padic scale = Padic::from_integer(p, u_K * c_E, prec).inv();
    return scale * scale * e * e * log_zK * log_zK;
}

GradedValue predict_conjecture_BSD(const BSDInput& in) {
    validate(in);
    const long rho = rho_of(in);
    const long prec = in.log_y.precision();
    Padic e = euler_factor(in.p, in.a_p, prec);
    GradedValue reg = derived_regulator_p(in.heights, in.log_y, in.heights.t);
    Padic coeff = e * e * reg.coeff * Padic::from_integer(in.p, sha_p_part(in.sha, in.p), prec) *
                  tamagawa_square(in, prec);
    return {2 * rho, coeff};
}

SqrtPrediction predict_conjecture_BSD_sqrt(const BSDInput& in) {
    validate(in);
    const long rho = rho_of(in);
    const long prec = in.log_y.precision();
    if (in.log_y.is_zero()) throw ZeroLogarithm("universal norm generator has zero logarithm");
    Padic e = euler_factor(in.p, in.a_p, prec);

    SqrtPrediction out;
    long sha_exp = int_valuation(sha_p_part(in.sha, in.p), in.p);
    out.non_square_sha = (sha_exp % 2 != 0);
    Padic sqrt_sha = Padic::from_integer(in.p, pow_int(in.p, sha_exp / 2), prec);

    Padic tam = Padic::from_integer(in.p, 1, prec);
    for (const auto& c : in.tamagawa) {
        if (c <= 0) throw BadInput("Tamagawa numbers are positive");
        tam = tam * Padic::from_integer(in.p, c, prec);
    }

    SqrtRegulator sr = sqrt_regulator(in.heights);
    out.value = {rho, e * in.log_y * sr.value.coeff * sqrt_sha * tam};
    out.sign_ambiguous = true;
    return out;
}

TheoremAValue theorem_A_value(const BSDInput& in) {
    validate(in);
    if ((in.a_p % in.p + in.p) % in.p == 1)
        throw AnomalousPrime("a_p = 1 mod p");
    if (in.log_y.is_zero()) throw ZeroLogarithm("zero logarithm");
    const long rho = rho_of(in);

    FiltrationReport rep = compute_filtration(in.heights.H, in.heights.rank());
    long reg_val = 0;
    for (const auto& r : rep.partial_regs) {
        if (r.is_zero()) throw PrecisionExhausted("partial regulator vanishes at precision");
        reg_val += r.valuation();
    }
    if (in.heights.t.is_zero()) throw BadInput("index factor t must be nonzero");

    TheoremAValue out;
    out.order_bound = 2 * rho;
    out.valuation = -2 + 2 * in.log_y.valuation() + reg_val - 2 * in.heights.t.valuation() +
                    int_valuation(sha_p_part(in.sha, in.p), in.p);
    return out;
}

Int selmer_quotient_order(const Int& sha, long p, long log_valuation) {
    if (log_valuation < 1) throw OutOfRange("logarithm valuation must be at least 1");
    return sha_p_part(sha, p) * pow_int(p, 2 * (log_valuation - 1));
}

bool rank_one_consistency(const Int& index, const Int& u_K, const Int& c_E, const Int& sha,
                          const std::vector<Int>& tamagawa) {
    if (index <= 0 || u_K <= 0 || c_E <= 0 || sha <= 0) throw BadInput("positive integers required");
    Int rhs = u_K * u_K * c_E * c_E * sha;
    for (const auto& c : tamagawa) {
        if (c <= 0) throw BadInput("positive integers required");
        rhs *= c * c;
    }
    return index * index == rhs;
}

int kronecker_symbol(const Int& a, long q) {
    if (q == 2) {
        if (a % 2 == 0) return 0;
        Int r = a % 8;
        if (r < 0) r += 8;
        return (r == 1 || r == 7) ? 1 : -1;
    }
    Int r = a % q;
    if (r < 0) r += q;
    if (r == 0) return 0;
    // Euler's criterion for odd prime q
    Int e = boost::multiprecision::powm(r, Int((q - 1) / 2), Int(q));
    return e == 1 ? 1 : -1;
}

namespace {

bool is_fundamental_discriminant(const Int& D) {
    if (D == 0 || D == 1) return false;
    auto squarefree = [](Int x) {
        if (x < 0) x = -x;
        for (Int d = 2; d * d <= x; ++d)
            if (x % (d * d) == 0) return false;
        return true;
    };
    Int r = D % 4;
    if (r < 0) r += 4;
    if (r == 1) return squarefree(D);
    if (r == 0) {
        Int d = D / 4;
        Int s = d % 4;
        if (s < 0) s += 4;
        return (s == 2 || s == 3) && squarefree(d);
    }
    return false;
}

bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

std::vector<AdmissiblePrime> admissible_search(const CurveData& E, const Int& D_K, long p,
                                               long m, long bound) {
    if (!is_fundamental_discriminant(D_K)) throw BadDiscriminant("not a fundamental discriminant");
    if (D_K % p == 0) throw BadDiscriminant("discriminant not coprime to p");
    if (m < 1 || bound < 2) throw BadInput("need m >= 1 and bound >= 2");

    const Int pm = pow_int(p, m);
    std::vector<AdmissiblePrime> out;
    for (long q = 2; q <= bound; ++q) {
        if (!is_prime_long(q) || q == p) continue;
        if (!E.good_reduction(q)) continue; // q | N excluded
        int kron = kronecker_symbol(D_K, q);
        if (kron != -1) continue; // split or ramified in K
        long qp = q % p;
        if (qp == 1 || qp == p - 1) continue;
        long a_q = count_points(E, q).a_q;
        bool minus = (Int(q) + 1 - a_q) % pm == 0;
        bool plus = (Int(q) + 1 + a_q) % pm == 0;
        if (!minus && !plus) continue;
        out.push_back({q, a_q, kron, qp, minus, plus});
    }
    return out;
}

bool restriction_injective(const std::vector<std::vector<Int>>& M, long p, long m) {
    if (M.empty() || M[0].empty()) throw BadInput("empty restriction matrix");
    const std::size_t cols = M[0].size();
    for (const auto& row : M)
        if (row.size() != cols) throw InconsistentDimensions("ragged restriction matrix");
    auto d = zmod::diagonalize(M, p, m);
    // injective over Z/p^m iff every column carries a unit pivot
    if (d.diag_vals.size() < cols) return false;
    for (std::size_t j = 0; j < cols; ++j)
        if (d.diag_vals[j] != 0) return false;
    return true;
}

namespace {

BSDReport evaluate_impl(const IwasawaSeries& series, const BSDInput& in,
                        const Distribution* theta) {
    GradedValue pred = predict_conjecture_BSD(in);

    BSDReport rep;
    rep.predicted_order = pred.exponent;
    rep.predicted_coeff = pred.coeff;
    rep.star_condition = in.star_condition;
    rep.observed_order = series.ord_J();

    if (!rep.observed_order) {
        // identically zero to the truncation degree: counts as extra vanishing
        rep.extra_vanishing = true;
    } else if (*rep.observed_order < rep.predicted_order) {
        rep.contradiction = true;
    } else if (*rep.observed_order > rep.predicted_order) {
        rep.extra_vanishing = true;
    } else {
        rep.order_match = true;
        Padic obs = series.leading_image(rep.predicted_order).coeff;
        rep.observed_coeff = obs;
        rep.valuation_match =
            !obs.is_zero() && !pred.coeff.is_zero() && obs.valuation() == pred.coeff.valuation();
    }

    if (theta) {
        rep.theta_order = ord_J_distribution(*theta);
        // one-directional check: ord theta >= ord series, reported only
        if (!rep.theta_order) {
            rep.theta_consistent = true;
        } else if (!rep.observed_order) {
            rep.theta_consistent = false;
        } else {
            rep.theta_consistent = *rep.theta_order >= *rep.observed_order;
        }
    }

    rep.pass = !rep.contradiction && (!rep.order_match || rep.valuation_match.value_or(false));
    return rep;
}

} // namespace

BSDReport evaluate_series_against_prediction(const IwasawaSeries& series, const BSDInput& in) {
    return evaluate_impl(series, in, nullptr);
}

BSDReport evaluate_series_against_prediction(const IwasawaSeries& series, const BSDInput& in,
                                             const Distribution& theta) {
    return evaluate_impl(series, in, &theta);
}

} // namespace anticyclo
