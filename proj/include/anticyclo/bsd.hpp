#pragma once

#include <optional>

#include "anticyclo/elliptic.hpp"
#include "anticyclo/heegner.hpp"
#include "anticyclo/heights.hpp"

namespace anticyclo {

/// Arithmetic invariants feeding the leading-coefficient formulas.
/// sha may be the full order or its p-part; every formula uses the
/// p-part and folds the rest into the undetermined unit.
struct BSDInput {
    long p = 0;
    long a_p = 0;
    long r_plus = 0;
    long r_minus = 0;
    Int sha = 1;
    std::vector<Int> tamagawa;
    Int u_K = 1;
    Int c_E = 1;
    Padic log_y;
    HeightSystem heights;
    bool heegner_hypothesis = false;
    bool star_condition = false;
};

// (1 - a_p + p) / p as a p-adic number; valuation is -1 unless a_p = 1 mod p
Padic euler_factor(long p, long a_p, long prec);

// p-part of a positive order: p^{v_p(sha)}
Int sha_p_part(const Int& sha, long p);

// u_K^-2 c_E^-2 ((1 - a_p + p)/p)^2 log(z_K)^2
Padic bdp_value(const Int& u_K, const Int& c_E, long a_p, long p, const Padic& log_zK);

// predicted order 2(max(r+, r-) - 1) and leading coefficient
// Euler^2 * derived regulator * #Sha_p * prod c_l^2
GradedValue predict_conjecture_BSD(const BSDInput& in);

/// Square-root prediction: order max(r+, r-) - 1, coefficient
/// Euler * log * sqrt-regulator * sqrt(#Sha_p) * prod c_l, up to sign.
struct SqrtPrediction {
    GradedValue value;
    bool sign_ambiguous = true;
    bool non_square_sha = false;
};

SqrtPrediction predict_conjecture_BSD_sqrt(const BSDInput& in);

/// Up-to-unit prediction: order bound and the valuation of
/// p^-2 log^2 Reg t^-2 #Sha_p (the unit part is not claimed).
struct TheoremAValue {
    long order_bound = 0;
    long valuation = 0;
};

TheoremAValue theorem_A_value(const BSDInput& in);

// #Sha_p * (#coker)^2 with #coker = p^{v(log) - 1}, both as the direct
// power and through the local cokernel computation
Int selmer_quotient_order(const Int& sha, long p, long log_valuation);

// [E(K) : Z y]^2 = u_K^2 c_E^2 #Sha prod c_l^2, checked exactly
bool rank_one_consistency(const Int& index, const Int& u_K, const Int& c_E, const Int& sha,
                          const std::vector<Int>& tamagawa);

// Kronecker symbol (a / q) for prime q
int kronecker_symbol(const Int& a, long q);

/// Certificate for one admissible prime: all three defining conditions
/// with the data needed to re-verify them.
struct AdmissiblePrime {
    long q = 0;
    long a_q = 0;
    int kronecker = 0;  // (D_K / q), must be -1
    long q_mod_p = 0;   // must avoid 1 and p-1
    bool minus_branch = false; // p^m | q + 1 - a_q
    bool plus_branch = false;  // p^m | q + 1 + a_q
};

// all m-admissible primes q <= bound: q coprime to p and the
// discriminant, inert in K, q != +-1 mod p, p^m | q + 1 -+ a_q
std::vector<AdmissiblePrime> admissible_search(const CurveData& E, const Int& D_K, long p,
                                               long m, long bound);

// injectivity over Z/p^m of a user-supplied restriction matrix
// (columns index the Selmer basis); decided by unit pivots
bool restriction_injective(const std::vector<std::vector<Int>>& M, long p, long m);

/// Comparison of a supplied series against the predicted order and
/// leading coefficient. Orders below the prediction contradict it;
/// orders above are extra vanishing. theta data is reported only.
struct BSDReport {
    long predicted_order = 0;
    Padic predicted_coeff;
    std::optional<long> observed_order; // nullopt encodes +infinity
    std::optional<Padic> observed_coeff;
    bool order_match = false;
    bool contradiction = false;
    bool extra_vanishing = false;
    std::optional<bool> valuation_match;
    std::optional<long> theta_order;
    std::optional<bool> theta_consistent;
    bool star_condition = false;
    bool pass = false;
};

BSDReport evaluate_series_against_prediction(const IwasawaSeries& series, const BSDInput& in);
BSDReport evaluate_series_against_prediction(const IwasawaSeries& series, const BSDInput& in,
                                             const Distribution& theta);

} // namespace anticyclo
