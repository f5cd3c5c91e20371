#pragma once

#include "anticyclo/pmatrix.hpp"

namespace anticyclo {

/// Height pairing data on a rank-r module split into tau-eigenspaces of
/// ranks r+ and r-. H[0] is the symmetric first pairing on the full
/// module; H[k] is the (k+1)-st derived pairing on the full coordinate
/// space, restricted internally to the filtration step where it acts.
/// The index factors t and t' are inputs.
struct HeightSystem {
    long r_plus = 0;
    long r_minus = 0;
    std::vector<PadicMat> H;
    Padic t;
    Padic t_prime;

    long rank() const { return r_plus + r_minus; }
};

/// Null-space filtration S^(1) > S^(2) > ... with ranks e_k of the
/// graded pieces and the discriminants R^(k) of the induced pairings.
struct FiltrationReport {
    std::vector<long> e;             // e_1 .. e_K
    long residual_rank = 0;          // d_p, rank of the final step
    long varrho = 0;                 // sum of k * e_k
    std::vector<Padic> partial_regs; // R^(1) .. R^(K)
    std::vector<PadicMat> bases;     // columns spanning S^(k), k = 1 .. K+1
};

FiltrationReport compute_filtration(const std::vector<PadicMat>& H, long r);

/// Coefficient matrix of the enhanced regulator:
/// C[i][j] = (-1)^(i+j) minor(H1, i, j) / t'^2, at grading exponent r-1.
struct EnhancedRegulator {
    PadicMat coeff;
    long exponent = 0;
};

EnhancedRegulator enhanced_regulator(const PadicMat& H1, const Padic& t_prime);

// t^-2 prod_k R^(k) on y tensor y, at exponent varrho; requires the
// filtration to end in a rank-one residual space
GradedValue derived_enhanced_regulator(const HeightSystem& sys);

/// Square-root regulator: t^-1 det(cross block) pf(alternating block),
/// at exponent max(r+, r-) - 1. Only defined up to sign; block_sign
/// records the (-1)^s from the isotropic block-determinant identity
/// det[[0, B], [B^T, 0]] = (-1)^s det(B)^2.
struct SqrtRegulator {
    GradedValue value;
    bool sign_ambiguous = true;
    long block_sign = 1;
};

SqrtRegulator sqrt_regulator(const HeightSystem& sys);

// t^-2 log_y^2 prod_k R^(k) at exponent varrho
GradedValue derived_regulator_p(const HeightSystem& sys, const Padic& log_y, const Padic& t);

// +1 when r+ > r-, -1 when r- > r+
int universal_norm_sign(long r_plus, long r_minus);

} // namespace anticyclo
