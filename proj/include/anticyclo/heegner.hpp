#pragma once

#include <cstdint>
#include <functional>

#include "anticyclo/group_ring.hpp"

namespace anticyclo {

/// Vectors over Z_p in the model module Z_p^d, d = p^n_max, carrying the
/// cyclic-shift action of a generator of Gamma. Level-n vectors are the
/// ones fixed by the p^n-th power of the shift.
using PadicVec = std::vector<Padic>;

PadicVec vec_shift(const PadicVec& v, long j);
PadicVec vec_add(const PadicVec& a, const PadicVec& b);
PadicVec vec_scale(const Padic& c, const PadicVec& v);
bool vec_eq(const PadicVec& a, const PadicVec& b);
bool vec_fixed_by(const PadicVec& v, long step);

// Norm from level n+1 to level n: sum of the p shifts by multiples of p^n
PadicVec norm_map(const PadicVec& v, long p, long n);

/// Synthetic norm-related point system: vectors y_0 .. y_n_max in the
/// model module satisfying the Hecke norm relations
///   Norm(y_{n+1}) = a_p y_n - y_{n-1}              (n >= 1)
///   Norm(y_1) = u_K^{-1}(alpha - (s + s*) + alpha^{-1}) y_0
///               + p alpha^{-1} y_0                  (level 0)
/// with s, s* the two unit Frobenius scalars acting on level 0.
struct HeegnerSystem {
    long p = 0;
    long a_p = 0;
    long n_max = 0;
    long prec = 0;
    Int u_K = 1;
    Padic sigma_sum; // s + s*
    std::vector<PadicVec> y;
};

HeegnerSystem generate_heegner_system(long p, long a_p, long n_max, long prec,
                                      std::uint64_t seed);

// regularized points z_0 .. z_n_max; exact postcondition
// Norm(z_{n+1}) = z_n at working precision
std::vector<PadicVec> regularize(const HeegnerSystem& sys, const Padic& alpha);

/// Element of Z_p^d tensor R_n: one group-ring component per model
/// coordinate.
struct Distribution {
    long p = 0;
    long n = 0;
    std::vector<GroupRingElement> coords;
};

// Psi_n(P) = sum over sigma in Gamma_n of P^sigma tensor sigma^{-1};
// P must be a level-n vector
Distribution psi_map(const PadicVec& P, long p, long n);

// coordinate-wise projection R_{n+1} -> R_n
Distribution project_distribution(const Distribution& theta);

// min over coordinates of ord_J; nullopt encodes +infinity
std::optional<long> ord_J_distribution(const Distribution& theta);

/// Elements of free R_n-modules and the Galois-equivariant pairing
/// <x, y>_n = sum_sigma <x, y^sigma> sigma^{-1}.
using RnVec = std::vector<GroupRingElement>;

// Z-bilinear base form on the module, valued mod p^max(n,1)
using BaseForm = std::function<Int(const RnVec&, const RnVec&)>;

RnVec rnvec_gamma_shift(const RnVec& x, long j);

// the standard shift-invariant form: sum over coordinates of the
// group-basis dot product
Int standard_base_form(const RnVec& x, const RnVec& y);

// pairing with the standard base form
GroupRingElement equivariant_pairing(const RnVec& x, const RnVec& y);
// pairing with a caller-supplied base form; invariance is checked on
// sampled group elements
GroupRingElement equivariant_pairing(const RnVec& x, const RnVec& y, const BaseForm& base);

// some u with D^(k) u = target in R_n, when one exists
GroupRingElement solve_derivative_preimage(const GroupRingElement& target, long k);

// derived height value: <x', y'>_n read in J^k/J^(k+1), for x', y'
// supplied as derivative-operator preimages
GradedValue derived_height_extract(const RnVec& x_prime, const RnVec& y_prime, long k);

} // namespace anticyclo
