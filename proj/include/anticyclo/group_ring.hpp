#pragma once

#include <optional>
#include <vector>

#include "anticyclo/padic.hpp"

namespace anticyclo {

/// Element of R_n = (Z/p^n Z)[Gamma_n] written in the basis
/// 1, T, ..., T^{p^n - 1} with T = gamma_n - 1 and gamma_n a fixed
/// generator of Gamma_n = Z/p^n Z. Multiplication is reduced modulo
/// (1+T)^{p^n} - 1.
///
/// For n = 0 the coefficient modulus is taken to be p (rather than the
/// degenerate p^0 = 1), so R_0 = Z/pZ and the level maps stay ring maps.
class GroupRingElement {
public:
    GroupRingElement(long p, long n, std::vector<Int> coeffs);

    static GroupRingElement zero(long p, long n);
    static GroupRingElement one(long p, long n);
    static GroupRingElement monomial(long p, long n, long degree, const Int& c = 1);
    // (1+T)^j for any integer j (j is taken mod p^n)
    static GroupRingElement gamma_power(long p, long n, long j);

    long prime() const { return p_; }
    long level() const { return n_; }
    // p^n, the rank of R_n over its coefficient ring
    long group_order() const { return static_cast<long>(c_.size()); }
    // exponent of the coefficient modulus: max(n, 1)
    long coeff_exponent() const;
    const std::vector<Int>& coeffs() const { return c_; }

    bool is_zero() const;
    Int augmentation() const { return c_[0]; }

    GroupRingElement operator+(const GroupRingElement& rhs) const;
    GroupRingElement operator-(const GroupRingElement& rhs) const;
    GroupRingElement operator-() const;
    GroupRingElement operator*(const GroupRingElement& rhs) const;
    GroupRingElement scaled(const Int& c) const;
    bool operator==(const GroupRingElement& rhs) const;

    // gamma_n^j * this
    GroupRingElement gamma_shift(long j) const;

private:
    void check_compatible(const GroupRingElement& rhs) const;

    long p_;
    long n_;
    std::vector<Int> c_;
};

/// Graded piece coefficient: c * T^exponent in J^e/J^{e+1} tensor Q,
/// under the fixed identification by the chosen generator gamma.
struct GradedValue {
    long exponent = 0;
    Padic coeff;
};

// change of basis between the T-power basis and the group basis
// gamma^0 .. gamma^{p^n - 1}
GroupRingElement from_group_basis(long p, long n, const std::vector<Int>& coords);
std::vector<Int> group_basis_coords(const GroupRingElement& f);

// the involution gamma -> gamma^{-1}
GroupRingElement involution(const GroupRingElement& f);

// image of f in J^k/J^{k+1} against the basis T^k; requires f in J^k
GradedValue graded_leading(const GroupRingElement& f, long k);

// sum of all group elements, D_n^{(0)}
GroupRingElement norm_element(long p, long n);

// D_n^{(k)} = (-1)^k gamma^{-k} sum_i C(i,k) gamma^i, 0 <= k <= p
GroupRingElement derivative_operator(long p, long n, long k);

// membership of f in the ideal (T^k) of R_n, decided by a Z/p^n-lattice
// normal form (for n >= 2 the ideal is not coefficient truncation)
bool in_augmentation_power(const GroupRingElement& f, long k);

// largest k with f in J^k = (T^k); nullopt encodes +infinity (f = 0)
std::optional<long> ord_J(const GroupRingElement& f);

// R_{n+1} -> R_n induced by gamma_{n+1} |-> gamma_n
GroupRingElement project_pi(const GroupRingElement& f);

/// Truncated element of Lambda = Z_p[[T]]: coefficients of T^0..T^deg,
/// each a Padic at a shared coefficient precision.
class IwasawaSeries {
public:
    IwasawaSeries(long p, std::vector<Padic> coeffs);

    long prime() const { return p_; }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Padic>& coeffs() const { return c_; }
    const Padic& coeff(long i) const { return c_.at(static_cast<std::size_t>(i)); }

    Padic augmentation() const { return c_[0]; }

    // T-adic valuation up to the truncation degree; nullopt = +infinity
    std::optional<long> ord_J() const;

    // image of the series in J^nu / J^{nu+1}; requires ord_J >= nu
    GradedValue leading_image(long nu) const;

    // mu_n : Lambda -> R_n; requires degree >= p^n
    GroupRingElement project_mu(long n) const;

private:
    long p_;
    std::vector<Padic> c_;
};

} // namespace anticyclo
