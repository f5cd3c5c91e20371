#include "anticyclo/group_ring.hpp"

#include <algorithm>

#include "anticyclo/zmod_linalg.hpp"

namespace anticyclo {

namespace {

Int binomial(long a, long b) {
    if (b < 0 || b > a) return 0;
    b = std::min(b, a - b);
    Int r = 1;
    for (long i = 1; i <= b; ++i) {
        r *= (a - b + i);
        r /= i;
    }
    return r;
}

long require_odd_prime(long p) {
    if (p == 2) throw OddPrimeOnly();
    if (p < 2) throw BadInput("prime must be >= 3");
    return p;
}

// reduce an arbitrary-degree T-polynomial modulo (1+T)^{p^n} - 1 and p^e
std::vector<Int> reduce_poly(std::vector<Int> poly, long p, long n) {
    const long m = static_cast<long>(pow_int(p, n));
    const long e = std::max(n, 1L);
    const Int mod = pow_int(p, e);
    if (static_cast<long>(poly.size()) < m) poly.resize(m, 0);
    // T^m = -sum_{i=1}^{m-1} C(m,i) T^i
    std::vector<Int> rel(m, 0);
    for (long i = 1; i < m; ++i) {
        rel[i] = (-binomial(m, i)) % mod;
        if (rel[i] < 0) rel[i] += mod;
    }
    for (long d = static_cast<long>(poly.size()) - 1; d >= m; --d) {
        Int c = poly[d] % mod;
        if (c == 0) continue;
        poly[d] = 0;
        for (long i = 1; i < m; ++i) {
            if (rel[i] == 0) continue;
            poly[d - m + i] += rel[i] * c;
        }
    }
    poly.resize(m);
    for (auto& x : poly) {
        x %= mod;
        if (x < 0) x += mod;
    }
    return poly;
}

} // namespace

GroupRingElement::GroupRingElement(long p, long n, std::vector<Int> coeffs)
    : p_(require_odd_prime(p)), n_(n), c_(std::move(coeffs)) {
    if (n < 0) throw BadInput("level must be >= 0");
    const long m = static_cast<long>(pow_int(p_, n_));
    if (static_cast<long>(c_.size()) != m)
        throw BadInput("GroupRingElement: expected p^n coefficients");
    const Int mod = pow_int(p_, coeff_exponent());
    for (auto& x : c_) {
        x %= mod;
        if (x < 0) x += mod;
    }
}

long GroupRingElement::coeff_exponent() const { return std::max(n_, 1L); }

GroupRingElement GroupRingElement::zero(long p, long n) {
    return GroupRingElement(p, n, std::vector<Int>(static_cast<std::size_t>(pow_int(p, n)), 0));
}

GroupRingElement GroupRingElement::one(long p, long n) {
    return monomial(p, n, 0);
}

GroupRingElement GroupRingElement::monomial(long p, long n, long degree, const Int& c) {
    if (degree < 0) throw BadInput("monomial: negative degree");
    std::vector<Int> poly(static_cast<std::size_t>(degree) + 1, 0);
    poly[static_cast<std::size_t>(degree)] = c;
    return GroupRingElement(p, n, reduce_poly(std::move(poly), p, n));
}

GroupRingElement GroupRingElement::gamma_power(long p, long n, long j) {
    const long m = static_cast<long>(pow_int(p, n));
    j %= m;
    if (j < 0) j += m;
    std::vector<Int> c(static_cast<std::size_t>(m), 0);
    for (long i = 0; i <= j; ++i) c[static_cast<std::size_t>(i)] = binomial(j, i);
    return GroupRingElement(p, n, std::move(c));
}

bool GroupRingElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Int& x) { return x == 0; });
}

void GroupRingElement::check_compatible(const GroupRingElement& rhs) const {
    if (p_ != rhs.p_ || n_ != rhs.n_) throw LevelMismatch();
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& rhs) const {
    check_compatible(rhs);
    std::vector<Int> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] + rhs.c_[i];
    return GroupRingElement(p_, n_, std::move(c));
}

GroupRingElement GroupRingElement::operator-() const {
    std::vector<Int> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
    return GroupRingElement(p_, n_, std::move(c));
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& rhs) const {
    return *this + (-rhs);
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& rhs) const {
    check_compatible(rhs);
    const std::size_t m = c_.size();
    std::vector<Int> poly(2 * m - 1, 0);
    for (std::size_t i = 0; i < m; ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < m; ++j) {
            if (rhs.c_[j] == 0) continue;
            poly[i + j] += c_[i] * rhs.c_[j];
        }
    }
    return GroupRingElement(p_, n_, reduce_poly(std::move(poly), p_, n_));
}

GroupRingElement GroupRingElement::scaled(const Int& c) const {
    std::vector<Int> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] * c;
    return GroupRingElement(p_, n_, std::move(out));
}

bool GroupRingElement::operator==(const GroupRingElement& rhs) const {
    return p_ == rhs.p_ && n_ == rhs.n_ && c_ == rhs.c_;
}

GroupRingElement GroupRingElement::gamma_shift(long j) const {
    return *this * gamma_power(p_, n_, j);
}

GroupRingElement from_group_basis(long p, long n, const std::vector<Int>& coords) {
    require_odd_prime(p);
    const long m = static_cast<long>(pow_int(p, n));
    if (static_cast<long>(coords.size()) != m)
        throw BadInput("from_group_basis: expected p^n coordinates");
    // accumulate coords[t] * (1+T)^t with an incrementally built power
    std::vector<Int> poly(static_cast<std::size_t>(m), 0);
    std::vector<Int> pw{1};
    for (long t = 0; t < m; ++t) {
        if (coords[static_cast<std::size_t>(t)] != 0)
            for (std::size_t i = 0; i < pw.size(); ++i)
                poly[i] += coords[static_cast<std::size_t>(t)] * pw[i];
        if (t + 1 < m) {
            pw.push_back(0);
            for (std::size_t i = pw.size() - 1; i > 0; --i) pw[i] += pw[i - 1];
        }
    }
    return GroupRingElement(p, n, std::move(poly));
}

std::vector<Int> group_basis_coords(const GroupRingElement& f) {
    const long m = f.group_order();
    const Int mod = pow_int(f.prime(), f.coeff_exponent());
    // T^i = sum_j (-1)^(i-j) C(i,j) gamma^j
    std::vector<Int> g(static_cast<std::size_t>(m), 0);
    std::vector<Int> row{1}; // binomials C(i, .)
    for (long i = 0; i < m; ++i) {
        const Int& c = f.coeffs()[static_cast<std::size_t>(i)];
        if (c != 0)
            for (long j = 0; j <= i; ++j) {
                Int term = row[static_cast<std::size_t>(j)] * c;
                g[static_cast<std::size_t>(j)] += ((i - j) % 2 == 1) ? -term : term;
            }
        row.push_back(0);
        for (std::size_t t = row.size() - 1; t > 0; --t) row[t] += row[t - 1];
    }
    for (auto& x : g) {
        x %= mod;
        if (x < 0) x += mod;
    }
    return g;
}

GroupRingElement involution(const GroupRingElement& f) {
    const long m = f.group_order();
    auto g = group_basis_coords(f);
    std::vector<Int> out(g.size());
    for (long j = 0; j < m; ++j) out[static_cast<std::size_t>((m - j) % m)] = g[static_cast<std::size_t>(j)];
    return from_group_basis(f.prime(), f.level(), out);
}

GradedValue graded_leading(const GroupRingElement& f, long k) {
    const long p = f.prime();
    const long e = f.coeff_exponent();
    if (k < 0) throw OutOfRange("graded_leading: negative exponent");
    if (k == 0) return GradedValue{0, Padic::from_integer(p, f.augmentation(), e)};
    const long m = f.group_order();
    // solve f = c T^k + (J^(k+1) element): columns T^k, T^(k+1) T^j
    zmod::Mat M(static_cast<std::size_t>(m), zmod::Vec(static_cast<std::size_t>(m) + 1, 0));
    GroupRingElement g = GroupRingElement::monomial(p, f.level(), k);
    for (long i = 0; i < m; ++i) M[static_cast<std::size_t>(i)][0] = g.coeffs()[static_cast<std::size_t>(i)];
    GroupRingElement t = GroupRingElement::monomial(p, f.level(), 1);
    GroupRingElement h = g * t;
    for (long j = 0; j < m; ++j) {
        for (long i = 0; i < m; ++i)
            M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j) + 1] = h.coeffs()[static_cast<std::size_t>(i)];
        if (j + 1 < m) h = h * t;
    }
    auto sol = zmod::solve(M, f.coeffs(), p, e);
    if (!sol) throw OrderTooSmall("element not in J^k");
    return GradedValue{k, Padic::from_integer(p, (*sol)[0], e)};
}

GroupRingElement norm_element(long p, long n) {
    require_odd_prime(p);
    const long m = static_cast<long>(pow_int(p, n));
    GroupRingElement acc = GroupRingElement::zero(p, n);
    for (long j = 0; j < m; ++j) acc = acc + GroupRingElement::gamma_power(p, n, j);
    return acc;
}

GroupRingElement derivative_operator(long p, long n, long k) {
    require_odd_prime(p);
    if (k < 0 || k > p) throw OutOfRange("derivative operator needs 0 <= k <= p");
    const long m = static_cast<long>(pow_int(p, n));
    GroupRingElement acc = GroupRingElement::zero(p, n);
    for (long i = 0; i < m; ++i) {
        Int b = binomial(i, k);
        if (b == 0) continue;
        acc = acc + GroupRingElement::gamma_power(p, n, i).scaled(b);
    }
    acc = acc.gamma_shift(-k);
    if (k % 2 == 1) acc = -acc;
    return acc;
}

bool in_augmentation_power(const GroupRingElement& f, long k) {
    if (k <= 0) return true;
    const long p = f.prime();
    const long n = f.level();
    const long m = f.group_order();
    const long e = f.coeff_exponent();
    // generators T^k * T^j, j = 0..m-1, as columns
    zmod::Mat G(static_cast<std::size_t>(m), zmod::Vec(static_cast<std::size_t>(m), 0));
    GroupRingElement g = GroupRingElement::monomial(p, n, k);
    GroupRingElement t = GroupRingElement::monomial(p, n, 1);
    for (long j = 0; j < m; ++j) {
        for (long i = 0; i < m; ++i)
            G[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = g.coeffs()[static_cast<std::size_t>(i)];
        if (j + 1 < m) g = g * t;
    }
    return zmod::in_column_span(G, f.coeffs(), p, e);
}

std::optional<long> ord_J(const GroupRingElement& f) {
    if (f.is_zero()) return std::nullopt;
    const long cap = f.level() * f.group_order(); // (T^cap) = 0 in R_n
    for (long k = 1; k <= cap; ++k)
        if (!in_augmentation_power(f, k)) return k - 1;
    return cap; // unreachable for nonzero f
}

GroupRingElement project_pi(const GroupRingElement& f) {
    if (f.level() == 0) throw LevelMismatch("project_pi: already at level 0");
    const long n = f.level() - 1;
    std::vector<Int> poly(f.coeffs());
    return GroupRingElement(f.prime(), n, reduce_poly(std::move(poly), f.prime(), n));
}

IwasawaSeries::IwasawaSeries(long p, std::vector<Padic> coeffs)
    : p_(require_odd_prime(p)), c_(std::move(coeffs)) {
    if (c_.empty()) throw BadInput("IwasawaSeries: empty coefficient list");
    for (const auto& c : c_) {
        if (c.prime() != p_) throw PrimeMismatch();
        if (!c.is_zero() && c.valuation() < 0)
            throw BadInput("IwasawaSeries: coefficients must lie in Z_p");
    }
}

std::optional<long> IwasawaSeries::ord_J() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return static_cast<long>(i);
    return std::nullopt;
}

GradedValue IwasawaSeries::leading_image(long nu) const {
    if (nu < 0 || nu > degree()) throw OutOfRange("leading_image: exponent out of range");
    auto ord = ord_J();
    if (ord && *ord < nu) throw OrderTooSmall();
    return GradedValue{nu, c_[static_cast<std::size_t>(nu)]};
}

GroupRingElement IwasawaSeries::project_mu(long n) const {
    const long m = static_cast<long>(pow_int(p_, n));
    if (degree() < m) throw InsufficientTruncation();
    const long e = std::max(n, 1L);
    std::vector<Int> poly(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) poly[i] = c_[i].residue(e);
    return GroupRingElement(p_, n, reduce_poly(std::move(poly), p_, n));
}

} // namespace anticyclo
