#include "anticyclo/heegner.hpp"

#include <random>

#include "anticyclo/zmod_linalg.hpp"

namespace anticyclo {

namespace {

long require_positive(long v, const char* what) {
    if (v <= 0) throw BadInput(what);
    return v;
}

} // namespace

PadicVec vec_shift(const PadicVec& v, long j) {
    const long d = static_cast<long>(v.size());
    j %= d;
    if (j < 0) j += d;
    PadicVec out(v.size(), v[0]);
    for (long c = 0; c < d; ++c) out[static_cast<std::size_t>((c + j) % d)] = v[static_cast<std::size_t>(c)];
    return out;
}

PadicVec vec_add(const PadicVec& a, const PadicVec& b) {
    if (a.size() != b.size()) throw InconsistentDimensions("vec_add");
    PadicVec out(a);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

PadicVec vec_scale(const Padic& c, const PadicVec& v) {
    PadicVec out(v);
    for (auto& x : out) x = c * x;
    return out;
}

bool vec_eq(const PadicVec& a, const PadicVec& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].eq(b[i])) return false;
    return true;
}

bool vec_fixed_by(const PadicVec& v, long step) { return vec_eq(v, vec_shift(v, step)); }

PadicVec norm_map(const PadicVec& v, long p, long n) {
    const long step = static_cast<long>(pow_int(p, n));
    PadicVec acc = v;
    for (long j = 1; j < p; ++j) acc = vec_add(acc, vec_shift(v, j * step));
    return acc;
}

HeegnerSystem generate_heegner_system(long p, long a_p, long n_max, long prec,
                                      std::uint64_t seed) {
    require_positive(n_max, "n_max must be positive");
    require_positive(prec, "precision must be positive");
    const long d = static_cast<long>(pow_int(p, n_max));
    std::mt19937_64 rng(seed);
    const Int mod = pow_int(p, prec);
    std::uniform_int_distribution<unsigned long long> draw;
    auto rand_int = [&]() {
        Int v = 0;
        for (long chunks = 0; chunks * 64 < prec * 4; ++chunks) v = (v << 64) + draw(rng);
        return v % mod;
    };
    auto rand_unit = [&]() {
        Int v = rand_int();
        while (v % p == 0) v = rand_int();
        return v;
    };
    auto zp = [&](const Int& v) { return Padic::from_integer(p, v, prec); };

    HeegnerSystem sys;
    sys.p = p;
    sys.a_p = a_p;
    sys.n_max = n_max;
    sys.prec = prec;
    sys.u_K = rand_unit() % (p * p); // small unit, p not dividing it
    if (sys.u_K % p == 0) sys.u_K += 1;
    sys.sigma_sum = zp(rand_unit()) + zp(rand_unit());

    const Padic alpha = unit_root(a_p, p, prec);
    const Padic alpha_inv = alpha.inv();
    const Padic uk_inv = zp(sys.u_K).inv();

    // level 0: a Gamma-fixed seed, constant vector
    PadicVec y0(static_cast<std::size_t>(d), Padic::zero(p, prec));
    Padic s0 = zp(rand_unit());
    for (auto& c : y0) c = s0;
    sys.y.push_back(y0);

    // level 1 from the level-0 relation: distribute the required norm
    // over the residue classes mod p
    {
        Padic rho = (uk_inv * (alpha - sys.sigma_sum + alpha_inv) + zp(p) * alpha_inv) * s0;
        std::vector<Padic> c(static_cast<std::size_t>(p), Padic::zero(p, prec));
        Padic acc = Padic::zero(p, prec);
        for (long i = 1; i < p; ++i) {
            c[static_cast<std::size_t>(i)] = zp(rand_int());
            acc = acc + c[static_cast<std::size_t>(i)];
        }
        c[0] = rho - acc;
        PadicVec y1(static_cast<std::size_t>(d), Padic::zero(p, prec));
        for (long idx = 0; idx < d; ++idx) y1[static_cast<std::size_t>(idx)] = c[static_cast<std::size_t>(idx % p)];
        sys.y.push_back(y1);
    }

    // levels n+1 >= 2 from Norm(y_{n+1}) = a_p y_n - y_{n-1}
    for (long n = 1; n < n_max; ++n) {
        const long mn = static_cast<long>(pow_int(p, n));
        const long mn1 = mn * p;
        PadicVec rhs = vec_add(vec_scale(zp(a_p), sys.y[static_cast<std::size_t>(n)]),
                               vec_scale(zp(-1), sys.y[static_cast<std::size_t>(n - 1)]));
        // rhs is a level-n vector: its f-coordinates are its first p^n entries
        std::vector<Padic> c(static_cast<std::size_t>(mn1), Padic::zero(p, prec));
        for (long m = 0; m < mn; ++m) {
            Padic acc = Padic::zero(p, prec);
            for (long j = 1; j < p; ++j) {
                c[static_cast<std::size_t>(m + j * mn)] = zp(rand_int());
                acc = acc + c[static_cast<std::size_t>(m + j * mn)];
            }
            c[static_cast<std::size_t>(m)] = rhs[static_cast<std::size_t>(m)] - acc;
        }
        PadicVec yn1(static_cast<std::size_t>(d), Padic::zero(p, prec));
        for (long idx = 0; idx < d; ++idx) yn1[static_cast<std::size_t>(idx)] = c[static_cast<std::size_t>(idx % mn1)];
        sys.y.push_back(yn1);
    }
    return sys;
}

std::vector<PadicVec> regularize(const HeegnerSystem& sys, const Padic& alpha) {
    const long p = sys.p;
    if (sys.u_K % p == 0) throw NonUnit_uK("p divides u_K");
    if (sys.y.size() != static_cast<std::size_t>(sys.n_max) + 1)
        throw BadInput("system missing levels");
    const long prec = sys.prec;
    auto zp = [&](const Int& v) { return Padic::from_integer(p, v, prec); };
    const Padic alpha_inv = alpha.inv();
    const Padic uk_inv = zp(sys.u_K).inv();

    // re-verify the defining relations before regularizing
    for (long n = 0; n <= sys.n_max; ++n)
        if (!vec_fixed_by(sys.y[static_cast<std::size_t>(n)], static_cast<long>(pow_int(p, n))))
            throw RelationViolated("y_n not fixed at its level");
    {
        PadicVec lhs = norm_map(sys.y[1], p, 0);
        PadicVec rhs = vec_scale(uk_inv * (alpha - sys.sigma_sum + alpha_inv) + zp(p) * alpha_inv,
                                 sys.y[0]);
        if (!vec_eq(lhs, rhs)) throw RelationViolated("level-0 norm relation fails");
    }
    for (long n = 1; n < sys.n_max; ++n) {
        PadicVec lhs = norm_map(sys.y[static_cast<std::size_t>(n) + 1], p, n);
        PadicVec rhs = vec_add(vec_scale(zp(sys.a_p), sys.y[static_cast<std::size_t>(n)]),
                               vec_scale(zp(-1), sys.y[static_cast<std::size_t>(n) - 1]));
        if (!vec_eq(lhs, rhs)) throw RelationViolated("Hecke norm relation fails");
    }

    std::vector<PadicVec> z;
    z.push_back(vec_scale(uk_inv * (zp(1) - sys.sigma_sum * alpha_inv + alpha_inv * alpha_inv),
                          sys.y[0]));
    Padic apow = alpha_inv; // alpha^{-n}
    for (long n = 1; n <= sys.n_max; ++n) {
        z.push_back(vec_add(vec_scale(apow, sys.y[static_cast<std::size_t>(n)]),
                            vec_scale(-(apow * alpha_inv), sys.y[static_cast<std::size_t>(n) - 1])));
        apow = apow * alpha_inv;
    }
    return z;
}

Distribution psi_map(const PadicVec& P, long p, long n) {
    const long m = static_cast<long>(pow_int(p, n));
    const long d = static_cast<long>(P.size());
    if (d % m != 0) throw InconsistentDimensions("model rank not divisible by p^n");
    if (!vec_fixed_by(P, m)) throw ActionMismatch("vector is not a level-n point");
    const long e = std::max(n, 1L);
    Distribution out{p, n, {}};
    out.coords.reserve(P.size());
    for (long c = 0; c < d; ++c) {
        // coefficient of gamma^{-j} is the c-th coordinate of the j-th shift
        std::vector<Int> g(static_cast<std::size_t>(m), 0);
        for (long j = 0; j < m; ++j) {
            const Padic& v = P[static_cast<std::size_t>(((c - j) % d + d) % d)];
            if (!v.is_zero() && v.valuation() < 0)
                throw BadInput("psi_map needs integral coordinates");
            g[static_cast<std::size_t>((m - j) % m)] = v.is_zero() ? 0 : v.residue(e);
        }
        out.coords.push_back(from_group_basis(p, n, g));
    }
    return out;
}

Distribution project_distribution(const Distribution& theta) {
    Distribution out{theta.p, theta.n - 1, {}};
    for (const auto& c : theta.coords) out.coords.push_back(project_pi(c));
    return out;
}

std::optional<long> ord_J_distribution(const Distribution& theta) {
    std::optional<long> best;
    for (const auto& c : theta.coords) {
        auto o = ord_J(c);
        if (!o) continue; // zero coordinate: infinity
        if (!best || *o < *best) best = o;
    }
    return best;
}

RnVec rnvec_gamma_shift(const RnVec& x, long j) {
    RnVec out;
    out.reserve(x.size());
    for (const auto& c : x) out.push_back(c.gamma_shift(j));
    return out;
}

Int standard_base_form(const RnVec& x, const RnVec& y) {
    if (x.empty() || x.size() != y.size()) throw InconsistentDimensions("base form");
    const Int mod = pow_int(x[0].prime(), x[0].coeff_exponent());
    Int acc = 0;
    for (std::size_t c = 0; c < x.size(); ++c) {
        auto gx = group_basis_coords(x[c]);
        auto gy = group_basis_coords(y[c]);
        for (std::size_t i = 0; i < gx.size(); ++i) acc += gx[i] * gy[i];
    }
    acc %= mod;
    if (acc < 0) acc += mod;
    return acc;
}

GroupRingElement equivariant_pairing(const RnVec& x, const RnVec& y, const BaseForm& base) {
    if (x.empty() || x.size() != y.size()) throw InconsistentDimensions("pairing");
    const long p = x[0].prime();
    const long n = x[0].level();
    const long m = x[0].group_order();
    // spot-check Galois invariance of the base form
    for (long j = 1; j <= std::min<long>(3, m - 1); ++j)
        if (base(rnvec_gamma_shift(x, j), rnvec_gamma_shift(y, j)) != base(x, y))
            throw NotInvariant("base form not Galois-invariant");
    std::vector<Int> g(static_cast<std::size_t>(m), 0);
    RnVec ys = y;
    for (long j = 0; j < m; ++j) {
        g[static_cast<std::size_t>((m - j) % m)] = base(x, ys);
        if (j + 1 < m) ys = rnvec_gamma_shift(ys, 1);
    }
    return from_group_basis(p, n, g);
}

GroupRingElement equivariant_pairing(const RnVec& x, const RnVec& y) {
    return equivariant_pairing(x, y, standard_base_form);
}

GroupRingElement solve_derivative_preimage(const GroupRingElement& target, long k) {
    const long p = target.prime();
    const long n = target.level();
    const long m = target.group_order();
    const long e = target.coeff_exponent();
    GroupRingElement dk = derivative_operator(p, n, k);
    zmod::Mat M(static_cast<std::size_t>(m), zmod::Vec(static_cast<std::size_t>(m), 0));
    GroupRingElement col = dk;
    GroupRingElement t = GroupRingElement::monomial(p, n, 1);
    for (long j = 0; j < m; ++j) {
        for (long i = 0; i < m; ++i)
            M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = col.coeffs()[static_cast<std::size_t>(i)];
        if (j + 1 < m) col = col * t;
    }
    auto sol = zmod::solve(M, target.coeffs(), p, e);
    if (!sol) throw NotSolvable("no derivative-operator preimage");
    return GroupRingElement(p, n, *sol);
}

GradedValue derived_height_extract(const RnVec& x_prime, const RnVec& y_prime, long k) {
    GroupRingElement v = equivariant_pairing(x_prime, y_prime);
    return graded_leading(v, k);
}

} // namespace anticyclo
