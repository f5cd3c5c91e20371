#include "anticyclo/heights.hpp"

namespace anticyclo {

namespace {

PadicMat identity_mat(std::size_t n, long p, long prec) {
    PadicMat m(n, n, Padic::zero(p, prec));
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Padic::from_integer(p, 1, prec);
    return m;
}

PadicMat select_columns(const PadicMat& m, const std::vector<std::size_t>& cols) {
    PadicMat out(m.rows(), cols.size(), m.at(0, 0));
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t i = 0; i < m.rows(); ++i) out.at(i, c) = m.at(i, cols[c]);
    return out;
}

} // namespace

FiltrationReport compute_filtration(const std::vector<PadicMat>& H, long r) {
    if (H.empty()) throw BadInput("filtration needs at least one pairing");
    const long p = H[0].at(0, 0).prime();
    const long prec = H[0].at(0, 0).precision();
    for (const auto& h : H)
        if (!h.square() || h.rows() != static_cast<std::size_t>(r))
            throw InconsistentDimensions("pairing matrices must be r x r");

    FiltrationReport rep;
    PadicMat B = identity_mat(static_cast<std::size_t>(r), p, prec);
    rep.bases.push_back(B);
    const Padic one = Padic::from_integer(p, 1, prec);

    for (std::size_t k = 0; k < H.size(); ++k) {
        const std::size_t dim = B.cols();
        if (dim == 0) {
            rep.e.push_back(0);
            rep.partial_regs.push_back(one);
            rep.bases.push_back(B);
            continue;
        }
        PadicMat G = B.transpose() * H[k] * B;
        long minv = prec;
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                if (!G.at(i, j).is_zero()) minv = std::min(minv, G.at(i, j).valuation());
        if (minv == prec) {
            // zero pairing: everything is in the null-space
            rep.e.push_back(0);
            rep.partial_regs.push_back(one);
            rep.bases.push_back(B);
            continue;
        }
        PadicMat Gi = G;
        if (minv < 0) {
            Padic scale = Padic::from_unit(p, 1, -minv, prec);
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j) Gi.at(i, j) = G.at(i, j) * scale;
        }
        SmithForm sf = smith_form(Gi);
        std::vector<std::size_t> ker_cols;
        for (std::size_t j = 0; j < dim; ++j)
            if (j >= sf.diag_vals.size() || sf.diag_vals[j] < 0) ker_cols.push_back(j);
        long e_k = static_cast<long>(dim - ker_cols.size());
        rep.e.push_back(e_k);

        PadicMat K = select_columns(sf.V, ker_cols);
        if (e_k == 0) {
            rep.partial_regs.push_back(one);
        } else {
            // discriminant of the induced pairing on the quotient, with
            // the complement chosen among standard basis vectors off the
            // kernel's pivot rows (lowest indices first, deterministic)
            PadicMat work = K;
            std::vector<bool> used(dim, false);
            for (std::size_t j = 0; j < K.cols(); ++j) {
                std::size_t piv = dim;
                long bestv = prec + 1;
                for (std::size_t i = 0; i < dim; ++i) {
                    if (used[i]) continue;
                    long v = work.at(i, j).is_zero() ? prec + 1 : work.at(i, j).valuation();
                    if (v < bestv) { bestv = v; piv = i; }
                }
                if (piv == dim) throw PrecisionExhausted("kernel basis degenerate at precision");
                used[piv] = true;
                Padic pinv = work.at(piv, j).inv();
                for (std::size_t jj = j + 1; jj < K.cols(); ++jj) {
                    Padic f = work.at(piv, jj) * pinv;
                    for (std::size_t i = 0; i < dim; ++i)
                        work.at(i, jj) = work.at(i, jj) - f * work.at(i, j);
                }
            }
            std::vector<std::size_t> comp_rows;
            for (std::size_t i = 0; i < dim; ++i)
                if (!used[i]) comp_rows.push_back(i);
            PadicMat Gq(comp_rows.size(), comp_rows.size(), Padic::zero(p, prec));
            for (std::size_t i = 0; i < comp_rows.size(); ++i)
                for (std::size_t j = 0; j < comp_rows.size(); ++j)
                    Gq.at(i, j) = G.at(comp_rows[i], comp_rows[j]);
            rep.partial_regs.push_back(padic_det(Gq));
        }
        B = B * K;
        rep.bases.push_back(B);
    }
    rep.residual_rank = static_cast<long>(B.cols());
    rep.varrho = 0;
    for (std::size_t k = 0; k < rep.e.size(); ++k)
        rep.varrho += static_cast<long>(k + 1) * rep.e[k];
    return rep;
}

EnhancedRegulator enhanced_regulator(const PadicMat& H1, const Padic& t_prime) {
    if (!H1.square()) throw NotSquare("enhanced regulator needs a square pairing");
    const std::size_t r = H1.rows();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j)
            if (!H1.at(i, j).eq(H1.at(j, i))) throw NotSymmetric("pairing must be symmetric");
    const long p = H1.at(0, 0).prime();
    const long prec = H1.at(0, 0).precision();
    const Padic one = Padic::from_integer(p, 1, prec);
    Padic scale = (t_prime * t_prime).inv();
    EnhancedRegulator out{PadicMat(r, r, Padic::zero(p, prec)), static_cast<long>(r) - 1};
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            Padic c = minor_det(H1, i, j, one) * scale;
            out.coeff.at(i, j) = ((i + j) % 2 == 1) ? -c : c;
        }
    return out;
}

GradedValue derived_enhanced_regulator(const HeightSystem& sys) {
    FiltrationReport rep = compute_filtration(sys.H, sys.rank());
    if (rep.residual_rank != 1)
        throw FiltrationIncomplete("residual space must have rank one");
    Padic coeff = (sys.t * sys.t).inv();
    for (const auto& reg : rep.partial_regs) coeff = coeff * reg;
    return {rep.varrho, coeff};
}

SqrtRegulator sqrt_regulator(const HeightSystem& sys) {
    const long s = std::min(sys.r_plus, sys.r_minus);
    if (sys.H.empty()) throw BadInput("sqrt regulator needs the first pairing");
    const PadicMat& H1 = sys.H[0];
    if (H1.rows() < static_cast<std::size_t>(2 * s))
        throw InconsistentDimensions("pairing smaller than 2s");
    const long p = H1.at(0, 0).prime();
    const long prec = H1.at(0, 0).precision();

    // basis ordered y_1+ .. y_s+, y_1- .. y_s-: same-sign blocks must vanish
    for (long i = 0; i < s; ++i)
        for (long j = 0; j < s; ++j) {
            if (!H1.at(i, j).is_zero())
                throw BlockNotIsotropic("plus-plus block nonzero");
            if (!H1.at(s + i, s + j).is_zero())
                throw BlockNotIsotropic("minus-minus block nonzero");
        }

    Padic coeff = sys.t.inv();
    if (s > 0) {
        PadicMat cross(static_cast<std::size_t>(s), static_cast<std::size_t>(s),
                       Padic::zero(p, prec));
        for (long i = 0; i < s; ++i)
            for (long j = 0; j < s; ++j)
                cross.at(i, j) = H1.at(i, s + j);
        coeff = coeff * padic_det(cross);
    }
    // the alternating block of the second pairing, supplied pre-restricted
    if (sys.H.size() > 1 && sys.H[1].rows() > 0) coeff = coeff * pfaffian(sys.H[1]);

    SqrtRegulator out;
    out.value = {std::max(sys.r_plus, sys.r_minus) - 1, coeff};
    out.sign_ambiguous = true;
    out.block_sign = (s % 2 == 0) ? 1 : -1;
    return out;
}

GradedValue derived_regulator_p(const HeightSystem& sys, const Padic& log_y, const Padic& t) {
    if (log_y.is_zero()) throw ZeroLogarithm("universal norm generator has zero logarithm");
    FiltrationReport rep = compute_filtration(sys.H, sys.rank());
    if (rep.residual_rank != 1)
        throw FiltrationIncomplete("residual space must have rank one");
    Padic coeff = (t * t).inv() * log_y * log_y;
    for (const auto& reg : rep.partial_regs) coeff = coeff * reg;
    return {rep.varrho, coeff};
}

int universal_norm_sign(long r_plus, long r_minus) {
    if (r_plus == r_minus) throw EqualRanks("sign undetermined for equal ranks");
    return r_plus > r_minus ? 1 : -1;
}

} // namespace anticyclo
