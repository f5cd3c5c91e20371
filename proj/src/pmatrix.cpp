#include "anticyclo/pmatrix.hpp"

#include <algorithm>

namespace anticyclo {

namespace {

PadicMat padic_identity(std::size_t n, long p, long prec) {
    PadicMat m(n, n, Padic::zero(p, prec));
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Padic::from_integer(p, 1, prec);
    return m;
}

void swap_rows(PadicMat& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

void swap_cols(PadicMat& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}

} // namespace

Padic padic_det(const PadicMat& m) {
    if (!m.square()) throw NotSquare("det: matrix not square");
    const std::size_t n = m.rows();
    PadicMat a = m;
    const long p = a.at(0, 0).prime();
    bool negate = false;
    Padic det = Padic::from_integer(p, 1, a.at(0, 0).precision());
    for (std::size_t k = 0; k < n; ++k) {
        // pivot of minimal valuation; ties broken by lowest row, then column
        std::size_t pi = k, pj = k;
        long best = a.at(k, k).valuation_or_prec() + (a.at(k, k).is_zero() ? 1 : 0);
        for (std::size_t i = k; i < n; ++i)
            for (std::size_t j = k; j < n; ++j) {
                const Padic& e = a.at(i, j);
                long v = e.valuation_or_prec() + (e.is_zero() ? 1 : 0);
                if (v < best) { best = v; pi = i; pj = j; }
            }
        if (a.at(pi, pj).is_zero()) {
            // an exactly-zero pivot at precision: the whole determinant is
            // zero at whatever precision the product certifies
            return det * a.at(pi, pj);
        }
        if (pi != k) { swap_rows(a, pi, k); negate = !negate; }
        if (pj != k) { swap_cols(a, pj, k); negate = !negate; }
        const Padic pivot = a.at(k, k);
        det = det * pivot;
        Padic pinv = pivot.inv();
        for (std::size_t i = k + 1; i < n; ++i) {
            Padic factor = a.at(i, k) * pinv;
            for (std::size_t j = k; j < n; ++j)
                a.at(i, j) = a.at(i, j) - factor * a.at(k, j);
        }
    }
    return negate ? -det : det;
}

SmithForm smith_form(const PadicMat& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    const long p = m.at(0, 0).prime();
    const long prec = m.at(0, 0).precision();
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (!m.at(i, j).is_zero() && m.at(i, j).valuation() < 0)
                throw BadInput("smith_form: entries must lie in Z_p");

    PadicMat a = m;
    SmithForm out{padic_identity(rows, p, prec), padic_identity(cols, p, prec), {}, 0};
    const std::size_t d = std::min(rows, cols);
    for (std::size_t k = 0; k < d; ++k) {
        std::size_t pi = k, pj = k;
        bool found = false;
        long best = 0;
        for (std::size_t i = k; i < rows; ++i)
            for (std::size_t j = k; j < cols; ++j) {
                const Padic& e = a.at(i, j);
                if (e.is_zero()) continue;
                if (!found || e.valuation() < best) {
                    found = true;
                    best = e.valuation();
                    pi = i;
                    pj = j;
                }
            }
        if (!found) {
            for (std::size_t r = k; r < d; ++r) out.diag_vals.push_back(-1);
            return out;
        }
        swap_rows(a, pi, k);
        swap_rows(out.U, pi, k);
        swap_cols(a, pj, k);
        swap_cols(out.V, pj, k);

        // scale row k by the pivot's unit inverse so the pivot becomes p^best
        Padic uinv = Padic::from_unit(p, 1, -best, prec) * a.at(k, k);
        uinv = uinv.inv(); // unit, so this keeps U unimodular
        for (std::size_t j = 0; j < cols; ++j) a.at(k, j) = a.at(k, j) * uinv;
        for (std::size_t j = 0; j < rows; ++j) out.U.at(k, j) = out.U.at(k, j) * uinv;

        const Padic pivot = a.at(k, k);
        const Padic pinv = pivot.inv();
        for (std::size_t i = k + 1; i < rows; ++i) {
            if (a.at(i, k).is_zero()) continue;
            Padic f = a.at(i, k) * pinv; // in Z_p by pivot minimality
            for (std::size_t j = 0; j < cols; ++j)
                a.at(i, j) = a.at(i, j) - f * a.at(k, j);
            for (std::size_t j = 0; j < rows; ++j)
                out.U.at(i, j) = out.U.at(i, j) - f * out.U.at(k, j);
        }
        for (std::size_t j = k + 1; j < cols; ++j) {
            if (a.at(k, j).is_zero()) continue;
            Padic f = a.at(k, j) * pinv;
            for (std::size_t i = 0; i < rows; ++i)
                a.at(i, j) = a.at(i, j) - f * a.at(i, k);
            for (std::size_t i = 0; i < cols; ++i)
                out.V.at(i, j) = out.V.at(i, j) - f * out.V.at(i, k);
        }
        out.diag_vals.push_back(best);
        ++out.rank;
    }
    return out;
}

PadicMat saturated_kernel(const PadicMat& m) {
    const long p = m.at(0, 0).prime();
    const long prec = m.at(0, 0).precision();
    SmithForm sf = smith_form(m);
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (j >= sf.diag_vals.size() || sf.diag_vals[j] < 0) keep.push_back(j);
    PadicMat ker(m.cols(), keep.size(), Padic::zero(p, prec));
    for (std::size_t c = 0; c < keep.size(); ++c)
        for (std::size_t i = 0; i < m.cols(); ++i) ker.at(i, c) = sf.V.at(i, keep[c]);
    return ker;
}

CokerOrder coker_order(const PadicMat& m) {
    SmithForm sf = smith_form(m);
    CokerOrder out;
    if (sf.diag_vals.size() < m.rows()) return out; // wide enough only if cols >= rows
    for (long a : sf.diag_vals)
        if (a < 0) return out;
    out.finite = true;
    out.p_exponent = 0;
    for (long a : sf.diag_vals) out.p_exponent += a;
    out.order = pow_int(m.at(0, 0).prime(), out.p_exponent);
    return out;
}

GroupRingElement fitting_ideal(const GroupRingMat& m) {
    if (!m.square()) throw NotSquare("fitting_ideal: presentation not square");
    return det_cofactor(m);
}

} // namespace anticyclo
