#include "anticyclo/zmod_linalg.hpp"

namespace anticyclo::zmod {

long val(Int x, long p, long e) {
    Int m = pow_int(p, e);
    x %= m;
    if (x < 0) x += m;
    if (x == 0) return e;
    long v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

namespace {

void reduce(Mat& A, const Int& m) {
    for (auto& row : A)
        for (auto& x : row) {
            x %= m;
            if (x < 0) x += m;
        }
}

Mat identity(std::size_t n) {
    Mat I(n, Vec(n, 0));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

// row_i -= f * row_k
void row_op(Mat& A, std::size_t i, std::size_t k, const Int& f, const Int& m) {
    for (std::size_t j = 0; j < A[i].size(); ++j) {
        A[i][j] = (A[i][j] - f * A[k][j]) % m;
        if (A[i][j] < 0) A[i][j] += m;
    }
}

void col_op(Mat& A, std::size_t j, std::size_t k, const Int& f, const Int& m) {
    for (std::size_t i = 0; i < A.size(); ++i) {
        A[i][j] = (A[i][j] - f * A[i][k]) % m;
        if (A[i][j] < 0) A[i][j] += m;
    }
}

void row_scale(Mat& A, std::size_t i, const Int& u, const Int& m) {
    for (auto& x : A[i]) {
        x = (x * u) % m;
    }
}

} // namespace

Diagonal diagonalize(Mat M, long p, long e) {
    const std::size_t rows = M.size();
    const std::size_t cols = rows ? M[0].size() : 0;
    const Int m = pow_int(p, e);
    reduce(M, m);

    Diagonal out;
    out.U = identity(rows);
    out.V = identity(cols);
    const std::size_t steps = std::min(rows, cols);
    out.diag_vals.assign(steps, e);

    for (std::size_t k = 0; k < steps; ++k) {
        // pivot of minimal valuation, ties broken by lowest (row, col)
        long best = e;
        std::size_t bi = k, bj = k;
        for (std::size_t i = k; i < rows; ++i)
            for (std::size_t j = k; j < cols; ++j) {
                long v = val(M[i][j], p, e);
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (best == e) break; // remaining block is zero
        std::swap(M[k], M[bi]);
        std::swap(out.U[k], out.U[bi]);
        if (bj != k) {
            for (std::size_t i = 0; i < rows; ++i) std::swap(M[i][k], M[i][bj]);
            for (std::size_t i = 0; i < cols; ++i) std::swap(out.V[i][k], out.V[i][bj]);
        }
        // scale pivot to p^a
        Int pa = pow_int(p, best);
        Int u = M[k][k] / pa;
        Int uinv = mod_inverse(u, m);
        row_scale(M, k, uinv, m);
        row_scale(out.U, k, uinv, m);
        for (std::size_t i = k + 1; i < rows; ++i) {
            if (M[i][k] == 0) continue;
            Int f = M[i][k] / pa;
            row_op(M, i, k, f, m);
            row_op(out.U, i, k, f, m);
        }
        for (std::size_t j = k + 1; j < cols; ++j) {
            if (M[k][j] == 0) continue;
            Int f = M[k][j] / pa;
            col_op(M, j, k, f, m);
            col_op(out.V, j, k, f, m);
        }
        out.diag_vals[k] = best;
    }
    return out;
}

std::optional<Vec> solve(const Mat& M, const Vec& v, long p, long e) {
    const std::size_t rows = M.size();
    const std::size_t cols = rows ? M[0].size() : 0;
    if (v.size() != rows) throw InconsistentDimensions("zmod::solve");
    const Int m = pow_int(p, e);

    Diagonal d = diagonalize(M, p, e);
    Vec w(rows, 0);
    for (std::size_t i = 0; i < rows; ++i) {
        Int s = 0;
        for (std::size_t j = 0; j < rows; ++j) s += d.U[i][j] * v[j];
        s %= m;
        if (s < 0) s += m;
        w[i] = s;
    }
    Vec y(cols, 0);
    const std::size_t steps = std::min(rows, cols);
    for (std::size_t k = 0; k < steps; ++k) {
        long a = d.diag_vals[k];
        if (val(w[k], p, e) < a) return std::nullopt;
        if (a < e) y[k] = w[k] / pow_int(p, a);
    }
    for (std::size_t i = steps; i < rows; ++i)
        if (w[i] % m != 0) return std::nullopt;
    Vec x(cols, 0);
    for (std::size_t i = 0; i < cols; ++i) {
        Int s = 0;
        for (std::size_t j = 0; j < cols; ++j) s += d.V[i][j] * y[j];
        s %= m;
        if (s < 0) s += m;
        x[i] = s;
    }
    return x;
}

bool in_column_span(const Mat& M, const Vec& v, long p, long e) {
    return solve(M, v, p, e).has_value();
}

} // namespace anticyclo::zmod
