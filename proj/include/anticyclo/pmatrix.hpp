#pragma once

#include <functional>
#include <vector>

#include "anticyclo/group_ring.hpp"
#include "anticyclo/padic.hpp"

namespace anticyclo {

/// Dense matrix over a commutative ring element type R (Padic for
/// Z_p/Q_p, GroupRingElement for R_n).
template <typename R>
class Mat {
public:
    Mat(std::size_t rows, std::size_t cols, const R& fill)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Mat from_rows(std::vector<std::vector<R>> rows) {
        if (rows.empty()) throw BadInput("Mat: no rows");
        Mat m(rows.size(), rows[0].size(), rows[0][0]);
        for (std::size_t i = 0; i < m.rows_; ++i) {
            if (rows[i].size() != m.cols_) throw InconsistentDimensions("Mat: ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    R& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const R& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Mat submatrix_erase(std::size_t row, std::size_t col) const {
        Mat m(rows_ - 1, cols_ - 1, data_[0]);
        for (std::size_t i = 0, ti = 0; i < rows_; ++i) {
            if (i == row) continue;
            for (std::size_t j = 0, tj = 0; j < cols_; ++j) {
                if (j == col) continue;
                m.at(ti, tj) = at(i, j);
                ++tj;
            }
            ++ti;
        }
        return m;
    }

    Mat erase_rowcol_pair(std::size_t a, std::size_t b) const {
        // remove rows and columns a and b (a != b); used by the Pfaffian
        Mat m = submatrix_erase(std::max(a, b), std::max(a, b));
        return m.submatrix_erase(std::min(a, b), std::min(a, b));
    }

    Mat transpose() const {
        Mat m(cols_, rows_, data_[0]);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    Mat operator*(const Mat& rhs) const {
        if (cols_ != rhs.rows_) throw InconsistentDimensions("Mat::operator*");
        Mat m(rows_, rhs.cols_, data_[0]);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                R acc = at(i, 0) * rhs.at(0, j);
                for (std::size_t k = 1; k < cols_; ++k) acc = acc + at(i, k) * rhs.at(k, j);
                m.at(i, j) = acc;
            }
        return m;
    }

private:
    std::size_t rows_, cols_;
    std::vector<R> data_;
};

using PadicMat = Mat<Padic>;
using GroupRingMat = Mat<GroupRingElement>;

// equality helpers shared by the generic algorithms
inline bool ring_eq(const Padic& a, const Padic& b) { return a.eq(b); }
inline bool ring_eq(const GroupRingElement& a, const GroupRingElement& b) { return a == b; }
inline bool ring_is_zero(const Padic& a) { return a.is_zero(); }
inline bool ring_is_zero(const GroupRingElement& a) { return a.is_zero(); }

/// Determinant by cofactor expansion along the first row. Exact over any
/// ring; intended for the small matrices this toolkit deals with.
template <typename R>
R det_cofactor(const Mat<R>& m) {
    if (!m.square()) throw NotSquare("det: matrix not square");
    const std::size_t n = m.rows();
    if (n == 1) return m.at(0, 0);
    R acc = m.at(0, 0) * det_cofactor(m.submatrix_erase(0, 0));
    for (std::size_t j = 1; j < n; ++j) {
        R term = m.at(0, j) * det_cofactor(m.submatrix_erase(0, j));
        acc = (j % 2 == 1) ? acc - term : acc + term;
    }
    return acc;
}

// minor(M, i, j): determinant of M with row i and column j deleted;
// the empty (0x0) minor of a 1x1 matrix is 1 by convention
template <typename R>
R minor_det(const Mat<R>& m, std::size_t i, std::size_t j, const R& one) {
    if (!m.square()) throw NotSquare("minor: matrix not square");
    if (m.rows() == 1) return one;
    return det_cofactor(m.submatrix_erase(i, j));
}

// adjugate: adj(M)[i][j] = (-1)^{i+j} minor(M, j, i), so M adj(M) = det(M) I
template <typename R>
Mat<R> adjugate(const Mat<R>& m, const R& one) {
    if (!m.square()) throw NotSquare("adjugate: matrix not square");
    const std::size_t n = m.rows();
    Mat<R> a(n, n, one);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            R c = minor_det(m, j, i, one);
            a.at(i, j) = ((i + j) % 2 == 1) ? -c : c;
        }
    return a;
}

/// Pfaffian of an alternating matrix by expansion along the first row;
/// pf(M)^2 = det(M).
template <typename R>
R pfaffian(const Mat<R>& m) {
    if (!m.square()) throw NotSquare("pfaffian: matrix not square");
    const std::size_t n = m.rows();
    if (n % 2 != 0) throw OddDimension("pfaffian needs even dimension");
    for (std::size_t i = 0; i < n; ++i) {
        if (!ring_is_zero(m.at(i, i))) throw NotAlternating("nonzero diagonal");
        for (std::size_t j = i + 1; j < n; ++j) {
            R s = m.at(i, j) + m.at(j, i);
            if (!ring_is_zero(s)) throw NotAlternating("M^T != -M");
        }
    }
    std::function<R(const Mat<R>&)> pf = [&](const Mat<R>& a) -> R {
        const std::size_t k = a.rows();
        if (k == 0) throw BadInput("pfaffian: empty");
        if (k == 2) return a.at(0, 1);
        R acc = a.at(0, 1) * pf(a.erase_rowcol_pair(0, 1));
        for (std::size_t j = 2; j < k; ++j) {
            R term = a.at(0, j) * pf(a.erase_rowcol_pair(0, j));
            acc = (j % 2 == 0) ? acc - term : acc + term;
        }
        return acc;
    };
    if (n == 0) throw BadInput("pfaffian: empty");
    return pf(m);
}

/// Smith data over Z_p at working precision: U M V = diag(p^{a_1} <= ...),
/// with U, V unimodular over Z_p. a_k == -1 encodes a zero diagonal entry
/// (zero at the matrix's precision).
struct SmithForm {
    PadicMat U;
    PadicMat V;
    std::vector<long> diag_vals;
    std::size_t rank = 0;
};

// determinant over Z_p / Q_p by elimination with minimal-valuation pivoting
Padic padic_det(const PadicMat& m);

SmithForm smith_form(const PadicMat& m);

// Z_p-basis (columns) of the p-saturated kernel: ker over Q_p intersected
// with the lattice; empty cols when the kernel is trivial
PadicMat saturated_kernel(const PadicMat& m);

struct CokerOrder {
    bool finite = false;
    Int order = 0;      // power of p when finite
    long p_exponent = 0;
};

// order of Z_p^rows / (column span of M)
CokerOrder coker_order(const PadicMat& m);

// Fitt_0 of the cokernel of a square presentation over R_n: (det M)
GroupRingElement fitting_ideal(const GroupRingMat& m);

} // namespace anticyclo
