#pragma once

#include <optional>
#include <vector>

#include "anticyclo/padic.hpp"

namespace anticyclo::zmod {

using Vec = std::vector<Int>;
using Mat = std::vector<Vec>;

// valuation of x in Z/p^e, with val(0) = e
long val(Int x, long p, long e);

/// U * M * V = D with U, V invertible over Z/p^e and D diagonal with
/// entries p^{a_k} (a_k = e encodes a zero diagonal entry).
struct Diagonal {
    Mat U;
    Mat V;
    std::vector<long> diag_vals; // size min(rows, cols)
};

Diagonal diagonalize(Mat M, long p, long e);

// solve M x = v over Z/p^e; nullopt when no solution exists
std::optional<Vec> solve(const Mat& M, const Vec& v, long p, long e);

bool in_column_span(const Mat& M, const Vec& v, long p, long e);

} // namespace anticyclo::zmod
