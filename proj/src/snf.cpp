#include "k3lat/snf.hpp"

#include <cstddef>

namespace k3lat {

namespace {

void swap_rows(IMat& a, IMat& u, std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
}

void swap_cols(IMat& a, IMat& v, std::size_t i, std::size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
}

// row i -= q * row j
void add_row(IMat& a, IMat& u, std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t k = 0; k < a[i].size(); ++k) a[i][k] -= q * a[j][k];
    for (std::size_t k = 0; k < u[i].size(); ++k) u[i][k] -= q * u[j][k];
}

// col i -= q * col j
void add_col(IMat& a, IMat& v, std::size_t i, std::size_t j, const Int& q) {
    for (auto& row : a) row[i] -= q * row[j];
    for (auto& row : v) row[i] -= q * row[j];
}

void negate_row(IMat& a, IMat& u, std::size_t i) {
    for (auto& x : a[i]) x = -x;
    for (auto& x : u[i]) x = -x;
}

}  // namespace

SmithForm smith_normal_form(const IMat& m) {
    std::size_t r = rows(m), c = cols(m);
    SmithForm s{m, imat_identity(r), imat_identity(c)};
    IMat& a = s.d;
    std::size_t t = 0;
    while (t < r && t < c) {
        // Find a pivot in the remaining block.
        std::size_t pi = t, pj = t;
        bool found = false;
        Int best = 0;
        for (std::size_t i = t; i < r; ++i)
            for (std::size_t j = t; j < c; ++j)
                if (a[i][j] != 0 && (!found || abs(a[i][j]) < best)) {
                    best = abs(a[i][j]);
                    pi = i;
                    pj = j;
                    found = true;
                }
        if (!found) break;
        if (pi != t) swap_rows(a, s.u, t, pi);
        if (pj != t) swap_cols(a, s.v, t, pj);

        // Clear row and column t.
        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (a[i][t] == 0) continue;
                Int q = a[i][t] / a[t][t];
                add_row(a, s.u, i, t, q);
                if (a[i][t] != 0) {
                    swap_rows(a, s.u, t, i);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (a[t][j] == 0) continue;
                Int q = a[t][j] / a[t][t];
                add_col(a, s.v, j, t, q);
                if (a[t][j] != 0) {
                    swap_cols(a, s.v, t, j);
                    dirty = true;
                }
            }
            if (!dirty) break;
        }

        // Enforce divisibility: a[t][t] must divide every later entry.
        bool redo = false;
        for (std::size_t i = t + 1; i < r && !redo; ++i)
            for (std::size_t j = t + 1; j < c && !redo; ++j)
                if (a[i][j] % a[t][t] != 0) {
                    // Fold row i into row t and restart the pivot step.
                    add_row(a, s.u, t, i, Int(-1));
                    redo = true;
                }
        if (redo) continue;

        if (a[t][t] < 0) negate_row(a, s.u, t);
        ++t;
    }
    return s;
}

std::vector<IVec> integer_kernel(const IMat& m) {
    SmithForm s = smith_normal_form(m);
    std::size_t c = cols(m);
    std::size_t rank = 0;
    for (std::size_t i = 0; i < rows(m) && i < c; ++i)
        if (s.d[i][i] != 0) ++rank;
    std::vector<IVec> basis;
    for (std::size_t j = rank; j < c; ++j) {
        IVec col(c);
        for (std::size_t i = 0; i < c; ++i) col[i] = s.v[i][j];
        basis.push_back(col);
    }
    return basis;
}

}  // namespace k3lat
