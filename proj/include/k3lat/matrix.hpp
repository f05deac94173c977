#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "k3lat/rational.hpp"

namespace k3lat {

using IVec = std::vector<Int>;
using IMat = std::vector<IVec>;
using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;

inline std::size_t rows(const IMat& m) { return m.size(); }
inline std::size_t cols(const IMat& m) { return m.empty() ? 0 : m[0].size(); }

inline IMat imat_zero(std::size_t r, std::size_t c) { return IMat(r, IVec(c, Int(0))); }

inline IMat imat_identity(std::size_t n) {
    IMat m = imat_zero(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IMat imat_transpose(const IMat& m) {
    IMat t = imat_zero(cols(m), rows(m));
    for (std::size_t i = 0; i < rows(m); ++i)
        for (std::size_t j = 0; j < cols(m); ++j) t[j][i] = m[i][j];
    return t;
}

inline IMat imat_mul(const IMat& a, const IMat& b) {
    if (cols(a) != rows(b)) throw std::invalid_argument("matrix dimension mismatch");
    IMat c = imat_zero(rows(a), cols(b));
    for (std::size_t i = 0; i < rows(a); ++i)
        for (std::size_t k = 0; k < cols(a); ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < cols(b); ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

inline IVec imat_vec(const IMat& a, const IVec& v) {
    if (cols(a) != v.size()) throw std::invalid_argument("matrix/vector dimension mismatch");
    IVec w(rows(a), Int(0));
    for (std::size_t i = 0; i < rows(a); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) w[i] += a[i][j] * v[j];
    return w;
}

inline QVec qmat_vec(const IMat& a, const QVec& v) {
    QVec w(rows(a), Rat(0));
    for (std::size_t i = 0; i < rows(a); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) w[i] += Rat(a[i][j]) * v[j];
    return w;
}

inline Int ivec_dot(const IVec& a, const IVec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// x^T G y for integer symmetric G.
inline Int gram_pair(const IMat& g, const IVec& x, const IVec& y) {
    Int s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * g[i][j] * y[j];
    }
    return s;
}

inline Rat gram_pair_q(const IMat& g, const QVec& x, const QVec& y) {
    Rat s(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == Rat(0)) continue;
        for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * Rat(g[i][j]) * y[j];
    }
    return s;
}

// Fraction-free determinant (Bareiss).
inline Int imat_det(IMat m) {
    std::size_t n = rows(m);
    if (n != cols(m)) throw std::invalid_argument("determinant of non-square matrix");
    if (n == 0) return Int(1);
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return Int(0);
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

inline bool imat_is_symmetric(const IMat& m) {
    if (rows(m) != cols(m)) return false;
    for (std::size_t i = 0; i < rows(m); ++i)
        for (std::size_t j = i + 1; j < cols(m); ++j)
            if (m[i][j] != m[j][i]) return false;
    return true;
}

inline Int imat_trace(const IMat& m) {
    Int t = 0;
    for (std::size_t i = 0; i < rows(m); ++i) t += m[i][i];
    return t;
}

// Signature (p, q) of a nondegenerate symmetric integer matrix, by symmetric
// Gaussian reduction over the rationals.
inline std::pair<int, int> signature(const IMat& gram) {
    std::size_t n = rows(gram);
    QMat a(n, QVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(gram[i][j]);
    int pos = 0, neg = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] == Rat(0)) {
            // Find a usable pivot: prefer a nonzero diagonal below, else mix in a
            // row with a nonzero off-diagonal entry in column k.
            std::size_t p = k + 1;
            while (p < n && a[p][p] == Rat(0)) ++p;
            if (p < n) {
                std::swap(a[k], a[p]);
                for (std::size_t i = 0; i < n; ++i) std::swap(a[i][k], a[i][p]);
            } else {
                std::size_t q = k + 1;
                while (q < n && a[q][k] == Rat(0)) ++q;
                if (q == n) throw std::invalid_argument("degenerate Gram matrix");
                for (std::size_t j = 0; j < n; ++j) a[k][j] += a[q][j];
                for (std::size_t i = 0; i < n; ++i) a[i][k] += a[i][q];
            }
        }
        Rat piv = a[k][k];
        if (piv > Rat(0)) ++pos; else ++neg;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == Rat(0)) continue;
            Rat f = a[i][k] / piv;
            for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[k][j];
            for (std::size_t j = 0; j < n; ++j) a[j][i] -= f * a[j][k];
        }
    }
    return {pos, neg};
}

}  // namespace k3lat
