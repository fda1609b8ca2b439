#include "geom.hpp"

namespace hdl {

Vec sub(const Pt& a, const Pt& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::Dimension, "sub: dimension mismatch");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec add(const Pt& a, const Vec& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::Dimension, "add: dimension mismatch");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec scale(const Vec& a, const Rat& s) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

Rat dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::Dimension, "dot: dimension mismatch");
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat norm2(const Vec& a) { return dot(a, a); }

int det_sign(Mat m) {
    const size_t n = m.size();
    for (auto& row : m)
        if (row.size() != n) throw Error(ErrorCode::Dimension, "det_sign: not square");
    int sign = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) { std::swap(m[piv], m[col]); sign = -sign; }
        if (m[col][col] < 0) sign = -sign;
        for (size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            Rat f = m[r][col] / m[col][col];
            for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return sign;
}

// Gauss-Jordan elimination of the augmented system [A | b].
std::optional<AffineSolution> solve_affine(Mat A, std::vector<Rat> b) {
    const size_t rows = A.size();
    const size_t cols = rows ? A[0].size() : 0;
    if (b.size() != rows) throw Error(ErrorCode::Dimension, "solve_affine: size mismatch");

    std::vector<int> pivot_col_of_row;
    std::vector<bool> is_pivot_col(cols, false);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && A[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(A[piv], A[r]); std::swap(b[piv], b[r]);
        Rat inv = A[r][c];
        for (size_t cc = c; cc < cols; ++cc) A[r][cc] /= inv;
        b[r] /= inv;
        for (size_t rr = 0; rr < rows; ++rr) {
            if (rr == r || A[rr][c] == 0) continue;
            Rat f = A[rr][c];
            for (size_t cc = c; cc < cols; ++cc) A[rr][cc] -= f * A[r][cc];
            b[rr] -= f * b[r];
        }
        pivot_col_of_row.push_back((int)c);
        is_pivot_col[c] = true;
        ++r;
    }
    for (size_t rr = r; rr < rows; ++rr)
        if (b[rr] != 0) return std::nullopt; // inconsistent

    AffineSolution sol;
    sol.particular.assign(cols, Rat(0));
    for (size_t i = 0; i < pivot_col_of_row.size(); ++i)
        sol.particular[pivot_col_of_row[i]] = b[i];
    for (size_t c = 0; c < cols; ++c) {
        if (is_pivot_col[c]) continue;
        std::vector<Rat> k(cols, Rat(0));
        k[c] = 1;
        for (size_t i = 0; i < pivot_col_of_row.size(); ++i)
            k[pivot_col_of_row[i]] = -A[i][c];
        sol.kernel.push_back(std::move(k));
    }
    return sol;
}

int rank(Mat m) {
    const size_t rows = m.size();
    const size_t cols = rows ? m[0].size() : 0;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        for (size_t rr = r + 1; rr < rows; ++rr) {
            if (m[rr][c] == 0) continue;
            Rat f = m[rr][c] / m[r][c];
            for (size_t cc = c; cc < cols; ++cc) m[rr][cc] -= f * m[r][cc];
        }
        ++r;
    }
    return (int)r;
}

int orientation_sign(const std::vector<Pt>& pts) {
    if (pts.empty()) throw Error(ErrorCode::Dimension, "orientation_sign: no points");
    const size_t d = pts[0].size();
    if (pts.size() != d + 1)
        throw Error(ErrorCode::Dimension, "orientation_sign: need d+1 points in R^d");
    Mat m(d, std::vector<Rat>(d));
    for (size_t i = 0; i < d; ++i) {
        if (pts[i + 1].size() != d)
            throw Error(ErrorCode::Dimension, "orientation_sign: mixed dimensions");
        for (size_t j = 0; j < d; ++j) m[i][j] = pts[i + 1][j] - pts[0][j];
    }
    return det_sign(std::move(m));
}

int transverse_orientation(const OrientedFrame& u, const OrientedFrame& v,
                           const OrientedFrame& w, int ambient) {
    Mat m;
    for (const auto& f : {u, v, w})
        for (const auto& vec : f.vectors) {
            if ((int)vec.size() != ambient)
                throw Error(ErrorCode::Dimension, "transverse_orientation: dimension mismatch");
            m.push_back(vec);
        }
    if ((int)m.size() != ambient)
        throw Error(ErrorCode::RankDeficient, "transverse_orientation: frame count != ambient dim");
    int s = det_sign(std::move(m));
    if (s == 0)
        throw Error(ErrorCode::RankDeficient, "transverse_orientation: combined frame degenerate");
    return s;
}

} // namespace hdl
