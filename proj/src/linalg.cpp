#include "galimage/linalg.hpp"

#include <stdexcept>

namespace galimage {

std::vector<std::size_t> rref(QMatrix& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        BigRat inv = 1 / m[r][c];
        for (auto& v : m[r]) v *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            BigRat f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(QMatrix m) { return rref(m).size(); }

std::vector<QVector> nullspace(const QMatrix& a, std::size_t cols) {
    QMatrix m = a;
    for (auto& row : m)
        if (row.size() != cols) throw std::invalid_argument("nullspace: ragged matrix");
    auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<QVector> out;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        QVector v(cols, BigRat(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<QVector> solve(const QMatrix& a, const QVector& b, std::size_t cols) {
    if (a.size() != b.size()) throw std::invalid_argument("solve: dimension mismatch");
    QMatrix m = a;
    for (std::size_t i = 0; i < m.size(); ++i) m[i].push_back(b[i]);
    auto pivots = rref(m);
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    QVector x(cols, BigRat(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = m[i][cols];
    return x;
}

std::optional<QMatrix> inverse(const QMatrix& a) {
    const std::size_t n = a.size();
    QMatrix m = a;
    for (std::size_t i = 0; i < n; ++i) {
        m[i].resize(2 * n, BigRat(0));
        m[i][n + i] = 1;
    }
    auto pivots = rref(m);
    if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
    QMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) out[i].assign(m[i].begin() + static_cast<long>(n), m[i].end());
    return out;
}

QVector mat_vec(const QMatrix& a, const QVector& x) {
    QVector out(a.size(), BigRat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) out[i] += a[i][j] * x[j];
    return out;
}

}  // namespace galimage
