#include "kcoh/exact_linalg.hpp"

namespace kcoh {

std::vector<int> rref(QMat& m, int ncols) {
    std::vector<int> piv;
    size_t row = 0;
    for (int c = 0; c < ncols && row < m.size(); ++c) {
        size_t p = row;
        while (p < m.size() && m[p][c].is_zero()) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        Q2 inv = m[row][c].inverse();
        for (int j = c; j < ncols; ++j)
            if (!m[row][j].is_zero()) m[row][j] = m[row][j] * inv;
        for (size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][c].is_zero()) continue;
            Q2 f = m[r][c];
            for (int j = c; j < ncols; ++j)
                if (!m[row][j].is_zero()) m[r][j] -= f * m[row][j];
        }
        piv.push_back(c);
        ++row;
    }
    m.resize(row);
    return piv;
}

int rank_of(QMat m, int ncols) { return static_cast<int>(rref(m, ncols).size()); }

std::vector<QVec> nullspace(const QMat& m_in, int ncols) {
    QMat m = m_in;
    auto piv = rref(m, ncols);
    std::vector<bool> is_piv(ncols, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<QVec> out;
    for (int f = 0; f < ncols; ++f) {
        if (is_piv[f]) continue;
        QVec v(ncols, Q2());
        v[f] = Q2(1);
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][f];
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<QVec> span_basis(const std::vector<QVec>& vs, int ncols) {
    QMat m = vs;
    rref(m, ncols);
    return m;
}

std::optional<QVec> coordinates_in(const std::vector<QVec>& basis, const QVec& v) {
    const int k = static_cast<int>(basis.size());
    const int n = static_cast<int>(v.size());
    // Solve sum_j c_j basis[j] = v: n equations in k unknowns, augmented column last.
    QMat a(n, QVec(k + 1, Q2()));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < k; ++j) a[i][j] = basis[j][i];
        a[i][k] = v[i];
    }
    auto piv = rref(a, k + 1);
    if (!piv.empty() && piv.back() == k) return std::nullopt;
    if (static_cast<int>(piv.size()) != k) throw std::invalid_argument("coordinates_in: dependent basis");
    QVec c(k, Q2());
    for (size_t r = 0; r < piv.size(); ++r) c[piv[r]] = a[r][k];
    return c;
}

CompactSpace::CompactSpace(AlgebraPtr g) : g_(std::move(g)) {
    for (int k = 0; k < g_->dim(); ++k) basis_.push_back(compact_basis_element(*g_, k));
}

QVec CompactSpace::killing_row(const XElem& y) const {
    QVec w(dim(), Q2());
    for (int k = 0; k < dim(); ++k) {
        Q2i v = killing(basis_[k], y);
        if (!v.im.is_zero()) throw std::logic_error("killing_row: element not in compact form");
        w[k] = v.re;
    }
    return w;
}

QMat CompactSpace::ad_matrix(const XElem& y) const {
    QMat m(dim(), QVec(dim(), Q2()));
    for (int j = 0; j < dim(); ++j) {
        QVec c = coords(bracket(y, basis_[j]));
        for (int i = 0; i < dim(); ++i) m[i][j] = c[i];
    }
    return m;
}

std::vector<QVec> CompactSpace::centralizer_perp(const std::vector<XElem>& s,
                                                 const std::vector<XElem>& t) const {
    QMat eq;
    for (auto& y : s) {
        QMat ad = ad_matrix(y);
        for (auto& r : ad) eq.push_back(std::move(r));
    }
    for (auto& y : t) eq.push_back(killing_row(y));
    return nullspace(eq, dim());
}

}  // namespace kcoh
