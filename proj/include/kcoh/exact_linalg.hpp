// Exact linear algebra over Q(sqrt2) on compact real coordinates.
#pragma once

#include "kcoh/liealg.hpp"

#include <optional>
#include <vector>

namespace kcoh {

using QVec = std::vector<Q2>;
using QMat = std::vector<QVec>;  // row-major

// In-place reduced row echelon form; returns pivot columns.
std::vector<int> rref(QMat& m, int ncols);
int rank_of(QMat m, int ncols);

// Basis of {x : m x = 0}.
std::vector<QVec> nullspace(const QMat& m, int ncols);

// Independent subset spanning the same space (row-reduced basis).
std::vector<QVec> span_basis(const std::vector<QVec>& vs, int ncols);

// Coefficients c with sum c_k basis[k] = v, or nullopt when v is outside the span.
std::optional<QVec> coordinates_in(const std::vector<QVec>& basis, const QVec& v);

// Helpers bound to an algebra's compact basis.
class CompactSpace {
public:
    explicit CompactSpace(AlgebraPtr g);

    const Algebra& alg() const { return *g_; }
    int dim() const { return g_->dim(); }
    const XElem& basis(int k) const { return basis_[k]; }

    QVec coords(const XElem& x) const { return real_coords(x); }
    XElem element(const QVec& c) const { return from_real_coords(*g_, c); }

    // w with B(x, y) = w . coords(x) for every x.
    QVec killing_row(const XElem& y) const;
    // Rows of ad_y: column j is coords([y, basis_j]).
    QMat ad_matrix(const XElem& y) const;

    // C_g(S) intersected with the B-orthogonal complement of T.
    std::vector<QVec> centralizer_perp(const std::vector<XElem>& s, const std::vector<XElem>& t) const;

private:
    AlgebraPtr g_;
    std::vector<XElem> basis_;
};

}  // namespace kcoh
