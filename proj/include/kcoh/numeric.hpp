// Dense complex vectors for floating-point elements of g^C.
#pragma once

#include "kcoh/liealg.hpp"

#include <Eigen/Dense>
#include <vector>

namespace kcoh {

// Layout: epsilon Cartan coordinates first, then one slot per root.
inline Eigen::VectorXcd to_vector(const CElem& x) {
    const Algebra& g = *x.alg;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(g.eps_dim() + g.nroots());
    for (auto& [k, c] : x.h) v[k] = c;
    for (auto& [a, c] : x.e) v[g.eps_dim() + a] = c;
    return v;
}

inline CElem from_vector(const Algebra& g, const Eigen::VectorXcd& v) {
    CElem x(g);
    for (int k = 0; k < g.eps_dim(); ++k) x.add_h(k, v[k]);
    for (int a = 0; a < g.nroots(); ++a) x.add_e(a, v[g.eps_dim() + a]);
    return x;
}

// Orthogonal projector onto the span of a set of columns.
class SpanProjector {
public:
    explicit SpanProjector(const std::vector<Eigen::VectorXcd>& cols) {
        if (cols.empty()) return;
        Eigen::MatrixXcd m(cols.front().size(), cols.size());
        for (size_t j = 0; j < cols.size(); ++j) m.col(j) = cols[j] / cols[j].norm();
        Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(m);
        rank_ = static_cast<int>(qr.rank());
        Eigen::MatrixXcd q = qr.householderQ();
        q_ = q.leftCols(rank_);
    }
    int rank() const { return rank_; }
    // ||x - P x|| / max(||x||, 1)
    double rel_residual(const Eigen::VectorXcd& x) const {
        Eigen::VectorXcd r = rank_ ? Eigen::VectorXcd(x - q_ * (q_.adjoint() * x)) : x;
        return r.norm() / std::max(x.norm(), 1.0);
    }

private:
    Eigen::MatrixXcd q_;
    int rank_ = 0;
};

}  // namespace kcoh
