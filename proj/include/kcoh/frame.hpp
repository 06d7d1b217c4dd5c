// Optimal basis (F_0, F_i, G_i) and the complex structure J_t on m.
#pragma once

#include "kcoh/mn_catalog.hpp"

#include <Eigen/Dense>

namespace kcoh {

enum class EntryKind { Plus, Minus, SelfDual, Flag };
std::string kind_name(EntryKind k);

struct BasisEntry {
    XElem F, G;
    EntryKind kind = EntryKind::Flag;
    int ell = 0;                   // pair kinds
    int alpha = -1, alpha_d = -1;  // pair kinds
    int eps = 1;
    int beta = -1;                 // flag kind
};

struct OptimalBasis {
    AlgebraPtr alg;
    XElem f0;                         // Z_D
    std::vector<BasisEntry> entries;  // entries[i-1] holds (F_i, G_i)
    int nf = 0;
    int size() const { return static_cast<int>(entries.size()); }
};

OptimalBasis build_optimal_basis(const Scenario& s, const Decomposition& d, const CRPairing& p);

inline constexpr double kSingularTol = 1e-8;

// c with J_t F_i = c G_i (then J_t G_i = -F_i / c).
double j_coefficient(const BasisEntry& e, double t, double singular_tol = kSingularTol);

// J_t F_i (or J_t G_i) for entry index i in 1..n-1.
CElem j_closed(const OptimalBasis& b, int i, double t, bool of_g = false);
// Linear extension to any E in m via B-orthonormal coordinates.
CElem j_closed_apply(const OptimalBasis& b, const CElem& e, double t);

// J_t from the eigenspace splitting m^C = m10(t) + conj(m10(t)).
class JOracle {
public:
    JOracle(const Scenario& s, const CRPairing& p, double t, double tol = 1e-9);
    CElem apply(const CElem& e) const;
    double t() const { return t_; }

private:
    const Algebra* g_;
    double t_, tol_;
    Eigen::MatrixXcd basis_;  // columns: m10 vectors then their conjugates
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr_;
    int n10_ = 0;
};

CElem j_oracle(const Scenario& s, const CRPairing& p, const CElem& e, double t);

}  // namespace kcoh
