// Ricci form values along the optimal curve and the representative Z_rho(t).
#pragma once

#include "kcoh/forms.hpp"

#include <optional>
#include <set>

namespace kcoh {

// Pfaffian of a real skew matrix by pivoted skew elimination.
double pfaffian(Eigen::MatrixXd m);

struct RicciSample {
    double t = 0;
    double hprime = 0;
    std::vector<double> values, a_coefs, b_coefs;  // index i-1 for basis entry i
};

class RicciEngine {
public:
    RicciEngine(const Scenario& s, const Decomposition& d, const OptimalBasis& b, const MetricProfile& p);

    const Scenario& scenario() const { return *s_; }
    const Decomposition& decomposition() const { return *d_; }
    const OptimalBasis& basis() const { return *b_; }
    const MetricProfile& profile() const { return gram_.profile(); }

    double h(double t) const;                                 // log |Pf(gram)|
    double h_prime(double t, double dt = 1e-4) const;         // central difference + one Richardson step
    double h_prime_blocks(double t) const;                    // derivative of the block product (c = 0)
    Eigen::MatrixXd gram(double t) const { return gram_.gram(t); }

    // { h'/2 - sum_{i<=N_F} tanh^{(-1)^{i+1}}(l_i t) l_i + sum_j beta_j(i Z_D) }
    double brace(double t, double hprime) const;

    // General path for E in m; J from the closed form unless an oracle is supplied.
    double a_coef(const CElem& e, double t, const JOracle* j = nullptr) const;
    double b_coef(const CElem& e, double t, const JOracle* j = nullptr) const;
    double ricci_value(const CElem& e, double t, double hprime, const JOracle* j = nullptr) const;
    double omega_value(const CElem& e, double t) const;  // omega(E^, J E^)

    // Closed forms for basis entry i (1-based); the corrected B uses the z(l) projection,
    // the literal variant follows the printed formulas.
    double a_closed(int i, double t) const;
    double b_closed(int i, double t) const;
    double b_closed_literal(int i, double t) const;
    double ricci_closed(int i, double t, double hprime) const;

    // B(Z_D, [F_i, G_i]) exactly.
    const Q2& w_exact(int i) const { return w_[i - 1]; }

    RicciSample sample(double t, double dt = 1e-4) const;

private:
    const Scenario* s_;
    const Decomposition* d_;
    const OptimalBasis* b_;
    GramBuilder gram_;
    double zz_;
    XElem zkappa_;
    double zkappa_zd_;
    std::vector<Q2> w_;            // B(Z_D, Y_i)
    std::vector<double> zk_;       // B(Z^kappa, (Y_i)_{z(l)})
    Eigen::MatrixXd p_;            // B((Y_i)_{l+m}, (Y_j)_{l+m}), j <= N_F
    std::vector<CElem> ylm_;       // (Y_j)_{l+m}, j <= N_F, numeric
    std::vector<CElem> zl_;        // z(l) basis, numeric
    Eigen::MatrixXd zl_gram_inv_;
    Eigen::VectorXd zl_kappa_;     // B(Z^kappa, z_k)
    std::vector<double> wI_;       // B(I, Y_i)

    double kfac(int i, double t) const;  // tanh^{(-1)^{i+1}}(l_i t) = -1 / j_coefficient
    CElem apply_j(const CElem& e, double t, const JOracle* j) const;
    double zl_kappa_pairing(const CElem& x) const;  // B(Z^kappa, x_{z(l)})
};

struct ZRhoSample {
    double t = 0;
    std::vector<double> coeffs;  // over unknowns (Z_D, [F_a, G_a], z(l)...)
    double residual = 0;
    double f_rho = 0;
    double g_rho = 0, h_rho = 0;  // F_alpha / G_alpha coefficients (KE only)
    std::vector<double> i_rho;
};

struct ZRhoFit {
    std::vector<ZRhoSample> samples;
    std::vector<std::string> unknowns;
    bool ke = false;
    std::set<std::string> unobservable;  // unknowns absent from every B(Z, [E, JE]); solved as 0
    double max_residual = 0;
    double max_g = 0;
    double c_rho = 0, c_variation = 0;
    std::vector<double> i_rho;
    double i_variation = 0;
};

ZRhoSample reconstruct_z_rho_at(const RicciEngine& e, double t, double dt, std::vector<int>* unobservable = nullptr);
ZRhoFit reconstruct_z_rho(const RicciEngine& e, const std::vector<double>& tgrid, double dt = 1e-4);

struct EinsteinResidual {
    double orbit = 0;       // max |rho(E^,JE^) - c omega(E^,JE^)| over basis and grid
    double transversal = 0; // max |B(Z_D,Z_D)| |f_rho' - c f'|
    double total() const { return std::max(orbit, transversal); }
};

EinsteinResidual einstein_residual(const RicciEngine& e, double c, const std::vector<double>& tgrid,
                                   double dt = 1e-4);

}  // namespace kcoh
