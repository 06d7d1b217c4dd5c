// Metric profiles, the representative Z_omega(t), form evaluation and Prop 4.1 residual checks.
#pragma once

#include "kcoh/frame.hpp"

#include <functional>

namespace kcoh {

// f(t) with closed-form derivatives.
struct ScalarFn {
    enum class Kind { Poly, AffineExp, TanhScaled } kind = Kind::Poly;
    std::vector<double> coeffs{0.0, 1.0};  // poly
    double a = 0, b = 0, k = 0;             // a + b e^{kt}  or  a + b tanh(kt)

    double f(double t) const;
    double fp(double t) const;
    double fpp(double t) const;

    static ScalarFn from_json(const json& j);
    json to_json() const;
};

struct MetricProfile {
    ScalarFn f;
    double c = 0;  // C in (4.4'); nonzero only for non-standard KE
    XElem I;       // element of z(l)
    json source;
};

MetricProfile default_profile(const Scenario& s);  // f = t, c = 0, I = 0
MetricProfile load_profile(const json& j, const Scenario& s, const Decomposition& d);
MetricProfile load_profile_file(const std::string& path, const Scenario& s, const Decomposition& d);

// Throws std::invalid_argument when c or I are not admissible for the scenario.
void check_profile(const MetricProfile& p, const Scenario& s, const Decomposition& d);

// f Z_D + (c / cosh t) G_alpha + I.
CElem z_omega(const MetricProfile& p, const Decomposition& d, double t);

// Re B(Z, [X, Y]).
double eval_form(const CElem& z, const CElem& x, const CElem& y);

// omega(J Z^, Z^) = -f'(t) B(Z_D, Z_D).
double eval_transversal(const MetricProfile& p, const Decomposition& d, double t);

// Exact brackets among V = (Z_D, F_1, G_1, ..., F_{n-1}, G_{n-1}).
class FrameForms {
public:
    FrameForms(const Decomposition& d, const OptimalBasis& b);
    int nvec() const { return static_cast<int>(v_.size()); }
    const XElem& vec(int a) const { return v_[a]; }
    const XElem& bracket_of(int a, int b) const { return br_[a][b]; }
    // K[a][b] = B(Z, [V_a, V_b]) for an exact Z.
    Eigen::MatrixXd pairing(const XElem& z) const;

private:
    std::vector<XElem> v_;
    std::vector<std::vector<XElem>> br_;
};

// Omega on the frame (F0^, J F0^, F1^, J F1^, ...): skew 2n x 2n.
class GramBuilder {
public:
    GramBuilder(const MetricProfile& p, const Decomposition& d, const OptimalBasis& b);
    Eigen::MatrixXd gram(double t) const;
    // |off-block-diagonal| maximum, 0 for frame-orthogonal profiles.
    static double off_block(const Eigen::MatrixXd& m);
    const OptimalBasis& basis() const { return *b_; }
    const MetricProfile& profile() const { return p_; }

private:
    MetricProfile p_;
    const OptimalBasis* b_;
    double zz_;
    Eigen::MatrixXd kd_, kg_, ki_;
};

Eigen::MatrixXd gram_matrix(const MetricProfile& p, const Decomposition& d, const OptimalBasis& b, double t);

struct ClosednessResiduals {
    double r_g = 0, r_h = 0;
};

// Finite-difference residuals of g' = -coth(t) g and h' = -tanh(t) h for the
// (4.4') profile plus an optional extra curve added to Z_omega.
ClosednessResiduals closedness_residuals(const MetricProfile& p, const Decomposition& d, double t, double dt,
                                         const std::function<CElem(double)>& extra = {});

}  // namespace kcoh
