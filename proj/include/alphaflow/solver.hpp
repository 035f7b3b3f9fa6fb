#pragma once

#include <functional>
#include <memory>

#include "alphaflow/stokes.hpp"

namespace alphaflow {

// Helmholtz-Stokes filter u = T_alpha v on the eigenbasis: the coefficient
// of e_j is divided by 1 + alpha*(mu_j - 1). alpha = 0 is the identity.
Field apply_filter(const StokesEigenbasis& basis, double alpha, const Field& v);

// Projected nonlinearity of the chosen model evaluated by dealiased
// pseudo-spectral products: P(curl v x u) for NS/LNS-alpha, P(u . grad v)
// for Leray-alpha. The result lies in the discrete H.
Field nonlinearity(const StokesEigenbasis& basis, ModelKind model, const Field& v, const Field& u);

// Per-step energy ledger. Column semantics follow the model energy
// identities; residual columns hold trapezoidal finite-difference defects
// of the identity for the step ending at the row.
struct EnergyLedger {
    std::vector<double> t, E_v, a_beta_v, E_u_alpha, diss, Bvu_v, Bvu_u;
    std::vector<double> res_51, res_547, res_725;
    std::size_t size() const { return t.size(); }
    std::string csv(const std::string& manifest_hash) const;
};

struct EnergyReport {
    double max_res_51 = 0.0;   // d/dt||v||^2 + 2 nu a(v,v) + 2(B,v) = 0
    double max_res_547 = 0.0;  // d/dt(||u||^2 + a nu a(u,u)) + 2(nu a(u,u) + a||Lu||^2) = 0
    double max_res_725 = 0.0;  // d/dt||v||^2 + 2 nu a(v,v) = 0
    double max_skew_rotational = 0.0;  // |(B(v,u),u)| relative (NS, LNS-alpha)
    double max_skew_convective = 0.0;  // |(u.grad v, v)| relative (Leray-alpha)
    bool energy_nonincreasing = true;
};
EnergyReport energy_report(const EnergyLedger& ledger);

struct SimState {
    double t = 0.0;
    Eigen::VectorXd coeffs;
    EnergyLedger ledger;
};

struct RunResult {
    SimState state;
    std::vector<Eigen::VectorXd> trajectory;  // per accepted step, when requested
    std::vector<double> times;
    bool blew_up = false;
    double blowup_time = 0.0;
};

// Galerkin integrator on the Stokes eigenbasis: exact exponential factor on
// the diagonal linear part, explicit Heun on the projected nonlinearity.
class GalerkinSolver {
  public:
    GalerkinSolver(std::shared_ptr<const StokesEigenbasis> basis, const SimConfig& cfg);

    const StokesEigenbasis& basis() const { return *basis_; }
    const SimConfig& config() const { return cfg_; }
    int modes() const { return m_; }
    const Eigen::VectorXd& decay_rates() const { return lambda_; }
    const Eigen::VectorXd& filter_multipliers() const { return filt_; }

    Eigen::VectorXd initial_coefficients() const;
    Eigen::VectorXd project_initial(const Field& f) const;

    // Right-hand side coefficients g_j = (B, e_j) at the given state.
    Eigen::VectorXd rhs_nonlinear(const Eigen::VectorXd& coeffs) const;

    // One IMEX step from (t, coeffs); g1 = rhs_nonlinear(coeffs) may be
    // passed in when already computed for the ledger.
    Eigen::VectorXd step(const Eigen::VectorXd& coeffs, const Eigen::VectorXd& g1) const;

    void append_ledger(EnergyLedger& led, double t, const Eigen::VectorXd& coeffs,
                       const Eigen::VectorXd& g) const;

    Field velocity_field(const Eigen::VectorXd& coeffs) const;
    Field filtered_field(const Eigen::VectorXd& coeffs) const;
    Eigen::VectorXd filtered_coeffs(const Eigen::VectorXd& coeffs) const;

    using SnapshotHook = std::function<void(int step, double t, const Eigen::VectorXd&)>;
    RunResult run(bool store_trajectory = false, const SnapshotHook& hook = nullptr) const;

  private:
    std::shared_ptr<const StokesEigenbasis> basis_;
    SimConfig cfg_;
    int m_;
    Eigen::VectorXd lambda_, filt_, decay_dt_, decay_half_;
    void check_finite(double t, const Eigen::VectorXd& coeffs) const;
};

// Named analytic initial profiles projected into the discrete H.
Field initial_profile(const ChannelOperators& ops, const std::string& name, double amplitude,
                      unsigned long long seed);

}  // namespace alphaflow
