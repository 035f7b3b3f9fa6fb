#include "alphaflow/solver.hpp"

#include <cmath>

#include "alphaflow/constants.hpp"
#include "alphaflow/errors.hpp"
#include "alphaflow/io_util.hpp"

namespace alphaflow {

using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

namespace {

const Complex I_(0.0, 1.0);

// Real values of several spectral components at the quadrature levels of the
// vertical rule, on the horizontal collocation grid.
std::vector<std::vector<double>> spectral_to_quad(const ChannelGrid& g,
                                                  const std::vector<const ScalarField*>& comps) {
    const int nx = g.nx(), ny = g.ny();
    const MatrixXd& V = g.vertical().to_quad();
    const int ng = static_cast<int>(V.rows());
    std::vector<std::vector<double>> out(comps.size());
    std::vector<Complex> levels(static_cast<std::size_t>(ng) * ny * nx);
    std::vector<Complex> slab(static_cast<std::size_t>(ny) * nx);
    VectorXcd col(ng);
    for (std::size_t c = 0; c < comps.size(); ++c) {
        std::fill(levels.begin(), levels.end(), Complex(0, 0));
        for (const BlockKey& b : g.blocks()) {
            col.noalias() = V * comps[c]->vec(b.ix, b.iy);
            for (int q = 0; q < ng; ++q)
                levels[(static_cast<std::size_t>(q) * ny + b.iy) * nx + b.ix] = col[q];
        }
        out[c].resize(levels.size());
        for (int q = 0; q < ng; ++q) {
            Complex* lev = levels.data() + static_cast<std::size_t>(q) * ny * nx;
            std::copy(lev, lev + static_cast<std::size_t>(ny) * nx, slab.begin());
            g.fft_backward(slab.data());
            for (int i = 0; i < ny * nx; ++i)
                out[c][static_cast<std::size_t>(q) * ny * nx + i] = slab[i].real();
        }
    }
    return out;
}

// Load-representation field (Mhat * projection) of real quadrature values.
Field quad_to_load_field(std::shared_ptr<const ChannelGrid> grid,
                         const std::vector<std::vector<double>>& vals) {
    const ChannelGrid& g = *grid;
    const int nx = g.nx(), ny = g.ny();
    const MatrixXd& Q = g.vertical().quad_to_load();
    const int ng = static_cast<int>(Q.cols());
    Field load(grid);
    std::vector<Complex> levels(static_cast<std::size_t>(ng) * ny * nx);
    std::vector<Complex> slab(static_cast<std::size_t>(ny) * nx);
    VectorXcd col(ng);
    for (int c = 0; c < 3; ++c) {
        for (int q = 0; q < ng; ++q) {
            for (int i = 0; i < ny * nx; ++i)
                slab[i] = Complex(vals[c][static_cast<std::size_t>(q) * ny * nx + i], 0.0);
            g.fft_forward(slab.data());
            std::copy(slab.begin(), slab.end(),
                      levels.begin() + static_cast<std::size_t>(q) * ny * nx);
        }
        for (const BlockKey& b : g.blocks()) {
            for (int q = 0; q < ng; ++q)
                col[q] = levels[(static_cast<std::size_t>(q) * ny + b.iy) * nx + b.ix];
            load.comp(c).vec(b.ix, b.iy) = Q * col;
        }
    }
    return load;
}

// Pointwise products on the quadrature grid for the two nonlinearity forms.
std::vector<std::vector<double>> cross_product_values(
    const std::vector<std::vector<double>>& w, const std::vector<std::vector<double>>& u) {
    std::size_t n = w[0].size();
    std::vector<std::vector<double>> c(3, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        c[0][i] = w[1][i] * u[2][i] - w[2][i] * u[1][i];
        c[1][i] = w[2][i] * u[0][i] - w[0][i] * u[2][i];
        c[2][i] = w[0][i] * u[1][i] - w[1][i] * u[0][i];
    }
    return c;
}

Field nonlinearity_load(const StokesEigenbasis& basis, ModelKind model, const Field& v,
                        const Field& u) {
    const ChannelOperators& ops = basis.ops();
    auto grid = ops.grid_ptr();
    if (model == ModelKind::LerayAlpha) {
        // (u . grad) v: needs the nine gradient entries of v.
        Field gx = ops.gradient(v.comp(0));
        Field gy = ops.gradient(v.comp(1));
        Field gz = ops.gradient(v.comp(2));
        std::vector<const ScalarField*> comps = {
            &u.comp(0),  &u.comp(1),  &u.comp(2),  &gx.comp(0), &gx.comp(1), &gx.comp(2),
            &gy.comp(0), &gy.comp(1), &gy.comp(2), &gz.comp(0), &gz.comp(1), &gz.comp(2)};
        auto vals = spectral_to_quad(*grid, comps);
        std::size_t n = vals[0].size();
        std::vector<std::vector<double>> c(3, std::vector<double>(n));
        for (std::size_t i = 0; i < n; ++i) {
            double ux = vals[0][i], uy = vals[1][i], uz = vals[2][i];
            c[0][i] = ux * vals[3][i] + uy * vals[4][i] + uz * vals[5][i];
            c[1][i] = ux * vals[6][i] + uy * vals[7][i] + uz * vals[8][i];
            c[2][i] = ux * vals[9][i] + uy * vals[10][i] + uz * vals[11][i];
        }
        return quad_to_load_field(grid, c);
    }
    Field omega = ops.curl(v);
    std::vector<const ScalarField*> comps = {&omega.comp(0), &omega.comp(1), &omega.comp(2),
                                             &u.comp(0),     &u.comp(1),     &u.comp(2)};
    auto vals = spectral_to_quad(*grid, comps);
    std::vector<std::vector<double>> w = {vals[0], vals[1], vals[2]};
    std::vector<std::vector<double>> uu = {vals[3], vals[4], vals[5]};
    return quad_to_load_field(grid, cross_product_values(w, uu));
}

}  // namespace

Field apply_filter(const StokesEigenbasis& basis, double alpha, const Field& v) {
    if (alpha < 0.0) throw ConfigError("apply_filter: alpha must be nonnegative");
    VectorXd c = basis.coefficients(v);
    for (int j = 0; j < c.size(); ++j) c[j] /= 1.0 + alpha * (basis.mu(j) - 1.0);
    return basis.field_from_coeffs(c);
}

Field nonlinearity(const StokesEigenbasis& basis, ModelKind model, const Field& v,
                   const Field& u) {
    const ChannelOperators& ops = basis.ops();
    const ChannelGrid& g = ops.grid();
    const MatrixXd& M = g.vertical().mass();
    Field load = nonlinearity_load(basis, model, v, u);
    // Nodal representation, then the Leray projection.
    Field nodal(ops.grid_ptr());
    for (const BlockKey& b : g.blocks()) {
        for (int c = 0; c < 3; ++c) {
            VectorXcd rhs = load.comp(c).vec(b.ix, b.iy);
            Eigen::MatrixXd ri(M.rows(), 2);
            for (int i = 0; i < M.rows(); ++i) {
                ri(i, 0) = rhs[i].real();
                ri(i, 1) = rhs[i].imag();
            }
            Eigen::MatrixXd sol = g.vertical().mass_llt().solve(ri);
            VectorXcd out(M.rows());
            for (int i = 0; i < M.rows(); ++i) out[i] = Complex(sol(i, 0), sol(i, 1));
            nodal.comp(c).vec(b.ix, b.iy) = out;
        }
    }
    return leray_project(ops, nodal);
}

std::string EnergyLedger::csv(const std::string& manifest_hash) const {
    CsvWriter w;
    w.comment("manifest " + manifest_hash);
    w.header({"t", "E_v", "a_beta_v", "E_u_alpha", "diss", "Bvu_v", "Bvu_u", "res_51", "res_547",
              "res_725"});
    for (std::size_t i = 0; i < t.size(); ++i)
        w.row({t[i], E_v[i], a_beta_v[i], E_u_alpha[i], diss[i], Bvu_v[i], Bvu_u[i], res_51[i],
               res_547[i], res_725[i]});
    return w.str();
}

EnergyReport energy_report(const EnergyLedger& led) {
    EnergyReport rep;
    if (led.size() == 0) return rep;
    double scale51 = 0.0, scale547 = 0.0, scale725 = 0.0, skew_scale = 0.0;
    for (std::size_t i = 0; i < led.size(); ++i) {
        scale51 = std::max({scale51, std::abs(led.E_v[i]), std::abs(led.Bvu_v[i])});
        scale547 = std::max({scale547, std::abs(led.E_u_alpha[i]), std::abs(led.diss[i])});
        scale725 = std::max({scale725, std::abs(led.E_v[i]), std::abs(led.a_beta_v[i])});
        skew_scale = std::max(skew_scale, std::abs(led.Bvu_v[i]) + led.E_v[i] + led.a_beta_v[i]);
    }
    if (led.size() >= 2) {
        for (std::size_t i = 1; i < led.size(); ++i) {
            double dt = led.t[i] - led.t[i - 1];
            scale51 = std::max(scale51, std::abs(led.E_v[i] - led.E_v[i - 1]) / dt);
            scale547 = std::max(scale547, std::abs(led.E_u_alpha[i] - led.E_u_alpha[i - 1]) / dt);
        }
    }
    scale51 = std::max(scale51, 1e-300);
    scale547 = std::max(scale547, 1e-300);
    scale725 = std::max(scale725, 1e-300);
    skew_scale = std::max(skew_scale, 1e-300);
    for (std::size_t i = 0; i < led.size(); ++i) {
        rep.max_res_51 = std::max(rep.max_res_51, std::abs(led.res_51[i]) / scale51);
        rep.max_res_547 = std::max(rep.max_res_547, std::abs(led.res_547[i]) / scale547);
        rep.max_res_725 = std::max(rep.max_res_725, std::abs(led.res_725[i]) / scale725);
        rep.max_skew_rotational =
            std::max(rep.max_skew_rotational, std::abs(led.Bvu_u[i]) / skew_scale);
        rep.max_skew_convective =
            std::max(rep.max_skew_convective, std::abs(led.Bvu_v[i]) / skew_scale);
        if (i >= 1 && led.E_v[i] > led.E_v[i - 1] + 1e-10 * std::max(1.0, led.E_v[0]))
            rep.energy_nonincreasing = false;
    }
    return rep;
}

GalerkinSolver::GalerkinSolver(std::shared_ptr<const StokesEigenbasis> basis, const SimConfig& cfg)
    : basis_(std::move(basis)), cfg_(cfg) {
    int avail = basis_->size();
    m_ = cfg_.modes > 0 ? cfg_.modes : avail;
    if (m_ > avail)
        throw ConfigError("sim: modes (" + std::to_string(m_) + ") exceeds available eigenmodes (" +
                          std::to_string(avail) + ")");
    lambda_.resize(m_);
    for (int j = 0; j < m_; ++j) lambda_[j] = basis_->mu(j) - 1.0;
    filt_.resize(m_);
    double alpha = cfg_.model == ModelKind::NS ? 0.0 : cfg_.alpha;
    for (int j = 0; j < m_; ++j) filt_[j] = 1.0 / (1.0 + alpha * lambda_[j]);
    decay_dt_ = (-cfg_.dt * lambda_).array().exp();
    decay_half_ = (-0.5 * cfg_.dt * lambda_).array().exp();
}

Eigen::VectorXd GalerkinSolver::project_initial(const Field& f) const {
    Field h = leray_project(basis_->ops(), f);
    return basis_->coefficients(h, m_);
}

Eigen::VectorXd GalerkinSolver::initial_coefficients() const {
    const ChannelOperators& ops = basis_->ops();
    if (cfg_.initial == "zero") return VectorXd::Zero(m_);
    Field f = initial_profile(ops, cfg_.initial, cfg_.amplitude, cfg_.seed);
    VectorXd c = project_initial(f);
    return c;
}

Eigen::VectorXd GalerkinSolver::filtered_coeffs(const Eigen::VectorXd& coeffs) const {
    if (cfg_.model == ModelKind::NS) return coeffs;
    return filt_.cwiseProduct(coeffs);
}

Eigen::VectorXd GalerkinSolver::rhs_nonlinear(const Eigen::VectorXd& coeffs) const {
    if (cfg_.linear_only) return VectorXd::Zero(coeffs.size());
    Field v = basis_->field_from_coeffs(coeffs);
    Field u = cfg_.model == ModelKind::NS ? v : basis_->field_from_coeffs(filtered_coeffs(coeffs));
    Field load = nonlinearity_load(*basis_, cfg_.model, v, u);
    return basis_->coefficients_from_load(load, m_);
}

Eigen::VectorXd GalerkinSolver::step(const Eigen::VectorXd& coeffs,
                                     const Eigen::VectorXd& g1) const {
    const double dt = cfg_.dt;
    VectorXd pred = decay_dt_.cwiseProduct(coeffs - dt * g1);
    VectorXd g2 = rhs_nonlinear(pred);
    return decay_dt_.cwiseProduct(coeffs - 0.5 * dt * g1) - 0.5 * dt * g2;
}

void GalerkinSolver::append_ledger(EnergyLedger& led, double t, const Eigen::VectorXd& coeffs,
                                   const Eigen::VectorXd& g) const {
    const double nu = cfg_.channel.nu;
    const double alpha = cfg_.model == ModelKind::NS ? 0.0 : cfg_.alpha;
    VectorXd u = filtered_coeffs(coeffs);
    double E_v = coeffs.squaredNorm();
    double lam_v = lambda_.cwiseProduct(coeffs).dot(coeffs);          // nu * a_beta(v,v)
    double lam_u = lambda_.cwiseProduct(u).dot(u);                    // nu * a_beta(u,u)
    double lam2_u = lambda_.cwiseProduct(lambda_.cwiseProduct(u)).dot(u);  // ||L u||^2
    double E_u_alpha = u.squaredNorm() + alpha * lam_u;
    double diss = 2.0 * (lam_u + alpha * lam2_u);
    double bv = g.dot(coeffs);
    double bu = g.dot(u);

    double r51 = 0.0, r547 = 0.0, r725 = 0.0;
    if (!led.t.empty()) {
        std::size_t p = led.size() - 1;
        double dt = t - led.t[p];
        double f51 = 2.0 * lam_v + 2.0 * bv;
        double f51p = 2.0 * nu * led.a_beta_v[p] + 2.0 * led.Bvu_v[p];
        r51 = (E_v - led.E_v[p]) / dt + 0.5 * (f51 + f51p);
        double f547p = led.diss[p];
        r547 = (E_u_alpha - led.E_u_alpha[p]) / dt + 0.5 * (diss + f547p);
        double f725 = 2.0 * lam_v;
        double f725p = 2.0 * nu * led.a_beta_v[p];
        r725 = (E_v - led.E_v[p]) / dt + 0.5 * (f725 + f725p);
    }
    led.t.push_back(t);
    led.E_v.push_back(E_v);
    led.a_beta_v.push_back(lam_v / nu);
    led.E_u_alpha.push_back(E_u_alpha);
    led.diss.push_back(diss);
    led.Bvu_v.push_back(bv);
    led.Bvu_u.push_back(bu);
    led.res_51.push_back(r51);
    led.res_547.push_back(r547);
    led.res_725.push_back(r725);
}

Field GalerkinSolver::velocity_field(const Eigen::VectorXd& coeffs) const {
    return basis_->field_from_coeffs(coeffs);
}

Field GalerkinSolver::filtered_field(const Eigen::VectorXd& coeffs) const {
    return basis_->field_from_coeffs(filtered_coeffs(coeffs));
}

void GalerkinSolver::check_finite(double t, const Eigen::VectorXd& coeffs) const {
    for (int j = 0; j < coeffs.size(); ++j) {
        double a = coeffs[j];
        if (!std::isfinite(a) || std::abs(a) > tol::blowup_coefficient)
            throw BlowUpError(t, "solution breakdown detected at t = " + format_double(t) +
                                     " (mode " + std::to_string(j) + ")");
    }
}

RunResult GalerkinSolver::run(bool store_trajectory, const SnapshotHook& hook) const {
    RunResult out;
    VectorXd c = initial_coefficients();
    double t = 0.0;
    long nsteps = std::lround(cfg_.t_end / cfg_.dt);
    if (nsteps < 0) nsteps = 0;

    VectorXd g = rhs_nonlinear(c);
    append_ledger(out.state.ledger, t, c, g);
    if (store_trajectory) {
        out.trajectory.push_back(c);
        out.times.push_back(t);
    }
    if (hook) hook(0, t, c);

    for (long n = 1; n <= nsteps; ++n) {
        VectorXd next;
        try {
            next = step(c, g);
            t = static_cast<double>(n) * cfg_.dt;
            check_finite(t, next);
        } catch (BlowUpError& e) {
            out.blew_up = true;
            out.blowup_time = e.time;
            out.state.t = t;
            out.state.coeffs = c;
            return out;
        }
        c = std::move(next);
        g = rhs_nonlinear(c);
        append_ledger(out.state.ledger, t, c, g);
        if (store_trajectory) {
            out.trajectory.push_back(c);
            out.times.push_back(t);
        }
        if (hook && cfg_.snapshot_every > 0 && n % cfg_.snapshot_every == 0)
            hook(static_cast<int>(n), t, c);
    }
    out.state.t = t;
    out.state.coeffs = std::move(c);
    return out;
}

Field initial_profile(const ChannelOperators& ops, const std::string& name, double amplitude,
                      unsigned long long seed) {
    auto grid = ops.grid_ptr();
    const ChannelGrid& g = *grid;
    if (name == "zero") return Field(grid);
    if (name == "random") {
        Field f = random_field(grid, seed);
        f *= amplitude;
        return leray_project(ops, f);
    }
    if (name == "taylor-vortex") {
        if (g.kx_max() < 1 || g.ky_max() < 1)
            throw ConfigError("taylor-vortex needs at least one active horizontal mode");
        Field f(grid);
        const auto& zn = g.vertical().nodes();
        const int n = g.nz();
        const double pi = std::acos(-1.0);
        for (int sx = -1; sx <= 1; sx += 2) {
            for (int sy = -1; sy <= 1; sy += 2) {
                int ix = g.ix_of(sx), iy = g.iy_of(sy);
                double wx = 2.0 * pi * sx / g.lx();
                double wy = 2.0 * pi * sy / g.ly();
                Complex chi(0.25, 0.0);          // cos*cos
                Complex theta(-0.25 * sx * sy, 0.0);  // sin*sin
                for (int i = 0; i < n; ++i) {
                    double z = zn[i];
                    double fz = std::cos(pi * z);
                    double h = z * z * (1 - z) * (1 - z);
                    double hp = 2 * z * (1 - z) * (1 - z) - 2 * z * z * (1 - z);
                    // Horizontal-solenoidal part (stream function chi * f).
                    f.comp(0).block(ix, iy)[i] += amplitude * (I_ * wy * chi) * fz;
                    f.comp(1).block(ix, iy)[i] -= amplitude * (I_ * wx * chi) * fz;
                    // Wall-respecting vertical part curl(curl(theta e_z)).
                    double k2 = wx * wx + wy * wy;
                    f.comp(0).block(ix, iy)[i] += 0.6 * amplitude * (I_ * wx * theta) * hp;
                    f.comp(1).block(ix, iy)[i] += 0.6 * amplitude * (I_ * wy * theta) * hp;
                    f.comp(2).block(ix, iy)[i] += 0.6 * amplitude * k2 * theta * h;
                }
            }
        }
        f.enforce_hermitian();
        return leray_project(ops, f);
    }
    // Anything else is a field snapshot path.
    Field f = load_field(name, grid);
    f.apply_mask();
    f.enforce_hermitian();
    return leray_project(ops, f);
}

}  // namespace alphaflow
