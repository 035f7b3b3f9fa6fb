// Acceptance suite: one criterion per invocation (argv[1] in 1..8), printing
// a [PASS]/[FAIL] line per check with the measured values.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "alphaflow/constants.hpp"
#include "alphaflow/experiments.hpp"
#include "alphaflow/hodge.hpp"
#include "alphaflow/io_util.hpp"
#include "alphaflow/solver.hpp"
#include "alphaflow/stokes.hpp"
#include "alphaflow/surface.hpp"

using namespace alphaflow;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(bool ok, const std::string& what) {
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", what.c_str());
    if (!ok) ++g_failures;
}

std::string fmt(double v) { return format_double(v); }

ChannelConfig acceptance_channel(int nz, double beta = 0.0, double nu = 1.0) {
    ChannelConfig ch;
    ch.Nx = 16;
    ch.Ny = 16;
    ch.Nz = nz;
    ch.beta = beta;
    ch.nu = nu;
    return ch;
}

std::shared_ptr<const ChannelOperators> make_ops(const ChannelConfig& ch) {
    return std::make_shared<const ChannelOperators>(std::make_shared<const ChannelGrid>(ch));
}

Field random_h(const ChannelOperators& ops, unsigned long long seed) {
    return leray_project(ops, random_field(ops.grid_ptr(), seed));
}

// ---------------------------------------------------------------- criterion 1
void criterion_hodge() {
    auto ops = make_ops(acceptance_channel(33));
    double worst_orth = 0.0, worst_recon = 0.0;
    for (unsigned seed = 1; seed <= 100; ++seed) {
        Field u = random_field(ops->grid_ptr(), seed);
        HodgeComponents hc = decompose(*ops, u);
        double n2 = ops->inner_product(u, u);
        worst_recon = std::max(worst_recon, hc.residual);
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j)
                worst_orth = std::max(
                    worst_orth, std::abs(ops->inner_product(hc.part(i), hc.part(j))) / n2);
    }
    report(worst_orth <= 1e-10,
           "hodge: five-way orthogonality over 100 seeded fields, worst " + fmt(worst_orth) +
               " <= 1e-10");
    report(worst_recon <= 1e-10,
           "hodge: reconstruction residual over 100 seeded fields, worst " + fmt(worst_recon) +
               " <= 1e-10");
    HarmonicDims dims = harmonic_dims_by_rank(*ops);
    report(dims.dim_hh == 2, "hodge: dim HH = " + std::to_string(dims.dim_hh) + " (expected 2)");
    report(dims.dim_hg == 1, "hodge: dim HG = " + std::to_string(dims.dim_hg) + " (expected 1)");
}

// ---------------------------------------------------------------- criterion 2
void criterion_spectrum() {
    const double nu = 1.0;
    auto ops = make_ops(acceptance_channel(65, 0.0, nu));
    StokesEigenbasis basis = StokesEigenbasis::compute(ops, FormKind::VSB, 0.0);

    const StokesEigenbasis::BlockEigen* k0 = nullptr;
    for (const auto& be : basis.block_eigens())
        if (be.key.kx == 0 && be.key.ky == 0) k0 = &be;
    const double pi = std::acos(-1.0);
    double worst_analytic = std::max(std::abs(k0->mu[0] - 1.0), std::abs(k0->mu[1] - 1.0));
    for (int m = 1; m <= 8; ++m) {
        double expect = 1.0 + nu * (m * pi) * (m * pi);
        worst_analytic = std::max({worst_analytic, std::abs(k0->mu[2 * m] - expect),
                                   std::abs(k0->mu[2 * m + 1] - expect)});
    }
    report(worst_analytic <= 1e-6,
           "spectrum: k=0 tangential family vs 1 + nu (m pi)^2 at Nz=65, worst " +
               fmt(worst_analytic) + " <= 1e-6");

    double mu_min = basis.mu(0);
    report(mu_min >= 1.0 - 1e-12,
           "spectrum: smallest eigenvalue " + fmt(mu_min) + " >= 1 - 1e-12");
    report(basis.max_eigen_residual() <= 1e-8,
           "spectrum: eigen-residuals " + fmt(basis.max_eigen_residual()) + " <= 1e-8");

    double worst_forms = 0.0;
    const double beta = 0.7;
    for (unsigned seed = 0; seed < 50; ++seed) {
        Field u = random_h(*ops, 4000 + 2 * seed);
        Field phi = random_h(*ops, 4001 + 2 * seed);
        double vsb = ops->form_a_beta(u, phi, beta);
        double nsb = ops->form_a_gamma(u, phi, beta);
        double scale = std::sqrt(std::abs(ops->form_a_beta(u, u, beta)) *
                                 std::abs(ops->form_a_beta(phi, phi, beta)));
        worst_forms = std::max(worst_forms, std::abs(vsb - nsb) / std::max(1.0, scale));
    }
    report(worst_forms <= 1e-12,
           "spectrum: VSB/NSB flat-wall form agreement, worst " + fmt(worst_forms) + " <= 1e-12");
}

// ---------------------------------------------------------------- criterion 3
void criterion_gd() {
    SurfacePatch flat = flat_patch(1.0);
    AnalyticField tangent{
        [](const Eigen::Vector3d& p) {
            return Eigen::Vector3d(std::cos(p.x()) * p.y(), std::sin(p.y()) + p.x() * p.x(), 0.0);
        },
        [](const Eigen::Vector3d& p) {
            Eigen::Matrix3d J = Eigen::Matrix3d::Zero();
            J(0, 0) = -std::sin(p.x()) * p.y();
            J(0, 1) = std::cos(p.x());
            J(1, 0) = 2.0 * p.x();
            J(1, 1) = std::cos(p.y());
            return J;
        }};
    GdReport fr = gd_on_patch(flat, tangent, 24, 24);
    report(fr.max_residual <= 1e-12,
           "gd: flat-patch tangential residual " + fmt(fr.max_residual) + " <= 1e-12");

    SurfacePatch sphere = sphere_patch();
    AnalyticField rot{[](const Eigen::Vector3d& p) {
                          Eigen::Vector3d n = p / p.norm();
                          return Eigen::Vector3d(n.y(), -n.x(), 0.0);
                      },
                      [](const Eigen::Vector3d& p) {
                          double r = p.norm();
                          Eigen::Vector3d n = p / r;
                          Eigen::Matrix3d Pn =
                              (Eigen::Matrix3d::Identity() - n * n.transpose()) / r;
                          Eigen::Matrix3d J;
                          J.row(0) = Pn.row(1);
                          J.row(1) = -Pn.row(0);
                          J.row(2).setZero();
                          return J;
                      }};
    GdReport sr = gd_on_patch(sphere, rot, 24, 24);
    report(sr.max_residual <= 1e-8,
           "gd: unit-sphere tangential residual " + fmt(sr.max_residual) + " <= 1e-8");

    AnalyticField mixed{[&rot](const Eigen::Vector3d& p) {
                            Eigen::Vector3d n = p / p.norm();
                            Eigen::Vector3d mer(-n.x() * n.z(), -n.y() * n.z(),
                                                1.0 - n.z() * n.z());
                            return (0.7 * rot.value(p) + 0.3 * mer).eval();
                        },
                        [&rot](const Eigen::Vector3d& p) {
                            double r = p.norm();
                            Eigen::Vector3d n = p / r;
                            Eigen::Matrix3d Pn =
                                (Eigen::Matrix3d::Identity() - n * n.transpose()) / r;
                            Eigen::Matrix3d Jm = -(Pn * n.z() + n * Pn.row(2));
                            return (0.7 * rot.jacobian(p) + 0.3 * Jm).eval();
                        }};
    GdSymmetryReport sym = gd_symmetry_integrals(sphere, rot, mixed, 24);
    double scale = std::max({1.0, std::abs(sym.integral_gd_phi_u), std::abs(sym.integral_gd_u_phi)});
    double gap = std::abs(sym.integral_gd_phi_u - sym.integral_gd_u_phi) / scale;
    report(gap <= 1e-8, "gd: symmetry of the two surface integrals, gap " + fmt(gap) + " <= 1e-8");
}

// ---------------------------------------------------------------- criterion 4
void criterion_filter() {
    auto ops = make_ops(acceptance_channel(33));
    auto basis = std::make_shared<const StokesEigenbasis>(
        StokesEigenbasis::compute(ops, FormKind::VSB, 0.0));

    double worst_action = 0.0;
    const double alpha0 = 0.01;
    for (int j : {0, 2, 10, 100, 500, 2000}) {
        Field ej = basis->field_of_mode(j);
        Field u = apply_filter(*basis, alpha0, ej);
        Field expect = ej;
        expect *= 1.0 / (1.0 + alpha0 * (basis->mu(j) - 1.0));
        Field d = u;
        d -= expect;
        worst_action = std::max(worst_action, ops->norm(d) / ops->norm(expect));
    }
    report(worst_action <= 1e-12,
           "filter: spectral action e_j -> e_j/(1+alpha lambda_j), worst " + fmt(worst_action) +
               " <= 1e-12");

    double worst_eq = 0.0;
    for (unsigned seed = 1; seed <= 100; ++seed) {
        double alpha = 1e-3 + 2e-4 * seed;
        Field v = random_h(*ops, 7000 + seed);
        Eigen::VectorXd cv = basis->coefficients(v);
        Eigen::VectorXd cu = cv;
        for (int j = 0; j < cu.size(); ++j) cu[j] /= 1.0 + alpha * (basis->mu(j) - 1.0);
        double lhs = 0.0, rhs = 0.0;
        for (int j = 0; j < cu.size(); ++j) {
            double gap = cv[j] - cu[j];
            lhs += gap * gap;
            double lu = (basis->mu(j) - 1.0) * cu[j];
            rhs += lu * lu;
        }
        lhs = std::sqrt(lhs);
        rhs = alpha * std::sqrt(rhs);
        worst_eq = std::max(worst_eq, std::abs(lhs - rhs) / std::max(1.0, ops->norm(v)));
    }
    report(worst_eq <= 1e-10,
           "filter: ||v - T_a v|| = alpha ||P Delta T_a v|| over 100 fields, worst gap " +
               fmt(worst_eq) + " <= 1e-10");
}

// ---------------------------------------------------------------- criterion 5
void criterion_energy() {
    ChannelConfig ch = acceptance_channel(33);
    auto ops = make_ops(ch);
    auto basis = std::make_shared<const StokesEigenbasis>(
        StokesEigenbasis::compute(ops, FormKind::VSB, 0.0));

    SimConfig cfg;
    cfg.channel = ch;
    cfg.alpha = 0.01;
    cfg.t_end = 0.25;
    cfg.initial = "taylor-vortex";
    cfg.amplitude = 1.5;
    cfg.modes = 400;  // Galerkin truncation keeps lambda_max * dt resolved

    double worst_skew = 0.0;
    for (ModelKind m : {ModelKind::LerayAlpha, ModelKind::LNSAlpha}) {
        cfg.model = m;
        auto run_res = [&](double dt) {
            SimConfig c2 = cfg;
            c2.dt = dt;
            GalerkinSolver solver(basis, c2);
            RunResult r = solver.run(false);
            EnergyReport er = energy_report(r.state.ledger);
            worst_skew = std::max(worst_skew, m == ModelKind::LerayAlpha
                                                  ? er.max_skew_convective
                                                  : er.max_skew_rotational);
            return m == ModelKind::LerayAlpha ? er.max_res_725 : er.max_res_547;
        };
        double r1 = run_res(4e-3);
        double r2 = run_res(2e-3);
        double ratio = r1 / r2;
        const char* name = m == ModelKind::LerayAlpha ? "leray-alpha (7.25)" : "lns-alpha (5.47)";
        report(ratio >= 3.4 && ratio <= 4.6,
               std::string("energy: ") + name + " residual Richardson ratio " + fmt(ratio) +
                   " in [3.4, 4.6] (residuals " + fmt(r1) + " -> " + fmt(r2) + ")");
    }
    report(worst_skew <= 1e-11,
           "energy: skew-orthogonality |(B(v,u),u)| relative " + fmt(worst_skew) + " <= 1e-11");
}

// ---------------------------------------------------------------- criterion 6
void criterion_rates() {
    ChannelConfig ch = acceptance_channel(33);
    auto ops = make_ops(ch);
    auto basis = std::make_shared<const StokesEigenbasis>(
        StokesEigenbasis::compute(ops, FormKind::VSB, 0.0));

    SimConfig cfg;
    cfg.channel = ch;
    cfg.model = ModelKind::LNSAlpha;
    cfg.alpha = 1e-2;
    cfg.dt = 2.5e-3;
    cfg.t_end = 0.5;
    cfg.initial = "taylor-vortex";
    cfg.amplitude = 1.5;
    cfg.modes = 0;  // full available basis

    SweepReport rep = run_alpha_sweep(basis, cfg, {2e-2, 1e-2, 5e-3, 2.5e-3});
    report(rep.fit_sup_v_l2sq.slope >= 0.9,
           "rates: slope of sup||v^a - v0||^2 is " + fmt(rep.fit_sup_v_l2sq.slope) + " >= 0.9");
    report(rep.fit_pair_int_h1sq.slope >= 0.9,
           "rates: slope of int ||(v,u)-(v0,v0)||_1^2 is " + fmt(rep.fit_pair_int_h1sq.slope) +
               " >= 0.9");
    report(rep.fit_sup_v_h1sq.slope >= 0.45,
           "rates: slope of sup||v^a - v0||_1^2 is " + fmt(rep.fit_sup_v_h1sq.slope) + " >= 0.45");

    bool monotone = true;
    for (std::size_t i = 0; i + 1 < rep.records.size(); ++i) {
        monotone = monotone &&
                   rep.records[i].sup_v_l2sq >= rep.records[i + 1].sup_v_l2sq * (1 - 1e-9) &&
                   rep.records[i].sup_v_h1sq >= rep.records[i + 1].sup_v_h1sq * (1 - 1e-9) &&
                   rep.records[i].pair_int_h1sq >=
                       rep.records[i + 1].pair_int_h1sq * (1 - 1e-9) &&
                   rep.records[i].int_v_h2sq >= rep.records[i + 1].int_v_h2sq * (1 - 1e-9);
    }
    report(monotone, "rates: all four primary error metrics decrease monotonically in alpha");

    // Weak-convergence diagnostics on the same scenario: the D(A^{-1/4})
    // error decreases with alpha and roughly halves when alpha halves.
    WeakConvergenceDiagnostics wd = weak_convergence_diagnostics(rep);
    report(wd.final_below_first_v && wd.final_below_first_u,
           "rates: D(A^{-1/4}) error series decrease from the largest to the smallest alpha");
    bool halving_ok = true;
    double worst_ratio = 0.0;
    auto peak = [](const std::vector<double>& s) {
        double m = 0;
        for (double x : s) m = std::max(m, x);
        return m;
    };
    for (std::size_t i = 0; i + 1 < wd.alphas.size(); ++i) {
        if (wd.alphas[i + 1] == 0.0) continue;
        double ratio = peak(wd.d14_v[i]) / peak(wd.d14_v[i + 1]);
        worst_ratio = std::max(worst_ratio, std::abs(ratio - 2.0));
        halving_ok = halving_ok && ratio >= 1.5 && ratio <= 3.0;
    }
    report(halving_ok,
           "rates: halving alpha halves the D(A^{-1/4}) error within [1.5, 3] (worst |ratio-2| " +
               fmt(worst_ratio) + ")");
}

// ---------------------------------------------------------------- criterion 7
void criterion_oracles() {
    // m = 1 Galerkin trajectory against an adaptive scalar integrator.
    {
        ChannelConfig ch = acceptance_channel(33);
        auto ops = make_ops(ch);
        auto basis = std::make_shared<const StokesEigenbasis>(
            StokesEigenbasis::compute(ops, FormKind::VSB, 0.0));
        SimConfig cfg;
        cfg.channel = ch;
        cfg.model = ModelKind::LNSAlpha;
        cfg.alpha = 0.02;
        cfg.dt = 1e-2;
        cfg.t_end = 1.0;
        cfg.modes = 1;
        GalerkinSolver solver(basis, cfg);
        Eigen::VectorXd c(1);
        c[0] = 0.75;
        Eigen::VectorXd state = c;
        for (int n = 0; n < 100; ++n) state = solver.step(state, solver.rhs_nonlinear(state));
        // Adaptive RK45 (Cash-Karp) on the same scalar right-hand side.
        double lambda1 = basis->mu(0) - 1.0;
        auto rhs = [&](const Eigen::VectorXd& y) {
            return (-lambda1 * y - solver.rhs_nonlinear(y)).eval();
        };
        Eigen::VectorXd y = c;
        double t = 0.0, h = 1.0 / 64.0;
        while (t < 1.0 - 1e-14) {
            if (t + h > 1.0) h = 1.0 - t;
            Eigen::VectorXd k1 = rhs(y);
            Eigen::VectorXd k2 = rhs(y + h * 0.2 * k1);
            Eigen::VectorXd k3 = rhs(y + h * (3.0 / 40 * k1 + 9.0 / 40 * k2));
            Eigen::VectorXd k4 = rhs(y + h * (0.3 * k1 - 0.9 * k2 + 1.2 * k3));
            Eigen::VectorXd k5 =
                rhs(y + h * (-11.0 / 54 * k1 + 2.5 * k2 - 70.0 / 27 * k3 + 35.0 / 27 * k4));
            Eigen::VectorXd k6 = rhs(y + h * (1631.0 / 55296 * k1 + 175.0 / 512 * k2 +
                                              575.0 / 13824 * k3 + 44275.0 / 110592 * k4 +
                                              253.0 / 4096 * k5));
            Eigen::VectorXd y5 =
                y + h * (37.0 / 378 * k1 + 250.0 / 621 * k3 + 125.0 / 594 * k4 + 512.0 / 1771 * k6);
            Eigen::VectorXd y4 = y + h * (2825.0 / 27648 * k1 + 18575.0 / 48384 * k3 +
                                          13525.0 / 55296 * k4 + 277.0 / 14336 * k5 + 0.25 * k6);
            double err = (y5 - y4).norm() / std::max(1.0, y.norm());
            const double tol = 1e-12;
            if (err <= tol || h < 1e-12) {
                t += h;
                y = y5;
            }
            double grow = err > 0 ? 0.9 * std::pow(tol / err, 0.2) : 2.0;
            h *= std::min(2.0, std::max(0.2, grow));
        }
        double gap = std::abs(state[0] - y[0]);
        report(gap <= 1e-8,
               "oracles: m=1 trajectory vs adaptive scalar integrator, gap " + fmt(gap) +
                   " <= 1e-8 over [0,1]");
    }

    // Dense 8^3 quadrature oracles for the nonlinearity and the bilinear form.
    {
        ChannelConfig ch;
        ch.Nx = 8;
        ch.Ny = 8;
        ch.Nz = 9;
        ch.beta = 0.6;
        auto ops = make_ops(ch);
        auto basis = std::make_shared<const StokesEigenbasis>(
            StokesEigenbasis::compute(ops, FormKind::VSB, ch.beta));
        Field v = random_h(*ops, 81);
        Field u = random_h(*ops, 82);
        Field cu = ops->curl(v);
        Field B = nonlinearity(*basis, ModelKind::LNSAlpha, v, u);

        Eigen::VectorXd qn, qw;
        gauss_legendre(24, qn, qw);
        auto dense_vol = [&](auto&& f) {
            double acc = 0.0;
            const int px = 20;
            for (int i = 0; i < px; ++i)
                for (int j = 0; j < px; ++j)
                    for (int q = 0; q < 24; ++q)
                        acc += qw[q] * f(ch.Lx * i / px, ch.Ly * j / px, qn[q]);
            return acc * ch.Lx * ch.Ly / (px * px);
        };

        double worst_nl = 0.0;
        for (unsigned seed = 0; seed < 5; ++seed) {
            Field w = random_h(*ops, 90 + seed);
            double dense = dense_vol([&](double x, double y, double z) {
                return ops->evaluate(cu, x, y, z)
                    .cross(ops->evaluate(u, x, y, z))
                    .dot(ops->evaluate(w, x, y, z));
            });
            double lib = ops->inner_product(B, w);
            double scale = std::max(1.0, ops->norm_h1(v) * ops->norm(u) * ops->norm(w));
            worst_nl = std::max(worst_nl, std::abs(lib - dense) / scale);
        }
        report(worst_nl <= 1e-9,
               "oracles: nonlinearity vs dense 8^3 quadrature, worst " + fmt(worst_nl) +
                   " <= 1e-9");

        Field phi = random_h(*ops, 83);
        Field cphi = ops->curl(phi);
        double vol = dense_vol([&](double x, double y, double z) {
            return ops->evaluate(cu, x, y, z).dot(ops->evaluate(cphi, x, y, z));
        });
        double wall = 0.0;
        {
            const int px = 20;
            for (int i = 0; i < px; ++i)
                for (int j = 0; j < px; ++j) {
                    double x = ch.Lx * i / px, y = ch.Ly * j / px;
                    wall += ops->evaluate(v, x, y, 0.0).dot(ops->evaluate(phi, x, y, 0.0));
                    wall += ops->evaluate(v, x, y, 1.0).dot(ops->evaluate(phi, x, y, 1.0));
                }
            wall *= ch.Lx * ch.Ly / (px * px);
        }
        double oracle = vol + ch.beta * wall;
        double lib = ops->form_a_beta(v, phi);
        double scale = std::max(1.0, std::sqrt(std::abs(ops->form_a_beta(v, v)) *
                                               std::abs(ops->form_a_beta(phi, phi))));
        double gap = std::abs(lib - oracle) / scale;
        report(gap <= 1e-10,
               "oracles: bilinear form vs dense 8^3 quadrature, gap " + fmt(gap) + " <= 1e-10");
    }
}

// ---------------------------------------------------------------- criterion 8
void criterion_determinism() {
    fs::path dir = fs::temp_directory_path() / "alphaflow_acceptance_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    setenv("ALPHAFLOW_CACHE_DIR", (dir / "cache").c_str(), 1);

    std::string cfg = R"([channel]
Nx = 16
Ny = 16
Nz = 33

[sim]
model = lns_alpha
alpha = 0.01
dt = 0.0025
t_end = 0.1
initial = taylor-vortex
amplitude = 1.5
modes = 0
)";
    fs::path cfg_path = dir / "sweep.cfg";
    {
        std::ofstream f(cfg_path);
        f << cfg;
    }
    auto run_sweep = [&](const std::string& out) {
        std::string cmd = std::string(ALPHAFLOW_BIN) + " sweep --config " + cfg_path.string() +
                          " --alphas 2e-2,1e-2,5e-3 --out " + (dir / out).string() +
                          " > /dev/null 2>&1";
        return WEXITSTATUS(std::system(cmd.c_str()));
    };
    int rc1 = run_sweep("r1.json");
    int rc2 = run_sweep("r2.json");
    report(rc1 == 0 && rc2 == 0, "determinism: both sweep invocations exit 0");

    auto slurp = [](const fs::path& p) {
        std::ifstream f(p, std::ios::binary);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    bool json_same = slurp(dir / "r1.json") == slurp(dir / "r2.json");
    bool csv_same = slurp(dir / "r1.csv") == slurp(dir / "r2.csv");
    report(json_same, "determinism: repeated sweep reports are byte-identical (JSON)");
    report(csv_same, "determinism: repeated sweep per-time CSVs are byte-identical");
    fs::remove_all(dir);
}

}  // namespace

int main(int argc, char** argv) {
    int which = argc > 1 ? std::atoi(argv[1]) : 0;
    auto t0 = std::chrono::steady_clock::now();
    switch (which) {
        case 1: criterion_hodge(); break;
        case 2: criterion_spectrum(); break;
        case 3: criterion_gd(); break;
        case 4: criterion_filter(); break;
        case 5: criterion_energy(); break;
        case 6: criterion_rates(); break;
        case 7: criterion_oracles(); break;
        case 8: criterion_determinism(); break;
        default:
            for (int c = 1; c <= 8; ++c) {
                std::printf("--- criterion %d ---\n", c);
                std::string cmd = std::string(argv[0]) + " " + std::to_string(c);
                if (std::system(cmd.c_str()) != 0) ++g_failures;
            }
            return g_failures == 0 ? 0 : 1;
    }
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d wall clock: %.1f s\n", which, wall);
    return g_failures == 0 ? 0 : 1;
}
