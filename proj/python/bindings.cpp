// Python bindings exposing the main operations: transforms, the Hodge
// decomposition, the Stokes spectrum, the filter, model runs and rate fits.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "alphaflow/errors.hpp"
#include "alphaflow/experiments.hpp"
#include "alphaflow/hodge.hpp"
#include "alphaflow/solver.hpp"
#include "alphaflow/stokes.hpp"
#include "alphaflow/surface.hpp"

namespace py = pybind11;
using namespace alphaflow;

namespace {

ChannelConfig config_from_kwargs(double Lx, double Ly, int Nx, int Ny, int Nz, double beta,
                                 double nu, bool dealias) {
    ChannelConfig cfg;
    cfg.Lx = Lx;
    cfg.Ly = Ly;
    cfg.Nx = Nx;
    cfg.Ny = Ny;
    cfg.Nz = Nz;
    cfg.beta = beta;
    cfg.nu = nu;
    cfg.dealias = dealias;
    cfg.validate();
    return cfg;
}

class Channel {
  public:
    explicit Channel(const ChannelConfig& cfg)
        : ops_(std::make_shared<const ChannelOperators>(
              std::make_shared<const ChannelGrid>(cfg))) {}

    std::shared_ptr<const StokesEigenbasis> basis() {
        if (!basis_)
            basis_ = std::make_shared<const StokesEigenbasis>(StokesEigenbasis::compute(
                ops_, FormKind::VSB, ops_->grid().config().beta));
        return basis_;
    }

    double transform_roundtrip_error(unsigned long long seed) const {
        Field f = random_field(ops_->grid_ptr(), seed);
        Field g = to_spectral_field(to_physical(f), ops_->grid_ptr());
        g -= f;
        return ops_->norm(g) / ops_->norm(f);
    }

    py::dict hodge_check(unsigned long long seed) const {
        Field u = random_field(ops_->grid_ptr(), seed);
        HodgeComponents hc = decompose(*ops_, u);
        double n2 = ops_->inner_product(u, u);
        double worst = 0.0;
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j)
                worst = std::max(worst,
                                 std::abs(ops_->inner_product(hc.part(i), hc.part(j))) / n2);
        py::dict norms;
        for (int i = 0; i < 5; ++i) norms[HodgeComponents::name(i)] = ops_->norm(hc.part(i));
        py::dict out;
        out["norms"] = norms;
        out["orthogonality"] = worst;
        out["reconstruction_residual"] = hc.residual;
        return out;
    }

    std::vector<double> spectrum(int count) {
        auto b = basis();
        if (count <= 0 || count > b->size())
            throw ConfigError("spectrum: count must be in [1, " + std::to_string(b->size()) + "]");
        std::vector<double> mu(count);
        for (int j = 0; j < count; ++j) mu[j] = b->mu(j);
        return mu;
    }

    double filter_identity_gap(double alpha, unsigned long long seed) {
        auto b = basis();
        Field v = leray_project(*ops_, random_field(ops_->grid_ptr(), seed));
        Eigen::VectorXd cv = b->coefficients(v);
        double lhs = 0, rhs = 0;
        for (int j = 0; j < cv.size(); ++j) {
            double cu = cv[j] / (1.0 + alpha * (b->mu(j) - 1.0));
            lhs += (cv[j] - cu) * (cv[j] - cu);
            double lu = (b->mu(j) - 1.0) * cu;
            rhs += lu * lu;
        }
        return std::abs(std::sqrt(lhs) - alpha * std::sqrt(rhs)) / std::max(1.0, ops_->norm(v));
    }

    double skew_orthogonality(unsigned long long seed) {
        auto b = basis();
        Field v = leray_project(*ops_, random_field(ops_->grid_ptr(), seed));
        Field u = leray_project(*ops_, random_field(ops_->grid_ptr(), seed + 1));
        Field B = nonlinearity(*b, ModelKind::LNSAlpha, v, u);
        return std::abs(ops_->inner_product(B, u)) /
               std::max(1.0, ops_->norm_h1(v) * ops_->inner_product(u, u));
    }

    py::dict simulate(const std::string& model, double alpha, double dt, double t_end,
                      const std::string& initial, double amplitude, int modes) {
        SimConfig cfg;
        cfg.channel = ops_->grid().config();
        cfg.model = model_from_name(model);
        cfg.alpha = alpha;
        cfg.dt = dt;
        cfg.t_end = t_end;
        cfg.initial = initial;
        cfg.amplitude = amplitude;
        cfg.modes = modes;
        cfg.validate();
        GalerkinSolver solver(basis(), cfg);
        RunResult r = solver.run(false);
        const EnergyLedger& led = r.state.ledger;
        py::dict out;
        out["blew_up"] = r.blew_up;
        out["t"] = led.t;
        out["E_v"] = led.E_v;
        out["a_beta_v"] = led.a_beta_v;
        out["E_u_alpha"] = led.E_u_alpha;
        out["diss"] = led.diss;
        out["Bvu_v"] = led.Bvu_v;
        out["Bvu_u"] = led.Bvu_u;
        out["res_51"] = led.res_51;
        out["res_547"] = led.res_547;
        out["res_725"] = led.res_725;
        return out;
    }

    py::dict sweep(const std::vector<double>& alphas, double dt, double t_end,
                   const std::string& initial, double amplitude, int modes) {
        SimConfig cfg;
        cfg.channel = ops_->grid().config();
        cfg.model = ModelKind::LNSAlpha;
        cfg.alpha = 1e-2;
        cfg.dt = dt;
        cfg.t_end = t_end;
        cfg.initial = initial;
        cfg.amplitude = amplitude;
        cfg.modes = modes;
        SweepReport rep = run_alpha_sweep(basis(), cfg, alphas);
        py::dict out;
        out["alphas"] = rep.alphas;
        py::list sup_v_l2sq, sup_v_h1sq, pair_int_h1sq;
        for (const auto& r : rep.records) {
            sup_v_l2sq.append(r.sup_v_l2sq);
            sup_v_h1sq.append(r.sup_v_h1sq);
            pair_int_h1sq.append(r.pair_int_h1sq);
        }
        out["sup_v_l2sq"] = sup_v_l2sq;
        out["sup_v_h1sq"] = sup_v_h1sq;
        out["pair_int_h1sq"] = pair_int_h1sq;
        out["slope_sup_v_l2sq"] = rep.fit_sup_v_l2sq.slope;
        out["slope_sup_v_h1sq"] = rep.fit_sup_v_h1sq.slope;
        out["slope_pair_int_h1sq"] = rep.fit_pair_int_h1sq.slope;
        return out;
    }

  private:
    std::shared_ptr<const ChannelOperators> ops_;
    std::shared_ptr<const StokesEigenbasis> basis_;
};

py::dict fit_rate_py(const std::vector<double>& alphas, const std::vector<double>& errors) {
    if (alphas.size() != errors.size())
        throw ConfigError("fit_rate: alphas and errors must have the same length");
    std::vector<std::pair<double, double>> pairs;
    for (std::size_t i = 0; i < alphas.size(); ++i) pairs.emplace_back(alphas[i], errors[i]);
    RateFit f = fit_rate(pairs);
    py::dict out;
    out["slope"] = f.slope;
    out["intercept"] = f.intercept;
    out["residual_rms"] = f.residual_rms;
    out["ci95_halfwidth"] = f.ci95_halfwidth;
    out["points_used"] = f.points_used;
    out["excluded"] = f.excluded;
    return out;
}

py::dict gd_check_py() {
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
    GdReport sr = gd_on_patch(sphere, rot, 16, 16);
    py::dict out;
    out["sphere_max_residual"] = sr.max_residual;
    out["samples"] = sr.samples;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spectral Galerkin solvers for alpha-regularized channel flow";
#ifdef ALPHAFLOW_VERSION_INFO
    m.attr("__version__") = ALPHAFLOW_VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<NumericalError>(m, "NumericalError");

    py::class_<ChannelConfig>(m, "ChannelConfig")
        .def(py::init(&config_from_kwargs), py::arg("Lx") = 6.283185307179586,
             py::arg("Ly") = 6.283185307179586, py::arg("Nx") = 16, py::arg("Ny") = 16,
             py::arg("Nz") = 33, py::arg("beta") = 0.0, py::arg("nu") = 1.0,
             py::arg("dealias") = true)
        .def_readonly("Lx", &ChannelConfig::Lx)
        .def_readonly("Ly", &ChannelConfig::Ly)
        .def_readonly("Nx", &ChannelConfig::Nx)
        .def_readonly("Ny", &ChannelConfig::Ny)
        .def_readonly("Nz", &ChannelConfig::Nz)
        .def_readonly("beta", &ChannelConfig::beta)
        .def_readonly("nu", &ChannelConfig::nu)
        .def("hash", &ChannelConfig::hash);

    py::class_<Channel>(m, "Channel")
        .def(py::init<const ChannelConfig&>(), py::arg("config"))
        .def("transform_roundtrip_error", &Channel::transform_roundtrip_error, py::arg("seed"))
        .def("hodge_check", &Channel::hodge_check, py::arg("seed"))
        .def("spectrum", &Channel::spectrum, py::arg("count"))
        .def("filter_identity_gap", &Channel::filter_identity_gap, py::arg("alpha"),
             py::arg("seed"))
        .def("skew_orthogonality", &Channel::skew_orthogonality, py::arg("seed"))
        .def("simulate", &Channel::simulate, py::arg("model"), py::arg("alpha"), py::arg("dt"),
             py::arg("t_end"), py::arg("initial") = "taylor-vortex", py::arg("amplitude") = 1.0,
             py::arg("modes") = 0)
        .def("sweep", &Channel::sweep, py::arg("alphas"), py::arg("dt"), py::arg("t_end"),
             py::arg("initial") = "taylor-vortex", py::arg("amplitude") = 1.0,
             py::arg("modes") = 0);

    m.def("fit_rate", &fit_rate_py, py::arg("alphas"), py::arg("errors"));
    m.def("gd_check", &gd_check_py);
}
