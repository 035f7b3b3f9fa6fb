// alphaflow: spectral Galerkin solvers for the channel with vorticity-slip
// walls. Subcommands: hodge-check, spectrum, simulate, sweep, gd-check.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "alphaflow/constants.hpp"
#include "alphaflow/errors.hpp"
#include "alphaflow/experiments.hpp"
#include "alphaflow/hodge.hpp"
#include "alphaflow/io_util.hpp"
#include "alphaflow/parallel.hpp"
#include "alphaflow/solver.hpp"
#include "alphaflow/stokes.hpp"
#include "alphaflow/surface.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace alphaflow;

namespace {

struct ManifestInfo {
    std::string hash;
    json doc;
};

ManifestInfo make_manifest(const std::string& subcommand, const std::string& config_canonical,
                           unsigned long long seed, const std::vector<std::string>& inputs,
                           const std::vector<std::string>& outputs, double wall_clock_s) {
    std::string id = subcommand + "|" + config_canonical + "|seed=" + std::to_string(seed);
    ManifestInfo m;
    m.hash = hash_hex(fnv1a(id));
    m.doc = json{{"manifest", m.hash},
                 {"config_hash", hash_hex(fnv1a(config_canonical))},
                 {"library_version", kVersion},
                 {"subcommand", subcommand},
                 {"seed", seed},
                 {"inputs", inputs},
                 {"outputs", outputs},
                 {"wall_clock_s", wall_clock_s}};
    return m;
}

std::shared_ptr<const ChannelOperators> make_ops(const ChannelConfig& cfg) {
    auto grid = std::make_shared<const ChannelGrid>(cfg);
    return std::make_shared<const ChannelOperators>(grid);
}

int cmd_hodge_check(const std::string& config_path, const std::string& field_path,
                    const std::string& out_path) {
    auto t0 = std::chrono::steady_clock::now();
    ParsedConfig pc = parse_config_file(config_path);
    auto ops = make_ops(pc.channel);
    Field f = load_field(field_path, ops->grid_ptr());
    f.apply_mask();
    f.enforce_hermitian();
    HodgeComponents hc = decompose(*ops, f);

    json report;
    report["schema_version"] = 1;
    double nrm = ops->norm(f);
    json norms;
    for (int i = 0; i < 5; ++i) norms[HodgeComponents::name(i)] = ops->norm(hc.part(i));
    report["input_norm"] = nrm;
    report["norms"] = norms;
    json ortho = json::array();
    double scale = nrm > 0 ? nrm * nrm : 1.0;
    for (int i = 0; i < 5; ++i) {
        json row = json::array();
        for (int j = 0; j < 5; ++j)
            row.push_back(ops->inner_product(hc.part(i), hc.part(j)) / scale);
        ortho.push_back(row);
    }
    report["orthogonality"] = ortho;
    report["reconstruction_residual"] = hc.residual;

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ManifestInfo m = make_manifest("hodge-check", pc.channel.canonical(), 0,
                                   {config_path, field_path}, {out_path}, wall);
    report["manifest"] = m.hash;
    atomic_write(out_path, report.dump(2) + "\n");
    atomic_write(fs::path(out_path).replace_extension(".manifest.json"), m.doc.dump(2) + "\n");
    std::cout << "hodge-check: reconstruction residual " << format_double(hc.residual) << "\n";
    return 0;
}

int cmd_spectrum(const std::string& config_path, int modes, const std::string& out_path) {
    auto t0 = std::chrono::steady_clock::now();
    ParsedConfig pc = parse_config_file(config_path);
    auto ops = make_ops(pc.channel);
    StokesEigenbasis basis = StokesEigenbasis::get_cached(ops, FormKind::VSB, pc.channel.beta);
    if (modes <= 0 || modes > basis.size())
        throw ConfigError("spectrum: --modes must be in [1, " + std::to_string(basis.size()) + "]");

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ManifestInfo m =
        make_manifest("spectrum", pc.channel.canonical() + ";modes=" + std::to_string(modes), 0,
                      {config_path}, {out_path}, wall);
    CsvWriter w;
    w.comment("manifest " + m.hash);
    w.header({"index", "kx", "ky", "eigenvalue"});
    for (int j = 0; j < modes; ++j) {
        const GlobalMode& gm = basis.mode(j);
        const BlockKey& key = basis.block_eigens()[gm.block].key;
        w.row_mixed({std::to_string(j), std::to_string(key.kx), std::to_string(key.ky),
                     format_double(gm.mu)});
    }
    if (out_path == "-") {
        std::cout << w.str();
    } else {
        atomic_write(out_path, w.str());
        atomic_write(fs::path(out_path).replace_extension(".manifest.json"), m.doc.dump(2) + "\n");
    }
    return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir) {
    auto t0 = std::chrono::steady_clock::now();
    ParsedConfig pc = parse_config_file(config_path);
    if (!pc.sim) throw ConfigError("simulate: config has no [sim] section");
    SimConfig cfg = *pc.sim;
    fs::create_directories(out_dir);

    auto ops = make_ops(cfg.channel);
    auto basis = std::make_shared<const StokesEigenbasis>(
        StokesEigenbasis::get_cached(ops, FormKind::VSB, cfg.channel.beta));
    GalerkinSolver solver(basis, cfg);

    ManifestInfo m0 = make_manifest("simulate", cfg.canonical(), cfg.seed, {config_path},
                                    {out_dir + "/ledger.csv"}, 0.0);
    GalerkinSolver::SnapshotHook hook;
    if (cfg.snapshot_every > 0) {
        hook = [&](int step, double, const Eigen::VectorXd& c) {
            char name[32];
            std::snprintf(name, sizeof(name), "snap_%06d.afld", step);
            save_field(solver.velocity_field(c), fs::path(out_dir) / name);
        };
    }
    RunResult run = solver.run(false, hook);
    atomic_write(fs::path(out_dir) / "ledger.csv", run.state.ledger.csv(m0.hash));

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ManifestInfo m = make_manifest("simulate", cfg.canonical(), cfg.seed, {config_path},
                                   {out_dir + "/ledger.csv"}, wall);
    atomic_write(fs::path(out_dir) / "manifest.json", m.doc.dump(2) + "\n");
    if (run.blew_up) {
        std::cerr << "simulate: breakdown detected at t = " << format_double(run.blowup_time)
                  << " (partial ledger written)\n";
        return 1;
    }
    EnergyReport er = energy_report(run.state.ledger);
    std::cout << "simulate: t_end " << format_double(run.state.t) << ", max identity residuals "
              << format_double(er.max_res_51) << " / " << format_double(er.max_res_547) << " / "
              << format_double(er.max_res_725) << "\n";
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& alphas_arg,
              const std::string& out_path) {
    auto t0 = std::chrono::steady_clock::now();
    ParsedConfig pc = parse_config_file(config_path);
    if (!pc.sim) throw ConfigError("sweep: config has no [sim] section");
    SimConfig cfg = *pc.sim;

    std::vector<double> alphas;
    std::string tok;
    std::stringstream ss(alphas_arg);
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        alphas.push_back(std::stod(tok));
    }
    if (alphas.empty()) throw ConfigError("sweep: --alphas is empty");

    auto ops = make_ops(cfg.channel);
    auto basis = std::make_shared<const StokesEigenbasis>(
        StokesEigenbasis::get_cached(ops, FormKind::VSB, cfg.channel.beta));

    std::string canonical = cfg.canonical() + ";alphas=" + alphas_arg;
    ManifestInfo m0 = make_manifest("sweep", canonical, cfg.seed, {config_path}, {out_path}, 0.0);

    SweepReport rep = run_alpha_sweep(basis, cfg, alphas);
    rep.manifest = m0.hash;
    atomic_write(out_path, rep.to_json());
    atomic_write(fs::path(out_path).replace_extension(".csv"), rep.to_csv());

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ManifestInfo m = make_manifest("sweep", canonical, cfg.seed, {config_path}, {out_path}, wall);
    atomic_write(fs::path(out_path).replace_extension(".manifest.json"), m.doc.dump(2) + "\n");

    bool any_blew = false;
    for (const auto& r : rep.records) any_blew = any_blew || r.blew_up;
    std::cout << "sweep: " << rep.records.size() << " members, slope(sup||v-v0||^2) = "
              << format_double(rep.fit_sup_v_l2sq.slope) << "\n";
    if (any_blew) {
        std::cerr << "sweep: at least one member run broke down (partial report)\n";
        return 1;
    }
    return 0;
}

int cmd_gd_check(const std::string& out_path) {
    // Flat patch: GD vanishes identically; tangential residual is exact zero.
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
    GdReport flat_rep = gd_on_patch(flat, tangent, 24, 24);

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
    GdReport sph_rep = gd_on_patch(sphere, rot, 24, 24);

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
    double sym_gap = std::abs(sym.integral_gd_phi_u - sym.integral_gd_u_phi) /
                     std::max({1e-300, std::abs(sym.integral_gd_phi_u), std::abs(sym.integral_gd_u_phi)});

    json rep;
    rep["schema_version"] = 1;
    rep["flat_max_residual"] = flat_rep.max_residual;
    rep["sphere_max_residual"] = sph_rep.max_residual;
    rep["lemma311_relative_gap"] = sym_gap;
    bool ok = flat_rep.max_residual <= tol::gd_flat && sph_rep.max_residual <= tol::gd_curved &&
              sym_gap <= tol::gd_curved;
    rep["pass"] = ok;
    std::string text = rep.dump(2) + "\n";
    if (out_path == "-")
        std::cout << text;
    else
        atomic_write(out_path, text);
    std::cout << "gd-check: flat " << format_double(flat_rep.max_residual) << ", sphere "
              << format_double(sph_rep.max_residual) << ", symmetry gap " << format_double(sym_gap)
              << (ok ? " [ok]\n" : " [FAIL]\n");
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Channel solvers for alpha-regularized incompressible flow"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "cap on worker threads");

    std::string config_path, field_path, out_path, alphas_arg;
    int modes = 10;

    auto* hodge = app.add_subcommand("hodge-check", "five-way decomposition report for a field");
    hodge->add_option("--config", config_path, "channel config file")->required();
    hodge->add_option("--field", field_path, "input field (AFLD container)")->required();
    hodge->add_option("--out", out_path, "output JSON path")->default_val("hodge_report.json");

    auto* spectrum = app.add_subcommand("spectrum", "Stokes eigenvalues as CSV");
    spectrum->add_option("--config", config_path, "channel config file")->required();
    spectrum->add_option("--modes", modes, "number of modes")->required();
    spectrum->add_option("--out", out_path, "output CSV path ('-' for stdout)")->default_val("-");

    auto* simulate = app.add_subcommand("simulate", "integrate one model run");
    simulate->add_option("--config", config_path, "config with [sim] section")->required();
    simulate->add_option("--out", out_path, "output directory")->required();

    auto* sweep = app.add_subcommand("sweep", "vanishing-alpha convergence sweep");
    sweep->add_option("--config", config_path, "config with [sim] section")->required();
    sweep->add_option("--alphas", alphas_arg, "comma-separated alpha list")->required();
    sweep->add_option("--out", out_path, "report JSON path")->required();

    auto* gd = app.add_subcommand("gd-check", "boundary-geometry identity checks");
    gd->add_option("--out", out_path, "output JSON path ('-' for stdout)")->default_val("-");

    CLI11_PARSE(app, argc, argv);
    if (threads > 0) ThreadBudget::instance().set(threads);

    try {
        if (app.got_subcommand(hodge)) return cmd_hodge_check(config_path, field_path, out_path);
        if (app.got_subcommand(spectrum)) return cmd_spectrum(config_path, modes, out_path);
        if (app.got_subcommand(simulate)) return cmd_simulate(config_path, out_path);
        if (app.got_subcommand(sweep)) return cmd_sweep(config_path, alphas_arg, out_path);
        if (app.got_subcommand(gd)) return cmd_gd_check(out_path);
    } catch (ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 1;
    } catch (std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
