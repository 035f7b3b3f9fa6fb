#include "alphaflow/experiments.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "alphaflow/errors.hpp"
#include "alphaflow/io_util.hpp"
#include "alphaflow/parallel.hpp"

namespace alphaflow {

using Eigen::VectorXd;
using nlohmann::json;

RateFit fit_rate(const std::vector<std::pair<double, double>>& pairs) {
    RateFit fit;
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (!(pairs[i].first > 0.0)) throw ConfigError("fit_rate: alpha values must be positive");
        if (!(pairs[i].second > 0.0)) {
            fit.excluded.push_back(static_cast<int>(i));
            continue;
        }
        xs.push_back(std::log(pairs[i].first));
        ys.push_back(std::log(pairs[i].second));
    }
    fit.points_used = static_cast<int>(xs.size());
    if (fit.points_used < 3)
        throw ConfigError("fit_rate: need at least 3 positive (alpha, error) pairs, have " +
                          std::to_string(fit.points_used));
    double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / n);
    if (fit.points_used > 2) {
        double sigma2 = ss / (n - 2.0);
        double se = std::sqrt(sigma2 / sxx);
        // two-sided 95% t quantiles for small df
        static const double tq[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306};
        int df = fit.points_used - 2;
        double t = df <= 8 ? tq[df - 1] : 1.96;
        fit.ci95_halfwidth = t * se;
    }
    return fit;
}

namespace {

json fit_to_json(const RateFit& f) {
    return json{{"slope", f.slope},
                {"intercept", f.intercept},
                {"residual_rms", f.residual_rms},
                {"ci95_halfwidth", f.ci95_halfwidth},
                {"points_used", f.points_used},
                {"excluded", f.excluded}};
}

}  // namespace

SweepReport run_alpha_sweep(std::shared_ptr<const StokesEigenbasis> basis, const SimConfig& base,
                            std::vector<double> alphas) {
    if (base.model == ModelKind::NS)
        throw ConfigError("sweep: base model must be lns_alpha or leray_alpha");
    for (double a : alphas)
        if (a < 0.0) throw ConfigError("sweep: alpha values must be nonnegative");
    std::sort(alphas.begin(), alphas.end(), std::greater<double>());
    alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
    if (alphas.empty()) throw ConfigError("sweep: need at least one alpha");

    SweepReport rep;
    rep.config_hash = base.hash();
    rep.alphas = alphas;

    // Reference: the limiting system on identical discretization.
    SimConfig ref_cfg = base;
    ref_cfg.model = ModelKind::NS;
    ref_cfg.alpha = 0.0;
    GalerkinSolver ref_solver(basis, ref_cfg);
    RunResult ref = ref_solver.run(true);
    if (ref.blew_up)
        throw NumericalError("sweep: reference run broke down at t = " +
                             format_double(ref.blowup_time));

    const int m = ref_solver.modes();
    VectorXd mu(m), lam(m), neg14(m);
    for (int j = 0; j < m; ++j) {
        mu[j] = basis->mu(j);
        lam[j] = mu[j] - 1.0;
        neg14[j] = std::pow(mu[j], -0.5);  // weight of the squared D(A^{-1/4}) norm
    }

    rep.records.resize(alphas.size());
    parallel_for(alphas.size(), [&](std::size_t ai) {
        double alpha = alphas[ai];
        SweepRecord& rec = rep.records[ai];
        rec.alpha = alpha;
        SimConfig cfg = base;
        if (alpha == 0.0) {
            cfg.model = ModelKind::NS;
            cfg.alpha = 0.0;
        } else {
            cfg.alpha = alpha;
        }
        GalerkinSolver solver(basis, cfg);
        RunResult run = solver.run(true);
        if (run.blew_up) {
            rec.blew_up = true;
            return;
        }
        std::size_t steps = std::min(run.trajectory.size(), ref.trajectory.size());
        rec.times.assign(run.times.begin(), run.times.begin() + steps);
        auto series = [&](std::vector<double>& dst) { dst.assign(steps, 0.0); };
        series(rec.v_l2sq);
        series(rec.v_h1sq);
        series(rec.v_h2sq);
        series(rec.u_l2sq);
        series(rec.u_h1sq);
        series(rec.u_h2sq);
        series(rec.d14_v);
        series(rec.d14_u);
        series(rec.filter_gap);
        series(rec.filter_bound);
        for (std::size_t s = 0; s < steps; ++s) {
            const VectorXd& cv = run.trajectory[s];
            const VectorXd& cr = ref.trajectory[s];
            VectorXd cu = solver.filtered_coeffs(cv);
            for (int j = 0; j < m; ++j) {
                double dv = cv[j] - cr[j];
                double du = cu[j] - cr[j];
                rec.v_l2sq[s] += dv * dv;
                rec.v_h1sq[s] += mu[j] * dv * dv;
                rec.v_h2sq[s] += mu[j] * mu[j] * dv * dv;
                rec.u_l2sq[s] += du * du;
                rec.u_h1sq[s] += mu[j] * du * du;
                rec.u_h2sq[s] += mu[j] * mu[j] * du * du;
                rec.d14_v[s] += neg14[j] * dv * dv;
                rec.d14_u[s] += neg14[j] * du * du;
                double gap = cv[j] - cu[j];
                rec.filter_gap[s] += gap * gap;
                double lu = lam[j] * cu[j];
                rec.filter_bound[s] += lu * lu;
            }
            rec.d14_v[s] = std::sqrt(rec.d14_v[s]);
            rec.d14_u[s] = std::sqrt(rec.d14_u[s]);
            rec.filter_gap[s] = std::sqrt(rec.filter_gap[s]);
            rec.filter_bound[s] = alpha * std::sqrt(rec.filter_bound[s]);
        }
        // sup and trapezoid integrals over the common time range.
        double dt = cfg.dt;
        for (std::size_t s = 0; s < steps; ++s) {
            double w = (s == 0 || s + 1 == steps) ? 0.5 * dt : dt;
            rec.sup_v_l2sq = std::max(rec.sup_v_l2sq, rec.v_l2sq[s]);
            rec.sup_v_h1sq = std::max(rec.sup_v_h1sq, rec.v_h1sq[s]);
            rec.sup_u_l2sq = std::max(rec.sup_u_l2sq, rec.u_l2sq[s]);
            rec.sup_u_h1sq = std::max(rec.sup_u_h1sq, rec.u_h1sq[s]);
            rec.sup_v_neg14 = std::max(rec.sup_v_neg14, rec.d14_v[s]);
            rec.int_v_h1sq += w * rec.v_h1sq[s];
            rec.int_v_h2sq += w * rec.v_h2sq[s];
            rec.int_u_h1sq += w * rec.u_h1sq[s];
            rec.int_u_h2sq += w * rec.u_h2sq[s];
        }
        rec.pair_int_h1sq = rec.int_v_h1sq + rec.int_u_h1sq;
    });

    // Fitted log-log rates over the positive-alpha members.
    auto pairs_of = [&](auto metric) {
        std::vector<std::pair<double, double>> p;
        for (const SweepRecord& r : rep.records)
            if (r.alpha > 0.0 && !r.blew_up) p.emplace_back(r.alpha, metric(r));
        return p;
    };
    if (std::count_if(rep.records.begin(), rep.records.end(), [](const SweepRecord& r) {
            return r.alpha > 0 && !r.blew_up;
        }) >= 3) {
        rep.fit_sup_v_l2sq = fit_rate(pairs_of([](const SweepRecord& r) { return r.sup_v_l2sq; }));
        rep.fit_pair_int_h1sq =
            fit_rate(pairs_of([](const SweepRecord& r) { return r.pair_int_h1sq; }));
        rep.fit_sup_v_h1sq = fit_rate(pairs_of([](const SweepRecord& r) { return r.sup_v_h1sq; }));
        rep.fit_sup_u_l2sq = fit_rate(pairs_of([](const SweepRecord& r) { return r.sup_u_l2sq; }));
        rep.fit_sup_u_h1sq = fit_rate(pairs_of([](const SweepRecord& r) { return r.sup_u_h1sq; }));
        rep.fit_int_v_h2sq = fit_rate(pairs_of([](const SweepRecord& r) { return r.int_v_h2sq; }));
        rep.fit_sup_v_neg14 =
            fit_rate(pairs_of([](const SweepRecord& r) { return r.sup_v_neg14; }));
    }
    return rep;
}

std::string SweepReport::to_json() const {
    json j;
    j["schema_version"] = 1;
    j["config_hash"] = config_hash;
    j["manifest"] = manifest;
    j["alphas"] = alphas;
    json recs = json::array();
    for (const SweepRecord& r : records) {
        recs.push_back(json{{"alpha", r.alpha},
                            {"blew_up", r.blew_up},
                            {"sup_v_l2sq", r.sup_v_l2sq},
                            {"int_v_h1sq", r.int_v_h1sq},
                            {"sup_v_h1sq", r.sup_v_h1sq},
                            {"int_v_h2sq", r.int_v_h2sq},
                            {"sup_u_l2sq", r.sup_u_l2sq},
                            {"int_u_h1sq", r.int_u_h1sq},
                            {"sup_u_h1sq", r.sup_u_h1sq},
                            {"int_u_h2sq", r.int_u_h2sq},
                            {"sup_v_neg14", r.sup_v_neg14},
                            {"pair_int_h1sq", r.pair_int_h1sq}});
    }
    j["records"] = recs;
    j["fits"] = json{{"sup_v_l2sq", fit_to_json(fit_sup_v_l2sq)},
                     {"pair_int_h1sq", fit_to_json(fit_pair_int_h1sq)},
                     {"sup_v_h1sq", fit_to_json(fit_sup_v_h1sq)},
                     {"sup_u_l2sq", fit_to_json(fit_sup_u_l2sq)},
                     {"sup_u_h1sq", fit_to_json(fit_sup_u_h1sq)},
                     {"int_v_h2sq", fit_to_json(fit_int_v_h2sq)},
                     {"sup_v_neg14", fit_to_json(fit_sup_v_neg14)}};
    return j.dump(2) + "\n";
}

std::string SweepReport::to_csv() const {
    CsvWriter w;
    w.comment("manifest " + manifest);
    w.header({"alpha", "t", "v_l2sq", "v_h1sq", "v_h2sq", "u_l2sq", "u_h1sq", "u_h2sq", "d14_v",
              "d14_u", "filter_gap", "filter_bound"});
    for (const SweepRecord& r : records) {
        for (std::size_t s = 0; s < r.times.size(); ++s)
            w.row({r.alpha, r.times[s], r.v_l2sq[s], r.v_h1sq[s], r.v_h2sq[s], r.u_l2sq[s],
                   r.u_h1sq[s], r.u_h2sq[s], r.d14_v[s], r.d14_u[s], r.filter_gap[s],
                   r.filter_bound[s]});
    }
    return w.str();
}

WeakConvergenceDiagnostics weak_convergence_diagnostics(const SweepReport& report) {
    WeakConvergenceDiagnostics d;
    for (const SweepRecord& r : report.records) {
        if (r.blew_up) continue;
        d.alphas.push_back(r.alpha);
        d.d14_v.push_back(r.d14_v);
        d.d14_u.push_back(r.d14_u);
    }
    auto peak = [](const std::vector<double>& s) {
        double m = 0;
        for (double x : s) m = std::max(m, x);
        return m;
    };
    if (d.alphas.size() >= 2) {
        // alphas are sorted in decreasing order; compare extremes.
        std::size_t first = 0, last = d.alphas.size() - 1;
        if (d.alphas[last] == 0.0 && last > 0) --last;  // reference has zero error
        if (last > first) {
            d.final_below_first_v = peak(d.d14_v[last]) < peak(d.d14_v[first]);
            d.final_below_first_u = peak(d.d14_u[last]) < peak(d.d14_u[first]);
        }
    }
    return d;
}

}  // namespace alphaflow
