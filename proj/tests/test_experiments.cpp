#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "alphaflow/errors.hpp"
#include "alphaflow/experiments.hpp"
#include "test_support.hpp"

using namespace alphaflow;
using testsup::make_ops;

namespace {

std::shared_ptr<const StokesEigenbasis> make_basis(std::shared_ptr<const ChannelOperators> ops) {
    return std::make_shared<const StokesEigenbasis>(
        StokesEigenbasis::compute(ops, FormKind::VSB, ops->grid().config().beta));
}

SimConfig sweep_sim(const ChannelConfig& ch) {
    SimConfig cfg;
    cfg.channel = ch;
    cfg.model = ModelKind::LNSAlpha;
    cfg.alpha = 1e-2;  // placeholder; members override
    cfg.dt = 5e-3;
    cfg.t_end = 0.1;
    cfg.initial = "taylor-vortex";
    cfg.amplitude = 1.5;
    cfg.modes = 120;
    return cfg;
}

}  // namespace

TEST_CASE("fit_rate recovers exact power laws") {
    std::vector<std::pair<double, double>> lin, half;
    for (double a : {2e-2, 1e-2, 5e-3, 2.5e-3}) {
        lin.emplace_back(a, 3.7 * a);
        half.emplace_back(a, 0.9 * std::sqrt(a));
    }
    RateFit f1 = fit_rate(lin);
    CHECK(std::abs(f1.slope - 1.0) <= 1e-12);
    CHECK(f1.residual_rms <= 1e-12);
    RateFit f2 = fit_rate(half);
    CHECK(std::abs(f2.slope - 0.5) <= 1e-12);
}

TEST_CASE("fit_rate on a two-term series matches the closed-form least squares") {
    const double c1 = 2.0, c2 = 40.0;
    std::vector<std::pair<double, double>> pairs;
    for (double a : {4e-2, 2e-2, 1e-2, 5e-3}) pairs.emplace_back(a, c1 * a + c2 * a * a);
    RateFit f = fit_rate(pairs);
    CHECK(f.slope > 1.0);
    CHECK(f.slope < 2.0);
    // Closed-form normal equations evaluated independently.
    double mx = 0, my = 0;
    int n = 0;
    for (auto [a, e] : pairs) {
        mx += std::log(a);
        my += std::log(e);
        ++n;
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (auto [a, e] : pairs) {
        sxx += (std::log(a) - mx) * (std::log(a) - mx);
        sxy += (std::log(a) - mx) * (std::log(e) - my);
    }
    CHECK(std::abs(f.slope - sxy / sxx) <= 1e-13);
}

TEST_CASE("fit_rate excludes nonpositive errors and needs three points") {
    std::vector<std::pair<double, double>> pairs = {
        {4e-2, 1e-3}, {2e-2, 5e-4}, {1e-2, 0.0}, {5e-3, 1.2e-4}};
    RateFit f = fit_rate(pairs);
    CHECK(f.points_used == 3);
    REQUIRE(f.excluded.size() == 1);
    CHECK(f.excluded[0] == 2);
    std::vector<std::pair<double, double>> two = {{1e-2, 1e-3}, {5e-3, 5e-4}};
    CHECK_THROWS_AS(fit_rate(two), ConfigError);
}

TEST_CASE("sweep with alphas = {0} reports exactly zero errors") {
    auto ops = make_ops(8, 8, 13);
    auto basis = make_basis(ops);
    SimConfig cfg = sweep_sim(ops->grid().config());
    SweepReport rep = run_alpha_sweep(basis, cfg, {0.0});
    REQUIRE(rep.records.size() == 1);
    const SweepRecord& r = rep.records[0];
    CHECK(r.sup_v_l2sq == 0.0);
    CHECK(r.sup_v_h1sq == 0.0);
    CHECK(r.int_v_h1sq == 0.0);
    CHECK(r.int_v_h2sq == 0.0);
    CHECK(r.sup_u_l2sq == 0.0);
    CHECK(r.sup_v_neg14 == 0.0);
}

TEST_CASE("vanishing-alpha sweep: ordering, monotonicity, rates, filter bound") {
    auto ops = make_ops(8, 8, 13);
    auto basis = make_basis(ops);
    SimConfig cfg = sweep_sim(ops->grid().config());
    std::vector<double> alphas = {4e-2, 2e-2, 1e-2, 5e-3};
    SweepReport rep = run_alpha_sweep(basis, cfg, alphas);
    REQUIRE(rep.records.size() == 4);

    for (const SweepRecord& r : rep.records) {
        REQUIRE(!r.blew_up);
        // Norm ordering per snapshot: D(A^{-1/4}) <= L2 <= H1-proxy.
        for (std::size_t s = 0; s < r.times.size(); ++s) {
            CHECK(r.d14_v[s] * r.d14_v[s] <= r.v_l2sq[s] * (1 + 1e-12) + 1e-300);
            CHECK(r.v_l2sq[s] <= r.v_h1sq[s] * (1 + 1e-12) + 1e-300);
            CHECK(r.v_h1sq[s] <= r.v_h2sq[s] * (1 + 1e-12) + 1e-300);
            // Filter-vs-velocity consistency: ||u-v|| = alpha ||L u||.
            CHECK(std::abs(r.filter_gap[s] - r.filter_bound[s]) <=
                  1e-10 * (1.0 + r.filter_bound[s]));
        }
    }
    // Monotone decrease of the primary metrics as alpha decreases.
    for (std::size_t i = 0; i + 1 < rep.records.size(); ++i) {
        CHECK(rep.records[i].sup_v_l2sq >= rep.records[i + 1].sup_v_l2sq * (1 - 1e-9));
        CHECK(rep.records[i].sup_v_h1sq >= rep.records[i + 1].sup_v_h1sq * (1 - 1e-9));
        CHECK(rep.records[i].pair_int_h1sq >= rep.records[i + 1].pair_int_h1sq * (1 - 1e-9));
        CHECK(rep.records[i].int_v_h2sq >= rep.records[i + 1].int_v_h2sq * (1 - 1e-9));
    }
    // Fitted rates at least as good as the guaranteed ones.
    CHECK(rep.fit_sup_v_l2sq.slope >= 0.9);
    CHECK(rep.fit_pair_int_h1sq.slope >= 0.9);
    CHECK(rep.fit_sup_v_h1sq.slope >= 0.45);

    WeakConvergenceDiagnostics d = weak_convergence_diagnostics(rep);
    CHECK(d.final_below_first_v);
    CHECK(d.final_below_first_u);
    // Halving alpha roughly halves the D(A^{-1/4}) error.
    auto peak = [](const std::vector<double>& s) {
        double m = 0;
        for (double x : s) m = std::max(m, x);
        return m;
    };
    for (std::size_t i = 0; i + 1 < d.alphas.size(); ++i) {
        double ratio = peak(d.d14_v[i]) / peak(d.d14_v[i + 1]);
        CHECK(ratio >= 1.5);
        CHECK(ratio <= 3.0);
    }
}

TEST_CASE("sweep serialization is deterministic across repeated runs") {
    auto ops = make_ops(8, 8, 13);
    auto basis = make_basis(ops);
    SimConfig cfg = sweep_sim(ops->grid().config());
    std::vector<double> alphas = {2e-2, 1e-2, 5e-3};
    SweepReport a = run_alpha_sweep(basis, cfg, alphas);
    SweepReport b = run_alpha_sweep(basis, cfg, alphas);
    a.manifest = b.manifest = "fixed";
    CHECK(a.to_json() == b.to_json());
    CHECK(a.to_csv() == b.to_csv());
}

TEST_CASE("sweep report JSON carries the schema and fit fields") {
    auto ops = make_ops(8, 8, 13);
    auto basis = make_basis(ops);
    SimConfig cfg = sweep_sim(ops->grid().config());
    SweepReport rep = run_alpha_sweep(basis, cfg, {2e-2, 1e-2, 5e-3});
    nlohmann::json j = nlohmann::json::parse(rep.to_json());
    CHECK(j["schema_version"] == 1);
    CHECK(j["records"].size() == 3);
    CHECK(j["fits"].contains("sup_v_l2sq"));
    CHECK(j["fits"]["sup_v_h1sq"].contains("slope"));
    CHECK(j["records"][0].contains("int_u_h2sq"));
}

TEST_CASE("a failing reference run is reported as a numerical error") {
    auto ops = make_ops(8, 8, 9);
    auto basis = make_basis(ops);
    SimConfig cfg = sweep_sim(ops->grid().config());
    cfg.initial = "random";
    cfg.amplitude = 1e8;
    cfg.dt = 0.5;
    cfg.t_end = 3.0;
    cfg.modes = 0;
    CHECK_THROWS_AS(run_alpha_sweep(basis, cfg, {2e-2, 1e-2, 5e-3}), NumericalError);
}

TEST_CASE("sweep rejects an NS base model and negative alphas") {
    auto ops = make_ops(8, 8, 9);
    auto basis = make_basis(ops);
    SimConfig cfg = sweep_sim(ops->grid().config());
    cfg.model = ModelKind::NS;
    cfg.alpha = 0.0;
    CHECK_THROWS_AS(run_alpha_sweep(basis, cfg, {1e-2, 5e-3, 2e-3}), ConfigError);
    cfg.model = ModelKind::LNSAlpha;
    cfg.alpha = 1e-2;
    CHECK_THROWS_AS(run_alpha_sweep(basis, cfg, {-1e-2}), ConfigError);
}
