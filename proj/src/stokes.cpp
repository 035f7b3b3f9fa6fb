#include "alphaflow/stokes.hpp"

#include <algorithm>
#include <cmath>

#include "alphaflow/constants.hpp"
#include "alphaflow/errors.hpp"
#include "alphaflow/io_util.hpp"
#include "alphaflow/parallel.hpp"

namespace alphaflow {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

namespace {
const Complex I_(0.0, 1.0);
const double SQRT2 = std::sqrt(2.0);

VectorXcd stack_block(const Field& f, const BlockKey& key, int n) {
    VectorXcd v(3 * n);
    for (int c = 0; c < 3; ++c) v.segment(c * n, n) = f.comp(c).vec(key.ix, key.iy);
    return v;
}

void unstack_block(Field& f, const BlockKey& key, int n, const VectorXcd& v) {
    for (int c = 0; c < 3; ++c) f.comp(c).vec(key.ix, key.iy) = v.segment(c * n, n);
}

// Boundary load vector for int_walls b . phi (tangential components only).
VectorXcd boundary_load(const BoundaryData& b, const BlockKey& key, int n) {
    VectorXcd load = VectorXcd::Zero(3 * n);
    for (int c = 0; c < 2; ++c) {
        load[c * n] = b.at(0, c, key.ix, key.iy);
        load[c * n + n - 1] = b.at(1, c, key.ix, key.iy);
    }
    return load;
}

}  // namespace

BoundaryData::BoundaryData(std::shared_ptr<const ChannelGrid> grid) : grid_(std::move(grid)) {
    data_.assign(static_cast<std::size_t>(grid_->nx()) * grid_->ny() * 4, Complex(0, 0));
}

void BoundaryData::enforce_hermitian() {
    const int nx = grid_->nx(), ny = grid_->ny();
    for (int wall = 0; wall < 2; ++wall)
        for (int c = 0; c < 2; ++c)
            for (int iy = 0; iy < ny; ++iy)
                for (int ix = 0; ix < nx; ++ix) {
                    int jx = (nx - ix) % nx, jy = (ny - iy) % ny;
                    if (std::make_pair(iy, ix) > std::make_pair(jy, jx)) continue;
                    Complex a = at(wall, c, ix, iy);
                    Complex bb = at(wall, c, jx, jy);
                    if (ix == jx && iy == jy) {
                        at(wall, c, ix, iy) = Complex(a.real(), 0);
                    } else {
                        Complex avg = 0.5 * (a + std::conj(bb));
                        at(wall, c, ix, iy) = avg;
                        at(wall, c, jx, jy) = std::conj(avg);
                    }
                }
}

BoundaryData vorticity_slip_trace(const ChannelOperators& ops, const Field& u) {
    const ChannelGrid& g = ops.grid();
    const int n = g.nz();
    Field omega = ops.curl(u);
    BoundaryData b(ops.grid_ptr());
    for (const BlockKey& key : g.blocks()) {
        const Complex* wx = omega.comp(0).block(key.ix, key.iy);
        const Complex* wy = omega.comp(1).block(key.ix, key.iy);
        // z=0 wall, outward normal -e_z: n x omega = (omega_y, -omega_x, 0).
        b.at(0, 0, key.ix, key.iy) = wy[0];
        b.at(0, 1, key.ix, key.iy) = -wx[0];
        // z=1 wall, outward normal +e_z: n x omega = (-omega_y, omega_x, 0).
        b.at(1, 0, key.ix, key.iy) = -wy[n - 1];
        b.at(1, 1, key.ix, key.iy) = wx[n - 1];
    }
    return b;
}

BoundaryData tangential_trace(const ChannelOperators& ops, const Field& u, double scale) {
    const ChannelGrid& g = ops.grid();
    const int n = g.nz();
    BoundaryData b(ops.grid_ptr());
    for (const BlockKey& key : g.blocks()) {
        for (int c = 0; c < 2; ++c) {
            const Complex* uc = u.comp(c).block(key.ix, key.iy);
            b.at(0, c, key.ix, key.iy) = scale * uc[0];
            b.at(1, c, key.ix, key.iy) = scale * uc[n - 1];
        }
    }
    return b;
}

BoundaryData boundary_sum(const BoundaryData& a, const BoundaryData& b) {
    BoundaryData out = a;
    const ChannelGrid& g = a.grid();
    for (int wall = 0; wall < 2; ++wall)
        for (int c = 0; c < 2; ++c)
            for (int iy = 0; iy < g.ny(); ++iy)
                for (int ix = 0; ix < g.nx(); ++ix)
                    out.at(wall, c, ix, iy) += b.at(wall, c, ix, iy);
    return out;
}

StokesEigenbasis StokesEigenbasis::compute(std::shared_ptr<const ChannelOperators> ops,
                                           FormKind kind, double boundary_coef, int count) {
    if (boundary_coef < 0.0)
        throw ConfigError("solve_eigenproblem: boundary coefficient must be nonnegative");
    const ChannelGrid& g = ops->grid();
    const double nu = g.config().nu;
    const double area = g.area();

    StokesEigenbasis basis;
    basis.ops_ = ops;
    basis.kind_ = kind;
    basis.coef_ = boundary_coef;

    const auto& reps = ops->rep_blocks();
    basis.blocks_.resize(reps.size());
    std::vector<double> ortho(reps.size(), 0.0), resid(reps.size(), 0.0);

    parallel_for(reps.size(), [&](std::size_t bi) {
        const auto& blk = reps[bi];
        MatrixXcd form = kind == FormKind::VSB ? ops->form_matrix_vsb(blk.key, boundary_coef)
                                               : ops->form_matrix_nsb(blk.key, boundary_coef);
        // Shifted pencil: solve on the PSD form part and add the mass shift
        // afterwards, so mu = 1 + lambda >= 1 holds structurally.
        MatrixXcd Fr = blk.basis.adjoint() * (nu * form) * blk.basis;
        MatrixXcd Mr = blk.basis.adjoint() * blk.mass_basis;
        Fr = 0.5 * (Fr + Fr.adjoint()).eval();
        Mr = 0.5 * (Mr + Mr.adjoint()).eval();

        BlockEigen be;
        be.key = blk.key;
        MatrixXcd Y;
        if (blk.key.kx == 0 && blk.key.ky == 0) {
            Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> es(Fr.real(), Mr.real());
            if (es.info() != Eigen::Success)
                throw NumericalError("eigensolver failed at block (0,0)");
            be.mu = es.eigenvalues();
            Y = es.eigenvectors().cast<Complex>();
        } else {
            Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXcd> es(Fr, Mr);
            if (es.info() != Eigen::Success)
                throw NumericalError("eigensolver failed at block (" + std::to_string(blk.key.kx) +
                                     "," + std::to_string(blk.key.ky) + ")");
            be.mu = es.eigenvalues();
            Y = es.eigenvectors();
        }
        // The form is a weighted sum of squares; eigenvalues below zero are
        // rounding noise of the dense solve.
        for (int j = 0; j < be.mu.size(); ++j) be.mu[j] = 1.0 + std::max(0.0, be.mu[j]);
        MatrixXcd Ar = Fr + Mr;
        // Certificates on the reduced problem.
        MatrixXcd G = Y.adjoint() * Mr * Y;
        ortho[bi] = (G - MatrixXcd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff();
        for (int j = 0; j < be.mu.size(); ++j) {
            double r = (Ar * Y.col(j) - be.mu[j] * (Mr * Y.col(j))).norm() / std::max(1.0, be.mu[j]);
            resid[bi] = std::max(resid[bi], r);
        }
        // Deterministic phase: largest entry made real positive.
        be.modes = blk.basis * Y;
        for (int j = 0; j < be.modes.cols(); ++j) {
            int imax = 0;
            double amax = 0.0;
            for (int i = 0; i < be.modes.rows(); ++i) {
                double a = std::abs(be.modes(i, j));
                if (a > amax) {
                    amax = a;
                    imax = i;
                }
            }
            if (amax > 0) {
                Complex ph = be.modes(imax, j) / amax;
                be.modes.col(j) /= ph;
            }
        }
        be.modes /= std::sqrt(area);
        basis.blocks_[bi] = std::move(be);
    });

    basis.ortho_defect_ = 0.0;
    basis.max_residual_ = 0.0;
    for (std::size_t bi = 0; bi < reps.size(); ++bi) {
        basis.ortho_defect_ = std::max(basis.ortho_defect_, ortho[bi]);
        basis.max_residual_ = std::max(basis.max_residual_, resid[bi]);
    }
    basis.build_order(count);
    return basis;
}

void StokesEigenbasis::build_order(int count) {
    order_.clear();
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
        const BlockEigen& be = blocks_[bi];
        bool kzero = (be.key.kx == 0 && be.key.ky == 0);
        for (int j = 0; j < be.mu.size(); ++j) {
            if (kzero) {
                order_.push_back(GlobalMode{be.mu[j], static_cast<int>(bi), j, 0});
            } else {
                order_.push_back(GlobalMode{be.mu[j], static_cast<int>(bi), j, 0});
                order_.push_back(GlobalMode{be.mu[j], static_cast<int>(bi), j, 1});
            }
        }
    }
    std::sort(order_.begin(), order_.end(), [this](const GlobalMode& a, const GlobalMode& b) {
        if (a.mu != b.mu) return a.mu < b.mu;
        const BlockKey& ka = blocks_[a.block].key;
        const BlockKey& kb = blocks_[b.block].key;
        if (ka.kx != kb.kx) return ka.kx < kb.kx;
        if (ka.ky != kb.ky) return ka.ky < kb.ky;
        if (a.local != b.local) return a.local < b.local;
        return a.part < b.part;
    });
    if (count > 0) {
        if (count > static_cast<int>(order_.size()))
            throw ConfigError("requested mode count exceeds the discrete space dimension");
        order_.resize(count);
    }
}

Field StokesEigenbasis::field_of_mode(int j) const {
    const ChannelGrid& g = ops_->grid();
    const int n = g.nz();
    const GlobalMode& m = order_.at(j);
    const BlockEigen& be = blocks_[m.block];
    Field f(ops_->grid_ptr());
    VectorXcd e = be.modes.col(m.local);
    if (be.key.kx == 0 && be.key.ky == 0) {
        unstack_block(f, be.key, n, e);
    } else {
        VectorXcd coef = (m.part == 0 ? Complex(1.0 / SQRT2, 0) : Complex(0, -1.0 / SQRT2)) * e;
        unstack_block(f, be.key, n, coef);
        ops_->mirror_conjugates(f);
    }
    return f;
}

VectorXd StokesEigenbasis::coefficients(const Field& u, int m) const {
    const ChannelGrid& g = ops_->grid();
    const int n = g.nz();
    const MatrixXd& M = g.vertical().mass();
    int total = m > 0 ? m : size();

    // Per-block complex inner products, then split into the real pairs.
    std::vector<VectorXcd> p(blocks_.size());
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
        const BlockEigen& be = blocks_[bi];
        VectorXcd stacked = stack_block(u, be.key, n);
        VectorXcd mv(3 * n);
        for (int c = 0; c < 3; ++c) mv.segment(c * n, n) = M * stacked.segment(c * n, n);
        p[bi] = g.area() * (be.modes.adjoint() * mv);
    }
    VectorXd coeffs(total);
    for (int j = 0; j < total; ++j) {
        const GlobalMode& gm = order_[j];
        Complex pj = p[gm.block][gm.local];
        bool kzero = blocks_[gm.block].key.kx == 0 && blocks_[gm.block].key.ky == 0;
        if (kzero)
            coeffs[j] = pj.real();
        else
            coeffs[j] = gm.part == 0 ? SQRT2 * pj.real() : -SQRT2 * pj.imag();
    }
    return coeffs;
}

Eigen::VectorXd StokesEigenbasis::coefficients_from_load(const Field& load, int m) const {
    const ChannelGrid& g = ops_->grid();
    const int n = g.nz();
    int total = m > 0 ? m : size();
    std::vector<VectorXcd> p(blocks_.size());
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
        const BlockEigen& be = blocks_[bi];
        VectorXcd stacked = stack_block(load, be.key, n);
        p[bi] = g.area() * (be.modes.adjoint() * stacked);
    }
    VectorXd coeffs(total);
    for (int j = 0; j < total; ++j) {
        const GlobalMode& gm = order_[j];
        Complex pj = p[gm.block][gm.local];
        bool kzero = blocks_[gm.block].key.kx == 0 && blocks_[gm.block].key.ky == 0;
        if (kzero)
            coeffs[j] = pj.real();
        else
            coeffs[j] = gm.part == 0 ? SQRT2 * pj.real() : -SQRT2 * pj.imag();
    }
    return coeffs;
}

double StokesEigenbasis::span_residual(const Field& u, const VectorXd& coeffs) const {
    double nu2 = ops_->inner_product(u, u);
    double sum = coeffs.squaredNorm();
    double diff = std::max(0.0, nu2 - sum);
    return nu2 > 0 ? std::sqrt(diff / nu2) : 0.0;
}

Field StokesEigenbasis::field_from_coeffs(const VectorXd& coeffs) const {
    const ChannelGrid& g = ops_->grid();
    const int n = g.nz();
    // Gather per-block complex coefficients first.
    std::vector<VectorXcd> w(blocks_.size());
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi)
        w[bi] = VectorXcd::Zero(blocks_[bi].mu.size());
    for (int j = 0; j < coeffs.size(); ++j) {
        const GlobalMode& gm = order_[j];
        bool kzero = blocks_[gm.block].key.kx == 0 && blocks_[gm.block].key.ky == 0;
        if (kzero)
            w[gm.block][gm.local] += coeffs[j];
        else
            w[gm.block][gm.local] += gm.part == 0 ? Complex(coeffs[j] / SQRT2, 0)
                                                  : Complex(0, -coeffs[j] / SQRT2);
    }
    Field f(ops_->grid_ptr());
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
        if (w[bi].size() == 0) continue;
        VectorXcd stacked = blocks_[bi].modes * w[bi];
        unstack_block(f, blocks_[bi].key, n, stacked);
    }
    ops_->mirror_conjugates(f);
    return f;
}

std::string StokesEigenbasis::cache_hash() const {
    std::string s = ops_->grid().config().canonical();
    s += ";kind=" + std::string(kind_ == FormKind::VSB ? "vsb" : "nsb");
    s += ";coef=" + format_double(coef_);
    s += ";fmt=1";
    return hash_hex(fnv1a(s));
}

void StokesEigenbasis::save(const std::filesystem::path& path) const {
    BinWriter w;
    w.magic("ASPB");
    w.u32(1);
    std::string h = cache_hash();
    w.raw(h.data(), 16);
    w.u32(static_cast<std::uint32_t>(blocks_.size()));
    const int n = ops_->grid().nz();
    for (const BlockEigen& be : blocks_) {
        w.u32(static_cast<std::uint32_t>(be.key.kx + (1 << 16)));
        w.u32(static_cast<std::uint32_t>(be.key.ky + (1 << 16)));
        w.u32(static_cast<std::uint32_t>(be.mu.size()));
        for (int j = 0; j < be.mu.size(); ++j) w.f64(be.mu[j]);
        for (int j = 0; j < be.mu.size(); ++j)
            for (int i = 0; i < 3 * n; ++i) {
                w.f64(be.modes(i, j).real());
                w.f64(be.modes(i, j).imag());
            }
    }
    w.f64(ortho_defect_);
    w.f64(max_residual_);
    atomic_write(path, w.bytes);
}

std::optional<StokesEigenbasis> StokesEigenbasis::load(const std::filesystem::path& path,
                                                       std::shared_ptr<const ChannelOperators> ops,
                                                       FormKind kind, double boundary_coef,
                                                       int count) {
    if (!std::filesystem::exists(path)) return std::nullopt;
    StokesEigenbasis basis;
    basis.ops_ = ops;
    basis.kind_ = kind;
    basis.coef_ = boundary_coef;
    try {
        auto bytes = read_file_bytes(path);
        BinReader r(bytes);
        r.expect_magic("ASPB", path.string());
        if (r.u32() != 1) return std::nullopt;
        char hash[17] = {0};
        r.raw(hash, 16);
        if (std::string(hash, 16) != basis.cache_hash()) return std::nullopt;
        std::uint32_t nblocks = r.u32();
        const int n = ops->grid().nz();
        if (nblocks != ops->rep_blocks().size()) return std::nullopt;
        basis.blocks_.resize(nblocks);
        for (std::uint32_t bi = 0; bi < nblocks; ++bi) {
            BlockEigen& be = basis.blocks_[bi];
            int kx = static_cast<int>(r.u32()) - (1 << 16);
            int ky = static_cast<int>(r.u32()) - (1 << 16);
            be.key = ops->rep_blocks()[bi].key;
            if (be.key.kx != kx || be.key.ky != ky) return std::nullopt;
            std::uint32_t m = r.u32();
            be.mu.resize(m);
            for (std::uint32_t j = 0; j < m; ++j) be.mu[j] = r.f64();
            be.modes.resize(3 * n, m);
            for (std::uint32_t j = 0; j < m; ++j)
                for (int i = 0; i < 3 * n; ++i) {
                    double re = r.f64();
                    double im = r.f64();
                    be.modes(i, j) = Complex(re, im);
                }
        }
        basis.ortho_defect_ = r.f64();
        basis.max_residual_ = r.f64();
    } catch (std::exception&) {
        return std::nullopt;
    }
    basis.build_order(count);
    return basis;
}

StokesEigenbasis StokesEigenbasis::get_cached(std::shared_ptr<const ChannelOperators> ops,
                                              FormKind kind, double boundary_coef, int count,
                                              const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    fs::path d = dir.empty() ? cache_dir() : dir;
    StokesEigenbasis probe;
    probe.ops_ = ops;
    probe.kind_ = kind;
    probe.coef_ = boundary_coef;
    fs::path file = d / ("eigenbasis-" + probe.cache_hash() + ".aspb");
    if (auto loaded = load(file, ops, kind, boundary_coef, count)) return std::move(*loaded);
    StokesEigenbasis basis = compute(ops, kind, boundary_coef, count);
    // Lock file guards concurrent writers; the write itself is atomic.
    fs::path lock = file;
    lock += ".lock";
    std::error_code ec;
    if (!fs::exists(lock, ec)) {
        atomic_write(lock, std::string("lock"));
        basis.save(file);
        fs::remove(lock, ec);
    }
    return basis;
}

FractionalResult apply_fractional(const StokesEigenbasis& basis, double s, const Field& u) {
    VectorXd c = basis.coefficients(u);
    double res = basis.span_residual(u, c);
    for (int j = 0; j < c.size(); ++j) c[j] *= std::pow(basis.mu(j), s);
    FractionalResult out{basis.field_from_coeffs(c), res, res > tol::span_residual};
    return out;
}

double norm_s(const StokesEigenbasis& basis, double s, const Field& u) {
    VectorXd c = basis.coefficients(u);
    double acc = 0.0;
    for (int j = 0; j < c.size(); ++j) acc += std::pow(basis.mu(j), 2.0 * s) * c[j] * c[j];
    return std::sqrt(acc);
}

namespace {

// Reduced solve over the discrete H blocks of
//   lambda (u,phi) + nu [ a_{form_beta}(u,phi) + int_walls b.phi ] = (f,phi).
Field reduced_boundary_solve(const ChannelOperators& ops, double lambda, double form_beta,
                             const Field* f, const BoundaryData& b, double& weak_residual) {
    const ChannelGrid& g = ops.grid();
    const int n = g.nz();
    const double nu = g.config().nu;
    const MatrixXd& M = g.vertical().mass();
    Field u(ops.grid_ptr());
    const auto& reps = ops.rep_blocks();
    std::vector<double> res(reps.size(), 0.0);
    std::vector<double> scale(reps.size(), 0.0);
    parallel_for(reps.size(), [&](std::size_t bi) {
        const auto& blk = reps[bi];
        MatrixXcd A = nu * ops.form_matrix_vsb(blk.key, form_beta);
        MatrixXcd Ar = blk.basis.adjoint() * A * blk.basis;
        Ar += lambda * (blk.basis.adjoint() * blk.mass_basis);
        Ar = 0.5 * (Ar + Ar.adjoint()).eval();

        VectorXcd rhs = VectorXcd::Zero(blk.dim_h);
        if (f) {
            VectorXcd stacked = stack_block(*f, blk.key, n);
            VectorXcd mv(3 * n);
            for (int c = 0; c < 3; ++c) mv.segment(c * n, n) = M * stacked.segment(c * n, n);
            rhs += blk.basis.adjoint() * mv;
        }
        VectorXcd bl = boundary_load(b, blk.key, n);
        rhs -= nu * (blk.basis.adjoint() * bl);

        Eigen::LLT<MatrixXcd> llt(Ar);
        VectorXcd coef;
        if (llt.info() == Eigen::Success) {
            coef = llt.solve(rhs);
        } else {
            coef = Eigen::LDLT<MatrixXcd>(Ar).solve(rhs);
        }
        VectorXcd sol = blk.basis * coef;
        unstack_block(u, blk.key, n, sol);
        res[bi] = (Ar * coef - rhs).norm();
        scale[bi] = rhs.norm() + coef.norm();
    });
    ops.mirror_conjugates(u);
    double r = 0, s = 0;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        r = std::max(r, res[i]);
        s = std::max(s, scale[i]);
    }
    weak_residual = s > 0 ? r / s : r;
    return u;
}

}  // namespace

StokesSolveResult solve_stokes(const ChannelOperators& ops, double lambda, const Field& f,
                               const BoundaryData& b) {
    if (!(lambda > 0.0)) throw ConfigError("solve_stokes: lambda must be positive");
    StokesSolveResult out{Field(ops.grid_ptr()), 0.0};
    out.u = reduced_boundary_solve(ops, lambda, 0.0, &f, b, out.weak_residual);
    return out;
}

RobinSolveResult solve_stokes_robin(const ChannelOperators& ops, const Field& f,
                                    const BoundaryData& b) {
    const ChannelGrid& g = ops.grid();
    const double beta = g.config().beta;
    RobinSolveResult out{Field(ops.grid_ptr()), 0.0, {}, {}, 0};

    // Contraction map: u = T(v) solves the lambda-shifted problem with
    // boundary data beta*v + b and no volume forcing. Escalate lambda in
    // powers of 4 until the measured factor drops below the threshold.
    double lambda = 1.0;
    Field psi(ops.grid_ptr());
    bool converged = false;
    const int max_escalations = 16;
    for (int esc = 0; esc < max_escalations && !converged; ++esc, lambda *= 4.0) {
        out.lambdas.push_back(lambda);
        Field v(ops.grid_ptr());
        double prev_dist = -1.0;
        double factor = 0.0;
        for (int it = 0; it < 200; ++it) {
            BoundaryData beff = boundary_sum(tangential_trace(ops, v, beta), b);
            double wres = 0.0;
            Field next = reduced_boundary_solve(ops, lambda, 0.0, nullptr, beff, wres);
            Field diff = next;
            diff -= v;
            double d = std::sqrt(std::max(0.0, ops.norm(diff) * ops.norm_h1(diff)));
            ++out.iterations;
            v = next;
            if (d <= 1e-14 * std::max(1.0, ops.norm(v))) {
                converged = true;
                break;
            }
            if (prev_dist > 0.0) {
                factor = d / prev_dist;
                if (factor > tol::robin_contraction && it >= 3) break;  // escalate lambda
            }
            prev_dist = d;
        }
        out.contraction_factors.push_back(factor);
        if (converged) psi = v;
    }
    if (!converged) {
        std::string hist;
        for (double l : out.lambdas) hist += " " + format_double(l);
        throw NumericalError("solve_stokes_robin: no contraction after lambda escalation:" + hist);
    }

    double lambda_used = out.lambdas.back();
    // Correction solve with the homogeneous Robin form.
    Field fcorr = f;
    Field scaled_psi = psi;
    scaled_psi *= (1.0 - lambda_used);
    fcorr -= scaled_psi;
    BoundaryData zero(ops.grid_ptr());
    double wres = 0.0;
    out.u = reduced_boundary_solve(ops, 1.0, beta, &fcorr, zero, wres);
    out.u += psi;

    // Weak residual of the target formulation.
    const int n = g.nz();
    const double nu = g.config().nu;
    const MatrixXd& M = g.vertical().mass();
    double worst = 0.0, scale = 0.0;
    for (const auto& blk : ops.rep_blocks()) {
        MatrixXcd A = ops.mass_matrix3() + nu * ops.form_matrix_vsb(blk.key, beta);
        VectorXcd su = stack_block(out.u, blk.key, n);
        VectorXcd sf = stack_block(f, blk.key, n);
        VectorXcd mf(3 * n);
        for (int c = 0; c < 3; ++c) mf.segment(c * n, n) = M * sf.segment(c * n, n);
        VectorXcd resvec =
            blk.basis.adjoint() * (A * su + nu * boundary_load(b, blk.key, n) - mf);
        worst = std::max(worst, resvec.cwiseAbs().maxCoeff());
        scale = std::max(scale, mf.norm() + su.norm());
    }
    out.weak_residual = scale > 0 ? worst / scale : worst;
    return out;
}

double robin_contraction_probe(const ChannelOperators& ops, const BoundaryData& b, double lambda,
                               int iters) {
    const double beta = ops.grid().config().beta;
    Field v(ops.grid_ptr());
    double prev = -1.0, factor = 0.0;
    for (int it = 0; it < iters; ++it) {
        BoundaryData beff = boundary_sum(tangential_trace(ops, v, beta), b);
        double wres = 0.0;
        Field next = reduced_boundary_solve(ops, lambda, 0.0, nullptr, beff, wres);
        Field diff = next;
        diff -= v;
        double d = std::sqrt(std::max(0.0, ops.norm(diff) * ops.norm_h1(diff)));
        v = next;
        if (prev > 0.0 && d > 0.0) factor = d / prev;
        if (d == 0.0) break;
        prev = d;
    }
    return factor;
}

}  // namespace alphaflow
