#include "alphaflow/operators.hpp"

#include <cmath>

#include "alphaflow/constants.hpp"
#include "alphaflow/errors.hpp"
#include "alphaflow/parallel.hpp"

namespace alphaflow {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

namespace {
const Complex I_(0.0, 1.0);
}

ChannelOperators::ChannelOperators(std::shared_ptr<const ChannelGrid> grid)
    : grid_(std::move(grid)) {
    build_blocks();
}

void ChannelOperators::build_blocks() {
    const ChannelGrid& g = *grid_;
    const VerticalBasis& vb = g.vertical();
    const int n = g.nz();
    const MatrixXd& M = vb.mass();
    const MatrixXd& K = vb.stiffness();
    const MatrixXd& D = vb.diff();

    const auto& reps = g.representatives();
    blocks_.resize(reps.size());
    block_index_.assign(static_cast<std::size_t>(g.nx()) * g.ny(), -1);

    parallel_for(reps.size(), [&](std::size_t bi) {
        const BlockKey& key = reps[bi];
        Block& blk = blocks_[bi];
        blk.key = key;
        const double wx = key.wx, wy = key.wy;
        const double k2 = wx * wx + wy * wy;
        const bool kzero = (key.kx == 0 && key.ky == 0);
        blk.dim_h = kzero ? 2 * n : 2 * n - 2;

        MatrixXcd Z = MatrixXcd::Zero(3 * n, blk.dim_h);
        if (kzero) {
            for (int i = 0; i < n; ++i) {
                double s = 1.0 / std::sqrt(M(i, i));
                Z(i, i) = s;
                Z(n + i, n + i) = s;
            }
        } else {
            // Horizontal-solenoidal family: (i wy, -i wx, 0) psi.
            for (int i = 0; i < n; ++i) {
                double s = 1.0 / std::sqrt(k2 * M(i, i));
                Z(i, i) = I_ * wy * s;
                Z(n + i, i) = -I_ * wx * s;
            }
            // Wall-vanishing vertical family: (i wx g'/k2, i wy g'/k2, g).
            for (int j = 1; j <= n - 2; ++j) {
                VectorXd dg = D.col(j);
                double nrm2 = dg.dot(M * dg) / k2 + M(j, j);
                double s = 1.0 / std::sqrt(nrm2);
                for (int i = 0; i < n; ++i) {
                    Z(i, n + j - 1) = I_ * wx / k2 * dg[i] * s;
                    Z(n + i, n + j - 1) = I_ * wy / k2 * dg[i] * s;
                }
                Z(2 * n + j, n + j - 1) = s;
            }
        }
        blk.basis = Z;
        blk.mass_basis.resize(3 * n, blk.dim_h);
        for (int c = 0; c < 3; ++c)
            blk.mass_basis.middleRows(c * n, n) = M * Z.middleRows(c * n, n);
        MatrixXcd mr = Z.adjoint() * blk.mass_basis;
        mr = 0.5 * (mr + mr.adjoint()).eval();
        blk.reduced_mass_llt.compute(mr);
        if (blk.reduced_mass_llt.info() != Eigen::Success)
            throw NumericalError("reduced mass factorization failed at block (" +
                                 std::to_string(key.kx) + "," + std::to_string(key.ky) + ")");

        // Dirichlet Poisson operator for gradient-part solves (interior nodes).
        MatrixXd ad = k2 * M + K;
        MatrixXd adi = ad.block(1, 1, n - 2, n - 2);
        blk.dirichlet_llt.compute(adi);
        if (blk.dirichlet_llt.info() != Eigen::Success)
            throw NumericalError("Dirichlet factorization failed");
    });

    for (std::size_t bi = 0; bi < reps.size(); ++bi) {
        const BlockKey& key = reps[bi];
        block_index_[static_cast<std::size_t>(key.iy) * g.nx() + key.ix] = static_cast<int>(bi);
    }
}

const ChannelOperators::Block& ChannelOperators::block_for(int kx, int ky) const {
    const ChannelGrid& g = *grid_;
    int ix = g.ix_of(kx), iy = g.iy_of(ky);
    int idx = block_index_[static_cast<std::size_t>(iy) * g.nx() + ix];
    if (idx < 0) throw ConfigError("no representative block for this wavenumber");
    return blocks_[idx];
}

Field ChannelOperators::curl(const Field& f) const {
    const ChannelGrid& g = *grid_;
    const MatrixXd& D = g.vertical().diff();
    Field out(grid_);
    for (const BlockKey& b : g.blocks()) {
        auto ux = f.comp(0).vec(b.ix, b.iy);
        auto uy = f.comp(1).vec(b.ix, b.iy);
        auto uz = f.comp(2).vec(b.ix, b.iy);
        out.comp(0).vec(b.ix, b.iy) = I_ * b.wy * uz - D * uy;
        out.comp(1).vec(b.ix, b.iy) = D * ux - I_ * b.wx * uz;
        out.comp(2).vec(b.ix, b.iy) = I_ * b.wx * uy - I_ * b.wy * ux;
    }
    return out;
}

ScalarField ChannelOperators::divergence(const Field& f) const {
    const ChannelGrid& g = *grid_;
    const MatrixXd& D = g.vertical().diff();
    ScalarField out(grid_);
    for (const BlockKey& b : g.blocks()) {
        out.vec(b.ix, b.iy) = I_ * b.wx * f.comp(0).vec(b.ix, b.iy) +
                              I_ * b.wy * f.comp(1).vec(b.ix, b.iy) +
                              D * f.comp(2).vec(b.ix, b.iy);
    }
    return out;
}

Field ChannelOperators::gradient(const ScalarField& s) const {
    const ChannelGrid& g = *grid_;
    const MatrixXd& D = g.vertical().diff();
    Field out(grid_);
    for (const BlockKey& b : g.blocks()) {
        auto q = s.vec(b.ix, b.iy);
        out.comp(0).vec(b.ix, b.iy) = I_ * b.wx * q;
        out.comp(1).vec(b.ix, b.iy) = I_ * b.wy * q;
        out.comp(2).vec(b.ix, b.iy) = D * q;
    }
    return out;
}

ScalarField ChannelOperators::laplacian(const ScalarField& s) const {
    const ChannelGrid& g = *grid_;
    const MatrixXd& D = g.vertical().diff();
    ScalarField out(grid_);
    for (const BlockKey& b : g.blocks()) {
        auto q = s.vec(b.ix, b.iy);
        out.vec(b.ix, b.iy) = -(b.wx * b.wx + b.wy * b.wy) * q + D * (D * q).eval();
    }
    return out;
}

double ChannelOperators::inner_product(const Field& f, const Field& g) const {
    if (f.grid_ptr().get() != g.grid_ptr().get() &&
        f.grid().config().canonical() != g.grid().config().canonical())
        throw ConfigError("inner_product: grid mismatch");
    const ChannelGrid& gr = *grid_;
    const MatrixXd& M = gr.vertical().mass();
    double acc = 0.0;
    for (const BlockKey& b : gr.blocks()) {
        for (int c = 0; c < 3; ++c) {
            auto a = f.comp(c).vec(b.ix, b.iy);
            auto bb = g.comp(c).vec(b.ix, b.iy);
            acc += (a.adjoint() * (M * bb)).value().real();
        }
    }
    return gr.area() * acc;
}

double ChannelOperators::inner_product(const ScalarField& f, const ScalarField& g) const {
    const ChannelGrid& gr = *grid_;
    const MatrixXd& M = gr.vertical().mass();
    double acc = 0.0;
    for (const BlockKey& b : gr.blocks()) {
        auto a = f.vec(b.ix, b.iy);
        auto bb = g.vec(b.ix, b.iy);
        acc += (a.adjoint() * (M * bb)).value().real();
    }
    return gr.area() * acc;
}

double ChannelOperators::form_a_beta(const Field& u, const Field& phi) const {
    return form_a_beta(u, phi, grid_->config().beta);
}

double ChannelOperators::form_a_beta(const Field& u, const Field& phi, double beta) const {
    if (beta < 0.0) throw ConfigError("form_a_beta: beta must be nonnegative");
    const ChannelGrid& g = *grid_;
    const int n = g.nz();
    Field cu = curl(u);
    Field cphi = curl(phi);
    double acc = inner_product(cu, cphi) / g.area();
    double bnd = 0.0;
    for (const BlockKey& b : g.blocks()) {
        for (int c = 0; c < 3; ++c) {
            const Complex* a = u.comp(c).block(b.ix, b.iy);
            const Complex* p = phi.comp(c).block(b.ix, b.iy);
            bnd += (std::conj(a[0]) * p[0] + std::conj(a[n - 1]) * p[n - 1]).real();
        }
    }
    return g.area() * (acc + beta * bnd);
}

double ChannelOperators::form_a_gamma(const Field& u, const Field& phi, double gamma) const {
    if (gamma < 0.0) throw ConfigError("form_a_gamma: gamma must be nonnegative");
    const ChannelGrid& g = *grid_;
    const MatrixXd& M = g.vertical().mass();
    const MatrixXd& D = g.vertical().diff();
    const int n = g.nz();
    double acc = 0.0;
    for (const BlockKey& b : g.blocks()) {
        Complex mul[3] = {I_ * b.wx, I_ * b.wy, Complex(0, 0)};
        VectorXcd gu[3][3], gp[3][3];
        for (int c = 0; c < 3; ++c) {
            auto uc = u.comp(c).vec(b.ix, b.iy);
            auto pc = phi.comp(c).vec(b.ix, b.iy);
            for (int d = 0; d < 2; ++d) {
                gu[d][c] = mul[d] * uc;
                gp[d][c] = mul[d] * pc;
            }
            gu[2][c] = D * uc;
            gp[2][c] = D * pc;
        }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                VectorXcd su = 0.5 * (gu[i][j] + gu[j][i]);
                VectorXcd sp = 0.5 * (gp[i][j] + gp[j][i]);
                acc += 2.0 * (su.adjoint() * (M * sp)).value().real();
            }
    }
    double bnd = 0.0;
    for (const BlockKey& b : g.blocks()) {
        for (int c = 0; c < 3; ++c) {
            const Complex* a = u.comp(c).block(b.ix, b.iy);
            const Complex* p = phi.comp(c).block(b.ix, b.iy);
            bnd += (std::conj(a[0]) * p[0] + std::conj(a[n - 1]) * p[n - 1]).real();
        }
    }
    return g.area() * (acc + gamma * bnd);
}

double ChannelOperators::weak_div_relative(const Field& f) const {
    ScalarField d = divergence(f);
    double nd = std::sqrt(std::max(0.0, inner_product(d, d)));
    double nf = norm(f);
    return nf > 0 ? nd / nf : nd;
}

double ChannelOperators::wall_trace_abs(const Field& f) const {
    const ChannelGrid& g = *grid_;
    const int n = g.nz();
    double worst = 0.0;
    for (const BlockKey& b : g.blocks()) {
        const Complex* uz = f.comp(2).block(b.ix, b.iy);
        worst = std::max({worst, std::abs(uz[0]), std::abs(uz[n - 1])});
    }
    return worst;
}

bool ChannelOperators::in_H(const Field& f, double tolerance) const {
    double nf = norm(f);
    if (nf == 0.0) return true;
    return weak_div_relative(f) <= tolerance && wall_trace_abs(f) <= tolerance * nf;
}

double ChannelOperators::norm_h1(const Field& f) const {
    Field cf = curl(f);
    return std::sqrt(std::max(0.0, inner_product(f, f) + inner_product(cf, cf)));
}

Eigen::Vector3d ChannelOperators::evaluate(const Field& f, double x, double y, double z) const {
    const ChannelGrid& g = *grid_;
    Eigen::RowVectorXd row = g.vertical().eval_row(z);
    Eigen::Vector3d out = Eigen::Vector3d::Zero();
    for (const BlockKey& b : g.blocks()) {
        Complex phase = std::exp(I_ * (b.wx * x + b.wy * y));
        for (int c = 0; c < 3; ++c) {
            Complex val = Complex(0, 0);
            const Complex* blk = f.comp(c).block(b.ix, b.iy);
            for (int i = 0; i < g.nz(); ++i) val += row[i] * blk[i];
            out[c] += (val * phase).real();
        }
    }
    return out;
}

double ChannelOperators::evaluate(const ScalarField& f, double x, double y, double z) const {
    const ChannelGrid& g = *grid_;
    Eigen::RowVectorXd row = g.vertical().eval_row(z);
    double out = 0.0;
    for (const BlockKey& b : g.blocks()) {
        Complex phase = std::exp(I_ * (b.wx * x + b.wy * y));
        Complex val = Complex(0, 0);
        const Complex* blk = f.block(b.ix, b.iy);
        for (int i = 0; i < g.nz(); ++i) val += row[i] * blk[i];
        out += (val * phase).real();
    }
    return out;
}

MatrixXcd ChannelOperators::curl_matrix(const BlockKey& key) const {
    const ChannelGrid& g = *grid_;
    const int n = g.nz();
    const MatrixXd& D = g.vertical().diff();
    MatrixXcd C = MatrixXcd::Zero(3 * n, 3 * n);
    MatrixXcd In = MatrixXcd::Identity(n, n);
    C.block(0, n, n, n) = -D;
    C.block(0, 2 * n, n, n) = I_ * key.wy * In;
    C.block(n, 0, n, n) = D;
    C.block(n, 2 * n, n, n) = -I_ * key.wx * In;
    C.block(2 * n, 0, n, n) = -I_ * key.wy * In;
    C.block(2 * n, n, n, n) = I_ * key.wx * In;
    return C;
}

MatrixXcd ChannelOperators::mass_matrix3() const {
    const ChannelGrid& g = *grid_;
    const int n = g.nz();
    const MatrixXd& M = g.vertical().mass();
    MatrixXcd out = MatrixXcd::Zero(3 * n, 3 * n);
    for (int c = 0; c < 3; ++c) out.block(c * n, c * n, n, n) = M;
    return out;
}

MatrixXcd ChannelOperators::form_matrix_vsb(const BlockKey& key, double beta) const {
    if (beta < 0.0) throw ConfigError("form_matrix_vsb: beta must be nonnegative");
    const ChannelGrid& g = *grid_;
    const int n = g.nz();
    MatrixXcd C = curl_matrix(key);
    MatrixXcd A = C.adjoint() * mass_matrix3() * C;
    for (int c = 0; c < 3; ++c) {
        A(c * n, c * n) += beta;
        A(c * n + n - 1, c * n + n - 1) += beta;
    }
    A = 0.5 * (A + A.adjoint()).eval();
    return A;
}

MatrixXcd ChannelOperators::form_matrix_nsb(const BlockKey& key, double gamma) const {
    if (gamma < 0.0) throw ConfigError("form_matrix_nsb: gamma must be nonnegative");
    const ChannelGrid& g = *grid_;
    const int n = g.nz();
    const MatrixXd& M = g.vertical().mass();
    const MatrixXd& D = g.vertical().diff();
    MatrixXcd In = MatrixXcd::Identity(n, n);
    // Gradient rows: partial_i applied to component j as 3n x 3n maps.
    auto deriv = [&](int i) -> MatrixXcd {
        if (i == 0) return (I_ * key.wx) * In;
        if (i == 1) return (I_ * key.wy) * In;
        return D.cast<Complex>();
    };
    MatrixXcd A = MatrixXcd::Zero(3 * n, 3 * n);
    for (int i = 0; i < 3; ++i) {
        MatrixXcd Pi = deriv(i);
        for (int j = 0; j < 3; ++j) {
            MatrixXcd Pj = deriv(j);
            // S_ij(u) = (Pi u_j + Pj u_i)/2 as a map from the stacked vector.
            MatrixXcd Sij = MatrixXcd::Zero(n, 3 * n);
            Sij.middleCols(j * n, n) += 0.5 * Pi;
            Sij.middleCols(i * n, n) += 0.5 * Pj;
            A += 2.0 * Sij.adjoint() * M.cast<Complex>() * Sij;
        }
    }
    for (int c = 0; c < 3; ++c) {
        A(c * n, c * n) += gamma;
        A(c * n + n - 1, c * n + n - 1) += gamma;
    }
    A = 0.5 * (A + A.adjoint()).eval();
    return A;
}

void ChannelOperators::mirror_conjugates(Field& f) const {
    const ChannelGrid& g = *grid_;
    const int n = g.nz();
    for (const Block& blk : blocks_) {
        const BlockKey& key = blk.key;
        if (key.kx == 0 && key.ky == 0) continue;
        int jx = (g.nx() - key.ix) % g.nx();
        int jy = (g.ny() - key.iy) % g.ny();
        for (int c = 0; c < 3; ++c) {
            const Complex* src = f.comp(c).block(key.ix, key.iy);
            Complex* dst = f.comp(c).block(jx, jy);
            for (int i = 0; i < n; ++i) dst[i] = std::conj(src[i]);
        }
    }
}

}  // namespace alphaflow
