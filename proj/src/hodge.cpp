#include "alphaflow/hodge.hpp"

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

// Per-block gradient-part solve: phi on interior nodes from the Galerkin
// system (G q, G phi) = (G q, u), then gg = G phi (walls pinned to zero).
void block_project_gg(const ChannelOperators& ops, const ChannelOperators::Block& blk,
                      const Field& u, Field& gg) {
    const ChannelGrid& g = ops.grid();
    const VerticalBasis& vb = g.vertical();
    const int n = g.nz();
    const MatrixXd& M = vb.mass();
    const MatrixXd& D = vb.diff();
    const BlockKey& key = blk.key;

    VectorXcd tx = M * u.comp(0).vec(key.ix, key.iy);
    VectorXcd ty = M * u.comp(1).vec(key.ix, key.iy);
    VectorXcd tz = M * u.comp(2).vec(key.ix, key.iy);
    VectorXcd rhs_full = -I_ * key.wx * tx - I_ * key.wy * ty + D.transpose() * tz;
    // Interior rows only (Dirichlet walls).
    Eigen::MatrixXd rhs(n - 2, 2);
    for (int i = 0; i < n - 2; ++i) {
        rhs(i, 0) = rhs_full[i + 1].real();
        rhs(i, 1) = rhs_full[i + 1].imag();
    }
    Eigen::MatrixXd sol = blk.dirichlet_llt.solve(rhs);
    VectorXcd phi = VectorXcd::Zero(n);
    for (int i = 0; i < n - 2; ++i) phi[i + 1] = Complex(sol(i, 0), sol(i, 1));

    gg.comp(0).vec(key.ix, key.iy) = I_ * key.wx * phi;
    gg.comp(1).vec(key.ix, key.iy) = I_ * key.wy * phi;
    gg.comp(2).vec(key.ix, key.iy) = D * phi;
}

// Per-block orthogonal projection onto the discrete H block.
void block_project_h(const ChannelOperators::Block& blk, const Field& u, Field& h, int n) {
    const BlockKey& key = blk.key;
    VectorXcd stacked(3 * n);
    for (int c = 0; c < 3; ++c) stacked.segment(c * n, n) = u.comp(c).vec(key.ix, key.iy);
    VectorXcd p = blk.mass_basis.adjoint() * stacked;
    VectorXcd coef = blk.reduced_mass_llt.solve(p);
    VectorXcd proj = blk.basis * coef;
    for (int c = 0; c < 3; ++c) h.comp(c).vec(key.ix, key.iy) = proj.segment(c * n, n);
}

}  // namespace

Field project_GG(const ChannelOperators& ops, const Field& u) {
    Field gg(ops.grid_ptr());
    const auto& blocks = ops.rep_blocks();
    parallel_for(blocks.size(), [&](std::size_t i) { block_project_gg(ops, blocks[i], u, gg); });
    ops.mirror_conjugates(gg);
    return gg;
}

Field leray_project(const ChannelOperators& ops, const Field& u) {
    Field h(ops.grid_ptr());
    const int n = ops.grid().nz();
    const auto& blocks = ops.rep_blocks();
    parallel_for(blocks.size(), [&](std::size_t i) { block_project_h(blocks[i], u, h, n); });
    ops.mirror_conjugates(h);
    return h;
}

Field project_to_H(const ChannelOperators& ops, const Field& u) {
    double div_rel = ops.weak_div_relative(u);
    if (div_rel > 1e-8)
        throw ConfigError("project_to_H: input is not divergence free (relative ||div|| = " +
                          format_double(div_rel) + ")");
    return leray_project(ops, u);
}

HarmonicBasis harmonic_bases(const ChannelOperators& ops) {
    const ChannelGrid& g = ops.grid();
    double s = 1.0 / std::sqrt(g.area());
    HarmonicBasis basis;
    for (int c = 0; c < 2; ++c) {
        Field e(ops.grid_ptr());
        for (int i = 0; i < g.nz(); ++i) e.comp(c).block(g.ix_of(0), g.iy_of(0))[i] = s;
        basis.hh_basis.push_back(std::move(e));
    }
    Field ez(ops.grid_ptr());
    for (int i = 0; i < g.nz(); ++i) ez.comp(2).block(g.ix_of(0), g.iy_of(0))[i] = s;
    basis.hg_basis.push_back(std::move(ez));
    return basis;
}

HarmonicDims harmonic_dims_by_rank(const ChannelOperators& ops) {
    const ChannelGrid& g = ops.grid();
    const VerticalBasis& vb = g.vertical();
    const int n = g.nz();

    // Harmonic knots at k = 0: tangent fields (ux, uy, 0) with vanishing
    // curl, i.e. the kernel of blkdiag(D, D).
    MatrixXd curl0 = MatrixXd::Zero(2 * n, 2 * n);
    curl0.block(0, 0, n, n) = vb.diff();
    curl0.block(n, n, n, n) = vb.diff();
    Eigen::JacobiSVD<MatrixXd> svd_hh(curl0);
    double thresh = 1e-8 * svd_hh.singularValues().maxCoeff();
    int rank_hh = 0;
    for (int i = 0; i < svd_hh.singularValues().size(); ++i)
        if (svd_hh.singularValues()[i] > thresh) ++rank_hh;
    int dim_hh = 2 * n - rank_hh;

    // Harmonic scalars at k = 0, wall values free, tested against interior
    // functions: kernel of the interior stiffness rows is {1, z}; taking
    // gradients kills the constants.
    MatrixXd k_int = vb.stiffness().middleRows(1, n - 2);
    Eigen::JacobiSVD<MatrixXd> svd_hg(k_int);
    double thresh2 = 1e-8 * svd_hg.singularValues().maxCoeff();
    int rank_hg = 0;
    for (int i = 0; i < svd_hg.singularValues().size(); ++i)
        if (svd_hg.singularValues()[i] > thresh2) ++rank_hg;
    int kernel = n - rank_hg;
    return HarmonicDims{dim_hh, kernel - 1};
}

HodgeComponents decompose(const ChannelOperators& ops, const Field& u) {
    const ChannelGrid& g = ops.grid();
    const int n = g.nz();
    const MatrixXd& M = g.vertical().mass();

    Field gg = project_GG(ops, u);
    Field w = u;
    w -= gg;

    Field hh(ops.grid_ptr()), hg(ops.grid_ptr()), fh(ops.grid_ptr()), cg(ops.grid_ptr());

    // Finite-dimensional harmonic parts live in the k = 0 block.
    {
        int ix0 = g.ix_of(0), iy0 = g.iy_of(0);
        VectorXd ones = VectorXd::Ones(n);
        double mass_total = ones.dot(M * ones);  // = 1
        for (int c = 0; c < 3; ++c) {
            auto wc = w.comp(c).vec(ix0, iy0);
            Complex mean = (ones.transpose() * (M * wc)).value() / mass_total;
            Field& target = (c == 2) ? hg : hh;
            for (int i = 0; i < n; ++i) target.comp(c).block(ix0, iy0)[i] = mean;
        }
    }
    Field w2 = w;
    w2 -= hh;
    w2 -= hg;

    fh = leray_project(ops, w2);
    cg = w2;
    cg -= fh;

    double nu_in = ops.norm(u);
    Field recon = gg;
    recon += hg;
    recon += hh;
    recon += fh;
    recon += cg;
    recon -= u;
    double res = ops.norm(recon);

    HodgeComponents out{std::move(fh), std::move(hh), std::move(cg), std::move(hg), std::move(gg),
                        nu_in > 0 ? res / nu_in : res};
    return out;
}

}  // namespace alphaflow
