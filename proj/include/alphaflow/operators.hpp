#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "alphaflow/field.hpp"

namespace alphaflow {

// Differential operators, inner products and bilinear forms on the channel,
// plus the per-wavenumber bases of the discretely divergence-free tangent
// subspace (the discrete H). Immutable after construction.
class ChannelOperators {
  public:
    explicit ChannelOperators(std::shared_ptr<const ChannelGrid> grid);

    const ChannelGrid& grid() const { return *grid_; }
    std::shared_ptr<const ChannelGrid> grid_ptr() const { return grid_; }

    // Exact spectral differentiation horizontally; exact polynomial
    // differentiation in the wall-normal direction.
    Field curl(const Field& f) const;
    ScalarField divergence(const Field& f) const;
    Field gradient(const ScalarField& s) const;
    ScalarField laplacian(const ScalarField& s) const;

    double inner_product(const Field& f, const Field& g) const;
    double norm(const Field& f) const { return std::sqrt(std::max(0.0, inner_product(f, f))); }
    double inner_product(const ScalarField& f, const ScalarField& g) const;

    // a_beta(u,phi) = int_dOmega beta u.phi + int_Omega (curl u).(curl phi)
    double form_a_beta(const Field& u, const Field& phi) const;
    double form_a_beta(const Field& u, const Field& phi, double beta) const;
    // a_gamma(u,phi) = int_dOmega gamma u.phi + 2 int_Omega S(u):S(phi)
    double form_a_gamma(const Field& u, const Field& phi, double gamma) const;

    // || div f ||_{L2} / || f || and the largest |f_z| wall value.
    double weak_div_relative(const Field& f) const;
    double wall_trace_abs(const Field& f) const;
    bool in_H(const Field& f, double tolerance) const;

    // H1-type norm used for relative tolerances: (||f||^2 + ||curl f||^2)^(1/2).
    double norm_h1(const Field& f) const;

    // Pointwise evaluation by direct summation (diagnostics and oracles).
    Eigen::Vector3d evaluate(const Field& f, double x, double y, double z) const;
    double evaluate(const ScalarField& f, double x, double y, double z) const;

    struct Block {
        BlockKey key;
        int dim_h;              // 2n-2 for k != 0, 2n at k = 0
        Eigen::MatrixXcd basis; // columns span the discrete H block, unit mass norm
        Eigen::MatrixXcd mass_basis;  // Mhat * basis
        Eigen::LLT<Eigen::MatrixXcd> reduced_mass_llt;
        Eigen::LLT<Eigen::MatrixXd> dirichlet_llt;  // wx^2+wy^2 weighted Poisson, interior
    };
    const std::vector<Block>& rep_blocks() const { return blocks_; }
    const Block& block_for(int kx, int ky) const;

    // Dense 3n x 3n block matrices for form assembly (no Lx*Ly factor).
    Eigen::MatrixXcd curl_matrix(const BlockKey& key) const;
    Eigen::MatrixXcd mass_matrix3() const;
    Eigen::MatrixXcd form_matrix_vsb(const BlockKey& key, double beta) const;
    Eigen::MatrixXcd form_matrix_nsb(const BlockKey& key, double gamma) const;

    // Copies the conjugate of every representative block of src into its
    // partner block (Hermitian completion after per-representative work).
    void mirror_conjugates(Field& f) const;

  private:
    std::shared_ptr<const ChannelGrid> grid_;
    std::vector<Block> blocks_;
    std::vector<int> block_index_;  // per (ix,iy): index into blocks_ or -1
    void build_blocks();
};

}  // namespace alphaflow
