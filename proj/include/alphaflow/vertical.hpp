#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>

namespace alphaflow {

// Wall-normal discretization on [0,1]: a conforming Galerkin basis of nodal
// Lagrange polynomials on Chebyshev-clustered (Gauss-Lobatto) points.
// Derivatives of basis functions stay inside the polynomial space, so the
// discrete curl/div/grad below are exact, and all bilinear forms are
// assembled with quadrature that is exact for the integrands that arise
// (up to cubic products of basis functions).
class VerticalBasis {
  public:
    explicit VerticalBasis(int n);

    int n() const { return n_; }
    const Eigen::VectorXd& nodes() const { return nodes_; }

    // Exact differentiation at the nodes (degree n-1 polynomials).
    const Eigen::MatrixXd& diff() const { return diff_; }

    // Exact mass matrix (SPD) and stiffness K = D^T M D.
    const Eigen::MatrixXd& mass() const { return mass_; }
    const Eigen::MatrixXd& stiffness() const { return stiffness_; }
    const Eigen::LLT<Eigen::MatrixXd>& mass_llt() const { return mass_llt_; }

    // Gauss-Legendre quadrature with enough points for cubic products.
    const Eigen::VectorXd& quad_nodes() const { return quad_nodes_; }
    const Eigen::VectorXd& quad_weights() const { return quad_weights_; }
    // Nodal values -> values at quadrature points.
    const Eigen::MatrixXd& to_quad() const { return to_quad_; }
    // Quadrature values -> load vector entries l_i = sum_q w_q f(z_q) phi_i(z_q).
    const Eigen::MatrixXd& quad_to_load() const { return quad_to_load_; }

    // Evaluation row of the Lagrange basis at an arbitrary z in [0,1].
    Eigen::RowVectorXd eval_row(double z) const;

  private:
    int n_;
    Eigen::VectorXd nodes_;
    Eigen::VectorXd bary_;  // barycentric weights
    Eigen::MatrixXd diff_, mass_, stiffness_, to_quad_, quad_to_load_;
    Eigen::VectorXd quad_nodes_, quad_weights_;
    Eigen::LLT<Eigen::MatrixXd> mass_llt_;
};

// Gauss-Legendre rule on [0,1] (Newton on Legendre polynomials).
void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

}  // namespace alphaflow
