#include "alphaflow/vertical.hpp"

#include <cmath>

#include "alphaflow/errors.hpp"

namespace alphaflow {

void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
    nodes.resize(n);
    weights.resize(n);
    const double pi = std::acos(-1.0);
    for (int i = 0; i < n; ++i) {
        // Initial guess on [-1,1], refined by Newton on P_n.
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[n - 1 - i] = 0.5 * (x + 1.0);
        weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * pp * pp);
    }
}

VerticalBasis::VerticalBasis(int n) : n_(n) {
    if (n < 3) throw ConfigError("Nz must be >= 3");
    const double pi = std::acos(-1.0);

    // Chebyshev-Gauss-Lobatto nodes mapped to [0,1], ascending, endpoints exact.
    nodes_.resize(n);
    for (int i = 0; i < n; ++i) nodes_[i] = 0.5 * (1.0 - std::cos(pi * i / (n - 1)));
    nodes_[0] = 0.0;
    nodes_[n - 1] = 1.0;

    // Barycentric weights for Chebyshev-Lobatto points.
    bary_.resize(n);
    for (int i = 0; i < n; ++i) {
        double w = (i % 2 == 0) ? 1.0 : -1.0;
        if (i == 0 || i == n - 1) w *= 0.5;
        bary_[i] = w;
    }

    // Differentiation matrix with the negative-sum trick on the diagonal.
    diff_.resize(n, n);
    for (int i = 0; i < n; ++i) {
        double rowsum = 0.0;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            double d = (bary_[j] / bary_[i]) / (nodes_[i] - nodes_[j]);
            diff_(i, j) = d;
            rowsum += d;
        }
        diff_(i, i) = -rowsum;
    }

    // Quadrature exact through cubic products of basis polynomials.
    int ng = (3 * n) / 2 + 2;
    gauss_legendre(ng, quad_nodes_, quad_weights_);

    to_quad_.resize(ng, n);
    for (int q = 0; q < ng; ++q) to_quad_.row(q) = eval_row(quad_nodes_[q]);
    quad_to_load_ = to_quad_.transpose() * quad_weights_.asDiagonal();

    mass_ = quad_to_load_ * to_quad_;
    mass_ = 0.5 * (mass_ + mass_.transpose()).eval();
    stiffness_ = diff_.transpose() * mass_ * diff_;
    stiffness_ = 0.5 * (stiffness_ + stiffness_.transpose()).eval();
    mass_llt_.compute(mass_);
    if (mass_llt_.info() != Eigen::Success) throw NumericalError("vertical mass factorization failed");
}

Eigen::RowVectorXd VerticalBasis::eval_row(double z) const {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n_);
    // Exact node hit: delta row.
    for (int i = 0; i < n_; ++i) {
        if (z == nodes_[i]) {
            row[i] = 1.0;
            return row;
        }
    }
    double denom = 0.0;
    for (int i = 0; i < n_; ++i) {
        double t = bary_[i] / (z - nodes_[i]);
        row[i] = t;
        denom += t;
    }
    row /= denom;
    return row;
}

}  // namespace alphaflow
