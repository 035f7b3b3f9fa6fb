#pragma once

#include <filesystem>
#include <optional>

#include "alphaflow/hodge.hpp"
#include "alphaflow/operators.hpp"

namespace alphaflow {

enum class FormKind { VSB, NSB };

// Tangential boundary data on each wall (b.n = 0 by construction),
// represented by horizontal Fourier coefficients. wall 0 is z=0, wall 1 is z=1.
class BoundaryData {
  public:
    explicit BoundaryData(std::shared_ptr<const ChannelGrid> grid);
    Complex& at(int wall, int comp, int ix, int iy) {
        return data_[idx(wall, comp, ix, iy)];
    }
    Complex at(int wall, int comp, int ix, int iy) const {
        return data_[idx(wall, comp, ix, iy)];
    }
    const ChannelGrid& grid() const { return *grid_; }
    void enforce_hermitian();
    void set_zero() { std::fill(data_.begin(), data_.end(), Complex(0, 0)); }

  private:
    std::size_t idx(int wall, int comp, int ix, int iy) const {
        return ((static_cast<std::size_t>(wall) * 2 + comp) * grid_->ny() + iy) * grid_->nx() + ix;
    }
    std::shared_ptr<const ChannelGrid> grid_;
    std::vector<Complex> data_;
};

// Tangential trace of n x curl(u) on both walls (natural data of the
// vorticity-slip condition). Used for manufactured solutions and the
// contraction map.
BoundaryData vorticity_slip_trace(const ChannelOperators& ops, const Field& u);
// Tangential trace beta*u on both walls.
BoundaryData tangential_trace(const ChannelOperators& ops, const Field& u, double scale);
BoundaryData boundary_sum(const BoundaryData& a, const BoundaryData& b);

struct GlobalMode {
    double mu;  // eigenvalue of A = I + nu P(-Delta), >= 1
    int block;  // index into representative blocks
    int local;  // eigenpair index within the block
    int part;   // 0: real combination (or k=0 mode), 1: imaginary combination
};

// Eigenpairs {(mu_j, e_j)} of the Stokes operator, blocked by wavenumber,
// with a deterministic global ordering and mass-orthonormal mode fields.
class StokesEigenbasis {
  public:
    struct BlockEigen {
        BlockKey key;
        Eigen::VectorXd mu;
        Eigen::MatrixXcd modes;  // 3n x m_k, |e|_{L2} = 1 including the Lx*Ly factor
    };

    static StokesEigenbasis compute(std::shared_ptr<const ChannelOperators> ops, FormKind kind,
                                    double boundary_coef, int count = 0);
    // Disk cache keyed by the content hash of the configuration.
    static StokesEigenbasis get_cached(std::shared_ptr<const ChannelOperators> ops, FormKind kind,
                                       double boundary_coef, int count = 0,
                                       const std::filesystem::path& dir = {});

    const ChannelOperators& ops() const { return *ops_; }
    std::shared_ptr<const ChannelOperators> ops_ptr() const { return ops_; }
    FormKind kind() const { return kind_; }
    double boundary_coef() const { return coef_; }

    int size() const { return static_cast<int>(order_.size()); }
    double mu(int j) const { return order_[j].mu; }
    const GlobalMode& mode(int j) const { return order_[j]; }
    const std::vector<BlockEigen>& block_eigens() const { return blocks_; }

    double orthonormality_defect() const { return ortho_defect_; }
    double max_eigen_residual() const { return max_residual_; }

    Field field_of_mode(int j) const;
    // Coefficients of u in the first m global modes (m = 0: all).
    Eigen::VectorXd coefficients(const Field& u, int m = 0) const;
    // Relative norm of the component of u outside the first m modes.
    double span_residual(const Field& u, const Eigen::VectorXd& coeffs) const;
    Field field_from_coeffs(const Eigen::VectorXd& coeffs) const;
    // Adjoint against a load representation l = Mhat * f per block.
    Eigen::VectorXd coefficients_from_load(const Field& load, int m = 0) const;

    std::string cache_hash() const;
    void save(const std::filesystem::path& path) const;
    static std::optional<StokesEigenbasis> load(const std::filesystem::path& path,
                                                std::shared_ptr<const ChannelOperators> ops,
                                                FormKind kind, double boundary_coef, int count);

  private:
    StokesEigenbasis() = default;
    void build_order(int count);
    std::shared_ptr<const ChannelOperators> ops_;
    FormKind kind_ = FormKind::VSB;
    double coef_ = 0.0;
    std::vector<BlockEigen> blocks_;
    std::vector<GlobalMode> order_;
    double ortho_defect_ = 0.0;
    double max_residual_ = 0.0;
};

// Fractional powers A^s on the computed span. A warning flag carries the
// residual when a significant part of u lies outside it.
struct FractionalResult {
    Field field;
    double span_residual;
    bool truncated;
};
FractionalResult apply_fractional(const StokesEigenbasis& basis, double s, const Field& u);
double norm_s(const StokesEigenbasis& basis, double s, const Field& u);

// lambda u - nu Delta u + grad p = f, div u = 0, u.n = 0, n x curl u = b.
struct StokesSolveResult {
    Field u;
    double weak_residual;
};
StokesSolveResult solve_stokes(const ChannelOperators& ops, double lambda, const Field& f,
                               const BoundaryData& b);

// u - nu Delta u + grad p = f with n x curl u = beta u + b, solved by the
// large-lambda contraction map plus correction.
struct RobinSolveResult {
    Field u;
    double weak_residual;
    std::vector<double> contraction_factors;  // measured factor per lambda tried
    std::vector<double> lambdas;
    int iterations;
};
RobinSolveResult solve_stokes_robin(const ChannelOperators& ops, const Field& f,
                                    const BoundaryData& b);

// Measured contraction factor of the lambda-shifted boundary map after a few
// settling iterations (diagnostic for the lambda escalation schedule).
double robin_contraction_probe(const ChannelOperators& ops, const BoundaryData& b, double lambda,
                               int iters = 8);

}  // namespace alphaflow
