#pragma once

#include <complex>
#include <filesystem>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "alphaflow/config.hpp"
#include "alphaflow/vertical.hpp"

namespace alphaflow {

using Complex = std::complex<double>;

// One horizontal wavenumber pair. ix/iy are FFT array indices, kx/ky the
// signed integer wavenumbers, wx/wy the physical wavenumbers 2*pi*k/L.
struct BlockKey {
    int ix, iy;
    int kx, ky;
    double wx, wy;
};

// Shared geometry: wavenumber bookkeeping, dealias mask, vertical basis and
// FFT plans. Immutable after construction; safe to share across threads.
class ChannelGrid {
  public:
    explicit ChannelGrid(const ChannelConfig& cfg);
    ~ChannelGrid();
    ChannelGrid(const ChannelGrid&) = delete;
    ChannelGrid& operator=(const ChannelGrid&) = delete;

    const ChannelConfig& config() const { return cfg_; }
    const VerticalBasis& vertical() const { return *vert_; }
    int nx() const { return cfg_.Nx; }
    int ny() const { return cfg_.Ny; }
    int nz() const { return cfg_.Nz; }
    double lx() const { return cfg_.Lx; }
    double ly() const { return cfg_.Ly; }
    double area() const { return cfg_.Lx * cfg_.Ly; }

    int kx_of(int ix) const { return ix <= cfg_.Nx / 2 - 1 ? ix : ix - cfg_.Nx; }
    int ky_of(int iy) const { return iy <= cfg_.Ny / 2 - 1 ? iy : iy - cfg_.Ny; }
    int ix_of(int kx) const { return kx >= 0 ? kx : kx + cfg_.Nx; }
    int iy_of(int ky) const { return ky >= 0 ? ky : ky + cfg_.Ny; }

    int kx_max() const { return kx_max_; }
    int ky_max() const { return ky_max_; }
    bool active(int ix, int iy) const {
        return std::abs(kx_of(ix)) <= kx_max_ && std::abs(ky_of(iy)) <= ky_max_;
    }

    // All active blocks; representatives cover one of each conjugate pair
    // (ky > 0, or ky == 0 and kx > 0) plus the k = 0 block first.
    const std::vector<BlockKey>& blocks() const { return blocks_; }
    const std::vector<BlockKey>& representatives() const { return reps_; }

    // Horizontal complex FFTs of one Nx*Ny slab (row-major iy*Nx+ix).
    void fft_forward(Complex* slab) const;   // physical -> coefficients (normalized by 1/(NxNy))
    void fft_backward(Complex* slab) const;  // coefficients -> physical values

    struct Impl;

  private:
    ChannelConfig cfg_;
    std::shared_ptr<VerticalBasis> vert_;
    int kx_max_, ky_max_;
    std::vector<BlockKey> blocks_, reps_;
    std::unique_ptr<Impl> impl_;
};

// Complex Fourier coefficients per horizontal wavenumber, each a coefficient
// vector over the Nz wall-normal basis functions. Hermitian symmetry keeps
// the physical field real.
class ScalarField {
  public:
    explicit ScalarField(std::shared_ptr<const ChannelGrid> grid);

    const ChannelGrid& grid() const { return *grid_; }
    std::shared_ptr<const ChannelGrid> grid_ptr() const { return grid_; }

    Complex* block(int ix, int iy) { return data_.data() + offset(ix, iy); }
    const Complex* block(int ix, int iy) const { return data_.data() + offset(ix, iy); }
    Eigen::Map<Eigen::VectorXcd> vec(int ix, int iy) {
        return Eigen::Map<Eigen::VectorXcd>(block(ix, iy), grid_->nz());
    }
    Eigen::Map<const Eigen::VectorXcd> vec(int ix, int iy) const {
        return Eigen::Map<const Eigen::VectorXcd>(block(ix, iy), grid_->nz());
    }

    void set_zero();
    void enforce_hermitian();
    double hermitian_defect() const;
    void apply_mask();  // zero all inactive wavenumbers

    std::vector<Complex>& raw() { return data_; }
    const std::vector<Complex>& raw() const { return data_; }

  private:
    std::size_t offset(int ix, int iy) const {
        return (static_cast<std::size_t>(iy) * grid_->nx() + ix) * grid_->nz();
    }
    std::shared_ptr<const ChannelGrid> grid_;
    std::vector<Complex> data_;
};

// Physical-space samples on the Nx x Ny x Nz collocation grid, or on the
// Nx x Ny x Nq quadrature grid used for nonlinear products.
struct PhysicalScalar {
    int nx, ny, nlev;
    std::vector<double> data;  // [lev][iy][ix]
    double& at(int lev, int iy, int ix) {
        return data[(static_cast<std::size_t>(lev) * ny + iy) * nx + ix];
    }
    double at(int lev, int iy, int ix) const {
        return data[(static_cast<std::size_t>(lev) * ny + iy) * nx + ix];
    }
};

// Three-component divergence-constrained vector field.
class Field {
  public:
    explicit Field(std::shared_ptr<const ChannelGrid> grid);

    const ChannelGrid& grid() const { return *grid_; }
    std::shared_ptr<const ChannelGrid> grid_ptr() const { return grid_; }

    ScalarField& comp(int c) { return comps_[c]; }
    const ScalarField& comp(int c) const { return comps_[c]; }

    void set_zero();
    void enforce_hermitian();
    double hermitian_defect() const;
    void apply_mask();

    Field& operator+=(const Field& other);
    Field& operator-=(const Field& other);
    Field& operator*=(double s);
    friend Field operator+(Field a, const Field& b) { return a += b; }
    friend Field operator-(Field a, const Field& b) { return a -= b; }
    friend Field operator*(double s, Field a) { return a *= s; }

  private:
    std::shared_ptr<const ChannelGrid> grid_;
    std::vector<ScalarField> comps_;
};

// Transforms between spectral coefficients and physical nodal samples.
// Round trip is the identity to 1e-12 relative; the 2/3 mask is applied on
// the way to spectral space when dealiasing is enabled.
PhysicalScalar to_physical(const ScalarField& f);
ScalarField to_spectral(const PhysicalScalar& p, std::shared_ptr<const ChannelGrid> grid);
std::vector<PhysicalScalar> to_physical(const Field& f);
Field to_spectral_field(const std::vector<PhysicalScalar>& p, std::shared_ptr<const ChannelGrid> grid);

// Seeded random fields (Hermitian, masked, optionally smoothed in k and z).
ScalarField random_scalar(std::shared_ptr<const ChannelGrid> grid, unsigned long long seed,
                          bool smooth = true);
Field random_field(std::shared_ptr<const ChannelGrid> grid, unsigned long long seed,
                   bool smooth = true);

// Versioned binary snapshot container (magic "AFLD").
void save_field(const Field& f, const std::filesystem::path& path);
Field load_field(const std::filesystem::path& path, std::shared_ptr<const ChannelGrid> grid);

}  // namespace alphaflow
