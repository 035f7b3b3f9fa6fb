#include "alphaflow/field.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <random>

#include "alphaflow/constants.hpp"
#include "alphaflow/errors.hpp"
#include "alphaflow/io_util.hpp"

namespace alphaflow {

namespace {
std::mutex& fftw_plan_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

struct ChannelGrid::Impl {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    std::vector<Complex> scratch;
    ~Impl() {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
    }
};

ChannelGrid::ChannelGrid(const ChannelConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    vert_ = std::make_shared<VerticalBasis>(cfg_.Nz);

    if (cfg_.dealias) {
        kx_max_ = (cfg_.Nx - 1) / 3;
        ky_max_ = (cfg_.Ny - 1) / 3;
    } else {
        kx_max_ = cfg_.Nx / 2 - 1;
        ky_max_ = cfg_.Ny / 2 - 1;
    }

    for (int iy = 0; iy < cfg_.Ny; ++iy) {
        for (int ix = 0; ix < cfg_.Nx; ++ix) {
            if (!active(ix, iy)) continue;
            BlockKey key;
            key.ix = ix;
            key.iy = iy;
            key.kx = kx_of(ix);
            key.ky = ky_of(iy);
            key.wx = 2.0 * std::acos(-1.0) * key.kx / cfg_.Lx;
            key.wy = 2.0 * std::acos(-1.0) * key.ky / cfg_.Ly;
            blocks_.push_back(key);
            if (key.ky > 0 || (key.ky == 0 && key.kx >= 0)) reps_.push_back(key);
        }
    }
    // k = 0 first, then ordered by (kx, ky) for deterministic reductions.
    auto lex = [](const BlockKey& a, const BlockKey& b) {
        if ((a.kx == 0 && a.ky == 0) != (b.kx == 0 && b.ky == 0)) return a.kx == 0 && a.ky == 0;
        if (a.kx != b.kx) return a.kx < b.kx;
        return a.ky < b.ky;
    };
    std::sort(blocks_.begin(), blocks_.end(), lex);
    std::sort(reps_.begin(), reps_.end(), lex);

    impl_ = std::make_unique<Impl>();
    impl_->scratch.resize(static_cast<std::size_t>(cfg_.Nx) * cfg_.Ny);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        auto* ptr = reinterpret_cast<fftw_complex*>(impl_->scratch.data());
        impl_->fwd = fftw_plan_dft_2d(cfg_.Ny, cfg_.Nx, ptr, ptr, FFTW_FORWARD, FFTW_ESTIMATE);
        impl_->bwd = fftw_plan_dft_2d(cfg_.Ny, cfg_.Nx, ptr, ptr, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
}

ChannelGrid::~ChannelGrid() = default;

void ChannelGrid::fft_forward(Complex* slab) const {
    auto* ptr = reinterpret_cast<fftw_complex*>(slab);
    fftw_execute_dft(impl_->fwd, ptr, ptr);
    double scale = 1.0 / (static_cast<double>(cfg_.Nx) * cfg_.Ny);
    std::size_t n = static_cast<std::size_t>(cfg_.Nx) * cfg_.Ny;
    for (std::size_t i = 0; i < n; ++i) slab[i] *= scale;
}

void ChannelGrid::fft_backward(Complex* slab) const {
    auto* ptr = reinterpret_cast<fftw_complex*>(slab);
    fftw_execute_dft(impl_->bwd, ptr, ptr);
}

ScalarField::ScalarField(std::shared_ptr<const ChannelGrid> grid) : grid_(std::move(grid)) {
    data_.assign(static_cast<std::size_t>(grid_->nx()) * grid_->ny() * grid_->nz(), Complex(0, 0));
}

void ScalarField::set_zero() { std::fill(data_.begin(), data_.end(), Complex(0, 0)); }

void ScalarField::enforce_hermitian() {
    const int nx = grid_->nx(), ny = grid_->ny(), nz = grid_->nz();
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            int jx = (nx - ix) % nx;
            int jy = (ny - iy) % ny;
            if (std::make_pair(iy, ix) > std::make_pair(jy, jx)) continue;
            Complex* a = block(ix, iy);
            Complex* b = block(jx, jy);
            if (a == b) {
                for (int i = 0; i < nz; ++i) a[i] = Complex(a[i].real(), 0.0);
            } else {
                for (int i = 0; i < nz; ++i) {
                    Complex avg = 0.5 * (a[i] + std::conj(b[i]));
                    a[i] = avg;
                    b[i] = std::conj(avg);
                }
            }
        }
    }
}

double ScalarField::hermitian_defect() const {
    const int nx = grid_->nx(), ny = grid_->ny(), nz = grid_->nz();
    double worst = 0.0, scale = 0.0;
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            int jx = (nx - ix) % nx;
            int jy = (ny - iy) % ny;
            const Complex* a = block(ix, iy);
            const Complex* b = block(jx, jy);
            for (int i = 0; i < nz; ++i) {
                worst = std::max(worst, std::abs(a[i] - std::conj(b[i])));
                scale = std::max(scale, std::abs(a[i]));
            }
        }
    }
    return scale > 0 ? worst / scale : worst;
}

void ScalarField::apply_mask() {
    const int nx = grid_->nx(), ny = grid_->ny(), nz = grid_->nz();
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix)
            if (!grid_->active(ix, iy)) {
                Complex* a = block(ix, iy);
                std::fill(a, a + nz, Complex(0, 0));
            }
}

Field::Field(std::shared_ptr<const ChannelGrid> grid) : grid_(std::move(grid)) {
    comps_.reserve(3);
    for (int c = 0; c < 3; ++c) comps_.emplace_back(grid_);
}

void Field::set_zero() {
    for (auto& c : comps_) c.set_zero();
}
void Field::enforce_hermitian() {
    for (auto& c : comps_) c.enforce_hermitian();
}
double Field::hermitian_defect() const {
    double d = 0;
    for (const auto& c : comps_) d = std::max(d, c.hermitian_defect());
    return d;
}
void Field::apply_mask() {
    for (auto& c : comps_) c.apply_mask();
}

Field& Field::operator+=(const Field& other) {
    for (int c = 0; c < 3; ++c) {
        auto& a = comps_[c].raw();
        const auto& b = other.comps_[c].raw();
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    }
    return *this;
}
Field& Field::operator-=(const Field& other) {
    for (int c = 0; c < 3; ++c) {
        auto& a = comps_[c].raw();
        const auto& b = other.comps_[c].raw();
        for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    }
    return *this;
}
Field& Field::operator*=(double s) {
    for (int c = 0; c < 3; ++c)
        for (auto& v : comps_[c].raw()) v *= s;
    return *this;
}

PhysicalScalar to_physical(const ScalarField& f) {
    const ChannelGrid& g = f.grid();
    const int nx = g.nx(), ny = g.ny(), nz = g.nz();
    PhysicalScalar out;
    out.nx = nx;
    out.ny = ny;
    out.nlev = nz;
    out.data.resize(static_cast<std::size_t>(nx) * ny * nz);
    std::vector<Complex> slab(static_cast<std::size_t>(nx) * ny);
    for (int iz = 0; iz < nz; ++iz) {
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix)
                slab[static_cast<std::size_t>(iy) * nx + ix] = f.block(ix, iy)[iz];
        g.fft_backward(slab.data());
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix)
                out.at(iz, iy, ix) = slab[static_cast<std::size_t>(iy) * nx + ix].real();
    }
    return out;
}

ScalarField to_spectral(const PhysicalScalar& p, std::shared_ptr<const ChannelGrid> grid) {
    const ChannelGrid& g = *grid;
    const int nx = g.nx(), ny = g.ny(), nz = g.nz();
    if (p.nx != nx || p.ny != ny || p.nlev != nz)
        throw ConfigError("to_spectral: grid size mismatch");
    ScalarField out(grid);
    std::vector<Complex> slab(static_cast<std::size_t>(nx) * ny);
    for (int iz = 0; iz < nz; ++iz) {
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix)
                slab[static_cast<std::size_t>(iy) * nx + ix] = Complex(p.at(iz, iy, ix), 0.0);
        g.fft_forward(slab.data());
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix)
                out.block(ix, iy)[iz] = slab[static_cast<std::size_t>(iy) * nx + ix];
    }
    out.apply_mask();
    out.enforce_hermitian();
    return out;
}

std::vector<PhysicalScalar> to_physical(const Field& f) {
    std::vector<PhysicalScalar> out;
    out.reserve(3);
    for (int c = 0; c < 3; ++c) out.push_back(to_physical(f.comp(c)));
    return out;
}

Field to_spectral_field(const std::vector<PhysicalScalar>& p,
                        std::shared_ptr<const ChannelGrid> grid) {
    if (p.size() != 3) throw ConfigError("to_spectral_field: expected 3 components");
    Field out(grid);
    for (int c = 0; c < 3; ++c) out.comp(c) = to_spectral(p[c], grid);
    return out;
}

namespace {
// Deterministic unit normals from raw mt19937_64 draws (Box-Muller on
// uniforms built from integer bits; no library distributions involved).
double unit_uniform(std::mt19937_64& rng) {
    return (rng() >> 11) * (1.0 / 9007199254740992.0);  // [0,1) with 53 bits
}
double unit_normal(std::mt19937_64& rng) {
    double u1 = unit_uniform(rng);
    double u2 = unit_uniform(rng);
    while (u1 <= 1e-300) u1 = unit_uniform(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::acos(-1.0) * u2);
}
}  // namespace

ScalarField random_scalar(std::shared_ptr<const ChannelGrid> grid, unsigned long long seed,
                          bool smooth) {
    const ChannelGrid& g = *grid;
    ScalarField out(grid);
    std::mt19937_64 rng(seed);
    const auto& zn = g.vertical().nodes();
    for (const BlockKey& b : g.blocks()) {
        double decay = 1.0;
        if (smooth) decay = std::exp(-0.5 * (b.kx * b.kx + b.ky * b.ky));
        Complex* blk = out.block(b.ix, b.iy);
        for (int i = 0; i < g.nz(); ++i) {
            double re = unit_normal(rng);
            double im = unit_normal(rng);
            double zdamp = smooth ? (0.25 + zn[i] * (1.0 - zn[i])) : 1.0;
            blk[i] = decay * zdamp * Complex(re, im);
        }
    }
    out.enforce_hermitian();
    out.apply_mask();
    return out;
}

Field random_field(std::shared_ptr<const ChannelGrid> grid, unsigned long long seed, bool smooth) {
    Field out(grid);
    for (int c = 0; c < 3; ++c) out.comp(c) = random_scalar(grid, seed * 3 + c + 1, smooth);
    return out;
}

void save_field(const Field& f, const std::filesystem::path& path) {
    const ChannelGrid& g = f.grid();
    const ChannelConfig& cfg = g.config();
    BinWriter w;
    w.magic("AFLD");
    w.u32(1);
    w.u32(static_cast<std::uint32_t>(cfg.Nx));
    w.u32(static_cast<std::uint32_t>(cfg.Ny));
    w.u32(static_cast<std::uint32_t>(cfg.Nz));
    w.f64(cfg.Lx);
    w.f64(cfg.Ly);
    w.f64(cfg.beta);
    w.f64(cfg.nu);
    // Coefficient blocks in row-major wavenumber order (iy outer, ix inner),
    // per block 3 components x Nz complex values, little-endian f64 pairs.
    for (int iy = 0; iy < cfg.Ny; ++iy)
        for (int ix = 0; ix < cfg.Nx; ++ix)
            for (int c = 0; c < 3; ++c) {
                const Complex* blk = f.comp(c).block(ix, iy);
                for (int i = 0; i < cfg.Nz; ++i) {
                    w.f64(blk[i].real());
                    w.f64(blk[i].imag());
                }
            }
    atomic_write(path, w.bytes);
}

Field load_field(const std::filesystem::path& path, std::shared_ptr<const ChannelGrid> grid) {
    auto bytes = read_file_bytes(path);
    BinReader r(bytes);
    r.expect_magic("AFLD", path.string());
    std::uint32_t version = r.u32();
    if (version != 1) throw ConfigError("unsupported AFLD version in " + path.string());
    const ChannelConfig& cfg = grid->config();
    std::uint32_t nx = r.u32(), ny = r.u32(), nz = r.u32();
    if (static_cast<int>(nx) != cfg.Nx || static_cast<int>(ny) != cfg.Ny ||
        static_cast<int>(nz) != cfg.Nz)
        throw ConfigError("field file grid mismatch: " + path.string());
    double lx = r.f64(), ly = r.f64();
    r.f64();  // beta: informational in the container
    r.f64();  // nu
    if (std::abs(lx - cfg.Lx) > 1e-14 * (1 + std::abs(cfg.Lx)) ||
        std::abs(ly - cfg.Ly) > 1e-14 * (1 + std::abs(cfg.Ly)))
        throw ConfigError("field file domain mismatch: " + path.string());
    Field f(grid);
    for (int iy = 0; iy < cfg.Ny; ++iy)
        for (int ix = 0; ix < cfg.Nx; ++ix)
            for (int c = 0; c < 3; ++c) {
                Complex* blk = f.comp(c).block(ix, iy);
                for (int i = 0; i < cfg.Nz; ++i) {
                    double re = r.f64();
                    double im = r.f64();
                    blk[i] = Complex(re, im);
                }
            }
    return f;
}

}  // namespace alphaflow
