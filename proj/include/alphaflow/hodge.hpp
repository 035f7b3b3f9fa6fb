#pragma once

#include "alphaflow/operators.hpp"

namespace alphaflow {

// Five-space orthogonal splitting of L2 on the channel and the associated
// projectors. All projections are per-wavenumber Galerkin solves, so
// orthogonality and reconstruction hold to rounding by construction.
struct HodgeComponents {
    Field fh, hh, cg, hg, gg;
    double residual;  // reconstruction defect relative to the input norm

    const Field& part(int i) const {
        switch (i) {
            case 0: return fh;
            case 1: return hh;
            case 2: return cg;
            case 3: return hg;
            default: return gg;
        }
    }
    static const char* name(int i) {
        static const char* names[5] = {"fh", "hh", "cg", "hg", "gg"};
        return names[i];
    }
};

struct HarmonicBasis {
    std::vector<Field> hh_basis;  // dim 2 on the channel
    std::vector<Field> hg_basis;  // dim 1 on the channel
};

// Gradient part: grad(phi_g) with phi_g solving the Dirichlet problem
// driven by div u. The remainder u - grad(phi_g) is weakly divergence free.
Field project_GG(const ChannelOperators& ops, const Field& u);

// Projection of a (weakly) divergence-free field onto the tangent
// divergence-free subspace. Throws ConfigError when the input divergence
// exceeds the stated tolerance.
Field project_to_H(const ChannelOperators& ops, const Field& u);

// Leray projector P = P_FH + P_HH applied to an arbitrary field.
Field leray_project(const ChannelOperators& ops, const Field& u);

HarmonicBasis harmonic_bases(const ChannelOperators& ops);

// Dimension counts recovered from the rank of the assembled harmonic
// systems (cross-validation of the analytic bases).
struct HarmonicDims {
    int dim_hh;
    int dim_hg;
};
HarmonicDims harmonic_dims_by_rank(const ChannelOperators& ops);

HodgeComponents decompose(const ChannelOperators& ops, const Field& u);

}  // namespace alphaflow
