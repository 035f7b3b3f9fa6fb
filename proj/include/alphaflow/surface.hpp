#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace alphaflow {

// Parametrized surface patch (s,t) -> R^3 over a rectangle, with analytic
// first and second derivatives supplied as callables.
struct SurfacePatch {
    using Map = std::function<Eigen::Vector3d(double, double)>;
    double s0 = 0, s1 = 1, t0 = 0, t1 = 1;
    Map r, r_s, r_t, r_ss, r_st, r_tt;
};

// Vector field given with its analytic Jacobian.
struct AnalyticField {
    std::function<Eigen::Vector3d(const Eigen::Vector3d&)> value;
    std::function<Eigen::Matrix3d(const Eigen::Vector3d&)> jacobian;
};

// Surface frame at a parameter point: unit normal, tangents, and the
// symmetric normal gradient S(n) of the distance-type normal extension.
struct SurfaceFrame {
    Eigen::Vector3d point, normal, tau1, tau2;
    Eigen::Matrix3d shape;  // S(n)
    double area_element;
};
SurfaceFrame surface_frame(const SurfacePatch& patch, double s, double t);

// Pointwise check of the tangential identity relating the shear stress,
// the vorticity and GD(u) = -2 S(n) u for fields tangent to the patch.
struct GdReport {
    double max_residual;      // max over samples and tangent directions
    double max_tangency;      // largest |u.n| seen (precondition check)
    int samples;
};
GdReport gd_on_patch(const SurfacePatch& patch, const AnalyticField& field, int ns, int nt);

// The two surface integrals int GD(phi).u and int GD(u).phi over the patch.
struct GdSymmetryReport {
    double integral_gd_phi_u;
    double integral_gd_u_phi;
};
GdSymmetryReport gd_symmetry_integrals(const SurfacePatch& patch, const AnalyticField& u,
                                       const AnalyticField& phi, int nq);

// Stock patches used by the checks and the CLI.
SurfacePatch flat_patch(double size = 1.0);
SurfacePatch sphere_patch();  // mid-latitude band of the unit sphere

}  // namespace alphaflow
