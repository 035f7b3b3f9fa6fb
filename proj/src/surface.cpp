#include "alphaflow/surface.hpp"

#include <cmath>

#include "alphaflow/errors.hpp"
#include "alphaflow/io_util.hpp"
#include "alphaflow/vertical.hpp"

namespace alphaflow {

using Eigen::Matrix3d;
using Eigen::Vector3d;

SurfaceFrame surface_frame(const SurfacePatch& patch, double s, double t) {
    SurfaceFrame f;
    f.point = patch.r(s, t);
    Vector3d rs = patch.r_s(s, t);
    Vector3d rt = patch.r_t(s, t);
    Vector3d cross = rs.cross(rt);
    double cn = cross.norm();
    if (cn < 1e-14)
        throw ConfigError("surface patch is degenerate at (s,t)=(" + format_double(s) + "," +
                          format_double(t) + ")");
    f.area_element = cn;
    f.normal = cross / cn;
    f.tau1 = rs.normalized();
    f.tau2 = (rt - rt.dot(f.tau1) * f.tau1).normalized();

    // Derivatives of the unit normal along the parameter directions.
    Vector3d rss = patch.r_ss(s, t), rst = patch.r_st(s, t), rtt = patch.r_tt(s, t);
    Vector3d cross_s = rss.cross(rt) + rs.cross(rst);
    Vector3d cross_t = rst.cross(rt) + rs.cross(rtt);
    auto dnormal = [&](const Vector3d& dc) {
        return (dc - f.normal * (f.normal.dot(dc))) / cn;
    };
    Vector3d ns = dnormal(cross_s);
    Vector3d nt = dnormal(cross_t);

    // Gradient of the distance-type extension: matches n_s, n_t on the
    // tangent directions and annihilates the normal. grad(n) is then the
    // (symmetric) shape operator.
    Matrix3d basis;
    basis.col(0) = rs;
    basis.col(1) = rt;
    basis.col(2) = f.normal;
    Matrix3d rhs;
    rhs.col(0) = ns;
    rhs.col(1) = nt;
    rhs.col(2) = Vector3d::Zero();
    Matrix3d grad_n = rhs * basis.inverse();
    f.shape = 0.5 * (grad_n + grad_n.transpose());
    return f;
}

GdReport gd_on_patch(const SurfacePatch& patch, const AnalyticField& field, int ns, int nt) {
    GdReport rep{0.0, 0.0, 0};
    for (int i = 0; i < ns; ++i) {
        double s = patch.s0 + (patch.s1 - patch.s0) * (i + 0.5) / ns;
        for (int j = 0; j < nt; ++j) {
            double t = patch.t0 + (patch.t1 - patch.t0) * (j + 0.5) / nt;
            SurfaceFrame f = surface_frame(patch, s, t);
            Vector3d u = field.value(f.point);
            Matrix3d J = field.jacobian(f.point);

            double tangency = std::abs(u.dot(f.normal));
            rep.max_tangency = std::max(rep.max_tangency, tangency);
            if (tangency > 1e-12 * (1.0 + u.norm()))
                throw ConfigError("gd_on_patch: field is not tangent to the patch (|u.n| = " +
                                  format_double(tangency) + ")");

            Matrix3d S = 0.5 * (J + J.transpose());
            Vector3d omega(J(2, 1) - J(1, 2), J(0, 2) - J(2, 0), J(1, 0) - J(0, 1));
            Vector3d gd = -2.0 * (f.shape * u);
            Vector3d lhs = 2.0 * (S * f.normal) - omega.cross(f.normal) - gd;
            double res = std::max(std::abs(lhs.dot(f.tau1)), std::abs(lhs.dot(f.tau2)));
            rep.max_residual = std::max(rep.max_residual, res);
            ++rep.samples;
        }
    }
    return rep;
}

GdSymmetryReport gd_symmetry_integrals(const SurfacePatch& patch, const AnalyticField& u,
                                       const AnalyticField& phi, int nq) {
    Eigen::VectorXd qn, qw;
    gauss_legendre(nq, qn, qw);
    GdSymmetryReport rep{0.0, 0.0};
    for (int i = 0; i < nq; ++i) {
        double s = patch.s0 + (patch.s1 - patch.s0) * qn[i];
        for (int j = 0; j < nq; ++j) {
            double t = patch.t0 + (patch.t1 - patch.t0) * qn[j];
            SurfaceFrame f = surface_frame(patch, s, t);
            double w = qw[i] * qw[j] * (patch.s1 - patch.s0) * (patch.t1 - patch.t0) *
                       f.area_element;
            Vector3d uu = u.value(f.point);
            Vector3d pp = phi.value(f.point);
            Vector3d gd_u = -2.0 * (f.shape * uu);
            Vector3d gd_phi = -2.0 * (f.shape * pp);
            rep.integral_gd_phi_u += w * gd_phi.dot(uu);
            rep.integral_gd_u_phi += w * gd_u.dot(pp);
        }
    }
    return rep;
}

SurfacePatch flat_patch(double size) {
    SurfacePatch p;
    p.s0 = -size;
    p.s1 = size;
    p.t0 = -size;
    p.t1 = size;
    p.r = [](double s, double t) { return Vector3d(s, t, 0.0); };
    p.r_s = [](double, double) { return Vector3d(1, 0, 0); };
    p.r_t = [](double, double) { return Vector3d(0, 1, 0); };
    p.r_ss = [](double, double) { return Vector3d::Zero().eval(); };
    p.r_st = [](double, double) { return Vector3d::Zero().eval(); };
    p.r_tt = [](double, double) { return Vector3d::Zero().eval(); };
    return p;
}

SurfacePatch sphere_patch() {
    SurfacePatch p;
    // theta in [0.4, pi - 0.4], phi in [0, pi/2]: avoids the poles.
    p.s0 = 0.4;
    p.s1 = std::acos(-1.0) - 0.4;
    p.t0 = 0.0;
    p.t1 = 0.5 * std::acos(-1.0);
    p.r = [](double th, double ph) {
        return Vector3d(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
    };
    p.r_s = [](double th, double ph) {
        return Vector3d(std::cos(th) * std::cos(ph), std::cos(th) * std::sin(ph), -std::sin(th));
    };
    p.r_t = [](double th, double ph) {
        return Vector3d(-std::sin(th) * std::sin(ph), std::sin(th) * std::cos(ph), 0.0);
    };
    p.r_ss = [](double th, double ph) {
        return Vector3d(-std::sin(th) * std::cos(ph), -std::sin(th) * std::sin(ph), -std::cos(th));
    };
    p.r_st = [](double th, double ph) {
        return Vector3d(-std::cos(th) * std::sin(ph), std::cos(th) * std::cos(ph), 0.0);
    };
    p.r_tt = [](double th, double ph) {
        return Vector3d(-std::sin(th) * std::cos(ph), -std::sin(th) * std::sin(ph), 0.0);
    };
    return p;
}

}  // namespace alphaflow
