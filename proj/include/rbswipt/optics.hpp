#pragma once

// Ray-transfer matrices and Gaussian-beam propagation for a resonator built
// from two telecentric cat's-eye retroreflectors (lens + rear mirror) facing
// each other across free space.
//
// Axial coordinate: z = 0 is the transmitter mirror M1 (where the SHG crystal
// sits). Element positions follow the model convention
//   z_L1 = f, z_L2 = l + 2f + d, z_L3 = 3l + 2f + d, z_PV = 3l + 3f + d,
// i.e. the first drift is taken as f rather than the physical M1-L1 spacing l.
// The two differ by l - f (150 um for the reference design); the convention
// is kept so results line up with the published model.

#include <cmath>
#include <complex>
#include <limits>

#include "rbswipt/constants.hpp"
#include "rbswipt/error.hpp"

namespace rbswipt::optics {

struct Ray {
    double r = 0.0;      // transverse displacement [m]
    double alpha = 0.0;  // angle to the axis [rad]
};

// 2x2 ray-transfer matrix [[a, b], [c, d]]; b in m, c in 1/m.
struct RayMatrix {
    double a = 1.0;
    double b = 0.0;
    double c = 0.0;
    double d = 1.0;

    double determinant() const { return a * d - b * c; }

    Ray apply(const Ray& in) const { return {a * in.r + b * in.alpha, c * in.r + d * in.alpha}; }

    friend RayMatrix operator*(const RayMatrix& m, const RayMatrix& n) {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }
};

inline RayMatrix identity() { return {}; }
inline RayMatrix drift(double length) { return {1.0, length, 0.0, 1.0}; }
inline RayMatrix thin_lens(double focal_length) { return {1.0, 0.0, -1.0 / focal_length, 1.0}; }

// f: lens focal length, l: lens-mirror interval, d: pupil-to-pupil distance.
struct CavityGeometry {
    double f = 0.03;
    double l = 0.03015;
    double d = 6.0;

    void validate() const {
        if (!(f > 0.0) || !(l > 0.0) || !(d >= 0.0) || !std::isfinite(f + l + d))
            throw PhysicsError("cavity geometry requires f > 0, l > 0, d >= 0");
    }

    double z_L1() const { return f; }
    double z_L2() const { return l + 2.0 * f + d; }
    double z_L3() const { return 3.0 * l + 2.0 * f + d; }
    double z_PV() const { return 3.0 * l + 3.0 * f + d; }
    // Gain medium sits at the RR1 pupil.
    double z_gain() const { return l + f; }
    // Receiver-side pupil (RR2).
    double z_receiver_pupil() const { return l + f + d; }
};

// Equivalent focal length of a cat's-eye retroreflector, f^2 / (2(l - f)).
// Infinite for the ideal case l == f.
inline double retroreflector_focal_length(double f, double l) {
    const double offset = l - f;
    if (offset == 0.0) return std::numeric_limits<double>::infinity();
    return f * f / (2.0 * offset);
}

// Round-trip matrix of one retroreflector, drift(f) lens drift(l) mirror
// drift(l) lens drift(f). It collapses to a thin lens of focal length f_RR
// composed with the inversion -I, i.e. [[-1, 0], [1/f_RR, -1]]; the closed
// form is used so the result is exactly unimodular.
inline RayMatrix retroreflector_matrix(double f, double l) {
    if (!(f > 0.0) || !(l > 0.0))
        throw PhysicsError("retroreflector requires f > 0 and l > 0");
    return {-1.0, 0.0, 2.0 * (l - f) / (f * f), -1.0};
}

// Single-pass M1 -> M2 matrix of the whole cavity:
//   A = D = -1 - d/f + d l/f^2
//   B = 2f - 2l + d - 2 d l/f + d l^2/f^2
//   C = d/f^2
// Evaluated through delta = l - f, which is algebraically identical and
// avoids the large cancellations of the expanded form.
inline RayMatrix single_pass_abcd(const CavityGeometry& geom) {
    geom.validate();
    const double f2 = geom.f * geom.f;
    const double delta = geom.l - geom.f;
    const double x = geom.d * delta / f2;
    const double a = -1.0 + x;
    const double b = -2.0 * delta + x * delta;
    const double c = geom.d / f2;
    return {a, b, c, a};
}

enum class Stability { stable, marginal, unstable };

inline constexpr double kMarginalTolerance = 1e-12;

inline const char* to_string(Stability s) {
    switch (s) {
        case Stability::stable: return "stable";
        case Stability::marginal: return "marginal";
        case Stability::unstable: return "unstable";
    }
    return "?";
}

// 0 < g1* g2* < 1 with g1* = A, g2* = D. The product touching 0 is still
// stable for a symmetric cavity (g1* = g2* = 0 is the confocal-like point
// d = 2 f_RR, inside 0 <= d <= 4 f_RR); only the product touching 1 is
// marginal there.
inline Stability classify(const RayMatrix& abcd) {
    const double g = abcd.a * abcd.d;
    const bool symmetric = std::abs(abcd.a - abcd.d) <= kMarginalTolerance;
    if (std::abs(g - 1.0) <= kMarginalTolerance) return Stability::marginal;
    if (std::abs(g) <= kMarginalTolerance)
        return symmetric ? Stability::stable : Stability::marginal;
    if (g > 0.0 && g < 1.0) return Stability::stable;
    return Stability::unstable;
}

inline Stability stability_check(const CavityGeometry& geom) {
    return classify(single_pass_abcd(geom));
}

using ComplexQ = std::complex<double>;

// q -> q / (-q/f + 1); equivalently 1/q -> 1/q - 1/f.
inline ComplexQ lens_transform(ComplexQ q, double focal_length) {
    return 1.0 / (1.0 / q - 1.0 / focal_length);
}

// Self-consistent q at M1 (z = 0): j |B| sqrt(g2 / (g1 (1 - g1 g2))).
inline ComplexQ q_at_mirror(const RayMatrix& abcd) {
    if (classify(abcd) != Stability::stable)
        throw PhysicsError("no self-consistent Gaussian mode (cavity not stable)");
    const double g1 = abcd.a;
    const double g2 = abcd.d;
    double zr = 0.0;
    if (std::abs(g1 - g2) <= kMarginalTolerance)
        zr = std::abs(abcd.b) / std::sqrt(1.0 - g1 * g1);
    else
        zr = std::abs(abcd.b) * std::sqrt(g2 / (g1 * (1.0 - g1 * g2)));
    return {0.0, zr};
}

// Which value to report when z lands exactly on a lens plane.
enum class Side { before, after };

// q(z) on [0, z_PV], propagated from q(0) through lenses L1, L2, L3.
// Segments are left-open/right-closed, so a lens plane belongs to the segment
// before it unless side == Side::after.
inline ComplexQ q_at(const CavityGeometry& geom, const RayMatrix& abcd, double z,
                     Side side = Side::before) {
    const double z_end = geom.z_PV();
    if (!(z >= 0.0) || z > z_end * (1.0 + 1e-15))
        throw PhysicsError("axial position outside [0, z_PV]");

    ComplexQ q = q_at_mirror(abcd);
    double origin = 0.0;
    for (const double plane : {geom.z_L1(), geom.z_L2(), geom.z_L3()}) {
        if (z < plane || (z == plane && side == Side::before)) break;
        q = lens_transform(q + (plane - origin), geom.f);
        origin = plane;
    }
    return q + (z - origin);
}

// TEM00 radius w00 = sqrt(-lambda / (pi Im(1/q))).
inline double fundamental_radius(ComplexQ q, double lambda) {
    const double im = (1.0 / q).imag();
    if (!(im < 0.0)) throw PhysicsError("non-physical mode: Im(1/q) >= 0");
    return std::sqrt(-lambda / (kPi * im));
}

inline double rayleigh_range(double w00, double lambda) { return kPi * w00 * w00 / lambda; }

struct BeamProfile {
    double w00 = 0.0;                 // fundamental-mode radius [m]
    double w = 0.0;                   // multimode radius [m]
    double propagation_factor = 1.0;  // w / w00, constant along z
};

// The multimode beam is taken to fill the gain-medium aperture:
// w(l + f) = a_g, so the factor is a_g / w00(l + f).
inline double propagation_factor(const CavityGeometry& geom, const RayMatrix& abcd,
                                 double a_g, double lambda) {
    if (!(a_g > 0.0)) throw PhysicsError("gain aperture radius must be positive");
    return a_g / fundamental_radius(q_at(geom, abcd, geom.z_gain()), lambda);
}

inline BeamProfile beam_radius(const CavityGeometry& geom, const RayMatrix& abcd, double a_g,
                               double lambda, double z) {
    const double m = propagation_factor(geom, abcd, a_g, lambda);
    const double w00 = fundamental_radius(q_at(geom, abcd, z), lambda);
    return {w00, m * w00, m};
}

}  // namespace rbswipt::optics
