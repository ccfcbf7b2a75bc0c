#include "nvff/llg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nvff {

namespace {
constexpr double kDtGuard = 2.0e-12; // s, stability guard for Table-scale fields
}

double stt_efficiency(double cos_angle, double P, double Lambda) {
    if (cos_angle < -1.0 - 1e-9 || cos_angle > 1.0 + 1e-9)
        throw std::domain_error("stt_efficiency: cos_angle outside [-1, 1]");
    if (!(P > 0.0 && P < 1.0))
        throw std::domain_error("stt_efficiency: P outside (0, 1)");
    if (!(Lambda >= 1.0))
        throw std::domain_error("stt_efficiency: Lambda < 1");
    double c = std::clamp(cos_angle, -1.0, 1.0);
    double L2 = Lambda * Lambda;
    return 2.0 * P * L2 / ((L2 + 1.0) + (L2 - 1.0) * c);
}

double anisotropy_field(const FreeLayerParams& fl) {
    double V = fl.volume();
    if (!(V > 0.0))
        throw std::invalid_argument("anisotropy_field: zero free-layer volume");
    const auto& pc = phys_constants();
    return 2.0 * fl.E_barrier * pc.kB * fl.temperature / (pc.mu0 * fl.Ms * V);
}

Vec3 effective_field(const MagnetizationState& m, const FreeLayerParams& fl,
                     const Vec3& H_ext) {
    double Hk = anisotropy_field(fl); // throws on zero volume
    Vec3 H = fl.easy_axis * (Hk * m.m.dot(fl.easy_axis));
    if (fl.anisotropy_kind == AnisotropyKind::in_plane)
        H = H - Vec3{0, 0, fl.demag_nz * fl.Ms * m.m.z};
    return H + H_ext;
}

double anisotropy_energy(const MagnetizationState& m, const FreeLayerParams& fl) {
    const auto& pc = phys_constants();
    double Hk = anisotropy_field(fl);
    double proj = m.m.dot(fl.easy_axis);
    return -0.5 * pc.mu0 * fl.Ms * Hk * proj * proj * fl.volume();
}

Vec3 llg_rhs(const MagnetizationState& m, const TorqueDrive& drive,
             const FreeLayerParams& fl) {
    const auto& pc = phys_constants();
    Vec3 H = effective_field(m, fl, drive.H_ext);

    // xi = gamma hbar / (2 e t_F Ms), converts A/m^2 to s^-1
    double xi = pc.gamma * pc.hbar / (2.0 * pc.e_charge * fl.t_F * fl.Ms);

    Vec3 tau{0, 0, 0};
    if (drive.J_stt != 0.0) {
        double c = std::clamp(m.m.dot(drive.m_p), -1.0, 1.0);
        double phi = stt_efficiency(c, drive.P, drive.Lambda);
        tau = tau - xi * phi * drive.J_stt * m.m.cross(m.m.cross(drive.m_p));
    }
    if (drive.J_she != 0.0)
        tau = tau - xi * drive.eta * drive.J_she * m.m.cross(m.m.cross(drive.sigma_she));

    double g = pc.gamma * pc.mu0;
    Vec3 mxH = m.m.cross(H);
    Vec3 rhs = -g * mxH - fl.alpha * g * m.m.cross(mxH) + tau +
               fl.alpha * m.m.cross(tau);
    return rhs / (1.0 + fl.alpha * fl.alpha);
}

MagnetizationState integrate_step(const MagnetizationState& m,
                                  const TorqueDrive& drive,
                                  const FreeLayerParams& fl, double dt) {
    if (!(dt > 0.0))
        throw std::invalid_argument("integrate_step: dt must be positive");
    if (dt > kDtGuard)
        throw std::invalid_argument("integrate_step: dt above 2 ps guard");

    Vec3 k1 = llg_rhs(m, drive, fl);
    Vec3 k2 = llg_rhs({m.m + k1 * (0.5 * dt)}, drive, fl);
    Vec3 k3 = llg_rhs({m.m + k2 * (0.5 * dt)}, drive, fl);
    Vec3 k4 = llg_rhs({m.m + k3 * dt}, drive, fl);

    Vec3 next = m.m + (k1 + 2.0 * k2 + 2.0 * k3 + k4) * (dt / 6.0);
    return {next.normalized()};
}

SwitchingResult simulate_switching(const MagnetizationState& m0,
                                   const DriveProfile& drive_profile,
                                   const FreeLayerParams& fl, double t_stop,
                                   double dt) {
    SwitchingResult out;
    double proj0 = m0.m.dot(fl.easy_axis);
    double sign0 = proj0 >= 0.0 ? 1.0 : -1.0;
    double target = -0.9 * sign0; // settled switch means crossing and staying

    MagnetizationState m = m0;
    double t = 0.0;
    out.times.push_back(t);
    out.trajectory.push_back(m.m);

    std::optional<double> candidate;
    double prev_proj = proj0;
    TorqueDrive prev_drive = drive_profile(0.0);

    long n_steps = static_cast<long>(std::ceil(t_stop / dt));
    for (long i = 0; i < n_steps; ++i) {
        TorqueDrive drive = drive_profile(t + 0.5 * dt);
        MagnetizationState next = integrate_step(m, drive, fl, dt);
        double t_next = t + dt;
        double proj = next.m.dot(fl.easy_axis);

        bool beyond_prev = sign0 > 0 ? prev_proj <= target : prev_proj >= target;
        bool beyond = sign0 > 0 ? proj <= target : proj >= target;
        if (beyond && !beyond_prev && !candidate) {
            // Cubic Hermite on the projection inside [t, t+dt] for a crossing
            // estimate that preserves the integrator's convergence order.
            double p0 = prev_proj, p1 = proj;
            double d0 = llg_rhs(m, prev_drive, fl).dot(fl.easy_axis) * dt;
            double d1 = llg_rhs(next, drive, fl).dot(fl.easy_axis) * dt;
            double s = 0.5; // bisection on the Hermite polynomial
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 60; ++it) {
                s = 0.5 * (lo + hi);
                double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
                double h10 = s * (1 - s) * (1 - s);
                double h01 = s * s * (3 - 2 * s);
                double h11 = s * s * (s - 1);
                double val = h00 * p0 + h10 * d0 + h01 * p1 + h11 * d1 - target;
                bool same_side_as_start = (sign0 > 0) ? val > 0 : val < 0;
                (same_side_as_start ? lo : hi) = s;
            }
            candidate = t + s * dt;
        } else if (!beyond && candidate) {
            candidate.reset(); // came back; not a settled switch
        }

        m = next;
        t = t_next;
        prev_proj = proj;
        prev_drive = drive;
        out.times.push_back(t);
        out.trajectory.push_back(m.m);
    }

    out.switch_time = candidate;
    return out;
}

} // namespace nvff
