#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "nvff/constants.hpp"
#include "nvff/vec3.hpp"

// Macrospin magnetization dynamics of one free layer: damping-like STT and SOT
// torques on top of precession and Gilbert damping, integrated with fixed-step
// RK4 and per-step renormalization.

namespace nvff {

enum class AnisotropyKind { perpendicular, in_plane };

struct MagnetizationState {
    Vec3 m{0, 0, 1}; // unit magnetization, dimensionless
};

struct FreeLayerParams {
    double Ms = 1.0e6;        // saturation magnetization, A/m
    double alpha = 0.035;     // Gilbert damping
    double t_F = 0.7e-9;      // free layer thickness, m
    double area = 1.6e-15;    // free layer cross-section, m^2
    AnisotropyKind anisotropy_kind = AnisotropyKind::perpendicular;
    Vec3 easy_axis{0, 0, 1};  // unit vector
    double E_barrier = 32.0;  // thermal stability, multiples of kB*T
    double temperature = 300.0; // K
    double demag_nz = 0.0;    // thin-film demag factor, in-plane devices only

    double volume() const { return area * t_F; }
};

struct TorqueDrive {
    double J_stt = 0.0;       // MTJ charge current density, A/m^2; >0 favors P
    double J_she = 0.0;       // heavy metal charge current density, A/m^2
    Vec3 m_p{0, 0, 1};        // pinned layer unit vector
    Vec3 sigma_she{1, 0, 0};  // SOT spin polarization unit vector
    double P = 0.62;          // tunneling spin polarization
    double Lambda = 1.3;      // STT asymmetry factor
    double eta = 0.3;         // spin Hall angle
    Vec3 H_ext{0, 0, 0};      // external bias field, A/m
};

// phi = 2 P L^2 / ((L^2+1) + (L^2-1) cos); collapses to P at Lambda = 1.
double stt_efficiency(double cos_angle, double P, double Lambda);

// Uniaxial anisotropy field from the thermal stability barrier:
// Hk = 2 E kB T / (mu0 Ms V), A/m.
double anisotropy_field(const FreeLayerParams& fl);

// Hk (m.e) e - demag_nz Ms mz z_hat [in-plane only] + H_ext, A/m.
Vec3 effective_field(const MagnetizationState& m, const FreeLayerParams& fl,
                     const Vec3& H_ext);

// -1/2 mu0 Ms Hk (m.e)^2 V, J. Used by the damping-dissipation checks.
double anisotropy_energy(const MagnetizationState& m, const FreeLayerParams& fl);

// Explicitly solved Landau-Lifshitz form of the Gilbert equation with
// damping-like STT and SOT terms; returns dm/dt, s^-1. Output is orthogonal
// to m by construction.
Vec3 llg_rhs(const MagnetizationState& m, const TorqueDrive& drive,
             const FreeLayerParams& fl);

// One classical RK4 step followed by renormalization. dt <= 2 ps guard.
MagnetizationState integrate_step(const MagnetizationState& m,
                                  const TorqueDrive& drive,
                                  const FreeLayerParams& fl, double dt);

struct SwitchingResult {
    std::vector<double> times;             // s
    std::vector<Vec3> trajectory;          // unit magnetization samples
    std::optional<double> switch_time;     // s, settled crossing of -0.9*sign0
};

using DriveProfile = std::function<TorqueDrive(double t)>;

// Integrates m from m0 over [0, t_stop]; reports the first time the easy-axis
// projection crosses 0.9 opposite its initial sign and stays there. Crossing
// times are cubic-Hermite interpolated inside the bracketing step.
SwitchingResult simulate_switching(const MagnetizationState& m0,
                                   const DriveProfile& drive_profile,
                                   const FreeLayerParams& fl, double t_stop,
                                   double dt);

} // namespace nvff
