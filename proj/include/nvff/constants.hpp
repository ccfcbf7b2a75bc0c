#pragma once

// Physical constants (CODATA 2018). Fixed values; tests may construct modified
// copies for injection but simulation code always uses phys_constants().

namespace nvff {

struct PhysicalConstants {
    double gamma = 1.76e11;           // gyromagnetic ratio, rad s^-1 T^-1
    double mu0 = 1.25663706212e-6;    // vacuum permeability, T m A^-1
    double hbar = 1.054571817e-34;    // reduced Planck constant, J s
    double e_charge = 1.602176634e-19; // elementary charge, C
    double kB = 1.380649e-23;         // Boltzmann constant, J K^-1
};

inline const PhysicalConstants& phys_constants() {
    static const PhysicalConstants c{};
    return c;
}

} // namespace nvff
