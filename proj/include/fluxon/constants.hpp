#pragma once

// Fundamental constants in Gaussian CGS units, CODATA 2018.

namespace fluxon::constants {

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

inline constexpr double hbar = 1.054571817e-27;             // erg s
inline constexpr double electron_mass = 9.1093837015e-28;   // g
inline constexpr double electron_charge = 4.80320471257e-10;  // esu
inline constexpr double speed_of_light = 2.99792458e10;     // cm/s
inline constexpr double bohr_radius = 5.29177210903e-9;     // cm
inline constexpr double fine_structure = 7.2973525693e-3;

// Single-charge convention: one flux quantum per 2*pi of Aharonov-Bohm phase.
inline constexpr double flux_quantum =
    2.0 * pi * hbar * speed_of_light / electron_charge;     // gauss cm^2

}  // namespace fluxon::constants

namespace fluxon {

struct PhysicalConstants {
    double hbar = constants::hbar;
    double electron_mass = constants::electron_mass;
    double electron_charge = constants::electron_charge;
    double speed_of_light = constants::speed_of_light;
    double bohr_radius = constants::bohr_radius;
    double fine_structure = constants::fine_structure;
    double flux_quantum = constants::flux_quantum;

    static constexpr PhysicalConstants codata2018() { return PhysicalConstants{}; }
};

}  // namespace fluxon
