#pragma once

#include <numbers>

namespace vbir::constants {

/// Fundamental constants in SI units.
struct PhysicalConstants {
    double hbar;  ///< J s
    double h;     ///< J s
    double e;     ///< C
    double m_e;   ///< kg
    double eps0;  ///< F/m
    double c;     ///< m/s

    constexpr double mu0() const { return 1.0 / (eps0 * c * c); }
};

/// CODATA 2018 recommended values. h, e and c are exact in the 2019 SI.
inline constexpr PhysicalConstants codata2018{
    .hbar = 6.62607015e-34 / (2.0 * std::numbers::pi),
    .h = 6.62607015e-34,
    .e = 1.602176634e-19,
    .m_e = 9.1093837015e-31,
    .eps0 = 8.8541878128e-12,
    .c = 299792458.0,
};

/// alpha = e^2 / (4 pi eps0 hbar c)
constexpr double fine_structure_constant(const PhysicalConstants& k = codata2018) {
    return k.e * k.e / (4.0 * std::numbers::pi * k.eps0 * k.hbar * k.c);
}

/// Schwinger-Sauter critical field E_S = m_e^2 c^3 / (e hbar), in V/m.
constexpr double schwinger_field(const PhysicalConstants& k = codata2018) {
    return k.m_e * k.m_e * k.c * k.c * k.c / (k.e * k.hbar);
}

/// Birefringence coefficient xi = hbar e^4 / (180 pi eps0 m_e^4 c^7), in m^2/V^2.
constexpr double xi_constant(const PhysicalConstants& k = codata2018) {
    const double e2 = k.e * k.e;
    const double m2 = k.m_e * k.m_e;
    const double c7 = k.c * k.c * k.c * k.c * k.c * k.c * k.c;
    return k.hbar * e2 * e2 / (180.0 * std::numbers::pi * k.eps0 * m2 * m2 * c7);
}

/// Same coefficient through alpha / (45 E_S^2).
constexpr double xi_from_alpha(const PhysicalConstants& k = codata2018) {
    const double es = schwinger_field(k);
    return fine_structure_constant(k) / (45.0 * es * es);
}

/// Photon energy h c / lambda, in J. Throws DomainError for lambda <= 0.
double photon_energy(double lambda, const PhysicalConstants& k = codata2018);

/// Angular frequency 2 pi c / lambda, in rad/s. Throws DomainError for lambda <= 0.
double angular_frequency(double lambda, const PhysicalConstants& k = codata2018);

}  // namespace vbir::constants
