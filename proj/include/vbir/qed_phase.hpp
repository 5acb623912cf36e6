#pragma once

#include "vbir/constants.hpp"

#include <array>
#include <string>

namespace vbir::qed {

using Vec3 = std::array<double, 3>;

enum class Polarization { Parallel, Perpendicular };
enum class ProbeMode { Continuous, Pulsed };

/// Petawatt pump focused to a Gaussian waist; field taken constant over the depth of focus.
struct PumpLaser {
    std::string name;
    double field = 0.0;             ///< peak electric field E_L, V/m
    double wavelength = 820e-9;     ///< lambda_L, m
    double waist = 3e-6;            ///< w0, m
    double pulse_duration = 0.0;    ///< tau_L, s

    double magnetic_field() const { return field / constants::codata2018.c; }
    /// Throws DomainError / FieldValidityError when an invariant is violated.
    void validate() const;
};

struct ProbeBeam {
    double wavelength = 532e-9;  ///< lambda_p, m
    Polarization polarization = Polarization::Parallel;
    double power = 1.0;          ///< W (peak power for pulsed probes)
    ProbeMode mode = ProbeMode::Continuous;
    double pulse_duration = 0.0;  ///< pulsed only, s
    double spectral_width = 0.0;  ///< pulsed only, rad/s

    double angular_frequency() const { return constants::angular_frequency(wavelength); }
    void validate() const;
};

struct BeamGeometry {
    double rayleigh_distance;  ///< z_R, m
    double depth_of_focus;     ///< b = 2 z_R, m
};

struct RefractionIndices {
    double parallel;
    double perpendicular;
    // n - 1 carried separately: at 1e-10 the sum with 1 keeps only ~6 digits.
    double parallel_excess;
    double perpendicular_excess;
};

struct PhaseShifts {
    double parallel;
    double perpendicular;

    double operator[](Polarization p) const { return p == Polarization::Parallel ? parallel : perpendicular; }
};

/// Euler-Kockel coefficient kappa = 2 alpha^2 hbar^3 / (45 m_e^4 c^5), in m^3/J.
constexpr double kappa(const constants::PhysicalConstants& k = constants::codata2018) {
    const double a = constants::fine_structure_constant(k);
    const double m2 = k.m_e * k.m_e;
    const double c5 = k.c * k.c * k.c * k.c * k.c;
    return 2.0 * a * a * k.hbar * k.hbar * k.hbar / (45.0 * m2 * m2 * c5);
}

namespace detail {
constexpr double rel_diff(double a, double b) {
    const double d = a - b;
    return (d < 0 ? -d : d) / (b < 0 ? -b : b);
}
}  // namespace detail

// Both coefficients descend from alpha and E_S: xi = 2 pi eps0 kappa.
static_assert(detail::rel_diff(constants::xi_constant(),
                               2.0 * std::numbers::pi * constants::codata2018.eps0 * kappa()) < 1e-12);
static_assert(detail::rel_diff(constants::xi_constant(), constants::xi_from_alpha()) < 1e-12);

/// z_R = pi w0^2 / lambda_L, b = 2 z_R.
BeamGeometry rayleigh_distance(double waist, double wavelength);

/// Vacuum indices seen by a probe counter-propagating against a plane-wave pump of peak field E_L.
RefractionIndices refraction_indices(double field);

/// Closed form 8 pi^2 w0^2 xi / (lambda_p lambda_L) * {4;7} * E_L^2.
PhaseShifts qed_phase_shift(const PumpLaser& pump, double probe_wavelength);
double qed_phase_shift(const PumpLaser& pump, const ProbeBeam& probe);

/// Same shift computed as (omega_p b / c)(n - 1).
PhaseShifts qed_phase_shift_via_index(const PumpLaser& pump, double probe_wavelength);

struct Invariants {
    double F;  ///< eps0/2 (E^2 - c^2 B^2), J/m^3
    double G;  ///< sqrt(eps0/mu0) E.B, J/m^3
};

Invariants relativistic_invariants(const Vec3& E, const Vec3& B);

struct ConstitutiveFields {
    Vec3 D;  ///< C/m^2
    Vec3 H;  ///< A/m
};

/// D and H from the lowest-order nonlinear vacuum Lagrangian.
ConstitutiveFields constitutive_fields(const Vec3& E, const Vec3& B,
                                       double kappa_value = kappa());

}  // namespace vbir::qed
