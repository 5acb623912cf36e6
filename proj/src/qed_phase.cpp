#include "vbir/qed_phase.hpp"

#include "util.hpp"
#include "vbir/errors.hpp"

#include <cmath>
#include <numbers>

namespace vbir::qed {

namespace {

using constants::codata2018;

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) {
        throw DomainError(std::string(what) + " must be positive, got " + vbir::detail::num(v));
    }
}

}  // namespace

void PumpLaser::validate() const {
    require_positive(field, "pump field E_L");
    require_positive(wavelength, "pump wavelength");
    require_positive(waist, "pump waist");
    require_positive(pulse_duration, "pump pulse duration");
    if (field >= constants::schwinger_field()) {
        throw FieldValidityError("pump field " + vbir::detail::num(field) + " V/m reaches the Schwinger field " +
                                 vbir::detail::num(constants::schwinger_field()) + " V/m");
    }
}

void ProbeBeam::validate() const {
    require_positive(wavelength, "probe wavelength");
    require_positive(power, "probe power");
    if (mode == ProbeMode::Pulsed) {
        require_positive(pulse_duration, "pulsed probe duration");
        if (spectral_width < 0.0) {
            throw DomainError("probe spectral width must be non-negative");
        }
    }
}

BeamGeometry rayleigh_distance(double waist, double wavelength) {
    require_positive(waist, "waist");
    require_positive(wavelength, "wavelength");
    const double z_r = std::numbers::pi * waist * waist / wavelength;
    return {z_r, 2.0 * z_r};
}

RefractionIndices refraction_indices(double field) {
    if (field < 0.0) {
        throw DomainError("refraction_indices: field magnitude must be non-negative");
    }
    if (field >= constants::schwinger_field()) {
        throw FieldValidityError("refraction_indices: field " + vbir::detail::num(field) +
                                 " V/m is not below the Schwinger field");
    }
    // Counter-propagating plane wave: B_L = E_L / c, so (E + cB)^2 = 4 E^2.
    const double b = field / codata2018.c;
    const double s = field + codata2018.c * b;
    const double xi = constants::xi_constant();
    const double par = 2.0 * xi * s * s;
    const double perp = 3.5 * xi * s * s;
    return {1.0 + par, 1.0 + perp, par, perp};
}

PhaseShifts qed_phase_shift(const PumpLaser& pump, double probe_wavelength) {
    pump.validate();
    require_positive(probe_wavelength, "probe wavelength");
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double base = 8.0 * pi2 * pump.waist * pump.waist * constants::xi_constant() /
                        (probe_wavelength * pump.wavelength) * pump.field * pump.field;
    return {4.0 * base, 7.0 * base};
}

double qed_phase_shift(const PumpLaser& pump, const ProbeBeam& probe) {
    probe.validate();
    return qed_phase_shift(pump, probe.wavelength)[probe.polarization];
}

PhaseShifts qed_phase_shift_via_index(const PumpLaser& pump, double probe_wavelength) {
    pump.validate();
    const double omega = constants::angular_frequency(probe_wavelength);
    const BeamGeometry g = rayleigh_distance(pump.waist, pump.wavelength);
    const RefractionIndices n = refraction_indices(pump.field);
    const double k = omega * g.depth_of_focus / codata2018.c;
    return {k * n.parallel_excess, k * n.perpendicular_excess};
}

Invariants relativistic_invariants(const Vec3& E, const Vec3& B) {
    const double c = codata2018.c;
    const double eps0 = codata2018.eps0;
    return {0.5 * eps0 * (dot(E, E) - c * c * dot(B, B)),
            std::sqrt(eps0 / codata2018.mu0()) * dot(E, B)};
}

ConstitutiveFields constitutive_fields(const Vec3& E, const Vec3& B, double kappa_value) {
    const double c = codata2018.c;
    const double eps0 = codata2018.eps0;
    const double mu0 = codata2018.mu0();
    const auto [F, G] = relativistic_invariants(E, B);
    const double scale = 1.0 + 4.0 * kappa_value * F;
    const double cross = 14.0 * eps0 * c * kappa_value * G;
    ConstitutiveFields out{};
    for (int i = 0; i < 3; ++i) {
        out.D[i] = eps0 * scale * E[i] + cross * B[i];
        out.H[i] = scale * B[i] / mu0 - cross * E[i];
    }
    return out;
}

}  // namespace vbir::qed
