#include "vbir/constants.hpp"

#include "vbir/errors.hpp"

#include <numbers>
#include "util.hpp"

namespace vbir::constants {

double photon_energy(double lambda, const PhysicalConstants& k) {
    if (!(lambda > 0.0)) {
        throw DomainError("photon_energy: wavelength must be positive, got " + detail::num(lambda));
    }
    return k.h * k.c / lambda;
}

double angular_frequency(double lambda, const PhysicalConstants& k) {
    if (!(lambda > 0.0)) {
        throw DomainError("angular_frequency: wavelength must be positive, got " + detail::num(lambda));
    }
    return 2.0 * std::numbers::pi * k.c / lambda;
}

}  // namespace vbir::constants
