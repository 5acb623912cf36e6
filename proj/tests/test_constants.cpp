#include "vbir/constants.hpp"
#include "vbir/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace vbir::constants;
using doctest::Approx;

TEST_SUITE("constants") {

TEST_CASE("stored values are consistent") {
    const auto& k = codata2018;
    CHECK(k.h == Approx(2.0 * std::numbers::pi * k.hbar).epsilon(1e-15));
    for (double v : {k.hbar, k.h, k.e, k.m_e, k.eps0, k.c}) {
        CHECK(v > 0.0);
    }
}

TEST_CASE("fine-structure constant") {
    CHECK(fine_structure_constant() == Approx(7.2973525693e-3).epsilon(1e-9));
    CHECK(1.0 / fine_structure_constant() == Approx(137.0).epsilon(2e-3));
    auto k = codata2018;
    k.e *= 2.0;
    CHECK(fine_structure_constant(k) == Approx(4.0 * fine_structure_constant()).epsilon(1e-14));
}

TEST_CASE("Schwinger field") {
    CHECK(schwinger_field() == Approx(1.3233e18).epsilon(1e-3));
    auto k = codata2018;
    k.m_e *= 0.5;
    CHECK(schwinger_field(k) == Approx(schwinger_field() / 4.0).epsilon(1e-14));
}

TEST_CASE("birefringence coefficient") {
    CHECK(xi_constant() == Approx(xi_from_alpha()).epsilon(1e-12));
    // hbar e^4 / (180 pi eps0 m^4 c^7) evaluated by hand from the CODATA table
    CHECK(xi_constant() == Approx(9.2607e-41).epsilon(1e-4));
    auto k = codata2018;
    k.c *= 2.0;
    CHECK(xi_constant(k) == Approx(xi_constant() / 128.0).epsilon(1e-14));
}

TEST_CASE("photon energy") {
    CHECK(photon_energy(532e-9) == Approx(3.7336e-19).epsilon(1e-4));
    CHECK(photon_energy(1064e-9) == Approx(photon_energy(532e-9) / 2.0).epsilon(1e-15));
    CHECK(angular_frequency(532e-9) == Approx(2.0 * std::numbers::pi * codata2018.c / 532e-9).epsilon(1e-15));
    CHECK_THROWS_AS(photon_energy(0.0), vbir::DomainError);
    CHECK_THROWS_AS(photon_energy(-1e-9), vbir::DomainError);
    CHECK_THROWS_AS(angular_frequency(0.0), vbir::DomainError);
}

}
