#include "vbir/errors.hpp"
#include "vbir/fock_oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace vbir;
using namespace vbir::fock;
using sensitivity::DetectionScheme;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

double mean_n(const FockVector& v) {
    double w = 0.0, m = 0.0;
    for (std::size_t n = 0; n < v.amplitudes.size(); ++n) {
        w += std::norm(v.amplitudes[n]);
        m += n * std::norm(v.amplitudes[n]);
    }
    return m / w;
}

double var_n(const FockVector& v) {
    const double m = mean_n(v);
    double w = 0.0, s = 0.0;
    for (std::size_t n = 0; n < v.amplitudes.size(); ++n) {
        w += std::norm(v.amplitudes[n]);
        s += (n - m) * (n - m) * std::norm(v.amplitudes[n]);
    }
    return s / w;
}

// <a_k> on a two-mode state
cplx lowering(const TwoModeFockState& s, int mode) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        for (std::size_t j = 0; j < s.dim(); ++j) {
            if (mode == 0 && i >= 1) {
                acc += std::conj(s(i - 1, j)) * std::sqrt(double(i)) * s(i, j);
            } else if (mode == 1 && j >= 1) {
                acc += std::conj(s(i, j - 1)) * std::sqrt(double(j)) * s(i, j);
            }
        }
    }
    return acc;
}

TwoModeFockState vacuum(std::size_t n_max) {
    return TwoModeFockState::product(coherent_fock(0.0, n_max), coherent_fock(0.0, n_max));
}

}  // namespace

TEST_SUITE("fock_oracle") {

TEST_CASE("coherent state") {
    const FockVector vac = coherent_fock(0.0, 10);
    CHECK(vac.amplitudes[0] == cplx(1.0));
    for (std::size_t n = 1; n <= 10; ++n) {
        CHECK(vac.amplitudes[n] == cplx(0.0));
    }
    const FockVector c = coherent_fock(2.0, 40);
    CHECK(mean_n(c) == Approx(4.0).epsilon(1e-10));
    CHECK(var_n(c) == Approx(4.0).epsilon(1e-10));
    CHECK(c.norm_deficit < 1e-12);
}

TEST_CASE("squeezed vacuum against the closed series") {
    const FockVector vac = squeezed_vacuum_fock(0.0, 20);
    CHECK(std::abs(vac.amplitudes[0] - 1.0) < 1e-15);
    for (double r : {0.3, 0.5, 1.0}) {
        const FockVector v = squeezed_vacuum_fock(r, 60);
        const double t = -std::tanh(r);
        // c_2m = (-tanh r)^m sqrt((2m)!) / (2^m m!) / sqrt(cosh r), built by recurrence
        double c = 1.0 / std::sqrt(std::cosh(r));
        for (std::size_t m = 0; 2 * m <= 60; ++m) {
            CHECK(std::abs(v.amplitudes[2 * m] - c) < 1e-12);
            if (2 * m + 1 <= 60) {
                CHECK(std::abs(v.amplitudes[2 * m + 1]) < 1e-12);
            }
            c *= t * std::sqrt((2.0 * m + 1) * (2.0 * m + 2)) / (2.0 * (m + 1));
        }
    }
    const FockVector half = squeezed_vacuum_fock(0.5, 40);
    CHECK(mean_n(half) == Approx(std::sinh(0.5) * std::sinh(0.5)).epsilon(1e-8));
    CHECK_THROWS_AS(squeezed_vacuum_fock(-0.1, 10), DomainError);
}

TEST_CASE("squeezed coherent state") {
    const cplx alpha{1.2, -0.4};
    const double r = 0.4;
    const FockVector v = squeezed_coherent_fock(alpha, r, 50);
    cplx a = 0.0;
    for (std::size_t n = 1; n < v.amplitudes.size(); ++n) {
        a += std::conj(v.amplitudes[n - 1]) * std::sqrt(double(n)) * v.amplitudes[n];
    }
    CHECK(std::abs(a - alpha) < 1e-10);
    CHECK(mean_n(v) == Approx(std::norm(alpha) + std::sinh(r) * std::sinh(r)).epsilon(1e-10));
}

TEST_CASE("truncation tail") {
    CHECK(truncation_error(coherent_fock(0.0, 40)) == 0.0);
    CHECK(truncation_error(vacuum(40)) == 0.0);
    CHECK(truncation_error(coherent_fock(2.0, 40)) < 1e-12);
    CHECK(truncation_error(coherent_fock(6.0, 40)) > 1e-10);
    const auto spec = sensitivity::CoherentSqueezedVacuum{3.0, 0.0, 1.0};
    CHECK(truncation_error(build_input_state(spec, 40)) > 1e-10);
    const std::size_t n = recommended_n_max(spec);
    CHECK(n > 40);
    CHECK(truncation_error(build_input_state(spec, n)) <= 1e-10);
}

TEST_CASE("interferometer port convention on coherent inputs") {
    // <a_out> = i e^{i phi/2} W <a_in>, W = [[-sin(phi/2), cos(phi/2)], [cos(phi/2), sin(phi/2)]]
    const cplx b0{0.3, 0.1};
    const cplx b1{0.5, -0.2};
    const auto in = TwoModeFockState::product(coherent_fock(b0, 30), coherent_fock(b1, 30));
    const MachZehnder mzi(30);
    for (double phi : {0.0, 0.7, pi / 2, 2.5, pi}) {
        const TwoModeFockState out = mzi.output_state(in, phi);
        const double s = std::sin(phi / 2);
        const double c = std::cos(phi / 2);
        const cplx pre = cplx(0, 1) * std::polar(1.0, phi / 2);
        CHECK(std::abs(lowering(out, 0) - pre * (-s * b0 + c * b1)) < 1e-12);
        CHECK(std::abs(lowering(out, 1) - pre * (c * b0 + s * b1)) < 1e-12);
    }
}

TEST_CASE("interferometer basics") {
    const MachZehnder mzi(12);
    const TwoModeFockState vac = mzi.output_state(vacuum(12), 1.1);
    CHECK(std::abs(vac(0, 0)) == Approx(1.0).epsilon(1e-14));
    CHECK(vac.norm() == Approx(1.0).epsilon(1e-14));

    TwoModeFockState one(12);
    one(0, 1) = 1.0;
    const TwoModeFockState swapped = mzi.output_state(one, pi);
    CHECK(std::norm(swapped(0, 1)) == Approx(1.0).epsilon(1e-14));
    CHECK(std::norm(swapped(1, 0)) < 1e-28);

    CHECK_THROWS_AS(mzi.output_state(vacuum(11), 0.0), std::invalid_argument);
}

TEST_CASE("norm and energy conservation") {
    const auto in = build_input_state(sensitivity::CoherentSqueezedVacuum{2.0, 0.4, 0.5}, 40).normalized();
    CHECK(in.norm() == Approx(1.0).epsilon(1e-12));
    const PhotonNumbers before = photon_numbers(in);
    const double tail = truncation_error(in);
    const MachZehnder mzi(40);
    for (double phi = 0.0; phi < 2 * pi; phi += 0.6) {
        const TwoModeFockState out = mzi.output_state(in, phi);
        CHECK(std::abs(out.norm() - 1.0) < 1e-12 + tail);
        const PhotonNumbers after = photon_numbers(out);
        CHECK(after.mode0 + after.mode1 == Approx(before.mode0 + before.mode1).epsilon(1e-10));
    }
}

TEST_CASE("photon statistics against the closed moments") {
    const MachZehnder mzi(40);
    SUBCASE("coherent light splits as cos^2(phi/2)") {
        const auto in = build_input_state(sensitivity::Coherent{2.0, 0.0}, 40);
        for (double phi : {0.0, 0.9, 2.2}) {
            const ObservableStats n4 = observable_stats(mzi.output_state(in, phi), Observable::Port4);
            CHECK(n4.mean == Approx(4.0 * std::cos(phi / 2) * std::cos(phi / 2)).epsilon(1e-10));
        }
        const ObservableStats d = observable_stats(mzi.output_state(in, pi / 2), Observable::Difference);
        CHECK(std::abs(d.mean) < 1e-8);
        CHECK(d.variance == Approx(4.0).epsilon(1e-8));
    }
    SUBCASE("squeezed difference readout at pi/3") {
        const auto in = build_input_state(sensitivity::CoherentSqueezedVacuum{2.0, 0.0, 0.5}, 40);
        const ObservableStats d = observable_stats(mzi.output_state(in, pi / 3), Observable::Difference);
        const sensitivity::Moments m = sensitivity::csv_moments(2.0, 0.0, 0.5, pi / 3, DetectionScheme::Difference);
        CHECK(d.mean == Approx(m.mean).epsilon(1e-6));
        CHECK(d.variance == Approx(m.variance).epsilon(1e-6));
    }
    SUBCASE("vacuum") {
        const ObservableStats d = observable_stats(mzi.output_state(vacuum(40), 0.8), Observable::Difference);
        CHECK(std::abs(d.mean) < 1e-14);
        CHECK(std::abs(d.variance) < 1e-14);
    }
}

TEST_CASE("variance profile in the coherent phase") {
    // Var(theta) - Var(0) carries the whole theta dependence through (1 - cos 2 theta)
    const MachZehnder mzi(40);
    const double phi = 1.2;
    for (auto obs : {Observable::Difference, Observable::Port4}) {
        const auto scheme = obs == Observable::Difference ? DetectionScheme::Difference : DetectionScheme::SingleDetector;
        const double v0 = observable_stats(
            mzi.output_state(build_input_state(sensitivity::CoherentSqueezedVacuum{2.0, 0.0, 0.5}, 40), phi), obs).variance;
        const double vh = observable_stats(
            mzi.output_state(build_input_state(sensitivity::CoherentSqueezedVacuum{2.0, pi / 2, 0.5}, 40), phi), obs).variance;
        for (double theta : {0.2, pi / 4, 1.0, 2.5}) {
            const double v = observable_stats(
                mzi.output_state(build_input_state(sensitivity::CoherentSqueezedVacuum{2.0, theta, 0.5}, 40), phi),
                obs).variance;
            const double shape = 0.5 * (1.0 - std::cos(2.0 * theta));
            CHECK(v - v0 == Approx(shape * (vh - v0)).epsilon(1e-6));
            CHECK(v == Approx(sensitivity::csv_moments(2.0, theta, 0.5, phi, scheme).variance).epsilon(1e-6));
        }
    }
}

TEST_CASE("numeric sensitivity") {
    const Oracle oracle;
    const OracleReport quad = oracle.numeric_sensitivity(sensitivity::Coherent{2.0, 0.0}, pi / 2, DetectionScheme::Difference);
    CHECK_FALSE(quad.gated);
    CHECK(quad.numeric_sensitivity == Approx(0.5).epsilon(5e-3));
    CHECK(quad.relative_error == Approx(std::abs(quad.numeric_sensitivity - 0.5) / 0.5).epsilon(1e-12));

    const OracleReport dark = oracle.numeric_sensitivity(sensitivity::Coherent{2.0, 0.0}, pi, DetectionScheme::SingleDetector);
    CHECK(dark.limit_offset.has_value());
    CHECK(dark.numeric_sensitivity == Approx(0.5).epsilon(5e-3));

    const double phi = sensitivity::csv_optimal_phase(2.0, 0.5).phase;
    const OracleReport opt = oracle.numeric_sensitivity(sensitivity::CoherentSqueezedVacuum{2.0, 0.0, 0.5}, phi,
                                                        DetectionScheme::SingleDetector);
    CHECK(opt.numeric_sensitivity == Approx(sensitivity::csv_single_detector_optimum(2.0, 0.5)).epsilon(1e-2));

    const OracleReport csv = oracle.numeric_sensitivity(sensitivity::CoherentSqueezedVacuum{2.0, 0.0, 0.5}, pi / 2,
                                                        DetectionScheme::Difference);
    CHECK(csv.relative_error < 1e-2);

    const OracleReport gated = oracle.numeric_sensitivity(sensitivity::Coherent{6.0, 0.0}, pi / 2, DetectionScheme::Difference);
    CHECK(gated.gated);
    CHECK(gated.truncation_tail > 1e-10);

    CHECK_THROWS_AS(oracle.numeric_sensitivity(sensitivity::DualSqueezedCoherent{1.0, 0.3}, 1.0,
                                               DetectionScheme::Difference), DomainError);
    CHECK_THROWS_AS(oracle.numeric_sensitivity(sensitivity::Coherent{2.0, 0.0}, pi, DetectionScheme::Difference),
                    DivergenceError);
}

TEST_CASE("oracle results do not depend on the kernel backend") {
    if (!kernels::supported(kernels::Backend::Avx2)) {
        MESSAGE("AVX2 unavailable; only the scalar backend exists");
        return;
    }
    const Oracle scalar({}, kernels::table(kernels::Backend::Scalar));
    const Oracle simd({}, kernels::table(kernels::Backend::Avx2));
    for (double phi : {0.7, 1.9}) {
        for (auto s : {DetectionScheme::Difference, DetectionScheme::SingleDetector}) {
            const auto spec = sensitivity::CoherentSqueezedVacuum{1.5, pi / 4, 0.3};
            const OracleReport a = scalar.numeric_sensitivity(spec, phi, s);
            const OracleReport b = simd.numeric_sensitivity(spec, phi, s);
            CHECK(b.mean == Approx(a.mean).epsilon(1e-12));
            CHECK(b.variance == Approx(a.variance).epsilon(1e-12));
            CHECK(b.numeric_sensitivity == Approx(a.numeric_sensitivity).epsilon(1e-8));
        }
    }
}

}
