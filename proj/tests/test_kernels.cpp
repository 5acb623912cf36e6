#include "vbir/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

using namespace vbir::kernels;
using doctest::Approx;

namespace {

std::vector<cplx> random_complex(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> d;
    std::vector<cplx> v(n);
    for (cplx& c : v) {
        c = {d(rng), d(rng)};
    }
    return v;
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("dispatch") {
    CHECK(supported(Backend::Scalar));
    CHECK(table(Backend::Scalar).backend == Backend::Scalar);
    CHECK(name(Backend::Scalar) == "scalar");
    if (supported(Backend::Avx2)) {
        CHECK(active().backend == Backend::Avx2);
    } else {
        CHECK_THROWS(table(Backend::Avx2));
    }
}

TEST_CASE("scalar reference against direct sums") {
    std::mt19937_64 rng(7);
    const std::size_t dim = 5;
    const std::vector<cplx> amps = random_complex(dim * dim, rng);
    double w = 0, n0 = 0, n1 = 0, n0n1 = 0;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            const double p = std::norm(amps[i * dim + j]);
            w += p;
            n0 += p * i;
            n1 += p * j;
            n0n1 += p * i * j;
        }
    }
    const MomentSums s = number_moments(amps, dim, table(Backend::Scalar));
    CHECK(s.weight == Approx(w).epsilon(1e-14));
    CHECK(s.n0 == Approx(n0).epsilon(1e-14));
    CHECK(s.n1 == Approx(n1).epsilon(1e-14));
    CHECK(s.n0_n1 == Approx(n0n1).epsilon(1e-14));

    const std::vector<cplx> m = random_complex(6, rng);  // 2 x 3
    const std::vector<cplx> x = random_complex(3, rng);
    std::vector<cplx> y(2);
    cmatvec(m, 2, 3, x, y, table(Backend::Scalar));
    CHECK(std::abs(y[0] - (m[0] * x[0] + m[1] * x[1] + m[2] * x[2])) < 1e-14);
    CHECK(std::abs(y[1] - (m[3] * x[0] + m[4] * x[1] + m[5] * x[2])) < 1e-14);
}

TEST_CASE("AVX2 kernels match the scalar reference") {
    if (!supported(Backend::Avx2)) {
        MESSAGE("AVX2 unavailable on this CPU; equivalence not exercised");
        return;
    }
    const KernelTable& s = table(Backend::Scalar);
    const KernelTable& v = table(Backend::Avx2);
    std::mt19937_64 rng(2024);

    for (std::size_t rows : {1u, 2u, 3u, 7u, 16u, 41u}) {
        for (std::size_t cols : {1u, 2u, 5u, 8u, 41u}) {
            const std::vector<cplx> m = random_complex(rows * cols, rng);
            const std::vector<cplx> x = random_complex(cols, rng);
            std::vector<cplx> ys(rows), yv(rows);
            s.cmatvec(m.data(), rows, cols, x.data(), ys.data());
            v.cmatvec(m.data(), rows, cols, x.data(), yv.data());
            CHECK(max_abs_diff(ys, yv) < 1e-12);
        }
    }
    for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 17u, 100u}) {
        const std::vector<cplx> a = random_complex(n, rng);
        const std::vector<cplx> b = random_complex(n, rng);
        std::vector<cplx> os(n), ov(n);
        s.cmul(a.data(), b.data(), os.data(), n);
        v.cmul(a.data(), b.data(), ov.data(), n);
        CHECK(max_abs_diff(os, ov) < 1e-14);
    }
    for (std::size_t dim : {1u, 2u, 3u, 4u, 5u, 11u, 41u, 64u}) {
        const std::vector<cplx> amps = random_complex(dim * dim, rng);
        const MomentSums a = s.number_moments(amps.data(), dim);
        const MomentSums b = v.number_moments(amps.data(), dim);
        CHECK(b.weight == Approx(a.weight).epsilon(1e-13));
        CHECK(b.n0 == Approx(a.n0).epsilon(1e-13));
        CHECK(b.n0_sq == Approx(a.n0_sq).epsilon(1e-13));
        CHECK(b.n1 == Approx(a.n1).epsilon(1e-13));
        CHECK(b.n1_sq == Approx(a.n1_sq).epsilon(1e-13));
        CHECK(b.n0_n1 == Approx(a.n0_n1).epsilon(1e-13));
    }
    for (std::size_t n : {1u, 3u, 4u, 9u, 100u}) {
        std::vector<double> omega(n);
        for (std::size_t i = 0; i < n; ++i) {
            omega[i] = 1e6 * static_cast<double>(i) * 3.3;
        }
        std::vector<double> as(n), ss(n), av(n), sv(n);
        s.quadrature_spectrum(std::sqrt(0.7), 0.8, 1.0 / 3e7, omega.data(), as.data(), ss.data(), n);
        v.quadrature_spectrum(std::sqrt(0.7), 0.8, 1.0 / 3e7, omega.data(), av.data(), sv.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(av[i] == Approx(as[i]).epsilon(1e-14));
            CHECK(sv[i] == Approx(ss[i]).epsilon(1e-14));
        }
    }
}

}
