#pragma once

// Data-parallel inner loops shared by the Fock oracle and the spectrum sweeps.
// Every kernel has a scalar reference and, on x86-64, an AVX2/FMA variant.
// The best supported variant is picked once at startup.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace vbir::kernels {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2 };

/// Raw probability-weighted photon-number sums over a square (n0, n1) grid.
struct MomentSums {
    double weight = 0.0;  ///< sum |psi|^2
    double n0 = 0.0;
    double n0_sq = 0.0;
    double n1 = 0.0;
    double n1_sq = 0.0;
    double n0_n1 = 0.0;
};

struct KernelTable {
    Backend backend;
    /// y = M x, M row-major rows x cols.
    void (*cmatvec)(const cplx* m, std::size_t rows, std::size_t cols, const cplx* x, cplx* y);
    /// out[i] = a[i] * b[i]
    void (*cmul)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
    /// amps laid out as amps[n0 * dim + n1], dim x dim.
    MomentSums (*number_moments)(const cplx* amps, std::size_t dim);
    /// OPA quadrature spectrum, see sensitivity::quadrature_variance_spectrum.
    void (*quadrature_spectrum)(double sqrt_p, double eta, double inv_gamma, const double* omega,
                                double* anti, double* sq, std::size_t n);
};

bool supported(Backend b);
/// Throws std::runtime_error if `b` is not supported on this CPU/build.
const KernelTable& table(Backend b);
/// Best supported table, chosen once.
const KernelTable& active();
std::string_view name(Backend b);

// Span wrappers over the active table.
void cmatvec(std::span<const cplx> m, std::size_t rows, std::size_t cols, std::span<const cplx> x,
             std::span<cplx> y, const KernelTable& k = active());
void cmul(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out,
          const KernelTable& k = active());
MomentSums number_moments(std::span<const cplx> amps, std::size_t dim, const KernelTable& k = active());

namespace scalar {
void cmatvec(const cplx* m, std::size_t rows, std::size_t cols, const cplx* x, cplx* y);
void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n);
MomentSums number_moments(const cplx* amps, std::size_t dim);
void quadrature_spectrum(double sqrt_p, double eta, double inv_gamma, const double* omega, double* anti,
                         double* sq, std::size_t n);
}  // namespace scalar

namespace avx2 {
void cmatvec(const cplx* m, std::size_t rows, std::size_t cols, const cplx* x, cplx* y);
void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n);
MomentSums number_moments(const cplx* amps, std::size_t dim);
void quadrature_spectrum(double sqrt_p, double eta, double inv_gamma, const double* omega, double* anti,
                         double* sq, std::size_t n);
}  // namespace avx2

}  // namespace vbir::kernels
