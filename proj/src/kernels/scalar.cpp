#include "vbir/kernels.hpp"

namespace vbir::kernels::scalar {

void cmatvec(const cplx* m, std::size_t rows, std::size_t cols, const cplx* x, cplx* y) {
    for (std::size_t i = 0; i < rows; ++i) {
        const cplx* row = m + i * cols;
        double re = 0.0;
        double im = 0.0;
        for (std::size_t j = 0; j < cols; ++j) {
            re += row[j].real() * x[j].real() - row[j].imag() * x[j].imag();
            im += row[j].real() * x[j].imag() + row[j].imag() * x[j].real();
        }
        y[i] = {re, im};
    }
}

void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = {a[i].real() * b[i].real() - a[i].imag() * b[i].imag(),
                  a[i].real() * b[i].imag() + a[i].imag() * b[i].real()};
    }
}

MomentSums number_moments(const cplx* amps, std::size_t dim) {
    MomentSums s;
    for (std::size_t n0 = 0; n0 < dim; ++n0) {
        const cplx* row = amps + n0 * dim;
        double w = 0.0;
        double w1 = 0.0;
        double w11 = 0.0;
        for (std::size_t n1 = 0; n1 < dim; ++n1) {
            const double p = std::norm(row[n1]);
            const double k = static_cast<double>(n1);
            w += p;
            w1 += p * k;
            w11 += p * k * k;
        }
        const double k0 = static_cast<double>(n0);
        s.weight += w;
        s.n0 += k0 * w;
        s.n0_sq += k0 * k0 * w;
        s.n1 += w1;
        s.n1_sq += w11;
        s.n0_n1 += k0 * w1;
    }
    return s;
}

void quadrature_spectrum(double sqrt_p, double eta, double inv_gamma, const double* omega, double* anti,
                         double* sq, std::size_t n) {
    const double gain = 4.0 * eta * sqrt_p;
    const double lo = (1.0 - sqrt_p) * (1.0 - sqrt_p);
    const double hi = (1.0 + sqrt_p) * (1.0 + sqrt_p);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = omega[i] * inv_gamma;
        const double x2 = x * x;
        anti[i] = 1.0 + gain / (lo + x2);
        sq[i] = 1.0 - gain / (hi + x2);
    }
}

}  // namespace vbir::kernels::scalar
