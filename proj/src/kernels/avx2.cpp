// Compiled with -mavx2 -mfma. Only reached through the dispatch table after a
// runtime CPU check, so nothing here may be inlined into portable code.

#include "vbir/kernels.hpp"

#include <immintrin.h>

namespace vbir::kernels::avx2 {

namespace {

inline double hsum_re(__m256d v) {
    // [re0 im0 re1 im1] -> re0 + re1
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    return _mm_cvtsd_f64(_mm_add_pd(lo, hi));
}

inline double hsum_im(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    return _mm_cvtsd_f64(_mm_unpackhi_pd(_mm_add_pd(lo, hi), _mm_add_pd(lo, hi)));
}

inline double hsum4(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void cmatvec(const cplx* m, std::size_t rows, std::size_t cols, const cplx* x, cplx* y) {
    const double* xd = reinterpret_cast<const double*>(x);
    const std::size_t pairs = cols / 2;
    for (std::size_t i = 0; i < rows; ++i) {
        const double* row = reinterpret_cast<const double*>(m + i * cols);
        __m256d acc_r = _mm256_setzero_pd();
        __m256d acc_i = _mm256_setzero_pd();
        for (std::size_t j = 0; j < pairs; ++j) {
            const __m256d mv = _mm256_loadu_pd(row + 4 * j);
            const __m256d xv = _mm256_loadu_pd(xd + 4 * j);
            const __m256d xr = _mm256_movedup_pd(xv);
            const __m256d xi = _mm256_permute_pd(xv, 0b1111);
            const __m256d ms = _mm256_permute_pd(mv, 0b0101);
            acc_r = _mm256_fmadd_pd(mv, xr, acc_r);
            acc_i = _mm256_fmadd_pd(ms, xi, acc_i);
        }
        const __m256d acc = _mm256_addsub_pd(acc_r, acc_i);
        double re = hsum_re(acc);
        double im = hsum_im(acc);
        if (cols % 2 != 0) {
            const cplx a = m[i * cols + cols - 1];
            const cplx b = x[cols - 1];
            re += a.real() * b.real() - a.imag() * b.imag();
            im += a.real() * b.imag() + a.imag() * b.real();
        }
        y[i] = {re, im};
    }
}

void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
    const double* ad = reinterpret_cast<const double*>(a);
    const double* bd = reinterpret_cast<const double*>(b);
    double* od = reinterpret_cast<double*>(out);
    const std::size_t pairs = n / 2;
    for (std::size_t j = 0; j < pairs; ++j) {
        const __m256d av = _mm256_loadu_pd(ad + 4 * j);
        const __m256d bv = _mm256_loadu_pd(bd + 4 * j);
        const __m256d br = _mm256_movedup_pd(bv);
        const __m256d bi = _mm256_permute_pd(bv, 0b1111);
        const __m256d as = _mm256_permute_pd(av, 0b0101);
        _mm256_storeu_pd(od + 4 * j, _mm256_fmaddsub_pd(av, br, _mm256_mul_pd(as, bi)));
    }
    if (n % 2 != 0) {
        const std::size_t k = n - 1;
        out[k] = {a[k].real() * b[k].real() - a[k].imag() * b[k].imag(),
                  a[k].real() * b[k].imag() + a[k].imag() * b[k].real()};
    }
}

MomentSums number_moments(const cplx* amps, std::size_t dim) {
    MomentSums s;
    const std::size_t quads = dim / 4;
    for (std::size_t n0 = 0; n0 < dim; ++n0) {
        const double* row = reinterpret_cast<const double*>(amps + n0 * dim);
        __m256d w = _mm256_setzero_pd();
        __m256d w1 = _mm256_setzero_pd();
        __m256d w11 = _mm256_setzero_pd();
        // hadd interleaves the two loads, so lanes hold indices k, k+2, k+1, k+3.
        __m256d k = _mm256_setr_pd(0.0, 2.0, 1.0, 3.0);
        const __m256d step = _mm256_set1_pd(4.0);
        for (std::size_t q = 0; q < quads; ++q) {
            const __m256d v0 = _mm256_loadu_pd(row + 8 * q);
            const __m256d v1 = _mm256_loadu_pd(row + 8 * q + 4);
            const __m256d p = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
            w = _mm256_add_pd(w, p);
            const __m256d pk = _mm256_mul_pd(p, k);
            w1 = _mm256_add_pd(w1, pk);
            w11 = _mm256_fmadd_pd(pk, k, w11);
            k = _mm256_add_pd(k, step);
        }
        double ws = hsum4(w);
        double w1s = hsum4(w1);
        double w11s = hsum4(w11);
        const cplx* crow = amps + n0 * dim;
        for (std::size_t n1 = 4 * quads; n1 < dim; ++n1) {
            const double p = std::norm(crow[n1]);
            const double kk = static_cast<double>(n1);
            ws += p;
            w1s += p * kk;
            w11s += p * kk * kk;
        }
        const double k0 = static_cast<double>(n0);
        s.weight += ws;
        s.n0 += k0 * ws;
        s.n0_sq += k0 * k0 * ws;
        s.n1 += w1s;
        s.n1_sq += w11s;
        s.n0_n1 += k0 * w1s;
    }
    return s;
}

void quadrature_spectrum(double sqrt_p, double eta, double inv_gamma, const double* omega, double* anti,
                         double* sq, std::size_t n) {
    const double gain_s = 4.0 * eta * sqrt_p;
    const double lo_s = (1.0 - sqrt_p) * (1.0 - sqrt_p);
    const double hi_s = (1.0 + sqrt_p) * (1.0 + sqrt_p);
    const __m256d gain = _mm256_set1_pd(gain_s);
    const __m256d lo = _mm256_set1_pd(lo_s);
    const __m256d hi = _mm256_set1_pd(hi_s);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d ig = _mm256_set1_pd(inv_gamma);
    const std::size_t quads = n / 4;
    for (std::size_t q = 0; q < quads; ++q) {
        const __m256d x = _mm256_mul_pd(_mm256_loadu_pd(omega + 4 * q), ig);
        const __m256d x2 = _mm256_mul_pd(x, x);
        _mm256_storeu_pd(anti + 4 * q, _mm256_add_pd(one, _mm256_div_pd(gain, _mm256_add_pd(lo, x2))));
        _mm256_storeu_pd(sq + 4 * q, _mm256_sub_pd(one, _mm256_div_pd(gain, _mm256_add_pd(hi, x2))));
    }
    for (std::size_t i = 4 * quads; i < n; ++i) {
        const double x = omega[i] * inv_gamma;
        anti[i] = 1.0 + gain_s / (lo_s + x * x);
        sq[i] = 1.0 - gain_s / (hi_s + x * x);
    }
}

}  // namespace vbir::kernels::avx2
