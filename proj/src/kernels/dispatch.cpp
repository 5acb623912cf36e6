#include "vbir/kernels.hpp"

#include <stdexcept>
#include <string>

namespace vbir::kernels {

namespace {

constexpr KernelTable kScalar{Backend::Scalar, scalar::cmatvec, scalar::cmul, scalar::number_moments,
                              scalar::quadrature_spectrum};

#if defined(VBIR_HAVE_AVX2_TU)
constexpr KernelTable kAvx2{Backend::Avx2, avx2::cmatvec, avx2::cmul, avx2::number_moments,
                            avx2::quadrature_spectrum};
#endif

bool cpu_has_avx2() {
#if defined(VBIR_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

void check_len(bool ok, const char* what) {
    if (!ok) {
        throw std::invalid_argument(std::string("kernels: size mismatch in ") + what);
    }
}

}  // namespace

bool supported(Backend b) {
    switch (b) {
        case Backend::Scalar:
            return true;
        case Backend::Avx2: {
            static const bool ok = cpu_has_avx2();
            return ok;
        }
    }
    return false;
}

const KernelTable& table(Backend b) {
    if (!supported(b)) {
        throw std::runtime_error("kernel backend '" + std::string(name(b)) + "' not supported here");
    }
#if defined(VBIR_HAVE_AVX2_TU)
    if (b == Backend::Avx2) {
        return kAvx2;
    }
#endif
    return kScalar;
}

const KernelTable& active() {
    static const KernelTable& best = supported(Backend::Avx2) ? table(Backend::Avx2) : kScalar;
    return best;
}

std::string_view name(Backend b) {
    switch (b) {
        case Backend::Scalar:
            return "scalar";
        case Backend::Avx2:
            return "avx2";
    }
    return "unknown";
}

void cmatvec(std::span<const cplx> m, std::size_t rows, std::size_t cols, std::span<const cplx> x,
             std::span<cplx> y, const KernelTable& k) {
    check_len(m.size() >= rows * cols && x.size() >= cols && y.size() >= rows, "cmatvec");
    k.cmatvec(m.data(), rows, cols, x.data(), y.data());
}

void cmul(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out, const KernelTable& k) {
    check_len(a.size() == b.size() && out.size() == a.size(), "cmul");
    k.cmul(a.data(), b.data(), out.data(), a.size());
}

MomentSums number_moments(std::span<const cplx> amps, std::size_t dim, const KernelTable& k) {
    check_len(amps.size() == dim * dim, "number_moments");
    return k.number_moments(amps.data(), dim);
}

}  // namespace vbir::kernels
