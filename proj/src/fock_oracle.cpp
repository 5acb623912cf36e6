#include "vbir/fock_oracle.hpp"

#include "util.hpp"
#include "vbir/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace vbir::fock {

namespace {

using sensitivity::DetectionScheme;
using Vec = std::vector<cplx>;

double sq_norm(const Vec& v) {
    double s = 0.0;
    for (const cplx& c : v) {
        s += std::norm(c);
    }
    return s;
}

// v <- exp(G) v for a bounded generator G applied by `apply`.
template <class Apply>
void exp_apply(Apply&& apply, double norm_bound, Vec& v) {
    const int steps = std::max(1, static_cast<int>(std::ceil(norm_bound)));
    const double dt = 1.0 / steps;
    Vec term(v.size());
    Vec next(v.size());
    for (int s = 0; s < steps; ++s) {
        Vec acc = v;
        term = v;
        for (int k = 1; k < 80; ++k) {
            apply(term, next);
            const double f = dt / k;
            for (std::size_t i = 0; i < v.size(); ++i) {
                term[i] = next[i] * f;
                acc[i] += term[i];
            }
            if (sq_norm(term) < 1e-36 * sq_norm(acc)) {
                break;
            }
        }
        v.swap(acc);
    }
}

std::size_t padded_dim(std::size_t n_max) { return std::max(2 * (n_max + 1), n_max + 1 + 64); }

// Cuts a padded vector back to n_max, recording the lost weight.
FockVector truncate(Vec v, std::size_t n_max) {
    const double total = sq_norm(v);
    v.resize(n_max + 1);
    FockVector out{std::move(v), 0.0};
    out.norm_deficit = std::max(0.0, total - sq_norm(out.amplitudes));
    return out;
}

void apply_squeeze_generator(double r, const Vec& x, Vec& y) {
    // G = r/2 (a^2 - a^dagger^2)
    const std::size_t d = x.size();
    for (std::size_t n = 0; n < d; ++n) {
        cplx acc = 0.0;
        if (n + 2 < d) {
            acc += std::sqrt(static_cast<double>((n + 1) * (n + 2))) * x[n + 2];
        }
        if (n >= 2) {
            acc -= std::sqrt(static_cast<double>(n * (n - 1))) * x[n - 2];
        }
        y[n] = 0.5 * r * acc;
    }
}

void apply_displacement_generator(cplx alpha, const Vec& x, Vec& y) {
    // G = alpha a^dagger - alpha^* a
    const std::size_t d = x.size();
    for (std::size_t n = 0; n < d; ++n) {
        cplx acc = 0.0;
        if (n >= 1) {
            acc += alpha * std::sqrt(static_cast<double>(n)) * x[n - 1];
        }
        if (n + 1 < d) {
            acc -= std::conj(alpha) * std::sqrt(static_cast<double>(n + 1)) * x[n + 1];
        }
        y[n] = acc;
    }
}

Vec squeezed_padded(double r, std::size_t d) {
    Vec v(d, 0.0);
    v[0] = 1.0;
    if (r != 0.0) {
        exp_apply([r](const Vec& x, Vec& y) { apply_squeeze_generator(r, x, y); },
                  std::abs(r) * static_cast<double>(d), v);
    }
    return v;
}

std::size_t top_cut(std::size_t n_max) {
    const std::size_t k = std::max<std::size_t>(1, (n_max + 1) / 10);
    return n_max + 1 - k;
}

}  // namespace

FockVector coherent_fock(cplx alpha, std::size_t n_max) {
    Vec v(n_max + 1);
    v[0] = std::exp(-0.5 * std::norm(alpha));
    for (std::size_t n = 1; n <= n_max; ++n) {
        v[n] = v[n - 1] * alpha / std::sqrt(static_cast<double>(n));
    }
    FockVector out{std::move(v), 0.0};
    out.norm_deficit = std::max(0.0, 1.0 - sq_norm(out.amplitudes));
    return out;
}

FockVector squeezed_vacuum_fock(double r, std::size_t n_max) {
    if (r < 0.0) {
        throw DomainError("squeezed_vacuum_fock: r must be non-negative");
    }
    return truncate(squeezed_padded(r, padded_dim(n_max)), n_max);
}

FockVector squeezed_coherent_fock(cplx alpha, double r, std::size_t n_max) {
    if (r < 0.0) {
        throw DomainError("squeezed_coherent_fock: r must be non-negative");
    }
    const std::size_t d = padded_dim(n_max + static_cast<std::size_t>(std::ceil(std::norm(alpha))));
    Vec v = squeezed_padded(r, d);
    if (alpha != 0.0) {
        exp_apply([alpha](const Vec& x, Vec& y) { apply_displacement_generator(alpha, x, y); },
                  2.0 * std::abs(alpha) * std::sqrt(static_cast<double>(d)), v);
    }
    return truncate(std::move(v), n_max);
}

TwoModeFockState::TwoModeFockState(std::size_t n_max) : n_max_(n_max), amps_((n_max + 1) * (n_max + 1)) {}

TwoModeFockState TwoModeFockState::product(const FockVector& mode0, const FockVector& mode1) {
    if (mode0.amplitudes.size() != mode1.amplitudes.size()) {
        throw std::invalid_argument("TwoModeFockState::product: modes truncated differently");
    }
    TwoModeFockState s(mode0.n_max());
    for (std::size_t i = 0; i < s.dim(); ++i) {
        for (std::size_t j = 0; j < s.dim(); ++j) {
            s(i, j) = mode0.amplitudes[i] * mode1.amplitudes[j];
        }
    }
    return s;
}

double TwoModeFockState::norm() const {
    double s = 0.0;
    for (const cplx& c : amps_) {
        s += std::norm(c);
    }
    return s;
}

TwoModeFockState TwoModeFockState::normalized() const {
    const double n = norm();
    if (!(n > 0.0)) {
        throw DomainError("cannot normalise the zero state");
    }
    TwoModeFockState out = *this;
    const double f = 1.0 / std::sqrt(n);
    for (cplx& c : out.amps_) {
        c *= f;
    }
    return out;
}

TwoModeFockState build_input_state(const sensitivity::InputStateSpec& spec, std::size_t n_max) {
    sensitivity::validate(spec);
    return std::visit(
        [n_max](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, sensitivity::Coherent>) {
                return TwoModeFockState::product(coherent_fock(0.0, n_max),
                                                 coherent_fock(std::polar(s.alpha, s.theta), n_max));
            } else if constexpr (std::is_same_v<T, sensitivity::CoherentSqueezedVacuum>) {
                return TwoModeFockState::product(squeezed_vacuum_fock(s.r, n_max),
                                                 coherent_fock(std::polar(s.alpha, s.theta), n_max));
            } else {
                const FockVector m = squeezed_coherent_fock(s.alpha, s.r, n_max);
                return TwoModeFockState::product(m, m);
            }
        },
        spec);
}

double truncation_error(const FockVector& v) {
    const std::size_t cut = top_cut(v.n_max());
    double w = 0.0;
    for (std::size_t n = cut; n < v.amplitudes.size(); ++n) {
        w += std::norm(v.amplitudes[n]);
    }
    return w;
}

double truncation_error(const TwoModeFockState& s) {
    const std::size_t cut = top_cut(s.n_max());
    double w = 0.0;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        for (std::size_t j = 0; j < s.dim(); ++j) {
            if (i >= cut || j >= cut) {
                w += std::norm(s(i, j));
            }
        }
    }
    return w;
}

// --- interferometer -----------------------------------------------------------------------

MachZehnder::MachZehnder(std::size_t n_max, const kernels::KernelTable& k) : n_max_(n_max), kernels_(&k) {
    const double theta = 0.25 * std::numbers::pi;
    blocks_.reserve(2 * n_max + 1);
    for (std::size_t total = 0; total <= 2 * n_max; ++total) {
        const std::size_t lo = total > n_max ? total - n_max : 0;
        const std::size_t hi = std::min(total, n_max);
        const std::size_t m = hi - lo + 1;
        Block b{lo, m, std::vector<cplx>(m * m)};
        if (m == 1) {
            b.unitary[0] = 1.0;
            blocks_.push_back(std::move(b));
            continue;
        }
        // a0^dagger a1 + a0 a1^dagger restricted to this block: tridiagonal, zero diagonal.
        Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
        Eigen::VectorXd sub(static_cast<Eigen::Index>(m - 1));
        for (std::size_t i = 0; i + 1 < m; ++i) {
            const double n0 = static_cast<double>(lo + i);
            const double n1 = static_cast<double>(total - lo - i);
            sub[static_cast<Eigen::Index>(i)] = std::sqrt((n0 + 1.0) * n1);
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
        const Eigen::MatrixXd& v = es.eigenvectors();
        const Eigen::VectorXd& lam = es.eigenvalues();
        std::vector<cplx> ph(m);
        for (std::size_t q = 0; q < m; ++q) {
            ph[q] = std::polar(1.0, theta * lam[static_cast<Eigen::Index>(q)]);
        }
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                cplx acc = 0.0;
                for (std::size_t q = 0; q < m; ++q) {
                    acc += v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(q)) * ph[q] *
                           v(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(q));
                }
                b.unitary[i * m + j] = acc;
            }
        }
        blocks_.push_back(std::move(b));
    }
}

void MachZehnder::check(const TwoModeFockState& s) const {
    if (s.n_max() != n_max_) {
        throw std::invalid_argument("MachZehnder: state truncated at " + std::to_string(s.n_max()) +
                                    ", interferometer at " + std::to_string(n_max_));
    }
}

TwoModeFockState MachZehnder::beam_splitter(const TwoModeFockState& in) const {
    check(in);
    TwoModeFockState out(n_max_);
    std::vector<cplx> x;
    std::vector<cplx> y;
    for (std::size_t total = 0; total < blocks_.size(); ++total) {
        const Block& b = blocks_[total];
        x.resize(b.size);
        y.resize(b.size);
        for (std::size_t i = 0; i < b.size; ++i) {
            x[i] = in(b.lo + i, total - b.lo - i);
        }
        kernels_->cmatvec(b.unitary.data(), b.size, b.size, x.data(), y.data());
        for (std::size_t i = 0; i < b.size; ++i) {
            out(b.lo + i, total - b.lo - i) = y[i];
        }
    }
    return out;
}

TwoModeFockState MachZehnder::phase_shift(const TwoModeFockState& in, double phi) const {
    check(in);
    const std::size_t d = in.dim();
    std::vector<cplx> row(d);
    for (std::size_t n1 = 0; n1 < d; ++n1) {
        row[n1] = std::polar(1.0, phi * static_cast<double>(n1));
    }
    TwoModeFockState out(n_max_);
    for (std::size_t n0 = 0; n0 < d; ++n0) {
        kernels_->cmul(in.amplitudes().data() + n0 * d, row.data(), out.amplitudes().data() + n0 * d, d);
    }
    return out;
}

TwoModeFockState MachZehnder::output_state(const TwoModeFockState& in, double phi) const {
    return beam_splitter(phase_shift(beam_splitter(in), phi));
}

TwoModeFockState mzi_output_state(const TwoModeFockState& in, double phi) {
    return MachZehnder(in.n_max()).output_state(in, phi);
}

// --- statistics -----------------------------------------------------------------------------

Observable observable_for(DetectionScheme s) {
    return s == DetectionScheme::Difference ? Observable::Difference : Observable::Port4;
}

namespace {

struct NormalisedMoments {
    double m0, m1, var0, var1, cov;
};

NormalisedMoments moments(const TwoModeFockState& state, const kernels::KernelTable& k) {
    const kernels::MomentSums s = kernels::number_moments(state.amplitudes(), state.dim(), k);
    if (!(s.weight > 0.0)) {
        throw DomainError("observable statistics of the zero state");
    }
    const double m0 = s.n0 / s.weight;
    const double m1 = s.n1 / s.weight;
    return {m0, m1, s.n0_sq / s.weight - m0 * m0, s.n1_sq / s.weight - m1 * m1, s.n0_n1 / s.weight - m0 * m1};
}

}  // namespace

ObservableStats observable_stats(const TwoModeFockState& state, Observable obs, const kernels::KernelTable& k) {
    const NormalisedMoments m = moments(state, k);
    if (obs == Observable::Port4) {
        return {m.m0, std::max(0.0, m.var0)};
    }
    return {m.m0 - m.m1, std::max(0.0, m.var0 + m.var1 - 2.0 * m.cov)};
}

PhotonNumbers photon_numbers(const TwoModeFockState& state, const kernels::KernelTable& k) {
    const NormalisedMoments m = moments(state, k);
    return {m.m0, m.m1};
}

// --- oracle ---------------------------------------------------------------------------------

Oracle::Oracle(OracleOptions opts, const kernels::KernelTable& k)
    : opts_(opts), kernels_(&k), mzi_(opts.n_max, k) {
    if (!(opts_.dphi_step > 0.0)) {
        throw DomainError("oracle: phase step must be positive");
    }
}

OracleReport Oracle::numeric_sensitivity(const sensitivity::InputStateSpec& spec, double phi,
                                         DetectionScheme scheme) const {
    using namespace sensitivity;
    if (std::holds_alternative<DualSqueezedCoherent>(spec)) {
        throw DomainError("oracle: no detection-scheme closed form for the dual squeezed-coherent input");
    }
    double alpha = 0.0;
    double theta = 0.0;
    double r = 0.0;
    if (const auto* c = std::get_if<Coherent>(&spec)) {
        alpha = c->alpha;
        theta = c->theta;
    } else {
        const auto& s = std::get<CoherentSqueezedVacuum>(spec);
        alpha = s.alpha;
        theta = s.theta;
        r = s.r;
    }

    OracleReport rep;
    std::ostringstream label;
    label.precision(6);
    label << describe(spec) << " phi=" << phi << " " << to_string(scheme);
    rep.label = label.str();
    rep.scheme = scheme;
    rep.phase = phi;
    rep.n_max = opts_.n_max;
    rep.dphi_step = opts_.dphi_step;

    const Moments closed = csv_moments(alpha, theta, r, phi, scheme);
    rep.closed_form_mean = closed.mean;
    rep.closed_form_variance = closed.variance;
    rep.closed_form_value = r == 0.0 ? coherent_sensitivity(alpha, phi, scheme)
                                     : csv_sensitivity(alpha, theta, r, phi, scheme);

    const TwoModeFockState input = build_input_state(spec, opts_.n_max);
    rep.truncation_tail = truncation_error(input);
    if (rep.truncation_tail > opts_.truncation_gate) {
        rep.gated = true;
        return rep;
    }
    const TwoModeFockState first = mzi_.beam_splitter(input.normalized());
    const Observable obs = observable_for(scheme);
    auto stats_at = [&](double ph) {
        return observable_stats(mzi_.beam_splitter(mzi_.phase_shift(first, ph)), obs, *kernels_);
    };
    auto slope_at = [&](double ph) {
        const double h = opts_.dphi_step;
        const double d1 = (stats_at(ph + h).mean - stats_at(ph - h).mean) / (2.0 * h);
        const double d2 = (stats_at(ph + 0.5 * h).mean - stats_at(ph - 0.5 * h).mean) / h;
        return (4.0 * d2 - d1) / 3.0;
    };

    const ObservableStats here = stats_at(phi);
    rep.mean = here.mean;
    rep.variance = here.variance;
    rep.slope = slope_at(phi);

    const double scale = 1.0 + alpha * alpha + std::sinh(r) * std::sinh(r);
    if (std::abs(rep.slope) < 1e-9 * scale) {
        if (here.variance > 1e-12 * scale) {
            throw DivergenceError("oracle: readout slope vanishes at phi = " + detail::num(phi));
        }
        // Dark fringe: signal and noise vanish together; take the symmetric limit.
        const double d = opts_.dark_fringe_offset;
        double acc = 0.0;
        for (double ph : {phi - d, phi + d}) {
            acc += std::sqrt(stats_at(ph).variance) / std::abs(slope_at(ph));
        }
        rep.numeric_sensitivity = 0.5 * acc;
        rep.limit_offset = d;
    } else {
        rep.numeric_sensitivity = std::sqrt(here.variance) / std::abs(rep.slope);
    }
    rep.relative_error = std::abs(rep.numeric_sensitivity - rep.closed_form_value) / rep.closed_form_value;
    return rep;
}

OracleReport numeric_sensitivity(const sensitivity::InputStateSpec& spec, double phi,
                                 sensitivity::DetectionScheme scheme, const OracleOptions& opts) {
    return Oracle(opts).numeric_sensitivity(spec, phi, scheme);
}

std::size_t recommended_n_max(const sensitivity::InputStateSpec& spec, double gate, std::size_t start,
                              std::size_t limit) {
    for (std::size_t n = start; n <= limit; n += 10) {
        if (truncation_error(build_input_state(spec, n)) <= gate) {
            return n;
        }
    }
    throw DomainError("recommended_n_max: no truncation below " + std::to_string(limit) + " meets the gate");
}

}  // namespace vbir::fock
