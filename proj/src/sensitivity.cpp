#include "vbir/sensitivity.hpp"

#include "util.hpp"
#include "vbir/constants.hpp"
#include "vbir/errors.hpp"
#include "vbir/kernels.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

namespace vbir::sensitivity {

namespace {

constexpr double kPi = std::numbers::pi;
// |sin| below this is treated as sitting on a singular fringe.
constexpr double kSingularTol = 1e-9;
// ||alpha|^2 - sinh^2 r| below this fraction of the larger term is degenerate.
constexpr double kDegenerateTol = 1e-4;

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) {
        throw DomainError(std::string(what) + " must be positive, got " + detail::num(v));
    }
}

void require_non_negative(double v, const char* what) {
    if (!(v >= 0.0)) {
        throw DomainError(std::string(what) + " must be non-negative, got " + detail::num(v));
    }
}

double sinh2(double r) {
    const double s = std::sinh(r);
    return s * s;
}

// |alpha|^2 - sinh^2 r, the common slope factor of every squeezed readout.
double signal_contrast(double alpha, double r) {
    const double a2 = alpha * alpha;
    const double s = sinh2(r);
    const double d = a2 - s;
    if (std::abs(d) <= kDegenerateTol * std::max(a2, s)) {
        throw DegenerateStateError("|alpha|^2 = " + detail::num(a2) + " and sinh^2 r = " + detail::num(s) +
                                   " coincide: the mean readout does not depend on phi");
    }
    return d;
}

// Phase-independent noise left after dividing the variance by the slope's trig factor.
double quadrature_noise(double alpha, double theta, double r) {
    const double a2 = alpha * alpha;
    return sinh2(r) + a2 * std::exp(-2.0 * r) + a2 * std::sinh(2.0 * r) * (1.0 - std::cos(2.0 * theta));
}

struct StateParams {
    double alpha;
    double theta;
    double r;
};

}  // namespace

void validate(const InputStateSpec& spec) {
    std::visit(
        [](const auto& s) {
            require_non_negative(s.alpha, "|alpha|");
            if constexpr (requires { s.r; }) {
                require_non_negative(s.r, "squeezing r");
            }
        },
        spec);
}

double mean_photons(const InputStateSpec& spec) {
    validate(spec);
    return std::visit(
        [](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Coherent>) {
                return s.alpha * s.alpha;
            } else if constexpr (std::is_same_v<T, CoherentSqueezedVacuum>) {
                return s.alpha * s.alpha + sinh2(s.r);
            } else {
                return sqc_total_photons(s.alpha, s.r);
            }
        },
        spec);
}

std::string describe(const InputStateSpec& spec) {
    std::ostringstream os;
    os.precision(6);
    std::visit(
        [&os](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Coherent>) {
                os << "coherent(alpha=" << s.alpha << ", theta=" << s.theta << ")";
            } else if constexpr (std::is_same_v<T, CoherentSqueezedVacuum>) {
                os << "coherent+squeezed-vacuum(alpha=" << s.alpha << ", theta=" << s.theta << ", r=" << s.r
                   << ")";
            } else {
                os << "dual-squeezed-coherent(alpha=" << s.alpha << ", r=" << s.r << ")";
            }
        },
        spec);
    return os.str();
}

void LossModel::validate() const {
    if (!(sigma >= 0.0 && sigma < 1.0)) {
        throw DomainError("loss ratio sigma must lie in [0, 1), got " + detail::num(sigma));
    }
}

std::string to_string(DetectionScheme s) {
    return s == DetectionScheme::Difference ? "difference" : "single-detector";
}

std::string to_string(Bound b) {
    switch (b) {
        case Bound::StandardQuantumLimit:
            return "SQL";
        case Bound::PulsedStandardQuantumLimit:
            return "pulsed-SQL";
        case Bound::HeisenbergLimit:
            return "HL";
        case Bound::CoherentSqueezedBound:
            return "CSV-bound";
        case Bound::CoherentSqueezedApprox:
            return "CSV-approx";
        case Bound::DualSqueezedBound:
            return "SQC-bound";
    }
    return "?";
}

std::string to_string(const Readout& r) {
    return std::visit([](auto v) { return to_string(v); }, r);
}

std::optional<Readout> parse_readout(std::string_view text) {
    std::string key(text);
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
    if (key == "diff" || key == "difference") {
        return DetectionScheme::Difference;
    }
    if (key == "single" || key == "single-detector") {
        return DetectionScheme::SingleDetector;
    }
    for (Bound b : {Bound::StandardQuantumLimit, Bound::PulsedStandardQuantumLimit, Bound::HeisenbergLimit,
                    Bound::CoherentSqueezedBound, Bound::CoherentSqueezedApprox, Bound::DualSqueezedBound}) {
        std::string name = to_string(b);
        std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
        if (key == name) {
            return b;
        }
    }
    return std::nullopt;
}

// --- photon budget and bounds ----------------------------------------------------------------

double mean_photon_number(double power, double duration, double wavelength) {
    require_positive(power, "power");
    require_positive(duration, "duration");
    return power * duration / constants::photon_energy(wavelength);
}

double sql_bound(double n) {
    require_positive(n, "photon number");
    return 1.0 / std::sqrt(n);
}

double required_cw_power(double dphi, double duration, double wavelength) {
    require_positive(dphi, "target phase");
    require_positive(duration, "duration");
    return constants::photon_energy(wavelength) / (duration * dphi * dphi);
}

double csv_bound(double alpha, double r) {
    require_non_negative(alpha, "|alpha|");
    require_non_negative(r, "squeezing r");
    const double q = alpha * alpha * std::exp(2.0 * r) + sinh2(r);
    if (!(q > 0.0)) {
        throw DomainError("csv_bound: empty input state (alpha = 0 and r = 0)");
    }
    return 1.0 / std::sqrt(q);
}

double heisenberg_limit(double n) {
    require_positive(n, "photon number");
    return 1.0 / n;
}

double hl_squeezing_requirement(double n) {
    require_positive(n, "photon number");
    return std::asinh(std::sqrt(0.5 * n));
}

double csv_high_power_approx(double alpha, double r) {
    require_positive(alpha, "|alpha|");
    require_non_negative(r, "squeezing r");
    return std::exp(-r) / alpha;
}

double sqc_bound(double total_photons) {
    require_positive(total_photons, "total photon number");
    const double n = total_photons;
    const double q = 8.0 * n * n * (2.0 + std::sqrt(1.0 + 3.0 / n)) / 9.0 + 4.0 * n;
    return 1.0 / std::sqrt(q);
}

double sqc_bound_large_n(double total_photons) {
    require_positive(total_photons, "total photon number");
    return 3.0 / (4.0 * total_photons);
}

double sqc_total_photons(double alpha, double r) {
    require_non_negative(alpha, "|alpha|");
    require_non_negative(r, "squeezing r");
    return 2.0 * (alpha * alpha + sinh2(r));
}

double sqc_squeezing_fraction(double alpha, double r) {
    const double n = sqc_total_photons(alpha, r);
    require_positive(n, "total photon number");
    return 2.0 * sinh2(r) / n;
}

double pulsed_sql_scaling(double n, double delta_omega, double carrier_omega) {
    require_positive(n, "photon number");
    require_positive(carrier_omega, "carrier frequency");
    require_non_negative(delta_omega, "spectral width");
    const double ratio = delta_omega / carrier_omega;
    return 1.0 / (2.0 * std::sqrt(n) * std::sqrt(ratio * ratio + 1.0));
}

// --- detection schemes -----------------------------------------------------------------------

double coherent_sensitivity(double alpha, double phi, DetectionScheme scheme) {
    require_positive(alpha, "|alpha|");
    const double s = scheme == DetectionScheme::Difference ? std::sin(phi) : std::sin(0.5 * phi);
    if (std::abs(s) < kSingularTol) {
        throw DivergenceError("coherent " + to_string(scheme) + " readout diverges at phi = " + detail::num(phi));
    }
    return 1.0 / (alpha * std::abs(s));
}

Moments csv_moments(double alpha, double theta, double r, double phi, DetectionScheme scheme) {
    require_non_negative(alpha, "|alpha|");
    require_non_negative(r, "squeezing r");
    const double a2 = alpha * alpha;
    const double s = sinh2(r);
    const double number_var = 2.0 * s * (s + 1.0);  // sinh^2(2r) / 2
    const double noise = quadrature_noise(alpha, theta, r);
    const double sp = std::sin(phi);
    const double cp = std::cos(phi);
    if (scheme == DetectionScheme::Difference) {
        return {cp * (a2 - s), -sp * (a2 - s), cp * cp * (number_var + a2) + sp * sp * noise};
    }
    const double sh = std::sin(0.5 * phi);
    const double ch = std::cos(0.5 * phi);
    const double sh2 = sh * sh;
    const double ch2 = ch * ch;
    return {sh2 * s + ch2 * a2, 0.5 * sp * (s - a2),
            sh2 * sh2 * number_var + ch2 * ch2 * a2 + 0.25 * sp * sp * noise};
}

double csv_sensitivity(double alpha, double theta, double r, double phi, DetectionScheme scheme) {
    require_positive(alpha, "|alpha|");
    require_non_negative(r, "squeezing r");
    const double contrast = std::abs(signal_contrast(alpha, r));
    const double a2 = alpha * alpha;
    const double s = sinh2(r);
    const double number_var = 2.0 * s * (s + 1.0);
    const double noise = quadrature_noise(alpha, theta, r);

    // Variance over slope^2 with the common trig factor cancelled, so the
    // coherent dark fringe (r = 0, phi = pi) stays finite.
    if (scheme == DetectionScheme::Difference) {
        const double sp = std::sin(phi);
        if (std::abs(sp) < kSingularTol) {
            throw DivergenceError("difference readout diverges at phi = " + detail::num(phi));
        }
        const double cot = std::cos(phi) / sp;
        return std::sqrt(cot * cot * (number_var + a2) + noise) / contrast;
    }
    const double sh = std::sin(0.5 * phi);
    const double ch = std::cos(0.5 * phi);
    if (std::abs(sh) < kSingularTol) {
        throw DivergenceError("single-detector readout diverges at phi = " + detail::num(phi));
    }
    double bright = 0.0;  // tan^2(phi/2) sinh^2(2r)/2
    if (number_var > 0.0) {
        if (std::abs(ch) < kSingularTol) {
            throw DivergenceError("single-detector readout with squeezing diverges at phi = " + detail::num(phi));
        }
        const double t = sh / ch;
        bright = t * t * number_var;
    }
    const double cot_half = ch / sh;
    return std::sqrt(bright + a2 * cot_half * cot_half + noise) / contrast;
}

OptimalPhase csv_optimal_phase(double alpha, double r) {
    require_positive(alpha, "|alpha|");
    require_non_negative(r, "squeezing r");
    if (r == 0.0) {
        return {kPi, false};
    }
    return {2.0 * std::atan(std::sqrt(std::numbers::sqrt2 * alpha / std::sinh(2.0 * r))), true};
}

double csv_single_detector_optimum(double alpha, double r) {
    require_positive(alpha, "|alpha|");
    require_non_negative(r, "squeezing r");
    const double contrast = std::abs(signal_contrast(alpha, r));
    const double q = sinh2(r) + std::numbers::sqrt2 * alpha * std::sinh(2.0 * r) +
                     alpha * alpha * std::exp(-2.0 * r);
    return std::sqrt(q) / contrast;
}

double optimal_phase(const InputStateSpec& spec, DetectionScheme scheme) {
    validate(spec);
    if (scheme == DetectionScheme::Difference) {
        return 0.5 * kPi;
    }
    if (const auto* c = std::get_if<CoherentSqueezedVacuum>(&spec)) {
        return csv_optimal_phase(c->alpha, c->r).phase;
    }
    return kPi;
}

// --- losses and repetition -------------------------------------------------------------------

double lossy_sql(double alpha, double sigma) {
    LossModel{sigma}.validate();
    require_positive(alpha, "|alpha|");
    return 1.0 / (std::sqrt(1.0 - sigma) * alpha);
}

double lossy_csv(double alpha, double r, double sigma) {
    LossModel{sigma}.validate();
    require_positive(alpha, "|alpha|");
    require_non_negative(r, "squeezing r");
    const double num = sigma + (1.0 - sigma) * std::exp(-2.0 * r);
    const double den = (1.0 - sigma) * alpha * alpha + sigma * (1.0 - sigma) * sinh2(r);
    return std::sqrt(num) / std::sqrt(den);
}

double repeated_measurements(double dphi_single, std::uint64_t n_exp) {
    if (n_exp == 0) {
        throw DomainError("repeated_measurements: need at least one measurement");
    }
    require_positive(dphi_single, "single-shot sensitivity");
    return dphi_single / std::sqrt(static_cast<double>(n_exp));
}

double squeezing_db_to_r(double db) {
    require_non_negative(db, "squeezing in dB");
    return db * std::numbers::ln10 / 20.0;
}

double squeezing_r_to_db(double r) {
    require_non_negative(r, "squeezing r");
    return 20.0 * r / std::numbers::ln10;
}

// --- squeezed-light source -------------------------------------------------------------------

double cavity_linewidth(double transmission, double loss, double length) {
    require_non_negative(transmission, "mirror transmission");
    require_non_negative(loss, "round-trip loss");
    require_positive(transmission + loss, "T + L");
    require_positive(length, "cavity length");
    return constants::codata2018.c * (transmission + loss) / length;
}

double SqueezerConfig::linewidth() const {
    return cavity_linewidth(mirror_transmission, round_trip_loss, cavity_length);
}

void SqueezerConfig::validate() const {
    if (pump_ratio >= 1.0) {
        throw AboveThresholdError("OPA pump ratio p = " + detail::num(pump_ratio) + " is at or above threshold");
    }
    require_non_negative(pump_ratio, "pump ratio p");
    if (!(detection_efficiency >= 0.0 && detection_efficiency <= 1.0)) {
        throw DomainError("detection efficiency must lie in [0, 1], got " + detail::num(detection_efficiency));
    }
    (void)linewidth();
}

QuadratureVariances quadrature_variance_spectrum(const SqueezerConfig& cfg, double omega) {
    QuadratureVariances v{};
    quadrature_variance_spectrum(cfg, std::span<const double>(&omega, 1), std::span<double>(&v.antisqueezed, 1),
                                 std::span<double>(&v.squeezed, 1));
    return v;
}

void quadrature_variance_spectrum(const SqueezerConfig& cfg, std::span<const double> omegas,
                                  std::span<double> antisqueezed, std::span<double> squeezed) {
    cfg.validate();
    if (antisqueezed.size() != omegas.size() || squeezed.size() != omegas.size()) {
        throw std::invalid_argument("quadrature_variance_spectrum: output spans must match the grid");
    }
    kernels::active().quadrature_spectrum(std::sqrt(cfg.pump_ratio), cfg.detection_efficiency,
                                          1.0 / cfg.linewidth(), omegas.data(), antisqueezed.data(),
                                          squeezed.data(), omegas.size());
}

double required_bandwidth(double pump_duration) {
    require_positive(pump_duration, "pump duration");
    return 1.0 / pump_duration;
}

double total_phase(double experimental_phase, double qed_shift) { return experimental_phase + qed_shift; }

// --- composition -----------------------------------------------------------------------------

namespace {

StateParams params_of(const InputStateSpec& spec) {
    return std::visit(
        [](const auto& s) -> StateParams {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Coherent>) {
                return {s.alpha, s.theta, 0.0};
            } else if constexpr (std::is_same_v<T, CoherentSqueezedVacuum>) {
                return {s.alpha, s.theta, s.r};
            } else {
                return {s.alpha, 0.0, s.r};
            }
        },
        spec);
}

void require_lossless(const LossModel& loss, const std::string& what) {
    if (loss.sigma > 0.0) {
        throw DomainError("no loss model available for " + what);
    }
}

}  // namespace

SensitivityEstimate estimate(const InputStateSpec& spec, const Readout& readout, const EstimateOptions& opts) {
    validate(spec);
    opts.loss.validate();
    const StateParams p = params_of(spec);
    const double sigma = opts.loss.sigma;
    const bool is_dual = std::holds_alternative<DualSqueezedCoherent>(spec);
    SensitivityEstimate est;
    est.readout = readout;

    if (const auto* scheme = std::get_if<DetectionScheme>(&readout)) {
        if (is_dual) {
            throw DomainError("no detection-scheme formula for the dual squeezed-coherent input; use the SQC bound");
        }
        const double phi = opts.phase.value_or(optimal_phase(spec, *scheme));
        est.operating_phase = phi;
        est.assumptions.push_back(opts.phase ? "phase fixed by caller" : "scheme-optimal phase");
        if (p.r == 0.0) {
            const double a_eff = std::sqrt(1.0 - sigma) * p.alpha;
            est.value = coherent_sensitivity(a_eff, phi, *scheme);
            if (sigma > 0.0) {
                est.assumptions.push_back("loss: alpha -> sqrt(1 - sigma) alpha");
            }
        } else if (sigma == 0.0) {
            est.value = csv_sensitivity(p.alpha, p.theta, p.r, phi, *scheme);
        } else {
            if (opts.phase) {
                throw DomainError("squeezed-input losses are modelled only at the optimal phase");
            }
            est.value = lossy_csv(p.alpha, p.r, sigma);
            est.assumptions.push_back("loss approximation for coherent + squeezed vacuum (scheme independent)");
        }
    } else {
        const Bound bound = std::get<Bound>(readout);
        switch (bound) {
            case Bound::StandardQuantumLimit:
                est.value = lossy_sql(p.alpha, sigma);
                break;
            case Bound::PulsedStandardQuantumLimit: {
                const double n = (1.0 - sigma) * p.alpha * p.alpha;
                est.value = pulsed_sql_scaling(n, opts.delta_omega, opts.carrier_omega);
                break;
            }
            case Bound::HeisenbergLimit:
                require_lossless(opts.loss, "the Heisenberg limit");
                est.value = heisenberg_limit(mean_photons(spec));
                break;
            case Bound::CoherentSqueezedBound:
                require_lossless(opts.loss, "the coherent + squeezed-vacuum bound");
                est.value = csv_bound(p.alpha, p.r);
                break;
            case Bound::CoherentSqueezedApprox:
                est.value = sigma > 0.0 ? lossy_csv(p.alpha, p.r, sigma) : csv_high_power_approx(p.alpha, p.r);
                break;
            case Bound::DualSqueezedBound:
                require_lossless(opts.loss, "the dual squeezed-coherent bound");
                est.value = sqc_bound(is_dual ? sqc_total_photons(p.alpha, p.r) : mean_photons(spec));
                break;
        }
        est.assumptions.push_back("bound: " + to_string(bound));
    }
    if (sigma > 0.0) {
        est.assumptions.push_back("loss sigma = " + detail::num(sigma));
    }
    if (opts.n_exp > 1) {
        est.value = repeated_measurements(est.value, opts.n_exp);
        est.assumptions.push_back("repeated measurements: " + std::to_string(opts.n_exp));
    }
    return est;
}

}  // namespace vbir::sensitivity
