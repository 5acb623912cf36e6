#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace vbir::sensitivity {

/// Readout at the interferometer outputs: N_d = n4 - n5, or n4 alone.
enum class DetectionScheme { Difference, SingleDetector };

/// Coherent light in port 1, vacuum in port 0.
struct Coherent {
    double alpha = 0.0;  ///< |alpha|
    double theta = 0.0;  ///< phase of alpha, rad
};

/// Coherent light in port 1, squeezed vacuum (real squeeze parameter) in port 0.
struct CoherentSqueezedVacuum {
    double alpha = 0.0;
    double theta = 0.0;
    double r = 0.0;
};

/// Squeezed coherent states in both ports, restricted to the symmetric optimum
/// (equal displacement, equal real squeezing).
struct DualSqueezedCoherent {
    double alpha = 0.0;
    double r = 0.0;
};

using InputStateSpec = std::variant<Coherent, CoherentSqueezedVacuum, DualSqueezedCoherent>;

void validate(const InputStateSpec& spec);
/// Mean photon number inside the interferometer.
double mean_photons(const InputStateSpec& spec);
std::string describe(const InputStateSpec& spec);

struct LossModel {
    double sigma = 0.0;  ///< probability a photon is lost between generation and detection
    void validate() const;
};

/// Scheme-independent bounds and approximations.
enum class Bound {
    StandardQuantumLimit,
    PulsedStandardQuantumLimit,
    HeisenbergLimit,
    CoherentSqueezedBound,
    CoherentSqueezedApprox,
    DualSqueezedBound,
};

using Readout = std::variant<DetectionScheme, Bound>;

std::string to_string(DetectionScheme s);
std::string to_string(Bound b);
std::string to_string(const Readout& r);
/// Case-insensitive inverse of to_string; also accepts diff, single, sql, hl.
std::optional<Readout> parse_readout(std::string_view text);

struct SensitivityEstimate {
    double value = 0.0;  ///< rad
    Readout readout = Bound::StandardQuantumLimit;
    std::optional<double> operating_phase;
    std::vector<std::string> assumptions;
};

// --- photon budget and theoretical bounds -------------------------------------------------

/// <N> = P tau / (h c / lambda).
double mean_photon_number(double power, double duration, double wavelength);
/// 1 / sqrt(N)
double sql_bound(double n);
/// Coherent-light power whose SQL over `duration` equals `dphi`.
double required_cw_power(double dphi, double duration, double wavelength);
/// 1 / sqrt(|alpha|^2 e^{2r} + sinh^2 r)
double csv_bound(double alpha, double r);
/// 1 / N
double heisenberg_limit(double n);
/// Squeezing r with sinh^2 r = N/2.
double hl_squeezing_requirement(double n);
/// e^{-r} / |alpha|, valid for |alpha|^2 >> sinh^2 r.
double csv_high_power_approx(double alpha, double r);

/// Squeezed-coherent light in both ports at the optimal squeezing fraction.
double sqc_bound(double total_photons);
/// Large-N form 3 / (4 N_tot).
double sqc_bound_large_n(double total_photons);
inline constexpr double sqc_optimal_squeezing_fraction = 2.0 / 3.0;
/// N_tot = 2(|alpha|^2 + sinh^2 r)
double sqc_total_photons(double alpha, double r);
/// beta_tot = 2 sinh^2 r / N_tot
double sqc_squeezing_fraction(double alpha, double r);

/// Femtosecond-pulse scaling 1 / (2 sqrt(N) sqrt(dw^2/w^2 + 1)).
double pulsed_sql_scaling(double n, double delta_omega, double carrier_omega);

// --- detection schemes -----------------------------------------------------------------------

/// Coherent input: 1/(|alpha||sin phi|) for the difference readout,
/// 1/(|alpha||sin(phi/2)|) for the single detector.
double coherent_sensitivity(double alpha, double phi, DetectionScheme scheme);

/// Mean, slope d<O>/dphi and variance of the readout observable for a
/// coherent (|alpha|, theta) plus squeezed-vacuum (r) input. r = 0 is the coherent case.
struct Moments {
    double mean;
    double slope;
    double variance;
};
Moments csv_moments(double alpha, double theta, double r, double phi, DetectionScheme scheme);

/// Delta-O / |d<O>/dphi| for the coherent + squeezed-vacuum input.
double csv_sensitivity(double alpha, double theta, double r, double phi, DetectionScheme scheme);

struct OptimalPhase {
    double phase;  ///< principal value in (0, pi]
    bool finite;   ///< false when r = 0: the single-detector optimum sits at the dark fringe pi
};
/// Single-detector optimum 2 atan(sqrt(sqrt2 |alpha| / sinh 2r)).
OptimalPhase csv_optimal_phase(double alpha, double r);
/// Single-detector sensitivity at csv_optimal_phase.
double csv_single_detector_optimum(double alpha, double r);
/// Operating phase minimising the readout sensitivity of `spec`.
double optimal_phase(const InputStateSpec& spec, DetectionScheme scheme);

// --- losses and repetition -------------------------------------------------------------------

double lossy_sql(double alpha, double sigma);
double lossy_csv(double alpha, double r, double sigma);
double repeated_measurements(double dphi_single, std::uint64_t n_exp);

double squeezing_db_to_r(double db);
double squeezing_r_to_db(double r);

// --- squeezed-light source -------------------------------------------------------------------

/// Sub-threshold OPA feeding the squeezed port.
struct SqueezerConfig {
    double pump_ratio = 0.0;            ///< p = P / P_th
    double detection_efficiency = 1.0;  ///< eta_d
    double mirror_transmission = 0.1;   ///< T
    double round_trip_loss = 0.0;       ///< L
    double cavity_length = 1.0;         ///< l, m

    double linewidth() const;
    void validate() const;
};

/// Gamma = c (T + L) / l, in rad/s.
double cavity_linewidth(double transmission, double loss, double length);

struct QuadratureVariances {
    double antisqueezed;  ///< 1 + eta 4 sqrt(p) / ((1 - sqrt p)^2 + (Omega/Gamma)^2)
    double squeezed;      ///< 1 - eta 4 sqrt(p) / ((1 + sqrt p)^2 + (Omega/Gamma)^2)
};
QuadratureVariances quadrature_variance_spectrum(const SqueezerConfig& cfg, double omega);
/// Vectorised over a sideband grid; spans must have equal length.
void quadrature_variance_spectrum(const SqueezerConfig& cfg, std::span<const double> omegas,
                                  std::span<double> antisqueezed, std::span<double> squeezed);

/// B ~ 1 / tau_L, in Hz.
double required_bandwidth(double pump_duration);

/// Total interferometer phase: experimenter bias plus the vacuum-induced shift.
double total_phase(double experimental_phase, double qed_shift);

// --- composition -----------------------------------------------------------------------------

struct EstimateOptions {
    std::optional<double> phase;  ///< nullopt selects the scheme optimum
    LossModel loss;
    std::uint64_t n_exp = 1;
    double delta_omega = 0.0;    ///< pulsed bound only
    double carrier_omega = 0.0;  ///< pulsed bound only
};

/// Sensitivity of `spec` under `readout`, degraded by losses and improved by repetition.
SensitivityEstimate estimate(const InputStateSpec& spec, const Readout& readout,
                             const EstimateOptions& opts = {});

}  // namespace vbir::sensitivity
