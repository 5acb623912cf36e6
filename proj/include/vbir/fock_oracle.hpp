#pragma once

// Brute-force photon-number-basis simulation of a balanced Mach-Zehnder
// interferometer. Mode 0 is the squeezed/unused port (output port 4 after the
// second splitter), mode 1 the coherent port (output port 5).

#include "vbir/kernels.hpp"
#include "vbir/sensitivity.hpp"

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vbir::fock {

using cplx = std::complex<double>;

/// Single-mode amplitudes c_n, 0 <= n <= n_max.
struct FockVector {
    std::vector<cplx> amplitudes;
    double norm_deficit = 0.0;  ///< 1 - sum |c_n|^2: weight lost above n_max

    std::size_t n_max() const { return amplitudes.size() - 1; }
};

/// e^{-|alpha|^2/2} alpha^n / sqrt(n!)
FockVector coherent_fock(cplx alpha, std::size_t n_max);
/// exp(r/2 (a^2 - a^dagger^2)) |0>, by exponentiating the truncated generator
/// on a padded basis and cutting back to n_max.
FockVector squeezed_vacuum_fock(double r, std::size_t n_max);
/// D(alpha) S(r) |0> with D(alpha) = exp(alpha a^dagger - alpha^* a).
FockVector squeezed_coherent_fock(cplx alpha, double r, std::size_t n_max);

class TwoModeFockState {
public:
    explicit TwoModeFockState(std::size_t n_max);
    static TwoModeFockState product(const FockVector& mode0, const FockVector& mode1);

    std::size_t n_max() const { return n_max_; }
    std::size_t dim() const { return n_max_ + 1; }

    cplx& operator()(std::size_t n0, std::size_t n1) { return amps_[n0 * dim() + n1]; }
    cplx operator()(std::size_t n0, std::size_t n1) const { return amps_[n0 * dim() + n1]; }

    std::span<cplx> amplitudes() { return amps_; }
    std::span<const cplx> amplitudes() const { return amps_; }

    double norm() const;
    TwoModeFockState normalized() const;

private:
    std::size_t n_max_;
    std::vector<cplx> amps_;
};

/// Prepare the interferometer input for `spec`: squeezed vacuum (or |alpha, r>) in
/// mode 0, |alpha e^{i theta}> (or |alpha, r>) in mode 1.
TwoModeFockState build_input_state(const sensitivity::InputStateSpec& spec, std::size_t n_max);

/// Probability weight in the top 10% of the truncated basis.
double truncation_error(const FockVector& v);
double truncation_error(const TwoModeFockState& s);

/// Balanced MZI: 50:50 splitter, phase phi on mode 1, 50:50 splitter. The splitter is
/// exp(i pi/4 (a0^dagger a1 + a0 a1^dagger)), exponentiated block by block in total
/// photon number; blocks are computed once per n_max.
class MachZehnder {
public:
    explicit MachZehnder(std::size_t n_max, const kernels::KernelTable& k = kernels::active());

    std::size_t n_max() const { return n_max_; }

    TwoModeFockState beam_splitter(const TwoModeFockState& in) const;
    TwoModeFockState phase_shift(const TwoModeFockState& in, double phi) const;
    TwoModeFockState output_state(const TwoModeFockState& in, double phi) const;

private:
    struct Block {
        std::size_t lo;  ///< smallest n0 in the block
        std::size_t size;
        std::vector<cplx> unitary;  ///< row-major size x size
    };

    void check(const TwoModeFockState& s) const;

    std::size_t n_max_;
    const kernels::KernelTable* kernels_;
    std::vector<Block> blocks_;  ///< indexed by total photon number
};

TwoModeFockState mzi_output_state(const TwoModeFockState& in, double phi);

enum class Observable { Difference, Port4 };  ///< N_d = n4 - n5, N_4 = n4

Observable observable_for(sensitivity::DetectionScheme s);

struct ObservableStats {
    double mean;
    double variance;
};

/// Exact moments on the truncated space; the state is normalised first.
ObservableStats observable_stats(const TwoModeFockState& state, Observable obs,
                                 const kernels::KernelTable& k = kernels::active());

struct PhotonNumbers {
    double mode0;
    double mode1;
};
PhotonNumbers photon_numbers(const TwoModeFockState& state, const kernels::KernelTable& k = kernels::active());

struct OracleOptions {
    std::size_t n_max = 40;
    double dphi_step = 1e-4;         ///< central-difference step, refined by one Richardson stage
    double truncation_gate = 1e-10;  ///< skip the comparison when the input tail exceeds this
    double dark_fringe_offset = 1e-3;
};

struct OracleReport {
    std::string label;
    sensitivity::DetectionScheme scheme = sensitivity::DetectionScheme::Difference;
    double phase = 0.0;
    std::size_t n_max = 0;
    double dphi_step = 0.0;
    bool gated = false;  ///< true: truncation tail too large, numbers below not computed
    double truncation_tail = 0.0;
    double mean = 0.0;
    double variance = 0.0;
    double slope = 0.0;
    double numeric_sensitivity = 0.0;
    double closed_form_mean = 0.0;
    double closed_form_variance = 0.0;
    double closed_form_value = 0.0;
    double relative_error = 0.0;  ///< |numeric - closed| / closed
    std::optional<double> limit_offset;  ///< set when phi sits on a 0/0 dark fringe
};

/// Numeric Delta-phi = Delta-O / |d<O>/dphi| on the simulated interferometer, compared to the
/// closed form. Holds one MachZehnder so repeated queries share the splitter blocks.
class Oracle {
public:
    explicit Oracle(OracleOptions opts = {}, const kernels::KernelTable& k = kernels::active());

    const OracleOptions& options() const { return opts_; }
    const MachZehnder& interferometer() const { return mzi_; }

    OracleReport numeric_sensitivity(const sensitivity::InputStateSpec& spec, double phi,
                                     sensitivity::DetectionScheme scheme) const;

private:
    OracleOptions opts_;
    const kernels::KernelTable* kernels_;
    MachZehnder mzi_;
};

OracleReport numeric_sensitivity(const sensitivity::InputStateSpec& spec, double phi,
                                 sensitivity::DetectionScheme scheme, const OracleOptions& opts = {});

/// Smallest n_max >= start whose input-state truncation tail is below `gate`.
std::size_t recommended_n_max(const sensitivity::InputStateSpec& spec, double gate = 1e-10,
                              std::size_t start = 40, std::size_t limit = 400);

}  // namespace vbir::fock
