#pragma once

// Facility registry and scenario evaluation: vacuum-induced phase shift against
// the achievable interferometer sensitivity.

#include "vbir/qed_phase.hpp"
#include "vbir/sensitivity.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vbir::feasibility {

struct Facility {
    qed::PumpLaser pump;
    std::string note;

    const std::string& name() const { return pump.name; }
};

/// ELI-NP, ELI-BL, Vulcan and LFEX, all focused to w0 = 3 um at 820 nm.
std::vector<Facility> built_in_facilities();

/// Parses {"facilities": [{"name", "E_L", "tau_L", "lambda_L"?, "w0"?, "note"?}]}.
/// Throws ConfigError naming the offending field.
std::vector<Facility> parse_facilities(std::string_view json_text, const std::string& source = "<input>");
std::vector<Facility> load_facility_file(const std::filesystem::path& path);

class Registry {
public:
    Registry();  ///< built-ins only
    explicit Registry(std::vector<Facility> facilities);
    static Registry with_file(const std::filesystem::path& path);

    const std::vector<Facility>& facilities() const { return facilities_; }
    /// Case-insensitive; throws ConfigError for unknown names.
    const Facility& find(std::string_view name) const;
    /// Adds or replaces by name.
    void add(Facility f);

private:
    std::vector<Facility> facilities_;
};

/// How the probe light is prepared; the displacement follows from the photon budget
/// N = P tau_L / (h c / lambda_p) over the pump duration.
enum class StateKind { Coherent, CoherentSqueezedVacuum, DualSqueezedCoherent };

struct Scenario {
    Facility facility;
    qed::ProbeBeam probe;
    StateKind state = StateKind::Coherent;
    double squeezing = 0.0;  ///< r, squeezed states only
    sensitivity::Readout readout = sensitivity::Bound::StandardQuantumLimit;
    sensitivity::LossModel loss;
    std::uint64_t n_exp = 1;
    qed::Polarization verdict_polarization = qed::Polarization::Parallel;
    std::string label;
};

struct FeasibilityRow {
    std::string label;
    std::string facility;
    double photons = 0.0;  ///< <N> over the pump duration
    double dphi_qed_par = 0.0;
    double dphi_qed_perp = 0.0;
    double dphi_achievable = 0.0;
    std::optional<double> operating_phase;
    double margin_par = 0.0;   ///< achievable / dphi_qed_par
    double margin_perp = 0.0;  ///< achievable / dphi_qed_perp
    bool feasible_par = false;
    bool feasible_perp = false;
    qed::Polarization verdict_polarization = qed::Polarization::Parallel;
    std::vector<std::string> assumptions;

    double margin() const { return verdict_polarization == qed::Polarization::Parallel ? margin_par : margin_perp; }
    bool feasible() const { return margin() <= 1.0; }
};

/// The state prepared for `s`, sized from the photon budget.
sensitivity::InputStateSpec scenario_state(const Scenario& s);
FeasibilityRow evaluate_scenario(const Scenario& s);

/// {"scenarios": [...]} or a single scenario object; facilities resolved through `reg`.
std::vector<Scenario> parse_scenarios(std::string_view json_text, const Registry& reg,
                                      const std::string& source = "<input>");
std::vector<Scenario> load_scenario_file(const std::filesystem::path& path, const Registry& reg);

// --- published comparison tables ------------------------------------------------------------

struct TableCell {
    std::string column;
    FeasibilityRow row;
    double reference = 0.0;  ///< published value
    bool reference_feasible = false;  ///< published value is highlighted as within reach
};

struct TableRow {
    std::string facility;
    double field = 0.0;
    double pulse_duration = 0.0;
    std::vector<TableCell> cells;
};

struct TableReport {
    int number = 0;
    std::string title;
    std::vector<TableRow> rows;
};

/// Shot-noise limit for CW probes at 100 and 500 W and pulsed probes at 1e10 and 1e12 W.
TableReport table1_report();
/// Heisenberg limit at 10 and 100 W; coherent + squeezed vacuum at 200 W with r = 3.5 and 6.
TableReport table2_report();

struct TableCheck {
    std::size_t cells = 0;
    std::size_t values_within = 0;
    std::size_t verdicts_matching = 0;
    std::vector<std::string> failures;

    bool passed() const { return values_within == cells && verdicts_matching == cells; }
};

/// Value agreement is |computed - published| <= tolerance * published.
TableCheck check_table(const TableReport& t, double tolerance = 0.05);

}  // namespace vbir::feasibility
