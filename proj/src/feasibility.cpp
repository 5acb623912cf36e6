#include "vbir/feasibility.hpp"

#include "util.hpp"
#include "vbir/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace vbir::feasibility {

namespace {

using nlohmann::json;
using sensitivity::Bound;

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

Facility make_facility(std::string name, double field, double duration, std::string note) {
    Facility f;
    f.pump.name = std::move(name);
    f.pump.field = field;
    f.pump.pulse_duration = duration;
    f.note = std::move(note);
    return f;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError(path.string() + ": cannot open file");
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json parse_json(std::string_view text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(source + ": not valid JSON: " + e.what());
    }
}

// Field access with diagnostics of the form "<source>: <path>.<field>: <problem>".
class Fields {
public:
    Fields(const json& obj, std::string where) : obj_(obj), where_(std::move(where)) {
        if (!obj_.is_object()) {
            throw ConfigError(where_ + ": expected an object");
        }
    }

    bool has(const char* key) const { return obj_.contains(key); }

    double positive(const char* key) const {
        const double v = number(key);
        if (!(v > 0.0)) {
            fail(key, "must be positive, got " + detail::num(v));
        }
        return v;
    }

    double positive_or(const char* key, double fallback) const { return has(key) ? positive(key) : fallback; }

    double number(const char* key) const {
        if (!has(key)) {
            fail(key, "missing");
        }
        const json& v = obj_.at(key);
        if (!v.is_number()) {
            fail(key, "expected a number");
        }
        return v.get<double>();
    }

    double number_or(const char* key, double fallback) const { return has(key) ? number(key) : fallback; }

    std::string text(const char* key) const {
        if (!has(key)) {
            fail(key, "missing");
        }
        const json& v = obj_.at(key);
        if (!v.is_string()) {
            fail(key, "expected a string");
        }
        return v.get<std::string>();
    }

    std::string text_or(const char* key, std::string fallback) const {
        return has(key) ? text(key) : std::move(fallback);
    }

    std::uint64_t count_or(const char* key, std::uint64_t fallback) const {
        if (!has(key)) {
            return fallback;
        }
        const json& v = obj_.at(key);
        if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
            fail(key, "expected an integer >= 1");
        }
        return v.get<std::uint64_t>();
    }

    const json& object(const char* key) const {
        if (!has(key) || !obj_.at(key).is_object()) {
            fail(key, "expected an object");
        }
        return obj_.at(key);
    }

    [[noreturn]] void fail(const char* key, const std::string& what) const {
        throw ConfigError(where_ + "." + key + ": " + what);
    }

    const std::string& where() const { return where_; }

private:
    const json& obj_;
    std::string where_;
};

qed::Polarization parse_polarization(const Fields& f, const char* key) {
    const std::string p = lower(f.text_or(key, "parallel"));
    if (p == "parallel" || p == "par") {
        return qed::Polarization::Parallel;
    }
    if (p == "perpendicular" || p == "perp") {
        return qed::Polarization::Perpendicular;
    }
    f.fail(key, "expected parallel or perpendicular, got '" + p + "'");
}

}  // namespace

std::vector<Facility> built_in_facilities() {
    return {
        make_facility("ELI-NP", 1e15, 22e-15, "10 PW"),
        make_facility("ELI-BL", 1e15, 150e-15, "10 PW"),
        make_facility("Vulcan", 1e14, 500e-15, "1 PW"),
        make_facility("LFEX", 1e14, 1e-11, "1 PW"),
    };
}

std::vector<Facility> parse_facilities(std::string_view json_text, const std::string& source) {
    const json doc = parse_json(json_text, source);
    const Fields top(doc, source);
    if (!top.has("facilities") || !doc.at("facilities").is_array()) {
        top.fail("facilities", "expected an array");
    }
    std::vector<Facility> out;
    const json& list = doc.at("facilities");
    for (std::size_t i = 0; i < list.size(); ++i) {
        const Fields f(list[i], source + ": facilities[" + std::to_string(i) + "]");
        Facility fac;
        fac.pump.name = f.text("name");
        if (fac.pump.name.empty()) {
            f.fail("name", "must not be empty");
        }
        fac.pump.field = f.positive("E_L");
        fac.pump.pulse_duration = f.positive("tau_L");
        fac.pump.wavelength = f.positive_or("lambda_L", fac.pump.wavelength);
        fac.pump.waist = f.positive_or("w0", fac.pump.waist);
        fac.note = f.text_or("note", "");
        try {
            fac.pump.validate();
        } catch (const DomainError& e) {
            f.fail("E_L", e.what());
        }
        out.push_back(std::move(fac));
    }
    return out;
}

std::vector<Facility> load_facility_file(const std::filesystem::path& path) {
    return parse_facilities(read_file(path), path.string());
}

Registry::Registry() : facilities_(built_in_facilities()) {}

Registry::Registry(std::vector<Facility> facilities) : facilities_(std::move(facilities)) {}

Registry Registry::with_file(const std::filesystem::path& path) {
    Registry reg;
    for (Facility& f : load_facility_file(path)) {
        reg.add(std::move(f));
    }
    return reg;
}

const Facility& Registry::find(std::string_view name) const {
    const std::string key = lower(name);
    for (const Facility& f : facilities_) {
        if (lower(f.name()) == key) {
            return f;
        }
    }
    throw ConfigError("unknown facility '" + std::string(name) + "'");
}

void Registry::add(Facility f) {
    const std::string key = lower(f.name());
    for (Facility& existing : facilities_) {
        if (lower(existing.name()) == key) {
            existing = std::move(f);
            return;
        }
    }
    facilities_.push_back(std::move(f));
}

// --- scenarios ------------------------------------------------------------------------------

sensitivity::InputStateSpec scenario_state(const Scenario& s) {
    const double n = sensitivity::mean_photon_number(s.probe.power, s.facility.pump.pulse_duration,
                                                     s.probe.wavelength);
    switch (s.state) {
        case StateKind::Coherent:
            return sensitivity::Coherent{std::sqrt(n), 0.0};
        case StateKind::CoherentSqueezedVacuum:
            return sensitivity::CoherentSqueezedVacuum{std::sqrt(n), 0.0, s.squeezing};
        case StateKind::DualSqueezedCoherent: {
            // N is split evenly between the two ports.
            const double sh = std::sinh(s.squeezing);
            const double a2 = 0.5 * n - sh * sh;
            if (a2 < 0.0) {
                throw DomainError("squeezing r = " + detail::num(s.squeezing) + " needs more than the " +
                                  detail::num(n) + " available photons");
            }
            return sensitivity::DualSqueezedCoherent{std::sqrt(a2), s.squeezing};
        }
    }
    throw DomainError("unknown state kind");
}

FeasibilityRow evaluate_scenario(const Scenario& s) {
    s.facility.pump.validate();
    s.probe.validate();
    if (s.n_exp < 1) {
        throw DomainError("n_exp must be at least 1");
    }
    FeasibilityRow row;
    row.label = s.label;
    row.facility = s.facility.name();
    row.photons = sensitivity::mean_photon_number(s.probe.power, s.facility.pump.pulse_duration, s.probe.wavelength);
    const qed::PhaseShifts shift = qed::qed_phase_shift(s.facility.pump, s.probe.wavelength);
    row.dphi_qed_par = shift.parallel;
    row.dphi_qed_perp = shift.perpendicular;

    sensitivity::EstimateOptions opts;
    opts.loss = s.loss;
    opts.n_exp = s.n_exp;
    opts.delta_omega = s.probe.spectral_width;
    opts.carrier_omega = s.probe.angular_frequency();
    const sensitivity::SensitivityEstimate est = sensitivity::estimate(scenario_state(s), s.readout, opts);
    row.dphi_achievable = est.value;
    row.operating_phase = est.operating_phase;
    row.assumptions = est.assumptions;
    row.margin_par = est.value / shift.parallel;
    row.margin_perp = est.value / shift.perpendicular;
    row.feasible_par = row.margin_par <= 1.0;
    row.feasible_perp = row.margin_perp <= 1.0;
    row.verdict_polarization = s.verdict_polarization;
    return row;
}

std::vector<Scenario> parse_scenarios(std::string_view json_text, const Registry& reg, const std::string& source) {
    const json doc = parse_json(json_text, source);
    std::vector<const json*> items;
    std::vector<std::string> where;
    if (doc.is_object() && doc.contains("scenarios")) {
        const json& list = doc.at("scenarios");
        if (!list.is_array()) {
            throw ConfigError(source + ": scenarios: expected an array");
        }
        for (std::size_t i = 0; i < list.size(); ++i) {
            items.push_back(&list[i]);
            where.push_back(source + ": scenarios[" + std::to_string(i) + "]");
        }
    } else {
        items.push_back(&doc);
        where.push_back(source);
    }

    std::vector<Scenario> out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const Fields f(*items[i], where[i]);
        Scenario s;
        const std::string fac = f.text("facility");
        try {
            s.facility = reg.find(fac);
        } catch (const ConfigError& e) {
            f.fail("facility", e.what());
        }
        s.label = f.text_or("label", "");

        const Fields probe(f.object("probe"), f.where() + ".probe");
        s.probe.power = probe.positive("power");
        s.probe.wavelength = probe.positive_or("wavelength", s.probe.wavelength);
        const std::string mode = lower(probe.text_or("mode", "cw"));
        if (mode == "cw" || mode == "continuous") {
            s.probe.mode = qed::ProbeMode::Continuous;
        } else if (mode == "pulsed") {
            s.probe.mode = qed::ProbeMode::Pulsed;
            s.probe.pulse_duration = probe.positive_or("pulse_duration", s.facility.pump.pulse_duration);
            s.probe.spectral_width = probe.number_or("spectral_width", 0.0);
        } else {
            probe.fail("mode", "expected cw or pulsed, got '" + mode + "'");
        }

        const std::string state = lower(f.text_or("state", "coherent"));
        if (state == "coherent") {
            s.state = StateKind::Coherent;
        } else if (state == "csv") {
            s.state = StateKind::CoherentSqueezedVacuum;
        } else if (state == "dual" || state == "sqc") {
            s.state = StateKind::DualSqueezedCoherent;
        } else {
            f.fail("state", "expected coherent, csv or dual, got '" + state + "'");
        }
        s.squeezing = f.number_or("r", 0.0);
        if (s.squeezing < 0.0) {
            f.fail("r", "must be non-negative");
        }
        const std::string readout = f.text_or("readout", "sql");
        const auto parsed = sensitivity::parse_readout(readout);
        if (!parsed) {
            f.fail("readout", "unknown readout '" + readout + "'");
        }
        s.readout = *parsed;
        s.loss.sigma = f.number_or("loss", 0.0);
        if (!(s.loss.sigma >= 0.0 && s.loss.sigma < 1.0)) {
            f.fail("loss", "must lie in [0, 1)");
        }
        s.n_exp = f.count_or("n_exp", 1);
        s.verdict_polarization = parse_polarization(f, "polarization");
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<Scenario> load_scenario_file(const std::filesystem::path& path, const Registry& reg) {
    return parse_scenarios(read_file(path), reg, path.string());
}

// --- published tables -----------------------------------------------------------------------

namespace {

struct PublishedCell {
    double value;
    bool highlighted;
};

struct ColumnSpec {
    std::string name;
    double power;
    qed::ProbeMode mode;
    StateKind state;
    double r;
    Bound bound;
};

using PublishedRow = std::array<PublishedCell, 4>;

TableReport build_table(int number, std::string title, const std::array<ColumnSpec, 4>& columns,
                        const std::array<PublishedRow, 4>& published) {
    TableReport t{number, std::move(title), {}};
    const std::vector<Facility> facilities = built_in_facilities();
    for (std::size_t i = 0; i < facilities.size(); ++i) {
        TableRow row{facilities[i].name(), facilities[i].pump.field, facilities[i].pump.pulse_duration, {}};
        for (std::size_t j = 0; j < columns.size(); ++j) {
            const ColumnSpec& c = columns[j];
            Scenario s;
            s.facility = facilities[i];
            s.probe.power = c.power;
            s.probe.mode = c.mode;
            if (c.mode == qed::ProbeMode::Pulsed) {
                // The probe pulse spans the pump interaction window.
                s.probe.pulse_duration = facilities[i].pump.pulse_duration;
            }
            s.state = c.state;
            s.squeezing = c.r;
            s.readout = c.bound;
            s.label = facilities[i].name() + " " + c.name;
            row.cells.push_back({c.name, evaluate_scenario(s), published[i][j].value, published[i][j].highlighted});
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace

TableReport table1_report() {
    using qed::ProbeMode;
    const std::array<ColumnSpec, 4> columns{{
        {"CW 100 W", 100.0, ProbeMode::Continuous, StateKind::Coherent, 0.0, Bound::StandardQuantumLimit},
        {"CW 500 W", 500.0, ProbeMode::Continuous, StateKind::Coherent, 0.0, Bound::StandardQuantumLimit},
        {"pulsed 1e10 W", 1e10, ProbeMode::Pulsed, StateKind::Coherent, 0.0, Bound::StandardQuantumLimit},
        {"pulsed 1e12 W", 1e12, ProbeMode::Pulsed, StateKind::Coherent, 0.0, Bound::StandardQuantumLimit},
    }};
    const std::array<PublishedRow, 4> published{{
        {{{4e-4, false}, {1.8e-4, false}, {4.1e-8, true}, {4.1e-9, true}}},
        {{{1.5e-4, false}, {7e-5, false}, {1.5e-8, true}, {1.5e-9, true}}},
        {{{8.6e-5, false}, {3.8e-5, false}, {8.6e-9, false}, {8.6e-10, true}}},
        {{{1.9e-5, false}, {8.6e-6, false}, {1.9e-9, true}, {1.9e-10, true}}},
    }};
    return build_table(1, "shot-noise limited sensitivity, coherent probe at 532 nm", columns, published);
}

TableReport table2_report() {
    using qed::ProbeMode;
    const std::array<ColumnSpec, 4> columns{{
        {"HL 10 W", 10.0, ProbeMode::Continuous, StateKind::Coherent, 0.0, Bound::HeisenbergLimit},
        {"HL 100 W", 100.0, ProbeMode::Continuous, StateKind::Coherent, 0.0, Bound::HeisenbergLimit},
        {"CSV 200 W r=3.5", 200.0, ProbeMode::Continuous, StateKind::CoherentSqueezedVacuum, 3.5,
         Bound::CoherentSqueezedApprox},
        {"CSV 200 W r=6", 200.0, ProbeMode::Continuous, StateKind::CoherentSqueezedVacuum, 6.0,
         Bound::CoherentSqueezedApprox},
    }};
    const std::array<PublishedRow, 4> published{{
        {{{1.6e-6, false}, {1.6e-7, true}, {8.7e-6, false}, {7e-7, true}}},
        {{{2.5e-7, true}, {2.5e-8, true}, {3.3e-6, false}, {2.7e-7, true}}},
        {{{7e-8, false}, {7e-9, true}, {1.8e-6, false}, {1.5e-7, false}}},
        {{{3.7e-9, true}, {3.7e-10, true}, {4.7e-7, false}, {3e-8, false}}},
    }};
    return build_table(2, "Heisenberg limit and coherent + squeezed vacuum, CW probe at 532 nm", columns, published);
}

TableCheck check_table(const TableReport& t, double tolerance) {
    TableCheck c;
    for (const TableRow& row : t.rows) {
        for (const TableCell& cell : row.cells) {
            ++c.cells;
            const double err = std::abs(cell.row.dphi_achievable - cell.reference) / cell.reference;
            if (err <= tolerance) {
                ++c.values_within;
            } else {
                c.failures.push_back(row.facility + " " + cell.column + ": " + detail::num(cell.row.dphi_achievable) +
                                     " vs published " + detail::num(cell.reference) + " (" + detail::num(100.0 * err) +
                                     "%)");
            }
            if (cell.row.feasible() == cell.reference_feasible) {
                ++c.verdicts_matching;
            } else {
                c.failures.push_back(row.facility + " " + cell.column + ": verdict " +
                                     (cell.row.feasible() ? "feasible" : "infeasible") + ", published as " +
                                     (cell.reference_feasible ? "feasible" : "infeasible"));
            }
        }
    }
    return c;
}

}  // namespace vbir::feasibility
