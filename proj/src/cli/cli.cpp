#include "vbir/cli.hpp"

#include "vbir/errors.hpp"
#include "vbir/feasibility.hpp"
#include "vbir/fock_oracle.hpp"
#include "vbir/qed_phase.hpp"
#include "vbir/report.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

namespace vbir::cli {

namespace {

using feasibility::Registry;
using report::Cell;
using report::Report;
using report::Table;
using sensitivity::DetectionScheme;

// --- phase expressions ----------------------------------------------------------------------

class PhaseParser {
public:
    explicit PhaseParser(std::string_view s) : s_(s) {}

    double parse() {
        const double v = expr();
        skip();
        if (pos_ != s_.size()) {
            fail("unexpected '" + std::string(s_.substr(pos_)) + "'");
        }
        if (!std::isfinite(v)) {
            fail("not a finite number");
        }
        return v;
    }

private:
    double expr() {
        double v = term();
        for (;;) {
            skip();
            if (eat('+')) {
                v += term();
            } else if (eat('-')) {
                v -= term();
            } else {
                return v;
            }
        }
    }

    double term() {
        double v = factor();
        for (;;) {
            skip();
            if (eat('*')) {
                v *= factor();
            } else if (eat('/')) {
                v /= factor();
            } else if (pos_ < s_.size() && (s_[pos_] == 'p' || s_[pos_] == '(')) {
                v *= factor();  // 3pi, 2(pi/3)
            } else {
                return v;
            }
        }
    }

    double factor() {
        skip();
        if (eat('-')) {
            return -factor();
        }
        if (eat('+')) {
            return factor();
        }
        if (eat('(')) {
            const double v = expr();
            skip();
            if (!eat(')')) {
                fail("missing ')'");
            }
            return v;
        }
        if (s_.substr(pos_, 2) == "pi") {
            pos_ += 2;
            return std::numbers::pi;
        }
        const std::string rest(s_.substr(pos_));
        const char* begin = rest.c_str();
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) {
            fail("expected a number or pi");
        }
        pos_ += static_cast<std::size_t>(end - begin);
        return v;
    }

    bool eat(char c) {
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError("phase '" + std::string(s_) + "': " + what);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

std::map<std::string, double> parse_params(std::string_view params) {
    std::map<std::string, double> out;
    std::size_t start = 0;
    bool first = true;
    while (start <= params.size()) {
        std::size_t comma = params.find(',', start);
        if (comma == std::string_view::npos) {
            comma = params.size();
        }
        const std::string_view item = params.substr(start, comma - start);
        if (item.empty()) {
            throw ConfigError("empty entry in '" + std::string(params) + "'");
        }
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos) {
            if (!first) {
                throw ConfigError("expected key=value, got '" + std::string(item) + "'");
            }
            out["alpha"] = parse_phase(item);
        } else {
            const std::string key(item.substr(0, eq));
            if (out.count(key)) {
                throw ConfigError("duplicate key '" + key + "'");
            }
            out[key] = parse_phase(item.substr(eq + 1));
        }
        first = false;
        start = comma + 1;
    }
    return out;
}

DetectionScheme parse_scheme(std::string_view s) {
    const auto r = sensitivity::parse_readout(s);
    if (!r || !std::holds_alternative<DetectionScheme>(*r)) {
        throw ConfigError("expected detection scheme diff or single, got '" + std::string(s) + "'");
    }
    return std::get<DetectionScheme>(*r);
}

std::string error_kind(const std::exception& e) {
    if (dynamic_cast<const DegenerateStateError*>(&e)) {
        return "degenerate-state";
    }
    if (dynamic_cast<const DivergenceError*>(&e)) {
        return "divergence";
    }
    if (dynamic_cast<const FieldValidityError*>(&e)) {
        return "field-validity";
    }
    if (dynamic_cast<const AboveThresholdError*>(&e)) {
        return "above-threshold";
    }
    if (dynamic_cast<const DomainError*>(&e)) {
        return "domain";
    }
    if (dynamic_cast<const ConfigError*>(&e)) {
        return "config";
    }
    return "internal";
}

std::string polarization_name(qed::Polarization p) {
    return p == qed::Polarization::Parallel ? "parallel" : "perpendicular";
}

Cell opt_cell(const std::optional<double>& v) { return v ? Cell{*v} : Cell{}; }

// --- commands -------------------------------------------------------------------------------

struct Globals {
    std::string format = "table";
    std::string facility_file;
    double tolerance = 0.0;
    bool tolerance_set = false;

    Registry registry() const {
        return facility_file.empty() ? Registry{} : Registry::with_file(facility_file);
    }
    double tol(double fallback) const { return tolerance_set ? tolerance : fallback; }
};

Report cmd_facilities(const Globals& g) {
    const Registry reg = g.registry();
    Report r{"facilities", {}, {}, std::nullopt, {}};
    Table t{"pump lasers", {{"name", ""}, {"E_L", "V/m"}, {"tau_L", "s"}, {"lambda_L", "m"}, {"w0", "m"},
                            {"dphi_par", "rad"}, {"dphi_perp", "rad"}, {"note", ""}}, {}};
    for (const feasibility::Facility& f : reg.facilities()) {
        const qed::PhaseShifts s = qed::qed_phase_shift(f.pump, 532e-9);
        t.add_row({f.name(), f.pump.field, f.pump.pulse_duration, f.pump.wavelength, f.pump.waist, s.parallel,
                   s.perpendicular, f.note});
    }
    r.tables.push_back(std::move(t));
    r.notes.emplace_back("probe wavelength [m]", "5.32e-07");
    return r;
}

struct PhaseShiftArgs {
    std::string facility;
    double lambda_p = 532e-9;
    std::string polarization = "both";
};

Report cmd_phase_shift(const Globals& g, const PhaseShiftArgs& a) {
    const feasibility::Facility f = g.registry().find(a.facility);
    const qed::PhaseShifts closed = qed::qed_phase_shift(f.pump, a.lambda_p);
    const qed::PhaseShifts via = qed::qed_phase_shift_via_index(f.pump, a.lambda_p);
    const qed::RefractionIndices n = qed::refraction_indices(f.pump.field);
    const double tol = g.tol(1e-9);

    Report r{"phase-shift", {}, {}, std::nullopt, {}};
    Table t{"vacuum-induced phase shift, " + f.name(),
            {{"polarization", ""}, {"closed form", "rad"}, {"index route", "rad"}, {"n - 1", ""},
             {"rel. difference", ""}},
            {}};
    bool agree = true;
    auto add = [&](qed::Polarization p, double n_minus_1) {
        const double d = std::abs(closed[p] - via[p]) / closed[p];
        agree = agree && d <= tol;
        t.add_row({polarization_name(p), closed[p], via[p], n_minus_1, d});
    };
    if (a.polarization == "both" || a.polarization == "parallel") {
        add(qed::Polarization::Parallel, n.parallel_excess);
    }
    if (a.polarization == "both" || a.polarization == "perpendicular") {
        add(qed::Polarization::Perpendicular, n.perpendicular_excess);
    }
    r.tables.push_back(std::move(t));
    r.notes.emplace_back("facility", f.name());
    r.notes.emplace_back("probe wavelength [m]", report::sci(a.lambda_p));
    r.notes.emplace_back("depth of focus [m]",
                         report::sci(qed::rayleigh_distance(f.pump.waist, f.pump.wavelength).depth_of_focus));
    r.check_passed = agree;
    return r;
}

struct SensitivityArgs {
    std::string coherent;
    std::string csv;
    std::string dual;
    std::string scheme = "diff";
    std::string phase = "optimal";
    double loss = 0.0;
    std::uint64_t n_exp = 1;
    double delta_omega = 0.0;
    double carrier_omega = 0.0;
};

Report cmd_sensitivity(const SensitivityArgs& a) {
    const int given = !a.coherent.empty() + !a.csv.empty() + !a.dual.empty();
    if (given != 1) {
        throw ConfigError("give exactly one of --coherent, --csv, --dual");
    }
    const sensitivity::InputStateSpec spec = !a.coherent.empty() ? parse_state("coherent", a.coherent)
                                             : !a.csv.empty()    ? parse_state("csv", a.csv)
                                                                 : parse_state("dual", a.dual);
    const auto readout = sensitivity::parse_readout(a.scheme);
    if (!readout) {
        throw ConfigError("unknown --scheme '" + a.scheme + "'");
    }
    sensitivity::EstimateOptions opts;
    if (a.phase != "optimal") {
        opts.phase = parse_phase(a.phase);
    }
    opts.loss.sigma = a.loss;
    opts.n_exp = a.n_exp;
    opts.delta_omega = a.delta_omega;
    opts.carrier_omega = a.carrier_omega;
    const sensitivity::SensitivityEstimate est = sensitivity::estimate(spec, *readout, opts);

    Report r{"sensitivity", {}, {}, std::nullopt, {}};
    Table t{"phase sensitivity",
            {{"state", ""}, {"readout", ""}, {"mean photons", ""}, {"phase", "rad"}, {"dphi", "rad"}},
            {}};
    t.add_row({sensitivity::describe(spec), sensitivity::to_string(*readout), sensitivity::mean_photons(spec),
               opt_cell(est.operating_phase), est.value});
    r.tables.push_back(std::move(t));
    r.messages = est.assumptions;
    return r;
}

struct FeasibilityArgs {
    int table = 0;
    std::string scenario;
    bool check = false;
};

Report cmd_feasibility(const Globals& g, const FeasibilityArgs& a) {
    if ((a.table != 0) == !a.scenario.empty()) {
        throw ConfigError("give exactly one of --table or --scenario");
    }
    Report r{"feasibility", {}, {}, std::nullopt, {}};
    if (a.table != 0) {
        if (a.table != 1 && a.table != 2) {
            throw ConfigError("--table must be 1 or 2");
        }
        const feasibility::TableReport rep = a.table == 1 ? feasibility::table1_report() : feasibility::table2_report();
        Table t{rep.title,
                {{"facility", ""}, {"probe", ""}, {"dphi", "rad"}, {"published", "rad"}, {"deviation", ""},
                 {"dphi_qed_par", "rad"}, {"dphi_qed_perp", "rad"}, {"margin", ""}, {"feasible", ""},
                 {"published feasible", ""}},
                {}};
        for (const auto& row : rep.rows) {
            for (const auto& c : row.cells) {
                t.add_row({row.facility, c.column, c.row.dphi_achievable, c.reference,
                           (c.row.dphi_achievable - c.reference) / c.reference, c.row.dphi_qed_par,
                           c.row.dphi_qed_perp, c.row.margin(), c.row.feasible(), c.reference_feasible});
            }
        }
        r.tables.push_back(std::move(t));
        r.notes.emplace_back("verdict polarization", "parallel");
        if (a.check) {
            const double tol = g.tol(0.05);
            const feasibility::TableCheck chk = feasibility::check_table(rep, tol);
            r.notes.emplace_back("tolerance", report::sci(tol));
            r.notes.emplace_back("values within tolerance",
                                 std::to_string(chk.values_within) + "/" + std::to_string(chk.cells));
            r.notes.emplace_back("verdicts matching",
                                 std::to_string(chk.verdicts_matching) + "/" + std::to_string(chk.cells));
            r.messages = chk.failures;
            r.check_passed = chk.passed();
        }
        return r;
    }
    const Registry reg = g.registry();
    const std::vector<feasibility::Scenario> scenarios = feasibility::load_scenario_file(a.scenario, reg);
    Table t{"scenarios",
            {{"label", ""}, {"facility", ""}, {"readout", ""}, {"n_exp", ""}, {"photons", ""}, {"phase", "rad"},
             {"dphi", "rad"}, {"dphi_qed_par", "rad"}, {"dphi_qed_perp", "rad"}, {"margin_par", ""},
             {"margin_perp", ""}, {"verdict", ""}},
            {}};
    bool all = true;
    for (const feasibility::Scenario& s : scenarios) {
        const feasibility::FeasibilityRow row = feasibility::evaluate_scenario(s);
        all = all && row.feasible();
        t.add_row({s.label, row.facility, sensitivity::to_string(s.readout), static_cast<std::int64_t>(s.n_exp),
                   row.photons, opt_cell(row.operating_phase), row.dphi_achievable, row.dphi_qed_par,
                   row.dphi_qed_perp, row.margin_par, row.margin_perp,
                   std::string(row.feasible() ? "feasible" : "infeasible") + " (" +
                       polarization_name(row.verdict_polarization) + ")"});
    }
    r.tables.push_back(std::move(t));
    if (a.check) {
        r.check_passed = all;
    }
    return r;
}

struct OracleArgs {
    std::string suite;
    std::vector<std::string> cases;
    std::size_t n_max = 40;
};

struct OracleCase {
    sensitivity::InputStateSpec spec;
    double phase;
    DetectionScheme scheme;
};

OracleCase parse_case(const std::string& text) {
    const std::size_t at = text.find('@');
    const std::size_t colon = text.find(':');
    const std::size_t last = text.rfind(':');
    if (at == std::string::npos || colon == std::string::npos || colon > at || last < at) {
        throw ConfigError("case '" + text + "': expected kind:params@phase:scheme");
    }
    return {parse_state(text.substr(0, colon), text.substr(colon + 1, at - colon - 1)),
            parse_phase(text.substr(at + 1, last - at - 1)), parse_scheme(text.substr(last + 1))};
}

std::vector<OracleCase> default_suite() {
    constexpr double pi = std::numbers::pi;
    std::vector<OracleCase> out;
    for (double alpha : {0.5, 1.0, 2.0}) {
        for (double r : {0.0, 0.5}) {
            for (double theta : {0.0, pi / 4, pi / 2}) {
                for (double phi : {pi / 3, pi / 2, 2 * pi / 3}) {
                    for (DetectionScheme s : {DetectionScheme::Difference, DetectionScheme::SingleDetector}) {
                        if (r == 0.0) {
                            out.push_back({sensitivity::Coherent{alpha, theta}, phi, s});
                        } else {
                            out.push_back({sensitivity::CoherentSqueezedVacuum{alpha, theta, r}, phi, s});
                        }
                    }
                }
            }
        }
    }
    return out;
}

std::string case_label(const OracleCase& c) {
    std::ostringstream os;
    os.precision(6);
    os << sensitivity::describe(c.spec) << " phi=" << c.phase << " " << sensitivity::to_string(c.scheme);
    return os.str();
}

Report cmd_oracle(const Globals& g, const OracleArgs& a) {
    if (a.suite.empty() == a.cases.empty()) {
        throw ConfigError("give exactly one of --suite or --case");
    }
    if (!a.suite.empty() && a.suite != "default") {
        throw ConfigError("unknown suite '" + a.suite + "'");
    }
    std::vector<OracleCase> cases;
    if (!a.suite.empty()) {
        cases = default_suite();
    } else {
        for (const std::string& c : a.cases) {
            cases.push_back(parse_case(c));
        }
    }
    fock::OracleOptions opts;
    opts.n_max = a.n_max;
    const fock::Oracle oracle(opts);
    const double tol = g.tol(0.01);

    Report r{"oracle", {}, {}, std::nullopt, {}};
    Table t{"numeric sensitivity on the photon-number basis vs closed form",
            {{"case", ""}, {"n_max", ""}, {"truncation tail", ""}, {"numeric", "rad"}, {"closed form", "rad"},
             {"rel. error", ""}, {"mean", ""}, {"closed mean", ""}, {"variance", ""}, {"closed variance", ""},
             {"status", ""}},
            {}};
    std::size_t failed = 0;
    std::size_t gated = 0;
    std::size_t skipped = 0;
    for (const OracleCase& c : cases) {
        fock::OracleReport rep;
        try {
            rep = oracle.numeric_sensitivity(c.spec, c.phase, c.scheme);
        } catch (const DomainError& e) {
            // Singular or degenerate point: no finite sensitivity to compare.
            ++skipped;
            t.add_row({case_label(c),
                       static_cast<std::int64_t>(a.n_max), Cell{}, Cell{}, Cell{}, Cell{}, Cell{}, Cell{}, Cell{},
                       Cell{}, "skipped (" + error_kind(e) + ")"});
            r.messages.push_back(e.what());
            continue;
        }
        const auto n = static_cast<std::int64_t>(rep.n_max);
        if (rep.gated) {
            ++gated;
            t.add_row({rep.label, n, rep.truncation_tail, Cell{}, rep.closed_form_value, Cell{}, Cell{},
                       rep.closed_form_mean, Cell{}, rep.closed_form_variance, std::string("gated")});
            continue;
        }
        const bool ok = rep.relative_error <= tol;
        failed += !ok;
        std::string status = ok ? "ok" : "FAIL";
        if (rep.limit_offset) {
            status += " (limit at +-" + report::sci(*rep.limit_offset, 2) + ")";
        }
        t.add_row({rep.label, n, rep.truncation_tail, rep.numeric_sensitivity, rep.closed_form_value,
                   rep.relative_error, rep.mean, rep.closed_form_mean, rep.variance, rep.closed_form_variance,
                   status});
    }
    r.tables.push_back(std::move(t));
    r.notes.emplace_back("phase step [rad]", report::sci(opts.dphi_step));
    r.notes.emplace_back("truncation gate", report::sci(opts.truncation_gate));
    r.notes.emplace_back("tolerance", report::sci(tol));
    r.notes.emplace_back("kernels", std::string(kernels::name(kernels::active().backend)));
    r.messages.push_back(std::to_string(cases.size() - gated - failed - skipped) + " ok, " +
                         std::to_string(failed) + " failed, " + std::to_string(gated) + " gated, " +
                         std::to_string(skipped) + " skipped");
    r.check_passed = failed == 0;
    return r;
}

struct SpectrumArgs {
    double p = 0.0;
    double eta = 1.0;
    double transmission = 0.1;
    double loss = 0.0;
    double length = 1.0;
    double omega_min = 0.0;
    double omega_max = -1.0;
    int points = 11;
};

Report cmd_spectrum(const SpectrumArgs& a) {
    sensitivity::SqueezerConfig cfg;
    cfg.pump_ratio = a.p;
    cfg.detection_efficiency = a.eta;
    cfg.mirror_transmission = a.transmission;
    cfg.round_trip_loss = a.loss;
    cfg.cavity_length = a.length;
    cfg.validate();
    if (a.points < 1) {
        throw ConfigError("--points must be at least 1");
    }
    const double gamma = cfg.linewidth();
    const double hi = a.omega_max < 0.0 ? 5.0 * gamma : a.omega_max;
    if (hi < a.omega_min) {
        throw ConfigError("--omega-max below --omega-min");
    }
    const auto n = static_cast<std::size_t>(a.points);
    std::vector<double> omega(n);
    for (std::size_t i = 0; i < n; ++i) {
        omega[i] = n == 1 ? a.omega_min : a.omega_min + (hi - a.omega_min) * static_cast<double>(i) / (n - 1);
    }
    std::vector<double> anti(n);
    std::vector<double> sq(n);
    sensitivity::quadrature_variance_spectrum(cfg, omega, anti, sq);

    Report r{"spectrum", {}, {}, std::nullopt, {}};
    Table t{"quadrature variances of the squeezer output",
            {{"Omega", "rad/s"}, {"Omega/Gamma", ""}, {"antisqueezed", ""}, {"squeezed", ""}, {"product", ""}},
            {}};
    for (std::size_t i = 0; i < n; ++i) {
        t.add_row({omega[i], omega[i] / gamma, anti[i], sq[i], anti[i] * sq[i]});
    }
    r.tables.push_back(std::move(t));
    r.notes.emplace_back("Gamma [rad/s]", report::sci(gamma));
    r.notes.emplace_back("squeezing at Omega=0 [dB]", report::sci(-10.0 * std::log10(sq[0] > 0 ? sq[0] : 1.0)));
    return r;
}

}  // namespace

double parse_phase(std::string_view expr) { return PhaseParser(expr).parse(); }

sensitivity::InputStateSpec parse_state(std::string_view kind, std::string_view params) {
    std::map<std::string, double> p = parse_params(params);
    auto take = [&](const char* key, bool required) {
        const auto it = p.find(key);
        if (it == p.end()) {
            if (required) {
                throw ConfigError(std::string(kind) + " state: missing " + key);
            }
            return 0.0;
        }
        const double v = it->second;
        p.erase(it);
        return v;
    };
    sensitivity::InputStateSpec spec;
    if (kind == "coherent") {
        const double alpha = take("alpha", true);
        spec = sensitivity::Coherent{alpha, take("theta", false)};
    } else if (kind == "csv") {
        const double alpha = take("alpha", true);
        const double r = take("r", true);
        spec = sensitivity::CoherentSqueezedVacuum{alpha, take("theta", false), r};
    } else if (kind == "dual") {
        const double alpha = take("alpha", true);
        spec = sensitivity::DualSqueezedCoherent{alpha, take("r", true)};
    } else {
        throw ConfigError("unknown state kind '" + std::string(kind) + "' (coherent, csv, dual)");
    }
    if (!p.empty()) {
        throw ConfigError(std::string(kind) + " state: unknown key '" + p.begin()->first + "'");
    }
    sensitivity::validate(spec);
    return spec;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Vacuum birefringence interferometry: phase shifts, sensitivities, feasibility"};
    app.name("vbir");
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"table", "csv", "json"}))
        ->capture_default_str();
    app.add_option("--facility-file", g.facility_file, "JSON file with additional facilities");
    CLI::Option* tol_opt = app.add_option("--tolerance", g.tolerance, "Override the command's check tolerance");

    auto* fac = app.add_subcommand("facilities", "List built-in and user facilities");

    PhaseShiftArgs ps;
    auto* phase = app.add_subcommand("phase-shift", "Vacuum-induced phase shift for a facility");
    phase->add_option("--facility", ps.facility, "Facility name")->required();
    phase->add_option("--lambda-p", ps.lambda_p, "Probe wavelength [m]")->capture_default_str();
    phase->add_option("--polarization", ps.polarization, "Probe polarization")
        ->check(CLI::IsMember({"both", "parallel", "perpendicular"}))
        ->capture_default_str();

    SensitivityArgs sa;
    auto* sens = app.add_subcommand("sensitivity", "Phase sensitivity of an input state");
    sens->add_option("--coherent", sa.coherent, "Coherent state: alpha[,theta=..]");
    sens->add_option("--csv", sa.csv, "Coherent + squeezed vacuum: alpha=..,r=..[,theta=..]");
    sens->add_option("--dual", sa.dual, "Squeezed coherent light in both ports: alpha=..,r=..");
    sens->add_option("--scheme", sa.scheme,
                     "diff, single, SQL, pulsed-SQL, HL, CSV-bound, CSV-approx or SQC-bound")
        ->capture_default_str();
    sens->add_option("--phase", sa.phase, "optimal or an expression such as 3pi/4")->capture_default_str();
    sens->add_option("--loss", sa.loss, "Photon loss fraction sigma")->capture_default_str();
    sens->add_option("--n-exp", sa.n_exp, "Number of repeated measurements")->capture_default_str();
    sens->add_option("--delta-omega", sa.delta_omega, "Probe spectral width [rad/s], pulsed-SQL only");
    sens->add_option("--carrier-omega", sa.carrier_omega, "Probe carrier frequency [rad/s], pulsed-SQL only");

    FeasibilityArgs fa;
    auto* feas = app.add_subcommand("feasibility", "Published comparison tables or scenario files");
    feas->add_option("--table", fa.table, "1 (shot-noise limit) or 2 (non-classical light)");
    feas->add_option("--scenario", fa.scenario, "JSON scenario file");
    feas->add_flag("--check", fa.check, "Exit 1 unless every value and verdict checks out");

    OracleArgs oa;
    auto* orc = app.add_subcommand("oracle", "Check closed forms against the photon-number simulation");
    orc->add_option("--suite", oa.suite, "Named case grid (default)");
    orc->add_option("--case", oa.cases, "kind:params@phase:scheme, e.g. coherent:2@pi/2:diff");
    orc->add_option("--n-max", oa.n_max, "Photon-number cutoff per mode")->capture_default_str();

    SpectrumArgs spa;
    auto* spec = app.add_subcommand("spectrum", "Squeezer quadrature variances over a sideband grid");
    spec->add_option("--p", spa.p, "Pump power over threshold")->required();
    spec->add_option("--eta", spa.eta, "Detection efficiency")->capture_default_str();
    spec->add_option("--transmission", spa.transmission, "Output mirror transmission T")->capture_default_str();
    spec->add_option("--loss", spa.loss, "Round-trip loss L")->capture_default_str();
    spec->add_option("--length", spa.length, "Cavity length [m]")->capture_default_str();
    spec->add_option("--omega-min", spa.omega_min, "Lowest sideband [rad/s]")->capture_default_str();
    spec->add_option("--omega-max", spa.omega_max, "Highest sideband [rad/s], default 5 Gamma");
    spec->add_option("--points", spa.points, "Grid size")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? Ok : UsageError;
    }
    g.tolerance_set = tol_opt->count() > 0;

    try {
        Report r;
        if (fac->parsed()) {
            r = cmd_facilities(g);
        } else if (phase->parsed()) {
            r = cmd_phase_shift(g, ps);
        } else if (sens->parsed()) {
            r = cmd_sensitivity(sa);
        } else if (feas->parsed()) {
            r = cmd_feasibility(g, fa);
        } else if (orc->parsed()) {
            r = cmd_oracle(g, oa);
        } else {
            r = cmd_spectrum(spa);
        }
        out << report::render(r, report::parse_format(g.format));
        return r.check_passed.value_or(true) ? Ok : CheckFailed;
    } catch (const std::exception& e) {
        err << "error (" << error_kind(e) << "): " << e.what() << '\n';
        return UsageError;
    }
}

}  // namespace vbir::cli
