// SPDX-License-Identifier: MIT
#include "condlab/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/zeta.hpp>

#include "condlab/asymptotics.hpp"
#include "condlab/errors.hpp"
#include "condlab/fluctuations.hpp"
#include "condlab/ideal_bose.hpp"
#include "condlab/lattice.hpp"
#include "condlab/numerics.hpp"
#include "condlab/quasi_average.hpp"
#include "condlab/scp.hpp"

#ifndef CONDLAB_VERSION
#define CONDLAB_VERSION "unknown"
#endif

namespace condlab {

using nlohmann::json;

std::string to_string(CheckMode m) {
    switch (m) {
        case CheckMode::relative: return "relative";
        case CheckMode::absolute: return "absolute";
        case CheckMode::upper_bound: return "upper-bound";
        case CheckMode::match: return "match";
    }
    return "relative";
}

namespace {

json number_json(double x) {
    if (std::isfinite(x)) return x;
    return format_number(x);
}

}  // namespace

json Check::to_json() const {
    return {{"quantity", quantity}, {"computed", computed}, {"predicted", predicted}, {"tolerance", tolerance},
            {"mode", condlab::to_string(mode)}, {"pass", pass}};
}

Check relative_check(std::string quantity, double computed, double predicted, double tolerance) {
    const bool pass = std::abs(computed - predicted) <= tolerance * std::abs(predicted);
    return {std::move(quantity), number_json(computed), number_json(predicted), tolerance, CheckMode::relative, pass};
}

Check absolute_check(std::string quantity, double computed, double predicted, double tolerance) {
    const bool pass = std::abs(computed - predicted) <= tolerance;
    return {std::move(quantity), number_json(computed), number_json(predicted), tolerance, CheckMode::absolute, pass};
}

Check bound_check(std::string quantity, double computed, double tolerance) {
    const bool pass = std::abs(computed) <= tolerance;
    return {std::move(quantity), number_json(computed), 0.0, tolerance, CheckMode::upper_bound, pass};
}

Check match_check(std::string quantity, const std::string& computed, const std::string& predicted) {
    return {std::move(quantity), computed, predicted, 0.0, CheckMode::match, computed == predicted};
}

Check flag_check(std::string quantity, bool computed) {
    return {std::move(quantity), computed, true, 0.0, CheckMode::match, computed};
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return {buf, r.ptr};
}

void Table::add(std::vector<std::string> row) {
    if (row.size() != header.size()) throw ValidationError("table row width does not match the header of " + name);
    rows.push_back(std::move(row));
}

std::string Table::csv() const {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os << ',';
            const bool quote = cells[i].find_first_of(",\"\n") != std::string::npos;
            if (!quote) {
                os << cells[i];
                continue;
            }
            os << '"';
            for (char c : cells[i]) os << (c == '"' ? "\"\"" : std::string(1, c));
            os << '"';
        }
        os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return os.str();
}

bool RunResult::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

json RunResult::report() const {
    json checks_json = json::array();
    for (const Check& c : checks) checks_json.push_back(c.to_json());
    return {{"kind", kind},       {"name", name},       {"version", CONDLAB_VERSION}, {"input", input},
            {"config", config},   {"results", results}, {"checks", checks_json},      {"pass", passed()}};
}

void write_run(const RunResult& run, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const Table& t : run.tables) {
        std::ofstream out(dir / (t.name + ".csv"), std::ios::binary);
        out << t.csv();
        if (!out) throw Error("cannot write " + (dir / (t.name + ".csv")).string());
    }
    std::ofstream out(dir / "report.json", std::ios::binary);
    out << run.report().dump(2) << '\n';
    if (!out) throw Error("cannot write " + (dir / "report.json").string());
}

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double x) { return format_number(x); }

std::vector<double> half_decades(int lo, int hi) {
    std::vector<double> v;
    for (int k = 2 * lo; k <= 2 * hi; ++k) v.push_back(std::pow(10.0, 0.5 * k));
    return v;
}

json limit_json(const LimitEstimate& e) {
    return {{"value", number_json(e.value)},
            {"error", number_json(e.error)},
            {"model", to_string(e.model)},
            {"decay_exponent", e.decay_exponent}};
}

json vector_json(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(number_json(x));
    return a;
}

json index_json(const ModeIndex& n) {
    json a = json::array();
    for (auto x : n) a.push_back(x);
    return a;
}

ModeIndex to_index(const std::vector<double>& v) {
    ModeIndex n;
    for (double x : v) {
        if (x != std::round(x)) throw ValidationError("mode index entries must be integers");
        n.push_back(static_cast<std::int64_t>(x));
    }
    return n;
}

bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

// ---------------------------------------------------------------- inputs

struct BoseInputs {
    double beta = 1.0;
    double rho = 0.0;
    double rho_c = 0.0;
    std::vector<double> exponents;
    SumSpec sum;
};

BoseInputs read_bose(const ConfigReader& r) {
    BoseInputs b;
    b.beta = r.number("bose", "beta", 1.0);
    if (!(b.beta > 0.0)) throw ValidationError("bose.beta must be positive");
    b.exponents = r.grid("bose", "exponents", {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
    b.sum.tail_tolerance = r.number("bose", "tail_tolerance", 1e-12);
    b.rho_c = critical_density(b.beta);
    if (r.has("bose", "rho") && r.has("bose", "rho_factor"))
        throw ValidationError("set either bose.rho or bose.rho_factor, not both");
    if (r.has("bose", "rho"))
        b.rho = r.number("bose", "rho");
    else
        b.rho = r.number("bose", "rho_factor", 2.0) * b.rho_c;
    if (!(b.rho > 0.0)) throw ValidationError("density must be positive");
    return b;
}

json bose_json(const BoseInputs& b) {
    return {{"beta", b.beta}, {"rho", b.rho}, {"critical_density", b.rho_c}, {"exponents", vector_json(b.exponents)}};
}

// Model parameters; quantum and temperature may be given relative to lambda_c and T_c.
struct ScpInputs {
    ScpParams params;
    std::optional<double> lambda_fraction;
    std::optional<double> temperature_fraction;

    ScpParams resolve() const {
        ScpParams p = params;
        if (lambda_fraction) p.quantum = *lambda_fraction * lambda_c(p).lambda_c;
        if (temperature_fraction) p.temperature = *temperature_fraction * critical_temperature(p.quantum, p);
        p.validate();
        return p;
    }
};

ScpInputs read_scp(const ConfigReader& r) {
    ScpInputs s;
    ScpParams& p = s.params;
    p.dimension = r.integer("model", "dimension", 1);
    p.sigma = r.number("model", "sigma", 0.5);
    p.coupling = r.number("model", "coupling", 1.0);
    p.stiffness = r.number("model", "stiffness", 1.0);
    p.anharmonicity = r.number("model", "anharmonicity", 4.0);
    p.decay = r.number("model", "decay", 1.0);
    const std::string pot = r.text("model", "potential", "exponential");
    if (pot == "exponential")
        p.potential = Potential::exponential;
    else if (pot == "quartic")
        p.potential = Potential::quartic;
    else
        throw ValidationError("model.potential must be 'exponential' or 'quartic'");
    if (r.has("model", "quantum") && r.has("model", "lambda_fraction"))
        throw ValidationError("set either model.quantum or model.lambda_fraction, not both");
    if (r.has("model", "temperature") && r.has("model", "temperature_fraction"))
        throw ValidationError("set either model.temperature or model.temperature_fraction, not both");
    if (r.has("model", "lambda_fraction"))
        s.lambda_fraction = r.number("model", "lambda_fraction");
    else
        p.quantum = r.number("model", "quantum", 1.0);
    if (r.has("model", "temperature_fraction"))
        s.temperature_fraction = r.number("model", "temperature_fraction");
    else
        p.temperature = r.number("model", "temperature", 0.0);
    p.source = r.number("model", "source", 0.1);
    p.scaling = r.number("model", "scaling", 1.0);
    // Checks everything except the relative fractions, which need lambda_c first.
    p.validate();
    return s;
}

json scp_json(const ScpParams& p) {
    return {{"dimension", p.dimension},   {"sigma", p.sigma},
            {"coupling", p.coupling},     {"stiffness", p.stiffness},
            {"anharmonicity", p.anharmonicity}, {"decay", p.decay},
            {"potential", to_string(p.potential)}, {"quantum", p.quantum},
            {"temperature", p.temperature}, {"source", p.source},
            {"scaling", p.scaling}};
}

void add_gbec_tables(RunResult& run, const GbecReport& g) {
    Table rows{"gbec_rows", {"volume", "delta", "mu", "zero_mode", "shell", "tail_bound"}, {}};
    for (const GbecRow& r : g.rows)
        rows.add({fmt(r.volume), fmt(r.delta), fmt(r.mu), fmt(r.zero_mode), fmt(r.shell), fmt(r.tail_bound)});
    run.tables.push_back(std::move(rows));
    Table limits{"gbec_shell_limits", {"delta", "limit", "error", "model", "thermal_part"}, {}};
    for (std::size_t i = 0; i < g.deltas.size(); ++i)
        limits.add({fmt(g.deltas[i]), fmt(g.shell_limits[i].value), fmt(g.shell_limits[i].error),
                    to_string(g.shell_limits[i].model), fmt(g.thermal_parts[i])});
    run.tables.push_back(std::move(limits));
}

json gbec_json(const GbecReport& g) {
    json modes = json::array();
    for (const ModeLimit& m : g.modes) modes.push_back({{"index", index_json(m.index)}, {"limit", limit_json(m.limit)}});
    return {{"type", to_string(g.type)},
            {"shell_density", g.shell_density},
            {"shell_error", g.shell_error},
            {"excess_density", g.rho - g.critical_density},
            {"mu_limit", limit_json(g.mu_limit)},
            {"modes", modes},
            {"flags", g.flags}};
}

std::optional<std::string> read_expected_type(const ConfigReader& r, const std::string& section) {
    if (!r.has(section, "expect_type")) return std::nullopt;
    const std::string t = r.text(section, "expect_type");
    if (t != "none" && t != "I" && t != "II" && t != "III") throw ValidationError(section + ".expect_type must be none, I, II or III");
    return t;
}

bool is_half(double x) { return std::abs(x - 0.5) <= 1e-12; }

// ---------------------------------------------------------------- ideal Bose gas

RunResult run_bose_critical(const ConfigReader& r) {
    const double beta = r.number("bose", "beta", 1.0);
    const double volume = r.number("check", "volume", 1e6);
    const double closed_tol = r.number("check", "closed_tolerance", 1e-6);
    const double finite_tol = r.number("check", "finite_tolerance", 0.02);
    r.finish();
    if (!(beta > 0.0)) throw ValidationError("bose.beta must be positive");

    RunResult run;
    const double quad = critical_density(beta);
    const double closed = boost::math::zeta(1.5) * std::pow(4.0 * kPi * beta, -1.5);
    const BoseGas gas(BoxGeometry::cubic(volume), beta);
    const double finite = gas.excited_density(0.0);
    run.results = {{"beta", beta},
                   {"critical_density", quad},
                   {"closed_form", closed},
                   {"volume", volume},
                   {"finite_volume_density", finite},
                   {"modes", gas.spectrum().mode_count()}};
    run.checks.push_back(relative_check("critical density vs closed form", quad, closed, closed_tol));
    run.checks.push_back(relative_check("cubic box excited density at mu=0", finite, quad, finite_tol));
    // Leading finite-size term: sum over n != 0 of 1/n^2 minus its integral is -C3 on the cubic lattice.
    constexpr double kC3 = 8.91363291758515;
    const double side = std::cbrt(volume);
    const double deficit_scaled = (quad - finite) * beta * side;
    run.results["deficit_times_beta_side"] = deficit_scaled;
    run.results["leading_deficit_constant"] = kC3 / (4.0 * kPi * kPi);
    run.checks.push_back(relative_check("finite-size deficit times beta L", deficit_scaled, kC3 / (4.0 * kPi * kPi), finite_tol));
    Table t{"critical_density", {"quantity", "value"}, {}};
    t.add({"quadrature", fmt(quad)});
    t.add({"closed_form", fmt(closed)});
    t.add({"finite_volume", fmt(finite)});
    run.tables.push_back(std::move(t));
    return run;
}

RunResult run_bose_mu(const ConfigReader& r) {
    const BoseInputs b = read_bose(r);
    const std::vector<double> volumes = r.grid("grid", "volumes", half_decades(4, 8));
    const double tol = r.number("check", "tolerance", 0.02);
    const double casimir_tol = r.number("check", "casimir_tolerance", 0.03);
    r.finish();

    RunResult run;
    Table t{"mu", {"volume", "mu", "zero_mode", "scaled_mu", "condensate_ratio"}, {}};
    std::vector<double> scaled, ratio;
    for (double v : volumes) {
        const BoseGas gas(BoxGeometry(v, b.exponents), b.beta, b.sum);
        const double mu = gas.solve_mu(b.rho);
        const double zero = bose_occupation(0.0, b.beta, mu) / v;
        const double s = b.beta * v * (-mu);
        const double q = s * (b.rho - b.rho_c);
        scaled.push_back(s);
        ratio.push_back(q);
        t.add({fmt(v), fmt(mu), fmt(zero), fmt(s), fmt(q)});
    }
    run.tables.push_back(std::move(t));
    run.results = bose_json(b);
    const LimitEstimate ratio_lim = extrapolate(volumes, ratio);
    const LimitEstimate scaled_lim = extrapolate(volumes, scaled);
    run.results["condensate_ratio"] = limit_json(ratio_lim);
    run.results["scaled_mu"] = limit_json(scaled_lim);
    if (b.rho > b.rho_c) {
        if (is_half(b.exponents.front())) {
            const CasimirRoot c = casimir_root(b.beta, b.rho);
            run.results["casimir_amplitude"] = c.amplitude;
            run.checks.push_back(relative_check("beta V (-mu) vs Casimir root", scaled_lim.value, c.amplitude, casimir_tol));
        } else if (b.exponents.front() < 0.5) {
            run.checks.push_back(relative_check("beta V (rho - rho_c)(-mu)", ratio_lim.value, 1.0, tol));
        }
    } else {
        const double mu_inf = -std::exp(find_root_increasing(
            [&](double s) { return b.rho - free_density(b.beta, -std::exp(s)); }, -60.0, 60.0));
        run.results["mu_infinite_volume"] = mu_inf;
        const double mu_last = -scaled.back() / (b.beta * volumes.back());
        run.checks.push_back(relative_check("mu at the largest volume", mu_last, mu_inf, tol));
    }
    return run;
}

RunResult run_bose_gbec(const ConfigReader& r) {
    const BoseInputs b = read_bose(r);
    const std::vector<double> volumes = r.grid("grid", "volumes", half_decades(4, 8));
    const std::vector<double> deltas = r.grid("grid", "deltas", {0.5, 0.25, 0.1, 0.05});
    const auto expected = read_expected_type(r, "gbec");
    const double tol = r.number("check", "tolerance", 0.02);
    const double casimir_tol = r.number("check", "casimir_tolerance", 0.03);
    GbecOptions opts;
    opts.subtract_thermal = r.boolean("gbec", "subtract_thermal", true);
    opts.sum = b.sum;
    if (const auto probe = r.optional_grid("gbec", "probe_mode")) opts.probe_modes.push_back(to_index(*probe));
    r.finish();

    RunResult run;
    const GbecReport g = gbec_shell_density(b.exponents, volumes, b.beta, b.rho, deltas, opts);
    add_gbec_tables(run, g);
    run.results = bose_json(b);
    run.results["gbec"] = gbec_json(g);
    if (expected) run.checks.push_back(match_check("gBEC type", to_string(g.type), *expected));
    if (b.rho > b.rho_c)
        run.checks.push_back(relative_check("shell density vs rho - rho_c", g.shell_density, b.rho - b.rho_c, tol));
    else
        run.checks.push_back(bound_check("shell density below saturation", g.shell_density, 1e-3 * b.rho));
    if (b.rho > b.rho_c && is_half(b.exponents.front())) {
        const CasimirRoot c = casimir_root(b.beta, b.rho);
        run.results["casimir"] = {{"amplitude", c.amplitude}, {"zero_mode_density", c.zero_mode_density},
                                  {"shell_density", c.shell_density}};
        run.checks.push_back(relative_check("zero-mode density vs Casimir root", g.modes.front().limit.value,
                                            c.zero_mode_density, casimir_tol));
    }
    return run;
}

RunResult run_bose_diagonal(const ConfigReader& r) {
    const BoseInputs b = read_bose(r);
    const double coupling = r.number("diagonal", "coupling", 1.0);
    const std::vector<double> volumes = r.grid("grid", "volumes", half_decades(4, 8));
    const std::vector<double> deltas = r.grid("grid", "deltas", {0.5, 0.25, 0.1, 0.05});
    const auto expected = read_expected_type(r, "diagonal");
    const double tol = r.number("check", "tolerance", 0.02);
    r.finish();
    if (!(coupling > 0.0)) throw ValidationError("diagonal.coupling must be positive");

    RunResult run;
    GbecOptions opts;
    opts.sum = b.sum;
    const GbecReport g = diagonal_gbec(b.exponents, volumes, b.beta, b.rho, coupling, deltas, opts);
    add_gbec_tables(run, g);
    run.results = bose_json(b);
    run.results["coupling"] = coupling;
    run.results["gbec"] = gbec_json(g);
    if (expected) run.checks.push_back(match_check("gBEC type", to_string(g.type), *expected));
    if (b.rho > b.rho_c)
        run.checks.push_back(relative_check("shell density vs rho - rho_c", g.shell_density, b.rho - b.rho_c, tol));
    return run;
}

void add_qa_table(RunResult& run, const QaTable& t) {
    Table out{"qa_points", {"amplitude", "volume", "mu", "field_re", "field_im", "mode_density", "shell_density"}, {}};
    for (std::size_t i = 0; i < t.amplitudes.size(); ++i)
        for (const QaPoint& p : t.points[i])
            out.add({fmt(p.amplitude), fmt(p.volume), fmt(p.mu), fmt(p.field.real()), fmt(p.field.imag()),
                     fmt(p.mode_density), fmt(p.shell_density)});
    run.tables.push_back(std::move(out));
}

json qa_limit_json(const QaLimit& q) {
    return {{"re", q.value.real()}, {"im", q.value.imag()}, {"magnitude", q.magnitude}, {"error", q.error}};
}

RunResult run_bose_qa(const ConfigReader& r) {
    const BoseInputs b = read_bose(r);
    const std::string target = r.text("qa", "target", "zero-mode");
    QaProtocol protocol;
    protocol.volumes = r.grid("grid", "volumes", half_decades(4, 8));
    protocol.amplitudes = r.grid("grid", "amplitudes", {1e-2, 5e-3, 2e-3, 1e-3});
    protocol.reversed_amplitudes = r.grid("grid", "reversed_amplitudes", {1e-8, 1e-10, 1e-12});
    protocol.shell_delta = r.number("qa", "shell_delta", 0.05);
    const double tol = r.number("check", "tolerance", 0.02);
    const double small = r.number("check", "vanishing_fraction", 1e-3);
    SourceSpec source;
    std::vector<double> phases;
    EquivalenceOptions eq;
    std::optional<std::string> expected;
    if (target == "zero-mode") {
        phases = r.grid("qa", "phases", {0.0, 0.5 * kPi, kPi, 1.5 * kPi});
        eq.deltas = r.grid("grid", "deltas", eq.deltas);
        eq.tolerance = tol;
        expected = read_expected_type(r, "qa");
    } else if (target == "mode") {
        source.mode = to_index(r.grid("qa", "mode"));
        source.phase = r.number("qa", "phase", 0.0);
    } else if (target == "wave-vector") {
        source.wave_vector = r.grid("qa", "wave_vector");
        source.phase = r.number("qa", "phase", 0.0);
    } else {
        throw ValidationError("qa.target must be zero-mode, mode or wave-vector");
    }
    // A target of positive limiting energy does not couple to the condensate: its data are analytic in the amplitude.
    const bool zero_target = target == "zero-mode";
    protocol.outer.degree = r.integer("qa", "outer_degree", 2);
    protocol.outer.power = r.number("qa", "outer_power", zero_target ? 0.5 : 1.0);
    r.finish();

    RunResult run;
    run.results = bose_json(b);
    run.results["target"] = target;
    if (target == "zero-mode") {
        const QaReport rep = equivalence_report(b.exponents, b.beta, b.rho, phases, protocol, eq);
        add_qa_table(run, rep.table);
        add_gbec_tables(run, rep.gbec);
        Table ph{"qa_phases", {"phase", "field_re", "field_im"}, {}};
        for (std::size_t i = 0; i < rep.phases.size(); ++i)
            ph.add({fmt(rep.phases[i]), fmt(rep.phase_values[i].real()), fmt(rep.phase_values[i].imag())});
        run.tables.push_back(std::move(ph));
        const double excess = b.rho - b.rho_c;
        run.results["field"] = qa_limit_json(rep.field);
        run.results["field_squared"] = rep.field.magnitude * rep.field.magnitude;
        run.results["mode_density"] = qa_limit_json(rep.mode_density);
        run.results["reversed_field"] = qa_limit_json(rep.reversed_field);
        run.results["gbec"] = gbec_json(rep.gbec);
        run.results["zero_source_zero_mode"] = limit_json(rep.zero_source_zero_mode);
        run.results["phase_average"] = {{"re", rep.phase_average.real()}, {"im", rep.phase_average.imag()}};
        json verdicts = json::array();
        for (const Verdict& v : rep.verdicts) {
            verdicts.push_back({{"name", v.name}, {"pass", v.pass}, {"residual", v.residual}, {"tolerance", v.tolerance}});
            Check c = bound_check(v.name, v.residual, v.tolerance);
            c.pass = v.pass;
            run.checks.push_back(c);
        }
        run.results["verdicts"] = verdicts;
        if (excess > 0.0) {
            const DoubleLimit ratio = sourced_mu_ratio(rep.table, protocol, b.rho_c);
            run.results["sourced_mu_ratio"] = {{"value", ratio.value}, {"error", ratio.error}};
            run.checks.push_back(relative_check("sourced mu sqrt(rho - rho_c) / (-amplitude)", ratio.value, 1.0, tol));
            run.checks.push_back(relative_check("Bogoliubov-order |field| vs sqrt(rho - rho_c)", rep.field.magnitude,
                                                std::sqrt(excess), tol));
            run.checks.push_back(bound_check("reversed-order |field|", rep.reversed_field.magnitude, small * std::sqrt(b.rho)));
        }
        if (expected) {
            run.checks.push_back(match_check("gBEC type", to_string(rep.gbec.type), *expected));
            if (*expected == "III")
                run.checks.push_back(bound_check("zero-mode density without source", rep.zero_source_zero_mode.value, small * b.rho));
        }
        return run;
    }
    const QaTable table = qa_scan(b.exponents, b.beta, b.rho, source, protocol);
    add_qa_table(run, table);
    const QaLimit field = qa_field(table, protocol);
    const QaLimit density = qa_mode_density(table, protocol);
    const double energy = limiting_energy(b.exponents, source);
    run.results["limiting_energy"] = energy;
    run.results["field"] = qa_limit_json(field);
    run.results["mode_density"] = qa_limit_json(density);
    run.results["shifted_critical_density"] =
        energy > 0.0 ? shifted_critical_density(b.beta, std::polar(protocol.amplitudes.back(), source.phase), energy) : b.rho_c;
    run.checks.push_back(bound_check("|field| for the chosen mode", field.magnitude, small * std::sqrt(b.rho)));
    run.checks.push_back(bound_check("mode density for the chosen mode", density.magnitude, small * b.rho));
    return run;
}

// ---------------------------------------------------------------- SCP model

double c_star_by_bisection(const ScpParams& p) {
    double hi = 1.0;
    while (gap(hi, p) < 0.0) hi *= 2.0;
    return find_root_increasing([&](double c) { return gap(c, p); }, 0.0, hi, 60);
}

RunResult run_scp_solve(const ConfigReader& r) {
    const ScpInputs in = read_scp(r);
    const auto volumes = r.optional_grid("solve", "volumes");
    const bool infinite = r.boolean("solve", "infinite", true);
    const bool scaled = r.boolean("solve", "scaled_source", false);
    const double h_abs = scaled ? 0.0 : r.number("solve", "h", 0.0);
    const bool displacement = r.boolean("solve", "displacement", false);
    const std::vector<double> h_grid =
        displacement ? r.grid("solve", "h_grid", {1e-2, 3e-3, 1e-3, 3e-4, 1e-4, 3e-5, 1e-5}) : std::vector<double>{};
    const double residual_tol = r.number("check", "residual", 1e-10);
    const double identity_tol = r.number("check", "identity_tolerance", 0.01);
    r.finish();
    if (!infinite && !volumes) throw ValidationError("scp-solve needs solve.volumes or solve.infinite = true");

    RunResult run;
    const ScpParams p = in.resolve();
    const double cs = c_star(p);
    run.results = {{"model", scp_json(p)}, {"c_star", cs}};
    Table t{"solutions", {"volume", "h", "c", "gap", "order_parameter", "displacement", "phase", "residual"}, {}};
    bool stable = true;
    double worst = 0.0;
    auto record = [&](const ScpSolution& s) {
        t.add({s.volume ? fmt(*s.volume) : "inf", fmt(s.source), fmt(s.c), fmt(s.gap), fmt(s.order_parameter),
               fmt(s.displacement), to_string(s.phase), fmt(s.residual)});
        stable = stable && s.gap >= 0.0 && s.c >= cs;
        worst = std::max(worst, s.residual / std::max(1.0, s.c));
    };
    std::optional<double> guess;
    if (volumes)
        for (double v : *volumes) {
            const double h = scaled ? scaled_source(v, p) : h_abs;
            const ScpSolution s = solve_c(v, p.temperature, h, p, guess);
            guess = s.c;
            record(s);
        }
    if (infinite) {
        const ScpSolution s = solve_c(std::nullopt, p.temperature, scaled ? 0.0 : h_abs, p);
        record(s);
        run.results["infinite_volume"] = {{"c", s.c}, {"gap", s.gap}, {"order_parameter", s.order_parameter},
                                          {"phase", to_string(s.phase)}};
    }
    run.tables.push_back(std::move(t));
    run.checks.push_back(flag_check("stability gap >= 0 and c >= c_star", stable));
    run.checks.push_back(bound_check("relative residual", worst, residual_tol));
    if (displacement) {
        const DisplacementLimit plus = displacement_qa(p.temperature, p.quantum, +1, p, h_grid);
        const DisplacementLimit minus = displacement_qa(p.temperature, p.quantum, -1, p, h_grid);
        Table d{"displacement", {"sign", "h", "c", "gap", "displacement"}, {}};
        for (const auto* lim : {&plus, &minus})
            for (const ScpSolution& s : lim->grid)
                d.add({lim == &plus ? "+" : "-", fmt(s.source), fmt(s.c), fmt(s.gap), fmt(s.displacement)});
        run.tables.push_back(std::move(d));
        run.results["displacement"] = {{"plus", plus.value},
                                       {"minus", minus.value},
                                       {"error", plus.error},
                                       {"squared_limit", plus.squared_limit},
                                       {"squared_error", plus.squared_error},
                                       {"order_parameter", plus.order_parameter},
                                       {"phase", to_string(plus.phase)}};
        if (plus.phase == ScpPhase::ordered) {
            run.checks.push_back(relative_check("h^2/gap^2 limit vs c_star - I_d", plus.squared_limit,
                                                plus.order_parameter, identity_tol));
            run.checks.push_back(relative_check("|displacement| vs sqrt(c_star - I_d)", std::abs(plus.value),
                                                std::sqrt(plus.order_parameter), identity_tol));
            run.checks.push_back(flag_check("opposite signs give opposite displacements",
                                            plus.value > 0.0 && minus.value < 0.0 &&
                                                std::abs(plus.value + minus.value) <= 1e-12 * std::abs(plus.value)));
        } else {
            run.checks.push_back(bound_check("displacement in the disordered phase", plus.value, 1e-3));
        }
    }
    return run;
}

RunResult run_scp_critline(const ConfigReader& r) {
    const ScpInputs in = read_scp(r);
    const std::vector<double> fractions =
        r.grid("critline", "lambda_fractions", {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0});
    const double zero_tol = r.number("check", "zero_temperature", 1e-6);
    r.finish();

    RunResult run;
    const ScpParams p = in.resolve();
    const double lc = lambda_c(p).lambda_c;
    std::vector<double> lambdas;
    for (double f : fractions) lambdas.push_back(f * lc);
    const CriticalLine line = critical_line(lambdas, p);
    Table t{"critical_line", {"lambda_fraction", "lambda", "critical_temperature"}, {}};
    for (std::size_t i = 0; i < line.points.size(); ++i)
        t.add({fmt(fractions[i]), fmt(line.points[i].lambda), fmt(line.points[i].temperature)});
    run.tables.push_back(std::move(t));
    run.results = {{"model", scp_json(p)}, {"lambda_c", lc}, {"strictly_decreasing", line.strictly_decreasing}};
    run.checks.push_back(flag_check("critical temperature strictly decreasing in lambda", line.strictly_decreasing));
    for (std::size_t i = 0; i < fractions.size(); ++i)
        if (same(fractions[i], 1.0))
            run.checks.push_back(bound_check("critical temperature at lambda_c", line.points[i].temperature, zero_tol));
    return run;
}

RunResult run_scp_lambda_c(const ConfigReader& r) {
    const ScpInputs in = read_scp(r);
    const double k_tol = r.number("check", "quadrature_agreement", 1e-6);
    const double c_tol = r.number("check", "c_star_tolerance", 1e-12);
    const double zero_tol = r.number("check", "zero_temperature", 1e-6);
    r.finish();

    RunResult run;
    const ScpParams p = in.resolve();
    const double cs = c_star(p);
    const double cs_root = c_star_by_bisection(p);
    const QuantumCritical q = lambda_c(p);
    run.results = {{"model", scp_json(p)}, {"c_star", cs}, {"c_star_root", cs_root},
                   {"zero_point", q.zero_point}, {"lambda_c", q.lambda_c}, {"lambda_c_error", q.error}};
    run.checks.push_back(absolute_check("c_star closed form vs root of the gap", cs, cs_root, c_tol));
    Table t{"lambda_c", {"quantity", "value"}, {}};
    t.add({"c_star", fmt(cs)});
    t.add({"zero_point_kronrod", fmt(q.zero_point)});
    if (p.dimension == 1) {
        const IntegralResult k2 = zero_point_integral_tanh_sinh(p);
        run.results["zero_point_tanh_sinh"] = k2.value;
        t.add({"zero_point_tanh_sinh", fmt(k2.value)});
        run.checks.push_back(relative_check("zero-point integral, two quadratures", q.zero_point, k2.value, k_tol));
    }
    t.add({"lambda_c", fmt(q.lambda_c)});
    run.checks.push_back(relative_check("lambda_c = c_star / K", q.lambda_c, cs / q.zero_point, 1e-14));
    if (p.sigma < p.dimension) {
        const double tc = critical_temperature(q.lambda_c, p);
        run.results["critical_temperature_at_lambda_c"] = tc;
        t.add({"critical_temperature_at_lambda_c", fmt(tc)});
        run.checks.push_back(bound_check("critical temperature at lambda_c", tc, zero_tol));
    }
    run.tables.push_back(std::move(t));
    return run;
}

RunResult run_scp_mixing(const ConfigReader& r) {
    const std::vector<double> betas = r.grid("mixing", "beta", {0.5, 1.0, 2.0});
    const std::vector<double> rhos = r.grid("mixing", "rho", {0.01, 0.1, 1.0});
    const std::vector<double> sources = r.grid("mixing", "h_hat", {0.0, 0.05, 0.5});
    const double alpha = r.number("mixing", "alpha", 1.0);
    const double tol = r.number("check", "tolerance", 1e-10);
    r.finish();

    RunResult run;
    Table t{"mixing", {"beta", "rho", "h_hat", "xi", "root", "relative_gap", "weight"}, {}};
    double worst = 0.0;
    std::optional<double> zero_weight_dev;
    for (double beta : betas)
        for (double rho : rhos)
            for (double h : sources) {
                const MixingWeight m = mixing_weight(h, alpha, beta, rho);
                worst = std::max(worst, m.relative_gap);
                if (h == 0.0) zero_weight_dev = std::max(zero_weight_dev.value_or(0.0), std::abs(m.weight - 0.5));
                t.add({fmt(beta), fmt(rho), fmt(h), fmt(m.xi), fmt(m.root), fmt(m.relative_gap), fmt(m.weight)});
            }
    run.tables.push_back(std::move(t));
    run.results = {{"alpha", alpha}, {"points", betas.size() * rhos.size() * sources.size()}, {"max_relative_gap", worst}};
    run.checks.push_back(bound_check("closed form vs numeric root, max relative gap", worst, tol));
    if (zero_weight_dev) run.checks.push_back(bound_check("weight at zero source minus 1/2", *zero_weight_dev, 0.0));
    return run;
}

// ---------------------------------------------------------------- fluctuations

struct FluctInputs {
    ScpInputs model;
    Regime regime = Regime::critical_line;
    ScanOptions scan;
};

FluctInputs read_fluct(const ConfigReader& r) {
    FluctInputs f;
    f.model = read_scp(r);
    f.regime = parse_regime(r.text("scan", "regime"));
    f.scan.window = r.integer("scan", "window", 7);
    f.scan.max_residual = r.number("scan", "max_residual", 0.1);
    f.scan.volumes = r.grid("grid", "volumes", default_volumes(f.model.params.dimension));
    if (f.model.lambda_fraction || f.model.temperature_fraction)
        throw ValidationError("fluctuation scans fix lambda and T from the regime; drop the fractions");
    return f;
}

void add_scan_table(RunResult& run, const ScanResult& s) {
    Table t{"scan", {"volume", "h", "c", "gap", "displacement", "var_q", "var_p"}, {}};
    for (const FluctuationPoint& p : s.points)
        t.add({fmt(p.volume), fmt(p.source), fmt(p.c), fmt(p.gap), fmt(p.displacement), fmt(p.var_q), fmt(p.var_p)});
    run.tables.push_back(std::move(t));
}

json point_json(const ScanResult& s) {
    return {{"regime", to_string(s.regime)},
            {"lambda", s.point.lambda},
            {"temperature", s.point.temperature},
            {"lambda_c", s.point.lambda_c},
            {"critical_temperature", s.point.critical_temperature}};
}

json fit_json(const ExponentFit& e) {
    return {{"quantity", e.quantity},
            {"value", e.value},
            {"standard_error", e.standard_error},
            {"predicted", e.predicted},
            {"row", e.table.row},
            {"log_model", e.fit.log_model},
            {"log_coefficient", e.fit.log_coefficient},
            {"residual", e.fit.residual}};
}

RunResult run_fluct_gamma(const ConfigReader& r) {
    const FluctInputs f = read_fluct(r);
    const double tol = r.number("check", "tolerance", 0.05);
    r.finish();

    RunResult run;
    const ScanResult scan = fluctuation_scan(f.regime, f.model.params, f.scan);
    add_scan_table(run, scan);
    const ExponentFit g = gap_exponent(scan, f.scan);
    const Exponents implied = fluctuation_exponents(f.regime, g.value, f.model.params.scaling);
    run.results = {{"model", scp_json(f.model.params)}, {"point", point_json(scan)}, {"gamma", fit_json(g)},
                   {"implied_delta_q", implied.delta_q}, {"implied_delta_p", implied.delta_p}};
    run.checks.push_back(absolute_check("gamma", g.value, g.predicted, tol));
    return run;
}

RunResult run_fluct_delta(const ConfigReader& r) {
    const FluctInputs f = read_fluct(r);
    const double tol = r.number("check", "tolerance", 0.03);
    const double state_tol = r.number("check", "state_tolerance", 0.02);
    r.finish();

    RunResult run;
    const ScanResult scan = fluctuation_scan(f.regime, f.model.params, f.scan);
    add_scan_table(run, scan);
    const DeltaFits d = delta_from_variance(scan, f.scan);
    run.results = {{"model", scp_json(f.model.params)}, {"point", point_json(scan)}, {"delta_q", fit_json(d.q)},
                   {"delta_p", fit_json(d.p)}};
    run.checks.push_back(absolute_check("delta_Q", d.q.value, d.q.predicted, tol));
    run.checks.push_back(absolute_check("delta_P", d.p.value, d.p.predicted, tol));

    if (f.regime == Regime::ordered && f.model.params.source != 0.0) {
        const ScpParams& p = scan.params;
        const ScpSolution bulk = solve_c(std::nullopt, p.temperature, 0.0, p);
        const double rho = bulk.order_parameter;
        std::vector<double> v, q;
        for (const FluctuationPoint& fp : scan.points) {
            v.push_back(fp.volume);
            q.push_back(std::abs(fp.displacement));
        }
        const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(std::max(f.scan.window, 4)), v.size());
        const std::vector<double> vt(v.end() - static_cast<std::ptrdiff_t>(n), v.end());
        const std::vector<double> qt(q.end() - static_cast<std::ptrdiff_t>(n), q.end());
        const LimitEstimate lim = extrapolate(vt, qt);
        run.results["displacement_limit"] = limit_json(lim);
        run.results["order_parameter"] = rho;
        const double alpha = p.scaling;
        if (alpha < 1.0) {
            run.checks.push_back(relative_check("|<Q>| vs sqrt(rho)", lim.value, std::sqrt(rho), state_tol));
        } else if (alpha == 1.0 && p.temperature > 0.0) {
            const MixingWeight m = mixing_weight(std::abs(p.source), 1.0, 1.0 / p.temperature, rho);
            run.results["mixing"] = {{"xi", m.xi}, {"weight", m.weight}};
            run.checks.push_back(relative_check("|<Q>| vs |h_hat| / xi", lim.value, std::abs(p.source) / m.xi, state_tol));
            run.checks.push_back(flag_check("|<Q>| below sqrt(rho)", lim.value < std::sqrt(rho)));
        } else if (alpha > 1.0) {
            run.checks.push_back(bound_check("|<Q>| limit", lim.value, std::max(lim.error, 1e-3 * std::sqrt(rho))));
        }
    }
    return run;
}

RunResult run_fluct_algebra(const ConfigReader& r) {
    const FluctInputs f = read_fluct(r);
    const std::string fallback = f.regime == Regime::quantum_point ? "non-abelian" : "abelian";
    const std::string expected = r.text("check", "expect", fallback);
    r.finish();

    RunResult run;
    const ScanResult scan = fluctuation_scan(f.regime, f.model.params, f.scan);
    add_scan_table(run, scan);
    const DeltaFits d = delta_from_variance(scan, f.scan);
    const AlgebraVerdict v = algebra_classify(d.q.value, d.p.value, d.q.standard_error, d.p.standard_error);
    run.results = {{"model", scp_json(f.model.params)},
                   {"point", point_json(scan)},
                   {"delta_q", fit_json(d.q)},
                   {"delta_p", fit_json(d.p)},
                   {"commutator_exponent", v.commutator_exponent},
                   {"combined_error", v.combined_error},
                   {"verdict", to_string(v.verdict)}};
    run.checks.push_back(match_check("algebra verdict", to_string(v.verdict), expected));
    return run;
}

// ---------------------------------------------------------------- fits

std::vector<double> geometric(double start, double factor, int count) {
    std::vector<double> v;
    for (int i = 0; i < count; ++i) v.push_back(start * std::pow(factor, i));
    return v;
}

std::vector<Check> fit_checks() {
    std::vector<Check> out;
    const std::vector<double> x = geometric(1e3, std::sqrt(10.0), 7);
    std::vector<double> y;
    for (double v : x) y.push_back(3.0 * std::pow(v, -0.5));
    const FitResult pure = fit_power_law(x, y, false);
    out.push_back(absolute_check("pure power law exponent", pure.exponent, 0.5, 1e-12));
    out.push_back(relative_check("pure power law amplitude", pure.amplitude, 3.0, 1e-12));

    y.clear();
    for (double v : x) y.push_back(2.0 / v * (1.0 + 5.0 / v));
    out.push_back(absolute_check("power law with correction, exponent", fit_power_law(x, y, false).exponent, 1.0, 0.01));

    y.clear();
    for (double v : x) y.push_back(std::pow(v, -0.5) / std::log(v));
    const FitResult logged = fit_power_law(x, y, true);
    out.push_back(absolute_check("log-corrected exponent", logged.exponent, 0.5, 1e-9));
    out.push_back(absolute_check("log-corrected log power", logged.log_coefficient, 1.0, 1e-9));

    const std::vector<double> vols = geometric(1e4, std::sqrt(10.0), 9);
    std::vector<double> f;
    for (double v : vols) f.push_back(1.0 + 4.0 / std::sqrt(v));
    out.push_back(absolute_check("extrapolated 1 + 4 V^-1/2", extrapolate(vols, f).value, 1.0, 1e-8));
    f.assign(vols.size(), 2.5);
    out.push_back(absolute_check("extrapolated constant", extrapolate(vols, f).value, 2.5, 1e-12));

    const std::vector<double> cx{1.0, 0.75, 0.5, 0.25};
    std::vector<double> cy;
    for (double t : cx) cy.push_back(-0.5 + 2.0 * t - t * t);
    InterceptOptions quad;
    quad.degree = 2;
    out.push_back(absolute_check("quadratic intercept", fit_intercept(cx, cy, quad).value, -0.5, 1e-12));

    auto g = [](double lam, double v) { return lam * v / (1.0 + lam * v); };
    const std::vector<double> bog{1e-2, 5e-3, 2e-3, 1e-3};
    const std::vector<double> rev{1e-10, 1e-11, 1e-12};
    DoubleLimitOptions first;
    out.push_back(absolute_check("source after volume", double_limit(bog, vols, g, first).value, 1.0, 1e-6));
    DoubleLimitOptions second;
    second.order = LimitOrder::outer_first;
    out.push_back(absolute_check("source before volume", double_limit(rev, vols, g, second).value, 0.0, 1e-3));
    return out;
}

RunResult run_fit_selftest(const ConfigReader& r) {
    r.finish();
    RunResult run;
    run.checks = fit_checks();
    return run;
}

using Runner = std::function<RunResult(const ConfigReader&)>;

const std::map<std::string, Runner>& runners() {
    static const std::map<std::string, Runner> table{
        {"bose-critical", run_bose_critical}, {"bose-mu", run_bose_mu},
        {"bose-gbec", run_bose_gbec},         {"bose-qa", run_bose_qa},
        {"bose-diagonal", run_bose_diagonal}, {"scp-solve", run_scp_solve},
        {"scp-critline", run_scp_critline},   {"scp-lambda-c", run_scp_lambda_c},
        {"scp-mixing", run_scp_mixing},       {"fluct-gamma", run_fluct_gamma},
        {"fluct-delta", run_fluct_delta},     {"fluct-algebra", run_fluct_algebra},
        {"fit-selftest", run_fit_selftest},
    };
    return table;
}

}  // namespace

std::vector<std::string> experiment_kinds() {
    std::vector<std::string> k;
    for (const auto& [name, _] : runners()) k.push_back(name);
    return k;
}

RunResult run_experiment(const Config& config, const std::string& default_name) {
    ConfigReader reader(config);
    const std::string kind = reader.text("experiment", "kind");
    const std::string name = reader.text("experiment", "name", default_name);
    if (name.empty() || name.find_first_of("/\\") != std::string::npos || name == "." || name == "..")
        throw ValidationError("experiment.name must be a plain directory name");
    const auto it = runners().find(kind);
    if (it == runners().end()) throw ValidationError("unknown experiment kind '" + kind + "'");
    RunResult run = it->second(reader);
    run.kind = kind;
    run.name = name;
    run.input = config.to_json();
    run.config = reader.resolved();
    return run;
}

RunResult selftest() {
    RunResult run;
    run.kind = "selftest";
    run.name = "selftest";
    auto& c = run.checks;

    // Oracle values computed once at 30 digits and frozen here.
    constexpr double kCriticalDensity = 0.0586436213476444219;
    constexpr double kCasimirAmplitude = 100.018145150397933;
    constexpr double kXi = 10.0024993753123048;
    constexpr double kZeroPoint04 = 0.509747394112655497;
    constexpr double kZeroPoint05 = 0.516033473965082959;
    constexpr double kThermalIntegral = 0.577265776793003478;
    constexpr double kDiagonalOccupation = 1.12939754806015310;

    c.push_back(relative_check("critical density at beta=1", critical_density(1.0), kCriticalDensity, 1e-9));
    c.push_back(relative_check("critical density closed form", boost::math::zeta(1.5) * std::pow(4.0 * kPi, -1.5),
                               kCriticalDensity, 1e-12));
    c.push_back(relative_check("critical density at beta=4", critical_density(4.0), kCriticalDensity / 8.0, 1e-9));
    c.push_back(relative_check("occupation at e^(beta(eps-mu)) = 2", bose_occupation(0.0, 1.0, -std::log(2.0)), 1.0, 1e-14));
    c.push_back(relative_check("occupation at eps=1, mu=0", bose_occupation(1.0, 1.0, 0.0), 1.0 / std::expm1(1.0), 1e-14));

    const BoxGeometry cube = BoxGeometry::cubic(1000.0);
    c.push_back(relative_check("cubic box energy n=(1,0,0)", mode_energy(cube, {1, 0, 0}), std::pow(2.0 * kPi / 10.0, 2), 1e-12));
    const BoxGeometry casimir(4096.0, {0.5, 0.25, 0.25});
    c.push_back(relative_check("Casimir box energy n=(1,0,0)", mode_energy(casimir, {1, 0, 0}), std::pow(2.0 * kPi / 64.0, 2), 1e-12));
    c.push_back(relative_check("Casimir box energy n=(0,1,0)", mode_energy(casimir, {0, 1, 0}), std::pow(2.0 * kPi / 8.0, 2), 1e-12));
    c.push_back(relative_check("Casimir root amplitude", casimir_root(1.0, kCriticalDensity + 0.05).amplitude,
                               kCasimirAmplitude, 1e-6));
    c.push_back(relative_check("sourced critical density", shifted_critical_density(1.0, 0.1, 1.0), kCriticalDensity + 0.01, 1e-9));

    const DiagonalModel single(BoxGeometry(1.0, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}), 1.0, 1.0, 0.5);
    c.push_back(relative_check("diagonal single-mode occupation", single.mean_occupation(0.0, 0.5), kDiagonalOccupation, 1e-12));

    ScpParams p;
    c.push_back(absolute_check("c_star", c_star(p), std::log(4.0), 1e-12));
    c.push_back(absolute_check("gap at ln 4", gap(std::log(4.0), p), 0.0, 1e-15));
    ScpParams nn = p;
    nn.sigma = 2.0;
    c.push_back(relative_check("dispersion at q=pi, sigma=2", dispersion_1d(kPi, nn), 4.0, 1e-14));
    c.push_back(relative_check("zero-point integral sigma=0.5", zero_point_integral(p).value, kZeroPoint05, 1e-10));
    c.push_back(relative_check("zero-point integral sigma=0.5, tanh-sinh", zero_point_integral_tanh_sinh(p).value,
                               kZeroPoint05, 1e-10));
    ScpParams p04 = p;
    p04.sigma = 0.4;
    c.push_back(relative_check("zero-point integral sigma=0.4", zero_point_integral(p04).value, kZeroPoint04, 1e-10));
    c.push_back(relative_check("lambda_c = ln 4 / K", lambda_c(p).lambda_c, std::log(4.0) / kZeroPoint05, 1e-10));
    c.push_back(relative_check("thermal Brillouin integral", brillouin_integral_at_gap(1.0, 1.0, p).value, kThermalIntegral, 1e-9));

    const MixingWeight m = mixing_weight(0.05, 1.0, 1.0, 0.1);
    c.push_back(relative_check("mixing xi", m.xi, kXi, 1e-12));
    c.push_back(relative_check("mixing numeric root", m.root, kXi, 1e-10));
    c.push_back(relative_check("mixing weight", m.weight, 0.5 * (1.0 + 0.05 / (kXi * std::sqrt(0.1))), 1e-12));
    c.push_back(absolute_check("mixing weight at zero source", mixing_weight(0.0, 1.0, 1.0, 0.1).weight, 0.5, 0.0));

    c.push_back(relative_check("predicted gamma, d=1 sigma=0.4 alpha=0.5",
                               predicted_exponents(Regime::critical_line, 1, 0.4, 0.5).gamma, 1.0 / 3.0, 1e-14));

    for (Check& f : fit_checks()) c.push_back(std::move(f));
    return run;
}

}  // namespace condlab
