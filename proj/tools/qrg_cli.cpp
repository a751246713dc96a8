// Command-line front end: RG coupling flow, two-site concurrence dynamics,
// peak-time scaling analysis, and the self-verification oracle suites.
// Every data-producing command writes a CSV, a JSON summary where noted, and
// a manifest naming the exact configuration that produced the file.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qrg/block_rg.hpp"
#include "qrg/dynamics.hpp"
#include "qrg/io.hpp"
#include "qrg/rg_flow.hpp"
#include "qrg/scaling.hpp"
#include "qrg/verify_suites.hpp"
#include "qrg/version.hpp"

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct CmdOptions {
    std::string out;
    double J = 1.0;
    std::string g_spec;
    std::string n_spec;
    std::string t_range_spec;
    double t = std::numeric_limits<double>::quiet_NaN();
    int steps = 8;
    int points = 2001;
    int k = 1;
    int grid_points = 200;
    std::string method = "exact";
    bool rescale_time = false;
    bool flow_j = false;

    qrg::ExchangeScale scale() const {
        return flow_j ? qrg::ExchangeScale::flowed_j : qrg::ExchangeScale::bare_j;
    }
    qrg::DerivMethod deriv_method() const {
        if (method == "exact") return qrg::DerivMethod::exact;
        if (method == "fd") return qrg::DerivMethod::finite_difference;
        throw qrg::InvalidInput("--method must be 'exact' or 'fd'");
    }
};

void add_common(CLI::App* cmd, CmdOptions& o) {
    cmd->add_option("--J", o.J, "Bare exchange coupling")->capture_default_str();
    cmd->add_option("--out", o.out,
                    "Output CSV path (default: $QRG_OUT_DIR or cwd, <command>.csv)");
    cmd->set_config("--config", "", "Flat key=value configuration file");
}

struct Emitted {
    std::filesystem::path csv_path;
};

// CSV bytes depend only on the data; timestamps live in the manifest.
Emitted emit(const std::string& command, const CmdOptions& o, const qrg::Csv& csv,
             const std::optional<json>& summary, json config, Clock::time_point start,
             std::optional<long> truncated_rows = std::nullopt) {
    const auto csv_path = qrg::resolve_out_path(o.out, command + ".csv");
    csv.save(csv_path);

    auto sibling = [&](const char* suffix) {
        std::filesystem::path p = csv_path;
        p.replace_extension();
        p += suffix;
        return p;
    };
    if (summary)
        qrg::write_text_file(sibling(".summary.json"), summary->dump(2) + "\n");

    const double seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    json manifest{{"tool_version", qrg::kToolVersion},
                  {"command", command},
                  {"config", std::move(config)},
                  {"derived_constants", {{"g_c", 1.0}}},
                  {"rows_written", csv.rows.size()},
                  {"duration_seconds", seconds}};
    if (truncated_rows)
        manifest["truncated_rows"] = *truncated_rows;
    qrg::write_text_file(sibling(".manifest.json"), manifest.dump(2) + "\n");
    return {csv_path};
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
    if (points < 2 || lo == hi)
        return {lo};
    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i)
        grid[i] = lo + (hi - lo) * i / (points - 1);
    return grid;
}

// ---------------------------------------------------------------------------
// flow
// ---------------------------------------------------------------------------

int run_flow(const CmdOptions& o) {
    const auto start = Clock::now();
    if (o.steps < 0 || o.steps > 62)
        throw qrg::InvalidInput("--steps must lie in [0, 62]");
    const auto [g_lo, g_hi] = qrg::parse_range(o.g_spec);
    if (g_lo != g_hi)
        throw qrg::InvalidInput("flow expects a single --g value");
    const qrg::Coupling bare{o.J, g_lo};
    qrg::validate(bare);

    qrg::Csv csv;
    csv.header = {"n", "N", "J_n", "g_n", "dJn_dg", "dgn_dg"};
    long truncated = 0;
    for (int n = 0; n <= o.steps; ++n) {
        try {
            const auto traj = qrg::flow(bare, n);
            const auto der = qrg::flow_derivatives(bare, n);
            const auto& c = traj.steps.back();
            csv.add_row({qrg::cell(n), qrg::cell(qrg::effective_size(n)), qrg::cell(c.J),
                         qrg::cell(c.g), qrg::cell(der.dJn_dg), qrg::cell(der.dgn_dg)});
        } catch (const qrg::FlowOverflow&) {
            truncated = o.steps + 1 - n;
            break;
        }
    }
    json config{{"J", o.J}, {"g", g_lo}, {"steps", o.steps}};
    emit("flow", o, csv, std::nullopt, std::move(config), start,
         truncated ? std::optional<long>(truncated) : std::nullopt);
    if (truncated)
        std::fprintf(stderr, "flow: %ld step(s) beyond the overflow point were skipped\n",
                     truncated);
    return 0;
}

// ---------------------------------------------------------------------------
// dynamics
// ---------------------------------------------------------------------------

int run_dynamics(const CmdOptions& o) {
    const auto start = Clock::now();
    const bool fig1 = !std::isnan(o.t);
    const bool fig2 = !o.t_range_spec.empty();
    if (fig1 == fig2)
        throw qrg::InvalidInput(
            "dynamics needs exactly one of --t (concurrence vs g at fixed time) or "
            "--t-range (concurrence vs t at fixed g)");
    const auto [n_lo, n_hi] = qrg::parse_int_range(o.n_spec);
    if (n_lo < 0 || n_hi < n_lo)
        throw qrg::InvalidInput("--n range must be 0 <= lo <= hi");

    qrg::Csv csv;
    json config{{"J", o.J},
                {"n", o.n_spec},
                {"points", o.points},
                {"rescale-time", o.rescale_time},
                {"flow-J", o.flow_j}};

    if (fig1) {
        const auto [g_lo, g_hi] = qrg::parse_range(o.g_spec);
        csv.header = {"g", "n", "C"};
        for (int n = n_lo; n <= n_hi; ++n) {
            for (const double g : uniform_grid(g_lo, g_hi, o.points)) {
                const auto traj = qrg::flow({o.J, g}, n);
                const double j_eff =
                    o.flow_j ? traj.steps.back().J : o.J;
                const double c = qrg::concurrence_closed_form(
                    {j_eff, traj.steps.back().g}, o.t);
                csv.add_row({qrg::cell(g), qrg::cell(n), qrg::cell(c)});
            }
        }
        config["t"] = o.t;
        config["g"] = o.g_spec;
    } else {
        const auto [t_lo, t_hi] = qrg::parse_range(o.t_range_spec);
        const double t_end = t_lo == t_hi ? t_lo : t_hi;
        if (t_lo != t_hi && t_lo != 0.0)
            throw qrg::InvalidInput("--t-range must start at 0");
        const auto [g_lo, g_hi] = qrg::parse_range(o.g_spec);
        if (g_lo != g_hi)
            throw qrg::InvalidInput("fixed-g mode expects a single --g value");
        csv.header = o.rescale_time ? std::vector<std::string>{"t", "n", "C", "t_rescaled"}
                                    : std::vector<std::string>{"t", "n", "C"};
        for (int n = n_lo; n <= n_hi; ++n) {
            const auto traj = qrg::flow({o.J, g_lo}, n);
            const double j_eff = o.flow_j ? traj.steps.back().J : o.J;
            const auto series = qrg::concurrence_series({j_eff, traj.steps.back().g},
                                                        t_end, o.points, n);
            for (std::size_t i = 0; i < series.times.size(); ++i) {
                std::vector<std::string> row{qrg::cell(series.times[i]), qrg::cell(n),
                                             qrg::cell(series.values[i])};
                if (o.rescale_time)
                    row.push_back(qrg::cell(series.times[i] * traj.steps.back().J));
                csv.add_row(std::move(row));
            }
        }
        config["t-range"] = o.t_range_spec;
        config["g"] = o.g_spec;
    }
    emit("dynamics", o, csv, std::nullopt, std::move(config), start);
    return 0;
}

// ---------------------------------------------------------------------------
// peaks
// ---------------------------------------------------------------------------

int run_peaks(const CmdOptions& o) {
    const auto start = Clock::now();
    const auto [n_lo, n_hi] = qrg::parse_int_range(o.n_spec);
    const auto [g_lo, g_hi] = qrg::parse_range(o.g_spec);
    qrg::Csv csv;
    csv.header = {"n", "N", "g", "k", "t_max", "c_max"};
    for (int n = n_lo; n <= n_hi; ++n) {
        for (const double g : uniform_grid(g_lo, g_hi, o.points)) {
            const auto rec = qrg::t_max_analytic({o.J, g}, n, o.k, o.scale());
            csv.add_row({qrg::cell(rec.n), qrg::cell(rec.N), qrg::cell(rec.g),
                         qrg::cell(rec.k), qrg::cell(rec.t_max), qrg::cell(rec.c_max)});
        }
    }
    json config{{"J", o.J}, {"g", o.g_spec},     {"n", o.n_spec},
                {"k", o.k}, {"points", o.points}, {"flow-J", o.flow_j}};
    json summary{{"k", o.k},
                 {"rows", csv.rows.size()},
                 {"exchange_scale", o.flow_j ? "flowed_j" : "bare_j"}};
    emit("peaks", o, csv, summary, std::move(config), start);
    return 0;
}

// ---------------------------------------------------------------------------
// derivative / scaling / collapse
// ---------------------------------------------------------------------------

int run_derivative(const CmdOptions& o) {
    const auto start = Clock::now();
    const auto [n_lo, n_hi] = qrg::parse_int_range(o.n_spec);
    const auto [g_lo, g_hi] = qrg::parse_range(o.g_spec);
    qrg::Csv csv;
    csv.header = {"n", "N", "g", "dT_dg"};
    json n_list = json::array();
    for (int n = n_lo; n <= n_hi; ++n) {
        const auto curve = qrg::derivative_curve(o.J, g_lo, g_hi, o.points, n, o.k,
                                                 o.deriv_method(), o.scale());
        for (std::size_t i = 0; i < curve.g.size(); ++i)
            csv.add_row({qrg::cell(n), qrg::cell(curve.N), qrg::cell(curve.g[i]),
                         qrg::cell(curve.dT_dg[i])});
        n_list.push_back(n);
    }
    json config{{"J", o.J},           {"g", o.g_spec}, {"n", o.n_spec},
                {"k", o.k},           {"points", o.points},
                {"method", o.method}, {"flow-J", o.flow_j}};
    json summary{{"k", o.k}, {"method", o.method}, {"n", n_list},
                 {"rows", csv.rows.size()}};
    emit("derivative", o, csv, summary, std::move(config), start);
    return 0;
}

struct ScalingData {
    std::vector<qrg::DerivativeCurve> curves;
    std::vector<qrg::Minimum> minima;
};

ScalingData compute_minima(const CmdOptions& o, int n_lo, int n_hi, double g_lo,
                           double g_hi) {
    ScalingData data;
    for (int n = n_lo; n <= n_hi; ++n) {
        data.curves.push_back(qrg::derivative_curve(o.J, g_lo, g_hi, o.points, n, o.k,
                                                    qrg::DerivMethod::exact, o.scale()));
        data.minima.push_back(qrg::find_minimum(data.curves.back()));
    }
    return data;
}

json fit_to_json(const qrg::ScalingFit& fit) {
    return {{"exponent", fit.exponent},
            {"prefactor", fit.prefactor},
            {"residual", fit.residual}};
}

int run_scaling(const CmdOptions& o) {
    const auto start = Clock::now();
    const auto [n_lo, n_hi] = qrg::parse_int_range(o.n_spec);
    const auto [g_lo, g_hi] = qrg::parse_range(o.g_spec);
    const ScalingData data = compute_minima(o, n_lo, n_hi, g_lo, g_hi);

    std::vector<std::pair<double, double>> theta_samples;
    std::vector<std::pair<double, double>> drift_samples;
    qrg::Csv csv;
    csv.header = {"n", "N", "g_m", "dT_dg_min"};
    json sample_list = json::array();
    for (std::size_t i = 0; i < data.curves.size(); ++i) {
        const auto& curve = data.curves[i];
        const auto& min = data.minima[i];
        theta_samples.emplace_back(static_cast<double>(curve.N), std::abs(min.value));
        drift_samples.emplace_back(static_cast<double>(curve.N), min.g_m);
        csv.add_row({qrg::cell(curve.n), qrg::cell(curve.N), qrg::cell(min.g_m),
                     qrg::cell(min.value)});
        sample_list.push_back({{"n", curve.n},
                               {"N", curve.N},
                               {"g_m", min.g_m},
                               {"dT_dg_min", min.value}});
    }
    const auto theta = qrg::fit_theta(theta_samples);
    const auto drift = qrg::fit_gm_drift(drift_samples);

    json config{{"J", o.J}, {"g", o.g_spec}, {"n", o.n_spec},
                {"k", o.k}, {"points", o.points}, {"flow-J", o.flow_j}};
    json summary{{"theta_fit", fit_to_json(theta)},
                 {"gm_drift_fit", fit_to_json(drift)},
                 {"samples", sample_list}};
    emit("scaling", o, csv, summary, std::move(config), start);
    std::printf("theta exponent %.6f (residual %.2e), drift exponent %.6f (residual %.2e)\n",
                theta.exponent, theta.residual, drift.exponent, drift.residual);
    return 0;
}

int run_collapse(const CmdOptions& o) {
    const auto start = Clock::now();
    const auto [n_lo, n_hi] = qrg::parse_int_range(o.n_spec);
    const auto [g_lo, g_hi] = qrg::parse_range(o.g_spec);
    const ScalingData data = compute_minima(o, n_lo, n_hi, g_lo, g_hi);
    const auto result = qrg::collapse(data.curves, data.minima);

    qrg::Csv csv;
    csv.header = {"N", "x", "y"};
    json sizes = json::array();
    for (const auto& curve : result.curves) {
        sizes.push_back(curve.N);
        for (const auto& p : curve.points)
            csv.add_row({qrg::cell(p.N), qrg::cell(p.x), qrg::cell(p.y)});
    }
    json config{{"J", o.J}, {"g", o.g_spec}, {"n", o.n_spec},
                {"k", o.k}, {"points", o.points}, {"flow-J", o.flow_j}};
    json summary{{"collapse_metric", result.metric}, {"sizes", sizes}};
    emit("collapse", o, csv, summary, std::move(config), start);
    std::printf("collapse metric %.6f (two largest sizes)\n", result.metric);
    return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int run_verify(const CmdOptions& o) {
    const auto results = qrg::run_verification(o.grid_points);
    std::printf("%-38s %-14s %-10s %s\n", "suite", "max residual", "tolerance", "status");
    for (const auto& r : results)
        std::printf("%-38s %-14.3e %-10.0e %s\n", r.name.c_str(), r.max_residual,
                    r.tolerance, r.pass ? "PASS" : "FAIL");
    return qrg::all_passed(results) ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum RG flow, two-site concurrence dynamics and peak-time scaling "
                 "for the transverse-field Ising chain"};
    app.require_subcommand(1);

    CmdOptions flow_o, dyn_o, peaks_o, deriv_o, scal_o, coll_o, verify_o;

    auto* flow_cmd = app.add_subcommand("flow", "RG coupling flow and its derivatives");
    add_common(flow_cmd, flow_o);
    flow_cmd->add_option("--g", flow_o.g_spec, "Bare transverse field")->required();
    flow_cmd->add_option("--steps", flow_o.steps, "Number of RG steps")
        ->capture_default_str();

    auto* dyn_cmd = app.add_subcommand(
        "dynamics", "Concurrence vs g at fixed time, or vs t at fixed g, across RG steps");
    add_common(dyn_cmd, dyn_o);
    dyn_cmd->add_option("--g,--g-range", dyn_o.g_spec, "Field value or range lo..hi")
        ->required();
    dyn_cmd->add_option("--t", dyn_o.t, "Fixed time (sweep over g)");
    dyn_cmd->add_option("--t-range", dyn_o.t_range_spec, "Time range 0..end (sweep over t)");
    dyn_cmd->add_option("--n,--n-range", dyn_o.n_spec, "RG step or range lo..hi")
        ->default_val("0..4");
    dyn_cmd->add_option("--points", dyn_o.points, "Grid points")->capture_default_str();
    dyn_cmd->add_flag("--rescale-time", dyn_o.rescale_time,
                      "Emit an extra t_rescaled = t*J_n column");
    dyn_cmd->add_flag("--flow-J", dyn_o.flow_j,
                      "Use the renormalized exchange J_n instead of the bare J");

    auto* peaks_cmd = app.add_subcommand("peaks", "Analytic concurrence peak times");
    add_common(peaks_cmd, peaks_o);
    peaks_cmd->add_option("--g,--g-range", peaks_o.g_spec, "Field value or range lo..hi")
        ->required();
    peaks_cmd->add_option("--n,--n-range", peaks_o.n_spec, "RG step or range lo..hi")
        ->default_val("0..8");
    peaks_cmd->add_option("--k", peaks_o.k, "Peak order (1-based)")->capture_default_str();
    peaks_cmd->add_option("--points", peaks_o.points, "Grid points when --g is a range")
        ->default_val(101);
    peaks_cmd->add_flag("--flow-J", peaks_o.flow_j,
                        "Use the renormalized exchange J_n instead of the bare J");

    auto* deriv_cmd =
        app.add_subcommand("derivative", "dT_max/dg curves over a field range");
    add_common(deriv_cmd, deriv_o);
    deriv_cmd->add_option("--g,--g-range", deriv_o.g_spec, "Field range lo..hi")
        ->default_val("0.5..1.05");
    deriv_cmd->add_option("--n,--n-range", deriv_o.n_spec, "RG step or range lo..hi")
        ->default_val("3..8");
    deriv_cmd->add_option("--k", deriv_o.k, "Peak order")->capture_default_str();
    deriv_cmd->add_option("--points", deriv_o.points, "Grid points")->default_val(500);
    deriv_cmd->add_option("--method", deriv_o.method, "exact or fd")
        ->capture_default_str();
    deriv_cmd->add_flag("--flow-J", deriv_o.flow_j,
                        "Use the renormalized exchange J_n instead of the bare J");

    auto* scal_cmd = app.add_subcommand(
        "scaling", "Minima of dT_max/dg per size and the log-log exponent fits");
    add_common(scal_cmd, scal_o);
    scal_cmd->add_option("--g,--g-range", scal_o.g_spec, "Field range lo..hi")
        ->default_val("0.5..1.05");
    scal_cmd->add_option("--n,--n-range", scal_o.n_spec, "RG step range lo..hi")
        ->default_val("3..8");
    scal_cmd->add_option("--k", scal_o.k, "Peak order")->capture_default_str();
    scal_cmd->add_option("--points", scal_o.points, "Coarse grid points")->default_val(1200);
    scal_cmd->add_flag("--flow-J", scal_o.flow_j,
                       "Use the renormalized exchange J_n instead of the bare J");

    auto* coll_cmd = app.add_subcommand(
        "collapse", "Finite-size collapse of the derivative curves");
    add_common(coll_cmd, coll_o);
    coll_cmd->add_option("--g,--g-range", coll_o.g_spec, "Field range lo..hi")
        ->default_val("0.5..1.05");
    coll_cmd->add_option("--n,--n-range", coll_o.n_spec, "RG step range lo..hi")
        ->default_val("5..8");
    coll_cmd->add_option("--k", coll_o.k, "Peak order")->capture_default_str();
    coll_cmd->add_option("--points", coll_o.points, "Curve grid points")->default_val(2000);
    coll_cmd->add_flag("--flow-J", coll_o.flow_j,
                       "Use the renormalized exchange J_n instead of the bare J");

    auto* verify_cmd =
        app.add_subcommand("verify", "Run every oracle equivalence suite and report");
    verify_cmd->add_option("--grid-points", verify_o.grid_points,
                           "Grid resolution of the RG projection sweep")
        ->capture_default_str();
    verify_cmd->set_config("--config", "", "Flat key=value configuration file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (flow_cmd->parsed()) return run_flow(flow_o);
        if (dyn_cmd->parsed()) return run_dynamics(dyn_o);
        if (peaks_cmd->parsed()) return run_peaks(peaks_o);
        if (deriv_cmd->parsed()) return run_derivative(deriv_o);
        if (scal_cmd->parsed()) return run_scaling(scal_o);
        if (coll_cmd->parsed()) return run_collapse(coll_o);
        if (verify_cmd->parsed()) return run_verify(verify_o);
    } catch (const qrg::NumericFailure& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    } catch (const qrg::InvalidInput& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
