// persist-lab: thresholds, sweeps and Monte Carlo campaigns for the
// two-state persistence model with mass killings.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "persistlab/csv.hpp"
#include "persistlab/graphical.hpp"
#include "persistlab/svg.hpp"
#include "persistlab/sweeps.hpp"

namespace pl = persistlab;
using nlohmann::json;

namespace {

struct CommonOpts {
    double lambda = 2.0;
    double a = 1.0;
    double b = 1.0;
    std::uint64_t seed = 0;
    std::int64_t reps = 10000;
    int epochs = 100;
    std::string out;
    std::string format = "csv";
    double tol = 0;  // 0 = command default
    int quad_nodes = 64;
    double quad_tol = 1e-9;
    int quad_max_refine = 9;
    int threads = 1;
};

void add_rate_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--lambda", o.lambda, "birth rate of normal bacteria");
    cmd->add_option("--a", o.a, "switch rate normal -> persistent");
    cmd->add_option("--b", o.b, "switch rate persistent -> normal");
}

void add_quad_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--quad-nodes", o.quad_nodes,
                    "starting Gauss-Laguerre node count (>= 16)");
    cmd->add_option("--quad-tol", o.quad_tol,
                    "relative tolerance for quadrature refinement");
    cmd->add_option("--quad-max-refine", o.quad_max_refine,
                    "maximum node-doubling refinements");
}

void add_output_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--out", o.out, "output path (stdout when omitted)");
    cmd->add_option("--format", o.format, "output format: csv or svg+csv")
        ->check(CLI::IsMember({"csv", "svg+csv"}));
}

int effective_threads(const CommonOpts& o) {
    if (const char* env = std::getenv("PERSIST_LAB_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return o.threads >= 1 ? o.threads : 1;
}

pl::QuadratureSettings quad_settings(const CommonOpts& o) {
    return {o.quad_nodes, o.quad_tol, o.quad_max_refine};
}

/// Writes `body` (already including the CSV comment header) to --out or
/// stdout; with svg+csv also renders <out>.svg.
void emit_csv(const CommonOpts& o, const std::string& body,
              pl::PlotKind kind = pl::PlotKind::Auto) {
    if (o.out.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw pl::IoError("cannot open " + o.out + " for writing");
        f << body;
    }
    if (o.format == "svg+csv") {
        const std::string svg = pl::render_svg(pl::parse_csv(body), kind);
        const std::string path = (o.out.empty() ? "plot" : o.out) + ".svg";
        std::ofstream f(path, std::ios::binary);
        if (!f) throw pl::IoError("cannot open " + path + " for writing");
        f << svg;
    }
}

json rates_json(const CommonOpts& o) {
    return {{"lambda", o.lambda}, {"a", o.a}, {"b", o.b}};
}

int cmd_analyze(const CommonOpts& o, bool with_delta_c) {
    const pl::Rates r{o.lambda, o.a, o.b};
    const pl::SpectralData sd = pl::spectral(pl::validate_rates(r, pl::RateContext::Solver));
    const double tol = o.tol > 0 ? o.tol : 1e-10;
    const pl::CriticalResult tc = pl::find_tc(r, tol);

    json doc;
    doc["config"] = {{"command", "analyze"}, {"rates", rates_json(o)},
                     {"tol", tol}, {"delta_c", with_delta_c}};
    doc["version"] = pl::kToolVersion;
    doc["disc"] = sd.disc;
    doc["nu1"] = sd.nu1;
    doc["nu2"] = sd.nu2;
    doc["c1"] = sd.c1;
    doc["c2"] = sd.c2;
    doc["t_star"] = pl::y_min_time(sd);
    doc["t_c"] = tc.value;
    doc["t_c_residual"] = tc.residual;
    doc["delta_c_lower_bound"] = pl::delta_c_lower_bound(r);
    if (with_delta_c) {
        const pl::CriticalResult dc =
            pl::find_delta_c(r, o.tol > 0 ? o.tol : 1e-6, quad_settings(o));
        doc["delta_c"] = {{"value", dc.value},
                          {"bracket", {dc.bracket_lo, dc.bracket_hi}},
                          {"residual", dc.residual},
                          {"iterations", dc.iterations},
                          {"multiple_sign_changes", dc.multiple_sign_changes}};
    }

    std::ostringstream body;
    body << doc.dump(2) << "\n";
    if (o.out.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw pl::IoError("cannot open " + o.out + " for writing");
        f << body.str();
    }
    return 0;
}

int cmd_tc_grid(const CommonOpts& o, std::pair<double, double> a_range,
                std::pair<double, double> b_range, int grid_points) {
    const double tol = o.tol > 0 ? o.tol : 1e-10;
    const int threads = effective_threads(o);
    const pl::TcGridResult grid = pl::tc_grid(o.lambda, a_range, b_range,
                                              grid_points, grid_points, tol,
                                              threads);

    const json cfg = {{"command", "tc-grid"}, {"lambda", o.lambda},
                      {"a_range", {a_range.first, a_range.second}},
                      {"b_range", {b_range.first, b_range.second}},
                      {"grid_points", grid_points}, {"tol", tol},
                      {"threads", threads}};
    std::ostringstream body;
    pl::write_csv_header(body, cfg.dump(), o.seed);
    const bool with_error = grid.any_error;
    pl::write_csv_row(body, with_error ? std::vector<std::string>{"lambda", "a", "b", "tc", "error"}
                                       : std::vector<std::string>{"lambda", "a", "b", "tc"});
    for (const pl::TcGridCell& cell : grid.cells) {
        std::vector<std::string> row{pl::format_double(cell.lambda),
                                     pl::format_double(cell.a),
                                     pl::format_double(cell.b),
                                     cell.tc ? pl::format_double(*cell.tc) : ""};
        if (with_error) row.push_back(cell.error);
        pl::write_csv_row(body, row);
    }
    body << "# summary min_tc=" << pl::format_double(grid.min_tc)
         << " max_tc=" << pl::format_double(grid.max_tc)
         << " ratio=" << pl::format_double(grid.ratio()) << "\n";
    emit_csv(o, body.str(), pl::PlotKind::Heatmap);
    return grid.any_error ? 2 : 0;
}

int cmd_tc_lambda(const CommonOpts& o, std::pair<double, double> range,
                  int points) {
    const double tol = o.tol > 0 ? o.tol : 1e-10;
    const int threads = effective_threads(o);
    const auto rows = pl::tc_lambda(o.a, o.b, range, points, tol, threads);

    const json cfg = {{"command", "tc-lambda"}, {"a", o.a}, {"b", o.b},
                      {"lambda_range", {range.first, range.second}},
                      {"points", points}, {"tol", tol}, {"threads", threads}};
    std::ostringstream body;
    pl::write_csv_header(body, cfg.dump(), o.seed);
    pl::write_csv_row(body, {"lambda", "tc"});
    bool any_error = false;
    for (const pl::TcLambdaRow& row : rows) {
        any_error = any_error || !row.tc;
        pl::write_csv_row(body, {pl::format_double(row.lambda),
                                 row.tc ? pl::format_double(*row.tc) : ""});
    }
    emit_csv(o, body.str(), pl::PlotKind::Line);
    return any_error ? 2 : 0;
}

int cmd_mprime(const CommonOpts& o, std::pair<double, double> range,
               int points) {
    const int threads = effective_threads(o);
    const auto rows = pl::mprime_grid({o.lambda, o.a, o.b}, range, points,
                                      quad_settings(o), threads);

    const json cfg = {{"command", "mprime"}, {"rates", rates_json(o)},
                      {"delta_range", {range.first, range.second}},
                      {"points", points}, {"quad_nodes", o.quad_nodes},
                      {"quad_tol", o.quad_tol},
                      {"quad_max_refine", o.quad_max_refine},
                      {"threads", threads}};
    std::ostringstream body;
    pl::write_csv_header(body, cfg.dump(), o.seed);
    pl::write_csv_row(body, {"delta", "m_prime", "lower_envelope", "upper_envelope"});
    for (const pl::MprimeRow& row : rows)
        pl::write_csv_row(body, {pl::format_double(row.delta),
                                 pl::format_double(row.m_prime),
                                 pl::format_double(row.lower_envelope),
                                 pl::format_double(row.upper_envelope)});
    emit_csv(o, body.str(), pl::PlotKind::Line);
    return 0;
}

int cmd_delta_c(const CommonOpts& o) {
    const pl::Rates r{o.lambda, o.a, o.b};
    const double tol = o.tol > 0 ? o.tol : 1e-6;
    const pl::CriticalResult dc = pl::find_delta_c(r, tol, quad_settings(o));

    json doc;
    doc["config"] = {{"command", "delta-c"}, {"rates", rates_json(o)},
                     {"tol", tol}};
    doc["version"] = pl::kToolVersion;
    doc["delta_c"] = dc.value;
    doc["bracket"] = {dc.bracket_lo, dc.bracket_hi};
    doc["residual"] = dc.residual;
    doc["iterations"] = dc.iterations;
    doc["multiple_sign_changes"] = dc.multiple_sign_changes;
    doc["lower_bound"] = pl::delta_c_lower_bound(r);

    const std::string text = doc.dump(2) + "\n";
    if (o.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw pl::IoError("cannot open " + o.out + " for writing");
        f << text;
    }
    return 0;
}

int cmd_survival(const CommonOpts& o, double period, double delta,
                 std::int64_t cap) {
    if ((period > 0) == (delta > 0))
        throw pl::ValidationError("survival: give exactly one of --period / --delta");
    const pl::KillingSchedule sched = period > 0
                                          ? pl::KillingSchedule::deterministic(period)
                                          : pl::KillingSchedule::poisson(delta);
    const pl::Rates r{o.lambda, o.a, o.b};
    const int threads = effective_threads(o);
    pl::SimLimits limits;
    if (cap > 0) limits.population_cap = cap;

    const pl::SurvivalRun run = pl::survival_run(r, sched, o.reps, o.epochs,
                                                 pl::Seed{o.seed}, limits, threads);

    const bool deterministic = period > 0;
    const json cfg = {{"command", "survival"}, {"rates", rates_json(o)},
                      {"schedule", deterministic ? "deterministic" : "poisson"},
                      {"param", deterministic ? period : delta},
                      {"reps", o.reps}, {"epochs", o.epochs}, {"seed", o.seed},
                      {"cap", limits.population_cap}, {"threads", threads}};

    std::ostringstream body;
    pl::write_csv_header(body, cfg.dump(), o.seed);
    pl::write_csv_row(body, {"replicate", "survived", "extinct_epoch",
                             "final_n2", "capped"});
    for (const pl::ReplicateOutcome& rep : run.outcomes)
        pl::write_csv_row(
            body, {std::to_string(rep.replicate), rep.survived ? "1" : "0",
                   rep.extinct_epoch ? std::to_string(*rep.extinct_epoch) : "",
                   std::to_string(rep.final_n2), rep.capped ? "1" : "0"});
    if (!o.out.empty()) emit_csv(o, body.str());

    // summary row; censoring depth and seed echoed so the run is repeatable
    const pl::SurvivalEstimate& est = run.estimate;
    std::ostringstream sum;
    pl::write_csv_header(sum, cfg.dump(), o.seed);
    pl::write_csv_row(sum, {"lambda", "a", "b", "schedule", "param", "reps",
                            "epochs", "survivors", "p_hat", "ci_lo", "ci_hi",
                            "seed"});
    pl::write_csv_row(sum, {pl::format_double(o.lambda), pl::format_double(o.a),
                            pl::format_double(o.b),
                            deterministic ? "deterministic" : "poisson",
                            pl::format_double(deterministic ? period : delta),
                            std::to_string(o.reps), std::to_string(o.epochs),
                            std::to_string(est.survivors),
                            pl::format_double(est.p_hat),
                            pl::format_double(est.ci_lo),
                            pl::format_double(est.ci_hi),
                            std::to_string(o.seed)});
    sum << "# capped_reps " << est.capped_reps << " (counted as survivors)\n";
    if (o.out.empty()) std::cout << body.str() << "# summary follows\n";
    std::cout << sum.str();

    if (2 * est.capped_reps > est.reps) {
        std::cerr << "error: more than half of the replicates hit the population "
                     "cap; resize --cap or the schedule\n";
        return 2;
    }
    return 0;
}

int cmd_coupling_check(const CommonOpts& o, double delta, double delta_high,
                       double horizon, std::int64_t node_budget) {
    const pl::Rates r{o.lambda, o.a, o.b};
    const int threads = effective_threads(o);
    const pl::CouplingSummary sum = pl::coupling_check(
        r, delta, delta_high, horizon, o.reps, pl::Seed{o.seed}, node_budget,
        threads);

    json doc;
    doc["config"] = {{"command", "coupling-check"}, {"rates", rates_json(o)},
                     {"delta", delta}, {"delta_high", delta_high},
                     {"horizon", horizon}, {"reps", o.reps}, {"seed", o.seed},
                     {"node_budget", node_budget}, {"threads", threads}};
    doc["version"] = pl::kToolVersion;
    doc["reps"] = sum.reps;
    doc["used"] = sum.used;
    doc["discarded"] = sum.discarded;
    doc["violations"] = sum.violations;
    doc["alive_low"] = sum.alive_low;
    doc["alive_high"] = sum.alive_high;
    doc["p_low"] = sum.p_low;
    doc["p_high"] = sum.p_high;

    const std::string text = doc.dump(2) + "\n";
    if (o.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw pl::IoError("cannot open " + o.out + " for writing");
        f << text;
    }
    if (sum.violations > 0) {
        std::cerr << "error: containment violations detected (construction bug)\n";
        return 2;
    }
    return 0;
}

int cmd_plot(const std::string& in_path, const std::string& out_path,
             const std::string& kind_name) {
    std::ifstream f(in_path, std::ios::binary);
    if (!f) throw pl::IoError("cannot open " + in_path);
    std::ostringstream buf;
    buf << f.rdbuf();

    pl::PlotKind kind = pl::PlotKind::Auto;
    if (kind_name == "line") kind = pl::PlotKind::Line;
    if (kind_name == "heatmap") kind = pl::PlotKind::Heatmap;
    const std::string svg = pl::render_svg(pl::parse_csv(buf.str()), kind);

    if (out_path.empty()) {
        std::cout << svg;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw pl::IoError("cannot open " + out_path + " for writing");
        out << svg;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-state persistence model laboratory"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(pl::kToolVersion));

    CommonOpts o;

    auto* analyze = app.add_subcommand("analyze", "spectral data and thresholds as JSON");
    add_rate_flags(analyze, o);
    add_quad_flags(analyze, o);
    analyze->add_option("--tol", o.tol, "solver tolerance");
    analyze->add_option("--out", o.out, "output path");
    bool with_delta_c = false;
    analyze->add_flag("--delta-c", with_delta_c,
                      "also compute delta_c (one quadrature per probe)");

    auto* tcgrid = app.add_subcommand("tc-grid", "T_c over a log-spaced (a, b) grid");
    tcgrid->add_option("--lambda", o.lambda, "fixed birth rate");
    std::pair<double, double> a_range{1e-6, 1e-3}, b_range{1e-6, 1e-3};
    int grid_points = 20;
    tcgrid->add_option("--a-min", a_range.first);
    tcgrid->add_option("--a-max", a_range.second);
    tcgrid->add_option("--b-min", b_range.first);
    tcgrid->add_option("--b-max", b_range.second);
    tcgrid->add_option("--grid", grid_points, "points per axis");
    tcgrid->add_option("--tol", o.tol);
    tcgrid->add_option("--threads", o.threads);
    add_output_flags(tcgrid, o);

    auto* tclambda = app.add_subcommand("tc-lambda", "T_c as a function of lambda");
    double tcl_a = 1e-6, tcl_b = 1e-3;
    tclambda->add_option("--a", tcl_a);
    tclambda->add_option("--b", tcl_b);
    std::pair<double, double> lambda_range{0.5, 10.0};
    int lambda_points = 40;
    tclambda->add_option("--lambda-min", lambda_range.first);
    tclambda->add_option("--lambda-max", lambda_range.second);
    tclambda->add_option("--points", lambda_points);
    tclambda->add_option("--tol", o.tol);
    tclambda->add_option("--threads", o.threads);
    add_output_flags(tclambda, o);

    auto* mprime = app.add_subcommand("mprime", "m'(delta) with its envelope");
    add_rate_flags(mprime, o);
    add_quad_flags(mprime, o);
    std::pair<double, double> delta_range{0.1, 50.0};
    int delta_points = 50;
    mprime->add_option("--delta-min", delta_range.first);
    mprime->add_option("--delta-max", delta_range.second);
    mprime->add_option("--points", delta_points);
    mprime->add_option("--threads", o.threads);
    add_output_flags(mprime, o);

    auto* deltac = app.add_subcommand("delta-c", "critical Poisson killing intensity");
    add_rate_flags(deltac, o);
    add_quad_flags(deltac, o);
    deltac->add_option("--tol", o.tol, "bracket width tolerance");
    deltac->add_option("--out", o.out);

    auto* survival = app.add_subcommand("survival", "Monte Carlo survival estimate");
    add_rate_flags(survival, o);
    double period = 0, sdelta = 0;
    std::int64_t cap = 0;
    survival->add_option("--period", period, "deterministic killing period T");
    survival->add_option("--delta", sdelta, "Poisson killing intensity");
    survival->add_option("--reps", o.reps);
    survival->add_option("--epochs", o.epochs, "censoring depth in killings");
    survival->add_option("--seed", o.seed);
    survival->add_option("--cap", cap, "population cap (default 1e8)");
    survival->add_option("--threads", o.threads);
    survival->add_option("--out", o.out, "per-replicate CSV path");

    auto* coupling = app.add_subcommand("coupling-check",
                                        "decimation coupling of two intensities");
    add_rate_flags(coupling, o);
    double cdelta = 0.3, cdelta_high = 3.0, horizon = 20.0;
    std::int64_t node_budget = 10'000'000;
    coupling->add_option("--delta", cdelta, "low killing intensity");
    coupling->add_option("--delta-high", cdelta_high, "high killing intensity");
    coupling->add_option("--horizon", horizon);
    coupling->add_option("--reps", o.reps);
    coupling->add_option("--seed", o.seed);
    coupling->add_option("--node-budget", node_budget);
    coupling->add_option("--threads", o.threads);
    coupling->add_option("--out", o.out);

    auto* plot = app.add_subcommand("plot", "render a persist-lab CSV to SVG");
    std::string plot_in, plot_kind = "auto";
    plot->add_option("--in", plot_in, "CSV produced by this tool")->required();
    plot->add_option("--kind", plot_kind, "line | heatmap")
        ->check(CLI::IsMember({"auto", "line", "heatmap"}));
    plot->add_option("--out", o.out, "SVG path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(o, with_delta_c);
        if (tcgrid->parsed()) return cmd_tc_grid(o, a_range, b_range, grid_points);
        if (tclambda->parsed()) {
            o.a = tcl_a;
            o.b = tcl_b;
            return cmd_tc_lambda(o, lambda_range, lambda_points);
        }
        if (mprime->parsed()) return cmd_mprime(o, delta_range, delta_points);
        if (deltac->parsed()) return cmd_delta_c(o);
        if (survival->parsed()) return cmd_survival(o, period, sdelta, cap);
        if (coupling->parsed())
            return cmd_coupling_check(o, cdelta, cdelta_high, horizon, node_budget);
        if (plot->parsed()) return cmd_plot(plot_in, o.out, plot_kind);
    } catch (const pl::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const pl::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const pl::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
