#include "cauchywell/cli.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cauchywell/analysis.hpp"
#include "cauchywell/polynomial.hpp"
#include "cauchywell/pv_quadrature.hpp"
#include "cauchywell/refine.hpp"
#include "cauchywell/solver.hpp"
#include "cauchywell/trial.hpp"
#include "cauchywell/util.hpp"

namespace cauchywell::cli {

void CliConfig::validate() const
{
    if (precision_bits != 0 && (precision_bits < 64 || precision_bits > 4096))
        throw std::invalid_argument("precision bits must be 0 (machine) or in [64, 4096]");
    if (grid_points < 2) throw std::invalid_argument("grid must have at least 2 points");
    if (gamma_terms < 1) throw std::invalid_argument("terms must be >= 1");
    if (!(imag_tol > 0)) throw std::invalid_argument("imag-tol must be positive");
}

namespace {

[[nodiscard]] Parity parse_parity(const std::string& s)
{
    return s == "even" ? Parity::even : Parity::odd;
}

[[nodiscard]] TrialKind parse_kind(const std::string& s)
{
    return s == "ground" ? TrialKind::ground_cos : TrialKind::excited_sin_cos;
}

/// Fixed shortest-exact decimal for text payloads.
[[nodiscard]] std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << text;
    if (!os) throw std::runtime_error("write failed: " + path);
}

[[nodiscard]] std::vector<double> parse_coeff_list(const std::string& inline_list,
                                                   const std::string& file_path)
{
    std::vector<double> coeffs;
    if (!inline_list.empty()) {
        std::istringstream is(inline_list);
        std::string piece;
        while (std::getline(is, piece, ','))
            coeffs.push_back(std::stod(piece));
    } else {
        std::ifstream is(file_path);
        if (!is) throw std::runtime_error("cannot open coefficient file: " + file_path);
        double v = 0.0;
        while (is >> v) coeffs.push_back(v);
        if (!is.eof()) throw std::invalid_argument("coefficient file holds non-numeric data");
    }
    if (coeffs.empty()) throw std::invalid_argument("no coefficients supplied");
    return coeffs;
}

/// Flag unset -> environment override -> machine default.
[[nodiscard]] int effective_precision_bits(bool flag_given, int flag_value, std::ostream& err,
                                           bool& ok)
{
    ok = true;
    if (flag_given) return flag_value;
    const char* env = std::getenv("CAUCHY_WELL_PRECISION_BITS");
    if (env == nullptr || *env == '\0') return 0;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 0 || v > 4096) {
        err << "error: CAUCHY_WELL_PRECISION_BITS must be an integer in {0} U [64, 4096], got '"
            << env << "'\n";
        ok = false;
        return 0;
    }
    return static_cast<int>(v);
}

[[nodiscard]] SpectralSolution solve_with_config(Parity parity, int degree, int rank,
                                                 const CliConfig& cfg)
{
    if (cfg.precision_bits == 0) return solve(parity, degree, rank, cfg.imag_tol);
    RefineSettings settings;
    settings.precision_bits = cfg.precision_bits;
    settings.imag_tol = cfg.imag_tol;
    return refine(parity, degree, rank, settings);
}

int run_solve(const std::string& parity_s, int degree, int rank, const CliConfig& cfg,
              std::ostream& out)
{
    cfg.validate();
    const auto sol = solve_with_config(parse_parity(parity_s), degree, rank, cfg);
    const std::string doc = to_json(sol).dump(2) + "\n";
    if (!cfg.json_path.empty()) write_text(cfg.json_path, doc);
    if (!cfg.csv_path.empty()) emit_csv(solution_residual(sol, cfg.grid_points), cfg.csv_path);
    if (cfg.json_path.empty() && cfg.csv_path.empty()) out << doc;
    return kExitOk;
}

int run_apply(const std::string& parity_s, const std::string& inline_list,
              const std::string& file_path, std::ostream& out)
{
    const Parity parity = parse_parity(parity_s);
    WeightedPolynomial<double> psi{parity, parse_coeff_list(inline_list, file_path), {}};
    const auto image = to_dense(apply_AD_closed(psi), parity);

    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["tool_version"] = kToolVersion;
    j["parity"] = to_string(parity);
    j["alphas"] = psi.alphas;
    j["image"] = image.coeffs;
    j["boundary_value"] = boundary_value(image);
    out << j.dump(2) << '\n';
    return kExitOk;
}

[[nodiscard]] nlohmann::ordered_json report_json(const ResidualReport& report)
{
    nlohmann::ordered_json j;
    j["sup"] = report.sup;
    j["sup_location"] = report.sup_location;
    j["grid_sup"] = report.grid_sup;
    j["boundary_upper"] = report.boundary_upper;
    j["boundary_lower"] = report.boundary_lower;
    j["grid_points"] = report.grid_points;
    return j;
}

int run_trial(const std::string& kind_s, int theta_num, double e, const CliConfig& cfg,
              std::ostream& out)
{
    cfg.validate();
    const auto trial = make_trial(parse_kind(kind_s), theta_num, cfg.gamma_terms);
    const auto series = eigenvalue_from_series(expand_trial(trial), trial.parity());

    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["tool_version"] = kToolVersion;
    j["kind"] = to_string(trial.kind);
    j["parity"] = to_string(trial.parity());
    j["theta_num"] = trial.theta_num;
    j["theta"] = trial.theta();
    j["gamma_terms"] = trial.gamma_terms;
    j["C"] = trial.norm_c;
    j["alphas"] = as_weighted(trial).alphas;
    j["series_E"] = series.value;
    j["series_last_increment"] = series.last_increment;
    j["e_used"] = e;
    j["residual"] = report_json(trial_residual(trial, e, cfg.grid_points));
    out << j.dump(2) << '\n';
    return kExitOk;
}

int run_sweep(const std::string& kind_s, int theta_from, int theta_to, double e,
              const CliConfig& cfg, std::ostream& out)
{
    cfg.validate();
    const auto result =
        sweep(parse_kind(kind_s), theta_from, theta_to, e, cfg.grid_points, cfg.gamma_terms);

    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["tool_version"] = kToolVersion;
    j["kind"] = kind_s;
    j["e_used"] = e;
    j["theta_from"] = theta_from;
    j["theta_to"] = theta_to;
    j["gamma_terms"] = cfg.gamma_terms;
    j["grid_points"] = cfg.grid_points;
    j["best"] = {{"theta_num", result.best.theta_num}, {"sup", result.best.sup}};
    auto points = nlohmann::ordered_json::array();
    for (const auto& p : result.points)
        points.push_back({{"theta_num", p.theta_num}, {"sup", p.sup}});
    j["points"] = std::move(points);
    out << j.dump(2) << '\n';
    return kExitOk;
}

int run_residual(const std::string& solution_path, const CliConfig& cfg, std::ostream& out,
                 std::ostream& err)
{
    cfg.validate();
    const auto sol = load_solution_file(solution_path);
    const auto grid = solution_residual(sol, cfg.grid_points);
    if (cfg.csv_path.empty())
        emit_csv(grid, out);
    else
        emit_csv(grid, cfg.csv_path);
    err << "sup=" << num(grid.sup) << " boundary_limit=" << num(grid.boundary_limit)
        << " E=" << num(grid.e_used) << '\n';
    return kExitOk;
}

int run_tables(int max_degree, const std::string& tolerances_path, std::ostream& out,
               std::ostream& err)
{
    const auto cfg = tolerances_path.empty() ? ToleranceConfig::defaults()
                                             : ToleranceConfig::load_file(tolerances_path);

    struct Item {
        std::string table;
        int row = 0;
    };
    struct Result {
        std::vector<Deviation> devs;
        std::string error;
    };

    std::vector<Item> items;
    for (const auto& row : table_I())
        if (row.degree <= max_degree) items.push_back({"I", row.degree});
    for (const auto& row : table_III())
        if (2 * row.n <= max_degree) items.push_back({"III", row.n});
    if (items.empty()) {
        err << "error: no reference rows at or below degree " << max_degree << '\n';
        return kExitUsage;
    }

    // Each item is one independent solve+compare; slots keep output ordered.
    std::vector<Result> results(items.size());
    parallel_for(items.size(), [&](std::size_t i) {
        try {
            auto keep = [&](const std::vector<Deviation>& devs, const char* prefix) {
                for (const auto& d : devs)
                    if (d.field.rfind(prefix, 0) == 0) results[i].devs.push_back(d);
            };
            if (items[i].table == "I") {
                keep(compare(solve(Parity::even, items[i].row), cfg), "I.");
            } else {
                const int n = items[i].row;
                const auto evens = solve_all(Parity::even, 2 * n);
                const auto odds = solve_all(Parity::odd, 2 * n + 1);
                const std::array<std::pair<Parity, int>, 5> ladder{
                    {{Parity::even, 1}, {Parity::odd, 1}, {Parity::even, 2},
                     {Parity::odd, 2}, {Parity::even, 3}}};
                for (const auto& [parity, rank] : ladder)
                    keep(compare(select(parity == Parity::even ? evens : odds, rank), cfg),
                         "III.");
            }
        } catch (const std::exception& e) {
            results[i].error = e.what();
        }
    });

    out << "table,row,field,computed,reference,deviation,tolerance,status\n";
    bool any_fail = false;
    bool any_error = false;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (!results[i].error.empty()) {
            any_error = true;
            err << "error: " << items[i].table << " row " << items[i].row << ": "
                << results[i].error << '\n';
            continue;
        }
        for (const auto& d : results[i].devs) {
            any_fail = any_fail || !d.pass;
            out << items[i].table << ',' << items[i].row << ',' << d.field << ','
                << num(d.computed) << ',' << num(d.reference) << ',' << num(d.deviation) << ','
                << num(d.tolerance) << ',' << (d.pass ? "PASS" : "FAIL") << '\n';
        }
    }
    if (any_error) return kExitNumerical;
    return any_fail ? kExitRegression : kExitOk;
}

int run_oracle_check(int trials, int max_degree, int points, unsigned long long seed, double tol,
                     std::ostream& out)
{
    if (trials < 1 || points < 1) throw std::invalid_argument("trials and points must be >= 1");
    if (max_degree < 3) throw std::invalid_argument("degree must be >= 3 to cover both parities");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    double worst = 0.0, worst_x = 0.0;
    std::string worst_parity = "even";
    int worst_degree = 0;

    for (int t = 0; t < trials; ++t) {
        const Parity parity = t % 2 == 0 ? Parity::even : Parity::odd;
        const int max_n = parity == Parity::even ? max_degree / 2 : (max_degree - 1) / 2;
        const int n = std::uniform_int_distribution<int>(1, max_n)(rng);
        WeightedPolynomial<double> psi;
        psi.parity = parity;
        psi.alphas.resize(static_cast<std::size_t>(n) + 1);
        for (double& a : psi.alphas) a = coeff(rng);

        const auto image = to_dense(apply_AD_closed(psi), parity);
        for (int j = 1; j <= points; ++j) {
            const double x = std::cos(kPi * (2 * j - 1) / (2.0 * points));
            const double numeric =
                apply_AD_numeric([&](double s) { return evaluate(psi, s); }, x);
            const double dev = std::abs(image(x) - numeric);
            if (dev > worst) {
                worst = dev;
                worst_x = x;
                worst_parity = to_string(parity);
                worst_degree = parity == Parity::even ? 2 * n : 2 * n + 1;
            }
        }
    }

    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["tool_version"] = kToolVersion;
    j["trials"] = trials;
    j["max_degree"] = max_degree;
    j["points"] = points;
    j["seed"] = seed;
    j["tolerance"] = tol;
    j["worst_deviation"] = worst;
    j["worst_x"] = worst_x;
    j["worst_parity"] = worst_parity;
    j["worst_degree"] = worst_degree;
    j["pass"] = worst <= tol;
    out << j.dump(2) << '\n';
    return worst <= tol ? kExitOk : kExitRegression;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Spectral toolkit for the Cauchy operator on (-1,1) with exterior "
                 "Dirichlet conditions"};
    app.require_subcommand(1);

    CliConfig cfg;
    std::string parity_s, kind_s, coeffs_inline, coeffs_file, solution_path, tolerances_path;
    int degree = 2, rank = 1, theta_num = 0, theta_from = 0, theta_to = 0;
    int max_degree = 500, trials = 50, oracle_degree = 20, points = 25;
    unsigned long long seed = 20240817ULL;
    double e_value = 0.0, oracle_tol = 1e-7;

    auto* solve_cmd =
        app.add_subcommand("solve", "Eigenvalue and eigenfunction of one parity and degree");
    solve_cmd->add_option("--parity", parity_s, "basis parity")
        ->required()
        ->check(CLI::IsMember({"even", "odd"}));
    solve_cmd->add_option("--degree", degree, "truncation degree of the ansatz")->required();
    solve_cmd->add_option("--rank", rank, "1-based position in the ascending spectrum");
    solve_cmd->add_option("--precision-bits", cfg.precision_bits,
                          "mantissa bits (0 = machine doubles)");
    solve_cmd->add_option("--imag-tol", cfg.imag_tol, "spurious-mode rejection threshold");
    solve_cmd->add_option("--grid", cfg.grid_points, "residual grid size for --csv");
    solve_cmd->add_option("--json", cfg.json_path, "write the solution document here");
    solve_cmd->add_option("--csv", cfg.csv_path, "write a residual grid here");

    auto* apply_cmd =
        app.add_subcommand("apply", "Closed-form operator image of a weighted polynomial");
    apply_cmd->add_option("--parity", parity_s, "basis parity")
        ->required()
        ->check(CLI::IsMember({"even", "odd"}));
    auto* inline_opt =
        apply_cmd->add_option("--coeffs", coeffs_inline, "comma-separated basis coefficients");
    apply_cmd->add_option("--coeffs-file", coeffs_file, "whitespace-separated coefficient file")
        ->excludes(inline_opt);

    auto* trial_cmd = app.add_subcommand("trial", "Variational trial state report");
    trial_cmd->add_option("--kind", kind_s, "trial family")
        ->required()
        ->check(CLI::IsMember({"ground", "excited"}));
    trial_cmd->add_option("--theta", theta_num, "integer numerator of pi/4096")->required();
    trial_cmd->add_option("--terms", cfg.gamma_terms, "series terms kept in the expansion");
    trial_cmd->add_option("--E", e_value, "candidate eigenvalue for the residual")->required();
    trial_cmd->add_option("--grid", cfg.grid_points, "residual grid size");

    auto* sweep_cmd = app.add_subcommand("sweep", "Residual sweep over a trial parameter range");
    sweep_cmd->add_option("--kind", kind_s, "trial family")
        ->required()
        ->check(CLI::IsMember({"ground", "excited"}));
    sweep_cmd->add_option("--theta-from", theta_from, "first numerator of pi/4096")->required();
    sweep_cmd->add_option("--theta-to", theta_to, "last numerator of pi/4096")->required();
    sweep_cmd->add_option("--E", e_value, "candidate eigenvalue")->required();
    sweep_cmd->add_option("--terms", cfg.gamma_terms, "series terms kept in the expansion");
    sweep_cmd->add_option("--grid", cfg.grid_points, "residual grid size");

    auto* residual_cmd =
        app.add_subcommand("residual", "Residual grid of a stored solution document");
    residual_cmd->add_option("--solution", solution_path, "solution JSON path")->required();
    residual_cmd->add_option("--grid", cfg.grid_points, "residual grid size");
    residual_cmd->add_option("--csv", cfg.csv_path, "write the grid here instead of stdout");

    auto* tables_cmd =
        app.add_subcommand("tables", "Regress solver output against the reference tables");
    tables_cmd->add_option("--max-degree", max_degree, "largest truncation degree to run");
    tables_cmd->add_option("--tolerances", tolerances_path, "tolerance config file");

    auto* oracle_cmd = app.add_subcommand(
        "oracle-check", "Randomized closed-form vs quadrature equivalence run");
    oracle_cmd->add_option("--trials", trials, "number of random polynomials");
    oracle_cmd->add_option("--degree", oracle_degree, "largest truncation degree drawn");
    oracle_cmd->add_option("--points", points, "evaluation points per polynomial");
    oracle_cmd->add_option("--seed", seed, "generator seed");
    oracle_cmd->add_option("--tol", oracle_tol, "per-sample deviation bound");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto parsed = app.get_subcommands();
        out << (parsed.empty() ? app.help() : parsed.front()->help());
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(solve_cmd)) {
            bool env_ok = true;
            cfg.precision_bits = effective_precision_bits(
                solve_cmd->count("--precision-bits") > 0, cfg.precision_bits, err, env_ok);
            if (!env_ok) return kExitUsage;
            return run_solve(parity_s, degree, rank, cfg, out);
        }
        if (app.got_subcommand(apply_cmd)) {
            if (coeffs_inline.empty() && coeffs_file.empty())
                throw std::invalid_argument("apply needs --coeffs or --coeffs-file");
            return run_apply(parity_s, coeffs_inline, coeffs_file, out);
        }
        if (app.got_subcommand(trial_cmd)) return run_trial(kind_s, theta_num, e_value, cfg, out);
        if (app.got_subcommand(sweep_cmd))
            return run_sweep(kind_s, theta_from, theta_to, e_value, cfg, out);
        if (app.got_subcommand(residual_cmd)) return run_residual(solution_path, cfg, out, err);
        if (app.got_subcommand(tables_cmd)) return run_tables(max_degree, tolerances_path, out, err);
        if (app.got_subcommand(oracle_cmd))
            return run_oracle_check(trials, oracle_degree, points, seed, oracle_tol, out);
        err << "error: no subcommand selected\n";
        return kExitUsage;
    } catch (const numerical_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const lookup_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

int run(const std::vector<std::string>& args) { return run(args, std::cout, std::cerr); }

}  // namespace cauchywell::cli
