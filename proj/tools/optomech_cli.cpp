// optomech: batch front end for steady states, sweeps, Wigner grids,
// quadrature spectra and figure data.
//
//   optomech steady   [--set k=v]... [--config file] [--format csv|json] [--out path]
//   optomech sweep    --axis name:start:stop:count[:log] [--axis ...] --observables z,E_N --out table.csv
//   optomech wigner   --out stem [--points N] [--view fluctuation|lab]
//   optomech spectrum --out stem [--theta t] [--span-factor s] [--refine k]
//   optomech figure   --tag fig4a [--out dir]
//
// Exit codes: 0 success, 2 validation error, 3 numerical failure.

#include <cstdio>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "optomech/config.hpp"
#include "optomech/error.hpp"
#include "optomech/figures.hpp"
#include "optomech/measures.hpp"
#include "optomech/output.hpp"
#include "optomech/spectra.hpp"
#include "optomech/steady_state.hpp"
#include "optomech/sweep.hpp"

using namespace optomech;

namespace {

struct CommonOptions {
    std::string config;
    std::vector<std::string> sets;
    std::string out;
    std::string format = "csv";
    int workers = 1;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--config", opt.config, "flat key=value parameter file");
    cmd->add_option("--set", opt.sets, "parameter override key=value (repeatable)");
    cmd->add_option("--out", opt.out, "output path");
    cmd->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--workers", opt.workers, "worker threads")->check(CLI::PositiveNumber);
}

Scenario build_scenario(const CommonOptions& opt) {
    Scenario s = reference_scenario();
    if (!opt.config.empty()) s = load_config(opt.config, s);
    for (const auto& a : opt.sets) apply_assignment(s, a);
    return s;
}

void emit(const Table& table, const CommonOptions& opt) {
    const OutputFormat format = parse_output_format(opt.format);
    if (opt.out.empty()) {
        if (format == OutputFormat::Json)
            std::cout << to_json(table).dump(2) << '\n';
        else
            std::cout << to_csv(table);
    } else {
        write_table(table, opt.out, format);
    }
}

/// The single branch a wigner/spectrum request refers to.
BranchAnalysis pick_branch(const EffectiveParams& params, const std::string& policy_text) {
    const BranchPolicy policy = parse_branch_policy(policy_text);
    if (policy == BranchPolicy::All) throw Error(ErrorCode::InvalidArgument, "--branch all selects more than one branch");
    const auto chosen = select_branches(classify_and_solve(params), policy);
    if (chosen.empty()) throw Error(ErrorCode::UnstableDrift, "no stable branch matches '" + policy_text + "'");
    BranchAnalysis a = analyze_branch(chosen.front(), params);
    if (!a.covariance) throw Error(ErrorCode::UnstableDrift, "selected branch is unstable");
    return a;
}

int run_steady(const CommonOptions& opt) {
    const EffectiveParams params = resolve(build_scenario(opt));
    Table table;
    table.columns = {"branch", "z",      "n_cav",   "beta_re", "beta_im", "stable",  "E_N",
                     "S_min",  "theta_min", "eig1_re", "eig1_im", "eig2_re", "eig2_im", "eig3_re",
                     "eig3_im", "eig4_re", "eig4_im"};
    for (const auto& point : classify_and_solve(params)) {
        const BranchAnalysis a = analyze_branch(point, params);
        std::vector<Cell> row = {std::string(to_string(point.branch)), point.z, point.n_cav, point.beta.real(),
                                 point.beta.imag(), std::int64_t{point.stable ? 1 : 0}};
        if (a.covariance) {
            const QuadratureScan scan = scan_quadratures(a.covariance->mechanical());
            row.insert(row.end(), {log_negativity(*a.covariance).E_N, scan.S_min, scan.theta_min});
        } else {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            row.insert(row.end(), {nan, nan, nan});
        }
        for (const auto& l : a.eigenvalues) row.insert(row.end(), {l.real(), l.imag()});
        table.rows.push_back(std::move(row));
    }
    emit(table, opt);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parametrically driven optomechanics: steady states, entanglement and squeezing"};
    app.require_subcommand(1);

    CommonOptions steady_opt, sweep_opt, wigner_opt, spectrum_opt, figure_opt;

    auto* steady = app.add_subcommand("steady", "all steady-state branches with stability and observables");
    add_common(steady, steady_opt);

    auto* sweep = app.add_subcommand("sweep", "1D or 2D parameter sweep");
    add_common(sweep, sweep_opt);
    std::vector<std::string> axes;
    std::string sweep_branch = "follow-stable";
    std::string observables = "z,E_N";
    int n_theta = 180;
    sweep->add_option("--axis", axes, "name:start:stop:count[:linear|log]")->required();
    sweep->add_option("--branch", sweep_branch, "all, upper, lower or follow-stable");
    sweep->add_option("--observables", observables, "comma list of z,n_cav,E_N,S_theta_scan,theta_min,S_min,"
                                                    "wigner,spectrum,eigenvalues");
    sweep->add_option("--n-theta", n_theta, "angles in the S_theta scan");

    auto* wigner = app.add_subcommand("wigner", "mechanical Wigner function on a grid");
    add_common(wigner, wigner_opt);
    std::string wigner_branch = "follow-stable";
    int points = 201;
    double half_width = 0.0;
    std::string view = "fluctuation";
    wigner->add_option("--branch", wigner_branch, "upper, lower or follow-stable");
    wigner->add_option("--points", points, "grid points per axis (odd)");
    wigner->add_option("--half-width", half_width, "grid half width (default 5 sqrt of the largest variance)");
    wigner->add_option("--view", view, "fluctuation or lab")->check(CLI::IsMember({"fluctuation", "lab"}));

    auto* spectrum = app.add_subcommand("spectrum", "mechanical quadrature noise spectrum");
    add_common(spectrum, spectrum_opt);
    std::string spectrum_branch = "follow-stable";
    double theta = 0.0;
    SpectrumOptions spectrum_options;
    spectrum->add_option("--branch", spectrum_branch, "upper, lower or follow-stable");
    spectrum->add_option("--theta", theta, "quadrature angle");
    spectrum->add_option("--span-factor", spectrum_options.span_factor, "half span in units of the largest rate");
    spectrum->add_option("--refine", spectrum_options.refine, "sub-panels per adaptive panel");

    auto* figure = app.add_subcommand("figure", "data files behind a figure");
    add_common(figure, figure_opt);
    std::string tag;
    figure->add_option("--tag", tag, "fig2a fig2b fig3a fig3b fig3c fig4a..fig4f figA1")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*steady) return run_steady(steady_opt);

        if (*sweep) {
            if (axes.size() > 2) throw Error(ErrorCode::InvalidArgument, "at most two --axis options");
            SweepSpec spec;
            spec.axis1 = parse_axis(axes.at(0));
            if (axes.size() > 1) spec.axis2 = parse_axis(axes[1]);
            spec.branch_policy = parse_branch_policy(sweep_branch);
            spec.observables = parse_observables(observables);
            spec.output = sweep_opt.out;
            spec.format = parse_output_format(sweep_opt.format);
            spec.workers = sweep_opt.workers;
            spec.n_theta = n_theta;
            validate(spec);
            const Scenario base = build_scenario(sweep_opt);
            const SweepResult result = run_sweep(spec, base);
            if (sweep_opt.out.empty()) {
                bool has_sidecars = false;
                for (const auto& s : result.sidecars) has_sidecars = has_sidecars || !s.empty();
                if (has_sidecars) throw Error(ErrorCode::OutputUnwritable, "sidecar observables need --out");
                emit(result.table, sweep_opt);
            } else {
                for (const auto& p : write_sweep(result, spec)) std::cerr << "wrote " << p.string() << '\n';
            }
            return 0;
        }

        if (*wigner) {
            if (wigner_opt.out.empty()) throw Error(ErrorCode::OutputUnwritable, "wigner needs --out <stem>");
            const EffectiveParams params = resolve(build_scenario(wigner_opt));
            const BranchAnalysis a = pick_branch(params, wigner_branch);
            const Matrix2 V_M = a.covariance->mechanical();
            WignerGrid grid;
            if (half_width > 0.0 || points != 201) {
                const double w = half_width > 0.0
                                     ? half_width
                                     : 5.0 * std::sqrt(Eigen::SelfAdjointEigenSolver<Matrix2>(V_M).eigenvalues().maxCoeff());
                grid = wigner_grid(V_M, Eigen::Vector2d::Zero(), Eigen::Vector2d(w, w), points);
            } else {
                grid = wigner_grid(V_M);
            }
            if (view == "lab") grid = to_lab_view(grid, a.point.beta);
            std::filesystem::path stem = wigner_opt.out;
            stem.replace_extension();
            for (const auto& p : write_wigner(grid, V_M, stem)) std::cerr << "wrote " << p.string() << '\n';
            return 0;
        }

        if (*spectrum) {
            if (spectrum_opt.out.empty()) throw Error(ErrorCode::OutputUnwritable, "spectrum needs --out <stem>");
            const EffectiveParams params = resolve(build_scenario(spectrum_opt));
            const BranchAnalysis a = pick_branch(params, spectrum_branch);
            SpectrumScan scan = quadrature_spectrum(a.drift, noise_matrix(params), theta, spectrum_options);
            const double lyapunov = quadrature_variance(a.covariance->mechanical(), theta);
            std::filesystem::path stem = spectrum_opt.out;
            stem.replace_extension();
            for (const auto& p : write_spectrum(scan, lyapunov, stem)) std::cerr << "wrote " << p.string() << '\n';
            if (scan.tail_warning)
                std::cerr << "warning: " << format_double(scan.tail_fraction)
                          << " of the integral lies in the outer 1% of the span\n";
            return 0;
        }

        if (*figure) {
            FigureOptions options;
            options.out_dir = figure_opt.out.empty() ? std::filesystem::path(".") : std::filesystem::path(figure_opt.out);
            options.workers = figure_opt.workers;
            for (const auto& p : reproduce_figure(tag, build_scenario(figure_opt), options))
                std::cerr << "wrote " << p.string() << '\n';
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return is_validation_error(e.code()) ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
