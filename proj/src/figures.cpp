#include "optomech/figures.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "optomech/config.hpp"
#include "optomech/error.hpp"
#include "optomech/output.hpp"
#include "optomech/sweep.hpp"

namespace optomech {

namespace {

constexpr std::array<std::string_view, 12> kTags = {"fig2a", "fig2b", "fig3a", "fig3b", "fig3c", "fig4a",
                                                    "fig4b", "fig4c", "fig4d", "fig4e", "fig4f", "figA1"};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::vector<std::filesystem::path> fig2a(const Scenario& base, const FigureOptions& opt) {
    SweepAxis axis{"F", 1.0e4, 1.0e6, 241, AxisScale::Log};
    Table table;
    table.columns = {"F", "n_roots", "z_lower", "z_middle", "z_upper", "stable_lower", "stable_middle", "stable_upper"};
    for (double F : axis.values()) {
        Scenario s = base;
        set_parameter(s, "F", F);
        const auto points = classify_and_solve(resolve(s));
        std::array<double, 3> z{kNaN, kNaN, kNaN};
        std::array<Cell, 3> stable{std::string(), std::string(), std::string()};
        for (const auto& p : points) {
            const auto k = static_cast<std::size_t>(p.branch);
            z[k] = p.z;
            stable[k] = std::int64_t{p.stable ? 1 : 0};
        }
        table.rows.push_back({F, static_cast<std::int64_t>(points.size()), z[0], z[1], z[2], stable[0], stable[1],
                              stable[2]});
    }
    const auto path = opt.out_dir / "fig2a.csv";
    write_table(table, path, OutputFormat::Csv);
    return {path};
}

std::vector<std::filesystem::path> fig2b(const Scenario& base, const FigureOptions& opt) {
    std::vector<std::filesystem::path> written;
    const double delta_s = base.system.delta_s;
    // Drive sweeps at each caption E (curves of entanglement versus F).
    for (double frac : {0.43, 0.87, 0.95}) {
        Scenario s = base;
        set_parameter(s, "E", frac * delta_s);
        SweepSpec spec;
        spec.axis1 = {"F", 1.0e4, 1.0e6, 121, AxisScale::Log};
        spec.branch_policy = BranchPolicy::All;
        spec.observables = {Observable::Z, Observable::EN};
        spec.output = opt.out_dir / ("fig2b_E" + short_number(frac) + ".csv");
        spec.workers = opt.workers;
        for (auto& p : write_sweep(run_sweep(spec, s), spec)) written.push_back(p);
    }
    // The two-photon drive itself as the axis, at the base F.
    SweepSpec spec;
    spec.axis1 = {"E", 0.30 * delta_s, 0.97 * delta_s, 68, AxisScale::Linear};
    spec.branch_policy = BranchPolicy::All;
    spec.observables = {Observable::Z, Observable::EN};
    spec.output = opt.out_dir / "fig2b_E_sweep.csv";
    spec.workers = opt.workers;
    for (auto& p : write_sweep(run_sweep(spec, base), spec)) written.push_back(p);
    return written;
}

std::vector<std::filesystem::path> fig3(std::string_view tag, const Scenario& base, const FigureOptions& opt) {
    SweepSpec spec;
    if (tag == "fig3a") {
        spec.axis1 = {"F", 2.0e5, 1.0e6, 41, AxisScale::Linear};
        spec.axis2 = SweepAxis{"G0", 40.0, 150.0, 41, AxisScale::Linear};
    } else if (tag == "fig3b") {
        spec.axis1 = {"delta", 2500.0, 1.0e4, 41, AxisScale::Linear};
        spec.axis2 = SweepAxis{"kappa", 50.0, 1500.0, 41, AxisScale::Linear};
    } else {
        spec.axis1 = {"Omega_M", 2.0e3, 1.2e4, 41, AxisScale::Linear};
        spec.axis2 = SweepAxis{"n_m", 0.0, 100.0, 41, AxisScale::Linear};
    }
    spec.branch_policy = BranchPolicy::FollowStable;
    spec.observables = {Observable::Z, Observable::EN};
    spec.output = opt.out_dir / (std::string(tag) + ".csv");
    spec.workers = opt.workers;
    return write_sweep(run_sweep(spec, base), spec);
}

std::vector<std::filesystem::path> fig4(std::string_view tag, const Scenario& base, const FigureOptions& opt) {
    const PanelValues panel = fig4_panel(tag);
    std::vector<std::filesystem::path> written;
    Table scan_table, summary;
    scan_table.columns = {std::string(panel.parameter), "theta", "S"};
    summary.columns = {std::string(panel.parameter), "branch", "z", "E_N", "S_min", "theta_min", "S_max", "theta_max",
                       "below_sql", "sql_margin", "contour_major", "contour_minor", "sql_radius"};
    for (std::size_t k = 0; k < panel.values.size(); ++k) {
        const double value = panel.values[k];
        Scenario s = base;
        set_parameter(s, panel.parameter, value);
        const EffectiveParams params = resolve(s);
        const auto chosen = select_branches(classify_and_solve(params), BranchPolicy::FollowStable);
        if (chosen.empty()) {
            summary.rows.push_back({value, std::string("none"), kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, std::string(), kNaN,
                                    kNaN, kNaN, sql_contour_radius()});
            continue;
        }
        const BranchAnalysis a = analyze_branch(chosen.front(), params);
        const Matrix2 V_M = a.covariance->mechanical();
        const QuadratureScan scan = scan_quadratures(V_M, 180);
        for (std::size_t j = 0; j < scan.thetas.size(); ++j) scan_table.rows.push_back({value, scan.thetas[j], scan.variances[j]});
        const SqlComparison sql = below_sql(V_M);
        const HalfMaxContour contour = half_max_contour(V_M);
        summary.rows.push_back({value, std::string(to_string(a.point.branch)), a.point.z,
                                log_negativity(*a.covariance).E_N, scan.S_min, scan.theta_min, scan.S_max,
                                scan.theta_max, std::int64_t{sql.below ? 1 : 0}, sql.margin, contour.major,
                                contour.minor, sql_contour_radius()});
        for (auto& p : write_wigner(wigner_grid(V_M), V_M, opt.out_dir / (std::string(tag) + "_wigner_" + std::to_string(k))))
            written.push_back(p);
    }
    const auto scan_path = opt.out_dir / (std::string(tag) + "_scan.csv");
    const auto summary_path = opt.out_dir / (std::string(tag) + "_summary.csv");
    write_table(scan_table, scan_path, OutputFormat::Csv);
    write_table(summary, summary_path, OutputFormat::Csv);
    written.push_back(scan_path);
    written.push_back(summary_path);
    return written;
}

std::vector<std::filesystem::path> figA1(const Scenario& base, const FigureOptions& opt) {
    struct Part {
        const char* suffix;
        SweepAxis axis;
    };
    const Part parts[] = {
        {"a", {"F", 6.0e4, 4.0e5, 9, AxisScale::Log}},
        {"b", {"G0", 20.0, 150.0, 9, AxisScale::Linear}},
    };
    constexpr int n_theta = 36;
    std::vector<std::filesystem::path> written;
    for (const Part& part : parts) {
        Table overlay, summary;
        overlay.columns = {part.axis.name, "theta", "S_analytic", "S_numeric", "relative_gap"};
        summary.columns = {part.axis.name, "branch", "theta_min", "S_min", "max_relative_gap"};
        for (double value : part.axis.values()) {
            Scenario s = base;
            set_parameter(s, part.axis.name, value);
            const EffectiveParams params = resolve(s);
            const auto chosen = select_branches(classify_and_solve(params), BranchPolicy::FollowStable);
            if (chosen.empty()) {
                summary.rows.push_back({value, std::string("none"), kNaN, kNaN, kNaN});
                continue;
            }
            const BranchAnalysis a = analyze_branch(chosen.front(), params);
            const Matrix2 V_M = a.covariance->mechanical();
            const SpectralGrid grid = sample_spectral_covariance(a.drift, noise_matrix(params));
            double worst = 0.0;
            for (int j = 0; j < n_theta; ++j) {
                const double theta = std::numbers::pi * j / n_theta;
                const double analytic = quadrature_spectrum(grid, theta).integrated_variance;
                const double numeric = quadrature_variance(V_M, theta);
                const double gap = std::abs(analytic - numeric) / numeric;
                worst = std::max(worst, gap);
                overlay.rows.push_back({value, theta, analytic, numeric, gap});
            }
            const QuadratureScan scan = scan_quadratures(V_M, 180);
            summary.rows.push_back({value, std::string(to_string(a.point.branch)), scan.theta_min, scan.S_min, worst});
        }
        const auto overlay_path = opt.out_dir / (std::string("figA1") + part.suffix + ".csv");
        const auto summary_path = opt.out_dir / (std::string("figA1") + part.suffix + "_summary.csv");
        write_table(overlay, overlay_path, OutputFormat::Csv);
        write_table(summary, summary_path, OutputFormat::Csv);
        written.push_back(overlay_path);
        written.push_back(summary_path);
    }
    return written;
}

}  // namespace

std::span<const std::string_view> figure_tags() { return kTags; }

PanelValues fig4_panel(std::string_view tag) {
    if (tag == "fig4a") return {"F", {6.0e4, 1.0e5, 2.0e5, 4.0e5}};
    if (tag == "fig4b") return {"G0", {20.0, 40.0, 80.0, 150.0}};
    if (tag == "fig4c") return {"delta", {2500.0, 6000.0, 8000.0, 1.0e4}};
    if (tag == "fig4d") return {"kappa", {50.0, 500.0, 1000.0, 1500.0}};
    if (tag == "fig4e") return {"Omega_M", {0.2e4, 0.3e4, 0.4e4, 1.2e4}};
    if (tag == "fig4f") return {"n_m", {25.0, 50.0, 75.0, 100.0}};
    throw Error(ErrorCode::UnknownFigureTag, "not a fig4 panel: '" + std::string(tag) + "'");
}

std::vector<std::filesystem::path> reproduce_figure(std::string_view tag, const Scenario& base,
                                                    const FigureOptions& options) {
    if (tag == "fig2a") return fig2a(base, options);
    if (tag == "fig2b") return fig2b(base, options);
    if (tag == "fig3a" || tag == "fig3b" || tag == "fig3c") return fig3(tag, base, options);
    if (tag.starts_with("fig4") && tag.size() == 5 && tag[4] >= 'a' && tag[4] <= 'f') return fig4(tag, base, options);
    if (tag == "figA1") return figA1(base, options);
    throw Error(ErrorCode::UnknownFigureTag, "unknown figure tag '" + std::string(tag) + "'");
}

}  // namespace optomech
