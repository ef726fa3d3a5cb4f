#pragma once

// Declarative 1D/2D parameter scans. Each grid point is solved for its
// steady-state branches, filtered by a branch policy and reduced to the
// requested observables, one long-form row per (grid point, branch).

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "optomech/measures.hpp"
#include "optomech/model.hpp"
#include "optomech/output.hpp"
#include "optomech/spectra.hpp"
#include "optomech/steady_state.hpp"

namespace optomech {

enum class AxisScale { Linear, Log };

struct SweepAxis {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    int count = 2;
    AxisScale scale = AxisScale::Linear;

    [[nodiscard]] std::vector<double> values() const;
};

/// "name:start:stop:count[:linear|log]"
[[nodiscard]] SweepAxis parse_axis(std::string_view text);

enum class BranchPolicy { All, Upper, Lower, FollowStable };

[[nodiscard]] BranchPolicy parse_branch_policy(std::string_view text);
[[nodiscard]] std::string_view to_string(BranchPolicy policy);

enum class Observable { Z, NCav, EN, SThetaScan, ThetaMin, SMin, Wigner, Spectrum, Eigenvalues };

[[nodiscard]] Observable parse_observable(std::string_view text);
[[nodiscard]] std::string_view to_string(Observable observable);
/// Comma-separated list; empty input gives an empty list.
[[nodiscard]] std::vector<Observable> parse_observables(std::string_view text);

struct SweepSpec {
    SweepAxis axis1;
    std::optional<SweepAxis> axis2;
    BranchPolicy branch_policy = BranchPolicy::FollowStable;
    std::vector<Observable> observables;
    std::filesystem::path output;
    OutputFormat format = OutputFormat::Csv;
    int workers = 1;

    int n_theta = 180;             ///< S_theta_scan resolution
    double spectrum_theta = 0.0;   ///< angle of the spectrum sidecar
    SpectrumOptions spectrum;
    int wigner_points = 201;
    WignerView wigner_view = WignerView::Fluctuation;
};

/// Throws Error{UnknownParameter} or Error{InvalidArgument}.
void validate(const SweepSpec& spec);

/// Branches selected by the policy. follow-stable prefers a stable upper
/// branch, then a stable lower branch. An empty result means no branch
/// matched.
[[nodiscard]] std::vector<BranchPoint> select_branches(const std::vector<BranchPoint>& points, BranchPolicy policy);

struct SidecarFile {
    std::string suffix;   ///< appended to "<stem>.row<k>."
    std::string content;
};

struct SweepResult {
    Table table;
    std::vector<std::vector<SidecarFile>> sidecars;  ///< indexed like table.rows
};

[[nodiscard]] SweepResult run_sweep(const SweepSpec& spec, const Scenario& base);

/// Writes the table to spec.output and every sidecar next to it; returns
/// the written paths.
std::vector<std::filesystem::path> write_sweep(const SweepResult& result, const SweepSpec& spec);

/// Everything derived from one stable branch point.
struct BranchAnalysis {
    BranchPoint point;
    DriftMatrix drift;
    std::array<Complex, 4> eigenvalues{};
    std::optional<CovarianceState> covariance;  ///< set when stable
};

[[nodiscard]] BranchAnalysis analyze_branch(const BranchPoint& point, const EffectiveParams& params);

}  // namespace optomech
