#include "optomech/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "optomech/config.hpp"
#include "optomech/error.hpp"

namespace optomech {

std::vector<double> SweepAxis::values() const {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const double t = static_cast<double>(k) / (count - 1);
        out[static_cast<std::size_t>(k)] = scale == AxisScale::Log
                                               ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start)))
                                               : start + t * (stop - start);
    }
    // pin the endpoints exactly
    out.front() = start;
    out.back() = stop;
    return out;
}

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    while (true) {
        const auto pos = text.find(sep);
        parts.push_back(text.substr(0, pos));
        if (pos == std::string_view::npos) break;
        text.remove_prefix(pos + 1);
    }
    return parts;
}

double to_number(std::string_view text) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(ErrorCode::InvalidArgument, "bad number '" + std::string(text) + "' in axis");
    }
    return v;
}

}  // namespace

SweepAxis parse_axis(std::string_view text) {
    const auto parts = split(text, ':');
    if (parts.size() != 4 && parts.size() != 5) {
        throw Error(ErrorCode::InvalidArgument, "axis must be name:start:stop:count[:linear|log], got '" +
                                                    std::string(text) + "'");
    }
    SweepAxis axis;
    axis.name = std::string(parts[0]);
    axis.start = to_number(parts[1]);
    axis.stop = to_number(parts[2]);
    const double count = to_number(parts[3]);
    if (count != std::floor(count)) throw Error(ErrorCode::InvalidArgument, "axis count must be an integer");
    axis.count = static_cast<int>(count);
    if (parts.size() == 5) {
        if (parts[4] == "log") axis.scale = AxisScale::Log;
        else if (parts[4] == "linear") axis.scale = AxisScale::Linear;
        else throw Error(ErrorCode::InvalidArgument, "axis scale must be linear or log");
    }
    return axis;
}

BranchPolicy parse_branch_policy(std::string_view text) {
    if (text == "all") return BranchPolicy::All;
    if (text == "upper") return BranchPolicy::Upper;
    if (text == "lower") return BranchPolicy::Lower;
    if (text == "follow-stable") return BranchPolicy::FollowStable;
    throw Error(ErrorCode::InvalidArgument, "branch policy must be all, upper, lower or follow-stable");
}

std::string_view to_string(BranchPolicy policy) {
    switch (policy) {
        case BranchPolicy::All: return "all";
        case BranchPolicy::Upper: return "upper";
        case BranchPolicy::Lower: return "lower";
        case BranchPolicy::FollowStable: return "follow-stable";
    }
    return "all";
}

namespace {

constexpr std::pair<Observable, std::string_view> kObservableNames[] = {
    {Observable::Z, "z"},
    {Observable::NCav, "n_cav"},
    {Observable::EN, "E_N"},
    {Observable::SThetaScan, "S_theta_scan"},
    {Observable::ThetaMin, "theta_min"},
    {Observable::SMin, "S_min"},
    {Observable::Wigner, "wigner"},
    {Observable::Spectrum, "spectrum"},
    {Observable::Eigenvalues, "eigenvalues"},
};

}  // namespace

Observable parse_observable(std::string_view text) {
    for (const auto& [obs, name] : kObservableNames)
        if (name == text) return obs;
    throw Error(ErrorCode::InvalidArgument, "unknown observable '" + std::string(text) + "'");
}

std::string_view to_string(Observable observable) {
    for (const auto& [obs, name] : kObservableNames)
        if (obs == observable) return name;
    return "z";
}

std::vector<Observable> parse_observables(std::string_view text) {
    std::vector<Observable> out;
    if (text.empty()) return out;
    for (std::string_view part : split(text, ',')) {
        if (part.empty()) continue;
        const Observable obs = parse_observable(part);
        if (std::find(out.begin(), out.end(), obs) == out.end()) out.push_back(obs);
    }
    return out;
}

namespace {

void validate_axis(const SweepAxis& axis) {
    if (!is_parameter(axis.name)) {
        throw Error(ErrorCode::UnknownParameter, "unknown sweep parameter '" + axis.name + "'");
    }
    if (axis.count < 2) throw Error(ErrorCode::InvalidArgument, "axis " + axis.name + " needs count >= 2");
    if (!std::isfinite(axis.start) || !std::isfinite(axis.stop)) {
        throw Error(ErrorCode::InvalidArgument, "axis " + axis.name + " endpoints must be finite");
    }
    if (axis.scale == AxisScale::Log && !(axis.start > 0.0 && axis.stop > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "log axis " + axis.name + " needs positive endpoints");
    }
}

struct PointRows {
    std::vector<std::vector<Cell>> rows;
    std::vector<std::vector<SidecarFile>> sidecars;
};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

void validate(const SweepSpec& spec) {
    validate_axis(spec.axis1);
    if (spec.axis2) {
        validate_axis(*spec.axis2);
        if (spec.axis2->name == spec.axis1.name) {
            throw Error(ErrorCode::InvalidArgument, "both axes sweep " + spec.axis1.name);
        }
    }
    if (spec.workers < 1) throw Error(ErrorCode::InvalidArgument, "workers must be >= 1");
    if (spec.n_theta < 8) throw Error(ErrorCode::InvalidArgument, "n_theta must be >= 8");
    if (spec.wigner_points < 3 || spec.wigner_points % 2 == 0) {
        throw Error(ErrorCode::InvalidArgument, "wigner_points must be odd and >= 3");
    }
}

std::vector<BranchPoint> select_branches(const std::vector<BranchPoint>& points, BranchPolicy policy) {
    auto find = [&](Branch b) -> const BranchPoint* {
        for (const auto& p : points)
            if (p.branch == b) return &p;
        return nullptr;
    };
    switch (policy) {
        case BranchPolicy::All:
            return points;
        case BranchPolicy::Upper:
            if (const auto* p = find(Branch::Upper)) return {*p};
            return {};
        case BranchPolicy::Lower:
            if (const auto* p = find(Branch::Lower)) return {*p};
            return {};
        case BranchPolicy::FollowStable: {
            const auto* upper = find(Branch::Upper);
            if (upper && upper->stable) return {*upper};
            const auto* lower = find(Branch::Lower);
            if (lower && lower->stable) return {*lower};
            return {};
        }
    }
    return {};
}

BranchAnalysis analyze_branch(const BranchPoint& point, const EffectiveParams& params) {
    BranchAnalysis a;
    a.point = point;
    a.drift = build_drift(point, params);
    a.eigenvalues = eigenvalues(a.drift);
    if (point.stable) a.covariance = solve_lyapunov(a.drift, noise_matrix(params));
    return a;
}

namespace {

std::vector<std::string> table_columns(const SweepSpec& spec) {
    std::vector<std::string> cols{"row", spec.axis1.name};
    if (spec.axis2) cols.push_back(spec.axis2->name);
    cols.insert(cols.end(), {"branch", "stable"});
    for (Observable obs : spec.observables) {
        switch (obs) {
            case Observable::Z: cols.emplace_back("z"); break;
            case Observable::NCav: cols.emplace_back("n_cav"); break;
            case Observable::EN: cols.emplace_back("E_N"); break;
            case Observable::ThetaMin: cols.emplace_back("theta_min"); break;
            case Observable::SMin: cols.emplace_back("S_min"); break;
            case Observable::Eigenvalues:
                for (int k = 1; k <= 4; ++k) {
                    cols.push_back("eig" + std::to_string(k) + "_re");
                    cols.push_back("eig" + std::to_string(k) + "_im");
                }
                break;
            case Observable::SThetaScan:
            case Observable::Wigner:
            case Observable::Spectrum:
                break;  // sidecar files
        }
    }
    return cols;
}

void append_observables(const SweepSpec& spec, const EffectiveParams& params, const BranchAnalysis* analysis,
                        std::vector<Cell>& row, std::vector<SidecarFile>& sidecars) {
    const bool have_branch = analysis != nullptr;
    const bool have_cov = have_branch && analysis->covariance.has_value();
    std::optional<QuadratureScan> scan;
    auto get_scan = [&]() -> const QuadratureScan& {
        if (!scan) scan = scan_quadratures(analysis->covariance->mechanical(), spec.n_theta);
        return *scan;
    };
    for (Observable obs : spec.observables) {
        switch (obs) {
            case Observable::Z: row.emplace_back(have_branch ? analysis->point.z : kNaN); break;
            case Observable::NCav: row.emplace_back(have_branch ? analysis->point.n_cav : kNaN); break;
            case Observable::EN: row.emplace_back(have_cov ? log_negativity(*analysis->covariance).E_N : kNaN); break;
            case Observable::ThetaMin: row.emplace_back(have_cov ? get_scan().theta_min : kNaN); break;
            case Observable::SMin: row.emplace_back(have_cov ? get_scan().S_min : kNaN); break;
            case Observable::Eigenvalues:
                for (int k = 0; k < 4; ++k) {
                    const Complex ev = have_branch ? analysis->eigenvalues[static_cast<std::size_t>(k)] : Complex(kNaN, kNaN);
                    row.emplace_back(ev.real());
                    row.emplace_back(ev.imag());
                }
                break;
            case Observable::SThetaScan:
                if (have_cov) sidecars.push_back({"S_theta.csv", quadrature_scan_csv(get_scan())});
                break;
            case Observable::Wigner:
                if (have_cov) {
                    const Matrix2 V_M = analysis->covariance->mechanical();
                    const double width = 5.0 * std::sqrt(std::max(V_M.eigenvalues().real().maxCoeff(), 0.0));
                    WignerGrid grid = wigner_grid(V_M, Eigen::Vector2d::Zero(), Eigen::Vector2d::Constant(width),
                                                  spec.wigner_points);
                    if (spec.wigner_view == WignerView::Lab) grid = to_lab_view(grid, analysis->point.beta);
                    sidecars.push_back({"wigner.csv", wigner_csv(grid)});
                    sidecars.push_back({"wigner.json", wigner_header(grid, V_M).dump(2) + "\n"});
                }
                break;
            case Observable::Spectrum:
                if (have_cov) {
                    const SpectrumScan s =
                        quadrature_spectrum(analysis->drift, noise_matrix(params), spec.spectrum_theta, spec.spectrum);
                    const double lyap = quadrature_variance(analysis->covariance->mechanical(), spec.spectrum_theta);
                    sidecars.push_back({"spectrum.csv", spectrum_csv(s)});
                    sidecars.push_back({"spectrum.json", spectrum_metadata(s, lyap).dump(2) + "\n"});
                }
                break;
        }
    }
}

PointRows evaluate_point(const SweepSpec& spec, const Scenario& scenario, const std::vector<double>& coords) {
    PointRows out;
    if (spec.observables.empty()) return out;
    const EffectiveParams params = resolve(scenario);
    const std::vector<BranchPoint> points = classify_and_solve(params);
    std::vector<BranchPoint> chosen = select_branches(points, spec.branch_policy);

    auto prefix = [&](std::string_view branch, bool stable) {
        std::vector<Cell> row;
        row.emplace_back(std::int64_t{0});  // renumbered during assembly
        for (double c : coords) row.emplace_back(c);
        row.emplace_back(std::string(branch));
        row.emplace_back(std::int64_t{stable ? 1 : 0});
        return row;
    };

    if (chosen.empty()) {
        // Nothing matched the policy: report the lowest root, flagged.
        const bool fallback = spec.branch_policy == BranchPolicy::FollowStable;
        std::vector<Cell> row = prefix(fallback ? to_string(points.front().branch) : "none", false);
        std::vector<SidecarFile> files;
        if (fallback) {
            BranchPoint p = points.front();
            p.stable = false;
            const BranchAnalysis a = analyze_branch(p, params);
            append_observables(spec, params, &a, row, files);
        } else {
            append_observables(spec, params, nullptr, row, files);
        }
        out.rows.push_back(std::move(row));
        out.sidecars.push_back(std::move(files));
        return out;
    }
    for (const BranchPoint& p : chosen) {
        const BranchAnalysis a = analyze_branch(p, params);
        std::vector<Cell> row = prefix(to_string(p.branch), p.stable);
        std::vector<SidecarFile> files;
        append_observables(spec, params, &a, row, files);
        out.rows.push_back(std::move(row));
        out.sidecars.push_back(std::move(files));
    }
    return out;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, const Scenario& base) {
    validate(spec);
    const std::vector<double> v1 = spec.axis1.values();
    const std::vector<double> v2 = spec.axis2 ? spec.axis2->values() : std::vector<double>{};
    const std::size_t n1 = v1.size();
    const std::size_t n2 = spec.axis2 ? v2.size() : 1;
    const std::size_t total = n1 * n2;

    std::vector<PointRows> results(total);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        while (true) {
            const std::size_t k = next.fetch_add(1);
            if (k >= total) return;
            try {
                Scenario s = base;
                std::vector<double> coords{v1[k / n2]};
                set_parameter(s, spec.axis1.name, coords[0]);
                if (spec.axis2) {
                    coords.push_back(v2[k % n2]);
                    set_parameter(s, spec.axis2->name, coords[1]);
                }
                results[k] = evaluate_point(spec, s, coords);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(total);
                return;
            }
        }
    };

    const auto n_workers = static_cast<std::size_t>(std::max(1, spec.workers));
    if (n_workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < std::min(n_workers, total); ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    SweepResult result;
    result.table.columns = table_columns(spec);
    std::int64_t row_index = 0;
    for (PointRows& pr : results) {
        for (std::size_t r = 0; r < pr.rows.size(); ++r) {
            pr.rows[r][0] = row_index++;
            result.table.rows.push_back(std::move(pr.rows[r]));
            result.sidecars.push_back(std::move(pr.sidecars[r]));
        }
    }
    return result;
}

std::vector<std::filesystem::path> write_sweep(const SweepResult& result, const SweepSpec& spec) {
    if (spec.output.empty()) throw Error(ErrorCode::OutputUnwritable, "no output path given");
    std::vector<std::filesystem::path> written;
    write_table(result.table, spec.output, spec.format);
    written.push_back(spec.output);
    std::filesystem::path stem = spec.output;
    stem.replace_extension();
    for (std::size_t r = 0; r < result.sidecars.size(); ++r) {
        for (const SidecarFile& file : result.sidecars[r]) {
            std::filesystem::path path = stem;
            path += ".row" + std::to_string(r) + "." + file.suffix;
            write_text(path, file.content);
            written.push_back(path);
        }
    }
    return written;
}

}  // namespace optomech
