#include "optomech/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "optomech/error.hpp"

namespace optomech {

OutputFormat parse_output_format(std::string_view text) {
    if (text == "csv") return OutputFormat::Csv;
    if (text == "json") return OutputFormat::Json;
    throw Error(ErrorCode::InvalidArgument, "output format must be csv or json, got '" + std::string(text) + "'");
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

std::string cell_text(const Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
    return std::get<std::string>(cell);
}

nlohmann::json cell_json(const Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) {
        if (!std::isfinite(*d)) return nullptr;
        return *d;
    }
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return *i;
    return std::get<std::string>(cell);
}

}  // namespace

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += cell_text(row[c]);
        }
        out += '\n';
    }
    return out;
}

nlohmann::json to_json(const Table& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c) obj[table.columns[c]] = cell_json(row[c]);
        rows.push_back(std::move(obj));
    }
    return {{"columns", table.columns}, {"rows", std::move(rows)}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::OutputUnwritable, "cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw Error(ErrorCode::OutputUnwritable, "write to " + path.string() + " failed");
}

void write_table(const Table& table, const std::filesystem::path& path, OutputFormat format) {
    write_text(path, format == OutputFormat::Csv ? to_csv(table) : to_json(table).dump(2) + "\n");
}

std::string wigner_csv(const WignerGrid& grid) {
    std::string out = "q,p,W\n";
    for (std::size_t iq = 0; iq < grid.q_axis.size(); ++iq) {
        for (std::size_t ip = 0; ip < grid.p_axis.size(); ++ip) {
            out += format_double(grid.q_axis[iq]);
            out += ',';
            out += format_double(grid.p_axis[ip]);
            out += ',';
            out += format_double(grid.at(iq, ip));
            out += '\n';
        }
    }
    return out;
}

nlohmann::json wigner_header(const WignerGrid& grid, const Matrix2& V_M) {
    auto axis = [](const std::vector<double>& a) {
        return nlohmann::json{{"start", a.front()}, {"stop", a.back()}, {"count", a.size()}};
    };
    const HalfMaxContour contour = half_max_contour(V_M);
    const double contour_scale = grid.view == WignerView::Lab ? std::sqrt(2.0) : 1.0;
    return {
        {"view", grid.view == WignerView::Lab ? "lab" : "fluctuation"},
        {"q_axis", axis(grid.q_axis)},
        {"p_axis", axis(grid.p_axis)},
        {"half_max_level", grid.half_max_level},
        {"sql_radius", grid.sql_radius},
        {"half_max_contour",
         {{"major", contour.major * contour_scale}, {"minor", contour.minor * contour_scale}, {"angle", contour.angle}}},
        {"V_M", {{V_M(0, 0), V_M(0, 1)}, {V_M(1, 0), V_M(1, 1)}}},
    };
}

std::vector<std::filesystem::path> write_wigner(const WignerGrid& grid, const Matrix2& V_M,
                                                const std::filesystem::path& stem) {
    std::filesystem::path csv = stem, json = stem;
    csv += ".csv";
    json += ".json";
    write_text(csv, wigner_csv(grid));
    write_text(json, wigner_header(grid, V_M).dump(2) + "\n");
    return {csv, json};
}

std::string spectrum_csv(const SpectrumScan& scan) {
    std::string out = "omega,s_theta\n";
    for (std::size_t k = 0; k < scan.omegas.size(); ++k) {
        out += format_double(scan.omegas[k]);
        out += ',';
        out += format_double(scan.s_theta[k]);
        out += '\n';
    }
    return out;
}

nlohmann::json spectrum_metadata(const SpectrumScan& scan, double lyapunov_variance) {
    return {
        {"theta", scan.theta},
        {"integrated_variance", scan.integrated_variance},
        {"lyapunov_variance", lyapunov_variance},
        {"relative_gap", std::abs(scan.integrated_variance - lyapunov_variance) / std::abs(lyapunov_variance)},
        {"points", scan.omegas.size()},
        {"tail_fraction", scan.tail_fraction},
        {"tail_warning", scan.tail_warning},
    };
}

std::vector<std::filesystem::path> write_spectrum(const SpectrumScan& scan, double lyapunov_variance,
                                                  const std::filesystem::path& stem) {
    std::filesystem::path csv = stem, json = stem;
    csv += ".csv";
    json += ".json";
    write_text(csv, spectrum_csv(scan));
    write_text(json, spectrum_metadata(scan, lyapunov_variance).dump(2) + "\n");
    return {csv, json};
}

std::string quadrature_scan_csv(const QuadratureScan& scan) {
    std::string out = "theta,S\n";
    for (std::size_t k = 0; k < scan.thetas.size(); ++k) {
        out += format_double(scan.thetas[k]);
        out += ',';
        out += format_double(scan.variances[k]);
        out += '\n';
    }
    return out;
}

}  // namespace optomech
