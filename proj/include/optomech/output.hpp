#pragma once

// Tabular and sidecar file writers. Numbers are printed with 17 significant
// digits so reruns are byte-identical.

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "optomech/measures.hpp"
#include "optomech/spectra.hpp"

namespace optomech {

enum class OutputFormat { Csv, Json };

[[nodiscard]] OutputFormat parse_output_format(std::string_view text);

/// %.17g; "nan", "inf", "-inf" for non-finite values.
[[nodiscard]] std::string format_double(double value);

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

[[nodiscard]] std::string to_csv(const Table& table);
[[nodiscard]] nlohmann::json to_json(const Table& table);

/// Writes CSV or JSON. Throws Error{OutputUnwritable}.
void write_table(const Table& table, const std::filesystem::path& path, OutputFormat format);

void write_text(const std::filesystem::path& path, const std::string& text);

/// Long-form CSV (q, p, W).
[[nodiscard]] std::string wigner_csv(const WignerGrid& grid);
[[nodiscard]] nlohmann::json wigner_header(const WignerGrid& grid, const Matrix2& V_M);

/// Writes <stem>.csv and <stem>.json; returns both paths.
std::vector<std::filesystem::path> write_wigner(const WignerGrid& grid, const Matrix2& V_M,
                                                const std::filesystem::path& stem);

/// CSV (omega, s_theta).
[[nodiscard]] std::string spectrum_csv(const SpectrumScan& scan);
[[nodiscard]] nlohmann::json spectrum_metadata(const SpectrumScan& scan, double lyapunov_variance);

std::vector<std::filesystem::path> write_spectrum(const SpectrumScan& scan, double lyapunov_variance,
                                                  const std::filesystem::path& stem);

/// CSV (theta, S).
[[nodiscard]] std::string quadrature_scan_csv(const QuadratureScan& scan);

}  // namespace optomech
