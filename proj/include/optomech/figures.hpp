#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "optomech/model.hpp"

namespace optomech {

/// fig2a fig2b fig3a fig3b fig3c fig4a fig4b fig4c fig4d fig4e fig4f figA1
[[nodiscard]] std::span<const std::string_view> figure_tags();

struct FigureOptions {
    std::filesystem::path out_dir = ".";
    int workers = 1;
};

/// Regenerates the data files behind one figure, starting from base (usually
/// reference_scenario() with user overrides). Throws Error{UnknownFigureTag}.
std::vector<std::filesystem::path> reproduce_figure(std::string_view tag, const Scenario& base,
                                                    const FigureOptions& options = {});

/// Swept parameter and its four caption values for a fig4 panel.
struct PanelValues {
    std::string_view parameter;
    std::array<double, 4> values;
};

[[nodiscard]] PanelValues fig4_panel(std::string_view tag);

}  // namespace optomech
