#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cumdiff/analysis.hpp"

namespace cumdiff {

enum class OutputFormat { svg, json, both };

OutputFormat parse_format(const std::string& name);

// Significance triangle drawn at the origin of the cumulative plot: tips
// at (0, +2 sigma) and (0, -2 sigma), apex at (kTriangleDepth, 0).
inline constexpr double kTriangleDepth = 0.04;

struct Triangle {
  bool omitted = true;
  double upper = 0.0;
  double lower = 0.0;
  double apex = kTriangleDepth;
};

Triangle significance_triangle(const CurveMetrics& metrics);

// Doubles are written with 17 significant digits so that parsing the
// output reproduces every value bit for bit. Undefined ratios become null.
std::string bundle_json(const PlotBundle& bundle);
std::string diagrams_json(const std::vector<DiagramEntry>& diagrams, const Provenance& provenance);

std::string cumulative_svg(const PlotBundle& bundle);
std::string reliability_svg(const DiagramEntry& entry);
std::string scatter_svg(const Scatter& scatter);

// Writes analysis.json and/or cumulative.svg, reliability_<strategy>_<bins>.svg
// and (two covariates) scatter.svg under `dir`, creating it if needed.
// Returns the paths written. Throws IoError.
std::vector<std::filesystem::path> emit_plots(const PlotBundle& bundle, OutputFormat format,
                                              const std::filesystem::path& dir);

void write_text(const std::filesystem::path& path, const std::string& text);

// "%.17g".
std::string format_double(double value);

}  // namespace cumdiff
