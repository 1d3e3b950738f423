#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace maser {

struct FigureOutput {
  std::vector<std::filesystem::path> data_files;
  std::filesystem::path metadata_file;
};

/// Identifiers of the reproducible data panels: fig2a..fig2d (phase
/// quasi-distribution grids), fig3a/fig3b (power bound ratio sweeps),
/// fig4a/fig4b (coherent-heat bound ratio sweeps), fig5a..fig5d (efficiency
/// and COP bound ratio sweeps).
std::vector<std::string> figure_ids();

/// Writes the panel's data series as CSV files plus a JSON metadata sidecar
/// (parameters, derived occupations, solver diagnostics, axis descriptions)
/// into out_dir. Returns the written paths. Throws ConfigError for unknown
/// ids and IoError when a file cannot be written.
FigureOutput reproduce_figure(const std::string& figure_id,
                              const std::filesystem::path& out_dir);

}  // namespace maser
