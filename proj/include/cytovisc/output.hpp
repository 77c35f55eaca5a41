#pragma once

#include <filesystem>
#include <string>

#include "cytovisc/report.hpp"

namespace cytovisc {

/// Sidecar holding the manifest of a results file: "<path>.manifest.json".
std::filesystem::path manifest_path(std::filesystem::path const& results);

/// Writes `content` to `path` and the manifest to its sidecar. An existing
/// results file is only replaced when its sidecar carries the same manifest
/// hash, or when `force` is set; otherwise InvalidArgument is thrown and
/// nothing is written.
void write_results_file(std::filesystem::path const& path, std::string const& content, RunManifest const& manifest,
                        bool force);

}  // namespace cytovisc
