#pragma once

#include "thetacycle/cycle.hpp"

#include <filesystem>
#include <string>

namespace thetacycle {

// CSV encoding of the per-index records.  Zero records print "-" for both
// filtration columns.
std::string report_to_csv(const CycleReport& report);

// Full report as indented JSON (metadata, coverage, and records).
std::string report_to_json(const CycleReport& report);

// Self-contained deterministic SVG plot of i against the weight filtration.
// Low points are circled, exceptional indices get vertical rules, and the
// background is shaded by how each value was established (exact by theorem /
// theorem-bound / engine only).  When a mod-p companion report is supplied
// it is drawn as a second panel with a dashed line.
std::string report_to_svg(const CycleReport& report,
                          const CycleReport* mod_p_companion = nullptr);

void write_report_files(const CycleReport& report,
                        const std::filesystem::path& prefix, bool csv,
                        bool json);

} // namespace thetacycle
