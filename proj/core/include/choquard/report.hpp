#ifndef CHOQUARD_REPORT_HPP
#define CHOQUARD_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

#include "choquard/bubbles.hpp"
#include "choquard/constants.hpp"
#include "choquard/functional.hpp"
#include "choquard/levels.hpp"

namespace choquard {

// JSON renderers (pretty-printed, 2-space indent, LF, shortest-roundtrip
// doubles; byte-identical for identical inputs).
std::string render_json(const ConstantsReport& rep);
std::string render_json(const EnergyBreakdown& e);
std::string render_json(const LevelReport& rep);
std::string render_json(const ConstraintLevelReport& rep);
std::string render_json(const BrezisLiebReport& rep);
std::string render_json(const std::vector<std::pair<std::string, SlopeFit>>& slopes);

// RFC-4180 CSV with '.' decimals and 17 significant digits.
std::string render_scan_csv(const std::vector<ScanRow>& rows);
std::string render_samples_csv(const std::vector<std::pair<double, double>>& samples,
                               const std::string& x_name, const std::string& y_name);

// Writes text to path, creating parent directories; raises data_error with
// the path on failure.
void write_text(const std::string& text, const std::string& path);

}  // namespace choquard

#endif
