#pragma once

#include <string>
#include <vector>

#include "biphoton/presets.hpp"
#include "biphoton/scan.hpp"

namespace biphoton {

/// `delay_fs,rate,rate_over_baseline`, 9 significant digits, LF line ends.
std::string scan_csv(const ScanResult& scan);

/// `axis_value,visibility,kind,extremum,baseline`.
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Static plot of rate/baseline against delay, drawn from the CSV columns only.
std::string scan_svg(const ScanResult& scan, const std::string& title);

/// Writes bytes verbatim (no newline translation). Raises an i/o error.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace biphoton
