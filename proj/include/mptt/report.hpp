#pragma once

#include <optional>
#include <string>

#include "mptt/break_scan.hpp"
#include "mptt/phase_model.hpp"

namespace mptt {

/// Parse an inclusive "start:end" window, e.g. "1500:1700".
Window parse_window(const std::string& text);

/// Write content to path via a temp file in the same directory plus rename.
void atomic_write_file(const std::string& path, const std::string& content);

/// Long-format (year, series_name, value) CSV of observed ln P plus any of
/// the classical prediction, the two-phase prediction, the extrapolation
/// gap, and the two-phase residual, restricted to eval_window.
std::string long_format_report(const LogPanel& logpanel, Window eval_window,
                               const ClassicalFit* classical,
                               const TwoPhaseFit* two_phase,
                               const GapSeries* gap);

}  // namespace mptt
