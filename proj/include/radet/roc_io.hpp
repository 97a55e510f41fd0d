#pragma once

/**
 * @file roc_io.hpp
 * @brief Text serialization for ROC curves and distribution-fit reports, plus
 *        a small self-contained SVG plot writer for ROC curves.
 *
 * ROC file layout (plain text, '#'-prefixed header lines, then one row per
 * operating point):
 *
 *   # radet roc 1
 *   # detector <id>
 *   # window <n_train> <n_guard> <shrink|skip>
 *   # params <free-text, may be empty>
 *   # columns threshold p_fa p_d
 *   <threshold> <p_fa> <p_d>
 *   ...
 *
 * Values are written with enough digits to round-trip bit-exactly.
 */

#include <string>
#include <vector>

#include "radet/distfit.hpp"
#include "radet/evaluation.hpp"

namespace radet {

/// Writes a ROC curve to a text file. Throws std::runtime_error on I/O failure.
void write_roc(const std::string& path, const RocCurve& roc);

/// Reads a ROC curve produced by write_roc. Throws std::runtime_error on
/// missing files or malformed content.
RocCurve read_roc(const std::string& path);

/// Writes several ROC curves into one SVG image with a logarithmic
/// false-alarm axis. Curves with no strictly positive p_fa point are drawn
/// from the left edge. Throws std::runtime_error on I/O failure.
void write_roc_svg(const std::string& path, const std::vector<RocCurve>& curves);

/// Writes distribution-fit results (best first) as a small text report.
void write_fit_report(const std::string& path, const std::vector<FitResult>& fits,
                      std::size_t n_samples);

}  // namespace radet
