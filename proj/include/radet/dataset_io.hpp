#pragma once

/**
 * @file dataset_io.hpp
 * @brief Plain-text dataset persistence with bit-exact round-trips.
 *
 * Layout: one directory per dataset holding a `meta.txt` file (key/value lines:
 * format tag, scenario, seed, frame count, radar parameters, bin width) and
 * a frames/ subdirectory with one columnar file per frame:
 *
 *   frame <id>
 *   labels <bin> <bin> ...
 *   bin magnitude
 *   0 <value>
 *   ...
 *
 * Doubles are written with 17 significant digits, which round-trips every
 * IEEE double exactly.
 */

#include <string>

#include "radet/simulator.hpp"

namespace radet {

/// Writes the dataset, creating the directory. Throws std::runtime_error on
/// I/O failure.
void save_dataset(const Dataset& ds, const std::string& dir);

/// Reads a dataset written by save_dataset. Throws std::runtime_error on
/// missing or malformed files.
Dataset load_dataset(const std::string& dir);

}  // namespace radet
