#pragma once

#include <filesystem>

#include "reuse/schema.hpp"
#include "reuse/tables.hpp"

namespace reuse {

// Writes one `<table>.csv` per table into `dir` (created if needed) plus a
// `level` marker file. Column names and order match the type definitions.
void write_dataset_csv(const Dataset& dataset, const std::filesystem::path& dir);

// Reads a dataset previously written by write_dataset_csv. The level marker
// and the table set must agree.
Dataset read_dataset_csv(const std::filesystem::path& dir);

// Reconstructs typed StandardTables from a dataset (any level carries the
// five standard tables).
StandardTables standard_from_dataset(const Dataset& dataset);

}  // namespace reuse
