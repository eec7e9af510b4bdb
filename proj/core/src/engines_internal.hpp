#pragma once

#include <memory>

#include "engine_io.hpp"
#include "reuse/engine.hpp"

namespace reuse::detail {

class EngineBase : public DatasetHandle {
 public:
  // Serializes one table in the engine-native on-disk format.
  virtual void serialize_table(const std::string& name, io::Writer& w) const = 0;
};

// Throws when the table set does not match the level contract, a table is
// malformed, or row counts exceed the RowId range.
void validate_level_tables(const std::vector<Table>& tables, NormalizationLevel level);

std::unique_ptr<EngineBase> make_row_handle(std::vector<Table> tables, NormalizationLevel level);
std::unique_ptr<EngineBase> make_columnar_handle(std::vector<Table> tables,
                                                 NormalizationLevel level);
std::unique_ptr<EngineBase> make_scan_handle(std::vector<Table> tables, NormalizationLevel level,
                                             const EngineOptions& options);

std::unique_ptr<EngineBase> open_row_table_files(const std::filesystem::path& dir,
                                                 const std::vector<std::string>& names,
                                                 NormalizationLevel level);
std::unique_ptr<EngineBase> open_columnar_table_files(const std::filesystem::path& dir,
                                                      const std::vector<std::string>& names,
                                                      NormalizationLevel level);
std::unique_ptr<EngineBase> open_scan_table_files(const std::filesystem::path& dir,
                                                  const std::vector<std::string>& names,
                                                  NormalizationLevel level,
                                                  const EngineOptions& options);

}  // namespace reuse::detail
