#include "reuse/engine.hpp"

#include <fstream>
#include <limits>

#include <json.hpp>

#include "engines_internal.hpp"

namespace reuse {

std::string to_string(EngineKind kind) {
  switch (kind) {
    case EngineKind::RowIndexed: return "row";
    case EngineKind::Columnar: return "columnar";
    case EngineKind::Scan: return "scan";
  }
  return "?";
}

EngineKind parse_engine(std::string_view s) {
  if (s == "row") return EngineKind::RowIndexed;
  if (s == "columnar") return EngineKind::Columnar;
  if (s == "scan") return EngineKind::Scan;
  throw std::runtime_error("unknown engine: " + std::string(s));
}

namespace {
class SteadyClock final : public Clock {
 public:
  std::chrono::nanoseconds now() const override {
    return std::chrono::steady_clock::now().time_since_epoch();
  }
};
}  // namespace

const Clock& steady_clock_ref() {
  static const SteadyClock clock;
  return clock;
}

std::uint64_t StorageReport::table_bytes(std::string_view name) const {
  for (const auto& t : per_table)
    if (t.table == name) return t.bytes;
  throw std::runtime_error("storage report has no table " + std::string(name));
}

void set_load_seconds(DatasetHandle& h, double s) { h.load_seconds_ = s; }

namespace detail {

void validate_level_tables(const std::vector<Table>& tables, NormalizationLevel level) {
  auto expected = level_table_names(level);
  if (tables.size() != expected.size())
    throw std::runtime_error("table set does not match level " + to_string(level) + ": got " +
                             std::to_string(tables.size()) + " tables, expected " +
                             std::to_string(expected.size()));
  for (const auto& name : expected) {
    bool found = false;
    for (const auto& t : tables) found |= t.name == name;
    if (!found)
      throw std::runtime_error("table set does not match level " + to_string(level) +
                               ": missing table " + name);
  }
  for (const auto& t : tables) {
    if (t.columns.empty()) throw std::runtime_error("table " + t.name + " has no columns");
    for (const auto& c : t.columns)
      if (c.size() != t.rows())
        throw std::runtime_error("table " + t.name + " has ragged columns");
    if (t.rows() >= std::numeric_limits<RowId>::max())
      throw std::runtime_error("table " + t.name + " exceeds the supported row count");
  }
}

}  // namespace detail

std::unique_ptr<DatasetHandle> load_dataset(const std::vector<Table>& tables,
                                            NormalizationLevel level, EngineKind kind,
                                            const EngineOptions& options) {
  auto t0 = std::chrono::steady_clock::now();
  std::unique_ptr<DatasetHandle> handle;
  switch (kind) {
    case EngineKind::RowIndexed: handle = detail::make_row_handle(tables, level); break;
    case EngineKind::Columnar: handle = detail::make_columnar_handle(tables, level); break;
    case EngineKind::Scan: handle = detail::make_scan_handle(tables, level, options); break;
  }
  auto t1 = std::chrono::steady_clock::now();
  set_load_seconds(*handle, std::chrono::duration<double>(t1 - t0).count());
  return handle;
}

std::unique_ptr<DatasetHandle> load_dataset(const Dataset& dataset, EngineKind kind,
                                            const EngineOptions& options) {
  return load_dataset(dataset.tables, dataset.level, kind, options);
}

void persist_dataset(const DatasetHandle& handle, const std::filesystem::path& dir) {
  const auto* base = dynamic_cast<const detail::EngineBase*>(&handle);
  if (!base) throw std::runtime_error("cannot persist: unknown handle implementation");
  std::filesystem::create_directories(dir);

  nlohmann::json manifest;
  manifest["engine"] = to_string(handle.kind());
  manifest["level"] = to_string(handle.level());
  auto names = handle.table_names();
  manifest["tables"] = names;

  for (const auto& name : names) {
    std::ofstream out(dir / (name + ".tbl"), std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write table file: " + (dir / name).string());
    io::Writer w(&out);
    base->serialize_table(name, w);
    if (!out.good()) throw std::runtime_error("write failed: " + (dir / name).string());
  }
  std::ofstream mout(dir / "manifest.json", std::ios::trunc);
  if (!mout) throw std::runtime_error("cannot write manifest in " + dir.string());
  mout << manifest.dump(2) << '\n';
}

std::unique_ptr<DatasetHandle> open_dataset(const std::filesystem::path& dir,
                                            const EngineOptions& options) {
  std::ifstream min(dir / "manifest.json");
  if (!min) throw std::runtime_error("missing manifest: " + (dir / "manifest.json").string());
  nlohmann::json manifest;
  min >> manifest;

  EngineKind kind = parse_engine(manifest.at("engine").get<std::string>());
  NormalizationLevel level = parse_level(manifest.at("level").get<std::string>());
  auto names = manifest.at("tables").get<std::vector<std::string>>();

  auto t0 = std::chrono::steady_clock::now();
  std::unique_ptr<DatasetHandle> handle;
  switch (kind) {
    case EngineKind::RowIndexed:
      handle = detail::open_row_table_files(dir, names, level);
      break;
    case EngineKind::Columnar:
      handle = detail::open_columnar_table_files(dir, names, level);
      break;
    case EngineKind::Scan:
      handle = detail::open_scan_table_files(dir, names, level, options);
      break;
  }
  auto t1 = std::chrono::steady_clock::now();
  set_load_seconds(*handle, std::chrono::duration<double>(t1 - t0).count());
  return handle;
}

StorageReport storage_size(const DatasetHandle& handle) {
  const auto* base = dynamic_cast<const detail::EngineBase*>(&handle);
  if (!base) throw std::runtime_error("cannot size: unknown handle implementation");
  StorageReport report;
  for (const auto& name : handle.table_names()) {
    io::Writer counter(nullptr);
    base->serialize_table(name, counter);
    report.per_table.push_back({name, counter.count()});
    report.total_bytes += counter.count();
  }
  return report;
}

}  // namespace reuse
