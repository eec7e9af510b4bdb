#pragma once

#include "reuse/schema.hpp"
#include "reuse/tasks.hpp"

namespace reuse {

// Nested-loop reference evaluation straight over the normalized rows. No
// indexes and no code shared with the engine plans; guarded to datasets of
// at most a million pieces.
ReceptionResult brute_force_reception(const StandardTables& std_tables, const std::string& doc);
std::vector<QuoteRow> brute_force_quotes(const StandardTables& std_tables,
                                         const std::string& edition,
                                         std::int64_t limit = kQuoteLimit);

}  // namespace reuse
