#pragma once

#include <string>

namespace resmap {

/// Writes via a sibling temporary file and rename, so readers never observe
/// a partially written file. Throws std::runtime_error on I/O failure.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace resmap
