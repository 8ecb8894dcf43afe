#pragma once

#include <string>
#include <utility>
#include <vector>

namespace labelforge {

// Whole-file read. Throws IoError.
std::string read_file(const std::string& path);

// Writes every (path, bytes) pair to a temporary sibling first and renames
// them into place only after all writes succeeded. On failure no target is
// touched and temporaries are removed. Throws IoError.
void write_files_atomically(const std::vector<std::pair<std::string, std::string>>& files);

} // namespace labelforge
