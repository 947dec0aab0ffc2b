#pragma once

#include <json.hpp>

#include <string>
#include <string_view>

namespace thermo::cli {

// Hash git assigns to a blob with this content: SHA-1 of "blob <size>\0" + content, in hex.
std::string git_blob_hash(std::string_view content);

// Writes `content` to `path`, creating parent directories.
void write_file(const std::string& path, std::string_view content);

}  // namespace thermo::cli
