#pragma once

#include <string>

namespace glucospec {

/// Writes via a temp file + atomic rename so interrupts leave no partial file.
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace glucospec
