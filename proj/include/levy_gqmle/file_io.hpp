#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace levy_gqmle {

// Writes to a temporary sibling and renames it over `target`.
void write_file_atomic(const std::filesystem::path& target, std::string_view contents);

std::string read_file(const std::filesystem::path& source);

}  // namespace levy_gqmle
