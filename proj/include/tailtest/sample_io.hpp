#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>

#include "tailtest/cdf_model.hpp"
#include "tailtest/statistic.hpp"

namespace tailtest {

// One number per line ('#' starts a comment, blank lines are skipped), or
// with `column` set, a comma-separated file whose first data line is a
// header naming the columns. Throws ParseError (1-based line) or InputError.
Sample parse_sample(std::istream& in, const std::optional<std::string>& column = std::nullopt);
Sample read_sample(const std::filesystem::path& path, const std::optional<std::string>& column = std::nullopt);

// CSV with header columns x and F.
std::shared_ptr<const TableModel> read_table_model(const std::filesystem::path& path);

// 64-bit FNV-1a of the file contents, as 16 hex digits.
std::string file_digest(const std::filesystem::path& path);

}  // namespace tailtest
