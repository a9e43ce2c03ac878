#ifndef DSDKM_SRC_TEXT_IO_HPP
#define DSDKM_SRC_TEXT_IO_HPP

#include <filesystem>
#include <string>

namespace dsdkm::detail {

std::string read_text_file(const std::filesystem::path& path);

/// Writes via a sibling temporary file and rename; errors name `path`.
void write_text_file(const std::filesystem::path& path, const std::string& content);

/// Shortest representation that round-trips; locale independent.
std::string format_shortest(double value);

/// `%.17g` equivalent; locale independent.
std::string format_g17(double value);

} // namespace dsdkm::detail

#endif
