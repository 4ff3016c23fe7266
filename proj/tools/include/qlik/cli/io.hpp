#ifndef QLIK_CLI_IO_HPP_
#define QLIK_CLI_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qlik/quantizer.hpp"

namespace qlik::cli {

std::string read_text_file(const std::filesystem::path& path);

// Writes to a sibling temp file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

// Header `c0,c1,...`, one code per row.
void write_codes_csv(std::ostream& out, const std::vector<Code>& codes);
std::vector<Code> parse_codes_csv(const std::string& text);

// Plain numeric CSV, no header.
Matrix parse_matrix_csv(const std::string& text);

}  // namespace qlik::cli

#endif  // QLIK_CLI_IO_HPP_
