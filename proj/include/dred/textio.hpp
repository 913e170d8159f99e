#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dred {

// One logical input line: comments stripped, surrounding whitespace trimmed,
// blank lines dropped. `number` is the 1-based line in the original text.
struct Line {
  int number = 0;
  std::string text;
};

std::vector<Line> logical_lines(std::string_view text);

std::vector<std::string> split_ws(std::string_view text);

std::string join(const std::vector<std::string> &parts,
                 std::string_view separator);

std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &content);

[[noreturn]] void parse_fail(std::string_view file, int line,
                             const std::string &message);

} // namespace dred
