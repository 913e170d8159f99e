#include "dred/textio.hpp"

#include <fstream>
#include <sstream>

#include "dred/errors.hpp"

namespace dred {

const char *to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::EndpointMismatch: return "EndpointMismatch";
  case ErrorKind::LabelClash: return "LabelClash";
  case ErrorKind::DanglingViolation: return "DanglingViolation";
  case ErrorKind::IdentificationViolation: return "IdentificationViolation";
  case ErrorKind::UnsupportedMatch: return "UnsupportedMatch";
  case ErrorKind::NonCommuting: return "NonCommuting";
  case ErrorKind::NonComposable: return "NonComposable";
  case ErrorKind::IllSorted: return "IllSorted";
  case ErrorKind::ModelDoesNotSatisfySpec: return "ModelDoesNotSatisfySpec";
  case ErrorKind::LeftSquareNotCommuting: return "LeftSquareNotCommuting";
  case ErrorKind::WitnessNotPleo: return "WitnessNotPleo";
  case ErrorKind::CubeCheckFailed: return "CubeCheckFailed";
  case ErrorKind::DenominatorNotPleo: return "DenominatorNotPleo";
  case ErrorKind::PleoVerificationFailed: return "PleoVerificationFailed";
  case ErrorKind::PleoUnverified: return "PleoUnverified";
  case ErrorKind::HypothesisNotPresent: return "HypothesisNotPresent";
  case ErrorKind::SortMismatch: return "SortMismatch";
  case ErrorKind::Parse: return "Parse";
  case ErrorKind::Io: return "Io";
  case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string &message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind) {}

void fail(ErrorKind kind, const std::string &message) {
  throw Error(kind, message);
}

std::vector<Line> logical_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(
        pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    ++number;
    size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    size_t b = raw.find_first_not_of(" \t\r");
    if (b != std::string_view::npos) {
      size_t e = raw.find_last_not_of(" \t\r");
      out.push_back({number, std::string(raw.substr(b, e - b + 1))});
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return out;
}

std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string join(const std::vector<std::string> &parts,
                 std::string_view separator) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += separator;
    out += parts[i];
  }
  return out;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot open " + path + " for writing");
  out << content;
  if (!out) fail(ErrorKind::Io, "write to " + path + " failed");
}

void parse_fail(std::string_view file, int line, const std::string &message) {
  std::string where = file.empty() ? "input" : std::string(file);
  fail(ErrorKind::Parse, where + ":" + std::to_string(line) + ": " + message);
}

} // namespace dred
