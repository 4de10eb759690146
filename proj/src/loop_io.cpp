#include <charconv>
#include <sstream>

#include "mloop/error.hpp"
#include "mloop/loop.hpp"

namespace mloop {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<long long> tokens(std::string_view line, std::size_t line_no) {
  std::vector<long long> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') ++end;
    const std::string_view tok = line.substr(pos, end - pos);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw Error(ErrorKind::ParseError,
                  "line=" + std::to_string(line_no) + " token '" + std::string(tok) + "'");
    }
    out.push_back(v);
    pos = end;
  }
  return out;
}

}  // namespace

CayleyLoop parse_loop(std::string_view text, const Limits& limits) {
  std::string name;
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string_view body = trim(line.substr(1));
      if (body.starts_with("name:")) name = std::string(trim(body.substr(5)));
      continue;
    }
    lines.emplace_back(line_no, line);
  }
  if (lines.empty()) throw Error(ErrorKind::ParseError, "missing order line");

  const auto header = tokens(lines[0].second, lines[0].first);
  if (header.size() != 1 || header[0] <= 0) {
    throw Error(ErrorKind::BadDimension, "first line must hold a single positive order");
  }
  const auto n = static_cast<std::size_t>(header[0]);
  if (n > limits.max_order) {
    throw Error(ErrorKind::OrderOverflow, "max-order guard: order " + std::to_string(n) +
                                              " exceeds " + std::to_string(limits.max_order));
  }
  if (lines.size() - 1 != n) {
    throw Error(ErrorKind::BadDimension, "expected " + std::to_string(n) + " rows, found " +
                                             std::to_string(lines.size() - 1));
  }
  std::vector<Index> table;
  table.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto row = tokens(lines[r + 1].second, lines[r + 1].first);
    if (row.size() != n) {
      throw Error(ErrorKind::BadDimension, "row=" + std::to_string(r) + " has " +
                                               std::to_string(row.size()) + " entries, expected " +
                                               std::to_string(n));
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (row[c] < 0 || static_cast<std::size_t>(row[c]) >= n) {
        throw Error(ErrorKind::NotLatinSquare, "row=" + std::to_string(r) + " column=" +
                                                   std::to_string(c) + " value=" +
                                                   std::to_string(row[c]) + " out of range");
      }
      table.push_back(static_cast<Index>(row[c]));
    }
  }
  return CayleyLoop::from_table(n, std::move(table), std::move(name), limits);
}

std::string serialize_loop(const CayleyLoop& loop) {
  std::ostringstream os;
  os << "# name: " << loop.name() << '\n' << loop.order() << '\n';
  const auto n = static_cast<Index>(loop.order());
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) os << (j ? " " : "") << loop.mul(i, j);
    os << '\n';
  }
  return os.str();
}

}  // namespace mloop
