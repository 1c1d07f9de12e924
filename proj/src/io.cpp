#include "luka/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "luka/geometry.hpp"

namespace luka {

FileError::FileError(const std::string& source, std::size_t line, const std::string& message)
    : InputError(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

struct Line {
  std::size_t number;
  std::string_view text;  // comment stripped, trimmed, nonempty
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    raw = trim(raw);
    if (!raw.empty()) out.push_back(Line{number, raw});
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

// Splits "key: rest"; key is empty when the line has no recognized prefix.
std::pair<std::string_view, std::string_view> keyed(std::string_view line) {
  const auto colon = line.find(':');
  if (colon == std::string_view::npos) return {{}, line};
  const auto key = trim(line.substr(0, colon));
  if (key.empty() || !std::all_of(key.begin(), key.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)); })) {
    return {{}, line};
  }
  return {key, trim(line.substr(colon + 1))};
}

Point point_at(const std::string& source, const Line& line, std::string_view text) {
  try {
    return parse_point(text);
  } catch (const InputError& e) {
    throw FileError(source, line.number, e.what());
  }
}

}  // namespace

Theory parse_theory(std::string_view text, const std::string& source) {
  Theory t;
  for (const auto& line : content_lines(text)) {
    try {
      t.members.push_back(parse(line.text));
    } catch (const ParseError& e) {
      throw FileError(source, line.number, "column " + std::to_string(e.column()) + ": " + e.detail());
    }
  }
  return t;
}

Theory load_theory(const std::string& path) { return parse_theory(read_file(path), path); }

ValuationFile parse_valuation(std::string_view text, const std::string& source) {
  ValuationFile out;
  bool have_point = false;
  std::size_t last = 0;
  for (const auto& line : content_lines(text)) {
    last = line.number;
    const auto [key, rest] = keyed(line.text);
    if (key == "point") {
      if (have_point) throw FileError(source, line.number, "duplicate 'point:' line");
      out.valuation.base = point_at(source, line, rest);
      have_point = true;
    } else if (key == "dir") {
      if (!have_point) throw FileError(source, line.number, "'dir:' before 'point:'");
      Point d = point_at(source, line, rest);
      if (d.size() != out.valuation.base.size()) throw FileError(source, line.number, "direction has the wrong dimension");
      out.valuation.directions.push_back(std::move(d));
    } else if (key == "vars") {
      if (!out.vars.empty()) throw FileError(source, line.number, "duplicate 'vars:' line");
      std::istringstream ss{std::string(rest)};
      std::string tok;
      while (ss >> tok) {
        std::erase(tok, ',');
        if (tok.empty()) continue;
        if (tok.front() == 'X' || tok.front() == 'x') tok.erase(0, 1);
        try {
          const long v = std::stol(tok);
          if (v <= 0) throw std::invalid_argument("nonpositive");
          out.vars.push_back(static_cast<unsigned>(v));
        } catch (const std::exception&) {
          throw FileError(source, line.number, "bad variable index '" + tok + "'");
        }
      }
    } else {
      throw FileError(source, line.number, "expected 'point:', 'dir:' or 'vars:'");
    }
  }
  if (!have_point) throw FileError(source, last + 1, "missing 'point:' line");
  const std::size_t n = out.valuation.base.size();
  if (out.vars.empty()) {
    for (std::size_t i = 1; i <= n; ++i) out.vars.push_back(static_cast<unsigned>(i));
  } else {
    if (out.vars.size() != n) throw FileError(source, last, "'vars:' lists a different number of variables than the point");
    if (!std::is_sorted(out.vars.begin(), out.vars.end()) ||
        std::adjacent_find(out.vars.begin(), out.vars.end()) != out.vars.end()) {
      throw FileError(source, last, "'vars:' must be strictly increasing");
    }
  }
  return out;
}

std::string format_valuation(const DifferentialValuation& u, const std::vector<unsigned>& vars) {
  std::string s = "point: " + format_point_spaced(u.base) + "\n";
  for (const auto& d : u.directions) s += "dir: " + format_point_spaced(d) + "\n";
  if (!vars.empty()) {
    s += "vars:";
    for (const auto v : vars) s += " " + std::to_string(v);
    s += "\n";
  }
  return s;
}

RegionUnion parse_region(std::string_view text, const std::string& source) {
  RegionUnion out;
  bool have_dim = false;
  bool open = false;
  Polyhedron current;
  auto close = [&] {
    if (open) out.members.push_back(std::move(current));
    open = false;
  };
  for (const auto& line : content_lines(text)) {
    const auto [key, rest] = keyed(line.text);
    if (key == "dim") {
      if (have_dim) throw FileError(source, line.number, "duplicate 'dim:' line");
      try {
        const long n = std::stol(std::string(rest));
        if (n <= 0) throw std::invalid_argument("nonpositive");
        out.dim = static_cast<std::size_t>(n);
      } catch (const std::exception&) {
        throw FileError(source, line.number, "bad dimension '" + std::string(rest) + "'");
      }
      have_dim = true;
    } else if (key.empty() && line.text == "poly") {
      if (!have_dim) throw FileError(source, line.number, "'poly' before 'dim:'");
      close();
      current = Polyhedron::cube(out.dim);
      open = true;
    } else if (key == "ge" || key == "eq") {
      if (!open) throw FileError(source, line.number, "constraint outside a 'poly' block");
      Point c = point_at(source, line, rest);
      if (c.size() != out.dim + 1) {
        throw FileError(source, line.number, "expected " + std::to_string(out.dim + 1) + " coefficients");
      }
      const Rat c0 = c.front();
      c.erase(c.begin());
      const AffineFn h(c0, std::move(c));
      current.add(h);
      if (key == "eq") current.add(-h);
    } else {
      throw FileError(source, line.number, "expected 'dim:', 'poly', 'ge:' or 'eq:'");
    }
  }
  close();
  if (!have_dim) throw FileError(source, 1, "missing 'dim:' line");
  return out;
}

std::string format_region(const RegionUnion& r) {
  std::string s = "dim: " + std::to_string(r.dim) + "\n";
  for (const auto& p : r.members) {
    s += "poly\n";
    for (const auto& h : p.constraints()) s += "ge: " + format_affine(h) + "\n";
  }
  return s;
}

PointSequence parse_sequence(std::string_view text, const std::string& source) {
  PointSequence out;
  bool have_limit = false;
  for (const auto& line : content_lines(text)) {
    const auto [key, rest] = keyed(line.text);
    if (key == "limit") {
      if (have_limit) throw FileError(source, line.number, "duplicate 'limit:' line");
      out.limit = point_at(source, line, rest);
      have_limit = true;
      continue;
    }
    if (!key.empty()) throw FileError(source, line.number, "unexpected '" + std::string(key) + ":' line");
    if (!have_limit) throw FileError(source, line.number, "points before the 'limit:' line");
    Point p = point_at(source, line, line.text);
    if (p.size() != out.limit.size()) throw FileError(source, line.number, "point has the wrong dimension");
    for (const auto& x : p) {
      if (x < 0 || x > 1) throw FileError(source, line.number, "point lies outside the cube");
    }
    if (p == out.limit) throw FileError(source, line.number, "listed points must differ from the limit");
    out.points.push_back(std::move(p));
  }
  if (!have_limit) throw FileError(source, 1, "missing 'limit:' line");
  return out;
}

ClosedSetDescription parse_set(std::string_view text, const std::string& source) {
  const auto lines = content_lines(text);
  if (!lines.empty() && keyed(lines.front().text).first == "limit") return parse_sequence(text, source);
  return parse_region(text, source);
}

}  // namespace luka
