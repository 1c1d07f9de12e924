#include "luka/rational.hpp"

#include <cctype>

namespace luka {

namespace {

bool valid_integer(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string strip_plus(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return std::string(s);
}

}  // namespace

Rat parse_rat(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!valid_integer(num) || (slash != std::string_view::npos && !valid_integer(den))) {
    throw InputError("malformed rational '" + std::string(text) + "'");
  }
  mpz_class p(strip_plus(num), 10);
  mpz_class q(1);
  if (slash != std::string_view::npos) {
    q = mpz_class(strip_plus(den), 10);
    if (q == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  }
  Rat r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) { return r.get_str(); }

Point parse_point(std::string_view text) {
  Point out;
  std::string token;
  auto flush = [&] {
    if (!token.empty()) {
      out.push_back(parse_rat(token));
      token.clear();
    }
  };
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  if (out.empty()) throw InputError("empty point");
  return out;
}

std::string format_point(std::span<const Rat> p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ',';
    s += p[i].get_str();
  }
  return s;
}

std::string format_point_spaced(std::span<const Rat> p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ' ';
    s += p[i].get_str();
  }
  return s;
}

Rat dot(std::span<const Rat> a, std::span<const Rat> b) {
  if (a.size() != b.size()) throw DimensionError("dot: dimension mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Point add(std::span<const Rat> a, std::span<const Rat> b) {
  if (a.size() != b.size()) throw DimensionError("add: dimension mismatch");
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Point sub(std::span<const Rat> a, std::span<const Rat> b) {
  if (a.size() != b.size()) throw DimensionError("sub: dimension mismatch");
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Point scale(std::span<const Rat> a, const Rat& c) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}

bool is_zero(std::span<const Rat> a) {
  for (const auto& x : a) {
    if (x != 0) return false;
  }
  return true;
}

Rat ceil(const Rat& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return Rat(q);
}

Point zeros(std::size_t n) { return Point(n, Rat(0)); }

Point unit(std::size_t n, std::size_t i) {
  Point p(n, Rat(0));
  p.at(i) = 1;
  return p;
}

}  // namespace luka
