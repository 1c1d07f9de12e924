#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace luka {

/// Exact rational in canonical form (gcd 1, positive denominator).
using Rat = mpq_class;

/// A point or direction in Q^n.
using Point = std::vector<Rat>;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses "p/q" or "p" (optional sign). Throws InputError on malformed text or q = 0.
Rat parse_rat(std::string_view text);

/// Canonical "p/q" or "p".
std::string to_string(const Rat& r);

/// Comma- or whitespace-separated list of rationals.
Point parse_point(std::string_view text);

/// Comma-separated canonical rationals, e.g. "1/2,0,3/4".
std::string format_point(std::span<const Rat> p);

/// Space-separated canonical rationals.
std::string format_point_spaced(std::span<const Rat> p);

inline int sign(const Rat& r) { return sgn(r); }

Rat dot(std::span<const Rat> a, std::span<const Rat> b);
Point add(std::span<const Rat> a, std::span<const Rat> b);
Point sub(std::span<const Rat> a, std::span<const Rat> b);
Point scale(std::span<const Rat> a, const Rat& c);
bool is_zero(std::span<const Rat> a);

/// Smallest integer >= r.
Rat ceil(const Rat& r);

Point zeros(std::size_t n);
Point unit(std::size_t n, std::size_t i);

}  // namespace luka
