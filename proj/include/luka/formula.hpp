#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "luka/rational.hpp"

namespace luka {

enum class Connective { var, neg, impl, oplus, otimes, max, min };

/// Immutable Lukasiewicz formula. Nodes are shared, so a formula is a DAG;
/// equality is structural (tree) equality.
class Formula {
 public:
  static Formula var(unsigned index);
  static Formula neg(Formula child);
  static Formula binary(Connective kind, Formula left, Formula right);
  static Formula impl(Formula l, Formula r) { return binary(Connective::impl, std::move(l), std::move(r)); }
  static Formula oplus(Formula l, Formula r) { return binary(Connective::oplus, std::move(l), std::move(r)); }
  static Formula otimes(Formula l, Formula r) { return binary(Connective::otimes, std::move(l), std::move(r)); }
  static Formula max(Formula l, Formula r) { return binary(Connective::max, std::move(l), std::move(r)); }
  static Formula min(Formula l, Formula r) { return binary(Connective::min, std::move(l), std::move(r)); }

  Connective kind() const;
  /// Variable index (>= 1); only for kind() == var.
  unsigned index() const;
  /// Operand of a negation, or left operand of a binary node.
  const Formula& left() const;
  const Formula& right() const;
  bool is_binary() const { return kind() != Connective::var && kind() != Connective::neg; }

  /// Node identity, stable for the lifetime of the formula; keys memo tables.
  const void* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  /// The message without the position prefix.
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  std::size_t line_;
  std::size_t column_;
};

/// Grammar, loosest to tightest: "->" (right-assoc), "|", "&", "+", "*", "!";
/// atoms are X<k> (k >= 1), "k.F" (k-fold "+" of F) and parenthesized formulas.
Formula parse(std::string_view text);

/// Minimal-parenthesis rendering; parse(to_text(f)) == f.
std::string to_text(const Formula& f);

/// Rewrites "+", "*", "|", "&" in terms of "!" and "->".
Formula expand_derived(const Formula& f);

using VariableSet = std::set<unsigned>;

VariableSet variables_of(const Formula& f);

/// Largest variable index, i.e. the smallest admissible dimension.
unsigned max_variable(const Formula& f);

/// Connective count of the expanded tree (shared nodes counted per occurrence).
std::size_t connective_count(const Formula& f);

}  // namespace luka
