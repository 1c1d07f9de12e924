#include "luka/formula.hpp"

#include <cctype>
#include <limits>
#include <optional>
#include <unordered_map>
#include <utility>

namespace luka {

struct Formula::Node {
  Connective kind;
  unsigned index = 0;
  std::optional<Formula> left;
  std::optional<Formula> right;
};

Formula Formula::var(unsigned index) {
  if (index == 0) throw InputError("variable index must be positive");
  return Formula(std::make_shared<const Node>(Node{Connective::var, index, std::nullopt, std::nullopt}));
}

Formula Formula::neg(Formula child) {
  return Formula(std::make_shared<const Node>(Node{Connective::neg, 0, std::move(child), std::nullopt}));
}

Formula Formula::binary(Connective kind, Formula left, Formula right) {
  if (kind == Connective::var || kind == Connective::neg) throw std::invalid_argument("binary: not a binary connective");
  return Formula(std::make_shared<const Node>(Node{kind, 0, std::move(left), std::move(right)}));
}

Connective Formula::kind() const { return node_->kind; }

unsigned Formula::index() const {
  if (node_->kind != Connective::var) throw std::logic_error("index() on a non-variable node");
  return node_->index;
}

const Formula& Formula::left() const {
  if (!node_->left) throw std::logic_error("left() on a variable node");
  return *node_->left;
}

const Formula& Formula::right() const {
  if (!node_->right) throw std::logic_error("right() on a non-binary node");
  return *node_->right;
}

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<const void*, const void*>& p) const {
    return std::hash<const void*>()(p.first) * 31 + std::hash<const void*>()(p.second);
  }
};

bool equal_rec(const Formula& a, const Formula& b,
               std::unordered_map<std::pair<const void*, const void*>, bool, PairHash>& memo) {
  if (a.id() == b.id()) return true;
  if (a.kind() != b.kind()) return false;
  if (a.kind() == Connective::var) return a.index() == b.index();
  const auto key = std::make_pair(a.id(), b.id());
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  bool eq = equal_rec(a.left(), b.left(), memo);
  if (eq && a.is_binary()) eq = equal_rec(a.right(), b.right(), memo);
  memo.emplace(key, eq);
  return eq;
}

}  // namespace

bool operator==(const Formula& a, const Formula& b) {
  std::unordered_map<std::pair<const void*, const void*>, bool, PairHash> memo;
  return equal_rec(a, b, memo);
}

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      detail_(message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { var, integer, dot, bang, star, plus, amp, bar, arrow, lparen, rparen, end };

struct Token {
  Tok kind;
  unsigned long value = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    Token t{Tok::end, 0, line_, col_};
    if (pos_ >= text_.size()) return t;
    const char c = text_[pos_];
    if (c == 'X') {
      advance();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        throw ParseError("expected variable index after 'X'", t.line, t.column);
      }
      t.kind = Tok::var;
      t.value = read_number(t);
      if (t.value == 0) throw ParseError("variable index 0 is not allowed", t.line, t.column);
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::integer;
      t.value = read_number(t);
      return t;
    }
    advance();
    switch (c) {
      case '.': t.kind = Tok::dot; return t;
      case '!': t.kind = Tok::bang; return t;
      case '*': t.kind = Tok::star; return t;
      case '+': t.kind = Tok::plus; return t;
      case '&': t.kind = Tok::amp; return t;
      case '|': t.kind = Tok::bar; return t;
      case '(': t.kind = Tok::lparen; return t;
      case ')': t.kind = Tok::rparen; return t;
      case '-':
        if (pos_ < text_.size() && text_[pos_] == '>') {
          advance();
          t.kind = Tok::arrow;
          return t;
        }
        break;
      default: break;
    }
    if (static_cast<unsigned char>(c) >= 0x80) {
      throw ParseError("non-ASCII character; connectives are ! -> + * | &", t.line, t.column);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.column);
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  unsigned long read_number(const Token& t) {
    unsigned long v = 0;
    constexpr unsigned long limit = std::numeric_limits<unsigned>::max();
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<unsigned long>(text_[pos_] - '0');
      if (v > limit) throw ParseError("integer too large", t.line, t.column);
      advance();
    }
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

constexpr unsigned long kMaxMultiplier = 1UL << 16;

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) { tok_ = lex_.next(); }

  Formula parse_all() {
    Formula f = formula();
    if (tok_.kind != Tok::end) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, tok_.line, tok_.column); }

  void shift() { tok_ = lex_.next(); }

  Formula formula() { return impl(); }

  Formula impl() {
    Formula l = disjunction();
    if (tok_.kind == Tok::arrow) {
      shift();
      return Formula::impl(std::move(l), impl());
    }
    return l;
  }

  Formula disjunction() {
    Formula l = conjunction();
    while (tok_.kind == Tok::bar) {
      shift();
      l = Formula::max(std::move(l), conjunction());
    }
    return l;
  }

  Formula conjunction() {
    Formula l = sum();
    while (tok_.kind == Tok::amp) {
      shift();
      l = Formula::min(std::move(l), sum());
    }
    return l;
  }

  Formula sum() {
    Formula l = product();
    while (tok_.kind == Tok::plus) {
      shift();
      l = Formula::oplus(std::move(l), product());
    }
    return l;
  }

  Formula product() {
    Formula l = unary();
    while (tok_.kind == Tok::star) {
      shift();
      l = Formula::otimes(std::move(l), unary());
    }
    return l;
  }

  Formula unary() {
    if (tok_.kind == Tok::bang) {
      shift();
      return Formula::neg(unary());
    }
    return atom();
  }

  Formula atom() {
    switch (tok_.kind) {
      case Tok::var: {
        const auto idx = static_cast<unsigned>(tok_.value);
        shift();
        return Formula::var(idx);
      }
      case Tok::integer: {
        const auto k = tok_.value;
        if (k == 0) fail("multiplier must be a positive integer");
        if (k > kMaxMultiplier) fail("multiplier too large");
        shift();
        if (tok_.kind != Tok::dot) fail("expected '.' after multiplier");
        shift();
        const Formula base = unary();
        Formula acc = base;
        for (unsigned long i = 1; i < k; ++i) acc = Formula::oplus(std::move(acc), base);
        return acc;
      }
      case Tok::lparen: {
        shift();
        Formula f = formula();
        if (tok_.kind != Tok::rparen) fail("expected ')'");
        shift();
        return f;
      }
      case Tok::end: fail("unexpected end of input");
      default: fail("expected a variable, multiplier or '('");
    }
  }

  Lexer lex_;
  Token tok_;
};

int precedence(Connective k) {
  switch (k) {
    case Connective::impl: return 1;
    case Connective::max: return 2;
    case Connective::min: return 3;
    case Connective::oplus: return 4;
    case Connective::otimes: return 5;
    case Connective::neg: return 6;
    case Connective::var: return 7;
  }
  return 0;
}

const char* symbol(Connective k) {
  switch (k) {
    case Connective::impl: return " -> ";
    case Connective::max: return " | ";
    case Connective::min: return " & ";
    case Connective::oplus: return " + ";
    case Connective::otimes: return " * ";
    default: return "";
  }
}

void render(const Formula& f, std::string& out) {
  auto wrapped = [&out](const Formula& g, bool parens) {
    if (parens) out += '(';
    render(g, out);
    if (parens) out += ')';
  };
  switch (f.kind()) {
    case Connective::var:
      out += 'X';
      out += std::to_string(f.index());
      return;
    case Connective::neg:
      out += '!';
      wrapped(f.left(), precedence(f.left().kind()) < precedence(Connective::neg));
      return;
    case Connective::impl:
      wrapped(f.left(), precedence(f.left().kind()) <= precedence(Connective::impl));
      out += symbol(Connective::impl);
      wrapped(f.right(), precedence(f.right().kind()) < precedence(Connective::impl));
      return;
    default: {
      const int p = precedence(f.kind());
      wrapped(f.left(), precedence(f.left().kind()) < p);
      out += symbol(f.kind());
      wrapped(f.right(), precedence(f.right().kind()) <= p);
    }
  }
}

}  // namespace

Formula parse(std::string_view text) { return Parser(text).parse_all(); }

std::string to_text(const Formula& f) {
  std::string s;
  render(f, s);
  return s;
}

namespace {

Formula expand_rec(const Formula& f, std::unordered_map<const void*, Formula>& memo) {
  if (auto it = memo.find(f.id()); it != memo.end()) return it->second;
  Formula r = f;
  switch (f.kind()) {
    case Connective::var: break;
    case Connective::neg: r = Formula::neg(expand_rec(f.left(), memo)); break;
    default: {
      Formula a = expand_rec(f.left(), memo);
      Formula b = expand_rec(f.right(), memo);
      switch (f.kind()) {
        case Connective::impl: r = Formula::impl(a, b); break;
        case Connective::oplus: r = Formula::impl(Formula::neg(a), b); break;
        case Connective::otimes: r = Formula::neg(Formula::impl(a, Formula::neg(b))); break;
        case Connective::max: r = Formula::impl(Formula::impl(a, b), b); break;
        case Connective::min: {
          Formula na = Formula::neg(a);
          Formula nb = Formula::neg(b);
          r = Formula::neg(Formula::impl(Formula::impl(na, nb), nb));
          break;
        }
        default: break;
      }
    }
  }
  memo.emplace(f.id(), r);
  return r;
}

void collect_vars(const Formula& f, VariableSet& out, std::set<const void*>& seen) {
  if (!seen.insert(f.id()).second) return;
  if (f.kind() == Connective::var) {
    out.insert(f.index());
    return;
  }
  collect_vars(f.left(), out, seen);
  if (f.is_binary()) collect_vars(f.right(), out, seen);
}

std::size_t count_rec(const Formula& f, std::unordered_map<const void*, std::size_t>& memo) {
  if (f.kind() == Connective::var) return 0;
  if (auto it = memo.find(f.id()); it != memo.end()) return it->second;
  std::size_t c = 1 + count_rec(f.left(), memo);
  if (f.is_binary()) c += count_rec(f.right(), memo);
  memo.emplace(f.id(), c);
  return c;
}

}  // namespace

Formula expand_derived(const Formula& f) {
  std::unordered_map<const void*, Formula> memo;
  return expand_rec(f, memo);
}

VariableSet variables_of(const Formula& f) {
  VariableSet vars;
  std::set<const void*> seen;
  collect_vars(f, vars, seen);
  return vars;
}

unsigned max_variable(const Formula& f) {
  const auto vars = variables_of(f);
  return vars.empty() ? 0 : *vars.rbegin();
}

std::size_t connective_count(const Formula& f) {
  std::unordered_map<const void*, std::size_t> memo;
  return count_rec(f, memo);
}

}  // namespace luka
