#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "vsalisp/errors.hpp"

namespace vsalisp {

/// An immutable symbolic expression: an atom or a dotted pair.
/// Copies share structure.
class SExpr {
 public:
  /// NIL.
  SExpr();

  static SExpr atom(std::string name);
  static SExpr cons(SExpr car, SExpr cdr);
  static SExpr list(std::initializer_list<SExpr> items);
  static const SExpr& nil();

  bool is_atom() const;
  bool is_pair() const { return !is_atom(); }
  bool is_nil() const;
  /// Precondition: is_atom().
  const std::string& name() const;
  /// Precondition: is_pair().
  const SExpr& car() const;
  const SExpr& cdr() const;

  friend bool operator==(const SExpr& a, const SExpr& b);
  friend bool operator!=(const SExpr& a, const SExpr& b) { return !(a == b); }

 private:
  struct Node;
  explicit SExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct SExpr::Node {
  std::variant<std::string, std::pair<SExpr, SExpr>> value;
};

/// Atom names typed by users: [A-Za-z0-9]+.
bool is_user_atom_name(std::string_view name);

class ParseError : public Error {
 public:
  enum class Kind { Unbalanced, IllegalCharacter, MisplacedDot, TrailingInput, Empty };

  ParseError(Kind kind, std::size_t offset, std::size_t line, std::size_t column,
             const std::string& detail);

  Kind kind() const { return kind_; }
  std::size_t offset() const { return offset_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  /// True when more input could complete the expression.
  bool incomplete() const { return incomplete_; }

 private:
  friend class Reader;
  Kind kind_;
  std::size_t offset_;
  std::size_t line_;
  std::size_t column_;
  bool incomplete_ = false;
};

/// Parses exactly one expression; surplus text is an error.
SExpr parse(std::string_view text);

/// Parses a script: zero or more expressions.
std::vector<SExpr> parse_all(std::string_view text);

/// Canonical text: list notation along NIL-terminated spines, dots otherwise.
std::string print(const SExpr& e);

/// Number of pairs in the tree.
std::size_t pair_count(const SExpr& e);
std::size_t depth(const SExpr& e);

}  // namespace vsalisp
