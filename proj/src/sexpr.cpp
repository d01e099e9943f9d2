#include "vsalisp/sexpr.hpp"

#include <algorithm>
#include <cctype>

namespace vsalisp {

SExpr::SExpr() : SExpr(nil()) {}

const SExpr& SExpr::nil() {
  static const SExpr n(std::make_shared<const Node>(Node{std::string("NIL")}));
  return n;
}

SExpr SExpr::atom(std::string name) {
  if (name == "NIL") return nil();
  return SExpr(std::make_shared<const Node>(Node{std::move(name)}));
}

SExpr SExpr::cons(SExpr car, SExpr cdr) {
  return SExpr(std::make_shared<const Node>(Node{std::make_pair(std::move(car), std::move(cdr))}));
}

SExpr SExpr::list(std::initializer_list<SExpr> items) {
  SExpr out = nil();
  for (auto it = std::rbegin(items); it != std::rend(items); ++it) out = cons(*it, out);
  return out;
}

bool SExpr::is_atom() const { return std::holds_alternative<std::string>(node_->value); }

bool SExpr::is_nil() const { return is_atom() && name() == "NIL"; }

const std::string& SExpr::name() const { return std::get<std::string>(node_->value); }

const SExpr& SExpr::car() const { return std::get<1>(node_->value).first; }

const SExpr& SExpr::cdr() const { return std::get<1>(node_->value).second; }

bool operator==(const SExpr& a, const SExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_atom() != b.is_atom()) return false;
  if (a.is_atom()) return a.name() == b.name();
  return a.car() == b.car() && a.cdr() == b.cdr();
}

bool is_user_atom_name(std::string_view name) {
  return !name.empty() &&
         std::all_of(name.begin(), name.end(), [](unsigned char c) { return std::isalnum(c) != 0; });
}

namespace {

const char* kind_label(ParseError::Kind k) {
  switch (k) {
    case ParseError::Kind::Unbalanced: return "unbalanced parentheses";
    case ParseError::Kind::IllegalCharacter: return "illegal character";
    case ParseError::Kind::MisplacedDot: return "misplaced dot";
    case ParseError::Kind::TrailingInput: return "unexpected trailing input";
    case ParseError::Kind::Empty: return "empty input";
  }
  return "parse error";
}

}  // namespace

ParseError::ParseError(Kind kind, std::size_t offset, std::size_t line, std::size_t column,
                       const std::string& detail)
    : Error(std::string(kind_label(kind)) + " at line " + std::to_string(line) + ", column " +
            std::to_string(column) + (detail.empty() ? "" : ": " + detail)),
      kind_(kind),
      offset_(offset),
      line_(line),
      column_(column) {}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  bool at_end() {
    skip_blank();
    return pos_ >= text_.size();
  }

  SExpr read() {
    skip_blank();
    if (pos_ >= text_.size()) fail(ParseError::Kind::Empty, "", true);
    const char c = text_[pos_];
    if (c == '(') return read_list();
    if (c == ')') fail(ParseError::Kind::Unbalanced, "unexpected ')'");
    if (c == '.') fail(ParseError::Kind::MisplacedDot, "dot outside a list");
    if (std::isalnum(static_cast<unsigned char>(c))) return read_atom();
    fail(ParseError::Kind::IllegalCharacter, std::string("'") + c + "'");
  }

  [[noreturn]] void fail(ParseError::Kind kind, const std::string& detail, bool incomplete = false) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    ParseError err(kind, pos_, line, col, detail);
    err.incomplete_ = incomplete;
    throw err;
  }

 private:
  void skip_blank() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos_;
      } else if (c == ';') {
        // nonstandard line comment
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  SExpr read_atom() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size()) {
      const char c = text_[pos_];
      const bool delimiter = c == '(' || c == ')' || c == '.' || c == ' ' || c == '\t' ||
                             c == '\n' || c == '\r' || c == ';';
      if (!delimiter) fail(ParseError::Kind::IllegalCharacter, std::string("'") + c + "' in atom");
    }
    return SExpr::atom(std::string(text_.substr(start, pos_ - start)));
  }

  SExpr read_list() {
    ++pos_;  // '('
    std::vector<SExpr> items;
    SExpr tail = SExpr::nil();
    for (;;) {
      skip_blank();
      if (pos_ >= text_.size()) fail(ParseError::Kind::Unbalanced, "missing ')'", true);
      const char c = text_[pos_];
      if (c == ')') {
        ++pos_;
        break;
      }
      if (c == '.') {
        if (items.empty()) fail(ParseError::Kind::MisplacedDot, "dot before any element");
        ++pos_;
        skip_blank();
        if (pos_ >= text_.size()) fail(ParseError::Kind::Unbalanced, "missing ')'", true);
        if (text_[pos_] == ')') fail(ParseError::Kind::MisplacedDot, "no expression after dot");
        tail = read();
        skip_blank();
        if (pos_ >= text_.size()) fail(ParseError::Kind::Unbalanced, "missing ')'", true);
        if (text_[pos_] != ')') {
          fail(ParseError::Kind::MisplacedDot, "more than one expression after dot");
        }
        ++pos_;
        break;
      }
      items.push_back(read());
    }
    SExpr out = tail;
    for (auto it = items.rbegin(); it != items.rend(); ++it) out = SExpr::cons(*it, out);
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

SExpr parse(std::string_view text) {
  Reader r(text);
  SExpr e = r.read();
  if (!r.at_end()) r.fail(ParseError::Kind::TrailingInput, "expected a single expression");
  return e;
}

std::vector<SExpr> parse_all(std::string_view text) {
  Reader r(text);
  std::vector<SExpr> out;
  while (!r.at_end()) out.push_back(r.read());
  return out;
}

namespace {

void print_into(const SExpr& e, std::string& out) {
  if (e.is_atom()) {
    out += e.name();
    return;
  }
  out += '(';
  const SExpr* cur = &e;
  bool first = true;
  while (cur->is_pair()) {
    if (!first) out += ' ';
    print_into(cur->car(), out);
    first = false;
    cur = &cur->cdr();
  }
  if (!cur->is_nil()) {
    out += " . ";
    out += cur->name();
  }
  out += ')';
}

}  // namespace

std::string print(const SExpr& e) {
  std::string out;
  print_into(e, out);
  return out;
}

std::size_t pair_count(const SExpr& e) {
  if (e.is_atom()) return 0;
  return 1 + pair_count(e.car()) + pair_count(e.cdr());
}

std::size_t depth(const SExpr& e) {
  if (e.is_atom()) return 0;
  return 1 + std::max(depth(e.car()), depth(e.cdr()));
}

}  // namespace vsalisp
