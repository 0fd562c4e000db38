#include "gocyclo/formula.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <unordered_set>

namespace gocyclo {

SyntaxError::SyntaxError(const std::string& message, std::size_t position)
    : std::runtime_error("syntax error at " + std::to_string(position) + ": " + message),
      message_(message),
      position_(position) {}

namespace detail {

struct FormulaNode {
  FormulaKind kind;
  std::string name;
  const FormulaNode* left = nullptr;
  const FormulaNode* right = nullptr;
  std::size_t hash = 0;
  std::size_t box_depth = 0;
  std::size_t size = 1;
};

namespace {

struct NodeKeyHash {
  std::size_t operator()(const FormulaNode* n) const noexcept { return n->hash; }
};

struct NodeKeyEq {
  bool operator()(const FormulaNode* a, const FormulaNode* b) const noexcept {
    return a->kind == b->kind && a->left == b->left && a->right == b->right && a->name == b->name;
  }
};

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

class InternTable {
 public:
  const FormulaNode* intern(FormulaNode candidate) {
    candidate.hash = mix(static_cast<std::size_t>(candidate.kind), std::hash<std::string>{}(candidate.name));
    candidate.hash = mix(candidate.hash, reinterpret_cast<std::uintptr_t>(candidate.left));
    candidate.hash = mix(candidate.hash, reinterpret_cast<std::uintptr_t>(candidate.right));
    std::lock_guard lock(mutex_);
    if (auto it = table_.find(&candidate); it != table_.end()) return *it;
    storage_.push_back(std::move(candidate));
    const FormulaNode* stored = &storage_.back();
    table_.insert(stored);
    return stored;
  }

 private:
  std::mutex mutex_;
  std::deque<FormulaNode> storage_;
  std::unordered_set<const FormulaNode*, NodeKeyHash, NodeKeyEq> table_;
};

InternTable& table() {
  static InternTable instance;
  return instance;
}

}  // namespace
}  // namespace detail

Formula::Formula() : Formula(bottom()) {}

Formula Formula::bottom() {
  static const detail::FormulaNode* node = detail::table().intern({FormulaKind::Bottom, {}, nullptr, nullptr});
  return Formula(node);
}

Formula Formula::atom(std::string_view name) {
  if (name.empty() || !std::islower(static_cast<unsigned char>(name.front())))
    throw std::invalid_argument("invalid atom name '" + std::string(name) + "'");
  for (char c : name) {
    if (!(std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '_'))
      throw std::invalid_argument("invalid atom name '" + std::string(name) + "'");
  }
  if (name == "box" || name == "bot") throw std::invalid_argument("'" + std::string(name) + "' is a keyword");
  return Formula(detail::table().intern({FormulaKind::Atom, std::string(name), nullptr, nullptr}));
}

Formula Formula::implies(Formula left, Formula right) {
  detail::FormulaNode n{FormulaKind::Implies, {}, left.node_, right.node_};
  n.box_depth = std::max(left.node_->box_depth, right.node_->box_depth);
  n.size = 1 + left.node_->size + right.node_->size;
  return Formula(detail::table().intern(std::move(n)));
}

Formula Formula::box(Formula body) {
  detail::FormulaNode n{FormulaKind::Box, {}, body.node_, nullptr};
  n.box_depth = body.node_->box_depth + 1;
  n.size = 1 + body.node_->size;
  return Formula(detail::table().intern(std::move(n)));
}

FormulaKind Formula::kind() const noexcept { return node_->kind; }

const std::string& Formula::name() const {
  if (!is_atom()) throw std::logic_error("name() on non-atom " + to_string());
  return node_->name;
}

Formula Formula::left() const {
  if (!is_implies()) throw std::logic_error("left() on non-implication " + to_string());
  return Formula(node_->left);
}

Formula Formula::right() const {
  if (!is_implies()) throw std::logic_error("right() on non-implication " + to_string());
  return Formula(node_->right);
}

Formula Formula::body() const {
  if (!is_box()) throw std::logic_error("body() on non-box " + to_string());
  return Formula(node_->left);
}

std::size_t Formula::box_depth() const noexcept { return node_->box_depth; }
std::size_t Formula::size() const noexcept { return node_->size; }
std::size_t Formula::hash() const noexcept { return node_->hash; }

std::strong_ordering operator<=>(Formula a, Formula b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case FormulaKind::Bottom:
      return std::strong_ordering::equal;
    case FormulaKind::Atom:
      return a.node_->name.compare(b.node_->name) <=> 0;
    case FormulaKind::Implies:
      if (auto c = a.left() <=> b.left(); c != 0) return c;
      return a.right() <=> b.right();
    case FormulaKind::Box:
      return a.body() <=> b.body();
  }
  return std::strong_ordering::equal;
}

namespace {

void print(Formula f, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::Bottom:
      out += "bot";
      return;
    case FormulaKind::Atom:
      out += f.name();
      return;
    case FormulaKind::Implies:
      if (f.left().is_implies()) {
        out += '(';
        print(f.left(), out);
        out += ')';
      } else {
        print(f.left(), out);
      }
      out += " -> ";
      print(f.right(), out);
      return;
    case FormulaKind::Box:
      out += "box ";
      if (f.body().is_implies()) {
        out += '(';
        print(f.body(), out);
        out += ')';
      } else {
        print(f.body(), out);
      }
      return;
  }
}

class Parser {
 public:
  Parser(std::string_view text, std::size_t pos) : text_(text), pos_(pos) {}

  Formula implication() {
    Formula lhs = unary();
    skip_ws();
    if (text_.substr(pos_, 2) == "->") {
      pos_ += 2;
      return Formula::implies(lhs, implication());
    }
    return lhs;
  }

  std::size_t pos() const { return pos_; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

 private:
  Formula unary() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= text_.size()) throw SyntaxError("expected formula, found end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Formula inner = implication();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') throw SyntaxError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (!std::islower(static_cast<unsigned char>(c))) throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
    while (pos_ < text_.size() && (std::islower(static_cast<unsigned char>(text_[pos_])) ||
                                   std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string_view word = text_.substr(start, pos_ - start);
    if (word == "box") return Formula::box(unary());
    if (word == "bot") return Formula::bottom();
    return Formula::atom(word);
  }

  std::string_view text_;
  std::size_t pos_;
};

}  // namespace

std::string Formula::to_string() const {
  std::string out;
  print(*this, out);
  return out;
}

Formula parse_formula_prefix(std::string_view text, std::size_t& pos) {
  Parser parser(text, pos);
  Formula f = parser.implication();
  pos = parser.pos();
  return f;
}

Formula parse_formula(std::string_view text) {
  std::size_t pos = 0;
  Parser parser(text, pos);
  Formula f = parser.implication();
  parser.skip_ws();
  if (parser.pos() != text.size()) throw SyntaxError("trailing input", parser.pos());
  return f;
}

FormulaSet star_set(const FormulaSet& set) {
  FormulaSet out;
  for (Formula f : set) out.insert(Formula::implies(f, Formula::box(f)));
  return out;
}

FormulaSet set_union(const FormulaSet& a, const FormulaSet& b) {
  FormulaSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

FormulaSet set_difference(const FormulaSet& a, const FormulaSet& b) {
  FormulaSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

bool is_subset(const FormulaSet& a, const FormulaSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void collect_subformulas(Formula f, FormulaSet& out) {
  if (!out.insert(f).second) return;
  switch (f.kind()) {
    case FormulaKind::Implies:
      collect_subformulas(f.left(), out);
      collect_subformulas(f.right(), out);
      break;
    case FormulaKind::Box:
      collect_subformulas(f.body(), out);
      break;
    default:
      break;
  }
}

}  // namespace gocyclo
