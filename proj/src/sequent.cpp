#include "gocyclo/sequent.hpp"

#include <algorithm>
#include <cctype>

namespace gocyclo {

FormulaMultiset::FormulaMultiset(std::initializer_list<Formula> formulas) {
  for (Formula f : formulas) add(f);
}

FormulaMultiset::FormulaMultiset(const std::vector<Formula>& formulas) {
  for (Formula f : formulas) add(f);
}

FormulaMultiset::FormulaMultiset(const FormulaSet& formulas) {
  for (Formula f : formulas) add(f);
}

void FormulaMultiset::add(Formula f, std::size_t times) {
  if (times == 0) return;
  counts_[f] += times;
  size_ += times;
}

std::size_t FormulaMultiset::remove(Formula f, std::size_t times) {
  auto it = counts_.find(f);
  if (it == counts_.end() || times == 0) return 0;
  std::size_t removed = std::min(times, it->second);
  it->second -= removed;
  size_ -= removed;
  if (it->second == 0) counts_.erase(it);
  return removed;
}

std::size_t FormulaMultiset::count(Formula f) const {
  auto it = counts_.find(f);
  return it == counts_.end() ? 0 : it->second;
}

std::vector<Formula> FormulaMultiset::elements() const {
  std::vector<Formula> out;
  out.reserve(size_);
  for (const auto& [f, n] : counts_) out.insert(out.end(), n, f);
  return out;
}

FormulaSet FormulaMultiset::support() const {
  FormulaSet out;
  for (const auto& [f, n] : counts_) out.insert(f);
  return out;
}

FormulaMultiset FormulaMultiset::with(Formula f) const {
  FormulaMultiset out = *this;
  out.add(f);
  return out;
}

FormulaMultiset FormulaMultiset::without(Formula f) const {
  FormulaMultiset out = *this;
  out.remove(f);
  return out;
}

FormulaMultiset sum(const FormulaMultiset& a, const FormulaMultiset& b) {
  FormulaMultiset out = a;
  for (const auto& [f, n] : b.counts()) out.add(f, n);
  return out;
}

FormulaMultiset set_union(const FormulaMultiset& a, const FormulaMultiset& b) {
  FormulaMultiset out = a;
  for (const auto& [f, n] : b.counts()) {
    std::size_t have = out.count(f);
    if (n > have) out.add(f, n - have);
  }
  return out;
}

FormulaMultiset difference(const FormulaMultiset& a, const FormulaMultiset& b) {
  FormulaMultiset out = a;
  for (const auto& [f, n] : b.counts()) out.remove(f, n);
  return out;
}

FormulaMultiset intersection(const FormulaMultiset& a, const FormulaMultiset& b) {
  FormulaMultiset out;
  for (const auto& [f, n] : a.counts()) out.add(f, std::min(n, b.count(f)));
  return out;
}

bool is_submultiset(const FormulaMultiset& a, const FormulaMultiset& b) {
  for (const auto& [f, n] : a.counts())
    if (b.count(f) < n) return false;
  return true;
}

FormulaMultiset box_all(const FormulaMultiset& g) {
  FormulaMultiset out;
  for (const auto& [f, n] : g.counts()) out.add(Formula::box(f), n);
  return out;
}

FormulaMultiset boxtimes(const FormulaMultiset& g) { return sum(g, box_all(g)); }

std::string to_string(const FormulaMultiset& m) {
  std::string out;
  for (Formula f : m.elements()) {
    if (!out.empty()) out += ", ";
    out += f.to_string();
  }
  return out;
}

std::string Sequent::to_string() const {
  std::string lhs = gocyclo::to_string(ante);
  std::string rhs = gocyclo::to_string(succ);
  std::string out = lhs;
  if (!lhs.empty()) out += ' ';
  out += "|-";
  if (!rhs.empty()) out += ' ' + rhs;
  return out;
}

namespace {
void skip_ws(std::string_view text, std::size_t& pos) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
}

bool starts_formula(std::string_view text, std::size_t pos) {
  return pos < text.size() && (text[pos] == '(' || std::islower(static_cast<unsigned char>(text[pos])));
}
}  // namespace

std::vector<Formula> parse_formula_list(std::string_view text, std::size_t& pos) {
  std::vector<Formula> out;
  skip_ws(text, pos);
  if (!starts_formula(text, pos)) return out;
  for (;;) {
    out.push_back(parse_formula_prefix(text, pos));
    skip_ws(text, pos);
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      skip_ws(text, pos);
      if (!starts_formula(text, pos)) throw SyntaxError("expected formula after ','", pos);
      continue;
    }
    return out;
  }
}

Sequent parse_sequent(std::string_view text) {
  std::size_t pos = 0;
  Sequent s;
  s.ante = FormulaMultiset(parse_formula_list(text, pos));
  skip_ws(text, pos);
  if (text.substr(pos, 2) != "|-") throw SyntaxError("expected '|-'", pos);
  pos += 2;
  s.succ = FormulaMultiset(parse_formula_list(text, pos));
  skip_ws(text, pos);
  if (pos != text.size()) throw SyntaxError("trailing input", pos);
  return s;
}

FormulaSet subformulas(const Sequent& s) {
  FormulaSet out;
  for (const auto& [f, n] : s.ante.counts()) collect_subformulas(f, out);
  for (const auto& [f, n] : s.succ.counts()) collect_subformulas(f, out);
  return out;
}

bool is_initial_inf(const Sequent& s) {
  if (s.ante.contains(Formula::bottom())) return true;
  for (const auto& [f, n] : s.ante.counts())
    if (f.is_atom() && s.succ.contains(f)) return true;
  return false;
}

}  // namespace gocyclo
