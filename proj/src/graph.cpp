#include "gocyclo/graph.hpp"

#include <cctype>
#include <functional>
#include <set>
#include <stdexcept>

namespace gocyclo {

void ProofGraph::add(const std::string& id, GraphNode node) {
  if (!nodes_.emplace(id, std::move(node)).second) throw std::invalid_argument("duplicate node id '" + id + "'");
  order_.push_back(id);
}

const GraphNode& ProofGraph::at(const std::string& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw std::out_of_range("unknown node id '" + id + "'");
  return it->second;
}

GraphNode& ProofGraph::at(const std::string& id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw std::out_of_range("unknown node id '" + id + "'");
  return it->second;
}

void ProofGraph::validate_references() const {
  if (root.empty() || !contains(root)) throw std::invalid_argument("root '" + root + "' is not a node");
  for (const auto& id : order_)
    for (const auto& p : nodes_.at(id).premises)
      if (!contains(p)) throw std::invalid_argument("node '" + id + "' refers to unknown premise '" + p + "'");
}

std::vector<std::string> ProofGraph::reachable() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  std::vector<std::string> stack{root};
  while (!stack.empty()) {
    std::string id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second) continue;
    out.push_back(id);
    const auto& prem = at(id).premises;
    for (auto it = prem.rbegin(); it != prem.rend(); ++it)
      if (!seen.count(*it)) stack.push_back(*it);
  }
  return out;
}

bool ProofGraph::has_tag(bool (*pred)(const Rule&)) const {
  for (const auto& id : order_)
    if (pred(nodes_.at(id).rule)) return true;
  return false;
}

namespace {

bool id_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'; }

void skip_ws(std::string_view t, std::size_t& pos) {
  while (pos < t.size() && std::isspace(static_cast<unsigned char>(t[pos]))) ++pos;
}

std::string read_id(std::string_view t, std::size_t& pos) {
  skip_ws(t, pos);
  std::size_t start = pos;
  while (pos < t.size() && id_char(t[pos])) ++pos;
  if (pos == start) throw SyntaxError("expected node id", pos);
  return std::string(t.substr(start, pos - start));
}

void expect(std::string_view t, std::size_t& pos, std::string_view token) {
  skip_ws(t, pos);
  if (t.substr(pos, token.size()) != token) throw SyntaxError("expected '" + std::string(token) + "'", pos);
  pos += token.size();
}

void parse_node_line(std::string_view line, ProofGraph& g) {
  std::size_t pos = 4;  // after "node"
  std::string id = read_id(line, pos);
  expect(line, pos, ":");
  std::size_t semi = line.find(';', pos);
  if (semi == std::string_view::npos) throw SyntaxError("expected ';' after sequent", line.size());
  Sequent s;
  try {
    s = parse_sequent(line.substr(pos, semi - pos));
  } catch (const SyntaxError& e) {
    throw SyntaxError(e.message(), pos + e.position());
  }
  pos = semi + 1;
  expect(line, pos, "rule=");
  Rule rule = parse_rule(line, pos);
  expect(line, pos, ";");
  expect(line, pos, "premises=[");
  std::vector<std::string> premises;
  skip_ws(line, pos);
  if (pos < line.size() && line[pos] != ']') {
    for (;;) {
      premises.push_back(read_id(line, pos));
      skip_ws(line, pos);
      if (pos < line.size() && line[pos] == ',') {
        ++pos;
        continue;
      }
      break;
    }
  }
  expect(line, pos, "]");
  skip_ws(line, pos);
  if (pos != line.size()) throw SyntaxError("trailing input", pos);
  if (premises.size() != arity(rule))
    throw SyntaxError("node '" + id + "' has " + std::to_string(premises.size()) + " premises, rule needs " +
                          std::to_string(arity(rule)),
                      0);
  if (g.contains(id)) throw SyntaxError("duplicate node id '" + id + "'", 5);
  g.add(id, GraphNode{std::move(s), std::move(rule), std::move(premises)});
}

}  // namespace

ProofGraph parse_proof_graph(std::string_view text) {
  ProofGraph g;
  bool have_header = false;
  bool have_root = false;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t end = text.find('\n', offset);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(offset, end - offset);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    std::size_t lead = 0;
    while (lead < line.size() && std::isspace(static_cast<unsigned char>(line[lead]))) ++lead;
    line.remove_prefix(lead);
    std::size_t line_start = offset + lead;
    try {
      if (line.empty() || line.front() == '#') {
      } else if (line.substr(0, 6) == "proof ") {
        if (have_header) throw SyntaxError("second 'proof' header", 0);
        std::size_t p = 6;
        skip_ws(line, p);
        g.name = std::string(line.substr(p));
        have_header = true;
      } else if (line.substr(0, 5) == "node ") {
        if (!have_header) throw SyntaxError("node before 'proof' header", 0);
        parse_node_line(line, g);
      } else if (line.substr(0, 5) == "root ") {
        if (have_root) throw SyntaxError("second 'root' line", 0);
        std::size_t p = 5;
        g.root = read_id(line, p);
        skip_ws(line, p);
        if (p != line.size()) throw SyntaxError("trailing input", p);
        have_root = true;
      } else {
        throw SyntaxError("unrecognised line", 0);
      }
    } catch (const SyntaxError& e) {
      throw SyntaxError(e.message(), line_start + e.position());
    }
    offset = end + 1;
  }
  if (!have_header) throw SyntaxError("missing 'proof' header", 0);
  if (!have_root) throw SyntaxError("missing 'root' line", text.size());
  try {
    g.validate_references();
  } catch (const std::invalid_argument& e) {
    throw SyntaxError(e.what(), text.size());
  }
  return g;
}

std::string write_proof_graph(const ProofGraph& g) {
  std::string out = "proof " + g.name + "\n";
  for (const auto& id : g.ids()) {
    const GraphNode& n = g.at(id);
    out += "node " + id + ": " + n.sequent.to_string() + " ; rule=" + rule_to_string(n.rule) + " ; premises=[";
    for (std::size_t i = 0; i < n.premises.size(); ++i) {
      if (i) out += ',';
      out += n.premises[i];
    }
    out += "]\n";
  }
  out += "root " + g.root + "\n";
  return out;
}

}  // namespace gocyclo
