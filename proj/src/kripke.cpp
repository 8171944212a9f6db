#include "minc/kripke.hpp"

#include <algorithm>
#include <unordered_map>

#include <json.hpp>

#include "minc/error.hpp"

namespace minc {

using nlohmann::json;

namespace {

std::vector<std::string> default_names(std::size_t n, char prefix) {
  if (n == 0) {
    throw PreconditionError("a model needs at least one world");
  }
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(prefix + std::to_string(i));
  }
  return out;
}

void check_names(const std::vector<std::string>& names, const char* what) {
  if (names.empty()) {
    throw PreconditionError(std::string("a model needs at least one ") + what);
  }
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) {
      throw PreconditionError(std::string(what) + " names must be nonempty");
    }
    if (!seen.insert(n).second) {
      throw PreconditionError(std::string("duplicate ") + what + " '" + n + "'");
    }
  }
}

} // namespace

KripkeModel::KripkeModel(std::size_t n) : KripkeModel(default_names(n, 'w')) {}

KripkeModel::KripkeModel(std::vector<std::string> worlds)
    : worlds_(std::move(worlds)), empty_(worlds_.size()) {
  check_names(worlds_, "world");
  declare_relation(kAccessibility);
}

std::optional<std::size_t> KripkeModel::find_world(std::string_view name) const {
  for (std::size_t i = 0; i < worlds_.size(); ++i) {
    if (worlds_[i] == name) {
      return i;
    }
  }
  return std::nullopt;
}

std::size_t KripkeModel::world_index(std::string_view name) const {
  if (auto w = find_world(name)) {
    return *w;
  }
  throw PreconditionError("undeclared world '" + std::string(name) + "'");
}

void KripkeModel::declare_relation(const std::string& rel) {
  if (rel.empty()) {
    throw PreconditionError("relation names must be nonempty");
  }
  if (relations_.count(rel)) {
    return;
  }
  Relation r;
  r.succ.assign(size(), Team(size()));
  r.pred.assign(size(), Team(size()));
  relations_.emplace(rel, std::move(r));
}

std::vector<std::string> KripkeModel::relation_names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : relations_) {
    out.push_back(name);
  }
  return out;
}

void KripkeModel::add_edge(const std::string& rel, std::size_t from, std::size_t to) {
  if (from >= size() || to >= size()) {
    throw PreconditionError("edge endpoint out of range");
  }
  declare_relation(rel);
  auto& r = relations_.at(rel);
  r.succ[from].insert(to);
  r.pred[to].insert(from);
}

bool KripkeModel::has_edge(const std::string& rel, std::size_t from, std::size_t to) const {
  return relation(rel).succ.at(from).contains(to);
}

const KripkeModel::Relation& KripkeModel::relation(const std::string& rel) const {
  auto it = relations_.find(rel);
  if (it == relations_.end()) {
    throw UnknownRelation(rel);
  }
  return it->second;
}

const Team& KripkeModel::successors(const std::string& rel, std::size_t w) const {
  return relation(rel).succ.at(w);
}

const Team& KripkeModel::predecessors(const std::string& rel, std::size_t w) const {
  return relation(rel).pred.at(w);
}

std::size_t KripkeModel::edge_count(const std::string& rel) const {
  std::size_t c = 0;
  for (const auto& t : relation(rel).succ) {
    c += t.count();
  }
  return c;
}

void KripkeModel::set_valuation(const std::string& prop, Team worlds) {
  if (prop.empty()) {
    throw PreconditionError("proposition names must be nonempty");
  }
  if (worlds.universe() != size()) {
    throw PreconditionError("valuation of '" + prop + "' is over a different world set");
  }
  valuation_[prop] = std::move(worlds);
}

const Team& KripkeModel::valuation(const std::string& prop) const {
  auto it = valuation_.find(prop);
  return it == valuation_.end() ? empty_ : it->second;
}

std::vector<std::string> KripkeModel::proposition_names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : valuation_) {
    out.push_back(name);
  }
  return out;
}

bool operator==(const KripkeModel& a, const KripkeModel& b) {
  if (a.worlds_ != b.worlds_ || a.relations_ != b.relations_) {
    return false;
  }
  // Propositions with an empty valuation are indistinguishable from absent ones.
  auto nonempty = [](const std::map<std::string, Team>& v) {
    std::map<std::string, Team> out;
    for (const auto& [k, t] : v) {
      if (!t.empty()) {
        out.emplace(k, t);
      }
    }
    return out;
  };
  return nonempty(a.valuation_) == nonempty(b.valuation_);
}

Team successors(const KripkeModel& m, const std::string& rel, const Team& t) {
  Team out(m.size());
  for (std::size_t w : t.members()) {
    out |= m.successors(rel, w);
  }
  return out;
}

bool is_legal_successor_team(const KripkeModel& m, const std::string& rel, const Team& t,
                             const Team& next) {
  for (std::size_t w : t.members()) {
    if (!m.successors(rel, w).intersects(next)) {
      return false;
    }
  }
  for (std::size_t v : next.members()) {
    if (!m.predecessors(rel, v).intersects(t)) {
      return false;
    }
  }
  return true;
}

bool for_each_legal_successor_team(const KripkeModel& m, const std::string& rel, const Team& t,
                                   const std::function<bool(const Team&)>& visit) {
  const auto members = t.members();
  for (std::size_t w : members) {
    if (m.successors(rel, w).empty()) {
      return false;
    }
  }
  const Team image = successors(m, rel, t);
  return for_each_subset(image, [&](const Team& next) {
    for (std::size_t w : members) {
      if (!m.successors(rel, w).intersects(next)) {
        return false;
      }
    }
    return visit(next);
  });
}

std::vector<Team> legal_successor_teams(const KripkeModel& m, const std::string& rel,
                                        const Team& t) {
  std::vector<Team> out;
  for_each_legal_successor_team(m, rel, t, [&](const Team& next) {
    out.push_back(next);
    return false;
  });
  return out;
}

std::set<std::vector<bool>> team_tuples(const KripkeModel& m, const Team& t,
                                        const std::vector<std::string>& props) {
  std::set<std::vector<bool>> out;
  std::vector<const Team*> vals;
  vals.reserve(props.size());
  for (const auto& p : props) {
    vals.push_back(&m.valuation(p));
  }
  for (std::size_t w : t.members()) {
    std::vector<bool> row(props.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
      row[i] = vals[i]->contains(w);
    }
    out.insert(std::move(row));
  }
  return out;
}

KripkeModel restrict_signature(const KripkeModel& m, const std::set<std::string>& relations,
                               const std::set<std::string>& props) {
  KripkeModel out(m.worlds());
  for (const auto& rel : relations) {
    out.declare_relation(rel);
    if (!m.has_relation(rel)) {
      continue;
    }
    for (std::size_t w = 0; w < m.size(); ++w) {
      for (std::size_t v : m.successors(rel, w).members()) {
        out.add_edge(rel, w, v);
      }
    }
  }
  for (const auto& p : props) {
    out.set_valuation(p, m.valuation(p));
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte == 0 ? 0 : e.byte - 1);
  }
}

const json& require_field(const json& doc, const std::string& key, const std::string& path) {
  if (!doc.is_object()) {
    throw SchemaError(path.empty() ? "$" : path, "expected an object");
  }
  auto it = doc.find(key);
  if (it == doc.end()) {
    throw SchemaError(path.empty() ? key : path + "." + key, "missing field");
  }
  return *it;
}

std::vector<std::string> read_names(const json& arr, const std::string& path) {
  if (!arr.is_array()) {
    throw SchemaError(path, "expected an array of names");
  }
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string here = path + "[" + std::to_string(i) + "]";
    if (!arr[i].is_string() || arr[i].get<std::string>().empty()) {
      throw SchemaError(here, "expected a nonempty string");
    }
    auto name = arr[i].get<std::string>();
    if (!seen.insert(name).second) {
      throw SchemaError(here, "duplicate name '" + name + "'");
    }
    out.push_back(std::move(name));
  }
  if (out.empty()) {
    throw SchemaError(path, "at least one element is required");
  }
  return out;
}

using Lookup = std::unordered_map<std::string, std::size_t>;

Lookup make_lookup(const std::vector<std::string>& names) {
  Lookup out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    out.emplace(names[i], i);
  }
  return out;
}

std::size_t resolve(const Lookup& lookup, const json& v, const std::string& path) {
  if (!v.is_string()) {
    throw SchemaError(path, "expected a world name");
  }
  auto it = lookup.find(v.get<std::string>());
  if (it == lookup.end()) {
    throw SchemaError(path, "undeclared world '" + v.get<std::string>() + "'");
  }
  return it->second;
}

Team read_member_set(const Lookup& lookup, std::size_t n, const json& arr,
                     const std::string& path) {
  if (!arr.is_array()) {
    throw SchemaError(path, "expected an array of world names");
  }
  Team t(n);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    t.insert(resolve(lookup, arr[i], path + "[" + std::to_string(i) + "]"));
  }
  return t;
}

template <class AddPair>
void read_pairs(const Lookup& lookup, const json& arr, const std::string& path, AddPair add) {
  if (!arr.is_array()) {
    throw SchemaError(path, "expected an array of pairs");
  }
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string here = path + "[" + std::to_string(i) + "]";
    if (!arr[i].is_array() || arr[i].size() != 2) {
      throw SchemaError(here, "expected a pair [from, to]");
    }
    add(resolve(lookup, arr[i][0], here + "[0]"), resolve(lookup, arr[i][1], here + "[1]"));
  }
}

json member_array(const std::vector<std::string>& names, const Team& t) {
  json arr = json::array();
  for (std::size_t w : t.members()) {
    arr.push_back(names[w]);
  }
  return arr;
}

void reject_unknown_keys(const json& doc, std::initializer_list<const char*> allowed,
                         const std::string& path) {
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&](const char* k) { return it.key() == k; })) {
      throw SchemaError(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
    }
  }
}

} // namespace

KripkeModel load_model(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) {
    throw SchemaError("$", "expected an object");
  }
  reject_unknown_keys(doc, {"worlds", "relations", "valuation"}, "");
  KripkeModel m(read_names(require_field(doc, "worlds", ""), "worlds"));
  const Lookup lookup = make_lookup(m.worlds());
  if (auto it = doc.find("relations"); it != doc.end()) {
    if (!it->is_object()) {
      throw SchemaError("relations", "expected an object");
    }
    for (auto rel = it->begin(); rel != it->end(); ++rel) {
      if (rel.key().empty()) {
        throw SchemaError("relations", "empty relation name");
      }
      m.declare_relation(rel.key());
      read_pairs(lookup, rel.value(), "relations." + rel.key(),
                 [&](std::size_t a, std::size_t b) { m.add_edge(rel.key(), a, b); });
    }
  }
  if (auto it = doc.find("valuation"); it != doc.end()) {
    if (!it->is_object()) {
      throw SchemaError("valuation", "expected an object");
    }
    for (auto p = it->begin(); p != it->end(); ++p) {
      if (p.key().empty()) {
        throw SchemaError("valuation", "empty proposition name");
      }
      m.set_valuation(p.key(),
                      read_member_set(lookup, m.size(), p.value(), "valuation." + p.key()));
    }
  }
  return m;
}

std::string save_model(const KripkeModel& m, int indent) {
  json doc;
  doc["worlds"] = m.worlds();
  json rels = json::object();
  for (const auto& rel : m.relation_names()) {
    json pairs = json::array();
    for (std::size_t w = 0; w < m.size(); ++w) {
      for (std::size_t v : m.successors(rel, w).members()) {
        pairs.push_back({m.world_name(w), m.world_name(v)});
      }
    }
    rels[rel] = std::move(pairs);
  }
  doc["relations"] = std::move(rels);
  json val = json::object();
  for (const auto& p : m.proposition_names()) {
    val[p] = member_array(m.worlds(), m.valuation(p));
  }
  doc["valuation"] = std::move(val);
  return doc.dump(indent);
}

Team load_team(const KripkeModel& m, std::string_view text) {
  return read_member_set(make_lookup(m.worlds()), m.size(), parse_json(text), "team");
}

std::string save_team(const KripkeModel& m, const Team& t) {
  return member_array(m.worlds(), t).dump();
}

Team team_from_names(const KripkeModel& m, const std::vector<std::string>& names) {
  Team t(m.size());
  for (const auto& n : names) {
    t.insert(m.world_index(n));
  }
  return t;
}

std::vector<std::string> team_names(const KripkeModel& m, const Team& t) {
  std::vector<std::string> out;
  for (std::size_t w : t.members()) {
    out.push_back(m.world_name(w));
  }
  return out;
}

// ---------------------------------------------------------------------------
// First-order structures

FoStructure::FoStructure(std::size_t n) : FoStructure(default_names(n, 'e')) {}

FoStructure::FoStructure(std::vector<std::string> domain)
    : domain_(std::move(domain)), empty_(domain_.size()) {
  check_names(domain_, "element");
}

std::size_t FoStructure::element_index(std::string_view name) const {
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    if (domain_[i] == name) {
      return i;
    }
  }
  throw PreconditionError("undeclared element '" + std::string(name) + "'");
}

void FoStructure::set_unary(const std::string& pred, Team members) {
  if (members.universe() != size()) {
    throw PreconditionError("interpretation of '" + pred + "' is over a different domain");
  }
  unary_[pred] = std::move(members);
}

const Team& FoStructure::unary(const std::string& pred) const {
  auto it = unary_.find(pred);
  return it == unary_.end() ? empty_ : it->second;
}

std::vector<std::string> FoStructure::unary_names() const {
  std::vector<std::string> out;
  for (const auto& [k, _] : unary_) {
    out.push_back(k);
  }
  return out;
}

void FoStructure::declare_binary(const std::string& pred) {
  binary_.try_emplace(pred, size(), Team(size()));
}

void FoStructure::add_pair(const std::string& pred, std::size_t a, std::size_t b) {
  if (a >= size() || b >= size()) {
    throw PreconditionError("pair out of range");
  }
  declare_binary(pred);
  binary_.at(pred)[a].insert(b);
}

bool FoStructure::holds(const std::string& pred, std::size_t a, std::size_t b) const {
  return row(pred, a).contains(b);
}

const Team& FoStructure::row(const std::string& pred, std::size_t a) const {
  auto it = binary_.find(pred);
  return it == binary_.end() ? empty_ : it->second.at(a);
}

std::vector<std::string> FoStructure::binary_names() const {
  std::vector<std::string> out;
  for (const auto& [k, _] : binary_) {
    out.push_back(k);
  }
  return out;
}

FoStructure to_fo_structure(const KripkeModel& m) {
  FoStructure a(m.worlds());
  for (const auto& rel : m.relation_names()) {
    a.declare_binary(rel);
    for (std::size_t w = 0; w < m.size(); ++w) {
      for (std::size_t v : m.successors(rel, w).members()) {
        a.add_pair(rel, w, v);
      }
    }
  }
  for (const auto& p : m.proposition_names()) {
    a.set_unary(p, m.valuation(p));
  }
  return a;
}

KripkeModel to_kripke(const FoStructure& a) {
  KripkeModel m(a.domain());
  for (const auto& rel : a.binary_names()) {
    m.declare_relation(rel);
    for (std::size_t w = 0; w < a.size(); ++w) {
      for (std::size_t v : a.row(rel, w).members()) {
        m.add_edge(rel, w, v);
      }
    }
  }
  for (const auto& p : a.unary_names()) {
    m.set_valuation(p, a.unary(p));
  }
  return m;
}

FoStructure load_structure(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) {
    throw SchemaError("$", "expected an object");
  }
  reject_unknown_keys(doc, {"domain", "unary", "binary"}, "");
  FoStructure a(read_names(require_field(doc, "domain", ""), "domain"));
  const Lookup lookup = make_lookup(a.domain());
  if (auto it = doc.find("unary"); it != doc.end()) {
    if (!it->is_object()) {
      throw SchemaError("unary", "expected an object");
    }
    for (auto p = it->begin(); p != it->end(); ++p) {
      a.set_unary(p.key(), read_member_set(lookup, a.size(), p.value(), "unary." + p.key()));
    }
  }
  if (auto it = doc.find("binary"); it != doc.end()) {
    if (!it->is_object()) {
      throw SchemaError("binary", "expected an object");
    }
    for (auto r = it->begin(); r != it->end(); ++r) {
      a.declare_binary(r.key());
      read_pairs(lookup, r.value(), "binary." + r.key(),
                 [&](std::size_t x, std::size_t y) { a.add_pair(r.key(), x, y); });
    }
  }
  return a;
}

std::string save_structure(const FoStructure& a, int indent) {
  json doc;
  doc["domain"] = a.domain();
  json un = json::object();
  for (const auto& p : a.unary_names()) {
    un[p] = member_array(a.domain(), a.unary(p));
  }
  doc["unary"] = std::move(un);
  json bin = json::object();
  for (const auto& r : a.binary_names()) {
    json pairs = json::array();
    for (std::size_t x = 0; x < a.size(); ++x) {
      for (std::size_t y : a.row(r, x).members()) {
        pairs.push_back({a.domain()[x], a.domain()[y]});
      }
    }
    bin[r] = std::move(pairs);
  }
  doc["binary"] = std::move(bin);
  return doc.dump(indent);
}

} // namespace minc
