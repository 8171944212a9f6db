#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "minc/team.hpp"

namespace minc {

/// Name of the accessibility relation of (unimodal) modal inclusion logic.
inline const std::string kAccessibility = "R";

/// Finite Kripke model with any number of named relations. Every model
/// declares the relation "R" (possibly empty). Propositions that were
/// never given a valuation are false everywhere.
class KripkeModel {
public:
  /// Worlds named w0, w1, ...; n must be positive.
  explicit KripkeModel(std::size_t n = 1);
  explicit KripkeModel(std::vector<std::string> worlds);

  std::size_t size() const noexcept { return worlds_.size(); }
  const std::vector<std::string>& worlds() const noexcept { return worlds_; }
  const std::string& world_name(std::size_t w) const { return worlds_.at(w); }
  std::optional<std::size_t> find_world(std::string_view name) const;
  /// Throws PreconditionError for undeclared names.
  std::size_t world_index(std::string_view name) const;

  void declare_relation(const std::string& rel);
  bool has_relation(const std::string& rel) const { return relations_.count(rel) != 0; }
  std::vector<std::string> relation_names() const;
  /// Declares `rel` if needed.
  void add_edge(const std::string& rel, std::size_t from, std::size_t to);
  bool has_edge(const std::string& rel, std::size_t from, std::size_t to) const;
  /// Throws UnknownRelation.
  const Team& successors(const std::string& rel, std::size_t w) const;
  const Team& predecessors(const std::string& rel, std::size_t w) const;
  std::size_t edge_count(const std::string& rel) const;

  void set_valuation(const std::string& prop, Team worlds);
  const Team& valuation(const std::string& prop) const;
  bool has_proposition(const std::string& prop) const { return valuation_.count(prop) != 0; }
  std::vector<std::string> proposition_names() const;
  bool holds(const std::string& prop, std::size_t w) const { return valuation(prop).contains(w); }

  Team empty_team() const { return Team(size()); }
  Team full_team() const { return Team::full(size()); }

  friend bool operator==(const KripkeModel& a, const KripkeModel& b);

private:
  struct Relation {
    std::vector<Team> succ;
    std::vector<Team> pred;
    friend bool operator==(const Relation&, const Relation&) = default;
  };
  const Relation& relation(const std::string& rel) const;

  std::vector<std::string> worlds_;
  std::map<std::string, Relation> relations_;
  std::map<std::string, Team> valuation_;
  Team empty_;
};

/// A model together with a team of it.
struct TeamWitness {
  KripkeModel model;
  Team team;
};

/// R(T): all worlds with a `rel`-predecessor in T.
Team successors(const KripkeModel& m, const std::string& rel, const Team& t);

/// True iff every world of `t` has a successor in `next` and every world of
/// `next` has a predecessor in `t`.
bool is_legal_successor_team(const KripkeModel& m, const std::string& rel, const Team& t,
                             const Team& next);

/// Visits the legal successor teams of `t` in ascending bitset order
/// (subsets of R(T) satisfying both conditions). Returns true if `visit`
/// stopped the enumeration.
bool for_each_legal_successor_team(const KripkeModel& m, const std::string& rel, const Team& t,
                                   const std::function<bool(const Team&)>& visit);
std::vector<Team> legal_successor_teams(const KripkeModel& m, const std::string& rel,
                                        const Team& t);

/// T(p1, ..., pn): the truth-value vectors of `props` realised in `t`.
std::set<std::vector<bool>> team_tuples(const KripkeModel& m, const Team& t,
                                        const std::vector<std::string>& props);

/// Same worlds, only the listed relations (declared even if absent) and
/// propositions.
KripkeModel restrict_signature(const KripkeModel& m, const std::set<std::string>& relations,
                               const std::set<std::string>& props);

/// JSON model documents:
///   {"worlds": [...], "relations": {"R": [[w, v], ...]}, "valuation": {"p": [...]}}
/// Saving is canonical: sorted keys, pairs and members in world order.
KripkeModel load_model(std::string_view text);
std::string save_model(const KripkeModel& m, int indent = 2);

/// Teams are JSON arrays of world names.
Team load_team(const KripkeModel& m, std::string_view text);
std::string save_team(const KripkeModel& m, const Team& t);
Team team_from_names(const KripkeModel& m, const std::vector<std::string>& names);
std::vector<std::string> team_names(const KripkeModel& m, const Team& t);

/// Finite relational structure with unary and binary predicates.
class FoStructure {
public:
  explicit FoStructure(std::size_t n = 1);
  explicit FoStructure(std::vector<std::string> domain);

  std::size_t size() const noexcept { return domain_.size(); }
  const std::vector<std::string>& domain() const noexcept { return domain_; }
  std::size_t element_index(std::string_view name) const;

  void set_unary(const std::string& pred, Team members);
  const Team& unary(const std::string& pred) const;
  std::vector<std::string> unary_names() const;

  void declare_binary(const std::string& pred);
  void add_pair(const std::string& pred, std::size_t a, std::size_t b);
  /// Undeclared binary predicates are empty.
  bool holds(const std::string& pred, std::size_t a, std::size_t b) const;
  /// Row of `a`: all b with pred(a, b).
  const Team& row(const std::string& pred, std::size_t a) const;
  std::vector<std::string> binary_names() const;

  friend bool operator==(const FoStructure&, const FoStructure&) = default;

private:
  std::vector<std::string> domain_;
  std::map<std::string, Team> unary_;
  std::map<std::string, std::vector<Team>> binary_;
  Team empty_;
};

/// Relations become binary predicates, propositions unary ones.
FoStructure to_fo_structure(const KripkeModel& m);
KripkeModel to_kripke(const FoStructure& a);

/// {"domain": [...], "unary": {"P": [...]}, "binary": {"R": [[a, b], ...]}}
FoStructure load_structure(std::string_view text);
std::string save_structure(const FoStructure& a, int indent = 2);

} // namespace minc
