#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "minc/circuit.hpp"
#include "minc/formula.hpp"
#include "minc/kripke.hpp"
#include "minc/per.hpp"
#include "minc/qbf.hpp"

namespace minc {

struct FormulaGenOptions {
  std::vector<std::string> props{"p", "q"};
  std::size_t max_depth = 2;
  std::size_t max_inclusions = 0;
  std::size_t max_arity = 2;
  bool modalities = true;
};

/// Random formula of depth at most max_depth.
FormulaPtr random_formula(std::mt19937_64& rng, const FormulaGenOptions& opts);

/// `count` pairwise distinct formulas (by printed form) drawn from a
/// generator seeded with `seed`. Depth grows with the draw so small
/// formulas are well represented.
std::vector<FormulaPtr> formula_corpus(const FormulaGenOptions& opts, std::size_t count,
                                       std::uint64_t seed);

/// Model with n worlds over `props`, each edge of R present with
/// probability edge_p and each valuation bit a fair coin.
KripkeModel random_model(std::mt19937_64& rng, std::size_t n,
                         const std::vector<std::string>& props, double edge_p = 0.35);

/// Instance over {1..n} keeping each of the n^3 triples with probability
/// triple_p.
PerInstance random_per(std::mt19937_64& rng, std::uint32_t n, double triple_p);

/// Every circuit with l = 1 and at most `max_internal` internal gates,
/// each NOT g_j, AND g_j g_k or OR g_j g_k with j < k over earlier gates.
std::vector<Circuit> circuit_corpus_l1(std::size_t max_internal = 3);

/// DQBF instances with at most two existentials:
///   forall p1 exists q1 ((a q1 o a p1) o' (a q1 o'' a p1)) with signs a,
///   connectives o and P1 in {{}, {p1}};
///   forall p1 exists q1 forall p2 exists q2 ((a q1 | a pi) & (a q2 | a pj))
///   with i, j in {1, 2}, P1 in {{}, {p1}} and P2 any subset of {p1, p2}.
std::vector<DqbfInstance> dqbf_corpus();

} // namespace minc
