#pragma once

// Brute-force reference implementations. They share no code with the
// library beyond its data types.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "minc/atm.hpp"
#include "minc/formula.hpp"
#include "minc/kripke.hpp"
#include "minc/per.hpp"
#include "minc/qbf.hpp"

namespace minc::oracle {

/// Classical truth of an inclusion-free formula at w.
bool kripke_truth(const KripkeModel& m, std::size_t w, const Formula& f);

/// Truth of a propositional formula (literals, & and |) under `a`.
bool propositional_truth(const Formula& f, const std::map<std::string, bool>& a);

/// Union of all persistent subsets, found by trying all 2^n subsets.
std::set<std::uint32_t> persistent_union(const PerInstance& inst);

/// Conditions 2-5 read directly off the machine: does the circuit for
/// (m, w) have to accept the 3l-bit input x (first input bit most
/// significant)?
bool conditions_accept(const Atm& m, const std::vector<bool>& w, std::uint64_t x);

/// Exists a tuple of Skolem tables, one per existential over its
/// dependency set, making the matrix true under every universal assignment.
bool skolem_truth(const DqbfInstance& d);

} // namespace minc::oracle
