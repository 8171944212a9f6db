#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace minc {

using Triple = std::array<std::uint32_t, 3>;

/// A = {1..n} with S a set of triples over A.
struct PerInstance {
  std::uint32_t n = 1;
  std::vector<Triple> triples; // sorted, no duplicates

  void add(std::uint32_t i, std::uint32_t j, std::uint32_t k);
  void normalize();
};

/// Throws PreconditionError for triples outside A.
void validate(const PerInstance& inst);

/// Every i in p has j, k in p with (i, j, k) in S.
bool is_persistent(const PerInstance& inst, const std::set<std::uint32_t>& p);

/// The largest S-persistent subset of A, by repeatedly discarding
/// unsupported elements starting from A.
std::set<std::uint32_t> persistent_gfp(const PerInstance& inst);

/// n belongs to some persistent set.
bool per_check(const PerInstance& inst);

/// `{"n": 2, "triples": [[1,1,1], ...]}`
PerInstance load_per(std::string_view text);
std::string save_per(const PerInstance& inst, int indent = -1);

} // namespace minc
