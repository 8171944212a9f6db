#include "minc/per.hpp"

#include <algorithm>

#include <json.hpp>

#include "minc/error.hpp"

namespace minc {

void PerInstance::add(std::uint32_t i, std::uint32_t j, std::uint32_t k) {
  triples.push_back({i, j, k});
}

void PerInstance::normalize() {
  std::sort(triples.begin(), triples.end());
  triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
}

void validate(const PerInstance& inst) {
  if (inst.n == 0) {
    throw PreconditionError("PER instance needs n >= 1");
  }
  for (const auto& t : inst.triples) {
    for (auto x : t) {
      if (x < 1 || x > inst.n) {
        throw PreconditionError("triple component " + std::to_string(x) + " outside 1.." +
                                std::to_string(inst.n));
      }
    }
  }
}

bool is_persistent(const PerInstance& inst, const std::set<std::uint32_t>& p) {
  for (auto i : p) {
    bool supported = false;
    for (const auto& t : inst.triples) {
      if (t[0] == i && p.count(t[1]) && p.count(t[2])) {
        supported = true;
        break;
      }
    }
    if (!supported) {
      return false;
    }
  }
  return true;
}

std::set<std::uint32_t> persistent_gfp(const PerInstance& inst) {
  validate(inst);
  // support[i] counts triples (i, j, k) whose j and k are still alive.
  std::vector<char> alive(inst.n + 1, 1);
  std::vector<std::uint32_t> support(inst.n + 1, 0);
  std::vector<std::vector<std::size_t>> uses(inst.n + 1);
  std::vector<char> triple_ok(inst.triples.size(), 1);
  for (std::size_t t = 0; t < inst.triples.size(); ++t) {
    const auto& [i, j, k] = inst.triples[t];
    ++support[i];
    uses[j].push_back(t);
    if (k != j) {
      uses[k].push_back(t);
    }
  }
  std::vector<std::uint32_t> queue;
  for (std::uint32_t i = 1; i <= inst.n; ++i) {
    if (support[i] == 0) {
      alive[i] = 0;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    const std::uint32_t dead = queue.back();
    queue.pop_back();
    for (std::size_t t : uses[dead]) {
      if (!triple_ok[t]) {
        continue;
      }
      triple_ok[t] = 0;
      const std::uint32_t i = inst.triples[t][0];
      if (alive[i] && --support[i] == 0) {
        alive[i] = 0;
        queue.push_back(i);
      }
    }
  }
  std::set<std::uint32_t> out;
  for (std::uint32_t i = 1; i <= inst.n; ++i) {
    if (alive[i]) {
      out.insert(i);
    }
  }
  return out;
}

bool per_check(const PerInstance& inst) { return persistent_gfp(inst).count(inst.n) != 0; }

PerInstance load_per(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  if (!doc.is_object()) {
    throw SchemaError("$", "expected an object");
  }
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() != "n" && it.key() != "triples") {
      throw SchemaError(it.key(), "unknown field");
    }
  }
  if (!doc.contains("n") || !doc["n"].is_number_unsigned()) {
    throw SchemaError("n", "expected a positive integer");
  }
  PerInstance inst;
  inst.n = doc["n"].get<std::uint32_t>();
  if (doc.contains("triples")) {
    const auto& ts = doc["triples"];
    if (!ts.is_array()) {
      throw SchemaError("triples", "expected an array");
    }
    for (std::size_t t = 0; t < ts.size(); ++t) {
      const std::string here = "triples[" + std::to_string(t) + "]";
      if (!ts[t].is_array() || ts[t].size() != 3) {
        throw SchemaError(here, "expected a triple");
      }
      Triple tr{};
      for (std::size_t c = 0; c < 3; ++c) {
        if (!ts[t][c].is_number_unsigned()) {
          throw SchemaError(here + "[" + std::to_string(c) + "]", "expected an element of A");
        }
        tr[c] = ts[t][c].get<std::uint32_t>();
        if (tr[c] < 1 || tr[c] > inst.n) {
          throw SchemaError(here + "[" + std::to_string(c) + "]", "outside 1..n");
        }
      }
      inst.triples.push_back(tr);
    }
  }
  inst.normalize();
  return inst;
}

std::string save_per(const PerInstance& inst, int indent) {
  nlohmann::json doc;
  doc["n"] = inst.n;
  doc["triples"] = nlohmann::json::array();
  for (const auto& t : inst.triples) {
    doc["triples"].push_back({t[0], t[1], t[2]});
  }
  return doc.dump(indent);
}

} // namespace minc
