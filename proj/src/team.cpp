#include "minc/team.hpp"

#include "minc/error.hpp"

namespace minc {

namespace {

std::size_t word_count(std::size_t universe) { return universe == 0 ? 1 : (universe + 63) / 64; }

} // namespace

Team::Team(std::size_t universe) : universe_(universe), words_(word_count(universe), 0) {}

Team Team::full(std::size_t universe) {
  Team t(universe);
  for (std::size_t i = 0; i < t.words_.size(); ++i) {
    std::size_t bits = universe - 64 * i;
    t.words_[i] = bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
  }
  if (universe == 0) {
    t.words_[0] = 0;
  }
  return t;
}

Team Team::from_mask(std::size_t universe, std::uint64_t mask) {
  if (universe > 64) {
    throw Error("Team::from_mask needs a universe of at most 64 worlds");
  }
  Team t(universe);
  t.words_[0] = mask & Team::full(universe).words_[0];
  return t;
}

Team Team::singleton(std::size_t universe, std::size_t world) {
  Team t(universe);
  t.insert(world);
  return t;
}

std::size_t Team::count() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) {
    c += static_cast<std::size_t>(std::popcount(w));
  }
  return c;
}

bool Team::empty() const noexcept {
  for (auto w : words_) {
    if (w != 0) {
      return false;
    }
  }
  return true;
}

bool Team::subset_of(const Team& other) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) {
      return false;
    }
  }
  return true;
}

bool Team::intersects(const Team& other) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & other.words_[i]) {
      return true;
    }
  }
  return false;
}

Team& Team::operator|=(const Team& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    words_[i] |= other.words_[i];
  }
  return *this;
}

Team& Team::operator&=(const Team& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    words_[i] &= other.words_[i];
  }
  return *this;
}

Team& Team::operator-=(const Team& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    words_[i] &= ~other.words_[i];
  }
  return *this;
}

Team Team::complement() const { return Team::full(universe_) - *this; }

std::vector<std::size_t> Team::members() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w != 0) {
      out.push_back(64 * i + static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

std::size_t Team::first() const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] != 0) {
      return 64 * i + static_cast<std::size_t>(std::countr_zero(words_[i]));
    }
  }
  return universe_;
}

std::uint64_t Team::to_mask() const {
  if (universe_ > 64) {
    throw Error("Team::to_mask needs a universe of at most 64 worlds");
  }
  return words_[0];
}

std::size_t Team::hash() const noexcept {
  std::size_t h = universe_ * 0x9e3779b97f4a7c15ULL;
  for (auto w : words_) {
    h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

bool operator==(const Team& a, const Team& b) noexcept {
  return a.universe_ == b.universe_ && a.words_ == b.words_;
}

std::strong_ordering operator<=>(const Team& a, const Team& b) noexcept {
  if (auto c = a.universe_ <=> b.universe_; c != 0) {
    return c;
  }
  for (std::size_t i = a.words_.size(); i-- > 0;) {
    if (auto c = a.words_[i] <=> b.words_[i]; c != 0) {
      return c;
    }
  }
  return std::strong_ordering::equal;
}

bool for_each_subset(const Team& team, const std::function<bool(const Team&)>& visit) {
  const auto positions = team.members();
  if (positions.size() > 62) {
    throw Error("subset enumeration over more than 62 worlds is not supported");
  }
  const std::uint64_t limit = std::uint64_t{1} << positions.size();
  Team subset(team.universe());
  for (std::uint64_t c = 0; c < limit; ++c) {
    // Depositing the counter bits into the member positions is monotone,
    // so ascending counters give ascending bitsets.
    subset = Team(team.universe());
    for (std::size_t i = 0; i < positions.size(); ++i) {
      if ((c >> i) & 1u) {
        subset.insert(positions[i]);
      }
    }
    if (visit(subset)) {
      return true;
    }
  }
  return false;
}

} // namespace minc
