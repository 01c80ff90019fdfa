#include "probematch/constraint.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "probematch/errors.hpp"

namespace probematch {

ProbeString ProbeString::prefix(std::size_t k) const {
  k = std::min(k, idx_.size());
  return ProbeString(std::vector<EdgeIndex>(idx_.begin(), idx_.begin() + static_cast<std::ptrdiff_t>(k)));
}

ProbeString ProbeString::extended(EdgeIndex e) const {
  ProbeString out = *this;
  out.idx_.push_back(e);
  return out;
}

bool ProbeString::contains(EdgeIndex e) const noexcept {
  return std::find(idx_.begin(), idx_.end(), e) != idx_.end();
}

bool ProbeString::is_prefix_of(const ProbeString& other) const noexcept {
  return idx_.size() <= other.idx_.size() &&
         std::equal(idx_.begin(), idx_.end(), other.idx_.begin());
}

ProbeString ProbeString::sorted() const {
  ProbeString out = *this;
  std::sort(out.idx_.begin(), out.idx_.end());
  return out;
}

std::string ProbeString::to_string() const {
  if (idx_.empty()) return "()";
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < idx_.size(); ++i) {
    if (i) os << ',';
    os << idx_[i];
  }
  os << ')';
  return os.str();
}

std::size_t ProbeStringHash::operator()(const ProbeString& s) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (EdgeIndex e : s) {
    h ^= static_cast<std::size_t>(e) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h ^ s.size();
}

bool ProbingConstraint::is_unbounded(std::size_t degree) const noexcept {
  if (const auto* p = std::get_if<Patience>(&kind_)) return p->limit >= degree;
  return false;
}

std::string ProbingConstraint::kind_name() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Patience>) return "patience";
        if constexpr (std::is_same_v<T, Budget>) return "budget";
        if constexpr (std::is_same_v<T, Explicit>) return "explicit";
        return "oracle";
      },
      kind_);
}

namespace {

void check_distinct(std::span<const EdgeIndex> s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (s[i] == s[j]) {
        throw InvalidStringError("probe string repeats edge " + std::to_string(s[i]));
      }
    }
  }
}

}  // namespace

bool membership(const ProbingConstraint& c, std::span<const EdgeIndex> s) {
  check_distinct(s);
  if (s.empty()) return true;
  return std::visit(
      [&](const auto& k) -> bool {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Patience>) {
          return s.size() <= k.limit;
        } else if constexpr (std::is_same_v<T, Budget>) {
          double total = 0.0;
          for (EdgeIndex e : s) {
            if (e >= k.costs.size()) {
              throw InvalidStringError("edge " + std::to_string(e) + " has no probing cost");
            }
            total += k.costs[e];
          }
          return total <= k.budget + 1e-12;
        } else if constexpr (std::is_same_v<T, Explicit>) {
          return k.strings.count(ProbeString(std::vector<EdgeIndex>(s.begin(), s.end()))) > 0;
        } else {
          return k.member && k.member(s);
        }
      },
      c.kind());
}

std::vector<ProbeString> enumerate_strings(const ProbingConstraint& c, std::size_t degree,
                                           std::size_t cap) {
  std::vector<ProbeString> out;
  std::vector<EdgeIndex> cur;
  std::vector<char> used(degree, 0);
  // Downward closure lets the search prune at the first non-member prefix.
  auto dfs = [&](auto&& self) -> void {
    if (out.size() >= cap) throw EnumerationExplosion(cap);
    out.emplace_back(cur);
    for (EdgeIndex e = 0; e < degree; ++e) {
      if (used[e]) continue;
      cur.push_back(e);
      if (membership(c, std::span<const EdgeIndex>(cur))) {
        used[e] = 1;
        self(self);
        used[e] = 0;
      }
      cur.pop_back();
    }
  };
  dfs(dfs);
  return out;
}

namespace {

// All ordered arrangements of every subset of `base` (including lambda).
void for_each_sub_arrangement(const ProbeString& base,
                              const std::function<void(const ProbeString&)>& fn) {
  const std::size_t k = base.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::vector<EdgeIndex> pick;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (std::uint64_t{1} << i)) pick.push_back(base[i]);
    }
    std::sort(pick.begin(), pick.end());
    do {
      fn(ProbeString(pick));
    } while (std::next_permutation(pick.begin(), pick.end()));
  }
}

}  // namespace

std::vector<std::string> explicit_closure_violations(const Explicit& e) {
  std::vector<std::string> out;
  for (const ProbeString& s : e.strings) {
    for_each_sub_arrangement(s, [&](const ProbeString& t) {
      if (!t.empty() && e.strings.count(t) == 0) {
        out.push_back("member " + s.to_string() + " is present but " + t.to_string() +
                      " is missing");
      }
    });
  }
  return out;
}

std::size_t canonicalize(Explicit& e) {
  const std::size_t before = e.strings.size();
  std::set<ProbeString> closed;
  closed.insert(ProbeString{});
  for (const ProbeString& s : e.strings) {
    for_each_sub_arrangement(s, [&](const ProbeString& t) { closed.insert(t); });
  }
  e.strings = std::move(closed);
  return e.strings.size() - std::min(before, e.strings.size());
}

}  // namespace probematch
