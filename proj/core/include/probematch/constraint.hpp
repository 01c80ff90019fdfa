#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace probematch {

/// Position of an edge inside its online vertex's edge list.
using EdgeIndex = std::uint32_t;

/// Ordered tuple of distinct edges incident to one online vertex, stored as
/// indices into that vertex's edge list. The empty string is lambda.
class ProbeString {
 public:
  ProbeString() = default;
  ProbeString(std::initializer_list<EdgeIndex> idx) : idx_(idx) {}
  explicit ProbeString(std::vector<EdgeIndex> idx) : idx_(std::move(idx)) {}

  std::size_t size() const noexcept { return idx_.size(); }
  bool empty() const noexcept { return idx_.empty(); }
  EdgeIndex operator[](std::size_t i) const { return idx_[i]; }
  std::span<const EdgeIndex> view() const noexcept { return idx_; }
  const std::vector<EdgeIndex>& indices() const noexcept { return idx_; }
  auto begin() const noexcept { return idx_.begin(); }
  auto end() const noexcept { return idx_.end(); }

  void push_back(EdgeIndex e) { idx_.push_back(e); }
  void pop_back() { idx_.pop_back(); }

  /// First `k` characters.
  ProbeString prefix(std::size_t k) const;
  ProbeString extended(EdgeIndex e) const;
  bool contains(EdgeIndex e) const noexcept;
  /// True when `*this` is a prefix of `other`.
  bool is_prefix_of(const ProbeString& other) const noexcept;
  /// Same edges in non-decreasing index order.
  ProbeString sorted() const;

  std::string to_string() const;

  friend bool operator==(const ProbeString&, const ProbeString&) = default;
  friend auto operator<=>(const ProbeString& a, const ProbeString& b) { return a.idx_ <=> b.idx_; }

 private:
  std::vector<EdgeIndex> idx_;
};

struct ProbeStringHash {
  std::size_t operator()(const ProbeString& s) const noexcept;
};

inline constexpr std::size_t kUnboundedPatience = std::numeric_limits<std::size_t>::max();

struct Patience {
  std::size_t limit = kUnboundedPatience;
};

/// Knapsack-style constraint: the string's summed costs must not exceed the
/// budget. `costs` is indexed like the vertex's edge list.
struct Budget {
  double budget = 0.0;
  std::vector<double> costs;
};

/// Finite family of allowed strings.
struct Explicit {
  std::set<ProbeString> strings;
};

/// Membership delegated to a callback. The callback must describe a
/// downward-closed family; a lying oracle yields undefined results.
struct OracleBacked {
  std::function<bool(std::span<const EdgeIndex>)> member;
};

class ProbingConstraint {
 public:
  using Kind = std::variant<Patience, Budget, Explicit, OracleBacked>;

  ProbingConstraint() : kind_(Patience{}) {}
  ProbingConstraint(Patience p) : kind_(std::move(p)) {}
  ProbingConstraint(Budget b) : kind_(std::move(b)) {}
  ProbingConstraint(Explicit e) : kind_(std::move(e)) {}
  ProbingConstraint(OracleBacked o) : kind_(std::move(o)) {}

  static ProbingConstraint patience(std::size_t limit) { return Patience{limit}; }
  static ProbingConstraint unbounded() { return Patience{kUnboundedPatience}; }

  const Kind& kind() const noexcept { return kind_; }
  Kind& kind() noexcept { return kind_; }

  template <class T>
  bool is() const noexcept { return std::holds_alternative<T>(kind_); }
  template <class T>
  const T& as() const { return std::get<T>(kind_); }

  bool is_unbounded(std::size_t degree) const noexcept;
  std::string kind_name() const;

 private:
  Kind kind_;
};

/// Membership query. Throws InvalidStringError when `s` repeats an edge.
bool membership(const ProbingConstraint& c, std::span<const EdgeIndex> s);
inline bool membership(const ProbingConstraint& c, const ProbeString& s) {
  return membership(c, s.view());
}

/// Every member string over `degree` edges in lexicographic (depth-first)
/// order, starting with lambda. Throws EnumerationExplosion past `cap`.
std::vector<ProbeString> enumerate_strings(const ProbingConstraint& c, std::size_t degree,
                                           std::size_t cap);

/// Violations of downward closure for an Explicit family (substring or
/// permutation of a member missing). Empty for well-formed families.
std::vector<std::string> explicit_closure_violations(const Explicit& e);

/// Completes an Explicit family under substrings and permutations. Returns
/// the number of strings added.
std::size_t canonicalize(Explicit& e);

}  // namespace probematch
