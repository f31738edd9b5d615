#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace monoext {

/// Canonical index of a poset element. Index order drives every
/// deterministic tie-break in the library.
using Element = std::size_t;

/// Ordering of a query set: perm[k] is the position in the QuerySet of the
/// element placed k-th (0-based). Admissible permutations list the query
/// elements from smallest to largest value.
using Permutation = std::vector<std::size_t>;

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

/// Subset of a poset's ground set.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : bits_(universe) {}

  std::size_t universe_size() const { return bits_.size(); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool contains(Element e) const { return e < bits_.size() && bits_.test(e); }

  void insert(Element e) { bits_.set(e); }
  void erase(Element e) { bits_.reset(e); }

  ElementSet& operator|=(const ElementSet& other) {
    bits_ |= other.bits_;
    return *this;
  }
  ElementSet& operator&=(const ElementSet& other) {
    bits_ &= other.bits_;
    return *this;
  }
  ElementSet& operator-=(const ElementSet& other) {
    bits_ -= other.bits_;
    return *this;
  }

  bool intersects(const ElementSet& other) const { return bits_.intersects(other.bits_); }
  bool is_subset_of(const ElementSet& other) const { return bits_.is_subset_of(other.bits_); }

  /// Members in increasing index order.
  std::vector<Element> elements() const;

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

 private:
  boost::dynamic_bitset<> bits_;
};

inline ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
inline ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
inline ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }

enum class GridOrder {
  product,  ///< (x1,y1) <= (x2,y2) iff x1 <= x2 and y1 <= y2
  rows,     ///< (x1,y1) <= (x2,y2) iff x1 <= x2 and y1 == y2
};

/// Finite poset given by a generating ("cover") relation. The reflexive
/// transitive closure is computed once at construction; the object is
/// immutable afterwards.
class Poset {
 public:
  /// Builds from labels and label pairs (a, b) meaning a lies below b.
  /// Throws DuplicateLabelError, UnknownElement or CycleError.
  static Poset build(std::vector<std::string> labels,
                     const std::vector<std::pair<std::string, std::string>>& covers);

  /// Same, with covers given by canonical indices.
  static Poset from_indices(std::vector<std::string> labels,
                            std::vector<std::pair<Element, Element>> covers);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Element e) const { return labels_.at(e); }
  const std::vector<std::pair<Element, Element>>& covers() const { return covers_; }

  std::optional<Element> find(std::string_view label) const;
  /// Throws UnknownElement.
  Element index_of(std::string_view label) const;

  /// a ⪯ b
  bool leq(Element a, Element b) const { return below_[b].contains(a); }
  /// a ≺ b
  bool less(Element a, Element b) const { return a != b && leq(a, b); }
  bool comparable(Element a, Element b) const { return leq(a, b) || leq(b, a); }

  /// {x : x ⪯ a}, including a. Throws UnknownElement.
  const ElementSet& down_set(Element a) const;
  /// {x : a ⪯ x}, including a. Throws UnknownElement.
  ElementSet up_set(Element a) const;

  /// Number of pairs (a, b) with a ⪯ b.
  std::size_t closure_size() const;

  /// Same ground set and labels with every relation reversed.
  Poset reversed() const;

  /// Subposet on `subset` (kept in the given order; labels carried over).
  Poset induced(const std::vector<Element>& subset) const;

  /// Equal labels and equal order relation.
  friend bool operator==(const Poset& a, const Poset& b) {
    return a.labels_ == b.labels_ && a.below_ == b.below_;
  }

 private:
  Poset() = default;
  void check_element(Element a) const;

  std::vector<std::string> labels_;
  std::vector<std::pair<Element, Element>> covers_;
  std::vector<ElementSet> below_;  // below_[b] = down-set of b
  std::unordered_map<std::string, Element> index_;
};

/// n×n grid with elements labelled "(i,j)", 1 <= i,j <= n, i the column
/// (x) and j the row (y). Canonical index of (i,j) is (i-1)*n + (j-1).
Poset grid_poset(std::size_t n, GridOrder order);
std::string grid_label(std::size_t i, std::size_t j);
Element grid_element(std::size_t n, std::size_t i, std::size_t j);

/// Ordered set B = {β_1, ..., β_n} of distinct elements of a poset.
class QuerySet {
 public:
  /// Throws UnknownElement or DuplicateQueryElement.
  QuerySet(const Poset& poset, std::vector<Element> elements);
  static QuerySet from_labels(const Poset& poset, const std::vector<std::string>& labels);

  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  Element operator[](std::size_t k) const { return elements_[k]; }
  const std::vector<Element>& elements() const { return elements_; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

 private:
  std::vector<Element> elements_;
};

/// True iff perm is a permutation of {0..|B|-1} and listing B in that
/// order is a linear extension of the order induced on B.
bool is_admissible(const Poset& poset, const QuerySet& query, const Permutation& perm);

/// Visits admissible permutations in lexicographic order of the element
/// sequence (β_{π(1)}, ..., β_{π(n)}) compared by canonical index.
/// Throws CapExceeded before visiting the (cap+1)-th permutation.
void for_each_admissible_permutation(const Poset& poset, const QuerySet& query,
                                     const std::function<void(const Permutation&)>& visit,
                                     std::size_t cap = kDefaultEnumerationCap);
std::vector<Permutation> admissible_permutations(const Poset& poset, const QuerySet& query,
                                                 std::size_t cap = kDefaultEnumerationCap);

/// Visits linear extensions of the whole poset, each as the sequence of
/// elements from bottom to top, in lexicographic order by canonical index.
void for_each_linear_extension(const Poset& poset,
                               const std::function<void(const std::vector<Element>&)>& visit,
                               std::size_t cap = kDefaultEnumerationCap);
std::vector<std::vector<Element>> linear_extensions(const Poset& poset,
                                                    std::size_t cap = kDefaultEnumerationCap);

/// Lexicographically first linear extension of the subposet on `items`.
std::vector<Element> first_linear_extension(const Poset& poset, std::vector<Element> items);

}  // namespace monoext
