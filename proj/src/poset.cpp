#include "monoext/poset.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "monoext/error.hpp"

namespace monoext {

std::vector<Element> ElementSet::elements() const {
  std::vector<Element> out;
  out.reserve(bits_.count());
  for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i)) {
    out.push_back(i);
  }
  return out;
}

Poset Poset::build(std::vector<std::string> labels,
                   const std::vector<std::pair<std::string, std::string>>& covers) {
  std::unordered_map<std::string, Element> index;
  for (Element i = 0; i < labels.size(); ++i) {
    if (!index.emplace(labels[i], i).second) {
      throw DuplicateLabelError("duplicate label '" + labels[i] + "'");
    }
  }
  auto lookup = [&](const std::string& l) {
    auto it = index.find(l);
    if (it == index.end()) throw UnknownElement("unknown element '" + l + "'");
    return it->second;
  };
  std::vector<std::pair<Element, Element>> idx;
  idx.reserve(covers.size());
  for (const auto& [a, b] : covers) idx.emplace_back(lookup(a), lookup(b));
  return from_indices(std::move(labels), std::move(idx));
}

Poset Poset::from_indices(std::vector<std::string> labels,
                          std::vector<std::pair<Element, Element>> covers) {
  const std::size_t n = labels.size();
  Poset p;
  p.labels_ = std::move(labels);
  for (Element i = 0; i < n; ++i) {
    if (!p.index_.emplace(p.labels_[i], i).second) {
      throw DuplicateLabelError("duplicate label '" + p.labels_[i] + "'");
    }
  }

  std::vector<std::vector<Element>> preds(n);
  std::vector<std::vector<Element>> succs(n);
  std::vector<std::size_t> indeg(n, 0);
  for (const auto& [a, b] : covers) {
    if (a >= n || b >= n) throw UnknownElement("cover refers to element outside the ground set");
    if (a == b) throw CycleError("self-loop on '" + p.labels_[a] + "'");
    preds[b].push_back(a);
    succs[a].push_back(b);
    ++indeg[b];
  }

  // Kahn's algorithm; down-sets accumulate along the topological order.
  p.below_.assign(n, ElementSet(n));
  std::vector<Element> ready;
  for (Element i = n; i-- > 0;) {
    if (indeg[i] == 0) ready.push_back(i);
  }
  std::size_t processed = 0;
  while (!ready.empty()) {
    Element b = ready.back();
    ready.pop_back();
    ++processed;
    p.below_[b].insert(b);
    for (Element a : preds[b]) p.below_[b] |= p.below_[a];
    for (Element c : succs[b]) {
      if (--indeg[c] == 0) ready.push_back(c);
    }
  }
  if (processed != n) {
    for (Element i = 0; i < n; ++i) {
      if (indeg[i] != 0) throw CycleError("cover relation has a cycle through '" + p.labels_[i] + "'");
    }
  }
  p.covers_ = std::move(covers);
  return p;
}

std::optional<Element> Poset::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Element Poset::index_of(std::string_view label) const {
  if (auto e = find(label)) return *e;
  throw UnknownElement("unknown element '" + std::string(label) + "'");
}

void Poset::check_element(Element a) const {
  if (a >= size()) throw UnknownElement("element index " + std::to_string(a) + " out of range");
}

const ElementSet& Poset::down_set(Element a) const {
  check_element(a);
  return below_[a];
}

ElementSet Poset::up_set(Element a) const {
  check_element(a);
  ElementSet up(size());
  for (Element b = 0; b < size(); ++b) {
    if (below_[b].contains(a)) up.insert(b);
  }
  return up;
}

std::size_t Poset::closure_size() const {
  std::size_t total = 0;
  for (const auto& s : below_) total += s.size();
  return total;
}

Poset Poset::reversed() const {
  std::vector<std::pair<Element, Element>> rev;
  rev.reserve(covers_.size());
  for (const auto& [a, b] : covers_) rev.emplace_back(b, a);
  return from_indices(labels_, std::move(rev));
}

Poset Poset::induced(const std::vector<Element>& subset) const {
  std::vector<std::string> labels;
  labels.reserve(subset.size());
  for (Element e : subset) {
    check_element(e);
    labels.push_back(labels_[e]);
  }
  std::vector<std::pair<Element, Element>> rel;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    for (std::size_t j = 0; j < subset.size(); ++j) {
      if (i != j && less(subset[i], subset[j])) rel.emplace_back(i, j);
    }
  }
  return from_indices(std::move(labels), std::move(rel));
}

std::string grid_label(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

Element grid_element(std::size_t n, std::size_t i, std::size_t j) { return (i - 1) * n + (j - 1); }

Poset grid_poset(std::size_t n, GridOrder order) {
  if (n == 0) throw InvalidGrid("grid size must be at least 1");
  std::vector<std::string> labels;
  labels.reserve(n * n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) labels.push_back(grid_label(i, j));
  }
  std::vector<std::pair<Element, Element>> covers;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      if (i < n) covers.emplace_back(grid_element(n, i, j), grid_element(n, i + 1, j));
      if (order == GridOrder::product && j < n) {
        covers.emplace_back(grid_element(n, i, j), grid_element(n, i, j + 1));
      }
    }
  }
  return Poset::from_indices(std::move(labels), std::move(covers));
}

QuerySet::QuerySet(const Poset& poset, std::vector<Element> elements) : elements_(std::move(elements)) {
  std::vector<bool> seen(poset.size(), false);
  for (Element e : elements_) {
    if (e >= poset.size()) throw UnknownElement("query element index " + std::to_string(e) + " out of range");
    if (seen[e]) throw DuplicateQueryElement("query lists '" + poset.label(e) + "' twice");
    seen[e] = true;
  }
}

QuerySet QuerySet::from_labels(const Poset& poset, const std::vector<std::string>& labels) {
  std::vector<Element> elems;
  elems.reserve(labels.size());
  for (const auto& l : labels) elems.push_back(poset.index_of(l));
  return QuerySet(poset, std::move(elems));
}

bool is_admissible(const Poset& poset, const QuerySet& query, const Permutation& perm) {
  const std::size_t n = query.size();
  if (perm.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (std::size_t p : perm) {
    if (p >= n || seen[p]) return false;
    seen[p] = true;
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (poset.less(query[perm[b]], query[perm[a]])) return false;
    }
  }
  return true;
}

namespace {

// Backtracking over linear extensions of the subposet on `items` (sorted by
// canonical index), smallest available index first.
class ExtensionWalker {
 public:
  using Visit = std::function<void(const std::vector<std::size_t>&)>;

  ExtensionWalker(const Poset& poset, std::vector<Element> items, Visit visit, std::size_t cap)
      : items_(std::move(items)), visit_(std::move(visit)), cap_(cap) {
    const std::size_t m = items_.size();
    succ_.resize(m);
    indeg_.assign(m, 0);
    used_.assign(m, false);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (poset.less(items_[i], items_[j])) {
          succ_[i].push_back(j);
          ++indeg_[j];
        }
      }
    }
    seq_.reserve(m);
  }

  void run() { recurse(); }

 private:
  void recurse() {
    if (seq_.size() == items_.size()) {
      if (count_ == cap_) throw CapExceeded(cap_);
      ++count_;
      visit_(seq_);
      return;
    }
    for (std::size_t i = 0; i < items_.size(); ++i) {
      if (used_[i] || indeg_[i] != 0) continue;
      used_[i] = true;
      for (auto s : succ_[i]) --indeg_[s];
      seq_.push_back(i);
      recurse();
      seq_.pop_back();
      for (auto s : succ_[i]) ++indeg_[s];
      used_[i] = false;
    }
  }

  std::vector<Element> items_;
  Visit visit_;
  std::size_t cap_;
  std::size_t count_ = 0;
  std::vector<std::vector<std::size_t>> succ_;
  std::vector<std::size_t> indeg_;
  std::vector<bool> used_;
  std::vector<std::size_t> seq_;
};

}  // namespace

void for_each_admissible_permutation(const Poset& poset, const QuerySet& query,
                                     const std::function<void(const Permutation&)>& visit,
                                     std::size_t cap) {
  std::vector<std::size_t> order(query.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return query[a] < query[b]; });
  std::vector<Element> items;
  items.reserve(order.size());
  for (auto p : order) items.push_back(query[p]);

  Permutation perm(query.size());
  ExtensionWalker walker(
      poset, std::move(items),
      [&](const std::vector<std::size_t>& seq) {
        for (std::size_t k = 0; k < seq.size(); ++k) perm[k] = order[seq[k]];
        visit(perm);
      },
      cap);
  walker.run();
}

std::vector<Permutation> admissible_permutations(const Poset& poset, const QuerySet& query,
                                                 std::size_t cap) {
  std::vector<Permutation> out;
  for_each_admissible_permutation(poset, query, [&](const Permutation& p) { out.push_back(p); }, cap);
  return out;
}

void for_each_linear_extension(const Poset& poset,
                               const std::function<void(const std::vector<Element>&)>& visit,
                               std::size_t cap) {
  std::vector<Element> items(poset.size());
  std::iota(items.begin(), items.end(), 0);
  ExtensionWalker walker(poset, std::move(items), visit, cap);
  walker.run();
}

std::vector<std::vector<Element>> linear_extensions(const Poset& poset, std::size_t cap) {
  std::vector<std::vector<Element>> out;
  for_each_linear_extension(poset, [&](const std::vector<Element>& e) { out.push_back(e); }, cap);
  return out;
}

std::vector<Element> first_linear_extension(const Poset& poset, std::vector<Element> items) {
  std::sort(items.begin(), items.end());
  const std::size_t m = items.size();
  std::vector<std::vector<std::size_t>> succ(m);
  std::vector<std::size_t> indeg(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (poset.less(items[i], items[j])) {
        succ[i].push_back(j);
        ++indeg[j];
      }
    }
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < m; ++i) {
    if (indeg[i] == 0) ready.push(i);
  }
  std::vector<Element> out;
  out.reserve(m);
  while (!ready.empty()) {
    auto pick = ready.top();
    ready.pop();
    out.push_back(items[pick]);
    for (auto j : succ[pick]) {
      if (--indeg[j] == 0) ready.push(j);
    }
  }
  return out;
}

}  // namespace monoext
