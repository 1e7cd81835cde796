#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace euta {

// Finite multiset over an ordered element type.
// Canonical form: entries with count 0 are never stored.
template <typename T>
class Multiset {
public:
  using map_type = std::map<T, std::size_t>;

  Multiset() = default;

  Multiset(std::initializer_list<std::pair<const T, std::size_t>> init) {
    for (const auto& [elem, n] : init) add(elem, n);
  }

  static Multiset singleton(T elem, std::size_t n = 1) {
    Multiset m;
    m.add(std::move(elem), n);
    return m;
  }

  void add(const T& elem, std::size_t n = 1) {
    if (n == 0) return;
    entries_[elem] += n;
  }

  // Removes up to n occurrences; clamps at zero.
  void remove(const T& elem, std::size_t n = 1) {
    auto it = entries_.find(elem);
    if (it == entries_.end()) return;
    if (it->second <= n)
      entries_.erase(it);
    else
      it->second -= n;
  }

  std::size_t count(const T& elem) const {
    auto it = entries_.find(elem);
    return it == entries_.end() ? 0 : it->second;
  }

  bool contains(const T& elem) const { return entries_.contains(elem); }

  // Total number of occurrences.
  std::size_t size() const {
    std::size_t total = 0;
    for (const auto& [elem, n] : entries_) total += n;
    return total;
  }

  bool empty() const { return entries_.empty(); }

  std::set<T> support() const {
    std::set<T> s;
    for (const auto& [elem, n] : entries_) s.insert(elem);
    return s;
  }

  const map_type& entries() const { return entries_; }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  bool operator==(const Multiset&) const = default;
  auto operator<=>(const Multiset&) const = default;

private:
  map_type entries_;
};

// Pointwise sum.
template <typename T>
Multiset<T> ms_union(const Multiset<T>& a, const Multiset<T>& b) {
  Multiset<T> r = a;
  for (const auto& [elem, n] : b) r.add(elem, n);
  return r;
}

// Pointwise difference, clamped at zero.
template <typename T>
Multiset<T> ms_minus(const Multiset<T>& a, const Multiset<T>& b) {
  Multiset<T> r = a;
  for (const auto& [elem, n] : b) r.remove(elem, n);
  return r;
}

// a(s) <= b(s) for every s.
template <typename T>
bool submultiset(const Multiset<T>& a, const Multiset<T>& b) {
  for (const auto& [elem, n] : a)
    if (b.count(elem) < n) return false;
  return true;
}

namespace detail {

// Visits every submultiset of base, including the empty one and base
// itself.
template <typename T, typename Fn>
void for_submultisets(const Multiset<T>& base, Fn&& fn) {
  std::vector<std::pair<T, std::size_t>> items(base.begin(), base.end());
  std::vector<std::size_t> take(items.size(), 0);
  while (true) {
    Multiset<T> sub;
    for (std::size_t i = 0; i < items.size(); ++i)
      sub.add(items[i].first, take[i]);
    fn(sub);
    std::size_t i = 0;
    for (; i < items.size(); ++i) {
      if (take[i] < items[i].second) {
        ++take[i];
        break;
      }
      take[i] = 0;
    }
    if (i == items.size()) break;
  }
}

}  // namespace detail

}  // namespace euta
