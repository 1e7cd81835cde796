#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace euta {

// Positive boolean formula over atoms of type A: no negation anywhere.
// And/Or nodes always have at least two children; the smart constructors
// collapse trivial cases so that invariant holds by construction.
template <typename A>
class Pbf {
public:
  enum class Kind { True, False, Atom, And, Or };

  Pbf() : kind_(Kind::True) {}

  static Pbf tt() { return Pbf(Kind::True); }
  static Pbf ff() { return Pbf(Kind::False); }

  static Pbf atom(A a) {
    Pbf f(Kind::Atom);
    f.atoms_.push_back(std::move(a));
    return f;
  }

  // n-ary conjunction; True children dropped, False absorbs, empty -> True.
  static Pbf conj(std::vector<Pbf> children) {
    return combine(Kind::And, std::move(children));
  }

  // n-ary disjunction; False children dropped, True absorbs, empty -> False.
  static Pbf disj(std::vector<Pbf> children) {
    return combine(Kind::Or, std::move(children));
  }

  static Pbf conj2(Pbf a, Pbf b) {
    std::vector<Pbf> v;
    v.push_back(std::move(a));
    v.push_back(std::move(b));
    return conj(std::move(v));
  }

  static Pbf disj2(Pbf a, Pbf b) {
    std::vector<Pbf> v;
    v.push_back(std::move(a));
    v.push_back(std::move(b));
    return disj(std::move(v));
  }

  Kind kind() const { return kind_; }
  bool is_true() const { return kind_ == Kind::True; }
  bool is_false() const { return kind_ == Kind::False; }
  bool is_atom() const { return kind_ == Kind::Atom; }

  const A& atom_value() const { return atoms_.front(); }
  const std::vector<Pbf>& children() const { return children_; }

  // Evaluates with the given atom valuation.
  bool eval(const std::function<bool(const A&)>& val) const {
    switch (kind_) {
      case Kind::True: return true;
      case Kind::False: return false;
      case Kind::Atom: return val(atoms_.front());
      case Kind::And:
        return std::ranges::all_of(children_,
                                   [&](const Pbf& c) { return c.eval(val); });
      case Kind::Or:
        return std::ranges::any_of(children_,
                                   [&](const Pbf& c) { return c.eval(val); });
    }
    return false;
  }

  // Rebuilds the formula with every atom transformed; B is deduced from fn.
  template <typename Fn>
  auto map_atoms(Fn&& fn) const -> Pbf<std::decay_t<decltype(fn(std::declval<const A&>()))>> {
    using B = std::decay_t<decltype(fn(std::declval<const A&>()))>;
    switch (kind_) {
      case Kind::True: return Pbf<B>::tt();
      case Kind::False: return Pbf<B>::ff();
      case Kind::Atom: return Pbf<B>::atom(fn(atoms_.front()));
      case Kind::And:
      case Kind::Or: {
        std::vector<Pbf<B>> mapped;
        mapped.reserve(children_.size());
        for (const Pbf& c : children_) mapped.push_back(c.map_atoms(fn));
        return kind_ == Kind::And ? Pbf<B>::conj(std::move(mapped))
                                  : Pbf<B>::disj(std::move(mapped));
      }
    }
    return Pbf<B>::ff();
  }

  // Rebuilds the formula with every atom replaced by a subformula.
  template <typename Fn>
  auto subst_atoms(Fn&& fn) const -> std::decay_t<decltype(fn(std::declval<const A&>()))> {
    using R = std::decay_t<decltype(fn(std::declval<const A&>()))>;
    switch (kind_) {
      case Kind::True: return R::tt();
      case Kind::False: return R::ff();
      case Kind::Atom: return fn(atoms_.front());
      case Kind::And:
      case Kind::Or: {
        std::vector<R> mapped;
        mapped.reserve(children_.size());
        for (const Pbf& c : children_) mapped.push_back(c.subst_atoms(fn));
        return kind_ == Kind::And ? R::conj(std::move(mapped))
                                  : R::disj(std::move(mapped));
      }
    }
    return R::ff();
  }

  void collect_atoms(std::vector<A>& out) const {
    if (kind_ == Kind::Atom) out.push_back(atoms_.front());
    for (const Pbf& c : children_) c.collect_atoms(out);
  }

  std::vector<A> atoms() const {
    std::vector<A> out;
    collect_atoms(out);
    return out;
  }

  std::size_t atom_count() const {
    if (kind_ == Kind::Atom) return 1;
    std::size_t n = 0;
    for (const Pbf& c : children_) n += c.atom_count();
    return n;
  }

  bool operator==(const Pbf&) const = default;

  // Hand-written ordering: a defaulted three-way operator would depend
  // on itself through the children vector's synthesized comparison.
  bool operator<(const Pbf& o) const {
    if (kind_ != o.kind_) return kind_ < o.kind_;
    if (atoms_ != o.atoms_) return atoms_ < o.atoms_;
    return std::lexicographical_compare(children_.begin(), children_.end(),
                                        o.children_.begin(),
                                        o.children_.end());
  }

private:
  explicit Pbf(Kind k) : kind_(k) {}

  static Pbf combine(Kind k, std::vector<Pbf> children) {
    const bool is_and = (k == Kind::And);
    std::vector<Pbf> kept;
    for (Pbf& c : children) {
      // Flatten nested nodes of the same kind.
      if (c.kind_ == k) {
        for (Pbf& g : c.children_) kept.push_back(std::move(g));
        continue;
      }
      if (is_and) {
        if (c.is_true()) continue;
        if (c.is_false()) return ff();
      } else {
        if (c.is_false()) continue;
        if (c.is_true()) return tt();
      }
      bool duplicate = false;
      for (const Pbf& prev : kept)
        if (prev == c) { duplicate = true; break; }
      if (!duplicate) kept.push_back(std::move(c));
    }
    if (kept.empty()) return is_and ? tt() : ff();
    if (kept.size() == 1) return std::move(kept.front());
    Pbf f(k);
    f.children_ = std::move(kept);
    return f;
  }

  Kind kind_;
  std::vector<A> atoms_;   // exactly one element iff kind_ == Atom
  std::vector<Pbf> children_;
};

// Disjunctive normal form: a list of conjuncts, each a sorted list of
// distinct atoms. True -> one empty conjunct, False -> no conjunct.
// Conjuncts subsumed by a smaller conjunct are dropped (sound for
// positive formulas).
template <typename A>
std::vector<std::vector<A>> pbf_dnf(const Pbf<A>& f) {
  using Conjunct = std::vector<A>;
  std::vector<Conjunct> result;
  switch (f.kind()) {
    case Pbf<A>::Kind::True:
      result.push_back({});
      break;
    case Pbf<A>::Kind::False:
      break;
    case Pbf<A>::Kind::Atom:
      result.push_back({f.atom_value()});
      break;
    case Pbf<A>::Kind::Or:
      for (const Pbf<A>& c : f.children()) {
        for (auto& conj : pbf_dnf(c)) result.push_back(std::move(conj));
      }
      break;
    case Pbf<A>::Kind::And: {
      result.push_back({});
      for (const Pbf<A>& c : f.children()) {
        std::vector<Conjunct> sub = pbf_dnf(c);
        std::vector<Conjunct> next;
        for (const Conjunct& left : result) {
          for (const Conjunct& right : sub) {
            Conjunct merged = left;
            merged.insert(merged.end(), right.begin(), right.end());
            next.push_back(std::move(merged));
          }
        }
        result = std::move(next);
      }
      break;
    }
  }
  for (Conjunct& c : result) {
    std::ranges::sort(c);
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  std::ranges::sort(result);
  result.erase(std::unique(result.begin(), result.end()), result.end());
  // Drop any conjunct that contains another conjunct as a subset.
  std::vector<Conjunct> kept;
  for (std::size_t i = 0; i < result.size(); ++i) {
    bool subsumed = false;
    for (std::size_t j = 0; j < result.size() && !subsumed; ++j) {
      if (i == j) continue;
      const bool j_smaller =
          result[j].size() < result[i].size() ||
          (result[j].size() == result[i].size() && j < i);
      subsumed = j_smaller && std::ranges::includes(result[i], result[j]);
    }
    if (!subsumed) kept.push_back(result[i]);
  }
  return kept;
}

}  // namespace euta
