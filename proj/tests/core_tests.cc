#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "euta/eu.hh"
#include "euta/marking.hh"
#include "euta/multiset.hh"
#include "euta/pbf.hh"
#include "support/gen.hh"
#include "support/oracles.hh"

using namespace euta;

using MS = Multiset<int>;
using Pair = EUPair<int>;
using Constraint = EUConstraint<int>;

TEST_CASE("multiset difference", "[core]") {
  SECTION("pointwise subtraction") {
    REQUIRE(ms_minus(MS{{1, 3}}, MS{{1, 1}}) == MS{{1, 2}});
  }
  SECTION("clamped at zero") {
    REQUIRE(ms_minus(MS{{1, 1}}, MS{{1, 2}}) == MS{});
  }
  SECTION("untouched key survives") {
    REQUIRE(ms_minus(MS{{1, 2}, {2, 1}}, MS{{1, 2}}) == MS{{2, 1}});
  }
}

TEST_CASE("multiset sum", "[core]") {
  REQUIRE(ms_union(MS{{1, 1}}, MS{{1, 2}}) == MS{{1, 3}});
  REQUIRE(ms_union(MS{}, MS{{2, 1}}) == MS{{2, 1}});
  REQUIRE(ms_union(MS{{1, 1}}, MS{{2, 1}}) == MS{{1, 1}, {2, 1}});
}

TEST_CASE("multiset difference then sum round-trips", "[core]") {
  gen::Rng rng(20240901);
  for (int iter = 0; iter < 500; ++iter) {
    MS small = gen::multiset(rng, 4, 5);
    MS big = ms_union(small, gen::multiset(rng, 4, 5));
    REQUIRE(submultiset(small, big));
    REQUIRE(ms_union(ms_minus(big, small), small) == big);
  }
}

TEST_CASE("multiset satisfaction of a transition atom", "[core]") {
  // <q1->3, q2->1; {q1,q3}>: at least three q1, exactly one q2, any
  // number of q3, nothing else.
  const Pair p{MS{{1, 3}, {2, 1}}, {1, 3}};
  SECTION("exact existential part") {
    REQUIRE(ms_satisfies(MS{{1, 3}, {2, 1}}, p));
  }
  SECTION("surplus absorbed by the universal part") {
    REQUIRE(ms_satisfies(MS{{1, 4}, {2, 1}, {3, 2}}, p));
  }
  SECTION("surplus outside the universal part") {
    REQUIRE_FALSE(ms_satisfies(MS{{1, 3}, {2, 2}}, p));
  }
  SECTION("empty multiset and empty pair") {
    REQUIRE(ms_satisfies(MS{}, Pair{MS{}, {}}));
  }
}

TEST_CASE("atom satisfaction is monotone in the universal part", "[core]") {
  gen::Rng rng(20240902);
  for (int iter = 0; iter < 500; ++iter) {
    MS mu = gen::multiset(rng, 4, 6);
    Pair p = gen::eu_pair(rng, 4, 4);
    if (!ms_satisfies(mu, p)) continue;
    Pair wider = p;
    for (const auto& e : gen::subset(rng, 4)) wider.u.insert(e);
    REQUIRE(ms_satisfies(mu, wider));
  }
}

namespace {

Marking<int, int> three_successor_marking() {
  // d1 -> {q1,q3}, d2 -> {q2,q4}, d3 -> {q1,q4}
  Marking<int, int> nu;
  nu.assign(1, {1, 3});
  nu.assign(2, {2, 4});
  nu.assign(3, {1, 4});
  return nu;
}

}  // namespace

TEST_CASE("marking satisfaction, atom case", "[core]") {
  const Marking<int, int> nu = three_successor_marking();
  SECTION("two copies of q1 with q2 leftover") {
    REQUIRE(marking_satisfies_plus(nu, Pair{MS{{1, 2}}, {2}}));
  }
  SECTION("each distinct state once with q4 leftover") {
    REQUIRE(marking_satisfies_plus(nu, Pair{MS{{1, 1}, {2, 1}, {3, 1}}, {4}}));
  }
  SECTION("one q3 with q4 leftover") {
    REQUIRE(marking_satisfies_plus(nu, Pair{MS{{3, 1}}, {4}}));
  }
  SECTION("unsatisfiable demand") {
    REQUIRE_FALSE(marking_satisfies_plus(nu, Pair{MS{{3, 2}}, {4}}));
  }
}

TEST_CASE("marking satisfaction on a leaf", "[core]") {
  const Marking<int, int> leaf;
  REQUIRE(marking_satisfies_plus(leaf, Pair{MS{}, {7}}));
  REQUIRE_FALSE(marking_satisfies_plus(leaf, Pair{MS{{7, 1}}, {7}}));
}

TEST_CASE("conjunctions may use different witnesses per conjunct", "[core]") {
  const Marking<int, int> nu = three_successor_marking();
  const Constraint all = Constraint::conj(
      {Constraint::atom(Pair{MS{{1, 2}}, {2}}),
       Constraint::atom(Pair{MS{{1, 1}, {2, 1}, {3, 1}}, {4}}),
       Constraint::atom(Pair{MS{{3, 1}}, {4}})});
  REQUIRE(marking_satisfies_plus(nu, all));
  // No single choice of one state per node satisfies all three at once.
  REQUIRE_FALSE(oracle::single_witness(nu, all));
}

TEST_CASE("marking satisfaction is monotone in the marking", "[core]") {
  gen::Rng rng(20240903);
  for (int iter = 0; iter < 300; ++iter) {
    Marking<int, int> big = gen::marking(rng, gen::pick(rng, 0, 4), 3);
    Marking<int, int> small;
    for (const auto& [node, states] : big) {
      std::set<int> kept;
      for (int s : states)
        if (gen::pick(rng, 0, 1)) kept.insert(s);
      if (kept.empty()) kept.insert(*states.begin());
      small.assign(node, kept);
    }
    REQUIRE(submarking(small, big));
    Constraint c = gen::constraint(rng, 3, 3, 2);
    if (marking_satisfies_plus(small, c)) REQUIRE(marking_satisfies_plus(big, c));
  }
}

TEST_CASE("matching-based satisfaction agrees with enumeration", "[core]") {
  gen::Rng rng(20240904);
  for (int iter = 0; iter < 3000; ++iter) {
    Marking<int, int> nu = gen::marking(rng, gen::pick(rng, 0, 5), 4);
    Pair p = gen::eu_pair(rng, 4, 4);
    REQUIRE(marking_satisfies_plus(nu, p) == oracle::plus_atom(nu, p));
  }
}

TEST_CASE("constraint satisfaction agrees with enumeration", "[core]") {
  gen::Rng rng(20240905);
  for (int iter = 0; iter < 500; ++iter) {
    Marking<int, int> nu = gen::marking(rng, gen::pick(rng, 0, 4), 3);
    Constraint c = gen::constraint(rng, 3, 3, 2);
    REQUIRE(marking_satisfies_plus(nu, c) == oracle::plus_constraint(nu, c));
  }
}

TEST_CASE("a disjunction needs only one witness", "[core]") {
  gen::Rng rng(20240906);
  for (int iter = 0; iter < 500; ++iter) {
    Marking<int, int> nu = gen::marking(rng, gen::pick(rng, 0, 4), 3);
    std::vector<Constraint> atoms;
    int n = gen::pick(rng, 1, 4);
    for (int i = 0; i < n; ++i)
      atoms.push_back(Constraint::atom(gen::eu_pair(rng, 3, 3)));
    Constraint d = Constraint::disj(std::move(atoms));
    REQUIRE(marking_satisfies_plus(nu, d) == oracle::single_witness(nu, d));
  }
}

TEST_CASE("set-satisfaction, atom case", "[core]") {
  using SetPair = EUPair<std::set<int>>;
  Marking<int, int> nu;
  nu.assign(0, {10, 11});
  SECTION("the full set can be matched") {
    SetPair p{Multiset<std::set<int>>{{{10, 11}, 1}}, {}};
    REQUIRE(marking_satisfies_star(nu, p));
  }
  SECTION("a demanded superset cannot be matched") {
    Marking<int, int> small;
    small.assign(0, {10});
    SetPair p{Multiset<std::set<int>>{{{10, 11}, 1}}, {}};
    REQUIRE_FALSE(marking_satisfies_star(small, p));
  }
  SECTION("a strict subset can be chosen") {
    SetPair p{Multiset<std::set<int>>{{{10}, 1}}, {}};
    REQUIRE(marking_satisfies_star(nu, p));
  }
  SECTION("leaf satisfies an empty existential part") {
    Marking<int, int> leaf;
    REQUIRE(marking_satisfies_star(leaf, SetPair{{}, {{10}}}));
  }
}

TEST_CASE("set-satisfaction agrees with enumeration", "[core]") {
  gen::Rng rng(20240907);
  for (int iter = 0; iter < 1500; ++iter) {
    Marking<int, int> nu = gen::marking(rng, gen::pick(rng, 0, 4), 2);
    Multiset<std::set<int>> e;
    for (int i = gen::pick(rng, 0, 2); i > 0; --i)
      e.add(gen::nonempty_subset(rng, 2));
    std::set<std::set<int>> u;
    for (int i = gen::pick(rng, 0, 2); i > 0; --i)
      u.insert(gen::nonempty_subset(rng, 2));
    EUPair<std::set<int>> p{e, u};
    REQUIRE(marking_satisfies_star(nu, p) == oracle::star_atom(nu, p));
  }
}

TEST_CASE("disjunctive normal form", "[core]") {
  using IntPbf = Pbf<int>;
  SECTION("single atom") {
    REQUIRE(pbf_dnf(IntPbf::atom(1)) == std::vector<std::vector<int>>{{1}});
  }
  SECTION("distribution over a conjunction") {
    IntPbf f = IntPbf::conj2(IntPbf::disj2(IntPbf::atom(1), IntPbf::atom(2)),
                             IntPbf::atom(3));
    REQUIRE(pbf_dnf(f) == std::vector<std::vector<int>>{{1, 3}, {2, 3}});
  }
  SECTION("false is the empty disjunction") {
    REQUIRE(pbf_dnf(IntPbf::ff()).empty());
  }
  SECTION("true is one empty conjunct") {
    REQUIRE(pbf_dnf(IntPbf::tt()) == std::vector<std::vector<int>>{{}});
  }
  SECTION("subsumed conjuncts are dropped") {
    IntPbf f = IntPbf::disj2(IntPbf::atom(1),
                             IntPbf::conj2(IntPbf::atom(1), IntPbf::atom(2)));
    REQUIRE(pbf_dnf(f) == std::vector<std::vector<int>>{{1}});
  }
}

namespace {

Pbf<int> random_pbf(gen::Rng& rng, int max_atom, int depth) {
  using IntPbf = Pbf<int>;
  int shape = depth == 0 ? gen::pick(rng, 0, 2) : gen::pick(rng, 0, 4);
  switch (shape) {
    case 0: return IntPbf::tt();
    case 1: return IntPbf::ff();
    case 2: return IntPbf::atom(gen::pick(rng, 0, max_atom));
    default: {
      std::vector<IntPbf> kids;
      int n = gen::pick(rng, 2, 3);
      for (int i = 0; i < n; ++i) kids.push_back(random_pbf(rng, max_atom, depth - 1));
      return shape == 3 ? IntPbf::conj(std::move(kids))
                        : IntPbf::disj(std::move(kids));
    }
  }
}

}  // namespace

TEST_CASE("normal form preserves meaning on every valuation", "[core]") {
  gen::Rng rng(20240908);
  constexpr int max_atom = 5;
  for (int iter = 0; iter < 400; ++iter) {
    Pbf<int> f = random_pbf(rng, max_atom, 3);
    auto dnf = pbf_dnf(f);
    for (unsigned mask = 0; mask < (1u << (max_atom + 1)); ++mask) {
      bool direct = f.eval([&](const int& a) { return (mask >> a) & 1u; });
      bool via_dnf = false;
      for (const auto& conj : dnf) {
        bool all = true;
        for (int a : conj)
          if (!((mask >> a) & 1u)) { all = false; break; }
        if (all) { via_dnf = true; break; }
      }
      REQUIRE(direct == via_dnf);
    }
  }
}

TEST_CASE("formula constructors flatten and absorb", "[core]") {
  using IntPbf = Pbf<int>;
  REQUIRE(IntPbf::conj({}).is_true());
  REQUIRE(IntPbf::disj({}).is_false());
  REQUIRE(IntPbf::conj2(IntPbf::atom(1), IntPbf::ff()).is_false());
  REQUIRE(IntPbf::disj2(IntPbf::atom(1), IntPbf::tt()).is_true());
  REQUIRE(IntPbf::conj2(IntPbf::atom(1), IntPbf::tt()) == IntPbf::atom(1));
  IntPbf nested = IntPbf::conj2(IntPbf::conj2(IntPbf::atom(1), IntPbf::atom(2)),
                                IntPbf::atom(3));
  REQUIRE(nested.children().size() == 3);
  REQUIRE(nested.atom_count() == 3);
}
