#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qlogic/error.hpp"
#include "qlogic/lattice.hpp"
#include "qlogic/worked_example.hpp"

using namespace qlogic;

namespace {

FiniteOrtholattice from_covers(std::vector<std::string> labels,
                               std::vector<std::pair<const char*, const char*>> covers,
                               std::optional<std::vector<ElementId>> perp = std::nullopt) {
  std::vector<ElementPair> pairs;
  auto id = [&](const char* s) {
    return static_cast<ElementId>(std::find(labels.begin(), labels.end(), s) - labels.begin());
  };
  for (auto [x, y] : covers) pairs.emplace_back(id(x), id(y));
  return FiniteOrtholattice::build(labels, pairs, RelationKind::Covers, std::move(perp));
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Parse;
}

std::vector<FiniteOrtholattice> zoo() {
  std::vector<FiniteOrtholattice> out;
  out.push_back(chain_lattice(2));
  out.push_back(chain_lattice(5));
  for (std::size_t n = 0; n <= 4; ++n) out.push_back(power_set_lattice(n));
  for (std::size_t k = 1; k <= 4; ++k) out.push_back(mo_lattice(k));
  out.push_back(*hasse_example());
  return out;
}

}  // namespace

TEST_CASE("two-element chain: meet is min, join is max") {
  const auto L = chain_lattice(2);
  REQUIRE(L.size() == 2);
  for (ElementId x = 0; x < 2; ++x) {
    for (ElementId y = 0; y < 2; ++y) {
      CHECK(L.meet(x, y) == std::min(x, y));
      CHECK(L.join(x, y) == std::max(x, y));
    }
  }
  const auto r = classify(L);
  CHECK(r.is_boolean);
}

TEST_CASE("meet and join tables agree with glb and lub by definition") {
  for (const auto& L : zoo()) {
    for (ElementId x = 0; x < L.size(); ++x) {
      for (ElementId y = 0; y < L.size(); ++y) {
        CHECK(static_cast<long>(L.meet(x, y)) == oracle::glb(L, x, y));
        CHECK(static_cast<long>(L.join(x, y)) == oracle::lub(L, x, y));
      }
      CHECK(L.leq(L.bottom(), x));
      CHECK(L.leq(x, L.top()));
    }
  }
}

TEST_CASE("De Morgan under perp") {
  for (const auto& L : zoo()) {
    if (!L.has_perp()) continue;
    for (ElementId x = 0; x < L.size(); ++x) {
      for (ElementId y = 0; y < L.size(); ++y) {
        CHECK(L.perp(L.join(x, y)) == L.meet(L.perp(x), L.perp(y)));
      }
    }
  }
}

TEST_CASE("ten-element example parses as an orthomodular, non-distributive lattice") {
  const auto X = hasse_example();
  CHECK(X->size() == 10);
  const auto r = classify(*X);
  CHECK(r.is_lattice);
  CHECK(r.is_orthocomplemented);
  CHECK(r.is_orthomodular);
  CHECK_FALSE(r.is_distributive);
  CHECK_FALSE(r.is_boolean);
  REQUIRE(r.witnesses.size() == 1);
  CHECK(witness_violates(*X, r.witnesses[0]));
  // The textbook triple also violates distributivity.
  const auto a = X->id("a"), d = X->id("d"), bp = X->id("b'");
  CHECK(X->meet(X->join(a, d), bp) == bp);
  CHECK(X->join(X->meet(a, bp), X->meet(d, bp)) == a);
  LawWitness w{std::string(law::kDistributive), {a, d, bp}, bp, a, ""};
  CHECK(witness_violates(*X, w));
}

TEST_CASE("ten-element example has 16 cover edges") {
  const auto X = hasse_example();
  CHECK(X->covers().size() == 16);
  const auto dot = hasse_dot(*X);
  std::size_t arrows = 0;
  for (std::size_t p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 1)) ++arrows;
  CHECK(arrows == 16);
}

TEST_CASE("hasse_dot of small lattices") {
  const auto c = hasse_dot(chain_lattice(2));
  CHECK(c.find("\"0\" -> \"1\"") != std::string::npos);
  CHECK(power_set_lattice(2).covers().size() == 4);
  CHECK(hasse_dot(power_set_lattice(2)) == hasse_dot(power_set_lattice(2)));
}

TEST_CASE("N-shaped poset is rejected with the pair lacking a glb") {
  try {
    from_covers({"x", "y", "z", "w"}, {{"x", "z"}, {"y", "z"}, {"x", "w"}, {"y", "w"}});
    FAIL("expected NotALattice");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotALattice);
    CHECK(e.witness() == std::vector<std::string>{"z", "w"});
  }
  try {
    from_covers({"0", "x", "y", "z", "w", "1"},
                {{"0", "x"}, {"0", "y"}, {"x", "z"}, {"y", "z"}, {"x", "w"}, {"y", "w"},
                 {"z", "1"}, {"w", "1"}});
    FAIL("expected NotALattice");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotALattice);
    CHECK(e.witness() == std::vector<std::string>{"z", "w"});
  }
}

TEST_CASE("cycles and bad complements are rejected") {
  CHECK(kind_of([] { from_covers({"a", "b"}, {{"a", "b"}, {"b", "a"}}); }) ==
        ErrorKind::NotAPoset);
  // perp not involutive
  CHECK(kind_of([] {
          from_covers({"0", "a", "b", "1"}, {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}},
                      std::vector<ElementId>{3, 2, 2, 0});
        }) == ErrorKind::BadPerp);
  // identity map is not a complement
  CHECK(kind_of([] {
          from_covers({"0", "a", "b", "1"}, {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}},
                      std::vector<ElementId>{0, 1, 2, 3});
        }) == ErrorKind::BadPerp);
}

TEST_CASE("power sets are Boolean; MO_k is orthomodular but not distributive for k >= 2") {
  CHECK(classify(power_set_lattice(3)).is_boolean);
  for (std::size_t k = 2; k <= 4; ++k) {
    const auto r = classify(mo_lattice(k));
    CHECK(r.is_orthomodular);
    CHECK_FALSE(r.is_distributive);
  }
}

TEST_CASE("a non-orthomodular ortholattice is caught with a checked witness") {
  // Benzene ring O6: 0 < a < b' < 1, 0 < b < a' < 1.
  const auto L = from_covers({"0", "a", "b", "a'", "b'", "1"},
                             {{"0", "a"}, {"a", "b'"}, {"b'", "1"}, {"0", "b"}, {"b", "a'"},
                              {"a'", "1"}},
                             std::vector<ElementId>{5, 3, 4, 1, 2, 0});
  const auto r = classify(L);
  CHECK(r.is_orthocomplemented);
  CHECK_FALSE(r.is_orthomodular);
  for (const auto& w : r.witnesses) CHECK(witness_violates(L, w));
}

TEST_CASE("subspace lattice of C^2 restricted to {0, e1, e1+e2, 1}") {
  // Without a complement map the four-element diamond is a distributive
  // lattice; it is Boolean as soon as e1 and span(e1+e2) are made complements,
  // which is not the subspace orthocomplement but is a legal ortholattice.
  const auto L = from_covers({"0", "e1", "e12", "1"},
                             {{"0", "e1"}, {"0", "e12"}, {"e1", "1"}, {"e12", "1"}},
                             std::vector<ElementId>{3, 2, 1, 0});
  const auto r = classify(L);
  CHECK(r.is_orthomodular);
  CHECK(r.is_distributive);
}

TEST_CASE("classify is deterministic") {
  const auto X = hasse_example();
  const auto r1 = classify(*X);
  const auto r2 = classify(*X);
  REQUIRE(r1.witnesses.size() == r2.witnesses.size());
  for (std::size_t k = 0; k < r1.witnesses.size(); ++k) {
    CHECK(r1.witnesses[k].elements == r2.witnesses[k].elements);
  }
}

TEST_CASE("downsets match a scan over all subsets") {
  CHECK(downsets(chain_lattice(2)).size() == 3);
  CHECK(downsets(power_set_lattice(1)).size() == 3);
  CHECK(downsets(mo_lattice(1)).size() == 6);
  for (const auto& L : zoo()) {
    if (L.size() > 16) continue;
    const auto ds = downsets(L);
    CHECK(ds.size() == oracle::count_downsets(L));
    for (std::size_t k = 0; k < ds.size(); ++k) {
      CHECK(is_downset(L, ds[k]));
      if (k) CHECK(canonical_less(ds[k - 1], ds[k]));
    }
  }
  const auto X = hasse_example();
  const auto ds = downsets(*X);
  auto set_of = [&](std::initializer_list<const char*> xs) {
    ElementSet s = X->empty_set();
    for (auto x : xs) s.set(X->id(x));
    return s;
  };
  CHECK(std::find(ds.begin(), ds.end(), set_of({"0", "a", "b"})) != ds.end());
  CHECK(std::find(ds.begin(), ds.end(), set_of({"0", "a", "d"})) != ds.end());
}

TEST_CASE("downset budget is enforced") {
  CHECK(kind_of([] { downsets(power_set_lattice(4), 10); }) == ErrorKind::BudgetExceeded);
}

TEST_CASE("isomorphism search finds relabelings") {
  std::mt19937_64 rng(7);
  const auto X = hasse_example();
  std::vector<ElementId> perm(X->size());
  for (ElementId k = 0; k < X->size(); ++k) perm[k] = k;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::string> labels(X->size());
  std::vector<ElementId> perp(X->size());
  for (ElementId x = 0; x < X->size(); ++x) {
    labels[perm[x]] = "n" + std::to_string(x);
    perp[perm[x]] = perm[X->perp(x)];
  }
  std::vector<ElementPair> pairs;
  for (auto [x, y] : X->covers()) pairs.emplace_back(perm[x], perm[y]);
  const auto Y = FiniteOrtholattice::build(labels, pairs, RelationKind::Covers, perp);
  const auto iso = find_isomorphism(*X, Y);
  REQUIRE(iso);
  CHECK(is_order_isomorphism(*X, Y, *iso));
  CHECK_FALSE(find_isomorphism(*X, mo_lattice(4)));
}
