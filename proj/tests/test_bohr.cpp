#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qlogic/bohr.hpp"
#include "qlogic/error.hpp"
#include "qlogic/worked_example.hpp"

using namespace qlogic;

namespace {

LatticePtr share(FiniteOrtholattice L) { return std::make_shared<const FiniteOrtholattice>(std::move(L)); }

BlockPosetPtr blocks_of(const LatticePtr& L) {
  return std::make_shared<const BlockPoset>(enumerate_blocks(L));
}

struct Instance {
  std::string name;
  BlockPosetPtr base;
};

std::vector<Instance> instances() {
  std::vector<Instance> out;
  const auto P2 = share(power_set_lattice(2));
  out.push_back({"single Pow(2) block",
                 std::make_shared<const BlockPoset>(P2, std::vector<ElementSet>{P2->full_set()})});
  ElementSet b0 = P2->empty_set();
  b0.set(P2->bottom());
  b0.set(P2->top());
  out.push_back({"chain {0,1} < Pow(2)", std::make_shared<const BlockPoset>(
                                             P2, std::vector<ElementSet>{b0, P2->full_set()})});
  out.push_back({"MO2", blocks_of(share(mo_lattice(2)))});
  out.push_back({"MO3", blocks_of(share(mo_lattice(3)))});
  out.push_back({"Pow(3)", blocks_of(share(power_set_lattice(3)))});
  out.push_back({"four-block family", four_block_family(hasse_example())});
  out.push_back({"six blocks", blocks_of(hasse_example())});
  return out;
}

std::vector<ElementId> vals(const Section& f) { return f.values; }

}  // namespace

TEST_CASE("section counts") {
  const auto is = instances();
  CHECK(bohrify(is[0].base).counted == 4);
  CHECK(bohrify(is[1].base).counted == 5);
  CHECK(bohrify(is[2].base).counted == 17);
  CHECK(bohrify(is[5].base).counted == 257);
  CHECK(bohrify(is[6].base).counted == 381);
}

TEST_CASE("enumeration equals a scan over the product of the carriers") {
  for (const auto& inst : instances()) {
    INFO(inst.name);
    const auto Y = bohrify(inst.base);
    REQUIRE(Y.enumerated());
    auto want = oracle::all_sections(*inst.base);
    std::sort(want.begin(), want.end());
    std::vector<std::vector<ElementId>> got;
    for (const auto& f : *Y.enumeration) got.push_back(f.values);
    CHECK(got == want);
    CHECK(Y.counted == want.size());
  }
}

TEST_CASE("enumeration is closed under pointwise meet and join; frame law") {
  for (const auto& inst : instances()) {
    INFO(inst.name);
    const auto Y = bohrify(inst.base);
    const auto& E = *Y.enumeration;
    if (E.size() > 400) continue;
    for (const auto& f : E) {
      CHECK(sec_meet(f, Y.top) == f);
      for (const auto& g : E) {
        CHECK(Y.index_of(sec_meet(f, g)));
        CHECK(Y.index_of(sec_join(f, g)));
      }
    }
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> pick(0, E.size() - 1);
    for (int k = 0; k < 2000; ++k) {
      const auto& f = E[pick(rng)];
      const auto& g = E[pick(rng)];
      const auto& h = E[pick(rng)];
      CHECK(sec_meet(f, sec_join(g, h)) == sec_join(sec_meet(f, g), sec_meet(f, h)));
    }
  }
}

TEST_CASE("implication equals the join of all U with U ^ g <= h") {
  for (const auto& inst : instances()) {
    INFO(inst.name);
    const auto Y = bohrify(inst.base);
    const auto& L = inst.base->host_lattice();
    REQUIRE(L);
    std::vector<std::vector<ElementId>> all;
    for (const auto& f : *Y.enumeration) all.push_back(f.values);
    std::size_t mismatches = 0;
    for (const auto& g : *Y.enumeration) {
      for (const auto& h : *Y.enumeration) {
        if (vals(implies(g, h)) != oracle::implies_by_join(*L, all, g.values, h.values)) ++mismatches;
      }
      if (vals(negate(g)) != oracle::implies_by_join(*L, all, g.values, Y.bottom.values)) ++mismatches;
      CHECK(negate(g) == implies(g, Y.bottom));
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("Heyting adjunction, exhaustive on small instances") {
  for (const auto& inst : instances()) {
    const auto Y = bohrify(inst.base);
    const auto& E = *Y.enumeration;
    if (E.size() > 30) continue;
    INFO(inst.name);
    for (const auto& f : E) {
      for (const auto& g : E) {
        for (const auto& h : E) {
          CHECK(sec_leq(sec_meet(f, g), h) == sec_leq(f, implies(g, h)));
        }
      }
    }
  }
}

TEST_CASE("trivial implication identities") {
  const auto base = four_block_family(hasse_example());
  const auto Y = bohrify(base);
  for (const auto& g : *Y.enumeration) {
    CHECK(implies(g, g) == Y.top);
    CHECK(implies(Y.top, g) == g);
  }
  CHECK(negate(Y.top) == Y.bottom);
}

TEST_CASE("worked example: D, negation and implication values") {
  const auto X = hasse_example();
  const auto base = four_block_family(X);
  const auto a = X->id("a"), b = X->id("b"), ap = X->id("a'");
  const auto zero = X->bottom(), one = X->top();
  const auto Da = embed_D(base, a);
  CHECK(Da.values == std::vector<ElementId>{zero, a, zero, zero, zero});
  const std::vector<ElementId> expect{zero, ap, one, one, one};
  CHECK(implies(Da, embed_D(base, b)).values == expect);
  CHECK(negate(Da).values == expect);
  // D(a') at Bb is 0 while the negation is 1.
  const auto bb = *base->find("Bb");
  CHECK(embed_D(base, ap).values[bb] == zero);
  CHECK(negate(Da).values[bb] == one);
  CHECK(sec_join(Da, embed_D(base, b)).values ==
        std::vector<ElementId>{zero, a, b, zero, zero});
  CHECK(sec_meet(Da, embed_D(base, b)) == bottom_section(base));
  CHECK(embed_D(base, zero) == bottom_section(base));
  CHECK(embed_D(base, one) == top_section(base));
}

TEST_CASE("D is injective and reflects the order") {
  for (const auto& base : {four_block_family(hasse_example()), blocks_of(hasse_example())}) {
    const auto& L = *base->host_lattice();
    for (ElementId x = 0; x < L.size(); ++x) {
      for (ElementId y = 0; y < L.size(); ++y) {
        const auto Dx = embed_D(base, x), Dy = embed_D(base, y);
        if (x != y) CHECK_FALSE(Dx == Dy);
        if (sec_leq(Dx, Dy)) CHECK(L.leq(x, y));
      }
    }
  }
}

TEST_CASE("D preserves meets of compatible pairs in the four-block family") {
  const auto X = hasse_example();
  auto preserved = [&](const BlockPosetPtr& base) {
    const auto& L = *X;
    std::size_t broken = 0;
    for (ElementId x = 0; x < L.size(); ++x) {
      for (ElementId y = 0; y < L.size(); ++y) {
        bool compatible = false;
        for (std::size_t i = 0; i < base->size(); ++i) {
          compatible = compatible || (base->contains(i, x) && base->contains(i, y));
        }
        if (!compatible) continue;
        if (!(sec_meet(embed_D(base, x), embed_D(base, y)) == embed_D(base, L.meet(x, y)))) ++broken;
      }
    }
    return broken;
  };
  CHECK(preserved(four_block_family(X)) == 0);
  // With B[a,b,c] present, a and b' are compatible but D(a) ^ D(b') is 0 at
  // B[a,a'] where D(a ^ b') = D(a) is a.
  const auto all = blocks_of(X);
  CHECK(preserved(all) > 0);
  const auto a = X->id("a"), bp = X->id("b'");
  const auto i = *all->find("B[a,a']");
  CHECK(sec_meet(embed_D(all, a), embed_D(all, bp)).values[i] == X->bottom());
  CHECK(embed_D(all, X->meet(a, bp)).values[i] == a);
}

TEST_CASE("Sasaki hook") {
  const auto X = hasse_example();
  const auto a = X->id("a"), b = X->id("b"), ap = X->id("a'");
  CHECK(sasaki_hook(*X, a, b) == ap);
  CHECK(sasaki_hook(*X, a, ap) == ap);
  for (ElementId x = 0; x < X->size(); ++x) CHECK(sasaki_hook(*X, x, x) == X->top());

  const auto base = four_block_family(X);
  const auto r = sasaki_report(base, a, b);
  const auto bb = *base->find("Bb");
  CHECK(r.rows[bb].hook == X->bottom());
  CHECK(r.rows[bb].heyting == X->top());
  const auto t = sasaki_report(base, X->top(), X->top());
  CHECK(t.hook_section == t.heyting_section);
}

TEST_CASE("Sasaki and Heyting coincide on blocks holding both arguments") {
  for (const auto& base : {four_block_family(hasse_example()), blocks_of(hasse_example()),
                           blocks_of(share(mo_lattice(3)))}) {
    const auto& L = *base->host_lattice();
    for (ElementId x = 0; x < L.size(); ++x) {
      for (ElementId y = 0; y < L.size(); ++y) {
        const auto r = sasaki_report(base, x, y);
        for (const auto& row : r.rows) {
          if (!base->contains(row.block, x) || !base->contains(row.block, y)) continue;
          CHECK(row.agree);
          // Boolean adjunction inside the block.
          for (auto z : members_of(base->block(row.block).carrier)) {
            CHECK(L.leq(z, row.hook) == L.leq(L.meet(z, x), y));
          }
        }
      }
    }
  }
}

TEST_CASE("mixed bases and bad sections are rejected") {
  const auto b1 = four_block_family(hasse_example());
  const auto b2 = four_block_family(hasse_example());
  try {
    sec_meet(top_section(b1), top_section(b2));
    FAIL("expected MixedBase");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MixedBase);
  }
  const auto X = b1->host_lattice();
  std::vector<ElementId> v(b1->size(), X->bottom());
  v[0] = X->top();  // B0 = 1 forces every block to 1
  try {
    make_section(b1, v);
    FAIL("expected PreconditionViolated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PreconditionViolated);
  }
}

TEST_CASE("section algebra is isomorphic to the product of four blocks plus a top") {
  const auto Y = bohrify(four_block_family(hasse_example()));
  const auto pt = product_plus_top(Y);
  CHECK(pt.target.size() == 257);
  CHECK(is_order_isomorphism(as_lattice(Y), pt.target, pt.image));
  CHECK(classify(as_lattice(Y)).is_distributive);
}

TEST_CASE("budget handling") {
  const auto base = four_block_family(hasse_example());
  const auto Y = bohrify(base, 100);
  CHECK_FALSE(Y.enumerated());
  CHECK(Y.counted == 101);
  try {
    bohrify(base, 100, true);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
}
