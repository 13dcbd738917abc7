#include <algorithm>
#include <set>

#include "doctest.h"

#include "baode/boolean.hpp"
#include "baode/generate.hpp"
#include "support.hpp"

using namespace baode;
using baode::testing::error_kind;
using baode::testing::set_of;

namespace {

  // Smallest filter containing y, by closing under meets and then upward.
  std::set<std::uint32_t> closure_oracle(FiniteBA const&             ba,
                                         std::vector<Element> const& y) {
    std::set<std::uint32_t> meets{ba.top().bits()};
    bool                    grew = true;
    while (grew) {
      grew = false;
      for (auto m : std::set<std::uint32_t>(meets)) {
        for (auto g : y) {
          grew |= meets.insert(m & g.bits()).second;
        }
      }
    }
    std::set<std::uint32_t> out;
    for (auto z : ba.elements()) {
      for (auto m : meets) {
        if ((m & ~z.bits()) == 0) {
          out.insert(z.bits());
          break;
        }
      }
    }
    return out;
  }

  std::set<std::uint32_t> member_bits(Filter const& f) {
    std::set<std::uint32_t> out;
    for (auto x : f.members()) {
      out.insert(x.bits());
    }
    return out;
  }

  bool is_maximal_proper(FiniteBA const& ba, Filter const& f) {
    if (!f.is_proper()) {
      return false;
    }
    for (auto x : ba.elements()) {
      if (f.contains(x) == f.contains(ba.complement(x))) {
        return false;
      }
    }
    return true;
  }

}  // namespace

TEST_CASE("finite Boolean algebras have 2^n elements") {
  CHECK(mk_finite_ba(1).elements().size() == 2);
  CHECK(mk_finite_ba(1).elements()[1] == set_of({0}));
  CHECK(mk_finite_ba(2).size() == 4);
  CHECK(mk_finite_ba(3).elements().size() == 8);
  CHECK(error_kind([] { mk_finite_ba(0); }) == ErrorKind::size);
  CHECK(error_kind([] { mk_finite_ba(21); }) == ErrorKind::size);
  CHECK(!error_kind([] { mk_finite_ba(20); }));
}

TEST_CASE("Boolean axioms hold exhaustively up to four atoms") {
  for (std::size_t n = 1; n <= 4; ++n) {
    FiniteBA ba(n);
    auto     xs = ba.elements();
    for (auto a : xs) {
      CHECK(ba.join(a, ba.complement(a)) == ba.top());
      CHECK(ba.meet(a, ba.complement(a)) == ba.zero());
      CHECK(ba.complement(ba.complement(a)) == a);
      for (auto b : xs) {
        CHECK(ba.leq(a, b) == (ba.meet(a, b) == a));
        for (auto c : xs) {
          CHECK(ba.join(a, ba.join(b, c)) == ba.join(ba.join(a, b), c));
          CHECK(ba.meet(a, ba.meet(b, c)) == ba.meet(ba.meet(a, b), c));
          CHECK(ba.meet(a, ba.join(b, c))
                == ba.join(ba.meet(a, b), ba.meet(a, c)));
          CHECK(ba.join(a, ba.meet(b, c))
                == ba.meet(ba.join(a, b), ba.join(a, c)));
        }
      }
    }
  }
}

TEST_CASE("generated filters") {
  FiniteBA ba(2);
  auto     empty = generated_filter(ba, {});
  CHECK(empty.members() == std::vector<Element>{ba.top()});
  CHECK(is_proper(empty));

  auto all = generated_filter(ba, {ba.zero()});
  CHECK(!is_proper(all));
  CHECK(all.members().size() == 4);

  auto up = generated_filter(ba, {set_of({0})});
  CHECK(up.members() == std::vector<Element>{set_of({0}), set_of({0, 1})});

  CHECK(!is_proper(generated_filter(ba, {set_of({0}), set_of({1})})));
}

TEST_CASE("generated filters agree with the closure oracle and are idempotent") {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    auto     n = 1 + rng.below(4);
    FiniteBA ba(n);
    std::vector<Element> y;
    for (std::size_t k = rng.below(4); k > 0; --k) {
      y.push_back(rng.subset(n));
    }
    auto f = generated_filter(ba, y);
    CHECK(member_bits(f) == closure_oracle(ba, y));
    CHECK(generated_filter(ba, f.members()) == f);
  }
}

TEST_CASE("deterministic ultrafilter extension") {
  FiniteBA ba(2);
  auto     u = extend_to_ultrafilter(ba, generated_filter(ba, {}));
  CHECK(u.generator() == set_of({0}));
  CHECK(member_bits(u) == std::set<std::uint32_t>{0b01, 0b11});

  auto atom = Filter::principal(ba, set_of({1}));
  CHECK(extend_to_ultrafilter(ba, atom) == atom);

  auto top = generated_filter(ba, {set_of({0, 1})});
  CHECK(extend_to_ultrafilter(ba, top).contains(set_of({0})));

  CHECK(error_kind([&] {
          extend_to_ultrafilter(ba, generated_filter(ba, {ba.zero()}));
        })
        == ErrorKind::properness);
}

TEST_CASE("extensions contain the filter and are maximal proper") {
  for (std::size_t n = 1; n <= 4; ++n) {
    FiniteBA ba(n);
    for (auto g : ba.elements()) {
      if (g.empty()) {
        continue;
      }
      auto f = Filter::principal(ba, g);
      auto u = extend_to_ultrafilter(ba, f);
      CHECK(is_maximal_proper(ba, u));
      for (auto x : f.members()) {
        CHECK(u.contains(x));
      }
    }
  }
}

TEST_CASE("ultrafilters are the principal filters on atoms") {
  CHECK(enumerate_ultrafilters(FiniteBA(1)).size() == 1);
  CHECK(enumerate_ultrafilters(FiniteBA(2)).size() == 2);
  FiniteBA ba(3);
  auto     us = enumerate_ultrafilters(ba);
  REQUIRE(us.size() == 3);
  for (std::size_t a = 0; a < 3; ++a) {
    CHECK(us[a].generator() == Element::atom(a));
    CHECK(is_maximal_proper(ba, us[a]));
  }
  // No other filter is maximal proper.
  std::size_t maximal = 0;
  for (auto g : ba.elements()) {
    if (!g.empty() && is_maximal_proper(ba, Filter::principal(ba, g))) {
      ++maximal;
    }
  }
  CHECK(maximal == 3);
}
