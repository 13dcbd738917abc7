#include <algorithm>

#include "doctest.h"

#include "baode/bao.hpp"
#include "baode/frame.hpp"
#include "baode/generate.hpp"
#include "baode/property.hpp"
#include "baode/schema.hpp"
#include "baode/term.hpp"
#include "support.hpp"

using namespace baode;
using baode::testing::error_kind;
using baode::testing::image_under;
using baode::testing::plain_frame;
using baode::testing::set_of;

namespace {

  // Cm of the 2-point frame with T_0 = {(0,1)} and T_1 = {(1,0)}.
  FiniteBao crossing_algebra() {
    return complex_algebra(plain_frame(2, {{{0, 1}}, {{1, 0}}}));
  }

  FiniteBao square_algebra(std::size_t base) {
    return complex_algebra(assignment_frame(base, Signature::full(2, true)));
  }

  Equation eq(char const* lhs, char const* rhs) {
    return parse_equation(lhs, rhs);
  }

  bool subset(std::vector<std::size_t> const& a,
              std::vector<std::size_t> const& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  }

}  // namespace

TEST_CASE("signatures are monoids under composition") {
  auto full = Signature::full(2, true);
  CHECK(full.transformation_count() == 4);
  CHECK(full.is_full_monoid());
  CHECK(full.transformation(full.identity_index()).is_identity());

  Transformation swap{1, 0};
  Transformation zero{0, 0};
  CHECK(compose(swap, zero) == Transformation{1, 1});
  CHECK(compose(zero, swap) == Transformation{0, 0});
  auto s = *full.index_of(swap);
  auto z = *full.index_of(zero);
  CHECK(full.transformation(full.compose_index(s, z)) == Transformation{1, 1});

  CHECK(!error_kind([] {
    Signature(2, {Transformation{0, 1}, Transformation{0, 0}}, false);
  }));
  CHECK(error_kind([] {
          Signature(2, {Transformation{0, 1}, Transformation{1, 0},
                        Transformation{0, 0}},
                    false);
        })
        == ErrorKind::signature);
  CHECK(error_kind([] { Signature(2, {Transformation{1, 0}}, false); })
        == ErrorKind::signature);
  CHECK(error_kind([] { Signature::full(5, false); }) == ErrorKind::size);
  CHECK(error_kind([] { Signature::identity_only(9, false); })
        == ErrorKind::signature);
}

TEST_CASE("terms print and parse as S-expressions") {
  for (auto text : {"x", "0", "1", "(+ x y)", "(* (c 0 x) (- y))",
                    "(s [1 0] (d 0 1))", "(c 1 (s [0 0] (+ x 0)))"}) {
    CHECK(to_string(parse_term(text)) == text);
  }
  CHECK(parse_term(" ( +  x\ty ) ") == parse_term("(+ x y)"));
  CHECK(error_kind([] { parse_term("(+ x"); }) == ErrorKind::parse);
  CHECK(error_kind([] { parse_term("(q x)"); }) == ErrorKind::parse);
  CHECK(error_kind([] { parse_term("(c x)"); }) == ErrorKind::parse);
  CHECK(error_kind([] { parse_term("x y"); }) == ErrorKind::parse);
  try {
    parse_term("(+ x $)");
    FAIL("no error");
  } catch (Error const& e) {
    CHECK(std::string(e.what()).find("offset 5") != std::string::npos);
  }
}

TEST_CASE("term evaluation") {
  auto a = crossing_algebra();
  auto e = set_of({1});
  CHECK(eval_term(a, parse_term("x"), {{"x", e}}) == e);
  CHECK(eval_term(a, parse_term("(c 0 0)"), {}) == Element());
  CHECK(eval_term(a, parse_term("(s [0 1] x)"), {{"x", e}}) == e);
  CHECK(error_kind([&] { eval_term(a, parse_term("y"), {}); })
        == ErrorKind::unbound_variable);
  CHECK(error_kind([&] { eval_term(a, parse_term("(c 2 x)"), {{"x", e}}); })
        == ErrorKind::index);
  CHECK(error_kind([&] { eval_term(a, parse_term("(d 0 1)"), {}); })
        == ErrorKind::index);
}

TEST_CASE("equation checking") {
  auto a = crossing_algebra();
  CHECK(check_equation(a, eq("x", "x")).valid);
  CHECK(check_equation(a, eq("(c 0 (+ x y))", "(+ (c 0 x) (c 0 y))")).valid);

  auto r = check_equation(a, eq("(c 0 (c 1 x))", "(c 1 (c 0 x))"));
  REQUIRE(!r.valid);
  CHECK(r.counterexample.at("x") == set_of({0}));
  // Oracle: both sides read off the relations.
  auto f   = plain_frame(2, {{{0, 1}}, {{1, 0}}});
  auto lhs = image_under(f, f.t(0), image_under(f, f.t(1), set_of({0})));
  auto rhs = image_under(f, f.t(1), image_under(f, f.t(0), set_of({0})));
  CHECK(r.lhs_value == lhs);
  CHECK(r.rhs_value == rhs);
  CHECK(lhs != rhs);
  // {0} is the least falsifying value: x = 0 satisfies the equation.
  CHECK(check_equation(a, eq("(c 0 (c 1 0))", "(c 1 (c 0 0))")).valid);
}

TEST_CASE("dimension sets") {
  auto a = crossing_algebra();
  CHECK(dimension_set(a, Element()).empty());
  auto full = complex_algebra(
      plain_frame(2, {{{0, 0}, {0, 1}, {1, 0}, {1, 1}}}));
  CHECK(dimension_set(full, full.top()).empty());
  auto single = complex_algebra(plain_frame(2, {{{0, 1}}}));
  CHECK(single.cyl(0, set_of({0})) == set_of({1}));
  CHECK(dimension_set(single, set_of({0})) == std::vector<std::size_t>{0});
}

TEST_CASE("substitutions through diagonals") {
  auto a = square_algebra(2);
  auto x = set_of({0});  // the assignment (0, 0)
  CHECK(subst_ij(a, 0, 0, x) == x);
  CHECK(subst_ij(a, 0, 1, Element()) == Element());
  // d_01 = {(0,0), (1,1)}; c_0 of {(0,0)} adds (1,0), which is point 2.
  CHECK(a.diag(0, 1) == set_of({0, 3}));
  CHECK(subst_ij(a, 0, 1, x) == set_of({0, 2}));
  CHECK(subst_ij(a, 0, 1, x) == a.subst(Transformation{1, 1}, x));
  CHECK(error_kind([] { subst_ij(crossing_algebra(), 0, 1, Element()); })
        == ErrorKind::signature);
  CHECK(error_kind([&] { subst_ij(a, 0, 2, x); }) == ErrorKind::index);
}

TEST_CASE("dual cylindrifiers") {
  auto single = complex_algebra(plain_frame(2, {{{0, 1}}}));
  CHECK(dual_cyl(single, 0, single.top()) == single.top());
  CHECK(dual_cyl(single, 0, set_of({1})) == set_of({0}));

  // With c_0 the identity the dual is additive.
  auto id = baode::testing::trivial_algebra(3);
  for (auto x : id.ba().elements()) {
    for (auto y : id.ba().elements()) {
      CHECK(dual_cyl(id, 0, x | y) == (dual_cyl(id, 0, x) | dual_cyl(id, 0, y)));
    }
  }
  // In Cm of the 2x2 square it is not: both singletons on the line x_1 = 0
  // have empty dual, their union has the whole line.
  auto sq = square_algebra(2);
  auto u  = set_of({0});
  auto v  = set_of({2});
  CHECK(dual_cyl(sq, 0, u).empty());
  CHECK(dual_cyl(sq, 0, v).empty());
  CHECK(dual_cyl(sq, 0, u | v) == set_of({0, 2}));
  // The multiplicative form holds there.
  for (auto x : sq.ba().elements()) {
    for (auto y : sq.ba().elements()) {
      CHECK(dual_cyl(sq, 0, x & y) == (dual_cyl(sq, 0, x) & dual_cyl(sq, 0, y)));
    }
  }
}

TEST_CASE("positivity is a syntactic scan") {
  CHECK(is_positive_equation(eq("(c 0 (+ x y))", "(+ (c 0 x) (c 0 y))")));
  CHECK(!is_positive_equation(eq("(c 0 (- (c 0 x)))", "(- (c 0 x))")));
  CHECK(is_positive_equation(eq("(s [1 0] (* x y))",
                                "(* (s [1 0] x) (s [1 0] y))")));
  CHECK(is_positive_equation(eq("(+ x 1)", "1")));
}

TEST_CASE("algebra construction validates its operators") {
  auto                 sig = Signature::identity_only(1, false);
  std::vector<Element> id{set_of({0}), set_of({1})};
  CHECK(!error_kind([&] { FiniteBao(FiniteBA(2), sig, {id}, {id}, {}); }));
  // s_id must be the identity.
  CHECK(error_kind([&] {
          FiniteBao(FiniteBA(2), sig, {id}, {{set_of({1}), set_of({0})}}, {});
        })
        == ErrorKind::validation);
  CHECK(error_kind([&] { FiniteBao(FiniteBA(2), sig, {}, {id}, {}); })
        == ErrorKind::size);
  // s_[0 0] must be a Boolean endomorphism.
  auto sig2 = Signature(2, {Transformation{0, 1}, Transformation{0, 0}}, false);
  CHECK(error_kind([&] {
          FiniteBao(FiniteBA(2), sig2, {id, id},
                    {id, {set_of({0, 1}), set_of({0, 1})}}, {});
        })
        == ErrorKind::validation);
  // Non-additive table.
  std::vector<Element> not_additive{Element(), set_of({0}), set_of({1}),
                                    set_of({0})};
  std::vector<Element> id_table{Element(), set_of({0}), set_of({1}),
                                set_of({0, 1})};
  CHECK(error_kind([&] {
          FiniteBao::from_tables(FiniteBA(2), sig, {not_additive}, {id_table},
                                 {});
        })
        == ErrorKind::validation);
}

TEST_CASE("cylindrifiers are monotone on random complex algebras") {
  Rng  rng(5);
  auto sig = Signature::full(2, true);
  std::vector<std::vector<AntiAction>> actions;
  for (std::size_t n = 1; n <= 3; ++n) {
    actions.push_back(enumerate_anti_actions(n, sig));
  }
  for (int trial = 0; trial < 40; ++trial) {
    auto n = 1 + rng.below(3);
    auto a = complex_algebra(random_frame(rng, n, sig, actions[n - 1]));
    for (std::size_t i = 0; i < a.dim(); ++i) {
      for (auto x : a.ba().elements()) {
        for (auto y : a.ba().elements()) {
          if (x.subset_of(y)) {
            CHECK(a.cyl(i, x).subset_of(a.cyl(i, y)));
          }
        }
        CHECK(dual_cyl(a, i, x) == a.complement(a.cyl(i, a.complement(x))));
      }
    }
    // Substitutions compose as the monoid does.
    for (auto const& s : sig.transformations()) {
      for (auto const& t : sig.transformations()) {
        auto e = parse_equation(
            "(s " + to_string(s) + " (s " + to_string(t) + " x))",
            "(s " + to_string(compose(s, t)) + " x)");
        CHECK(check_equation(a, e).valid);
      }
    }
  }
}

TEST_CASE("substitution through diagonals shrinks dimension sets") {
  auto schema = positive_part(default_schema(Signature::full(2, true)));
  std::vector<FiniteBao> algebras{square_algebra(2), square_algebra(3)};
  for (auto const& a : schema_algebras(2, 2, schema)) {
    algebras.push_back(a);
  }
  for (auto const& a : algebras) {
    for (auto x : a.ba().elements()) {
      auto dx = dimension_set(a, x);
      for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
          std::vector<std::size_t> bound;
          for (auto d : dx) {
            if (d != i) {
              bound.push_back(d);
            }
          }
          bound.push_back(j);
          std::sort(bound.begin(), bound.end());
          if (i != j) {
            CHECK(subset(dimension_set(a, subst_ij(a, i, j, x)), bound));
          }
        }
      }
    }
  }
}

TEST_CASE("the default schema") {
  auto sig = Signature::full(2, true);
  auto s   = default_schema(sig);
  auto p   = positive_part(s);
  CHECK(s.entries.size() == p.entries.size() + 2);
  for (auto const& e : s.entries) {
    bool complement = e.equation.name.rfind("cyl-complement", 0) == 0;
    CHECK(is_positive_equation(e.equation) == !complement);
  }
  // Spare-index entries appear only below the full dimension.
  auto spare = default_schema(sig, 1);
  CHECK(spare.entries.size() == s.entries.size() + 2);
  CHECK(spare.entries[spare.entries.size() - 2].equation
        == eq("(c 0 (c 1 x))", "(c 1 (s [1 1] (c 1 x)))"));
  CHECK(spare.entries.back().equation
        == eq("(c 1 (s [0 1] x))", "(s [0 1] (c 1 x))"));

  for (auto const& c : check_schema(square_algebra(2), s)) {
    CHECK_MESSAGE(c.result.valid, c.name);
  }
  CHECK(satisfies(square_algebra(3), s));
  CHECK(!satisfies(crossing_algebra(), default_schema(crossing_algebra().sig())));
}
