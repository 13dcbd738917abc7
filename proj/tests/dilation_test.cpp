#include "doctest.h"

#include "baode/dilation.hpp"
#include "baode/generate.hpp"
#include "baode/property.hpp"
#include "baode/witness.hpp"
#include "support.hpp"

using namespace baode;
using baode::testing::error_kind;
using baode::testing::set_of;

namespace {

  FiniteBao square_algebra(std::size_t base, std::size_t dim = 2) {
    return complex_algebra(assignment_frame(base, Signature::full(dim, true)));
  }

  TransformationSystem::Function random_function(Rng&                        rng,
                                                 TransformationSystem const& ts) {
    TransformationSystem::Function f(ts.point_count());
    for (auto& v : f) {
      v = rng.subset(ts.values().atom_count());
    }
    return f;
  }

  std::vector<std::size_t> perfect_points(DilationPair const& pair) {
    std::vector<std::size_t> out;
    auto const&              ba = pair.big().ba();
    std::vector<Transformation> adm{Transformation::identity(pair.beta())};
    for (std::size_t y = 0; y < pair.big().atom_count(); ++y) {
      if (is_perfect_ultrafilter(pair, adm, Filter::principal(ba, Element::atom(y)))) {
        out.push_back(y);
      }
    }
    return out;
  }

}  // namespace

TEST_CASE("function systems act pointwise") {
  auto one = full_function_system(1, square_algebra(2), 2);
  CHECK(one.point_count() == 1);

  Rng  rng(2);
  auto ts = full_function_system(2, square_algebra(2), 2);
  REQUIRE(ts.point_count() == 4);
  auto sig = Signature::full(2, false);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_function(rng, ts);
    CHECK(ts.subst(Transformation{0, 1}, f) == f);
    auto swapped = ts.subst(Transformation{1, 0}, f);
    for (std::size_t x0 = 0; x0 < 2; ++x0) {
      for (std::size_t x1 = 0; x1 < 2; ++x1) {
        CHECK(swapped[ts.index({x0, x1})] == f[ts.index({x1, x0})]);
      }
    }
    for (auto const& s : sig.transformations()) {
      for (auto const& t : sig.transformations()) {
        CHECK(ts.subst(s, ts.subst(t, f)) == ts.subst(compose(s, t), f));
      }
    }
  }
  CHECK(error_kind([] { full_function_system(101, square_algebra(2), 2); })
        == ErrorKind::size);
  CHECK(error_kind([&] { ts.subst(Transformation{0}, ts.constant(Element())); })
        == ErrorKind::map);
}

TEST_CASE("H sends p to its substitution instances") {
  auto a = square_algebra(2);
  HEmbedding h(a);
  CHECK(h(Element()) == h.system().constant(Element()));
  CHECK(h(a.top()) == h.system().constant(a.top()));
  for (std::size_t x = 0; x < h.system().point_count(); ++x) {
    auto tau = Transformation(h.system().assignment(x));
    CHECK(h(set_of({1}))[x] == a.subst(tau, set_of({1})));
  }

  // Injective on every schema algebra with at most two points, including
  // two-atom ones.
  auto        schema   = positive_part(default_schema(Signature::full(2, true)));
  std::size_t two_atom = 0;
  auto        algebras = schema_algebras(2, 2, schema);
  algebras.push_back(a);
  for (auto const& b : algebras) {
    HEmbedding hb(b);
    two_atom += b.atom_count() == 2;
    for (auto p : b.ba().elements()) {
      for (auto q : b.ba().elements()) {
        if (p != q) {
          CHECK(hb(p) != hb(q));
        }
      }
    }
  }
  CHECK(two_atom > 0);

  auto partial = complex_algebra(baode::testing::plain_frame(1, {{}, {}}));
  CHECK(error_kind([&] { HEmbedding{partial}; }) == ErrorKind::signature);
}

TEST_CASE("K restricts to the first coordinates") {
  auto small = full_function_system(2, square_algebra(2), 2);
  KDilation same(small, 2);
  Rng       rng(9);
  auto      f = random_function(rng, small);
  CHECK(same(f) == f);

  KDilation k(small, 3);
  CHECK(k(small.constant(set_of({0, 2}))) == k.system().constant(set_of({0, 2})));
  for (std::size_t y = 0; y < k.system().point_count(); ++y) {
    auto x = k.system().assignment(y);
    CHECK(k(f)[y] == f[small.index({x[0], x[1]})]);
  }
  for (auto const& tau : Signature::full(2, false).transformations()) {
    Transformation lifted({tau(0), tau(1), 2});
    CHECK(k(small.subst(tau, f)) == k.system().subst(lifted, k(f)));
  }

  auto line = full_function_system(2, square_algebra(2), 1);
  KDilation kl(line, 2);
  auto g = random_function(rng, line);
  CHECK(kl(line.subst(Transformation{0}, g))
        == kl.system().subst(Transformation{0, 1}, kl(g)));
  CHECK(error_kind([&] { KDilation(small, 1); }) == ErrorKind::index);
}

TEST_CASE("the function-system dilation of a square algebra") {
  auto r = function_dilation_report(square_algebra(2), 3);
  CHECK(r.kh_inside_nr);
  CHECK(r.nr_equals_k_image);
  // K H[a] is a proper part of the neat reduct at this scale.
  CHECK(r.kh_atoms == 4);
  CHECK(r.nr_atoms == 16);
  // It is still the neat reduct of the subalgebra it generates.
  CHECK(r.minimal_dilation);
}

TEST_CASE("supports") {
  auto a = square_algebra(2);
  auto p = set_of({0});
  CHECK(supports(a, {0, 1}, p));
  CHECK(supports(a, {}, Element()));
  CHECK(supports(a, {}, a.top()));
  CHECK(!supports(a, {}, p));
  // x_0 = 0 depends on index 0 only.
  CHECK(supports(a, {0}, set_of({0, 1})));
  CHECK(!supports(a, {1}, set_of({0, 1})));
}

TEST_CASE("neat reducts") {
  auto b    = square_algebra(2);
  auto full = neat_reduct(b, {0, 1});
  CHECK(full.algebra == b);

  auto pair = square_dilation(3, 1, 2);
  auto nr   = neat_reduct(pair.big(), {0});
  CHECK(nr.algebra.dim() == 1);
  CHECK(find_isomorphism(nr.algebra, pair.small()).has_value());
  CHECK(nr.blocks == pair.embedding());
  for (auto x : {Element(), pair.big().top()}) {
    CHECK(supports(pair.big(), {0}, x));
  }
  CHECK(error_kind([&] { neat_reduct(b, {2}); }) == ErrorKind::index);
}

TEST_CASE("renaming indices") {
  auto a = square_algebra(2);
  CHECK(rename_dilation(a, Transformation{0, 1}) == a);
  auto r = rename_dilation(a, Transformation{1, 0});
  CHECK(r.cyl_atoms()[0] == a.cyl_atoms()[1]);
  CHECK(r.cyl_atoms()[1] == a.cyl_atoms()[0]);
  CHECK(rename_dilation(r, Transformation{1, 0}) == a);
  CHECK(rename_embedding(a, Transformation{1, 0}).is_homomorphism());
  CHECK(rename_embedding(a, Transformation{1, 0}).is_injective());
  CHECK(error_kind([&] { rename_dilation(a, Transformation{0, 0}); })
        == ErrorKind::map);
  CHECK(error_kind([&] { rename_dilation(a, Transformation{0, 1, 2}); })
        == ErrorKind::map);
}

TEST_CASE("dilation pairs are validated") {
  auto pair = square_dilation(2, 1, 2);
  CHECK(pair.embed(set_of({0})) == set_of({0, 1}));
  auto const& small = pair.small();
  auto const& big   = pair.big();
  CHECK(error_kind([&] {
          DilationPair(small, big, {set_of({0}), set_of({1, 2, 3})});
        })
            .has_value());
  CHECK(error_kind([&] {
          DilationPair(small, big, {set_of({0, 1}), set_of({0, 2, 3})});
        })
        == ErrorKind::morphism);
  // With no generators the small side is the diagonal and its complement.
  auto sub = sub_dilation(square_dilation(2, 2, 3), {});
  CHECK(sub.small().atom_count() == 2);
  CHECK(sub.big().dim() == 3);
}

TEST_CASE("dilated cylindrifiers") {
  auto pair = square_dilation(2, 1, 2);
  auto id   = Transformation::identity(2);
  for (auto p : pair.small().ba().elements()) {
    CHECK(dilated_cylindrifier(pair, 0, id, p)
          == pair.embed(pair.small().cyl(0, p)));
    CHECK(dilated_cylindrifier(pair, 1, id, p) == pair.embed(p));
  }
  for (auto const& sigma : pair.big().sig().transformations()) {
    if (sigma(0) < 2) {
      for (std::size_t k = 0; k < 2; ++k) {
        CHECK(dilated_cylindrifier(pair, k, sigma, Element()) == Element());
      }
    }
  }
  auto v = verify_dilation_pair(pair);
  CHECK(v.disagreements == 0);
  CHECK(v.evaluations > 0);
  auto one = verify_dilated_cylindrifier(pair, 0, Transformation{1, 0},
                                         set_of({0}));
  CHECK(one.ok());
  CHECK(one.admissible >= 1);
  CHECK(one.value == pair.big().cyl(0, pair.big().subst(Transformation{1, 0},
                                                        pair.embed(set_of({0})))));

  auto sq = square_dilation(2, 2, 3);
  CHECK(error_kind([&] {
          dilated_cylindrifier(sq, 0, Transformation{0, 0, 2}, set_of({0}));
        })
        == ErrorKind::map);
  CHECK(error_kind([&] {
          dilated_cylindrifier(sq, 3, Transformation::identity(3), set_of({0}));
        })
        == ErrorKind::index);
}

TEST_CASE("dilated cylindrifiers agree across rho and presentations") {
  Rng  rng(4);
  auto pairs = dilation_corpus(rng, 24);
  REQUIRE(pairs.size() >= 24);
  auto r = check_dilations(pairs, true);
  CHECK(r.passed());
}

TEST_CASE("perfect ultrafilters") {
  // With c_0 = 0 no condition needs a witness.
  auto      sig = Signature::identity_only(1, false);
  FiniteBao zero(FiniteBA(1), sig, {{Element()}}, {{set_of({0})}}, {});
  CHECK(perfect_points(DilationPair(zero, zero, {set_of({0})}))
        == std::vector<std::size_t>{0});
  // The one-point square has c_0 1 = 1 and no spare index.
  CHECK(perfect_points(square_dilation(1, 1, 1)).empty());

  // Without spare indices c_0 {(0,0)} holds at (1,0) with no witness.
  auto tight = square_dilation(2, 2, 2);
  CHECK(!is_perfect_ultrafilter(tight, {Transformation::identity(2)},
                                Filter::principal(tight.big().ba(), set_of({2}))));

  // With two spare coordinates a point is perfect iff its spare
  // coordinates take both values: (a,0,1) and (a,1,0).
  auto spare = square_dilation(2, 1, 3);
  CHECK(perfect_points(spare) == std::vector<std::size_t>{1, 2, 5, 6});

  CHECK(error_kind([&] {
          is_perfect_ultrafilter(spare, {Transformation::identity(3)},
                                 Filter::principal(spare.big().ba(),
                                                   set_of({0, 1})));
        })
        == ErrorKind::properness);
}

TEST_CASE("witness filter steps") {
  auto pair = square_dilation(2, 1, 2);
  auto id   = Transformation::identity(2);
  auto top  = pair.embed(pair.small().top());
  auto g    = witness_filter_step(pair, {}, id, 0, top, 1);
  CHECK(g == std::vector<Element>{pair.big().top()});
  auto const& ba = pair.big().ba();
  CHECK(generated_filter(ba, g).is_proper());

  auto x    = pair.embed(set_of({0}));
  auto step = witness_filter_step(pair, {x}, id, 0, x, 1);
  REQUIRE(step.size() == 2);
  // With c_0 x = 1 the implication is s_[0/1] x.
  CHECK(step[1] == pair.big().subst(Transformation{1, 1}, x));
  CHECK(generated_filter(ba, step).generator() == (x & step[1]));

  CHECK(error_kind([&] { witness_filter_step(pair, step, id, 0, x, 1); })
        == ErrorKind::witness_index);
  CHECK(error_kind([&] { witness_filter_step(pair, {}, id, 0, x, 0); })
        == ErrorKind::witness_index);
  CHECK(error_kind([&] {
          witness_filter_step(pair, {}, Transformation{0, 0}, 0, x, 1);
        })
        == ErrorKind::witness_index);
  CHECK(error_kind([&] {
          witness_filter_step(pair, {}, id, 0, set_of({0}), 1);
        })
        == ErrorKind::containment);
}

TEST_CASE("witness systems") {
  auto    pair = square_dilation(2, 2, 4);
  auto    id   = Transformation::identity(4);
  Element p    = set_of({0});  // (0,0)
  Element q    = set_of({3});  // (1,1)

  SUBCASE("a equal to c") {
    auto ws = build_witness_system(pair, {{p}, {p}, p, p, {}, {}});
    CHECK(!ws.h_proper());
    CHECK(ws.interpolant == p);
    CHECK(ws.claims_hold());
  }
  SUBCASE("a equal to 0") {
    auto ws = build_witness_system(pair, {{p}, {q}, Element(), q, {}, {}});
    CHECK(!ws.h1.is_proper());
    CHECK(!ws.h_proper());
    CHECK(ws.interpolant == Element());
  }
  SUBCASE("no interpolant between disjoint points") {
    WitnessInput in{{p}, {q}, p, q,
                    {{id, 0, pair.embed(p)}}, {{id, 1, pair.embed(q)}}};
    auto ws = build_witness_system(pair, in);
    // X1 and X2 share nothing, so the common part is generated by the
    // diagonals: the equality patterns of four coordinates over two values.
    CHECK(ws.common.algebra.atom_count() == 8);
    CHECK(ws.h_proper());
    CHECK(!ws.interpolant.has_value());
    REQUIRE(ws.f1.has_value());
    REQUIRE(ws.f2.has_value());
    CHECK(ws.traces_agree);
    CHECK(ws.claims_hold());
    CHECK(ws.u == std::vector<std::size_t>{2});
    CHECK(ws.v == std::vector<std::size_t>{3});
    CHECK(ws.y1.front() == pair.embed(p));
    CHECK(ws.y2.front() == pair.big().complement(pair.embed(q)));
  }
  SUBCASE("fresh indices run out") {
    auto    line = square_dilation(2, 1, 2);
    Element z    = set_of({0});
    auto    t    = Transformation::identity(2);
    WitnessInput in{{z}, {z}, z, z, {{t, 0, line.embed(z)}},
                    {{t, 0, line.embed(z)}}};
    CHECK(error_kind([&] { build_witness_system(line, in); })
          == ErrorKind::dimension_budget);
  }
}

TEST_CASE("the witness dichotomy on the curated corpus") {
  auto cases = witness_corpus();
  REQUIRE(cases.size() >= 20);
  std::vector<WitnessCase> sample;
  for (std::size_t k = 0; k < cases.size(); k += 13) {
    sample.push_back(cases[k]);
  }
  CHECK(check_witness(sample).passed());
}
