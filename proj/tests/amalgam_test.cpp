#include "doctest.h"

#include "baode/amalgam.hpp"
#include "baode/generate.hpp"
#include "baode/property.hpp"
#include "support.hpp"

using namespace baode;
using baode::testing::error_kind;
using baode::testing::plain_frame;
using baode::testing::set_of;
using baode::testing::trivial_algebra;

namespace {

  Schema empty_schema() {
    return Schema{"empty", {}};
  }

  AmalgamationInstance two_four_four() {
    auto a = trivial_algebra(1);
    auto b = trivial_algebra(2);
    return {a, b, b, AlgebraMorphism(a, b, {b.top()}),
            AlgebraMorphism(a, b, {b.top()}), empty_schema()};
  }

  CheckLine const* check_named(SupapReport const& r, std::string const& name) {
    for (auto const& c : r.checks) {
      if (c.name == name) {
        return &c;
      }
    }
    return nullptr;
  }

}  // namespace

TEST_CASE("identities amalgamate to the base") {
  auto                 a = trivial_algebra(1);
  AmalgamationInstance inst{a, a, a, AlgebraMorphism::identity(a),
                            AlgebraMorphism::identity(a), empty_schema()};
  auto cert = superamalgamate(inst);
  CHECK(find_isomorphism(cert.amalgam, a).has_value());
  CHECK(cert.g.atom_images() == std::vector<Element>{cert.amalgam.top()});
  CHECK(cert.report.passed());
}

TEST_CASE("the 2/4/4 instance") {
  auto inst = two_four_four();
  auto cert = superamalgamate(inst);
  CHECK(cert.amalgam.atom_count() == 4);
  CHECK(cert.amalgam.ba().size() == 16);
  CHECK(cert.frame.subframe.points.size() == 4);
  CHECK(cert.report.passed());
  CHECK(cert.report.pairs_checked == 16);
  for (auto const& c : cert.report.checks) {
    CHECK_MESSAGE(c.passed, c.name);
  }
  // g(b) pairs the atoms below b with every compatible atom of C.
  CHECK(cert.g(set_of({0})) == set_of({0, 1}));
  CHECK(cert.k(set_of({0})) == set_of({0, 2}));
}

TEST_CASE("automorphisms give the twisted diagonal") {
  auto c     = complex_algebra(plain_frame(3, {{{0, 1}, {1, 2}, {2, 0}}}));
  auto rot   = AlgebraMorphism(c, c, {set_of({1}), set_of({2}), set_of({0})});
  AmalgamationInstance inst{c, c, c, rot, rot, empty_schema()};
  auto cert = superamalgamate(inst);
  CHECK(cert.frame.subframe.points.size() == 3);
  CHECK(find_isomorphism(cert.amalgam, c).has_value());
  CHECK(cert.report.passed());

  AmalgamationInstance twisted{c, c, c, AlgebraMorphism::identity(c), rot,
                               empty_schema()};
  auto t = superamalgamate(twisted);
  CHECK(t.frame.subframe.points
        == std::vector<std::vector<std::size_t>>{{0, 1}, {1, 2}, {2, 0}});
  CHECK(find_isomorphism(t.amalgam, c).has_value());
  CHECK(t.report.passed());
}

TEST_CASE("corrupted certificates fail with a named pair") {
  auto inst = two_four_four();
  auto cert = superamalgamate(inst);
  auto d    = cert.amalgam;
  // g collapses atom 1 of B to 0.
  cert.g = AlgebraMorphism(inst.left, d, {d.top(), Element()});
  auto r = verify_supap(inst, cert);
  CHECK(!r.passed());
  REQUIRE(check_named(r, "g-injective") != nullptr);
  CHECK(!check_named(r, "g-injective")->passed);
  REQUIRE(!r.failures.empty());
  CHECK(r.failures.front().b == set_of({1}));
  CHECK(r.failures.front().c == Element());
}

TEST_CASE("interpolants") {
  auto inst = two_four_four();
  CHECK(find_interpolant(inst, Element(), Element()) == Element());
  auto a0 = inst.base.top();
  auto i  = find_interpolant(inst, inst.f(a0), inst.h(a0));
  REQUIRE(i.has_value());
  CHECK(i->subset_of(a0));
  CHECK(find_interpolant(inst, set_of({0}), inst.h(inst.base.top()))
        == inst.base.top());
  CHECK(!find_interpolant(inst, set_of({0}), set_of({1})).has_value());
}

TEST_CASE("instances are validated") {
  auto a = trivial_algebra(1);
  auto b = trivial_algebra(2);
  AmalgamationInstance not_injective{b, a, a, AlgebraMorphism(b, a, {a.top(), Element()}),
                                     AlgebraMorphism(b, a, {a.top(), Element()}),
                                     empty_schema()};
  CHECK(error_kind([&] { validate_instance(not_injective); })
        == ErrorKind::morphism);
  CHECK(error_kind([&] { superamalgamate(not_injective); })
        == ErrorKind::morphism);

  auto inst   = two_four_four();
  inst.schema = Schema{"false", {{parse_equation("x", "0", "collapse"), true}}};
  CHECK(error_kind([&] { validate_instance(inst); }) == ErrorKind::validation);
}

TEST_CASE("exhaustive small instances superamalgamate") {
  auto schema = positive_part(default_schema(Signature::full(2, true), 1));
  auto algebras = schema_algebras(2, 2, schema);
  REQUIRE(!algebras.empty());
  auto instances = exhaustive_instances(algebras, schema, 150);
  REQUIRE(instances.size() >= 50);
  auto r = check_supap(instances, "small");
  CHECK(r.passed());

  // Positive equations valid in B and C stay valid in D, and the square
  // commutes elementwise.
  for (std::size_t n = 0; n < instances.size(); n += 7) {
    auto const& inst = instances[n];
    auto        cert = superamalgamate(inst);
    for (auto const& e : schema.entries) {
      if (check_equation(inst.left, e.equation).valid
          && check_equation(inst.right, e.equation).valid) {
        CHECK_MESSAGE(check_equation(cert.amalgam, e.equation).valid,
                      e.equation.name);
      }
    }
    for (auto x : inst.base.ba().elements()) {
      CHECK(cert.g(inst.f(x)) == cert.k(inst.h(x)));
    }
  }
}
