#include "baode/amalgam.hpp"

#include "baode/error.hpp"

namespace baode {

  void validate_instance(AmalgamationInstance const& inst) {
    auto check_mono = [](AlgebraMorphism const& m, FiniteBao const& from,
                         FiniteBao const& to, std::string const& name) {
      if (!(m.source() == from) || !(m.target() == to)) {
        fail(ErrorKind::morphism, name + " does not connect the named algebras");
      }
      if (!m.is_homomorphism()) {
        fail(ErrorKind::morphism, name + " is not a homomorphism");
      }
      if (!m.is_injective()) {
        fail(ErrorKind::morphism, name + " is not injective");
      }
    };
    check_mono(inst.f, inst.base, inst.left, "f");
    check_mono(inst.h, inst.base, inst.right, "h");
    auto check_schema_of = [&](FiniteBao const& a, std::string const& name) {
      for (auto const& c : check_schema(a, inst.schema)) {
        if (!c.result.valid) {
          fail(ErrorKind::validation,
               name + " fails schema equation " + c.name + ": "
                   + to_string(c.equation));
        }
      }
    };
    check_schema_of(inst.base, "A");
    check_schema_of(inst.left, "B");
    check_schema_of(inst.right, "C");
  }

  bool SupapReport::passed() const {
    for (auto const& c : checks) {
      if (!c.passed) {
        return false;
      }
    }
    return failures.empty();
  }

  std::optional<Element> find_interpolant(AmalgamationInstance const& inst,
                                          Element b, Element c) {
    Element a;
    auto const& images = inst.f.atom_images();
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (!(images[i] & b).empty()) {
        a |= Element::atom(i);
      }
    }
    if (!b.subset_of(inst.f(a)) || !inst.h(a).subset_of(c)) {
      return std::nullopt;
    }
    return a;
  }

  SupapCertificate superamalgamate(AmalgamationInstance const& inst) {
    validate_instance(inst);
    auto fd    = dual_morphism(inst.f);
    auto hd    = dual_morphism(inst.h);
    auto frame = insep(fd, hd);
    auto d     = complex_algebra(frame.subframe.frame);

    auto const&          points = frame.subframe.points;
    std::vector<Element> g_images(inst.left.atom_count());
    std::vector<Element> k_images(inst.right.atom_count());
    for (std::size_t p = 0; p < points.size(); ++p) {
      g_images[points[p][0]] |= Element::atom(p);
      k_images[points[p][1]] |= Element::atom(p);
    }
    SupapCertificate cert{
        d, AlgebraMorphism(inst.left, d, std::move(g_images)),
        AlgebraMorphism(inst.right, d, std::move(k_images)), std::move(frame),
        {}};
    cert.report = verify_supap(inst, cert);
    return cert;
  }

  SupapReport verify_supap(AmalgamationInstance const& inst,
                           SupapCertificate const&     cert) {
    SupapReport r;
    auto const& d = cert.amalgam;
    auto        add = [&](std::string name, bool ok, std::string detail) {
      r.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    bool g_shape = cert.g.source() == inst.left && cert.g.target() == d;
    bool k_shape = cert.k.source() == inst.right && cert.k.target() == d;
    add("g-homomorphism", g_shape && cert.g.is_homomorphism(),
        g_shape ? "" : "g does not map B into D");
    add("k-homomorphism", k_shape && cert.k.is_homomorphism(),
        k_shape ? "" : "k does not map C into D");
    add("g-injective", cert.g.is_injective(), "");
    add("k-injective", cert.k.is_injective(), "");

    std::string square_detail;
    for (std::size_t x = 0; x < inst.base.ba().size(); ++x) {
      auto a = inst.base.ba().element(x);
      if (cert.g(inst.f(a)) != cert.k(inst.h(a))) {
        square_detail = "g(f(a)) != k(h(a)) at a = " + to_string(a);
        break;
      }
    }
    add("commuting-square", square_detail.empty(), square_detail);

    std::string schema_detail;
    for (auto const& c : check_schema(d, inst.schema)) {
      if (!c.result.valid) {
        schema_detail += (schema_detail.empty() ? "" : ", ") + c.name;
      }
    }
    add("schema-valid", schema_detail.empty(),
        schema_detail.empty() ? "" : "D fails " + schema_detail);

    auto const& bb = inst.left.ba();
    auto const& cc = inst.right.ba();
    for (std::size_t x = 0; x < bb.size(); ++x) {
      auto b = bb.element(x);
      for (std::size_t y = 0; y < cc.size(); ++y) {
        auto c = cc.element(y);
        ++r.pairs_checked;
        if (!cert.g(b).subset_of(cert.k(c))) {
          continue;
        }
        if (!find_interpolant(inst, b, c)) {
          Element cover;
          auto const& images = inst.f.atom_images();
          for (std::size_t i = 0; i < images.size(); ++i) {
            if (!(images[i] & b).empty()) {
              cover |= Element::atom(i);
            }
          }
          r.failures.push_back({b, c, cover});
        }
      }
    }
    add("interpolation", r.failures.empty(),
        r.failures.empty()
            ? std::to_string(r.pairs_checked) + " pairs"
            : "no interpolant for b = " + to_string(r.failures[0].b)
                  + ", c = " + to_string(r.failures[0].c));

    // Informational: elements in both images come from A.
    if (!g_shape || !k_shape) {
      return r;
    }
    std::vector<bool> in_g(d.ba().size(), false);
    std::vector<bool> in_base(d.ba().size(), false);
    for (std::size_t x = 0; x < bb.size(); ++x) {
      in_g[cert.g(bb.element(x)).bits()] = true;
    }
    for (std::size_t x = 0; x < inst.base.ba().size(); ++x) {
      in_base[cert.g(inst.f(inst.base.ba().element(x))).bits()] = true;
    }
    r.strong_amalgamation = true;
    for (std::size_t y = 0; y < cc.size(); ++y) {
      auto e = cert.k(cc.element(y)).bits();
      if (in_g[e] && !in_base[e]) {
        r.strong_amalgamation = false;
      }
    }
    return r;
  }

}  // namespace baode
