#include "baode/witness.hpp"

#include <algorithm>
#include <set>

#include "baode/amalgam.hpp"
#include "baode/error.hpp"

namespace baode {

  namespace {

    std::vector<Element> intersect(std::vector<Element> const& x1,
                                   std::vector<Element> const& x2) {
      std::vector<Element> out;
      for (auto e : x1) {
        if (std::find(x2.begin(), x2.end(), e) != x2.end()
            && std::find(out.begin(), out.end(), e) == out.end()) {
          out.push_back(e);
        }
      }
      return out;
    }

    std::vector<Element> embed_all(DilationPair const&         pair,
                                   std::vector<Element> const& xs) {
      std::vector<Element> out;
      for (auto x : xs) {
        if (!pair.small().ba().contains(x)) {
          fail(ErrorKind::index,
               "generator " + to_string(x) + " not in the small algebra");
        }
        out.push_back(pair.embed(x));
      }
      return out;
    }

    // Least element of sub above x, as an element of the ambient algebra.
    Element least_above(Subalgebra const& sub, Element x) {
      Element out;
      for (auto b : sub.blocks) {
        if (!(b & x).empty()) {
          out |= b;
        }
      }
      return out;
    }

    void check_triple(DilationPair const& pair, WitnessTriple const& w,
                      Subalgebra const& side, char const* name) {
      auto const& big = pair.big();
      if (w.k >= big.dim()) {
        fail(ErrorKind::index, std::string(name) + " triple has k = "
                                   + std::to_string(w.k) + " outside "
                                   + std::to_string(big.dim()));
      }
      if (!big.sig().index_of(w.tau)) {
        fail(ErrorKind::index, "transformation " + to_string(w.tau)
                                   + " not in the dilation");
      }
      if (!big.ba().contains(w.x) || !side.contains(w.x)) {
        fail(ErrorKind::containment, std::string(name) + " triple element "
                                         + to_string(w.x)
                                         + " is outside its subalgebra");
      }
    }

    void exclude_triple(FiniteBao const& big, WitnessTriple const& w,
                        std::set<std::size_t>& used) {
      for (auto i : dimension_set(big, w.x)) {
        used.insert(i);
      }
      for (auto i : w.tau.support()) {
        used.insert(i);
      }
      used.insert(w.k);
    }

    std::size_t fresh(std::size_t dim, std::set<std::size_t>& used,
                      char const* name, std::size_t i) {
      for (std::size_t m = 0; m < dim; ++m) {
        if (!used.contains(m)) {
          used.insert(m);
          return m;
        }
      }
      fail(ErrorKind::dimension_budget,
           "no fresh index left for " + std::string(name) + "_"
               + std::to_string(i) + " within dimension "
               + std::to_string(dim));
    }

    Element implication(FiniteBao const& big, WitnessTriple const& w,
                        std::size_t u) {
      return big.complement(big.subst(w.tau, big.cyl(w.k, w.x)))
             | big.subst(w.tau, subst_ij(big, w.k, u, w.x));
    }

    Element untransformed(FiniteBao const& big, WitnessTriple const& w,
                          std::size_t u) {
      return big.complement(big.cyl(w.k, w.x)) | subst_ij(big, w.k, u, w.x);
    }

  }  // namespace

  bool WitnessSystem::claims_hold() const {
    return std::all_of(claims.begin(), claims.end(),
                       [](WitnessClaim const& c) { return c.holds; });
  }

  std::optional<Element> small_interpolant(DilationPair const&         pair,
                                           std::vector<Element> const& x1,
                                           std::vector<Element> const& x2,
                                           Element a, Element c) {
    auto const& small = pair.small();
    auto        s1    = generated_subalgebra(small, x1);
    auto        s2    = generated_subalgebra(small, x2);
    auto        s0    = generated_subalgebra(small, intersect(x1, x2));
    if (!s1.contains(a)) {
      fail(ErrorKind::containment, "a is not generated by the left side");
    }
    if (!s2.contains(c)) {
      fail(ErrorKind::containment, "c is not generated by the right side");
    }
    std::vector<Element> f_images;
    std::vector<Element> h_images;
    for (auto b : s0.blocks) {
      f_images.push_back(s1.lower(b));
      h_images.push_back(s2.lower(b));
    }
    AmalgamationInstance inst{
        s0.algebra,
        s1.algebra,
        s2.algebra,
        AlgebraMorphism(s0.algebra, s1.algebra, std::move(f_images)),
        AlgebraMorphism(s0.algebra, s2.algebra, std::move(h_images)),
        Schema{"empty", {}}};
    auto found = find_interpolant(inst, s1.lower(a), s2.lower(c));
    if (!found) {
      return std::nullopt;
    }
    return s0.lift(*found);
  }

  WitnessSystem build_witness_system(DilationPair const& pair,
                                     WitnessInput const& in) {
    auto const& big    = pair.big();
    auto const  common = intersect(in.x1, in.x2);
    auto        sg1    = generated_subalgebra(big, embed_all(pair, in.x1));
    auto        sg2    = generated_subalgebra(big, embed_all(pair, in.x2));
    auto        sg0    = generated_subalgebra(big, embed_all(pair, common));
    auto interpolant   = small_interpolant(pair, in.x1, in.x2, in.a, in.c);

    for (auto const& w : in.left) {
      check_triple(pair, w, sg1, "left");
    }
    for (auto const& w : in.right) {
      check_triple(pair, w, sg2, "right");
    }

    auto const ia = pair.embed(in.a);
    auto const ic = pair.embed(in.c);

    std::set<std::size_t> used;
    for (std::size_t i = 0; i < pair.alpha(); ++i) {
      used.insert(i);
    }
    for (auto i : dimension_set(big, ia)) {
      used.insert(i);
    }
    for (auto i : dimension_set(big, ic)) {
      used.insert(i);
    }
    std::vector<std::size_t> u;
    std::vector<std::size_t> v;
    auto const               steps = std::max(in.left.size(), in.right.size());
    for (std::size_t i = 0; i < steps; ++i) {
      if (i < in.left.size()) {
        exclude_triple(big, in.left[i], used);
      }
      if (i < in.right.size()) {
        exclude_triple(big, in.right[i], used);
      }
      if (i < in.left.size()) {
        u.push_back(fresh(big.dim(), used, "u", i));
      }
      if (i < in.right.size()) {
        v.push_back(fresh(big.dim(), used, "v", i));
      }
    }

    std::vector<Element> y1{ia};
    std::vector<Element> y2{big.complement(ic)};
    std::vector<Element> z;
    std::vector<Element> t;
    for (std::size_t i = 0; i < in.left.size(); ++i) {
      y1.push_back(implication(big, in.left[i], u[i]));
      z.push_back(untransformed(big, in.left[i], u[i]));
    }
    for (std::size_t i = 0; i < in.right.size(); ++i) {
      y2.push_back(implication(big, in.right[i], v[i]));
      t.push_back(untransformed(big, in.right[i], v[i]));
    }

    std::vector<WitnessClaim> claims;
    auto claim = [&](std::string name, bool holds) {
      claims.push_back({std::move(name), holds});
    };
    auto const n = [](char const* s, std::size_t i) {
      return std::string(s) + "_" + std::to_string(i);
    };
    for (std::size_t i = 0; i < steps; ++i) {
      if (i < u.size()) {
        for (std::size_t p = 0; p < i; ++p) {
          claim("c_" + n("u", i) + " fixes " + n("z", p),
                big.cyl(u[i], z[p]) == z[p]);
        }
        claim("c_" + n("u", i) + " " + n("z", i) + " = 1",
              big.cyl(u[i], z[i]) == big.top());
        for (std::size_t j = 0; j < std::min(i, t.size()); ++j) {
          claim("dual c_" + n("u", i) + " fixes " + n("t", j),
                dual_cyl(big, u[i], t[j]) == t[j]);
        }
      }
      if (i < v.size()) {
        for (std::size_t p = 0; p < i; ++p) {
          claim("c_" + n("v", i) + " fixes " + n("t", p),
                big.cyl(v[i], t[p]) == t[p]);
        }
        claim("c_" + n("v", i) + " " + n("t", i) + " = 1",
              big.cyl(v[i], t[i]) == big.top());
        for (std::size_t j = 0; j <= i && j < z.size(); ++j) {
          claim("dual c_" + n("v", i) + " fixes " + n("z", j),
                dual_cyl(big, v[i], z[j]) == z[j]);
        }
      }
    }

    Element g1 = big.top();
    for (auto y : y1) {
      g1 &= y;
    }
    Element g2 = big.top();
    for (auto y : y2) {
      g2 &= y;
    }
    auto const tr1 = least_above(sg0, g1);
    auto const tr2 = least_above(sg0, g2);
    Filter     h1(sg1.algebra.ba(), sg1.lower(g1));
    Filter     h2(sg2.algebra.ba(), sg2.lower(g2));
    Filter     h(sg0.algebra.ba(), sg0.lower(tr1 & tr2));

    WitnessSystem ws{std::move(u),
                     std::move(v),
                     std::move(z),
                     std::move(t),
                     std::move(y1),
                     std::move(y2),
                     sg1,
                     sg2,
                     sg0,
                     h1,
                     h2,
                     tr1,
                     tr2,
                     h,
                     std::nullopt,
                     std::nullopt,
                     std::nullopt,
                     false,
                     std::move(claims),
                     interpolant};
    if (!h.is_proper()) {
      return ws;
    }
    auto h_star = extend_to_ultrafilter(sg0.algebra.ba(), h);
    auto e      = sg0.lift(h_star.generator());
    auto f1     = extend_to_ultrafilter(sg1.algebra.ba(),
                                        Filter(sg1.algebra.ba(), sg1.lower(g1 & e)));
    auto f2     = extend_to_ultrafilter(sg2.algebra.ba(),
                                        Filter(sg2.algebra.ba(), sg2.lower(g2 & e)));
    ws.traces_agree = least_above(sg0, sg1.lift(f1.generator())) == e
                      && least_above(sg0, sg2.lift(f2.generator())) == e;
    ws.h_star = h_star;
    ws.f1     = f1;
    ws.f2     = f2;
    return ws;
  }

}  // namespace baode
