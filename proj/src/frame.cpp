#include "baode/frame.hpp"

#include <algorithm>

#include "baode/error.hpp"

namespace baode {

  Relation relation_from_pairs(
      std::size_t                                              n,
      std::vector<std::pair<std::size_t, std::size_t>> const& pairs) {
    Relation r(n);
    for (auto [t, s] : pairs) {
      if (t >= n || s >= n) {
        fail(ErrorKind::index, "relation pair (" + std::to_string(t) + ", "
                                   + std::to_string(s)
                                   + ") outside the universe");
      }
      r[t] |= Element::atom(s);
    }
    return r;
  }

  std::vector<std::pair<std::size_t, std::size_t>> relation_pairs(
      Relation const& r) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t t = 0; t < r.size(); ++t) {
      for_each_atom(r[t], [&](std::size_t s) { out.emplace_back(t, s); });
    }
    return out;
  }

  Relation converse(Relation const& r) {
    Relation out(r.size());
    for (std::size_t t = 0; t < r.size(); ++t) {
      for_each_atom(r[t], [&](std::size_t s) { out[s] |= Element::atom(t); });
    }
    return out;
  }

  Frame::Frame(std::size_t size, Signature sig, std::vector<Relation> t,
               std::vector<Relation> s, std::vector<Element> d)
      : size_(size),
        sig_(std::move(sig)),
        t_(std::move(t)),
        s_(std::move(s)),
        d_(std::move(d)) {
    if (size_ > max_points) {
      fail(ErrorKind::size, "frame has " + std::to_string(size_)
                                + " points, the maximum is "
                                + std::to_string(max_points));
    }
    auto check = [&](Relation const& r, std::string const& name) {
      if (r.size() != size_) {
        fail(ErrorKind::size, name + " has " + std::to_string(r.size())
                                  + " rows, expected "
                                  + std::to_string(size_));
      }
      for (auto row : r) {
        if (!row.subset_of(universe())) {
          fail(ErrorKind::index, name + " leaves the universe");
        }
      }
    };
    if (t_.size() != sig_.dim()) {
      fail(ErrorKind::size, "expected " + std::to_string(sig_.dim())
                                + " relations T_i, got "
                                + std::to_string(t_.size()));
    }
    for (std::size_t i = 0; i < t_.size(); ++i) {
      check(t_[i], "T_" + std::to_string(i));
    }
    if (s_.size() != sig_.transformation_count()) {
      fail(ErrorKind::size, "expected "
                                + std::to_string(sig_.transformation_count())
                                + " relations S_tau, got "
                                + std::to_string(s_.size()));
    }
    for (std::size_t k = 0; k < s_.size(); ++k) {
      check(s_[k], "S_" + to_string(sig_.transformation(k)));
    }
    auto const expected = sig_.with_diagonals() ? sig_.dim() * sig_.dim() : 0;
    if (d_.size() != expected) {
      fail(ErrorKind::size, "expected " + std::to_string(expected)
                                + " diagonal sets, got "
                                + std::to_string(d_.size()));
    }
    for (auto x : d_) {
      if (!x.subset_of(universe())) {
        fail(ErrorKind::index, "diagonal set leaves the universe");
      }
    }
  }

  Frame Frame::from_actions(std::size_t size, Signature sig,
                            std::vector<Relation>                 t,
                            std::vector<std::vector<std::size_t>> g,
                            std::vector<Element>                  d) {
    std::vector<Relation> s;
    for (auto const& map : g) {
      if (map.size() != size) {
        fail(ErrorKind::size, "action has wrong length");
      }
      Relation r(size);
      for (std::size_t p = 0; p < size; ++p) {
        if (map[p] >= size) {
          fail(ErrorKind::index, "action value outside the universe");
        }
        r[map[p]] |= Element::atom(p);
      }
      s.push_back(std::move(r));
    }
    return Frame(size, std::move(sig), std::move(t), std::move(s),
                 std::move(d));
  }

  std::optional<std::vector<std::size_t>> Frame::action(std::size_t k) const {
    std::vector<std::size_t> g(size_, size_);
    for (std::size_t t = 0; t < size_; ++t) {
      bool clash = false;
      for_each_atom(s_[k][t], [&](std::size_t p) {
        if (g[p] != size_) {
          clash = true;
        }
        g[p] = t;
      });
      if (clash) {
        return std::nullopt;
      }
    }
    if (std::find(g.begin(), g.end(), size_) != g.end()) {
      return std::nullopt;
    }
    return g;
  }

  FiniteBao complex_algebra(Frame const& f) {
    if (f.size() == 0) {
      fail(ErrorKind::size, "the empty frame has no complex algebra");
    }
    auto const&                           sig = f.sig();
    std::vector<std::vector<std::size_t>> g;
    for (std::size_t k = 0; k < sig.transformation_count(); ++k) {
      auto map = f.action(k);
      if (!map) {
        fail(ErrorKind::signature,
             "S_" + to_string(sig.transformation(k))
                 + " is not the converse graph of a total map");
      }
      g.push_back(std::move(*map));
    }
    if (g[sig.identity_index()] != [&] {
          std::vector<std::size_t> id(f.size());
          for (std::size_t p = 0; p < f.size(); ++p) {
            id[p] = p;
          }
          return id;
        }()) {
      fail(ErrorKind::signature, "S_id is not the identity");
    }
    for (std::size_t a = 0; a < g.size(); ++a) {
      for (std::size_t b = 0; b < g.size(); ++b) {
        auto const& gab = g[sig.compose_index(a, b)];
        for (std::size_t p = 0; p < f.size(); ++p) {
          if (gab[p] != g[b][g[a][p]]) {
            fail(ErrorKind::signature,
                 "substitution maps violate g_(sigma o tau) = g_tau o "
                 "g_sigma at sigma = "
                     + to_string(sig.transformation(a))
                     + ", tau = " + to_string(sig.transformation(b)));
          }
        }
      }
    }
    return FiniteBao(FiniteBA(f.size()), sig, f.t_relations(),
                     f.s_relations(), f.diagonals());
  }

  Frame atom_structure(FiniteBao const& a) {
    return Frame(a.atom_count(), a.sig(), a.cyl_atoms(), a.subst_atoms(),
                 a.diagonals());
  }

  FrameMorphism::FrameMorphism(Frame source_, Frame target_,
                               std::vector<std::size_t> map_)
      : source(std::move(source_)),
        target(std::move(target_)),
        map(std::move(map_)) {
    if (map.size() != source.size()) {
      fail(ErrorKind::morphism, "frame map is not total");
    }
    for (auto p : map) {
      if (p >= target.size()) {
        fail(ErrorKind::morphism, "frame map leaves the target universe");
      }
    }
  }

  bool FrameMorphism::is_surjective() const {
    Element hit;
    for (auto p : map) {
      hit |= Element::atom(p);
    }
    return hit == target.universe();
  }

  FrameMorphism dual_map(AlgebraMorphism const& h) {
    auto const&              images = h.atom_images();
    std::vector<std::size_t> map(h.target().atom_count());
    for (std::size_t a = 0; a < images.size(); ++a) {
      for_each_atom(images[a], [&](std::size_t u) { map[u] = a; });
    }
    return FrameMorphism(atom_structure(h.target()),
                         atom_structure(h.source()), std::move(map));
  }

  FrameMorphism dual_morphism(AlgebraMorphism const& h) {
    if (!h.is_homomorphism()) {
      fail(ErrorKind::morphism,
           "the map does not preserve the operators of the signature");
    }
    return dual_map(h);
  }

  namespace {

    Element image(std::vector<std::size_t> const& map, Element x) {
      Element out;
      for_each_atom(x, [&](std::size_t p) { out |= Element::atom(map[p]); });
      return out;
    }

    bool bounded_for(Relation const& r, Relation const& r2,
                     std::vector<std::size_t> const& m) {
      for (std::size_t x = 0; x < r.size(); ++x) {
        if (!image(m, r[x]).subset_of(r2[m[x]])) {
          return false;
        }
      }
      auto pred  = converse(r);
      auto pred2 = converse(r2);
      for (std::size_t y = 0; y < r.size(); ++y) {
        if (!pred2[m[y]].subset_of(image(m, pred[y]))) {
          return false;
        }
      }
      return true;
    }

  }  // namespace

  bool is_bounded_morphism(FrameMorphism const& m) {
    auto const& a = m.source;
    auto const& b = m.target;
    if (!(a.sig() == b.sig())) {
      return false;
    }
    for (std::size_t i = 0; i < a.sig().dim(); ++i) {
      if (!bounded_for(a.t(i), b.t(i), m.map)) {
        return false;
      }
    }
    for (std::size_t k = 0; k < a.sig().transformation_count(); ++k) {
      if (!bounded_for(a.s(k), b.s(k), m.map)) {
        return false;
      }
    }
    for (std::size_t d = 0; d < a.diagonals().size(); ++d) {
      Element pre;
      for (std::size_t p = 0; p < a.size(); ++p) {
        if (b.diagonals()[d].contains(m.map[p])) {
          pre |= Element::atom(p);
        }
      }
      if (pre != a.diagonals()[d]) {
        return false;
      }
    }
    return true;
  }

  ProductSubframe induced_product_subframe(
      std::vector<Frame> const&                    fs,
      std::vector<std::vector<std::size_t>> const& points) {
    if (fs.empty()) {
      fail(ErrorKind::size, "a product needs at least one factor");
    }
    auto const& sig = fs[0].sig();
    for (auto const& f : fs) {
      if (!(f.sig() == sig)) {
        fail(ErrorKind::signature, "product factors have different signatures");
      }
    }
    auto const n = points.size();
    if (n > Frame::max_points) {
      fail(ErrorKind::size, "product subframe has " + std::to_string(n)
                                + " points, the maximum is "
                                + std::to_string(Frame::max_points));
    }
    for (auto const& p : points) {
      if (p.size() != fs.size()) {
        fail(ErrorKind::containment, "tuple has the wrong length");
      }
      for (std::size_t c = 0; c < fs.size(); ++c) {
        if (p[c] >= fs[c].size()) {
          fail(ErrorKind::containment,
               "tuple coordinate outside its factor");
        }
      }
    }
    auto induce = [&](auto const& rel_of) {
      Relation r(n);
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          bool all = true;
          for (std::size_t c = 0; c < fs.size() && all; ++c) {
            all = rel_of(fs[c])[points[x][c]].contains(points[y][c]);
          }
          if (all) {
            r[x] |= Element::atom(y);
          }
        }
      }
      return r;
    };
    std::vector<Relation> t;
    for (std::size_t i = 0; i < sig.dim(); ++i) {
      t.push_back(induce([i](Frame const& f) -> Relation const& {
        return f.t(i);
      }));
    }
    std::vector<Relation> s;
    for (std::size_t k = 0; k < sig.transformation_count(); ++k) {
      s.push_back(induce([k](Frame const& f) -> Relation const& {
        return f.s(k);
      }));
    }
    std::vector<Element> d;
    for (std::size_t q = 0; q < fs[0].diagonals().size(); ++q) {
      Element set;
      for (std::size_t x = 0; x < n; ++x) {
        bool all = true;
        for (std::size_t c = 0; c < fs.size() && all; ++c) {
          all = fs[c].diagonals()[q].contains(points[x][c]);
        }
        if (all) {
          set |= Element::atom(x);
        }
      }
      d.push_back(set);
    }
    return ProductSubframe{
        Frame(n, sig, std::move(t), std::move(s), std::move(d)), points};
  }

  Frame product_frame(std::vector<Frame> const& fs) {
    if (fs.empty()) {
      fail(ErrorKind::size, "a product needs at least one factor");
    }
    std::size_t total = 1;
    for (auto const& f : fs) {
      total *= f.size();
      if (total > Frame::max_points) {
        fail(ErrorKind::size, "product universe exceeds "
                                  + std::to_string(Frame::max_points)
                                  + " points");
      }
    }
    std::vector<std::vector<std::size_t>> points;
    std::vector<std::size_t>              tuple(fs.size(), 0);
    for (std::size_t p = 0; p < total; ++p) {
      points.push_back(tuple);
      for (std::size_t c = fs.size(); c > 0; --c) {
        if (++tuple[c - 1] < fs[c - 1].size()) {
          break;
        }
        tuple[c - 1] = 0;
      }
    }
    return induced_product_subframe(fs, points).frame;
  }

  bool is_zigzag_product(ProductSubframe const& s,
                         std::vector<Frame> const& fs) {
    auto expected = induced_product_subframe(fs, s.points);
    if (!(expected.frame == s.frame)) {
      return false;
    }
    auto sorted = s.points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      return false;
    }
    for (std::size_t c = 0; c < fs.size(); ++c) {
      Element hit;
      for (auto const& p : s.points) {
        hit |= Element::atom(p[c]);
      }
      if (hit != fs[c].universe()) {
        return false;
      }
    }
    return true;
  }

  InsepResult insep(FrameMorphism const& f, FrameMorphism const& h) {
    if (!(f.target == h.target)) {
      fail(ErrorKind::morphism, "INSEP needs morphisms into the same frame");
    }
    std::vector<std::vector<std::size_t>> pairs;
    for (std::size_t x = 0; x < f.source.size(); ++x) {
      for (std::size_t y = 0; y < h.source.size(); ++y) {
        if (f.map[x] == h.map[y]) {
          pairs.push_back({x, y});
        }
      }
    }
    std::vector<Frame> factors{f.source, h.source};
    InsepResult        out{induced_product_subframe(factors, pairs)};
    out.commutes = std::all_of(pairs.begin(), pairs.end(), [&](auto const& p) {
      return f.map[p[0]] == h.map[p[1]];
    });
    out.zigzag = is_zigzag_product(out.subframe, factors);
    return out;
  }

  bool str_membership(Frame const& f, std::vector<Equation> const& eqs) {
    if (eqs.empty()) {
      return true;
    }
    auto a = complex_algebra(f);
    for (auto const& e : eqs) {
      if (!check_equation(a, e).valid) {
        return false;
      }
    }
    return true;
  }

  std::optional<std::vector<std::size_t>> find_frame_isomorphism(
      Frame const& a, Frame const& b) {
    auto const n = a.size();
    if (n != b.size() || !(a.sig() == b.sig())) {
      return std::nullopt;
    }
    std::vector<Relation const*> ra;
    std::vector<Relation const*> rb;
    for (std::size_t i = 0; i < a.sig().dim(); ++i) {
      ra.push_back(&a.t(i));
      rb.push_back(&b.t(i));
    }
    for (std::size_t k = 0; k < a.sig().transformation_count(); ++k) {
      ra.push_back(&a.s(k));
      rb.push_back(&b.s(k));
    }
    auto degree_profile = [&](std::vector<Relation const*> const& rels,
                              Frame const& fr, std::size_t p) {
      std::vector<std::size_t> out;
      for (auto const* r : rels) {
        out.push_back((*r)[p].popcount());
        out.push_back((*r)[p].contains(p));
      }
      for (auto d : fr.diagonals()) {
        out.push_back(d.contains(p));
      }
      return out;
    };
    std::vector<std::vector<std::size_t>> pa(n);
    std::vector<std::vector<std::size_t>> pb(n);
    for (std::size_t p = 0; p < n; ++p) {
      pa[p] = degree_profile(ra, a, p);
      pb[p] = degree_profile(rb, b, p);
    }
    std::vector<std::size_t> pi(n);
    std::vector<bool>        used(n, false);
    auto search = [&](auto&& self, std::size_t x) -> bool {
      if (x == n) {
        return true;
      }
      for (std::size_t c = 0; c < n; ++c) {
        if (used[c] || pa[x] != pb[c]) {
          continue;
        }
        pi[x]   = c;
        bool ok = true;
        for (std::size_t y = 0; y <= x && ok; ++y) {
          for (std::size_t r = 0; r < ra.size() && ok; ++r) {
            ok = (*ra[r])[x].contains(y) == (*rb[r])[c].contains(pi[y])
                 && (*ra[r])[y].contains(x) == (*rb[r])[pi[y]].contains(c);
          }
        }
        if (!ok) {
          continue;
        }
        used[c] = true;
        if (self(self, x + 1)) {
          return true;
        }
        used[c] = false;
      }
      return false;
    };
    if (!search(search, 0)) {
      return std::nullopt;
    }
    return pi;
  }

  std::vector<std::size_t> assignment_of(std::size_t point, std::size_t base,
                                         std::size_t dim) {
    std::vector<std::size_t> x(dim);
    for (std::size_t k = dim; k > 0; --k) {
      x[k - 1] = point % base;
      point /= base;
    }
    return x;
  }

  std::size_t assignment_index(std::vector<std::size_t> const& x,
                               std::size_t                     base) {
    std::size_t p = 0;
    for (auto v : x) {
      p = p * base + v;
    }
    return p;
  }

  Frame assignment_frame(std::size_t base, Signature const& sig) {
    auto const  dim = sig.dim();
    std::size_t n   = 1;
    for (std::size_t k = 0; k < dim; ++k) {
      n *= base;
      if (n > Frame::max_points) {
        fail(ErrorKind::size, "assignment frame exceeds "
                                  + std::to_string(Frame::max_points)
                                  + " points");
      }
    }
    std::vector<std::vector<std::size_t>> xs;
    for (std::size_t p = 0; p < n; ++p) {
      xs.push_back(assignment_of(p, base, dim));
    }
    std::vector<Relation> t(dim, Relation(n));
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
          bool agree = true;
          for (std::size_t k = 0; k < dim && agree; ++k) {
            agree = k == i || xs[p][k] == xs[q][k];
          }
          if (agree) {
            t[i][p] |= Element::atom(q);
          }
        }
      }
    }
    std::vector<std::vector<std::size_t>> g;
    for (auto const& tau : sig.transformations()) {
      std::vector<std::size_t> map(n);
      for (std::size_t p = 0; p < n; ++p) {
        std::vector<std::size_t> y(dim);
        for (std::size_t k = 0; k < dim; ++k) {
          y[k] = xs[p][tau(k)];
        }
        map[p] = assignment_index(y, base);
      }
      g.push_back(std::move(map));
    }
    std::vector<Element> d;
    if (sig.with_diagonals()) {
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
          Element set;
          for (std::size_t p = 0; p < n; ++p) {
            if (xs[p][i] == xs[p][j]) {
              set |= Element::atom(p);
            }
          }
          d.push_back(set);
        }
      }
    }
    return Frame::from_actions(n, sig, std::move(t), std::move(g),
                               std::move(d));
  }

}  // namespace baode
