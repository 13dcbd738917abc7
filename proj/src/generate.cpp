#include "baode/generate.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "baode/error.hpp"

namespace baode {

  namespace {

    using Map = std::vector<std::size_t>;

    Map map_from_code(std::size_t code, std::size_t n) {
      Map m(n);
      for (std::size_t x = n; x-- > 0;) {
        m[x] = code % n;
        code /= n;
      }
      return m;
    }

    // (second o first)(x) = second(first(x))
    Map after(Map const& second, Map const& first) {
      Map out(first.size());
      for (std::size_t x = 0; x < first.size(); ++x) {
        out[x] = second[first[x]];
      }
      return out;
    }

    std::vector<std::size_t> generating_set(Signature const& sig) {
      std::vector<std::size_t> gens;
      std::vector<bool>        reached(sig.transformation_count(), false);
      reached[sig.identity_index()] = true;
      auto close = [&] {
        bool grew = true;
        while (grew) {
          grew = false;
          for (std::size_t m = 0; m < reached.size(); ++m) {
            if (!reached[m]) {
              continue;
            }
            for (auto g : gens) {
              auto p = sig.compose_index(m, g);
              if (!reached[p]) {
                reached[p] = true;
                grew       = true;
              }
            }
          }
        }
      };
      for (std::size_t k = 0; k < sig.transformation_count(); ++k) {
        if (!reached[k]) {
          gens.push_back(k);
          close();
        }
      }
      return gens;
    }

    Relation pullback_relation(Relation const& r, Map const& m) {
      Relation out(m.size());
      for (std::size_t x = 0; x < m.size(); ++x) {
        for (std::size_t y = 0; y < m.size(); ++y) {
          if (r[m[x]].contains(m[y])) {
            out[x] |= Element::atom(y);
          }
        }
      }
      return out;
    }

    // (z, m y) in r implies some x with m x = z and (x, y) in rf.
    bool back_holds(Relation const& rf, Relation const& r, Map const& m) {
      for (std::size_t y = 0; y < m.size(); ++y) {
        for (std::size_t z = 0; z < r.size(); ++z) {
          if (!r[z].contains(m[y])) {
            continue;
          }
          bool found = false;
          for (std::size_t x = 0; x < m.size() && !found; ++x) {
            found = m[x] == z && rf[x].contains(y);
          }
          if (!found) {
            return false;
          }
        }
      }
      return true;
    }

    std::vector<Element> image_table(Relation const& r) {
      std::vector<Element> c(std::size_t(1) << r.size());
      for (std::size_t x = 1; x < c.size(); ++x) {
        auto low = static_cast<std::size_t>(std::countr_zero(x));
        c[x]     = c[x & (x - 1)] | r[low];
      }
      return c;
    }

    bool cyl_meet_holds(Relation const& r) {
      auto c = image_table(r);
      for (std::size_t x = 0; x < c.size(); ++x) {
        for (std::size_t y = 0; y < c.size(); ++y) {
          auto lhs = c[(c[x] & Element(static_cast<Element::bits_type>(y)))
                           .bits()];
          if (lhs != (c[x] & c[y])) {
            return false;
          }
        }
      }
      return true;
    }

    bool has_entry(Schema const& s, std::string const& name) {
      return std::any_of(s.entries.begin(), s.entries.end(),
                         [&](SchemaEntry const& e) {
                           return e.equation.name == name;
                         });
    }

    std::vector<std::size_t> frame_invariant(Frame const& f) {
      std::vector<std::vector<std::size_t>> per_point(f.size());
      for (std::size_t t = 0; t < f.size(); ++t) {
        auto& v = per_point[t];
        for (auto const& r : f.t_relations()) {
          v.push_back(r[t].popcount());
          v.push_back(r[t].contains(t));
        }
        for (auto const& r : f.s_relations()) {
          v.push_back(r[t].popcount());
          v.push_back(r[t].contains(t));
        }
        for (auto d : f.diagonals()) {
          v.push_back(d.contains(t));
        }
      }
      std::sort(per_point.begin(), per_point.end());
      std::vector<std::size_t> out;
      for (auto const& v : per_point) {
        out.insert(out.end(), v.begin(), v.end());
      }
      return out;
    }

    std::vector<Element::bits_type> encode(FiniteBao const& a) {
      std::vector<Element::bits_type> v{
          static_cast<Element::bits_type>(a.atom_count()),
          static_cast<Element::bits_type>(a.dim()),
          static_cast<Element::bits_type>(a.sig().transformation_count())};
      for (auto const& t : a.sig().transformations()) {
        for (auto x : t.values()) {
          v.push_back(static_cast<Element::bits_type>(x));
        }
      }
      for (auto const& r : a.cyl_atoms()) {
        for (auto e : r) {
          v.push_back(e.bits());
        }
      }
      for (auto const& r : a.subst_atoms()) {
        for (auto e : r) {
          v.push_back(e.bits());
        }
      }
      for (auto e : a.diagonals()) {
        v.push_back(e.bits());
      }
      return v;
    }

    std::vector<std::size_t> identity_permutation(FiniteBao const& a) {
      if (a.atom_count() > 6) {
        fail(ErrorKind::size, "permutation search is limited to 6 atoms");
      }
      std::vector<std::size_t> p(a.atom_count());
      std::iota(p.begin(), p.end(), 0);
      return p;
    }

    std::vector<Element::bits_type> canonical_code(FiniteBao const& a) {
      auto p    = identity_permutation(a);
      auto best = encode(a);
      while (std::next_permutation(p.begin(), p.end())) {
        best = std::min(best, encode(permute_atoms(a, p)));
      }
      return best;
    }

    // Atom maps x -> p[x] carrying a onto b.
    std::vector<std::vector<std::size_t>> permutation_isomorphisms(
        FiniteBao const& a, FiniteBao const& b) {
      std::vector<std::vector<std::size_t>> out;
      if (a.atom_count() != b.atom_count()) {
        return out;
      }
      auto const target = encode(b);
      auto       p      = identity_permutation(a);
      do {
        if (encode(permute_atoms(a, p)) == target) {
          out.push_back(p);
        }
      } while (std::next_permutation(p.begin(), p.end()));
      return out;
    }

    template <typename F>
    void odometer(std::vector<std::size_t> const& radix, F&& f) {
      std::vector<std::size_t> digits(radix.size(), 0);
      for (auto r : radix) {
        if (r == 0) {
          return;
        }
      }
      while (true) {
        f(digits);
        std::size_t k = digits.size();
        while (k > 0) {
          --k;
          if (++digits[k] < radix[k]) {
            break;
          }
          digits[k] = 0;
          if (k == 0) {
            return;
          }
        }
        if (digits.empty()) {
          return;
        }
      }
    }

  }  // namespace

  std::vector<AntiAction> enumerate_anti_actions(std::size_t      n,
                                                 Signature const& sig,
                                                 std::size_t      limit) {
    if (n == 0 || n > Frame::max_points) {
      fail(ErrorKind::size, "anti-actions need 1 to "
                                + std::to_string(Frame::max_points)
                                + " points");
    }
    auto const  count = sig.transformation_count();
    auto const  gens  = generating_set(sig);
    std::size_t maps  = 1;
    for (std::size_t x = 0; x < n; ++x) {
      maps *= n;
    }
    double candidates = 1;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      candidates *= double(maps);
    }
    if (candidates > double(1u << 24)) {
      fail(ErrorKind::size, "too many candidate anti-actions on "
                                + std::to_string(n) + " points");
    }
    Map identity(n);
    std::iota(identity.begin(), identity.end(), 0);

    std::vector<AntiAction> out;
    std::vector<std::size_t> radix(gens.size(), maps);
    odometer(radix, [&](std::vector<std::size_t> const& codes) {
      AntiAction g(count);
      g[sig.identity_index()] = identity;
      for (std::size_t k = 0; k < gens.size(); ++k) {
        auto m = map_from_code(codes[k], n);
        if (!g[gens[k]].empty() && g[gens[k]] != m) {
          return;
        }
        g[gens[k]] = m;
      }
      std::vector<std::size_t> queue{sig.identity_index()};
      queue.insert(queue.end(), gens.begin(), gens.end());
      for (std::size_t q = 0; q < queue.size(); ++q) {
        auto m = queue[q];
        for (auto gen : gens) {
          auto p   = sig.compose_index(m, gen);
          auto val = after(g[gen], g[m]);
          if (g[p].empty()) {
            g[p] = std::move(val);
            queue.push_back(p);
          } else if (g[p] != val) {
            return;
          }
        }
      }
      for (std::size_t s = 0; s < count; ++s) {
        for (std::size_t t = 0; t < count; ++t) {
          if (g[sig.compose_index(s, t)] != after(g[t], g[s])) {
            return;
          }
        }
      }
      if (out.size() == limit) {
        fail(ErrorKind::size, "more than " + std::to_string(limit)
                                  + " anti-actions");
      }
      out.push_back(std::move(g));
    });
    return out;
  }

  Frame random_frame(Rng& rng, std::size_t n, Signature const& sig,
                     std::vector<AntiAction> const& actions) {
    std::vector<Relation> t(sig.dim(), Relation(n));
    for (auto& r : t) {
      for (auto& row : r) {
        row = rng.subset(n);
      }
    }
    std::vector<Element> d;
    if (sig.with_diagonals()) {
      for (std::size_t k = 0; k < sig.dim() * sig.dim(); ++k) {
        d.push_back(rng.subset(n));
      }
    }
    return Frame::from_actions(n, sig, std::move(t), rng.pick(actions),
                               std::move(d));
  }

  FiniteBao permute_atoms(FiniteBao const&                a,
                          std::vector<std::size_t> const& perm) {
    auto move = [&](Element x) {
      Element out;
      for_each_atom(x, [&](std::size_t i) { out |= Element::atom(perm[i]); });
      return out;
    };
    auto table = [&](std::vector<std::vector<Element>> const& in) {
      std::vector<std::vector<Element>> out(
          in.size(), std::vector<Element>(a.atom_count()));
      for (std::size_t k = 0; k < in.size(); ++k) {
        for (std::size_t x = 0; x < a.atom_count(); ++x) {
          out[k][perm[x]] = move(in[k][x]);
        }
      }
      return out;
    };
    std::vector<Element> diag;
    for (auto d : a.diagonals()) {
      diag.push_back(move(d));
    }
    return FiniteBao(a.ba(), a.sig(), table(a.cyl_atoms()),
                     table(a.subst_atoms()), std::move(diag));
  }

  std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    for (std::size_t i = n; i > 1; --i) {
      std::swap(p[i - 1], p[rng.below(i)]);
    }
    return p;
  }

  std::optional<FrameMorphism> random_bounded_surjection(
      Rng& rng, Frame const& target, std::size_t source_size,
      std::vector<AntiAction> const& source_actions) {
    auto const n = target.size();
    if (source_size < n) {
      fail(ErrorKind::size, "a surjection needs at least as many points");
    }
    Map m(source_size);
    auto onto = random_permutation(rng, n);
    for (std::size_t x = 0; x < source_size; ++x) {
      m[x] = x < n ? onto[x] : rng.below(n);
    }
    auto shuffle = random_permutation(rng, source_size);
    Map  shuffled(source_size);
    for (std::size_t x = 0; x < source_size; ++x) {
      shuffled[shuffle[x]] = m[x];
    }
    m = std::move(shuffled);

    auto const& sig = target.sig();
    std::vector<Map> target_actions;
    for (std::size_t k = 0; k < sig.transformation_count(); ++k) {
      target_actions.push_back(*target.action(k));
    }
    std::vector<AntiAction const*> fitting;
    for (auto const& g : source_actions) {
      bool ok = true;
      for (std::size_t k = 0; k < g.size() && ok; ++k) {
        for (std::size_t x = 0; x < source_size && ok; ++x) {
          ok = m[g[k][x]] == target_actions[k][m[x]];
        }
      }
      if (ok) {
        fitting.push_back(&g);
      }
    }
    if (fitting.empty()) {
      return std::nullopt;
    }
    std::vector<Relation> t;
    for (std::size_t i = 0; i < sig.dim(); ++i) {
      auto rf = pullback_relation(target.t(i), m);
      for (auto pair_index : random_permutation(rng, source_size * source_size)) {
        auto x = pair_index / source_size;
        auto y = pair_index % source_size;
        if (!rf[x].contains(y) || !rng.coin()) {
          continue;
        }
        auto trial = rf;
        trial[x]   = Element(trial[x].bits() & ~Element::atom(y).bits());
        if (back_holds(trial, target.t(i), m)) {
          rf = std::move(trial);
        }
      }
      t.push_back(std::move(rf));
    }
    std::vector<Element> d;
    for (auto dt : target.diagonals()) {
      Element e;
      for (std::size_t x = 0; x < source_size; ++x) {
        if (dt.contains(m[x])) {
          e |= Element::atom(x);
        }
      }
      d.push_back(e);
    }
    auto source = Frame::from_actions(source_size, sig, std::move(t),
                                      *fitting[rng.below(fitting.size())],
                                      std::move(d));
    return FrameMorphism(std::move(source), target, std::move(m));
  }

  Frame perturb_frame(Rng& rng, Frame const& f) {
    auto t = f.t_relations();
    auto i = rng.below(t.size());
    auto x = rng.below(f.size());
    auto y = rng.below(f.size());
    t[i][x] = Element(t[i][x].bits() ^ Element::atom(y).bits());
    return Frame(f.size(), f.sig(), std::move(t), f.s_relations(),
                 f.diagonals());
  }

  std::vector<Frame> enumerate_schema_frames(std::size_t      n,
                                             Signature const& sig,
                                             Schema const&    schema) {
    auto const dim     = sig.dim();
    auto const actions = enumerate_anti_actions(n, sig);
    auto const subsets = std::size_t(1) << n;
    std::map<std::vector<std::size_t>, std::vector<Frame>> classes;
    std::vector<Frame>                                     out;

    auto replacement_index = [&](std::size_t i, std::size_t j)
        -> std::optional<std::size_t> {
      if (!has_entry(schema, "subst-diagonal-" + std::to_string(i) + "-"
                                 + std::to_string(j))) {
        return std::nullopt;
      }
      return sig.index_of(Transformation::replacement(dim, i, j));
    };

    for (auto const& g : actions) {
      // Each d_ij must contain the image of g_[i/j] when the diagonal entry
      // is present.
      std::vector<Element> floor(sig.with_diagonals() ? dim * dim : 0);
      for (std::size_t i = 0; i < dim && sig.with_diagonals(); ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
          if (auto r = replacement_index(i, j); r && i != j) {
            for (auto y : g[*r]) {
              floor[i * dim + j] |= Element::atom(y);
            }
          }
        }
      }
      std::vector<std::size_t> radix(floor.size(), subsets);
      odometer(radix, [&](std::vector<std::size_t> const& codes) {
        std::vector<Element> d;
        for (std::size_t k = 0; k < codes.size(); ++k) {
          Element e(static_cast<Element::bits_type>(codes[k]));
          if (!floor[k].subset_of(e)) {
            return;
          }
          d.push_back(e);
        }
        std::vector<std::vector<Relation>> options(dim);
        for (std::size_t i = 0; i < dim; ++i) {
          std::vector<std::optional<Element>> forced(n);
          bool                                clash = false;
          for (std::size_t j = 0; j < dim && sig.with_diagonals(); ++j) {
            auto r = replacement_index(i, j);
            if (!r || i == j) {
              continue;
            }
            for (std::size_t x = 0; x < n; ++x) {
              if (!d[i * dim + j].contains(x)) {
                continue;
              }
              Element row;
              for (std::size_t y = 0; y < n; ++y) {
                if (g[*r][y] == x) {
                  row |= Element::atom(y);
                }
              }
              if (forced[x] && *forced[x] != row) {
                clash = true;
              }
              forced[x] = row;
            }
          }
          if (clash) {
            return;
          }
          std::vector<std::size_t> free_rows;
          for (std::size_t x = 0; x < n; ++x) {
            if (!forced[x]) {
              free_rows.push_back(x);
            }
          }
          bool const check_meet =
              has_entry(schema, "cyl-meet-" + std::to_string(i));
          odometer(std::vector<std::size_t>(free_rows.size(), subsets),
                   [&](std::vector<std::size_t> const& rows) {
                     Relation r(n);
                     for (std::size_t x = 0; x < n; ++x) {
                       if (forced[x]) {
                         r[x] = *forced[x];
                       }
                     }
                     for (std::size_t k = 0; k < free_rows.size(); ++k) {
                       r[free_rows[k]] = Element(
                           static_cast<Element::bits_type>(rows[k]));
                     }
                     if (!check_meet || cyl_meet_holds(r)) {
                       options[i].push_back(std::move(r));
                     }
                   });
        }
        std::vector<std::size_t> sizes;
        for (auto const& o : options) {
          sizes.push_back(o.size());
        }
        odometer(sizes, [&](std::vector<std::size_t> const& pick) {
          std::vector<Relation> t;
          for (std::size_t i = 0; i < dim; ++i) {
            t.push_back(options[i][pick[i]]);
          }
          auto f = Frame::from_actions(n, sig, std::move(t), g, d);
          if (!satisfies(complex_algebra(f), schema)) {
            return;
          }
          auto& bucket = classes[frame_invariant(f)];
          for (auto const& other : bucket) {
            if (find_frame_isomorphism(other, f)) {
              return;
            }
          }
          bucket.push_back(f);
          out.push_back(std::move(f));
        });
      });
    }
    return out;
  }

  std::vector<Subalgebra> all_subalgebras(FiniteBao const& a) {
    std::vector<Subalgebra>          out;
    std::set<std::vector<Element>>   seen;
    auto add = [&](std::vector<Element> const& gens) {
      auto s = generated_subalgebra(a, gens);
      if (seen.insert(s.blocks).second) {
        out.push_back(std::move(s));
      }
    };
    add({});
    auto const size = a.ba().size();
    for (std::size_t x = 0; x < size; ++x) {
      add({a.ba().element(x)});
      for (std::size_t y = x + 1; y < size; ++y) {
        add({a.ba().element(x), a.ba().element(y)});
      }
    }
    return out;
  }

  std::vector<AlgebraMorphism> all_embeddings(FiniteBao const& a,
                                              FiniteBao const& b) {
    std::vector<AlgebraMorphism> out;
    if (a.atom_count() > b.atom_count()) {
      return out;
    }
    odometer(std::vector<std::size_t>(b.atom_count(), a.atom_count()),
             [&](std::vector<std::size_t> const& owner) {
               std::vector<Element> images(a.atom_count());
               for (std::size_t y = 0; y < owner.size(); ++y) {
                 images[owner[y]] |= Element::atom(y);
               }
               for (auto e : images) {
                 if (e.empty()) {
                   return;
                 }
               }
               AlgebraMorphism h(a, b, std::move(images));
               if (h.is_homomorphism()) {
                 out.push_back(std::move(h));
               }
             });
    return out;
  }

  std::vector<AmalgamationInstance> exhaustive_instances(
      std::vector<FiniteBao> const& algebras, Schema const& schema,
      std::size_t limit) {
    struct Embedded {
      FiniteBao const* whole;
      Subalgebra       sub;
    };
    std::map<std::vector<Element::bits_type>, std::vector<Embedded>> classes;
    std::vector<std::vector<Element::bits_type>>                    order;
    for (auto const& b : algebras) {
      for (auto& sub : all_subalgebras(b)) {
        auto code   = canonical_code(sub.algebra);
        auto [it, fresh] = classes.try_emplace(code);
        if (fresh) {
          order.push_back(code);
        }
        it->second.push_back({&b, std::move(sub)});
      }
    }
    std::vector<AmalgamationInstance> out;
    for (auto const& code : order) {
      auto const& members = classes[code];
      for (auto const& left : members) {
        AlgebraMorphism f(left.sub.algebra, *left.whole, left.sub.blocks);
        for (auto const& right : members) {
          for (auto const& p :
               permutation_isomorphisms(left.sub.algebra, right.sub.algebra)) {
            if (out.size() == limit) {
              return out;
            }
            std::vector<Element> images;
            for (auto x : p) {
              images.push_back(right.sub.blocks[x]);
            }
            out.push_back({left.sub.algebra, *left.whole, *right.whole, f,
                           AlgebraMorphism(left.sub.algebra, *right.whole,
                                           std::move(images)),
                           schema});
          }
        }
      }
    }
    return out;
  }

  AmalgamationInstance random_instance(Rng&                          rng,
                                       std::vector<FiniteBao> const& algebras,
                                       Schema const&                 schema) {
    if (algebras.empty()) {
      fail(ErrorKind::size, "no algebras to draw instances from");
    }
    for (int attempt = 0;; ++attempt) {
      auto const& b0 = rng.pick(algebras);
      auto b = permute_atoms(b0, random_permutation(rng, b0.atom_count()));
      auto subs = all_subalgebras(b);
      auto const& sub = rng.pick(subs);
      auto c = b;
      if (attempt < 20) {
        auto const& c0 = rng.pick(algebras);
        if (!(c0.sig() == b.sig())) {
          continue;
        }
        c = permute_atoms(c0, random_permutation(rng, c0.atom_count()));
      }
      auto hs = all_embeddings(sub.algebra, c);
      if (hs.empty()) {
        continue;
      }
      AlgebraMorphism f(sub.algebra, b, sub.blocks);
      return {sub.algebra, b, c, f, rng.pick(hs), schema};
    }
  }

}  // namespace baode
