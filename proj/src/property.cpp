#include "baode/property.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "baode/amalgam.hpp"
#include "baode/error.hpp"
#include "baode/frame.hpp"

namespace baode {

  namespace {

    void record(PropertyResult& r, bool ok, std::string const& what) {
      ++r.trials;
      if (!ok) {
        if (r.failures == 0) {
          r.first_failure = what;
        }
        ++r.failures;
      }
    }

    class ActionCache {
     public:
      std::vector<AntiAction> const& get(std::size_t n, Signature const& sig) {
        auto key = std::make_pair(n, sig.dim());
        auto it  = cache_.find(key);
        if (it == cache_.end()) {
          it = cache_.emplace(key, enumerate_anti_actions(n, sig)).first;
        }
        return it->second;
      }

     private:
      std::map<std::pair<std::size_t, std::size_t>, std::vector<AntiAction>>
          cache_;
    };

    std::string describe(Frame const& f) {
      std::ostringstream out;
      out << f.size() << " points, dim " << f.sig().dim();
      for (std::size_t i = 0; i < f.sig().dim(); ++i) {
        out << ", T" << i << " " << relation_pairs(f.t(i)).size() << " pairs";
      }
      return out.str();
    }

    std::vector<Element> preimage_images(FrameMorphism const& m) {
      std::vector<Element> images(m.target.size());
      for (std::size_t x = 0; x < m.map.size(); ++x) {
        images[m.map[x]] |= Element::atom(x);
      }
      return images;
    }

    // A bounded surjection onto target from at most max_points points,
    // falling back to smaller sources and finally to target itself.
    FrameMorphism some_bounded_surjection(Rng& rng, Frame const& target,
                                          std::size_t max_points,
                                          ActionCache& actions) {
      auto n = target.size() + rng.below(max_points - target.size() + 1);
      for (; n > target.size(); --n) {
        auto m = random_bounded_surjection(rng, target, n,
                                           actions.get(n, target.sig()));
        if (m) {
          return *m;
        }
      }
      std::vector<std::size_t> id(target.size());
      for (std::size_t x = 0; x < id.size(); ++x) {
        id[x] = x;
      }
      return FrameMorphism(target, target, std::move(id));
    }

    bool injective_on_alpha(Transformation const& t, std::size_t alpha) {
      for (std::size_t i = 0; i < alpha; ++i) {
        for (std::size_t j = i + 1; j < alpha; ++j) {
          if (t(i) == t(j)) {
            return false;
          }
        }
      }
      return true;
    }

  }  // namespace

  std::vector<std::string> property_names() {
    return {"duality", "dual-morphism", "insep",  "supap",
            "dilation", "distributivity", "witness"};
  }

  PropertyResult check_duality(Rng& rng, std::size_t count,
                               std::size_t max_points, Signature const& sig) {
    PropertyResult r{"duality", 0, 0, {}, {}};
    ActionCache    actions;
    std::size_t    literal = 0;
    for (std::size_t k = 0; k < count; ++k) {
      auto n  = 1 + rng.below(max_points);
      auto f  = random_frame(rng, n, sig, actions.get(n, sig));
      auto a  = complex_algebra(f);
      auto at = atom_structure(a);
      literal += at == f;
      bool frame_ok = find_frame_isomorphism(at, f).has_value();
      auto shuffled = permute_atoms(a, random_permutation(rng, a.atom_count()));
      bool algebra_ok =
          find_isomorphism(complex_algebra(atom_structure(shuffled)), shuffled)
              .has_value();
      record(r, frame_ok && algebra_ok,
             (frame_ok ? "Cm(At A) differs from A for Cm of frame "
                       : "At(Cm F) differs from F for frame ")
                 + describe(f));
    }
    r.notes.push_back(std::to_string(literal) + " of "
                      + std::to_string(count)
                      + " atom structures equal their frame point for point");
    return r;
  }

  PropertyResult check_dual_morphisms(Rng& rng, std::size_t count,
                                      std::size_t max_atoms) {
    PropertyResult r{"dual-morphism", 0, 0, {}, {}};
    ActionCache    actions;
    std::size_t    homs = 0;
    for (std::size_t k = 0; k < count; ++k) {
      auto sig = Signature::full(1 + k % 2, true);
      auto ng  = 1 + rng.below(max_atoms);
      auto g   = random_frame(rng, ng, sig, actions.get(ng, sig));
      std::optional<AlgebraMorphism> h;
      switch (k / 2 % 3) {
        case 0:
        case 1: {
          auto m = some_bounded_surjection(rng, g, max_atoms, actions);
          auto source = k / 2 % 3 == 0 ? m.source : perturb_frame(rng, m.source);
          h.emplace(complex_algebra(g), complex_algebra(source),
                    preimage_images(m));
          break;
        }
        default: {
          auto nb = ng + rng.below(max_atoms - ng + 1);
          auto b  = random_frame(rng, nb, sig, actions.get(nb, sig));
          std::vector<Element> images(ng);
          auto owner = random_permutation(rng, nb);
          for (std::size_t y = 0; y < nb; ++y) {
            images[y < ng ? y : rng.below(ng)] |=
                Element::atom(owner[y]);
          }
          h.emplace(complex_algebra(g), complex_algebra(b), std::move(images));
          break;
        }
      }
      bool hom     = h->is_homomorphism();
      bool bounded = is_bounded_morphism(dual_map(*h));
      homs += hom;
      record(r, hom == bounded,
             std::string(hom ? "homomorphism" : "non-homomorphism")
                 + " with dual map judged the other way, source "
                 + std::to_string(h->source().atom_count()) + " atoms, target "
                 + std::to_string(h->target().atom_count()) + " atoms");
    }
    r.notes.push_back(std::to_string(homs) + " homomorphisms, "
                      + std::to_string(count - homs) + " non-homomorphisms");
    return r;
  }

  PropertyResult check_insep(Rng& rng, std::size_t count,
                             std::size_t max_points) {
    PropertyResult r{"insep", 0, 0, {}, {}};
    ActionCache    actions;
    std::size_t    points = 0;
    for (std::size_t k = 0; k < count; ++k) {
      auto sig = Signature::full(1 + k % 2, true);
      auto n   = 1 + rng.below(max_points);
      auto g   = random_frame(rng, n, sig, actions.get(n, sig));
      auto f   = some_bounded_surjection(rng, g, max_points, actions);
      auto h   = some_bounded_surjection(rng, g, max_points, actions);
      auto res = insep(f, h);
      points += res.subframe.points.size();
      bool ok  = res.zigzag && res.commutes
                && is_zigzag_product(res.subframe, {f.source, h.source});
      record(r, ok,
             "INSEP of sources with " + std::to_string(f.source.size())
                 + " and " + std::to_string(h.source.size())
                 + " points over " + describe(g));
    }
    r.notes.push_back(std::to_string(points) + " INSEP points in total");
    return r;
  }

  std::vector<FiniteBao> schema_algebras(std::size_t dim,
                                         std::size_t max_points,
                                         Schema const& schema) {
    std::vector<FiniteBao> out;
    auto                   sig = Signature::full(dim, true);
    for (std::size_t n = 1; n <= max_points; ++n) {
      for (auto const& f : enumerate_schema_frames(n, sig, schema)) {
        out.push_back(complex_algebra(f));
      }
    }
    return out;
  }

  PropertyResult check_supap(std::vector<AmalgamationInstance> const& instances,
                             std::string const&                       label) {
    PropertyResult r{label, 0, 0, {}, {}};
    std::size_t    strong = 0;
    for (std::size_t k = 0; k < instances.size(); ++k) {
      auto cert = superamalgamate(instances[k]);
      strong += cert.report.strong_amalgamation;
      std::string failed;
      for (auto const& line : cert.report.checks) {
        if (!line.passed) {
          failed += " " + line.name;
        }
      }
      record(r, cert.report.passed(),
             "instance " + std::to_string(k) + " failed:" + failed);
    }
    r.notes.push_back(std::to_string(strong) + " of "
                      + std::to_string(instances.size())
                      + " amalgams are strong");
    return r;
  }

  std::vector<DilationPair> dilation_corpus(Rng& rng, std::size_t count) {
    struct Shape {
      std::size_t base, alpha, beta;
    };
    std::vector<Shape> const shapes{{2, 1, 1}, {2, 1, 2}, {2, 1, 3}, {2, 1, 4},
                                    {2, 2, 2}, {2, 2, 3}, {2, 2, 4}, {3, 1, 1},
                                    {3, 1, 2}, {3, 2, 2}, {4, 1, 1}, {4, 1, 2}};
    std::vector<DilationPair> squares;
    for (auto s : shapes) {
      squares.push_back(square_dilation(s.base, s.alpha, s.beta));
    }
    std::vector<DilationPair> out(squares.begin(), squares.end());
    while (out.size() < count) {
      auto const&          pair = rng.pick(squares);
      std::vector<Element> gens;
      for (std::size_t g = 0, n = 1 + rng.below(2); g < n; ++g) {
        gens.push_back(pair.small().ba().element(
            rng.below(pair.small().ba().size())));
      }
      out.push_back(sub_dilation(pair, gens));
    }
    return out;
  }

  PropertyResult check_dilations(std::vector<DilationPair> const& pairs,
                                 bool verify_all_rho) {
    PropertyResult r{"dilation", 0, 0, {}, {}};
    std::size_t    evaluations = 0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      auto const& pair = pairs[k];
      if (verify_all_rho) {
        auto v = verify_dilation_pair(pair);
        evaluations += v.evaluations;
        record(r, v.disagreements == 0,
               "pair " + std::to_string(k) + ": " + v.first_problem);
        continue;
      }
      std::string problem;
      for (auto const& sigma : pair.big().sig().transformations()) {
        if (!injective_on_alpha(sigma, pair.alpha())
            || admissible_rhos(pair, sigma).empty()) {
          continue;
        }
        for (std::size_t x = 0; x < pair.small().ba().size(); ++x) {
          auto p = pair.small().ba().element(x);
          auto e = pair.big().subst(sigma, pair.embed(p));
          for (std::size_t i = 0; i < pair.beta(); ++i) {
            ++evaluations;
            if (dilated_cylindrifier(pair, i, sigma, p)
                    != pair.big().cyl(i, e)
                && problem.empty()) {
              problem = "k = " + std::to_string(i) + ", sigma = "
                        + to_string(sigma) + ", p = " + to_string(p);
            }
          }
        }
      }
      record(r, problem.empty(), "pair " + std::to_string(k) + ": " + problem);
    }
    r.notes.push_back(std::to_string(evaluations) + " evaluations"
                      + (verify_all_rho ? " over every admissible rho"
                                        : " with the least admissible rho"));
    return r;
  }

  std::vector<FiniteBao> distributivity_corpus(std::size_t max_atoms) {
    std::vector<FiniteBao> out;
    for (std::size_t dim : {1, 2}) {
      auto sig    = Signature::full(dim, true);
      auto schema = default_schema(sig);
      auto limit  = std::min<std::size_t>(max_atoms, dim == 1 ? 4 : 3);
      for (auto& a : schema_algebras(dim, limit, schema)) {
        out.push_back(std::move(a));
      }
    }
    for (std::size_t base = 1; base <= max_atoms; ++base) {
      out.push_back(
          complex_algebra(assignment_frame(base, Signature::full(1, true))));
    }
    if (max_atoms >= 4) {
      out.push_back(
          complex_algebra(assignment_frame(2, Signature::full(2, true))));
    }
    return out;
  }

  std::vector<PropertyResult> check_distributivity(
      std::vector<FiniteBao> const& algebras) {
    PropertyResult additive{"c-additive", 0, 0, {}, {}};
    PropertyResult dual{"dual-c-additive", 0, 0, {}, {}};
    PropertyResult complement{"c-complement", 0, 0, {}, {}};
    std::size_t    dual_meet = 0;
    std::size_t    dual_mixed = 0;
    for (std::size_t k = 0; k < algebras.size(); ++k) {
      auto const& a    = algebras[k];
      auto const  size = a.ba().size();
      for (std::size_t m = 0; m < a.dim(); ++m) {
        std::string add_bad, dual_bad, comp_bad;
        bool        meet_ok = true, mixed_ok = true;
        for (std::size_t x = 0; x < size; ++x) {
          auto u = a.ba().element(x);
          if (a.cyl(m, a.complement(a.cyl(m, u))) != a.complement(a.cyl(m, u))
              && comp_bad.empty()) {
            comp_bad = "x = " + to_string(u);
          }
          for (std::size_t y = 0; y < size; ++y) {
            auto v = a.ba().element(y);
            if (a.cyl(m, u | v) != (a.cyl(m, u) | a.cyl(m, v))
                && add_bad.empty()) {
              add_bad = "u = " + to_string(u) + ", v = " + to_string(v);
            }
            auto du = dual_cyl(a, m, u);
            auto dv = dual_cyl(a, m, v);
            if (dual_cyl(a, m, u | v) != (du | dv) && dual_bad.empty()) {
              dual_bad = "u = " + to_string(u) + ", v = " + to_string(v);
            }
            meet_ok  = meet_ok && dual_cyl(a, m, u & v) == (du & dv);
            mixed_ok = mixed_ok && dual_cyl(a, m, du | v) == (du | dv);
          }
        }
        auto where = "algebra " + std::to_string(k) + " ("
                     + std::to_string(a.atom_count()) + " atoms), m = "
                     + std::to_string(m) + ": ";
        record(additive, add_bad.empty(), where + add_bad);
        record(dual, dual_bad.empty(), where + dual_bad);
        record(complement, comp_bad.empty(), where + comp_bad);
        dual_meet += meet_ok;
        dual_mixed += mixed_ok;
      }
    }
    dual.notes.push_back("dual c_m over meets holds in "
                         + std::to_string(dual_meet) + " of "
                         + std::to_string(dual.trials) + " cases");
    dual.notes.push_back("dual c_m(dual c_m u + v) = dual c_m u + dual c_m v"
                         " holds in "
                         + std::to_string(dual_mixed) + " of "
                         + std::to_string(dual.trials) + " cases");
    return {additive, dual, complement};
  }

  std::vector<WitnessCase> witness_corpus() {
    std::vector<WitnessCase> out;
    auto add_family = [&](std::string const&          name,
                          DilationPair const&         pair,
                          std::vector<Element> const& x1,
                          std::vector<Element> const& x2,
                          std::vector<WitnessTriple> const& left,
                          std::vector<WitnessTriple> const& right) {
      auto const& small = pair.small();
      auto        s1    = generated_subalgebra(small, x1);
      auto        s2    = generated_subalgebra(small, x2);
      for (std::size_t a = 0; a < s1.algebra.ba().size(); ++a) {
        for (std::size_t c = 0; c < s2.algebra.ba().size(); ++c) {
          WitnessInput in{x1,
                          x2,
                          s1.lift(s1.algebra.ba().element(a)),
                          s2.lift(s2.algebra.ba().element(c)),
                          left,
                          right};
          out.push_back({name + " a=" + to_string(in.a) + " c="
                             + to_string(in.c),
                         pair, std::move(in)});
        }
      }
    };

    // Cm(^2 2) in Cm(^4 2): atoms of the small side are x0 x1 in binary.
    auto        square = square_dilation(2, 2, 4);
    auto const& big    = square.big();
    Element     first_zero(0b0011);   // x0 = 0
    Element     second_zero(0b0101);  // x1 = 0
    Element     differ(0b0110);       // x0 != x1
    auto        id4    = Transformation::identity(4);
    auto        swap01 = Transformation::transposition(4, 0, 1);
    auto        spread = big.subst(Transformation::replacement(4, 0, 2),
                                   square.embed(first_zero));
    add_family("square x0=0 | x1=0", square, {first_zero}, {second_zero}, {},
               {});
    add_family("square x0=0 | x1=0 witnessed", square, {first_zero},
               {second_zero}, {{id4, 0, square.embed(first_zero)}},
               {{id4, 1, square.embed(second_zero)}});
    add_family("square x0=0 | x0!=x1 swapped", square, {first_zero},
               {differ}, {{swap01, 1, square.embed(first_zero)}},
               {{id4, 0, square.embed(differ)}});
    add_family("square shared x0=0", square, {first_zero, differ},
               {first_zero, second_zero}, {{id4, 0, square.embed(differ)}},
               {});
    add_family("square spare-index witness", square, {first_zero},
               {second_zero}, {{id4, 2, spread}}, {});

    // Cm(^1 2) in Cm(^4 2): three spare indices.
    auto    line = square_dilation(2, 1, 4);
    Element zero(0b01);
    add_family("line shared", line, {zero}, {zero},
               {{Transformation::identity(4), 0, line.embed(zero)}},
               {{Transformation::identity(4), 0, line.embed(zero)}});
    add_family("line disjoint", line, {zero}, {}, {}, {});

    // Cm(^1 4) in Cm(^2 4): one spare index.
    auto    wide = square_dilation(4, 1, 2);
    Element low(0b0011);
    Element odd(0b1010);
    add_family("wide low | odd", wide, {low}, {odd},
               {{Transformation::identity(2), 0, wide.embed(low)}}, {});
    add_family("wide shared low", wide, {low, odd}, {low}, {}, {});
    return out;
  }

  PropertyResult check_witness(std::vector<WitnessCase> const& cases) {
    PropertyResult r{"witness", 0, 0, {}, {}};
    std::size_t    improper = 0;
    std::size_t    claims   = 0;
    for (auto const& wc : cases) {
      auto ws = build_witness_system(wc.pair, wc.input);
      claims += ws.claims.size();
      improper += !ws.h_proper();
      std::string problem;
      if (ws.h_proper() == ws.interpolant.has_value()) {
        problem = ws.h_proper() ? "H proper but an interpolant exists"
                                : "H improper but no interpolant";
      }
      for (auto const& c : ws.claims) {
        if (!c.holds && problem.empty()) {
          problem = "claim fails: " + c.name;
        }
      }
      if (ws.h_proper() && !ws.traces_agree && problem.empty()) {
        problem = "ultrafilters do not trace H*";
      }
      record(r, problem.empty(), wc.label + ": " + problem);
    }
    r.notes.push_back(std::to_string(improper) + " improper, "
                      + std::to_string(cases.size() - improper) + " proper, "
                      + std::to_string(claims) + " claims checked");
    return r;
  }

  PropertyResult check_positivity(Schema const& annotated) {
    PropertyResult r{"positivity", 0, 0, {}, {}};
    std::size_t    positive = 0;
    for (auto const& e : annotated.entries) {
      bool computed = is_positive_equation(e.equation);
      positive += computed;
      record(r,
             e.annotated_positive.has_value()
                 && *e.annotated_positive == computed,
             e.equation.name
                 + (e.annotated_positive ? " classified against its annotation"
                                         : " has no annotation"));
    }
    r.notes.push_back(std::to_string(positive) + " positive, "
                      + std::to_string(annotated.entries.size() - positive)
                      + " not positive");
    return r;
  }

  std::vector<PropertyResult> run_campaign(Campaign const&        campaign,
                                           CampaignOptions const& options) {
    if (options.max_atoms == 0 || options.max_universe == 0) {
      fail(ErrorKind::size, "campaign bounds must be positive");
    }
    Rng  rng(options.seed);
    auto atoms    = std::min<std::size_t>(options.max_atoms, 4);
    auto universe = std::min<std::size_t>(options.max_universe, 4);
    std::vector<PropertyResult> out;
    for (auto const& item : campaign.items) {
      auto const& p = item.property;
      if (p == "duality") {
        out.push_back(check_duality(rng, item.count, universe,
                                    Signature::full(2, true)));
      } else if (p == "dual-morphism") {
        out.push_back(check_dual_morphisms(rng, item.count, atoms));
      } else if (p == "insep") {
        out.push_back(check_insep(rng, item.count, universe));
      } else if (p == "supap") {
        auto dim    = 1 + rng.below(2);
        auto schema = positive_part(default_schema(Signature::full(dim, true)));
        auto algebras =
            schema_algebras(dim, std::min<std::size_t>(atoms, 3), schema);
        std::vector<AmalgamationInstance> instances;
        for (std::size_t k = 0; k < item.count; ++k) {
          instances.push_back(random_instance(rng, algebras, schema));
        }
        out.push_back(check_supap(instances, "supap"));
      } else if (p == "dilation") {
        out.push_back(check_dilations(dilation_corpus(rng, item.count),
                                      options.verify_all_rho));
      } else if (p == "distributivity") {
        for (auto& res : check_distributivity(distributivity_corpus(atoms))) {
          out.push_back(std::move(res));
        }
      } else if (p == "witness") {
        auto cases = witness_corpus();
        if (item.count != 0 && item.count < cases.size()) {
          std::vector<WitnessCase> picked;
          for (std::size_t k = 0; k < item.count; ++k) {
            picked.push_back(cases[rng.below(cases.size())]);
          }
          cases = std::move(picked);
        }
        out.push_back(check_witness(cases));
      } else {
        fail(ErrorKind::validation, "unknown property '" + p + "'");
      }
    }
    return out;
  }

}  // namespace baode
