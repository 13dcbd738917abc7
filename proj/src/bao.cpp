#include "baode/bao.hpp"

#include <algorithm>
#include <bit>

#include "baode/error.hpp"

namespace baode {

  namespace {

    // Algebras up to this many atoms carry full operation tables.
    constexpr std::size_t table_atom_limit = 10;
    constexpr std::size_t table_entry_limit = std::size_t(1) << 22;

    Element apply_atoms(std::vector<Element> const& images, Element x) {
      Element out;
      for_each_atom(x, [&](std::size_t a) { out |= images[a]; });
      return out;
    }

    std::vector<Element> full_table(FiniteBA const&             ba,
                                    std::vector<Element> const& images) {
      std::vector<Element> table(ba.size());
      for (std::size_t x = 1; x < ba.size(); ++x) {
        // Peel off the lowest atom: t[x] = t[x without it] | t[atom].
        auto low  = static_cast<std::size_t>(std::countr_zero(x));
        table[x]  = table[x & (x - 1)] | images[low];
      }
      return table;
    }

    void check_shape(std::vector<Element> const& images, FiniteBA const& ba,
                     std::string const& what) {
      if (images.size() != ba.atom_count()) {
        fail(ErrorKind::size, what + " has " + std::to_string(images.size())
                                  + " atom images, expected "
                                  + std::to_string(ba.atom_count()));
      }
      for (auto e : images) {
        if (!ba.contains(e)) {
          fail(ErrorKind::index,
               what + " value " + to_string(e) + " outside the algebra");
        }
      }
    }

  }  // namespace

  FiniteBao::FiniteBao(FiniteBA ba, Signature sig,
                       std::vector<std::vector<Element>> cyl,
                       std::vector<std::vector<Element>> subst,
                       std::vector<Element>              diag) {
    auto data   = std::make_shared<Data>(ba, std::move(sig));
    data->cyl   = std::move(cyl);
    data->subst = std::move(subst);
    data->diag  = std::move(diag);
    auto const& s = data->sig;
    auto const  n = ba.atom_count();

    if (data->cyl.size() != s.dim()) {
      fail(ErrorKind::size, "expected " + std::to_string(s.dim())
                                + " cylindrifiers, got "
                                + std::to_string(data->cyl.size()));
    }
    for (std::size_t i = 0; i < s.dim(); ++i) {
      check_shape(data->cyl[i], ba, "c_" + std::to_string(i));
    }
    if (data->subst.size() != s.transformation_count()) {
      fail(ErrorKind::size, "expected "
                                + std::to_string(s.transformation_count())
                                + " substitutions, got "
                                + std::to_string(data->subst.size()));
    }
    for (std::size_t k = 0; k < s.transformation_count(); ++k) {
      auto name = "s_" + to_string(s.transformation(k));
      check_shape(data->subst[k], ba, name);
      Element seen;
      for (auto e : data->subst[k]) {
        if (!(seen & e).empty()) {
          fail(ErrorKind::validation,
               name + " is not a Boolean endomorphism: atom images overlap");
        }
        seen |= e;
      }
      if (seen != ba.top()) {
        fail(ErrorKind::validation,
             name + " is not a Boolean endomorphism: it does not preserve 1");
      }
    }
    auto const id = s.identity_index();
    for (std::size_t a = 0; a < n; ++a) {
      if (data->subst[id][a] != Element::atom(a)) {
        fail(ErrorKind::validation, "s_id is not the identity");
      }
    }
    auto const t = s.transformation_count();
    for (std::size_t sg = 0; sg < t; ++sg) {
      for (std::size_t tu = 0; tu < t; ++tu) {
        auto const& composed = data->subst[s.compose_index(sg, tu)];
        for (std::size_t a = 0; a < n; ++a) {
          if (apply_atoms(data->subst[sg], data->subst[tu][a])
              != composed[a]) {
            fail(ErrorKind::validation,
                 "substitutions violate s_sigma s_tau = s_(sigma o tau) at "
                     "sigma = "
                     + to_string(s.transformation(sg))
                     + ", tau = " + to_string(s.transformation(tu)));
          }
        }
      }
    }
    auto const expected_diag = s.with_diagonals() ? s.dim() * s.dim() : 0;
    if (data->diag.size() != expected_diag) {
      fail(ErrorKind::size, "expected " + std::to_string(expected_diag)
                                + " diagonal elements, got "
                                + std::to_string(data->diag.size()));
    }
    for (auto d : data->diag) {
      if (!ba.contains(d)) {
        fail(ErrorKind::index,
             "diagonal " + to_string(d) + " outside the algebra");
      }
    }

    if (n <= table_atom_limit
        && (s.dim() + t) * ba.size() <= table_entry_limit) {
      for (auto const& images : data->cyl) {
        data->cyl_table.push_back(full_table(ba, images));
      }
      for (auto const& images : data->subst) {
        data->subst_table.push_back(full_table(ba, images));
      }
    }
    data_ = std::move(data);
  }

  FiniteBao FiniteBao::from_tables(FiniteBA ba, Signature sig,
                                   std::vector<std::vector<Element>> cyl,
                                   std::vector<std::vector<Element>> subst,
                                   std::vector<Element>              diag) {
    auto to_atoms = [&](std::vector<Element> const& table,
                        std::string const&          name) {
      if (table.size() != ba.size()) {
        fail(ErrorKind::size, name + " table has "
                                  + std::to_string(table.size())
                                  + " entries, expected "
                                  + std::to_string(ba.size()));
      }
      if (!table[0].empty()) {
        fail(ErrorKind::validation, name + " is not normal");
      }
      std::vector<Element> images(ba.atom_count());
      for (std::size_t a = 0; a < ba.atom_count(); ++a) {
        images[a] = table[std::size_t(1) << a];
      }
      // Additive on all pairs iff every value is the join of atom values.
      for (std::size_t x = 0; x < ba.size(); ++x) {
        if (table[x] != apply_atoms(images, Element(
                            static_cast<Element::bits_type>(x)))) {
          fail(ErrorKind::validation,
               name + " is not additive at "
                   + to_string(Element(static_cast<Element::bits_type>(x))));
        }
      }
      return images;
    };
    std::vector<std::vector<Element>> cyl_atoms;
    for (std::size_t i = 0; i < cyl.size(); ++i) {
      cyl_atoms.push_back(to_atoms(cyl[i], "c_" + std::to_string(i)));
    }
    std::vector<std::vector<Element>> subst_atoms;
    for (std::size_t k = 0; k < subst.size(); ++k) {
      subst_atoms.push_back(to_atoms(
          subst[k], k < sig.transformation_count()
                        ? "s_" + to_string(sig.transformation(k))
                        : "s_" + std::to_string(k)));
    }
    return FiniteBao(ba, std::move(sig), std::move(cyl_atoms),
                     std::move(subst_atoms), std::move(diag));
  }

  Element FiniteBao::cyl(std::size_t i, Element x) const {
    if (i >= dim()) {
      fail(ErrorKind::index,
           "cylindrifier index " + std::to_string(i) + " out of range");
    }
    if (!data_->cyl_table.empty()) {
      return data_->cyl_table[i][x.bits()];
    }
    return apply_atoms(data_->cyl[i], x);
  }

  Element FiniteBao::subst(std::size_t k, Element x) const {
    if (k >= sig().transformation_count()) {
      fail(ErrorKind::index,
           "substitution index " + std::to_string(k) + " out of range");
    }
    if (!data_->subst_table.empty()) {
      return data_->subst_table[k][x.bits()];
    }
    return apply_atoms(data_->subst[k], x);
  }

  Element FiniteBao::subst(Transformation const& tau, Element x) const {
    auto k = sig().index_of(tau);
    if (!k) {
      fail(ErrorKind::index,
           "transformation " + to_string(tau) + " not in the signature");
    }
    return subst(*k, x);
  }

  Element FiniteBao::diag(std::size_t i, std::size_t j) const {
    if (!sig().with_diagonals()) {
      fail(ErrorKind::signature, "signature has no diagonals");
    }
    if (i >= dim() || j >= dim()) {
      fail(ErrorKind::index, "diagonal index out of range");
    }
    return data_->diag[i * dim() + j];
  }

  bool operator==(FiniteBao const& a, FiniteBao const& b) {
    return a.data_ == b.data_
           || (a.ba() == b.ba() && a.sig() == b.sig()
               && a.cyl_atoms() == b.cyl_atoms()
               && a.subst_atoms() == b.subst_atoms()
               && a.diagonals() == b.diagonals());
  }

  namespace {

    // A term flattened into postfix code over a value stack.
    struct Instr {
      Term::Op    op;
      std::size_t arg = 0;
    };

    class Compiled {
     public:
      Compiled(FiniteBao const& a, Term const& t,
               std::vector<std::string> const& vars)
          : a_(a) {
        check_term_signature(t, a.sig());
        emit(t, vars);
      }

      Element run(std::vector<Element> const& env) const {
        Element     stack[64];
        std::size_t top = 0;
        for (auto const& in : code_) {
          switch (in.op) {
            case Term::Op::var:
              stack[top++] = env[in.arg];
              break;
            case Term::Op::zero:
              stack[top++] = Element();
              break;
            case Term::Op::one:
              stack[top++] = a_.top();
              break;
            case Term::Op::join:
              --top;
              stack[top - 1] |= stack[top];
              break;
            case Term::Op::meet:
              --top;
              stack[top - 1] &= stack[top];
              break;
            case Term::Op::complement:
              stack[top - 1] = a_.complement(stack[top - 1]);
              break;
            case Term::Op::cyl:
              stack[top - 1] = a_.cyl(in.arg, stack[top - 1]);
              break;
            case Term::Op::subst:
              stack[top - 1] = a_.subst(in.arg, stack[top - 1]);
              break;
            case Term::Op::diag:
              stack[top++] = a_.diagonals()[in.arg];
              break;
          }
        }
        return stack[0];
      }

     private:
      // Returns the stack depth needed by t.
      std::size_t emit(Term const& t, std::vector<std::string> const& vars) {
        std::size_t depth = 1;
        switch (t.op()) {
          case Term::Op::var: {
            auto it = std::find(vars.begin(), vars.end(), t.name());
            code_.push_back({t.op(), std::size_t(it - vars.begin())});
            break;
          }
          case Term::Op::join:
          case Term::Op::meet: {
            auto d0 = emit(t.args()[0], vars);
            auto d1 = emit(t.args()[1], vars);
            depth   = std::max(d0, d1 + 1);
            code_.push_back({t.op(), 0});
            break;
          }
          case Term::Op::complement:
            depth = emit(t.args()[0], vars);
            code_.push_back({t.op(), 0});
            break;
          case Term::Op::cyl:
            depth = emit(t.args()[0], vars);
            code_.push_back({t.op(), t.index()});
            break;
          case Term::Op::subst:
            depth = emit(t.args()[0], vars);
            code_.push_back(
                {t.op(), *a_.sig().index_of(t.transformation())});
            break;
          case Term::Op::diag:
            code_.push_back({t.op(), t.index() * a_.dim() + t.second_index()});
            break;
          default:
            code_.push_back({t.op(), 0});
            break;
        }
        if (depth > 64) {
          fail(ErrorKind::size, "term nested too deeply to evaluate");
        }
        return depth;
      }

      FiniteBao const&   a_;
      std::vector<Instr> code_;
    };

  }  // namespace

  Element eval_term(FiniteBao const& a, Term const& t,
                    Environment const& env) {
    switch (t.op()) {
      case Term::Op::var: {
        auto it = env.find(t.name());
        if (it == env.end()) {
          fail(ErrorKind::unbound_variable,
               "variable " + t.name() + " is unbound");
        }
        if (!a.ba().contains(it->second)) {
          fail(ErrorKind::index, "value of " + t.name()
                                     + " is not an element of the algebra");
        }
        return it->second;
      }
      case Term::Op::zero:
        return Element();
      case Term::Op::one:
        return a.top();
      case Term::Op::join:
        return eval_term(a, t.args()[0], env) | eval_term(a, t.args()[1], env);
      case Term::Op::meet:
        return eval_term(a, t.args()[0], env) & eval_term(a, t.args()[1], env);
      case Term::Op::complement:
        return a.complement(eval_term(a, t.args()[0], env));
      case Term::Op::cyl:
        return a.cyl(t.index(), eval_term(a, t.args()[0], env));
      case Term::Op::subst:
        return a.subst(t.transformation(), eval_term(a, t.args()[0], env));
      case Term::Op::diag:
        if (!a.sig().with_diagonals()) {
          fail(ErrorKind::index, "diagonal used in a diagonal-free signature");
        }
        return a.diag(t.index(), t.second_index());
    }
    return Element();
  }

  CheckResult check_equation(FiniteBao const& a, Equation const& e) {
    auto                     var_set = e.variables();
    std::vector<std::string> vars(var_set.begin(), var_set.end());
    Compiled                 lhs(a, e.lhs, vars);
    Compiled                 rhs(a, e.rhs, vars);

    auto const n = a.ba().size();
    double     total = 1;
    for (std::size_t v = 0; v < vars.size(); ++v) {
      total *= double(n);
    }
    if (total > double(std::size_t(1) << 34)) {
      fail(ErrorKind::size, "equation " + to_string(e)
                                + " has too many assignments to enumerate");
    }

    std::vector<Element> env(vars.size());
    CheckResult          result;
    while (true) {
      auto l = lhs.run(env);
      auto r = rhs.run(env);
      if (l != r) {
        result.valid     = false;
        result.lhs_value = l;
        result.rhs_value = r;
        for (std::size_t v = 0; v < vars.size(); ++v) {
          result.counterexample[vars[v]] = env[v];
        }
        return result;
      }
      // Odometer with the last variable fastest.
      std::size_t v = vars.size();
      while (v > 0) {
        auto next = env[v - 1].bits() + 1u;
        if (next < n) {
          env[v - 1] = Element(next);
          break;
        }
        env[v - 1] = Element();
        --v;
      }
      if (v == 0) {
        return result;
      }
    }
  }

  std::vector<std::size_t> dimension_set(FiniteBao const& a, Element x) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (a.cyl(i, x) != x) {
        out.push_back(i);
      }
    }
    return out;
  }

  Element subst_ij(FiniteBao const& a, std::size_t i, std::size_t j,
                   Element x) {
    if (!a.sig().with_diagonals()) {
      fail(ErrorKind::signature, "subst_ij needs diagonals");
    }
    if (i >= a.dim() || j >= a.dim()) {
      fail(ErrorKind::index, "subst_ij index out of range");
    }
    if (i == j) {
      return x;
    }
    return a.cyl(i, a.diag(i, j) & x);
  }

  Element dual_cyl(FiniteBao const& a, std::size_t i, Element x) {
    return a.complement(a.cyl(i, a.complement(x)));
  }

  AlgebraMorphism::AlgebraMorphism(FiniteBao source, FiniteBao target,
                                   std::vector<Element> atom_images)
      : source_(std::move(source)),
        target_(std::move(target)),
        images_(std::move(atom_images)) {
    if (images_.size() != source_.atom_count()) {
      fail(ErrorKind::morphism,
           "morphism needs one image per source atom: got "
               + std::to_string(images_.size()) + ", expected "
               + std::to_string(source_.atom_count()));
    }
    Element seen;
    for (auto e : images_) {
      if (!target_.ba().contains(e)) {
        fail(ErrorKind::morphism,
             "image " + to_string(e) + " outside the target algebra");
      }
      if (!(seen & e).empty()) {
        fail(ErrorKind::morphism,
             "not a Boolean homomorphism: atom images overlap");
      }
      seen |= e;
    }
    if (seen != target_.top()) {
      fail(ErrorKind::morphism,
           "not a Boolean homomorphism: atom images do not cover 1");
    }
  }

  AlgebraMorphism AlgebraMorphism::identity(FiniteBao const& a) {
    std::vector<Element> images;
    for (std::size_t i = 0; i < a.atom_count(); ++i) {
      images.push_back(Element::atom(i));
    }
    return AlgebraMorphism(a, a, std::move(images));
  }

  Element AlgebraMorphism::operator()(Element x) const {
    return apply_atoms(images_, x);
  }

  bool AlgebraMorphism::is_injective() const noexcept {
    return std::none_of(images_.begin(), images_.end(),
                        [](Element e) { return e.empty(); });
  }

  bool AlgebraMorphism::is_homomorphism() const {
    auto const& s = source_.sig();
    if (!(s == target_.sig())) {
      return false;
    }
    // Both sides of each condition are additive, so atoms suffice.
    for (std::size_t a = 0; a < source_.atom_count(); ++a) {
      for (std::size_t i = 0; i < s.dim(); ++i) {
        if ((*this)(source_.cyl_atom(i, a)) != target_.cyl(i, images_[a])) {
          return false;
        }
      }
      for (std::size_t k = 0; k < s.transformation_count(); ++k) {
        if ((*this)(source_.subst_atom(k, a))
            != target_.subst(k, images_[a])) {
          return false;
        }
      }
    }
    for (std::size_t d = 0; d < source_.diagonals().size(); ++d) {
      if ((*this)(source_.diagonals()[d]) != target_.diagonals()[d]) {
        return false;
      }
    }
    return true;
  }

  AlgebraMorphism compose(AlgebraMorphism const& second,
                          AlgebraMorphism const& first) {
    if (!(first.target() == second.source())) {
      fail(ErrorKind::morphism, "composing morphisms that do not meet");
    }
    std::vector<Element> images;
    for (auto e : first.atom_images()) {
      images.push_back(second(e));
    }
    return AlgebraMorphism(first.source(), second.target(), std::move(images));
  }

  bool Subalgebra::contains(Element x) const {
    return std::all_of(blocks.begin(), blocks.end(), [x](Element b) {
      auto m = b & x;
      return m.empty() || m == b;
    });
  }

  Element Subalgebra::lift(Element x) const {
    return apply_atoms(blocks, x);
  }

  Element Subalgebra::lower(Element x) const {
    Element out;
    for (std::size_t t = 0; t < blocks.size(); ++t) {
      if (blocks[t].subset_of(x)) {
        out |= Element::atom(t);
      }
    }
    return out;
  }

  Subalgebra generated_subalgebra(FiniteBao const&            a,
                                  std::vector<Element> const& generators) {
    std::vector<Element> blocks{a.top()};
    auto refine = [&](Element e) {
      std::vector<Element> next;
      for (auto b : blocks) {
        auto in  = b & e;
        auto out = b & a.complement(e);
        if (!in.empty()) {
          next.push_back(in);
        }
        if (!out.empty()) {
          next.push_back(out);
        }
      }
      bool changed = next.size() != blocks.size();
      blocks       = std::move(next);
      return changed;
    };
    for (auto g : generators) {
      if (!a.ba().contains(g)) {
        fail(ErrorKind::index,
             "generator " + to_string(g) + " not in the algebra");
      }
      refine(g);
    }
    for (auto d : a.diagonals()) {
      refine(d);
    }
    // Sg is closed iff every operator maps each block to a union of blocks.
    bool changed = true;
    while (changed) {
      changed       = false;
      auto snapshot = blocks;
      for (auto b : snapshot) {
        for (std::size_t i = 0; i < a.dim(); ++i) {
          changed |= refine(a.cyl(i, b));
        }
        for (std::size_t k = 0; k < a.sig().transformation_count(); ++k) {
          changed |= refine(a.subst(k, b));
        }
      }
    }
    std::sort(blocks.begin(), blocks.end(), [](Element x, Element y) {
      return std::countr_zero(x.bits()) < std::countr_zero(y.bits());
    });

    Subalgebra sub{a, blocks};
    auto const m = blocks.size();
    std::vector<std::vector<Element>> cyl(a.dim(),
                                          std::vector<Element>(m));
    std::vector<std::vector<Element>> subst(
        a.sig().transformation_count(), std::vector<Element>(m));
    for (std::size_t t = 0; t < m; ++t) {
      for (std::size_t i = 0; i < a.dim(); ++i) {
        cyl[i][t] = sub.lower(a.cyl(i, blocks[t]));
      }
      for (std::size_t k = 0; k < a.sig().transformation_count(); ++k) {
        subst[k][t] = sub.lower(a.subst(k, blocks[t]));
      }
    }
    std::vector<Element> diag;
    for (auto d : a.diagonals()) {
      diag.push_back(sub.lower(d));
    }
    sub.algebra = FiniteBao(FiniteBA(m), a.sig(), std::move(cyl),
                            std::move(subst), std::move(diag));
    return sub;
  }

  std::optional<std::vector<std::size_t>> find_isomorphism(FiniteBao const& a,
                                                           FiniteBao const& b) {
    auto const n = a.atom_count();
    if (n != b.atom_count() || !(a.sig() == b.sig())) {
      return std::nullopt;
    }
    // Operators as atom-image lists, cylindrifiers first.
    std::vector<std::vector<Element> const*> ops_a;
    std::vector<std::vector<Element> const*> ops_b;
    for (std::size_t i = 0; i < a.dim(); ++i) {
      ops_a.push_back(&a.cyl_atoms()[i]);
      ops_b.push_back(&b.cyl_atoms()[i]);
    }
    for (std::size_t k = 0; k < a.sig().transformation_count(); ++k) {
      ops_a.push_back(&a.subst_atoms()[k]);
      ops_b.push_back(&b.subst_atoms()[k]);
    }
    // Cheap per-atom invariants prune the search.
    auto invariant = [&](FiniteBao const&                                x,
                         std::vector<std::vector<Element> const*> const& ops,
                         std::size_t                                     atom) {
      std::vector<std::size_t> out;
      for (auto const* op : ops) {
        out.push_back((*op)[atom].popcount());
        out.push_back((*op)[atom].contains(atom));
        std::size_t in_degree = 0;
        for (std::size_t s = 0; s < n; ++s) {
          in_degree += (*op)[s].contains(atom);
        }
        out.push_back(in_degree);
      }
      for (auto d : x.diagonals()) {
        out.push_back(d.contains(atom));
      }
      return out;
    };
    std::vector<std::vector<std::size_t>> inv_a(n);
    std::vector<std::vector<std::size_t>> inv_b(n);
    for (std::size_t s = 0; s < n; ++s) {
      inv_a[s] = invariant(a, ops_a, s);
      inv_b[s] = invariant(b, ops_b, s);
    }

    std::vector<std::size_t> pi(n);
    std::vector<bool>        used(n, false);
    auto consistent = [&](std::size_t x) {
      for (std::size_t y = 0; y <= x; ++y) {
        for (std::size_t o = 0; o < ops_a.size(); ++o) {
          auto const& oa = *ops_a[o];
          auto const& ob = *ops_b[o];
          if (oa[x].contains(y) != ob[pi[x]].contains(pi[y])
              || oa[y].contains(x) != ob[pi[y]].contains(pi[x])) {
            return false;
          }
        }
      }
      return true;
    };
    auto search = [&](auto&& self, std::size_t x) -> bool {
      if (x == n) {
        return true;
      }
      for (std::size_t c = 0; c < n; ++c) {
        if (used[c] || inv_a[x] != inv_b[c]) {
          continue;
        }
        pi[x]   = c;
        used[c] = true;
        if (consistent(x) && self(self, x + 1)) {
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

}  // namespace baode
