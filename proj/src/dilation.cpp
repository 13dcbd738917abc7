#include "baode/dilation.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "baode/error.hpp"
#include "baode/frame.hpp"

namespace baode {

  namespace {

    std::size_t checked_power(std::size_t base, std::size_t exp,
                              std::size_t limit) {
      std::size_t n = 1;
      for (std::size_t k = 0; k < exp; ++k) {
        n *= base;
        if (n > limit) {
          fail(ErrorKind::size, std::to_string(base) + "^"
                                    + std::to_string(exp) + " exceeds "
                                    + std::to_string(limit));
        }
      }
      return n;
    }

    class UnionFind {
     public:
      explicit UnionFind(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
      }
      std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
          parent_[x] = parent_[parent_[x]];
          x          = parent_[x];
        }
        return x;
      }
      void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) {
          parent_[std::max(a, b)] = std::min(a, b);
        }
      }
      std::vector<std::size_t> labels() {
        std::vector<std::size_t> out(parent_.size());
        for (std::size_t x = 0; x < out.size(); ++x) {
          out[x] = find(x);
        }
        return out;
      }

     private:
      std::vector<std::size_t> parent_;
    };

    // Renumbers labels by first occurrence.
    template <typename Label>
    std::vector<std::size_t> normalize(std::vector<Label> const& labels) {
      std::map<Label, std::size_t> ids;
      std::vector<std::size_t>     out(labels.size());
      for (std::size_t q = 0; q < labels.size(); ++q) {
        auto [it, fresh] = ids.emplace(labels[q], ids.size());
        out[q]           = it->second;
      }
      return out;
    }

    std::size_t block_count(std::vector<std::size_t> const& labels) {
      return labels.empty()
                 ? 0
                 : *std::max_element(labels.begin(), labels.end()) + 1;
    }

    // Every block of fine lies inside a block of coarse.
    bool refines(std::vector<std::size_t> const& fine,
                 std::vector<std::size_t> const& coarse) {
      std::map<std::size_t, std::size_t> to;
      for (std::size_t q = 0; q < fine.size(); ++q) {
        auto [it, fresh] = to.emplace(fine[q], coarse[q]);
        if (!fresh && it->second != coarse[q]) {
          return false;
        }
      }
      return true;
    }

    Transformation restrict_to(Transformation const& t, std::size_t alpha) {
      std::vector<std::size_t> v(t.values().begin(),
                                 t.values().begin() + alpha);
      return Transformation(std::move(v));
    }

    bool injective_on(Transformation const& t, std::size_t alpha) {
      std::vector<bool> seen(t.size(), false);
      for (std::size_t i = 0; i < alpha; ++i) {
        if (seen[t(i)]) {
          return false;
        }
        seen[t(i)] = true;
      }
      return true;
    }

    // dual[u] = the atom a with u <= s_k(a).
    std::vector<std::size_t> dual_of_subst(FiniteBao const& b, std::size_t k) {
      std::vector<std::size_t> dual(b.atom_count());
      for (std::size_t a = 0; a < b.atom_count(); ++a) {
        for_each_atom(b.subst_atom(k, a), [&](std::size_t u) { dual[u] = a; });
      }
      return dual;
    }

    // Transformation indices grouped by their restriction to j.
    std::vector<std::vector<std::size_t>> groups_agreeing_on(
        Signature const& sig, std::vector<std::size_t> const& j) {
      std::map<std::vector<std::size_t>, std::vector<std::size_t>> groups;
      for (std::size_t k = 0; k < sig.transformation_count(); ++k) {
        std::vector<std::size_t> key;
        for (auto i : j) {
          key.push_back(sig.transformation(k)(i));
        }
        groups[key].push_back(k);
      }
      std::vector<std::vector<std::size_t>> out;
      for (auto& [key, members] : groups) {
        out.push_back(std::move(members));
      }
      return out;
    }

    void check_index_set(std::vector<std::size_t>& j, std::size_t dim) {
      std::sort(j.begin(), j.end());
      j.erase(std::unique(j.begin(), j.end()), j.end());
      for (auto i : j) {
        if (i >= dim) {
          fail(ErrorKind::index, "index " + std::to_string(i)
                                     + " outside dimension "
                                     + std::to_string(dim));
        }
      }
    }

    bool union_of_blocks(Element x, std::vector<Element> const& blocks) {
      for (auto b : blocks) {
        auto m = b & x;
        if (!m.empty() && m != b) {
          return false;
        }
      }
      return true;
    }

    Element lower_to(std::vector<Element> const& blocks, Element x) {
      Element out;
      for (std::size_t t = 0; t < blocks.size(); ++t) {
        if (blocks[t].subset_of(x)) {
          out |= Element::atom(t);
        }
      }
      return out;
    }

  }  // namespace

  TransformationSystem::TransformationSystem(std::size_t base,
                                             std::size_t dim,
                                             FiniteBA    values)
      : base_(base), dim_(dim), values_(values) {
    if (base == 0 || dim == 0) {
      fail(ErrorKind::size, "transformation systems need base, dim >= 1");
    }
    points_ = checked_power(base, dim, max_points);
  }

  std::vector<std::size_t> TransformationSystem::assignment(
      std::size_t point) const {
    return assignment_of(point, base_, dim_);
  }

  std::size_t TransformationSystem::index(
      std::vector<std::size_t> const& x) const {
    return assignment_index(x, base_);
  }

  TransformationSystem::Function TransformationSystem::constant(
      Element e) const {
    return Function(points_, e);
  }

  TransformationSystem::Function TransformationSystem::join(
      Function const& f, Function const& g) const {
    Function out(points_);
    for (std::size_t p = 0; p < points_; ++p) {
      out[p] = f[p] | g[p];
    }
    return out;
  }

  TransformationSystem::Function TransformationSystem::meet(
      Function const& f, Function const& g) const {
    Function out(points_);
    for (std::size_t p = 0; p < points_; ++p) {
      out[p] = f[p] & g[p];
    }
    return out;
  }

  TransformationSystem::Function TransformationSystem::complement(
      Function const& f) const {
    Function out(points_);
    for (std::size_t p = 0; p < points_; ++p) {
      out[p] = values_.complement(f[p]);
    }
    return out;
  }

  TransformationSystem::Function TransformationSystem::subst(
      Transformation const& tau, Function const& f) const {
    if (tau.size() != dim_) {
      fail(ErrorKind::map, "transformation " + to_string(tau)
                               + " does not act on dimension "
                               + std::to_string(dim_));
    }
    Function                 out(points_);
    std::vector<std::size_t> y(dim_);
    for (std::size_t p = 0; p < points_; ++p) {
      auto x = assignment(p);
      for (std::size_t k = 0; k < dim_; ++k) {
        y[k] = x[tau(k)];
      }
      out[p] = f[index(y)];
    }
    return out;
  }

  TransformationSystem full_function_system(std::size_t      base,
                                            FiniteBao const& a,
                                            std::size_t      dim) {
    return TransformationSystem(base, dim, a.ba());
  }

  HEmbedding::HEmbedding(FiniteBao a)
      : a_(std::move(a)), system_(a_.dim(), a_.dim(), a_.ba()) {
    if (!a_.sig().is_full_monoid()) {
      fail(ErrorKind::signature,
           "H needs every map of the dimension among the substitutions");
    }
  }

  TransformationSystem::Function HEmbedding::operator()(Element p) const {
    TransformationSystem::Function out(system_.point_count());
    for (std::size_t x = 0; x < out.size(); ++x) {
      out[x] = a_.subst(Transformation(system_.assignment(x)), p);
    }
    return out;
  }

  KDilation::KDilation(TransformationSystem small, std::size_t beta)
      : small_(std::move(small)),
        big_(small_.base(), beta < small_.dim() ? small_.dim() : beta,
             small_.values()) {
    if (beta < small_.dim()) {
      fail(ErrorKind::index, "dilation dimension below the original");
    }
    restrict_.resize(big_.point_count());
    for (std::size_t p = 0; p < big_.point_count(); ++p) {
      auto y = big_.assignment(p);
      y.resize(small_.dim());
      restrict_[p] = small_.index(y);
    }
  }

  TransformationSystem::Function KDilation::operator()(
      TransformationSystem::Function const& f) const {
    TransformationSystem::Function out(big_.point_count());
    for (std::size_t p = 0; p < out.size(); ++p) {
      out[p] = f[restrict_[p]];
    }
    return out;
  }

  FunctionDilationReport function_dilation_report(FiniteBao const& a,
                                                  std::size_t      beta) {
    auto const alpha = a.dim();
    if (!a.sig().is_full_monoid()) {
      fail(ErrorKind::signature,
           "the function dilation needs every map of the dimension");
    }
    if (beta < alpha) {
      fail(ErrorKind::index, "dilation dimension below the original");
    }
    auto const m      = a.atom_count();
    auto const points = checked_power(alpha, beta, TransformationSystem::max_points);
    auto const nodes  = points * m;
    if (nodes > TransformationSystem::max_points) {
      fail(ErrorKind::size, "Boolean power has too many atoms");
    }
    TransformationSystem big(alpha, beta, a.ba());
    TransformationSystem small(alpha, alpha, a.ba());
    auto const           taus = all_transformations(beta);

    // phi[t][q]: s_tau f contains node q iff f contains phi[t][q].
    std::vector<std::vector<std::size_t>> phi(taus.size(),
                                              std::vector<std::size_t>(nodes));
    for (std::size_t t = 0; t < taus.size(); ++t) {
      std::vector<std::size_t> y(beta);
      for (std::size_t p = 0; p < points; ++p) {
        auto x = big.assignment(p);
        for (std::size_t k = 0; k < beta; ++k) {
          y[k] = x[taus[t](k)];
        }
        auto target = big.index(y);
        for (std::size_t u = 0; u < m; ++u) {
          phi[t][p * m + u] = target * m + u;
        }
      }
    }

    std::vector<std::size_t> first_alpha(beta);
    std::iota(first_alpha.begin(), first_alpha.end(), 0);
    first_alpha.resize(alpha);
    std::map<std::vector<std::size_t>, std::size_t> rep;
    UnionFind                                       nr(nodes);
    for (std::size_t t = 0; t < taus.size(); ++t) {
      std::vector<std::size_t> key(taus[t].values().begin(),
                                   taus[t].values().begin() + alpha);
      auto [it, fresh] = rep.emplace(key, t);
      if (!fresh) {
        for (std::size_t q = 0; q < nodes; ++q) {
          nr.unite(phi[it->second][q], phi[t][q]);
        }
      }
    }
    auto nr_labels = normalize(nr.labels());

    std::vector<std::pair<std::size_t, std::size_t>> k_raw(nodes);
    std::vector<std::size_t>                         kh_raw(nodes);
    std::vector<std::vector<std::size_t>>            duals;
    for (std::size_t x = 0; x < small.point_count(); ++x) {
      auto k = a.sig().index_of(Transformation(small.assignment(x)));
      duals.push_back(dual_of_subst(a, *k));
    }
    for (std::size_t p = 0; p < points; ++p) {
      auto y = big.assignment(p);
      y.resize(alpha);
      auto x = small.index(y);
      for (std::size_t u = 0; u < m; ++u) {
        k_raw[p * m + u]  = {x, u};
        kh_raw[p * m + u] = duals[x][u];
      }
    }
    auto k_labels  = normalize(k_raw);
    auto kh_labels = normalize(kh_raw);

    // Coarsest refinement of the K H partition stable under every phi.
    auto sg_labels = kh_labels;
    while (true) {
      std::vector<std::vector<std::size_t>> sig(nodes);
      for (std::size_t q = 0; q < nodes; ++q) {
        sig[q].push_back(sg_labels[q]);
        for (auto const& f : phi) {
          sig[q].push_back(sg_labels[f[q]]);
        }
      }
      auto next = normalize(sig);
      if (block_count(next) == block_count(sg_labels)) {
        break;
      }
      sg_labels = std::move(next);
    }

    // Nr_alpha Sg = Nr_alpha F intersected with Sg: join of partitions.
    UnionFind both(nodes);
    std::map<std::size_t, std::size_t> first_nr;
    std::map<std::size_t, std::size_t> first_sg;
    for (std::size_t q = 0; q < nodes; ++q) {
      auto [a1, f1] = first_nr.emplace(nr_labels[q], q);
      both.unite(a1->second, q);
      auto [a2, f2] = first_sg.emplace(sg_labels[q], q);
      both.unite(a2->second, q);
    }
    auto nr_sg = normalize(both.labels());

    FunctionDilationReport r;
    r.nr_atoms          = block_count(nr_labels);
    r.k_atoms           = block_count(k_labels);
    r.kh_atoms          = block_count(kh_labels);
    r.sg_atoms          = block_count(sg_labels);
    r.nr_equals_k_image = nr_labels == k_labels;
    r.kh_inside_nr      = refines(nr_labels, kh_labels);
    r.minimal_dilation  = nr_sg == kh_labels;
    return r;
  }

  bool supports(FiniteBao const& b, std::vector<std::size_t> const& j_in,
                Element p) {
    auto j = j_in;
    check_index_set(j, b.dim());
    for (auto const& group : groups_agreeing_on(b.sig(), j)) {
      auto first = b.subst(group[0], p);
      for (std::size_t g = 1; g < group.size(); ++g) {
        if (b.subst(group[g], p) != first) {
          return false;
        }
      }
    }
    return true;
  }

  NeatReduct neat_reduct(FiniteBao const& b, std::vector<std::size_t> j) {
    check_index_set(j, b.dim());
    if (j.empty()) {
      fail(ErrorKind::index, "neat reduct needs a nonempty index set");
    }
    auto const& sig = b.sig();
    UnionFind   uf(b.atom_count());
    for (auto const& group : groups_agreeing_on(sig, j)) {
      auto first = dual_of_subst(b, group[0]);
      for (std::size_t g = 1; g < group.size(); ++g) {
        auto other = dual_of_subst(b, group[g]);
        for (std::size_t u = 0; u < b.atom_count(); ++u) {
          uf.unite(first[u], other[u]);
        }
      }
    }
    std::map<std::size_t, Element> classes;
    for (std::size_t a = 0; a < b.atom_count(); ++a) {
      classes[uf.find(a)] |= Element::atom(a);
    }
    std::vector<Element> blocks;
    for (auto const& [root, e] : classes) {
      blocks.push_back(e);
    }
    std::sort(blocks.begin(), blocks.end(), [](Element x, Element y) {
      return std::countr_zero(x.bits()) < std::countr_zero(y.bits());
    });

    auto const n = j.size();
    std::vector<Transformation> lifted;
    std::vector<Transformation> small_taus;
    for (auto const& t : all_transformations(n)) {
      auto v = Transformation::identity(b.dim()).values();
      for (std::size_t a = 0; a < n; ++a) {
        v[j[a]] = j[t(a)];
      }
      Transformation lift(std::move(v));
      if (sig.index_of(lift)) {
        lifted.push_back(lift);
        small_taus.push_back(t);
      }
    }

    std::vector<std::vector<Element>> cyl(n,
                                          std::vector<Element>(blocks.size()));
    std::vector<std::vector<Element>> subst(
        lifted.size(), std::vector<Element>(blocks.size()));
    for (std::size_t t = 0; t < blocks.size(); ++t) {
      for (std::size_t a = 0; a < n; ++a) {
        auto v = b.cyl(j[a], blocks[t]);
        if (!union_of_blocks(v, blocks)) {
          fail(ErrorKind::closure, "neat reduct not closed under c_"
                                       + std::to_string(j[a]));
        }
        cyl[a][t] = lower_to(blocks, v);
      }
      for (std::size_t k = 0; k < lifted.size(); ++k) {
        auto v = b.subst(lifted[k], blocks[t]);
        if (!union_of_blocks(v, blocks)) {
          fail(ErrorKind::closure, "neat reduct not closed under s_"
                                       + to_string(lifted[k]));
        }
        subst[k][t] = lower_to(blocks, v);
      }
    }
    std::vector<Element> diag;
    if (sig.with_diagonals()) {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t c = 0; c < n; ++c) {
          auto v = b.diag(j[a], j[c]);
          if (!union_of_blocks(v, blocks)) {
            fail(ErrorKind::closure,
                 "neat reduct does not contain d_" + std::to_string(j[a])
                     + std::to_string(j[c]));
          }
          diag.push_back(lower_to(blocks, v));
        }
      }
    }
    Signature small_sig(n, std::move(small_taus), sig.with_diagonals());
    return NeatReduct{FiniteBao(FiniteBA(blocks.size()), std::move(small_sig),
                                std::move(cyl), std::move(subst),
                                std::move(diag)),
                      std::move(j), std::move(blocks)};
  }

  FiniteBao rename_dilation(FiniteBao const& a, Transformation const& mu) {
    auto const n = a.dim();
    if (mu.size() != n || !mu.is_permutation()) {
      fail(ErrorKind::map,
           "renaming needs a bijection of the index set, got " + to_string(mu));
    }
    auto const  mu_inv = mu.inverse();
    auto const& sig    = a.sig();
    if (!sig.index_of(mu)) {
      fail(ErrorKind::map, "renaming map " + to_string(mu)
                               + " is not among the substitutions");
    }
    std::vector<std::vector<Element>> subst;
    for (auto const& t : sig.transformations()) {
      auto k = sig.index_of(compose(mu, compose(t, mu_inv)));
      if (!k) {
        fail(ErrorKind::map, "the monoid is not closed under conjugation by "
                                 + to_string(mu));
      }
      subst.push_back(a.subst_atoms()[*k]);
    }
    std::vector<std::vector<Element>> cyl;
    for (std::size_t i = 0; i < n; ++i) {
      cyl.push_back(a.cyl_atoms()[mu(i)]);
    }
    std::vector<Element> diag;
    if (sig.with_diagonals()) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          diag.push_back(a.diag(mu(i), mu(j)));
        }
      }
    }
    return FiniteBao(a.ba(), sig, std::move(cyl), std::move(subst),
                     std::move(diag));
  }

  AlgebraMorphism rename_embedding(FiniteBao const&      a,
                                   Transformation const& mu) {
    auto renamed = rename_dilation(a, mu);
    auto k       = a.sig().index_of(mu);
    if (!k) {
      fail(ErrorKind::map, "renaming map " + to_string(mu)
                               + " is not among the substitutions");
    }
    return AlgebraMorphism(a, renamed, a.subst_atoms()[*k]);
  }

  DilationPair::DilationPair(FiniteBao small, FiniteBao big,
                             std::vector<Element> embedding)
      : small_(std::move(small)),
        big_(std::move(big)),
        embedding_(std::move(embedding)) {
    auto const alpha = small_.dim();
    if (alpha > big_.dim()) {
      fail(ErrorKind::morphism, "the dilation has smaller dimension");
    }
    if (small_.sig().with_diagonals() != big_.sig().with_diagonals()) {
      fail(ErrorKind::morphism, "diagonals present on one side only");
    }
    if (embedding_.size() != small_.atom_count()) {
      fail(ErrorKind::morphism, "embedding needs one image per atom");
    }
    Element seen;
    for (auto e : embedding_) {
      if (e.empty() || !(seen & e).empty() || !big_.ba().contains(e)) {
        fail(ErrorKind::morphism,
             "embedding images must be nonzero, disjoint elements");
      }
      seen |= e;
    }
    if (seen != big_.top()) {
      fail(ErrorKind::morphism, "embedding does not preserve 1");
    }
    for (std::size_t a = 0; a < small_.atom_count(); ++a) {
      auto x = embedding_[a];
      for (std::size_t i = 0; i < alpha; ++i) {
        if (embed(small_.cyl_atom(i, a)) != big_.cyl(i, x)) {
          fail(ErrorKind::morphism,
               "embedding does not commute with c_" + std::to_string(i));
        }
      }
      for (std::size_t k = 0; k < small_.sig().transformation_count(); ++k) {
        auto lifted = lift(small_.sig().transformation(k));
        if (!big_.sig().index_of(lifted)) {
          fail(ErrorKind::morphism, "substitution " + to_string(lifted)
                                        + " missing from the dilation");
        }
        if (embed(small_.subst_atom(k, a)) != big_.subst(lifted, x)) {
          fail(ErrorKind::morphism, "embedding does not commute with s_"
                                        + to_string(lifted));
        }
      }
    }
    for (std::size_t i = 0; i < alpha && small_.sig().with_diagonals(); ++i) {
      for (std::size_t j = 0; j < alpha; ++j) {
        if (embed(small_.diag(i, j)) != big_.diag(i, j)) {
          fail(ErrorKind::morphism, "embedding moves a diagonal");
        }
      }
    }
    std::vector<std::size_t> first(alpha);
    std::iota(first.begin(), first.end(), 0);
    for (auto e : embedding_) {
      if (!supports(big_, first, e)) {
        fail(ErrorKind::containment,
             "embedded atom " + to_string(e)
                 + " is not supported by the first indices");
      }
    }
  }

  Element DilationPair::embed(Element p) const {
    Element out;
    for_each_atom(p, [&](std::size_t a) { out |= embedding_[a]; });
    return out;
  }

  bool DilationPair::in_image(Element x) const {
    return union_of_blocks(x, embedding_);
  }

  Element DilationPair::preimage(Element x) const {
    return lower_to(embedding_, x);
  }

  Transformation DilationPair::lift(Transformation const& tau) const {
    auto v = Transformation::identity(beta()).values();
    for (std::size_t i = 0; i < tau.size(); ++i) {
      v[i] = tau(i);
    }
    return Transformation(std::move(v));
  }

  DilationPair square_dilation(std::size_t base, std::size_t alpha,
                               std::size_t beta, bool with_diagonals) {
    if (alpha > beta) {
      fail(ErrorKind::index, "square dilation needs alpha <= beta");
    }
    auto small = complex_algebra(
        assignment_frame(base, Signature::full(alpha, with_diagonals)));
    auto big = complex_algebra(
        assignment_frame(base, Signature::full(beta, with_diagonals)));
    auto const           block = checked_power(base, beta - alpha, 1u << 20);
    std::vector<Element> embedding;
    for (std::size_t p = 0; p < small.atom_count(); ++p) {
      Element e;
      for (std::size_t q = p * block; q < (p + 1) * block; ++q) {
        e |= Element::atom(q);
      }
      embedding.push_back(e);
    }
    return DilationPair(std::move(small), std::move(big), std::move(embedding));
  }

  DilationPair sub_dilation(DilationPair const&         pair,
                            std::vector<Element> const& generators) {
    auto                 sub_small = generated_subalgebra(pair.small(), generators);
    std::vector<Element> images;
    for (auto b : sub_small.blocks) {
      images.push_back(pair.embed(b));
    }
    auto                 sub_big = generated_subalgebra(pair.big(), images);
    std::vector<Element> embedding;
    for (auto e : images) {
      embedding.push_back(sub_big.lower(e));
    }
    return DilationPair(sub_small.algebra, sub_big.algebra,
                        std::move(embedding));
  }

  std::vector<Transformation> admissible_rhos(DilationPair const&   pair,
                                              Transformation const& sigma) {
    std::vector<Transformation> out;
    auto const                  alpha = pair.alpha();
    for (auto const& rho : all_permutations(pair.beta())) {
      if (!pair.big().sig().index_of(rho)) {
        continue;
      }
      bool inside = true;
      for (std::size_t i = 0; i < alpha && inside; ++i) {
        inside = rho(sigma(i)) < alpha;
      }
      if (!inside) {
        continue;
      }
      if (pair.small().sig().index_of(restrict_to(compose(rho, sigma), alpha))) {
        out.push_back(rho);
      }
    }
    return out;
  }

  namespace {

    void check_cylinder_arguments(DilationPair const& pair, std::size_t k,
                                  Transformation const& sigma, Element p) {
      if (k >= pair.beta()) {
        fail(ErrorKind::index, "cylindrifier index " + std::to_string(k)
                                   + " outside the dilation");
      }
      if (sigma.size() != pair.beta() || !pair.big().sig().index_of(sigma)) {
        fail(ErrorKind::index, "transformation " + to_string(sigma)
                                   + " not among the dilation's");
      }
      if (!injective_on(sigma, pair.alpha())) {
        fail(ErrorKind::map, to_string(sigma)
                                 + " is not one-to-one on the small indices");
      }
      if (!pair.small().ba().contains(p)) {
        fail(ErrorKind::index, "element outside the small algebra");
      }
    }

    Element cylinder_with(DilationPair const& pair, std::size_t k,
                          Transformation const& sigma, Element p,
                          Transformation const& rho) {
      auto q = pair.small().subst(
          restrict_to(compose(rho, sigma), pair.alpha()), p);
      bool in_image = false;
      for (std::size_t i = 0; i < pair.alpha(); ++i) {
        in_image |= sigma(i) == k;
      }
      if (in_image) {
        q = pair.small().cyl(rho(k), q);
      }
      return pair.big().subst(rho.inverse(), pair.embed(q));
    }

  }  // namespace

  Element dilated_cylindrifier(DilationPair const& pair, std::size_t k,
                               Transformation const& sigma, Element p) {
    check_cylinder_arguments(pair, k, sigma, p);
    auto rhos = admissible_rhos(pair, sigma);
    if (rhos.empty()) {
      fail(ErrorKind::dimension_budget,
           "no admissible permutation for " + to_string(sigma));
    }
    return cylinder_with(pair, k, sigma, p, rhos.front());
  }

  CylinderVerification verify_dilated_cylindrifier(
      DilationPair const& pair, std::size_t k, Transformation const& sigma,
      Element p) {
    CylinderVerification v;
    v.value = dilated_cylindrifier(pair, k, sigma, p);
    for (auto const& rho : admissible_rhos(pair, sigma)) {
      ++v.admissible;
      if (cylinder_with(pair, k, sigma, p, rho) != v.value) {
        v.rho_agree = false;
        v.detail    = "rho " + to_string(rho) + " disagrees";
      }
    }
    auto const target = pair.big().subst(sigma, pair.embed(p));
    for (auto const& other : pair.big().sig().transformations()) {
      if (!injective_on(other, pair.alpha())) {
        continue;
      }
      for (std::size_t x = 0; x < pair.small().ba().size(); ++x) {
        auto q = pair.small().ba().element(x);
        if (pair.big().subst(other, pair.embed(q)) != target) {
          continue;
        }
        ++v.presentations;
        for (auto const& rho : admissible_rhos(pair, other)) {
          if (cylinder_with(pair, k, other, q, rho) != v.value) {
            v.presentation_agree = false;
            v.detail = "presentation (" + to_string(other) + ", "
                       + to_string(q) + ") disagrees";
          }
        }
      }
    }
    if (pair.big().cyl(k, target) != v.value) {
      v.matches_big = false;
      v.detail      = "differs from the dilation's own c_" + std::to_string(k);
    }
    return v;
  }

  PairVerification verify_dilation_pair(DilationPair const& pair) {
    struct Presentation {
      Transformation              sigma;
      Element                     p;
      std::vector<Transformation> rhos;
    };
    std::map<Element, std::vector<Presentation>> by_value;
    PairVerification                             r;
    for (auto const& sigma : pair.big().sig().transformations()) {
      if (!injective_on(sigma, pair.alpha())) {
        continue;
      }
      auto rhos = admissible_rhos(pair, sigma);
      if (rhos.empty()) {
        continue;
      }
      for (std::size_t x = 0; x < pair.small().ba().size(); ++x) {
        auto p = pair.small().ba().element(x);
        by_value[pair.big().subst(sigma, pair.embed(p))].push_back(
            {sigma, p, rhos});
        ++r.presentations;
      }
    }
    r.elements = by_value.size();
    for (auto const& [value, presentations] : by_value) {
      for (std::size_t k = 0; k < pair.beta(); ++k) {
        auto const expected = pair.big().cyl(k, value);
        for (auto const& pr : presentations) {
          for (auto const& rho : pr.rhos) {
            ++r.evaluations;
            if (cylinder_with(pair, k, pr.sigma, pr.p, rho) != expected) {
              ++r.disagreements;
              if (r.first_problem.empty()) {
                r.first_problem = "k = " + std::to_string(k) + ", sigma = "
                                  + to_string(pr.sigma)
                                  + ", p = " + to_string(pr.p)
                                  + ", rho = " + to_string(rho);
              }
            }
          }
        }
      }
    }
    return r;
  }

  bool is_perfect_ultrafilter(DilationPair const&                pair,
                              std::vector<Transformation> const& adm,
                              Filter const&                      f) {
    auto const& big = pair.big();
    if (!(f.base() == big.ba())) {
      fail(ErrorKind::index, "filter does not live in the dilation");
    }
    if (!f.is_ultra()) {
      fail(ErrorKind::properness, "perfection is defined for ultrafilters");
    }
    for (auto const& tau : adm) {
      if (!big.sig().index_of(tau)) {
        fail(ErrorKind::index,
             "transformation " + to_string(tau) + " not in the dilation");
      }
      for (std::size_t j = 0; j < pair.alpha(); ++j) {
        for (std::size_t e = 0; e < pair.small().ba().size(); ++e) {
          auto x = pair.embed(pair.small().ba().element(e));
          if (!f.contains(big.subst(tau, big.cyl(j, x)))) {
            continue;
          }
          bool witnessed = false;
          for (std::size_t m = pair.alpha(); m < pair.beta() && !witnessed;
               ++m) {
            auto r = Transformation::replacement(pair.beta(), j, m);
            witnessed = tau(m) == m && big.sig().index_of(r)
                        && f.contains(big.subst(tau, big.subst(r, x)));
          }
          if (!witnessed) {
            return false;
          }
        }
      }
    }
    return true;
  }

  std::vector<Element> witness_filter_step(DilationPair const&         pair,
                                           std::vector<Element> const& g_prev,
                                           Transformation const&       tau,
                                           std::size_t j, Element x,
                                           std::size_t m) {
    auto const& big = pair.big();
    if (j >= pair.alpha()) {
      fail(ErrorKind::index, "witness step index j outside the small indices");
    }
    if (!big.sig().index_of(tau)) {
      fail(ErrorKind::index,
           "transformation " + to_string(tau) + " not in the dilation");
    }
    if (!pair.in_image(x)) {
      fail(ErrorKind::containment, "x is not in the embedded algebra");
    }
    if (m < pair.alpha() || m >= pair.beta()) {
      fail(ErrorKind::witness_index,
           "m = " + std::to_string(m) + " is not a spare index");
    }
    if (tau(m) != m) {
      fail(ErrorKind::witness_index,
           "tau moves the witness index " + std::to_string(m));
    }
    for (auto g : g_prev) {
      auto d = dimension_set(big, g);
      if (std::find(d.begin(), d.end(), m) != d.end()) {
        fail(ErrorKind::witness_index,
             "m = " + std::to_string(m) + " occurs in the dimension set of "
                 + to_string(g));
      }
    }
    auto r = Transformation::replacement(pair.beta(), j, m);
    if (!big.sig().index_of(r)) {
      fail(ErrorKind::index, "substitution " + to_string(r)
                                 + " not in the dilation");
    }
    auto out = g_prev;
    out.push_back(big.complement(big.subst(tau, big.cyl(j, x)))
                  | big.subst(tau, big.subst(r, x)));
    return out;
  }

}  // namespace baode
