#ifndef BAODE_FRAME_HPP_
#define BAODE_FRAME_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "baode/bao.hpp"
#include "baode/boolean.hpp"
#include "baode/signature.hpp"
#include "baode/term.hpp"

namespace baode {

  // A binary relation on points 0..n-1 stored by rows: row t is the set of
  // s with (t, s) in the relation.
  using Relation = std::vector<Element>;

  Relation relation_from_pairs(
      std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> const& pairs);
  std::vector<std::pair<std::size_t, std::size_t>> relation_pairs(
      Relation const& r);
  Relation converse(Relation const& r);

  // A frame (points, T_i for i < dim, S_tau per transformation of the
  // signature, D_ij as point sets when the signature has diagonals).
  class Frame {
   public:
    static constexpr std::size_t max_points = FiniteBA::max_atoms;

    // Throws Error(size) on shape mismatch or too many points and
    // Error(index) when an endpoint lies outside the universe.
    Frame(std::size_t size, Signature sig, std::vector<Relation> t,
          std::vector<Relation> s, std::vector<Element> d);

    // S_tau taken as the converse graph of the total map g[k]:
    // (t, s) in S_tau iff g[k][s] == t.
    static Frame from_actions(std::size_t size, Signature sig,
                              std::vector<Relation>                 t,
                              std::vector<std::vector<std::size_t>> g,
                              std::vector<Element>                  d);

    std::size_t size() const noexcept {
      return size_;
    }
    Signature const& sig() const noexcept {
      return sig_;
    }
    Element universe() const noexcept {
      return Element(static_cast<Element::bits_type>(
          (std::uint64_t(1) << size_) - 1));
    }
    Relation const& t(std::size_t i) const {
      return t_[i];
    }
    Relation const& s(std::size_t k) const {
      return s_[k];
    }
    std::vector<Relation> const& t_relations() const noexcept {
      return t_;
    }
    std::vector<Relation> const& s_relations() const noexcept {
      return s_;
    }
    Element d(std::size_t i, std::size_t j) const {
      return d_[i * sig_.dim() + j];
    }
    std::vector<Element> const& diagonals() const noexcept {
      return d_;
    }

    // g_tau with S_tau its converse graph, when S_tau has that shape.
    std::optional<std::vector<std::size_t>> action(std::size_t k) const;

    friend bool operator==(Frame const&, Frame const&) = default;

   private:
    std::size_t           size_;
    Signature             sig_;
    std::vector<Relation> t_;
    std::vector<Relation> s_;
    std::vector<Element>  d_;
  };

  // Powerset algebra with c_i(X) = {s : exists t in X, (t, s) in T_i} and
  // s_tau(X) likewise through S_tau, so s_tau(X) = g_tau^-1[X].
  // Throws Error(signature) when some S_tau is not the converse graph of a
  // total map or the maps do not satisfy g_(sigma o tau) = g_tau o g_sigma;
  // Error(size) on an empty universe.
  FiniteBao complex_algebra(Frame const& f);

  // Atoms as points; (t, s) in T_i iff s <= c_i(t), likewise for S_tau;
  // D_ij holds the atoms below d_ij.
  Frame atom_structure(FiniteBao const& a);

  struct FrameMorphism {
    Frame                    source;
    Frame                    target;
    std::vector<std::size_t> map;

    // Throws Error(morphism) unless map is total and lands in target.
    FrameMorphism(Frame source, Frame target, std::vector<std::size_t> map);

    bool is_surjective() const;
  };

  // Sends each atom u of the target of h to the atom a of the source with
  // u <= h(a), i.e. the generator of h^-1 of the ultrafilter at u. No
  // operator check is made.
  FrameMorphism dual_map(AlgebraMorphism const& h);
  // dual_map after checking h preserves all operators (Error(morphism)).
  FrameMorphism dual_morphism(AlgebraMorphism const& h);

  // Forth: (x, y) in R implies (m x, m y) in R'. Back: (z, m y) in R'
  // implies some x with m x = z and (x, y) in R. Both for every T_i and
  // S_tau; also m^-1[D'_ij] = D_ij. False on a signature mismatch.
  bool is_bounded_morphism(FrameMorphism const& m);

  // Cartesian product with componentwise relations. Point indices are mixed
  // radix with the first factor most significant. Throws Error(signature)
  // on mismatched signatures and Error(size) past max_points.
  Frame product_frame(std::vector<Frame> const& fs);

  // A frame whose points are tuples over the factors.
  struct ProductSubframe {
    Frame                                 frame;
    std::vector<std::vector<std::size_t>> points;
  };

  // Induced subframe of the product of fs on the listed tuples.
  ProductSubframe induced_product_subframe(
      std::vector<Frame> const&                    fs,
      std::vector<std::vector<std::size_t>> const& points);

  // True iff s carries exactly the relations induced from the product and
  // every projection is onto. Throws Error(containment) when a tuple does
  // not belong to the product.
  bool is_zigzag_product(ProductSubframe const& s, std::vector<Frame> const& fs);

  struct InsepResult {
    ProductSubframe subframe;  // pairs (x, y) in lexicographic order
    bool            zigzag   = false;
    bool            commutes = false;  // f o pi_0 == h o pi_1 pointwise
  };

  // {(x, y) : f(x) = h(y)} with induced relations. Throws Error(morphism)
  // when the targets differ. The flags report the zigzag and commuting
  // postconditions rather than throwing.
  InsepResult insep(FrameMorphism const& f, FrameMorphism const& h);

  // All equations valid in Cm(F).
  bool str_membership(Frame const& f, std::vector<Equation> const& eqs);

  std::optional<std::vector<std::size_t>> find_frame_isomorphism(
      Frame const& a, Frame const& b);

  // The frame of all assignments x : dim -> base (points are tuples with
  // coordinate 0 most significant): T_i relates assignments agreeing off i,
  // g_tau(x) = x o tau and D_ij = {x : x_i = x_j}.
  Frame assignment_frame(std::size_t base, Signature const& sig);

  // Decodes a point of assignment_frame into its tuple.
  std::vector<std::size_t> assignment_of(std::size_t point, std::size_t base,
                                         std::size_t dim);
  std::size_t assignment_index(std::vector<std::size_t> const& x,
                               std::size_t                     base);

}  // namespace baode

#endif  // BAODE_FRAME_HPP_
