#ifndef BAODE_DILATION_HPP_
#define BAODE_DILATION_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "baode/bao.hpp"
#include "baode/boolean.hpp"
#include "baode/signature.hpp"

namespace baode {

  // Functions from dim-tuples over {0..base-1} into a finite Boolean
  // algebra, with pointwise Boolean operations and (s_tau f)(x) = f(x o tau).
  // Tuples are indexed with coordinate 0 most significant.
  class TransformationSystem {
   public:
    using Function = std::vector<Element>;

    static constexpr std::size_t max_points = 10000;

    // Throws Error(size) when base^dim exceeds max_points.
    TransformationSystem(std::size_t base, std::size_t dim, FiniteBA values);

    std::size_t base() const noexcept {
      return base_;
    }
    std::size_t dim() const noexcept {
      return dim_;
    }
    FiniteBA const& values() const noexcept {
      return values_;
    }
    std::size_t point_count() const noexcept {
      return points_;
    }
    std::vector<std::size_t> assignment(std::size_t point) const;
    std::size_t              index(std::vector<std::size_t> const& x) const;

    Function constant(Element e) const;
    Function join(Function const& f, Function const& g) const;
    Function meet(Function const& f, Function const& g) const;
    Function complement(Function const& f) const;
    // Throws Error(map) when tau has the wrong size.
    Function subst(Transformation const& tau, Function const& f) const;

   private:
    std::size_t base_;
    std::size_t dim_;
    FiniteBA    values_;
    std::size_t points_;
  };

  TransformationSystem full_function_system(std::size_t      base,
                                            FiniteBao const& a,
                                            std::size_t      dim);

  // H(p)(x) = s_x p over the system of functions dim^dim -> a.
  class HEmbedding {
   public:
    // Throws Error(signature) unless a has every map dim -> dim.
    explicit HEmbedding(FiniteBao a);

    TransformationSystem const& system() const noexcept {
      return system_;
    }
    TransformationSystem::Function operator()(Element p) const;

   private:
    FiniteBao            a_;
    TransformationSystem system_;
  };

  // K(f)(y) = f(y restricted to the first small.dim() coordinates).
  class KDilation {
   public:
    // Throws Error(index) when beta < small.dim(), Error(size) past the
    // point guard.
    KDilation(TransformationSystem small, std::size_t beta);

    TransformationSystem const& source() const noexcept {
      return small_;
    }
    TransformationSystem const& system() const noexcept {
      return big_;
    }
    TransformationSystem::Function operator()(
        TransformationSystem::Function const& f) const;

   private:
    TransformationSystem     small_;
    TransformationSystem     big_;
    std::vector<std::size_t> restrict_;  // big point -> small point
  };

  // Neat-reduct facts about the function-system dilation of a, computed on
  // the atoms (point, atom of a) of the Boolean power.
  struct FunctionDilationReport {
    std::size_t nr_atoms = 0;        // atoms of Nr_alpha F(^beta alpha, a)
    std::size_t k_atoms  = 0;        // atoms of K[F(^alpha alpha, a)]
    std::size_t kh_atoms = 0;        // atoms of K H[a]
    std::size_t sg_atoms = 0;        // atoms of Sg(K H[a]) under all s_tau
    bool nr_equals_k_image = false;  // Nr_alpha = K[F(^alpha alpha, a)]
    bool kh_inside_nr      = false;  // K H[a] is a subset of Nr_alpha
    bool minimal_dilation  = false;  // Nr_alpha Sg(K H[a]) = K H[a]
  };

  // Requires the full monoid on a (Error(signature)); Error(size) when the
  // Boolean power has more than max_points atoms.
  FunctionDilationReport function_dilation_report(FiniteBao const& a,
                                                  std::size_t      beta);

  // J supports p: s_sigma1 p = s_sigma2 p whenever sigma1 and sigma2 agree
  // on J, quantified over the listed monoid of b.
  bool supports(FiniteBao const& b, std::vector<std::size_t> const& j,
                Element p);

  struct NeatReduct {
    FiniteBao                algebra;  // dimension |J|, indices renumbered
    std::vector<std::size_t> j;        // ascending; new index t is j[t]
    std::vector<Element>     blocks;   // atom t of algebra as element of b
  };

  // Elements of b supported by J, with c_i (i in J), s_tau for tau lifted
  // from maps J -> J (identity off J) and d_ij (i, j in J). Throws
  // Error(closure) naming the first operation under which the carrier is
  // not closed, Error(index) on a bad J.
  NeatReduct neat_reduct(FiniteBao const& b, std::vector<std::size_t> j);

  // s_tau = s_(mu tau mu^-1), c_i = c_mu(i), d_ij = d_mu(i)mu(j) over the
  // same signature. Throws Error(map) unless mu is a permutation of the
  // right size in a's monoid and the monoid is closed under conjugation
  // by mu.
  FiniteBao rename_dilation(FiniteBao const& a, Transformation const& mu);
  // p -> s_mu p, an isomorphism a -> rename_dilation(a, mu).
  AlgebraMorphism rename_embedding(FiniteBao const&      a,
                                   Transformation const& mu);

  // small embeds into the alpha-neat reduct of big (alpha = small.dim()).
  class DilationPair {
   public:
    // Throws Error(morphism) unless the images are disjoint, nonzero and
    // cover 1, commute with c_i (i < alpha), with s_tau for tau extended by
    // the identity and with d_ij (i, j < alpha); Error(containment) when an
    // image is not supported by alpha. big.dim() may equal alpha.
    DilationPair(FiniteBao small, FiniteBao big,
                 std::vector<Element> embedding);

    FiniteBao const& small() const noexcept {
      return small_;
    }
    FiniteBao const& big() const noexcept {
      return big_;
    }
    std::size_t alpha() const noexcept {
      return small_.dim();
    }
    std::size_t beta() const noexcept {
      return big_.dim();
    }
    std::vector<Element> const& embedding() const noexcept {
      return embedding_;
    }
    Element embed(Element p) const;
    bool    in_image(Element x) const;
    // Inverse of embed on the image.
    Element preimage(Element x) const;
    // tau on alpha extended by the identity to beta.
    Transformation lift(Transformation const& tau) const;

   private:
    FiniteBao            small_;
    FiniteBao            big_;
    std::vector<Element> embedding_;
  };

  // Cm of all alpha-tuples over {0..base-1} inside Cm of all beta-tuples,
  // X -> {y : (y_0..y_{alpha-1}) in X}. Full monoids.
  DilationPair square_dilation(std::size_t base, std::size_t alpha,
                               std::size_t beta, bool with_diagonals = true);

  // Sg(generators) of the small side inside Sg of its image on the big side.
  DilationPair sub_dilation(DilationPair const&         pair,
                            std::vector<Element> const& generators);

  // The set of admissible rho: permutations in big's monoid with
  // rho(sigma(alpha)) inside alpha and rho sigma|alpha in small's monoid,
  // in lexicographic order.
  std::vector<Transformation> admissible_rhos(DilationPair const&   pair,
                                              Transformation const& sigma);

  // c_k s_sigma p computed as s_(rho^-1) c_(rho k) s_(rho sigma|alpha) p,
  // with c dropped when k is outside sigma(alpha), for the least admissible
  // rho. Throws Error(map) unless sigma is one-to-one on alpha,
  // Error(index) for k >= beta or sigma outside the monoid,
  // Error(dimension_budget) when no rho is admissible.
  Element dilated_cylindrifier(DilationPair const& pair, std::size_t k,
                               Transformation const& sigma, Element p);

  struct CylinderVerification {
    Element     value;
    std::size_t admissible       = 0;  // rho values tried
    std::size_t presentations    = 0;  // (sigma', p') with equal s_sigma' p'
    bool        rho_agree        = true;
    bool        presentation_agree = true;
    bool        matches_big      = true;  // equals big's c_k s_sigma p
    std::string detail;

    bool ok() const noexcept {
      return rho_agree && presentation_agree && matches_big;
    }
  };

  // Recomputes the value for every admissible rho and every presentation
  // of s_sigma p.
  CylinderVerification verify_dilated_cylindrifier(
      DilationPair const& pair, std::size_t k, Transformation const& sigma,
      Element p);

  struct PairVerification {
    std::size_t elements      = 0;  // distinct s_sigma p values
    std::size_t presentations = 0;
    std::size_t evaluations   = 0;  // (presentation, rho, k) triples
    std::size_t disagreements = 0;
    std::string first_problem;
  };

  // Every k < beta, every sigma one-to-one on alpha, every p.
  PairVerification verify_dilation_pair(DilationPair const& pair);

  // For every tau in adm, j < alpha and x in the image with s_tau c_j x in
  // F, some m in beta \ alpha with tau(m) = m and s_tau s_[j/m] x in F.
  // Throws Error(properness) unless F is an ultrafilter of big.
  bool is_perfect_ultrafilter(DilationPair const&                pair,
                              std::vector<Transformation> const& adm,
                              Filter const&                      f);

  // g_prev plus -s_tau c_j x + s_tau s_[j/m] x. Throws Error(witness_index)
  // unless alpha <= m < beta, tau(m) = m and m lies outside every
  // dimension set of g_prev; Error(containment) unless x is in the image.
  std::vector<Element> witness_filter_step(DilationPair const&         pair,
                                           std::vector<Element> const& g_prev,
                                           Transformation const&       tau,
                                           std::size_t j, Element x,
                                           std::size_t m);

}  // namespace baode

#endif  // BAODE_DILATION_HPP_
