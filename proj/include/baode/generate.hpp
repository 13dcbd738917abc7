#ifndef BAODE_GENERATE_HPP_
#define BAODE_GENERATE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "baode/amalgam.hpp"
#include "baode/bao.hpp"
#include "baode/frame.hpp"
#include "baode/schema.hpp"
#include "baode/signature.hpp"

namespace baode {

  // Seeded generator; draws are engine() % n so streams are reproducible
  // across standard libraries.
  class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::size_t below(std::size_t n) {
      return static_cast<std::size_t>(engine_() % n);
    }
    bool coin() {
      return (engine_() & 1u) != 0;
    }
    Element subset(std::size_t n) {
      return Element(static_cast<Element::bits_type>(
          engine_() & ((std::uint64_t(1) << n) - 1)));
    }
    template <typename T>
    T const& pick(std::vector<T> const& v) {
      return v[below(v.size())];
    }

   private:
    std::mt19937_64 engine_;
  };

  // One map per transformation of sig (indexed as in sig).
  using AntiAction = std::vector<std::vector<std::size_t>>;

  // Every family g of maps on n points with g_id = id and
  // g_(sigma o tau) = g_tau o g_sigma, in lexicographic order of the maps
  // assigned to a greedy generating set. Throws Error(size) past limit.
  std::vector<AntiAction> enumerate_anti_actions(std::size_t      n,
                                                 Signature const& sig,
                                                 std::size_t limit = 100000);

  // Uniform relations and diagonal sets with an action drawn from actions.
  Frame random_frame(Rng& rng, std::size_t n, Signature const& sig,
                     std::vector<AntiAction> const& actions);

  // The same algebra with atom i renamed perm[i].
  FiniteBao permute_atoms(FiniteBao const& a,
                          std::vector<std::size_t> const& perm);
  std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n);

  // A frame of the given size with a bounded morphism onto target: the
  // relations start as the full pullback of target's and lose random pairs
  // while the back condition survives; actions are drawn from those of
  // source_actions that commute with the map. nullopt when no action fits.
  std::optional<FrameMorphism> random_bounded_surjection(
      Rng& rng, Frame const& target, std::size_t source_size,
      std::vector<AntiAction> const& source_actions);

  // Toggles one random pair of one random T_i.
  Frame perturb_frame(Rng& rng, Frame const& f);

  // Frames on n points whose complex algebras satisfy schema, one per
  // isomorphism class. The search fixes an action and diagonals first,
  // then reads the rows forced by subst-diagonal entries and filters each
  // T_i by its cyl-meet entry before the final schema check.
  std::vector<Frame> enumerate_schema_frames(std::size_t      n,
                                             Signature const& sig,
                                             Schema const&    schema);

  // Every subalgebra of a, as generated subalgebras of single elements and
  // pairs, deduplicated by block partition.
  std::vector<Subalgebra> all_subalgebras(FiniteBao const& a);

  // Injective homomorphisms a -> b given by atom images.
  std::vector<AlgebraMorphism> all_embeddings(FiniteBao const& a,
                                              FiniteBao const& b);

  // Instances (A, B, C) with B and C drawn from algebras, A a subalgebra of
  // B included by f, and h running over every embedding of A into C whose
  // image is a subalgebra of C isomorphic to A. Subalgebras are grouped by
  // a canonical code over atom permutations (at most 6 atoms). Stops after
  // limit instances.
  std::vector<AmalgamationInstance> exhaustive_instances(
      std::vector<FiniteBao> const& algebras, Schema const& schema,
      std::size_t limit);

  // B and C drawn from algebras with their atoms shuffled, A a random
  // subalgebra of B, h a random embedding of A into C; retried until one
  // exists.
  AmalgamationInstance random_instance(Rng&                          rng,
                                       std::vector<FiniteBao> const& algebras,
                                       Schema const&                 schema);

}  // namespace baode

#endif  // BAODE_GENERATE_HPP_
