#ifndef BAODE_PROPERTY_HPP_
#define BAODE_PROPERTY_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "baode/bao.hpp"
#include "baode/dilation.hpp"
#include "baode/generate.hpp"
#include "baode/schema.hpp"
#include "baode/witness.hpp"

namespace baode {

  struct PropertyResult {
    std::string              property;
    std::size_t              trials   = 0;
    std::size_t              failures = 0;
    std::string              first_failure;
    std::vector<std::string> notes;  // informational, never affects passed()

    bool passed() const noexcept {
      return trials > 0 && failures == 0;
    }
  };

  struct CampaignItem {
    std::string property;
    std::size_t count = 0;
  };

  struct Campaign {
    std::string               name;
    std::vector<CampaignItem> items;
  };

  struct CampaignOptions {
    std::uint64_t seed           = 1;
    bool          verify_all_rho = false;
    std::size_t   max_atoms      = 3;  // atoms of generated algebras
    std::size_t   max_universe   = 4;  // points of generated frames
  };

  // Property names accepted in campaigns, in report order.
  std::vector<std::string> property_names();

  // Random frames with 1..max_points points over sig: At(Cm F) is F and
  // Cm(At A) is A (A = Cm F with shuffled atoms), both up to isomorphism.
  PropertyResult check_duality(Rng& rng, std::size_t count,
                               std::size_t max_points, Signature const& sig);

  // h is a homomorphism iff its dual map is a bounded morphism. Instances
  // are duals of bounded surjections, the same maps into perturbed
  // frames, and random Boolean homomorphisms, over signatures of
  // dimension 1 and 2.
  PropertyResult check_dual_morphisms(Rng& rng, std::size_t count,
                                      std::size_t max_atoms);

  // Two bounded surjections into one target: INSEP is a zigzag product
  // and the square commutes.
  PropertyResult check_insep(Rng& rng, std::size_t count,
                             std::size_t max_points);

  // Schema-valid complex algebras of frames with at most max_points points
  // for the full monoid of dimension dim with diagonals, under the
  // positive part of the default schema.
  std::vector<FiniteBao> schema_algebras(std::size_t dim,
                                         std::size_t max_points,
                                         Schema const& schema);

  // superamalgamate followed by verify_supap on every instance.
  PropertyResult check_supap(std::vector<AmalgamationInstance> const& instances,
                             std::string const&                       label);

  // Square dilations (base^beta <= 20 points, alpha <= 2, beta <= 4) and
  // sub-dilations generated by random elements; with verify_all_rho every
  // admissible rho and presentation is compared, otherwise only the least
  // rho against the dilation's own cylindrifier.
  std::vector<DilationPair> dilation_corpus(Rng& rng, std::size_t count);
  PropertyResult check_dilations(std::vector<DilationPair> const& pairs,
                                 bool verify_all_rho);

  // Algebras with at most max_atoms atoms satisfying the full default
  // schema: enumerated frames of dimension 1 and 2 plus square algebras.
  std::vector<FiniteBao> distributivity_corpus(std::size_t max_atoms);

  // For every index m: c_m additive, the dual of c_m additive, c_m(-c_m x)
  // = -c_m x, exhaustively. One result per law; the dual law also reports
  // the two multiplicative forms it is often confused with as notes.
  std::vector<PropertyResult> check_distributivity(
      std::vector<FiniteBao> const& algebras);

  struct WitnessCase {
    std::string  label;
    DilationPair pair;
    WitnessInput input;
  };

  std::vector<WitnessCase> witness_corpus();

  // H improper exactly when an interpolant exists; every elimination
  // claim holds; when H is proper the ultrafilters trace H* on the common
  // subalgebra.
  PropertyResult check_witness(std::vector<WitnessCase> const& cases);

  // Hand annotation against is_positive_equation, entry by entry.
  PropertyResult check_positivity(Schema const& annotated);

  std::vector<PropertyResult> run_campaign(Campaign const&        campaign,
                                           CampaignOptions const& options);

}  // namespace baode

#endif  // BAODE_PROPERTY_HPP_
