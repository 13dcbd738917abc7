#ifndef BAODE_WITNESS_HPP_
#define BAODE_WITNESS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "baode/bao.hpp"
#include "baode/boolean.hpp"
#include "baode/dilation.hpp"
#include "baode/signature.hpp"

namespace baode {

  // (tau, k, x): asks for a fresh u with the implication
  // s_tau c_k x -> s_tau s^k_u x, where s^k_u x = c_k(d_ku . x).
  struct WitnessTriple {
    Transformation tau;
    std::size_t    k = 0;
    Element        x;  // element of the big algebra
  };

  struct WitnessInput {
    std::vector<Element>       x1;  // generators on the small side
    std::vector<Element>       x2;
    Element                    a;   // in Sg(x1), small side
    Element                    c;   // in Sg(x2), small side
    std::vector<WitnessTriple> left;   // x in Sg(embedded x1)
    std::vector<WitnessTriple> right;  // x in Sg(embedded x2)
  };

  struct WitnessClaim {
    std::string name;
    bool        holds = false;
  };

  struct WitnessSystem {
    std::vector<std::size_t> u;  // fresh index per left triple
    std::vector<std::size_t> v;  // fresh index per right triple
    std::vector<Element>     z;  // -c_k x + s^k_u x per left triple
    std::vector<Element>     t;  // same for right triples with v
    std::vector<Element>     y1;  // a, then the left implications
    std::vector<Element>     y2;  // -c, then the right implications
    Subalgebra               sg1;     // Sg of embedded x1 in big
    Subalgebra               sg2;     // Sg of embedded x2 in big
    Subalgebra               common;  // Sg of embedded (x1 and x2) in big
    Filter                   h1;      // in sg1
    Filter                   h2;      // in sg2
    Element                  h1_trace;  // generator of h1 within common
    Element                  h2_trace;
    Filter                   h;         // in common
    std::optional<Filter>    h_star;    // ultrafilter of common over h
    std::optional<Filter>    f1;        // ultrafilter of sg1
    std::optional<Filter>    f2;        // ultrafilter of sg2
    bool                     traces_agree = false;  // f1, f2 meet common in h_star
    std::vector<WitnessClaim> claims;
    // Interpolant of (a, c) in Sg(x1 and x2) on the small side.
    std::optional<Element> interpolant;

    bool h_proper() const noexcept {
      return h.is_proper();
    }
    bool claims_hold() const;
  };

  // Fresh indices are chosen in the order u_0, v_0, u_1, v_1, ...; each is
  // the least index of big outside alpha, the dimension sets of a, c and
  // every x of the triples up to the current position, the supports of
  // their transformations, their k values and every earlier fresh index.
  // Throws Error(containment) when a, c or some x lies outside its side,
  // Error(index) for a bad k or tau, Error(dimension_budget) when no fresh
  // index is left.
  WitnessSystem build_witness_system(DilationPair const& pair,
                                     WitnessInput const& in);

  // The interpolation problem behind a witness system: the least element of
  // Sg(x1 and x2) above a, accepted iff it lies below c.
  std::optional<Element> small_interpolant(DilationPair const&         pair,
                                           std::vector<Element> const& x1,
                                           std::vector<Element> const& x2,
                                           Element a, Element c);

}  // namespace baode

#endif  // BAODE_WITNESS_HPP_
