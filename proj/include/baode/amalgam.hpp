#ifndef BAODE_AMALGAM_HPP_
#define BAODE_AMALGAM_HPP_

#include <optional>
#include <string>
#include <vector>

#include "baode/bao.hpp"
#include "baode/frame.hpp"
#include "baode/schema.hpp"

namespace baode {

  // Monomorphisms f : A -> B and h : A -> C between algebras satisfying a
  // schema.
  struct AmalgamationInstance {
    FiniteBao       base;
    FiniteBao       left;
    FiniteBao       right;
    AlgebraMorphism f;
    AlgebraMorphism h;
    Schema          schema;
  };

  // Throws Error(morphism) when f or h is not an injective homomorphism
  // between the named algebras and Error(validation) when an algebra fails
  // the schema.
  void validate_instance(AmalgamationInstance const& inst);

  struct CheckLine {
    std::string name;
    bool        passed = false;
    std::string detail;
  };

  struct FailingPair {
    Element b;
    Element c;
    // The least a with b <= f(a); h(a) is not below c.
    Element least_cover;
  };

  struct SupapReport {
    std::vector<CheckLine>   checks;
    std::vector<FailingPair> failures;
    std::size_t              pairs_checked = 0;
    // g[B] meets k[C] only inside g[f[A]]; informational.
    bool strong_amalgamation = false;

    bool passed() const;
  };

  struct SupapCertificate {
    FiniteBao       amalgam;
    AlgebraMorphism g;
    AlgebraMorphism k;
    InsepResult     frame;
    SupapReport     report;
  };

  // D = Cm(INSEP(f_+, h_+)); g(b) = {(x, y) : x <= b}, k(c) = {(x, y) :
  // y <= c}. The returned report is verify_supap's.
  SupapCertificate superamalgamate(AmalgamationInstance const& inst);

  // Recomputes every check from scratch. Schema failures of D are report
  // content, not errors.
  SupapReport verify_supap(AmalgamationInstance const& inst,
                           SupapCertificate const&     cert);

  // The least a in A with b <= f(a) and h(a) <= c.
  std::optional<Element> find_interpolant(AmalgamationInstance const& inst,
                                          Element b, Element c);

}  // namespace baode

#endif  // BAODE_AMALGAM_HPP_
