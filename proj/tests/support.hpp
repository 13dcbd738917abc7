#ifndef BAODE_TESTS_SUPPORT_HPP_
#define BAODE_TESTS_SUPPORT_HPP_

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "baode/bao.hpp"
#include "baode/error.hpp"
#include "baode/frame.hpp"

namespace baode::testing {

  using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

  // The kind of the Error thrown by f, or nullopt when f returns normally.
  template <typename F>
  std::optional<ErrorKind> error_kind(F&& f) {
    try {
      f();
    } catch (Error const& e) {
      return e.kind();
    }
    return std::nullopt;
  }

  // A frame with only the identity substitution and no diagonals.
  inline Frame plain_frame(std::size_t n, std::vector<Pairs> const& t) {
    auto                  sig = Signature::identity_only(t.size(), false);
    std::vector<Relation> rels;
    for (auto const& p : t) {
      rels.push_back(relation_from_pairs(n, p));
    }
    Pairs id;
    for (std::size_t x = 0; x < n; ++x) {
      id.emplace_back(x, x);
    }
    return Frame(n, sig, rels, {relation_from_pairs(n, id)}, {});
  }

  inline Element set_of(std::initializer_list<std::size_t> atoms) {
    return element_from_atoms(std::vector<std::size_t>(atoms));
  }

  // The algebra on n atoms with every operator the identity.
  inline FiniteBao trivial_algebra(std::size_t n, std::size_t dim = 1) {
    std::vector<Element> id;
    for (std::size_t a = 0; a < n; ++a) {
      id.push_back(Element::atom(a));
    }
    auto sig = Signature::identity_only(dim, false);
    return FiniteBao(FiniteBA(n), sig, std::vector(dim, id), {id}, {});
  }

  // c_i(X) read straight off the relation, independent of the library's
  // operator tables.
  inline Element image_under(Frame const& f, Relation const& r, Element x) {
    std::size_t bits = 0;
    for (std::size_t t = 0; t < f.size(); ++t) {
      if (!x.contains(t)) {
        continue;
      }
      for (std::size_t s = 0; s < f.size(); ++s) {
        if (r[t].contains(s)) {
          bits |= std::size_t(1) << s;
        }
      }
    }
    return Element(static_cast<Element::bits_type>(bits));
  }

}  // namespace baode::testing

#endif  // BAODE_TESTS_SUPPORT_HPP_
