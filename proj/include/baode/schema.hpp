#ifndef BAODE_SCHEMA_HPP_
#define BAODE_SCHEMA_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "baode/bao.hpp"
#include "baode/signature.hpp"
#include "baode/term.hpp"

namespace baode {

  struct SchemaEntry {
    Equation equation;
    // Hand classification carried by schema files; absent when generated.
    std::optional<bool> annotated_positive;
  };

  struct Schema {
    std::string              name;
    std::vector<SchemaEntry> entries;

    std::vector<Equation> equations() const;
  };

  // The default equation set for a signature:
  //   normality and additivity of every c_i and s_tau,
  //   s_id x = x and s_sigma s_tau x = s_(sigma o tau) x,
  //   c_i(c_i x . y) = c_i x . c_i y and c_i(-c_i x) = -c_i x,
  //   s_[i/j] x = c_i(d_ij . x) for i != j when diagonals are present,
  // and, for every spare index m with base_dim <= m < dim,
  //   c_i c_m x = c_m s_[i/m] c_m x          (i < base_dim)
  //   c_m s_tau x = s_tau c_m x               (tau^-1(m) = {m})
  // Transformations outside the monoid are skipped. base_dim defaults to
  // dim, which leaves no spare indices.
  Schema default_schema(Signature const&           sig,
                        std::optional<std::size_t> base_dim = std::nullopt);

  // Entries whose equation passes is_positive_equation.
  Schema positive_part(Schema const& s);

  struct SchemaCheck {
    std::string name;
    Equation    equation;
    CheckResult result;
  };

  // One check per entry, in schema order.
  std::vector<SchemaCheck> check_schema(FiniteBao const& a, Schema const& s);
  // Stops at the first failing entry.
  bool satisfies(FiniteBao const& a, Schema const& s);

}  // namespace baode

#endif  // BAODE_SCHEMA_HPP_
