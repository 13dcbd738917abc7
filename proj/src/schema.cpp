#include "baode/schema.hpp"

#include "baode/error.hpp"

namespace baode {

  std::vector<Equation> Schema::equations() const {
    std::vector<Equation> out;
    for (auto const& e : entries) {
      out.push_back(e.equation);
    }
    return out;
  }

  namespace {

    std::string idx(std::size_t i) {
      return std::to_string(i);
    }

    std::string tr(Transformation const& t) {
      return to_string(t);
    }

  }  // namespace

  Schema default_schema(Signature const&           sig,
                        std::optional<std::size_t> base_dim) {
    auto const dim  = sig.dim();
    auto const base = base_dim.value_or(dim);
    if (base < 1 || base > dim) {
      fail(ErrorKind::index, "base dimension " + idx(base)
                                 + " outside [1, " + idx(dim) + "]");
    }
    Schema out;
    out.name = "default";
    auto add = [&](std::string name, std::string lhs, std::string rhs) {
      out.entries.push_back(
          {parse_equation(lhs, rhs, std::move(name)), std::nullopt});
    };

    for (std::size_t i = 0; i < dim; ++i) {
      add("cyl-normal-" + idx(i), "(c " + idx(i) + " 0)", "0");
      add("cyl-additive-" + idx(i), "(c " + idx(i) + " (+ x y))",
          "(+ (c " + idx(i) + " x) (c " + idx(i) + " y))");
    }
    for (auto const& t : sig.transformations()) {
      add("subst-normal-" + tr(t), "(s " + tr(t) + " 0)", "0");
      add("subst-additive-" + tr(t), "(s " + tr(t) + " (+ x y))",
          "(+ (s " + tr(t) + " x) (s " + tr(t) + " y))");
    }
    add("subst-identity", "(s " + tr(Transformation::identity(dim)) + " x)",
        "x");
    for (auto const& s : sig.transformations()) {
      for (auto const& t : sig.transformations()) {
        add("subst-monoid-" + tr(s) + "-" + tr(t),
            "(s " + tr(s) + " (s " + tr(t) + " x))",
            "(s " + tr(compose(s, t)) + " x)");
      }
    }
    for (std::size_t i = 0; i < dim; ++i) {
      auto c = "(c " + idx(i) + " ";
      add("cyl-meet-" + idx(i), c + "(* " + c + "x) y))",
          "(* " + c + "x) " + c + "y))");
      add("cyl-complement-" + idx(i), c + "(- " + c + "x)))",
          "(- " + c + "x))");
    }
    if (sig.with_diagonals()) {
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
          auto r = Transformation::replacement(dim, i, j);
          if (i == j || !sig.index_of(r)) {
            continue;
          }
          add("subst-diagonal-" + idx(i) + "-" + idx(j),
              "(s " + tr(r) + " x)",
              "(c " + idx(i) + " (* (d " + idx(i) + " " + idx(j) + ") x))");
        }
      }
    }
    for (std::size_t m = base; m < dim; ++m) {
      for (std::size_t i = 0; i < base; ++i) {
        auto r = Transformation::replacement(dim, i, m);
        if (!sig.index_of(r)) {
          continue;
        }
        auto cm = "(c " + idx(m) + " x)";
        add("cyl-spare-" + idx(i) + "-" + idx(m),
            "(c " + idx(i) + " " + cm + ")",
            "(c " + idx(m) + " (s " + tr(r) + " " + cm + "))");
      }
      for (auto const& t : sig.transformations()) {
        bool only_m = true;
        for (std::size_t k = 0; k < dim; ++k) {
          if ((t(k) == m) != (k == m)) {
            only_m = false;
          }
        }
        if (!only_m) {
          continue;
        }
        add("cyl-subst-commute-" + idx(m) + "-" + tr(t),
            "(c " + idx(m) + " (s " + tr(t) + " x))",
            "(s " + tr(t) + " (c " + idx(m) + " x))");
      }
    }
    return out;
  }

  Schema positive_part(Schema const& s) {
    Schema out;
    out.name = s.name + "-positive";
    for (auto const& e : s.entries) {
      if (is_positive_equation(e.equation)) {
        out.entries.push_back(e);
      }
    }
    return out;
  }

  std::vector<SchemaCheck> check_schema(FiniteBao const& a, Schema const& s) {
    std::vector<SchemaCheck> out;
    for (auto const& e : s.entries) {
      out.push_back(
          {e.equation.name, e.equation, check_equation(a, e.equation)});
    }
    return out;
  }

  bool satisfies(FiniteBao const& a, Schema const& s) {
    for (auto const& e : s.entries) {
      if (!check_equation(a, e.equation).valid) {
        return false;
      }
    }
    return true;
  }

}  // namespace baode
