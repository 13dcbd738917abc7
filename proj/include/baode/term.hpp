#ifndef BAODE_TERM_HPP_
#define BAODE_TERM_HPP_

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "baode/signature.hpp"

namespace baode {

  // Abstract syntax of the operator language. Terms are written as prefix
  // S-expressions:
  //
  //   x | 0 | 1 | (+ t u) | (* t u) | (- t) | (c i t) | (s [v0 v1 ...] t)
  //   | (d i j)
  //
  // where [v0 v1 ...] is the value list of a transformation.
  class Term {
   public:
    enum class Op { var, zero, one, join, meet, complement, cyl, subst, diag };

    static Term var(std::string name);
    static Term zero();
    static Term one();
    static Term join(Term a, Term b);
    static Term meet(Term a, Term b);
    static Term complement(Term a);
    static Term cyl(std::size_t i, Term a);
    static Term subst(Transformation tau, Term a);
    static Term diag(std::size_t i, std::size_t j);

    Op op() const noexcept {
      return op_;
    }
    std::string const& name() const noexcept {
      return name_;
    }
    std::size_t index() const noexcept {
      return i_;
    }
    std::size_t second_index() const noexcept {
      return j_;
    }
    Transformation const& transformation() const noexcept {
      return tau_;
    }
    std::vector<Term> const& args() const noexcept {
      return args_;
    }

    std::set<std::string> variables() const;
    bool                  contains_complement() const;

    friend bool operator==(Term const&, Term const&) = default;

   private:
    Op                op_ = Op::zero;
    std::string       name_;
    std::size_t       i_ = 0;
    std::size_t       j_ = 0;
    Transformation    tau_;
    std::vector<Term> args_;
  };

  std::string to_string(Term const& t);

  // Throws Error(parse) with the byte offset of the problem.
  Term parse_term(std::string_view text);

  struct Equation {
    Term        lhs;
    Term        rhs;
    std::string name;

    std::set<std::string> variables() const;

    friend bool operator==(Equation const& a, Equation const& b) {
      return a.lhs == b.lhs && a.rhs == b.rhs;
    }
  };

  Equation    parse_equation(std::string_view lhs, std::string_view rhs,
                             std::string name = "");
  std::string to_string(Equation const& e);

  // True iff neither side uses the complement symbol.
  bool is_positive_equation(Equation const& e);

  // Throws Error(index) when an index or transformation does not belong to
  // the signature, or a diagonal is used without diagonals.
  void check_term_signature(Term const& t, Signature const& sig);

}  // namespace baode

#endif  // BAODE_TERM_HPP_
