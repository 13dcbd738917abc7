#ifndef BAODE_BAO_HPP_
#define BAODE_BAO_HPP_

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "baode/boolean.hpp"
#include "baode/signature.hpp"
#include "baode/term.hpp"

namespace baode {

  // A finite Boolean algebra with cylindrifiers c_i (i < dim), substitutions
  // s_tau (tau in the signature's monoid) and optional diagonals d_ij.
  //
  // Every operator is additive and normal, so it is determined by its values
  // on atoms; those values are what is stored. Copies share storage.
  class FiniteBao {
   public:
    // cyl[i][a] = c_i(atom a); subst[k][a] = s_{tau_k}(atom a) with k the
    // index of tau_k in sig; diag[i * dim + j] = d_ij (empty when the
    // signature has no diagonals). Throws Error(validation) when a
    // substitution is not a Boolean endomorphism, s_id is not the identity,
    // or s_sigma s_tau != s_{sigma o tau}; Error(size) on shape mismatch.
    FiniteBao(FiniteBA ba, Signature sig,
              std::vector<std::vector<Element>> cyl,
              std::vector<std::vector<Element>> subst,
              std::vector<Element>              diag);

    // Same, from full operation tables indexed by element bitmask. Normality
    // and additivity are checked exhaustively (Error(validation)).
    static FiniteBao from_tables(FiniteBA ba, Signature sig,
                                 std::vector<std::vector<Element>> cyl,
                                 std::vector<std::vector<Element>> subst,
                                 std::vector<Element>              diag);

    FiniteBA const& ba() const noexcept {
      return data_->ba;
    }
    Signature const& sig() const noexcept {
      return data_->sig;
    }
    std::size_t atom_count() const noexcept {
      return data_->ba.atom_count();
    }
    std::size_t dim() const noexcept {
      return data_->sig.dim();
    }
    Element top() const noexcept {
      return data_->ba.top();
    }
    Element complement(Element x) const noexcept {
      return data_->ba.complement(x);
    }

    Element cyl(std::size_t i, Element x) const;
    // k is the index of the transformation in sig().
    Element subst(std::size_t k, Element x) const;
    Element subst(Transformation const& tau, Element x) const;
    Element diag(std::size_t i, std::size_t j) const;

    Element cyl_atom(std::size_t i, std::size_t atom) const {
      return data_->cyl[i][atom];
    }
    Element subst_atom(std::size_t k, std::size_t atom) const {
      return data_->subst[k][atom];
    }
    std::vector<std::vector<Element>> const& cyl_atoms() const noexcept {
      return data_->cyl;
    }
    std::vector<std::vector<Element>> const& subst_atoms() const noexcept {
      return data_->subst;
    }
    std::vector<Element> const& diagonals() const noexcept {
      return data_->diag;
    }

    // Same carrier, signature and operator values.
    friend bool operator==(FiniteBao const& a, FiniteBao const& b);

   private:
    struct Data {
      Data(FiniteBA b, Signature s) : ba(b), sig(std::move(s)) {}

      FiniteBA                          ba;
      Signature                         sig;
      std::vector<std::vector<Element>> cyl;
      std::vector<std::vector<Element>> subst;
      std::vector<Element>              diag;
      // Full tables, filled for small algebras only.
      std::vector<std::vector<Element>> cyl_table;
      std::vector<std::vector<Element>> subst_table;
    };
    std::shared_ptr<Data const> data_;
  };

  using Environment = std::map<std::string, Element>;

  // Throws Error(unbound_variable) or Error(index).
  Element eval_term(FiniteBao const& a, Term const& t, Environment const& env);

  struct CheckResult {
    bool        valid = true;
    Environment counterexample;  // set when !valid
    Element     lhs_value;
    Element     rhs_value;
  };

  // Exhaustive over all assignments. Assignments are visited in
  // lexicographic order (variables sorted by name, the first one most
  // significant, elements by bitmask), so the reported counterexample is
  // the least one. Throws Error(index) when the equation does not fit the
  // signature.
  CheckResult check_equation(FiniteBao const& a, Equation const& e);

  // Delta x = {i < dim : c_i x != x}, ascending.
  std::vector<std::size_t> dimension_set(FiniteBao const& a, Element x);

  // x when i == j, else c_i(d_ij . x). Throws Error(signature) without
  // diagonals, Error(index) out of range.
  Element subst_ij(FiniteBao const& a, std::size_t i, std::size_t j,
                   Element x);

  // -c_i(-x)
  Element dual_cyl(FiniteBao const& a, std::size_t i, Element x);

  // A Boolean homomorphism between the reducts of two algebras, given by the
  // images of the source atoms.
  class AlgebraMorphism {
   public:
    // Throws Error(morphism) unless the images are pairwise disjoint and
    // join to the target's top.
    AlgebraMorphism(FiniteBao source, FiniteBao target,
                    std::vector<Element> atom_images);

    static AlgebraMorphism identity(FiniteBao const& a);

    FiniteBao const& source() const noexcept {
      return source_;
    }
    FiniteBao const& target() const noexcept {
      return target_;
    }
    std::vector<Element> const& atom_images() const noexcept {
      return images_;
    }
    Element operator()(Element x) const;

    bool is_injective() const noexcept;
    // Preserves every operator and diagonal; signatures must match.
    bool is_homomorphism() const;

   private:
    FiniteBao            source_;
    FiniteBao            target_;
    std::vector<Element> images_;
  };

  // second o first
  AlgebraMorphism compose(AlgebraMorphism const& second,
                          AlgebraMorphism const& first);

  // The subalgebra generated by a set of elements: its atoms are the blocks
  // of a partition of the top; the inclusion is the second component.
  struct Subalgebra {
    FiniteBao            algebra;
    std::vector<Element> blocks;  // block t is the image of atom t

    bool    contains(Element x) const;
    // Element of the subalgebra, as an element of the ambient algebra.
    Element lift(Element x) const;
    // Inverse of lift; x must be contained.
    Element lower(Element x) const;
  };

  Subalgebra generated_subalgebra(FiniteBao const&            a,
                                  std::vector<Element> const& generators);

  // Atom bijection pi with pi carrying every operator and diagonal of a onto
  // those of b, found by backtracking; nullopt when none exists.
  std::optional<std::vector<std::size_t>> find_isomorphism(FiniteBao const& a,
                                                           FiniteBao const& b);

}  // namespace baode

#endif  // BAODE_BAO_HPP_
