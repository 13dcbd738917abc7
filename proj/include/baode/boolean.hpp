#ifndef BAODE_BOOLEAN_HPP_
#define BAODE_BOOLEAN_HPP_

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace baode {

  // An element of a finite powerset Boolean algebra: the set of atoms below
  // it, stored as a bitmask (bit i set iff atom i is below the element).
  class Element {
   public:
    using bits_type = std::uint32_t;

    constexpr Element() noexcept = default;
    constexpr explicit Element(bits_type bits) noexcept : bits_(bits) {}

    static constexpr Element atom(std::size_t i) noexcept {
      return Element(bits_type(1) << i);
    }

    constexpr bits_type bits() const noexcept {
      return bits_;
    }
    constexpr bool empty() const noexcept {
      return bits_ == 0;
    }
    constexpr bool contains(std::size_t atom_index) const noexcept {
      return (bits_ >> atom_index) & 1u;
    }
    constexpr std::size_t popcount() const noexcept {
      return static_cast<std::size_t>(std::popcount(bits_));
    }
    constexpr bool subset_of(Element other) const noexcept {
      return (bits_ & ~other.bits_) == 0;
    }

    friend constexpr Element operator|(Element a, Element b) noexcept {
      return Element(a.bits_ | b.bits_);
    }
    friend constexpr Element operator&(Element a, Element b) noexcept {
      return Element(a.bits_ & b.bits_);
    }
    constexpr Element& operator|=(Element b) noexcept {
      bits_ |= b.bits_;
      return *this;
    }
    constexpr Element& operator&=(Element b) noexcept {
      bits_ &= b.bits_;
      return *this;
    }

    friend constexpr bool operator==(Element, Element) noexcept = default;
    friend constexpr auto operator<=>(Element, Element) noexcept = default;

   private:
    bits_type bits_ = 0;
  };

  // Atom indices of an element, ascending.
  std::vector<std::size_t> atoms_of(Element x);
  Element element_from_atoms(std::vector<std::size_t> const& atoms);
  std::string to_string(Element x);

  // Calls f(atom_index) for every atom below x, ascending.
  template <typename F>
  void for_each_atom(Element x, F&& f) {
    auto bits = x.bits();
    while (bits != 0) {
      auto i = static_cast<std::size_t>(std::countr_zero(bits));
      f(i);
      bits &= bits - 1;
    }
  }

  class FiniteBA {
   public:
    static constexpr std::size_t max_atoms = 20;

    // Throws Error(size) unless 1 <= atom_count <= max_atoms.
    explicit FiniteBA(std::size_t atom_count);

    std::size_t atom_count() const noexcept {
      return atom_count_;
    }
    std::size_t size() const noexcept {
      return std::size_t(1) << atom_count_;
    }

    Element zero() const noexcept {
      return Element();
    }
    Element top() const noexcept {
      return top_;
    }
    Element join(Element a, Element b) const noexcept {
      return a | b;
    }
    Element meet(Element a, Element b) const noexcept {
      return a & b;
    }
    Element complement(Element a) const noexcept {
      return Element(~a.bits() & top_.bits());
    }
    bool leq(Element a, Element b) const noexcept {
      return a.subset_of(b);
    }
    bool contains(Element a) const noexcept {
      return a.subset_of(top_);
    }
    // Element with index i in the canonical order (bitmask value).
    Element element(std::size_t i) const noexcept {
      return Element(static_cast<Element::bits_type>(i));
    }
    std::vector<Element> elements() const;

    friend bool operator==(FiniteBA const&, FiniteBA const&) = default;

   private:
    std::size_t atom_count_;
    Element     top_;
  };

  inline FiniteBA mk_finite_ba(std::size_t atom_count) {
    return FiniteBA(atom_count);
  }

  // A Boolean filter of a finite algebra. Every filter of a finite Boolean
  // algebra is principal, so it is stored as the meet of its members; the
  // filter is improper exactly when that meet is 0.
  class Filter {
   public:
    Filter(FiniteBA const& base, Element generator);

    static Filter principal(FiniteBA const& base, Element generator) {
      return Filter(base, generator);
    }

    FiniteBA const& base() const noexcept {
      return base_;
    }
    Element generator() const noexcept {
      return generator_;
    }
    bool contains(Element x) const noexcept {
      return generator_.subset_of(x);
    }
    bool is_proper() const noexcept {
      return !generator_.empty();
    }
    // An ultrafilter of a finite algebra is principal on an atom.
    bool is_ultra() const noexcept {
      return generator_.popcount() == 1;
    }
    std::size_t size() const noexcept {
      return std::size_t(1)
             << (base_.atom_count() - generator_.popcount());
    }
    std::vector<Element> members() const;

    friend bool operator==(Filter const&, Filter const&) = default;

   private:
    FiniteBA base_;
    Element  generator_;
  };

  Filter generated_filter(FiniteBA const& base, std::vector<Element> const& y);
  bool   is_proper(Filter const& f);

  // Deterministic extension: elements are visited in canonical order and
  // each undecided x is added when that keeps the filter proper, otherwise
  // its complement is added. Throws Error(properness) on an improper input.
  Filter extend_to_ultrafilter(FiniteBA const& base, Filter const& f);

  // One ultrafilter per atom, in atom order.
  std::vector<Filter> enumerate_ultrafilters(FiniteBA const& base);

}  // namespace baode

#endif  // BAODE_BOOLEAN_HPP_
