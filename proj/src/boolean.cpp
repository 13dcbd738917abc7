#include "baode/boolean.hpp"

#include <algorithm>
#include <sstream>

#include "baode/error.hpp"

namespace baode {

  char const* to_string(ErrorKind kind) noexcept {
    switch (kind) {
      case ErrorKind::size:
        return "size";
      case ErrorKind::properness:
        return "properness";
      case ErrorKind::signature:
        return "signature";
      case ErrorKind::index:
        return "index";
      case ErrorKind::unbound_variable:
        return "unbound-variable";
      case ErrorKind::morphism:
        return "morphism";
      case ErrorKind::containment:
        return "containment";
      case ErrorKind::closure:
        return "closure";
      case ErrorKind::map:
        return "map";
      case ErrorKind::witness_index:
        return "witness-index";
      case ErrorKind::dimension_budget:
        return "dimension-budget";
      case ErrorKind::parse:
        return "parse";
      case ErrorKind::io:
        return "io";
      case ErrorKind::validation:
        return "validation";
    }
    return "unknown";
  }

  std::vector<std::size_t> atoms_of(Element x) {
    std::vector<std::size_t> out;
    out.reserve(x.popcount());
    for_each_atom(x, [&out](std::size_t i) { out.push_back(i); });
    return out;
  }

  Element element_from_atoms(std::vector<std::size_t> const& atoms) {
    Element x;
    for (auto i : atoms) {
      if (i >= FiniteBA::max_atoms) {
        fail(ErrorKind::index, "atom index " + std::to_string(i)
                                   + " exceeds the supported maximum");
      }
      x |= Element::atom(i);
    }
    return x;
  }

  std::string to_string(Element x) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for_each_atom(x, [&](std::size_t i) {
      os << (first ? "" : ",") << i;
      first = false;
    });
    os << '}';
    return os.str();
  }

  FiniteBA::FiniteBA(std::size_t atom_count) : atom_count_(atom_count) {
    if (atom_count < 1 || atom_count > max_atoms) {
      fail(ErrorKind::size,
           "atom count " + std::to_string(atom_count) + " outside [1, "
               + std::to_string(max_atoms) + "]");
    }
    top_ = Element(static_cast<Element::bits_type>(
        (std::uint64_t(1) << atom_count) - 1));
  }

  std::vector<Element> FiniteBA::elements() const {
    std::vector<Element> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
      out.push_back(element(i));
    }
    return out;
  }

  Filter::Filter(FiniteBA const& base, Element generator)
      : base_(base), generator_(generator) {
    if (!base.contains(generator)) {
      fail(ErrorKind::index,
           "filter generator " + to_string(generator) + " not in algebra");
    }
  }

  std::vector<Element> Filter::members() const {
    std::vector<Element> out;
    // Members are generator | s for every subset s of the free atoms.
    auto free = base_.complement(generator_).bits();
    Element::bits_type s = 0;
    do {
      out.push_back(generator_ | Element(s));
      s = (s - free) & free;
    } while (s != 0);
    std::sort(out.begin(), out.end());
    return out;
  }

  Filter generated_filter(FiniteBA const&             base,
                          std::vector<Element> const& y) {
    Element meet = base.top();
    for (auto x : y) {
      if (!base.contains(x)) {
        fail(ErrorKind::index,
             "generator " + to_string(x) + " not in algebra");
      }
      meet &= x;
    }
    return Filter(base, meet);
  }

  bool is_proper(Filter const& f) {
    return f.is_proper();
  }

  Filter extend_to_ultrafilter(FiniteBA const& base, Filter const& f) {
    if (!f.is_proper()) {
      fail(ErrorKind::properness, "cannot extend an improper filter");
    }
    Element g = f.generator();
    for (std::size_t i = 0; i < base.size() && g.popcount() > 1; ++i) {
      Element x = base.element(i);
      Element nx = base.complement(x);
      if (g.subset_of(x) || g.subset_of(nx)) {
        continue;
      }
      // Undecided: x meets g and so does its complement.
      g = (g & x).empty() ? g & nx : g & x;
    }
    return Filter(base, g);
  }

  std::vector<Filter> enumerate_ultrafilters(FiniteBA const& base) {
    std::vector<Filter> out;
    out.reserve(base.atom_count());
    for (std::size_t i = 0; i < base.atom_count(); ++i) {
      out.emplace_back(base, Element::atom(i));
    }
    return out;
  }

}  // namespace baode
