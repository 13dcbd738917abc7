#ifndef BAODE_SIGNATURE_HPP_
#define BAODE_SIGNATURE_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace baode {

  // A map tau : n -> n, stored as its value list (tau(0), ..., tau(n-1)).
  class Transformation {
   public:
    Transformation() = default;
    explicit Transformation(std::vector<std::size_t> values);
    Transformation(std::initializer_list<std::size_t> values)
        : Transformation(std::vector<std::size_t>(values)) {}

    static Transformation identity(std::size_t n);
    // [i/j]: sends i to j and fixes everything else.
    static Transformation replacement(std::size_t n, std::size_t i,
                                      std::size_t j);
    static Transformation transposition(std::size_t n, std::size_t i,
                                        std::size_t j);

    std::size_t size() const noexcept {
      return values_.size();
    }
    std::size_t operator()(std::size_t i) const {
      return values_[i];
    }
    std::vector<std::size_t> const& values() const noexcept {
      return values_;
    }

    bool is_identity() const noexcept;
    bool is_permutation() const noexcept;
    Transformation inverse() const;  // permutations only

    // Points moved by the map together with their images.
    std::vector<std::size_t> support() const;
    std::vector<std::size_t> image() const;

    friend bool operator==(Transformation const&,
                           Transformation const&) = default;
    friend auto operator<=>(Transformation const&,
                            Transformation const&) = default;

   private:
    std::vector<std::size_t> values_;
  };

  // (sigma o tau)(i) = sigma(tau(i))
  Transformation compose(Transformation const& sigma,
                         Transformation const& tau);
  std::string    to_string(Transformation const& t);

  // All n^n maps n -> n in lexicographic order of their value lists.
  std::vector<Transformation> all_transformations(std::size_t n);
  std::vector<Transformation> all_permutations(std::size_t n);

  class Signature {
   public:
    static constexpr std::size_t max_dim = 8;

    // Throws Error(signature) unless the list contains the identity and is
    // closed under composition, with every map of size dim.
    Signature(std::size_t dim, std::vector<Transformation> transformations,
              bool with_diagonals);

    // The full monoid of all dim^dim maps.
    static Signature full(std::size_t dim, bool with_diagonals);
    // Only the identity substitution.
    static Signature identity_only(std::size_t dim, bool with_diagonals);

    std::size_t dim() const noexcept {
      return data_->dim;
    }
    bool with_diagonals() const noexcept {
      return data_->with_diagonals;
    }
    std::vector<Transformation> const& transformations() const noexcept {
      return data_->transformations;
    }
    std::size_t transformation_count() const noexcept {
      return data_->transformations.size();
    }
    Transformation const& transformation(std::size_t k) const {
      return data_->transformations[k];
    }
    std::optional<std::size_t> index_of(Transformation const& t) const;
    std::size_t                identity_index() const noexcept {
      return data_->identity_index;
    }
    // Index of sigma o tau; both given as indices.
    std::size_t compose_index(std::size_t sigma, std::size_t tau) const {
      return data_->compose_table[sigma * transformation_count() + tau];
    }
    bool is_full_monoid() const noexcept;

    friend bool operator==(Signature const& a, Signature const& b) {
      return a.data_ == b.data_
             || (a.dim() == b.dim()
                 && a.with_diagonals() == b.with_diagonals()
                 && a.transformations() == b.transformations());
    }

   private:
    struct Data {
      std::size_t                           dim;
      std::vector<Transformation>           transformations;
      bool                                  with_diagonals;
      std::map<Transformation, std::size_t> index;
      std::vector<std::size_t>              compose_table;
      std::size_t                           identity_index = 0;
    };
    std::shared_ptr<Data const> data_;
  };

}  // namespace baode

#endif  // BAODE_SIGNATURE_HPP_
