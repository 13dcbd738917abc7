#include "baode/signature.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

#include "baode/error.hpp"

namespace baode {

  Transformation::Transformation(std::vector<std::size_t> values)
      : values_(std::move(values)) {
    for (auto v : values_) {
      if (v >= values_.size()) {
        fail(ErrorKind::map, "transformation value " + std::to_string(v)
                                 + " outside its domain of size "
                                 + std::to_string(values_.size()));
      }
    }
  }

  Transformation Transformation::identity(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return Transformation(std::move(v));
  }

  Transformation Transformation::replacement(std::size_t n, std::size_t i,
                                             std::size_t j) {
    auto t = identity(n);
    t.values_.at(i) = j;
    if (j >= n) {
      fail(ErrorKind::index, "replacement target out of range");
    }
    return t;
  }

  Transformation Transformation::transposition(std::size_t n, std::size_t i,
                                               std::size_t j) {
    auto t = identity(n);
    std::swap(t.values_.at(i), t.values_.at(j));
    return t;
  }

  bool Transformation::is_identity() const noexcept {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (values_[i] != i) {
        return false;
      }
    }
    return true;
  }

  bool Transformation::is_permutation() const noexcept {
    std::vector<bool> seen(values_.size(), false);
    for (auto v : values_) {
      if (seen[v]) {
        return false;
      }
      seen[v] = true;
    }
    return true;
  }

  Transformation Transformation::inverse() const {
    if (!is_permutation()) {
      fail(ErrorKind::map, "only permutations have inverses: "
                               + to_string(*this));
    }
    std::vector<std::size_t> inv(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) {
      inv[values_[i]] = i;
    }
    return Transformation(std::move(inv));
  }

  std::vector<std::size_t> Transformation::support() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (values_[i] != i) {
        out.push_back(i);
        out.push_back(values_[i]);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<std::size_t> Transformation::image() const {
    auto out = values_;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  Transformation compose(Transformation const& sigma,
                         Transformation const& tau) {
    if (sigma.size() != tau.size()) {
      fail(ErrorKind::map, "composing transformations of different sizes");
    }
    std::vector<std::size_t> v(tau.size());
    for (std::size_t i = 0; i < tau.size(); ++i) {
      v[i] = sigma(tau(i));
    }
    return Transformation(std::move(v));
  }

  std::string to_string(Transformation const& t) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < t.size(); ++i) {
      os << (i == 0 ? "" : " ") << t(i);
    }
    os << ']';
    return os.str();
  }

  std::vector<Transformation> all_transformations(std::size_t n) {
    std::vector<Transformation> out;
    std::vector<std::size_t>    v(n, 0);
    while (true) {
      out.emplace_back(v);
      std::size_t k = n;
      while (k > 0 && ++v[k - 1] == n) {
        v[k - 1] = 0;
        --k;
      }
      if (k == 0) {
        return out;
      }
    }
  }

  std::vector<Transformation> all_permutations(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    std::vector<Transformation> out;
    do {
      out.emplace_back(v);
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
  }

  Signature::Signature(std::size_t                 dim,
                       std::vector<Transformation> transformations,
                       bool                        with_diagonals) {
    if (dim < 1 || dim > max_dim) {
      fail(ErrorKind::signature, "dimension " + std::to_string(dim)
                                     + " outside [1, "
                                     + std::to_string(max_dim) + "]");
    }
    auto data             = std::make_shared<Data>();
    data->dim             = dim;
    data->transformations = std::move(transformations);
    data->with_diagonals  = with_diagonals;
    auto const& ts        = data->transformations;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      if (ts[k].size() != dim) {
        fail(ErrorKind::signature,
             "transformation " + to_string(ts[k]) + " has wrong size");
      }
      if (!data->index.emplace(ts[k], k).second) {
        fail(ErrorKind::signature,
             "duplicate transformation " + to_string(ts[k]));
      }
    }
    auto id = data->index.find(Transformation::identity(dim));
    if (id == data->index.end()) {
      fail(ErrorKind::signature, "transformation list lacks the identity");
    }
    data->identity_index = id->second;
    auto const n         = ts.size();
    data->compose_table.resize(n * n);
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t t = 0; t < n; ++t) {
        auto c  = compose(ts[s], ts[t]);
        auto it = data->index.find(c);
        if (it == data->index.end()) {
          fail(ErrorKind::signature,
               "transformation list not closed under composition: "
                   + to_string(ts[s]) + " o " + to_string(ts[t]));
        }
        data->compose_table[s * n + t] = it->second;
      }
    }
    data_ = std::move(data);
  }

  Signature Signature::full(std::size_t dim, bool with_diagonals) {
    if (dim < 1 || dim > 4) {
      fail(ErrorKind::size, "full monoid only enumerated for dim <= 4");
    }
    // Composition tables for dim 4 are 65536 entries; build each once.
    static std::mutex                              mutex;
    static std::map<std::pair<std::size_t, bool>, Signature> cache;
    std::lock_guard<std::mutex>                    lock(mutex);
    auto key = std::make_pair(dim, with_diagonals);
    auto it  = cache.find(key);
    if (it == cache.end()) {
      it = cache
               .emplace(key, Signature(dim, all_transformations(dim),
                                       with_diagonals))
               .first;
    }
    return it->second;
  }

  Signature Signature::identity_only(std::size_t dim, bool with_diagonals) {
    return Signature(dim, {Transformation::identity(dim)}, with_diagonals);
  }

  std::optional<std::size_t>
  Signature::index_of(Transformation const& t) const {
    auto it = data_->index.find(t);
    if (it == data_->index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  bool Signature::is_full_monoid() const noexcept {
    std::size_t expected = 1;
    for (std::size_t i = 0; i < dim(); ++i) {
      expected *= dim();
    }
    return transformation_count() == expected;
  }

}  // namespace baode
