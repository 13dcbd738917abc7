#ifndef BAODE_ERROR_HPP_
#define BAODE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace baode {

  // Every failure the engine reports carries one of these kinds; the C API
  // maps them onto status codes.
  enum class ErrorKind {
    size,
    properness,
    signature,
    index,
    unbound_variable,
    morphism,
    containment,
    closure,
    map,
    witness_index,
    dimension_budget,
    parse,
    io,
    validation
  };

  char const* to_string(ErrorKind kind) noexcept;

  class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, std::string const& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept {
      return kind_;
    }

   private:
    ErrorKind kind_;
  };

  [[noreturn]] inline void fail(ErrorKind kind, std::string const& what) {
    throw Error(kind, what);
  }

}  // namespace baode

#endif  // BAODE_ERROR_HPP_
