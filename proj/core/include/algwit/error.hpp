#ifndef ALGWIT_ERROR_HPP_
#define ALGWIT_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace algwit {

  // Base class for every error raised by the library.
  class error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Parameter, range or schema violation in caller-supplied data.
  class invalid_input : public error {
   public:
    using error::error;
  };

  // A configured resource cap was hit before the computation finished.
  class cap_exceeded : public error {
   public:
    cap_exceeded(std::string const& what, std::size_t explored)
        : error(what + " (explored " + std::to_string(explored) + ")"),
          _explored(explored) {}

    std::size_t explored() const noexcept {
      return _explored;
    }

   private:
    std::size_t _explored;
  };

  // A named hypothesis of a construction does not hold for the given input.
  class hypothesis_failed : public invalid_input {
   public:
    hypothesis_failed(std::string name, std::string const& detail)
        : invalid_input(name + ": " + detail), _name(std::move(name)) {}

    std::string const& hypothesis() const noexcept {
      return _name;
    }

   private:
    std::string _name;
  };

  // An internal self-check failed. Always a bug, never a user error.
  class verification_failed : public error {
   public:
    using error::error;
  };

}  // namespace algwit

#endif  // ALGWIT_ERROR_HPP_
