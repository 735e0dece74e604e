#ifndef ALGWIT_LIMITS_HPP_
#define ALGWIT_LIMITS_HPP_

#include <cstddef>

namespace algwit {

  // Resource caps shared by every search and closure. Exceeding one is an
  // error (cap_exceeded), never a silent truncation.
  struct limits {
    std::size_t closure_cap = std::size_t{1} << 20;  // elements in a closure
    std::size_t table_cap   = std::size_t{1} << 22;  // entries in a table
    std::size_t work_cap    = std::size_t{1} << 32;  // tuples examined

    // Defaults, with closure_cap overridden by ALGWIT_CAP when set.
    static limits from_environment();
  };

}  // namespace algwit

#endif  // ALGWIT_LIMITS_HPP_
