#include "algwit/limits.hpp"

#include <cstdlib>
#include <string>

#include "algwit/error.hpp"

namespace algwit {

  limits limits::from_environment() {
    limits      result;
    char const* value = std::getenv("ALGWIT_CAP");
    if (value != nullptr && *value != '\0') {
      try {
        std::size_t used = 0;
        auto        cap  = std::stoull(value, &used);
        if (used != std::string(value).size() || cap == 0) {
          throw std::invalid_argument(value);
        }
        result.closure_cap = cap;
      } catch (std::exception const&) {
        throw invalid_input(std::string("ALGWIT_CAP is not a positive integer: ")
                            + value);
      }
    }
    return result;
  }

}  // namespace algwit
