#ifndef ALGWIT_IO_HPP_
#define ALGWIT_IO_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "algwit/algebra.hpp"
#include "algwit/error.hpp"
#include "algwit/partition.hpp"
#include "algwit/term.hpp"

namespace algwit {

  using json = nlohmann::json;

  // Schema violation; the message starts with the offending field path.
  class schema_error : public invalid_input {
   public:
    schema_error(std::string path, std::string const& detail)
        : invalid_input(path + ": " + detail), _path(std::move(path)) {}
    std::string const& path() const noexcept {
      return _path;
    }

   private:
    std::string _path;
  };

  // {"label", "size", "ops": [{"name", "arity", "table"}]}. Lazy products are
  // written with materialised tables, so they must fit the table cap.
  json           algebra_to_json(finite_algebra const& alg);
  finite_algebra algebra_from_json(json const& j, std::string const& path = "$");

  // {"size", "blocks": [[...], ...]} with blocks in canonical order.
  json      partition_to_json(partition const& p);
  partition partition_from_json(json const& j, std::string const& path = "$");

  // Nested arrays ["op", child, ...]; variables are "x0", "x1", ...
  json term_to_json(term const& t, finite_algebra const& signature);
  term term_from_json(json const& j, finite_algebra const& signature, std::string const& path = "$");

  json read_json_file(std::filesystem::path const& path);
  // Writes to a sibling temporary file and renames it into place.
  void write_json_file(std::filesystem::path const& path, json const& j);

  finite_algebra load_algebra(std::filesystem::path const& path);
  void           save_algebra(std::filesystem::path const& path, finite_algebra const& alg);

  // Colon-delimited fixture names:
  //   N:j:m         u_{j,m} on the 2-element chain
  //   Nq:j:m:s      u_{j,m} on the s-element chain (s = q + 1)
  //   Nm:m          the generators of the variety N_m
  //   I:m, If:m     Boolean reducts with i and u_{2,m}, resp. f and u_{2,m}
  //   sum:n:a,b,..  addition modulo n, one operation per listed arity
  //   chain:n       the n-element chain lattice
  //   dissent       two-element algebra with a minority and a 4-ary dissent op
  // Several names joined by "+" give several generating algebras.
  std::vector<finite_algebra> fixture(std::string const& name);
  std::vector<std::string>    fixture_examples();

}  // namespace algwit

#endif  // ALGWIT_IO_HPP_
