#ifndef ALGWIT_CERTIFICATE_HPP_
#define ALGWIT_CERTIFICATE_HPP_

#include <optional>
#include <string>

#include "algwit/identity.hpp"
#include "algwit/io.hpp"
#include "algwit/limits.hpp"
#include "algwit/termsearch.hpp"

namespace algwit {

  std::string tool_version();

  // {claim, parameters, verdict, evidence, stats, tool_version}
  json make_certificate(std::string const& claim,
                        json               parameters,
                        std::string const& verdict,
                        json               evidence,
                        json               stats);

  // Verdict "verified" when B(m,q) is closed, the expected identities fail
  // at (a,d) and, for q = 2, the c witness and the canonical chain check out.
  json certify_sharpness(unsigned m, unsigned q, limits const& lim = {});

  // Verdict "verified" when every stage of the descent passes.
  json certify_induction(unsigned m, unsigned q, limits const& lim = {});

  // Identity on B(m,q) with its constructed congruences; verdict "holds" or
  // "fails". With focus_ad only the pair (a,d) is decided.
  json certify_identity(identity_params const& params, bool focus_ad, limits const& lim = {});

  // Verdict "found", "none" or "cap".
  json certify_level(std::string const& fixture_name,
                     std::string const& scheme,
                     unsigned           level_cap,
                     limits const&      lim = {});
  json certify_search(std::string const& fixture_name,
                      std::string const& scheme,
                      unsigned           parameter,
                      limits const&      lim = {});

  // mode: check, iterate, compose, maltsev, nu, arithmetical. Operations are
  // basic operations of the fixture given by index; k is the iteration count.
  json certify_toolkit(std::string const& fixture_name,
                       std::string const& mode,
                       std::size_t        d_op,
                       std::optional<std::size_t> e_op,
                       unsigned           k,
                       limits const&      lim = {});

  struct recheck_result {
    bool        ok = false;
    std::string detail;
  };

  // Replays the evidence of a certificate produced by one of the functions
  // above, evaluating witnesses directly rather than trusting the verdict.
  recheck_result recheck_certificate(json const& certificate, limits const& lim = {});

}  // namespace algwit

#endif  // ALGWIT_CERTIFICATE_HPP_
