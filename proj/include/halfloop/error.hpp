#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace halfloop {

  enum class errc {
    not_quasigroup,
    no_identity,
    multiple_identities,
    not_power_associative,
    bound_exceeded,
    degenerate_exponent,
    not_involution,
    not_a_group,
    transversal_broken,
    not_subset,
    parse_error,
    fixture_missing,
    invalid_argument
  };

  inline std::string_view to_string(errc code) noexcept {
    switch (code) {
      case errc::not_quasigroup:
        return "NotQuasigroup";
      case errc::no_identity:
        return "NoIdentity";
      case errc::multiple_identities:
        return "MultipleIdentities";
      case errc::not_power_associative:
        return "NotPowerAssociative";
      case errc::bound_exceeded:
        return "BoundExceeded";
      case errc::degenerate_exponent:
        return "DegenerateExponent";
      case errc::not_involution:
        return "NotInvolution";
      case errc::not_a_group:
        return "NotAGroup";
      case errc::transversal_broken:
        return "TransversalBroken";
      case errc::not_subset:
        return "NotSubset";
      case errc::parse_error:
        return "ParseError";
      case errc::fixture_missing:
        return "FixtureMissing";
      case errc::invalid_argument:
        return "InvalidArgument";
    }
    return "Unknown";
  }

  // Every failure raised by the library. The message is prefixed by the
  // error name so that diagnostics printed by the CLI are greppable.
  class Error : public std::runtime_error {
   public:
    Error(errc code, std::string const& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what),
          _code(code) {}

    errc code() const noexcept {
      return _code;
    }

   private:
    errc _code;
  };

}  // namespace halfloop
