#pragma once

#include <stdexcept>
#include <string>

namespace surfsym {

/// Failure modes with user-visible wording fixed by the CLI contract.
enum class errc {
    degenerate_parametrization,
    invariant_degeneracy,
    zero_resultants,
    underdetermined,
    not_standard_form,
    curve_is_line,
    striction_undefined,
    not_proper,
    no_consistent_branch,
    undefined_resultant,
    parse_error,
    internal,
};

class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace surfsym
