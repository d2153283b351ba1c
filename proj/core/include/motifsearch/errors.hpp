#pragma once

#include <stdexcept>
#include <string>

namespace motifsearch {

enum class Errc {
  malformed_pattern,
  too_few_sites,
  empty_pivot,
  all_sites_masked,
  size_limit,
  numerically_annihilated,
  degenerate_st,
  out_of_domain,
  need_more_individuals,
  not_evaluated,
  invalid_grid,
  parse_error,
  invalid_config,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::malformed_pattern: return "malformed-pattern";
    case Errc::too_few_sites: return "too-few-sites";
    case Errc::empty_pivot: return "empty-pivot";
    case Errc::all_sites_masked: return "all-sites-masked";
    case Errc::size_limit: return "size-limit";
    case Errc::numerically_annihilated: return "numerically-annihilated";
    case Errc::degenerate_st: return "degenerate-ST";
    case Errc::out_of_domain: return "out-of-domain";
    case Errc::need_more_individuals: return "need-more-individuals";
    case Errc::not_evaluated: return "not-evaluated";
    case Errc::invalid_grid: return "invalid-grid";
    case Errc::parse_error: return "parse-error";
    case Errc::invalid_config: return "invalid-config";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace motifsearch
