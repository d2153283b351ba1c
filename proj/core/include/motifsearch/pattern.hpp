#pragma once

#include <string>
#include <vector>

namespace motifsearch {

enum class PatternKind { select, halve_hide };

/// A site-selection mini-language over the alphabet {0,1,*,!}.
///
/// Grammar: an optional leading '!' followed by a body of {0,1} characters
/// containing at most one '*'. At resolution against n active sites the '*'
/// expands with '0' so the body reaches length n; the bare body "*" selects
/// every site. A leading '!' flips the role to hiding the matched sites, and
/// the special form "!*" is the halving mask: it keeps the lower ceil(n/2)
/// sites and hides the upper floor(n/2).
struct Pattern {
  std::string source;
  PatternKind kind = PatternKind::select;

  /// True bits mark *selected* sites (for halve_hide, the sites to hide).
  std::vector<bool> resolve(int n_active) const;

  bool is_halving() const { return kind == PatternKind::halve_hide && body() == "*"; }
  std::string body() const {
    return kind == PatternKind::halve_hide ? source.substr(1) : source;
  }
};

Pattern parse_pattern(const std::string& src);

}  // namespace motifsearch
