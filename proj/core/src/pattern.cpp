#include "motifsearch/pattern.hpp"

#include "motifsearch/errors.hpp"

namespace motifsearch {

Pattern parse_pattern(const std::string& src) {
  if (src.empty()) throw Error(Errc::malformed_pattern, "empty pattern");
  Pattern p;
  p.source = src;
  std::string body = src;
  if (body[0] == '!') {
    p.kind = PatternKind::halve_hide;
    body = body.substr(1);
  }
  if (body.empty()) throw Error(Errc::malformed_pattern, "empty body in '" + src + "'");
  int stars = 0;
  for (char c : body) {
    if (c == '*') {
      ++stars;
    } else if (c != '0' && c != '1') {
      throw Error(Errc::malformed_pattern, "bad character in '" + src + "'");
    }
  }
  if (stars > 1) throw Error(Errc::malformed_pattern, "multiple '*' in '" + src + "'");
  return p;
}

std::vector<bool> Pattern::resolve(int n_active) const {
  std::vector<bool> bits(static_cast<size_t>(n_active), false);
  const std::string b = body();
  if (b == "*") {
    if (is_halving()) {
      // halving mask: hide the upper floor(n/2) sites
      for (int i = (n_active + 1) / 2; i < n_active; ++i) bits[i] = true;
    } else {
      bits.assign(static_cast<size_t>(n_active), true);
    }
    return bits;
  }
  const auto star = b.find('*');
  std::string expanded;
  if (star == std::string::npos) {
    expanded = b;
    // a fixed-length body shorter than n is right-padded with '0'
    expanded.resize(static_cast<size_t>(n_active), '0');
  } else {
    const std::string head = b.substr(0, star);
    const std::string tail = b.substr(star + 1);
    const int fill = n_active - static_cast<int>(head.size() + tail.size());
    expanded = head + std::string(static_cast<size_t>(fill > 0 ? fill : 0), '0') + tail;
  }
  for (int i = 0; i < n_active && i < static_cast<int>(expanded.size()); ++i) {
    bits[i] = expanded[static_cast<size_t>(i)] == '1';
  }
  return bits;
}

}  // namespace motifsearch
