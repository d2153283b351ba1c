#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "motifsearch/errors.hpp"
#include "motifsearch/pattern.hpp"

using namespace motifsearch;

namespace {

std::vector<bool> bits(const std::string& src, int n) { return parse_pattern(src).resolve(n); }

}  // namespace

TEST_SUITE("pattern") {
  TEST_CASE("star expands with zeros") {
    CHECK(bits("1*", 5) == std::vector<bool>{1, 0, 0, 0, 0});
    CHECK(bits("*1", 4) == std::vector<bool>{0, 0, 0, 1});
    CHECK(bits("1*1", 4) == std::vector<bool>{1, 0, 0, 1});
  }

  TEST_CASE("bare star selects all") {
    CHECK(bits("*", 3) == std::vector<bool>{1, 1, 1});
  }

  TEST_CASE("halving mask hides the upper half") {
    const auto m = parse_pattern("!*");
    CHECK(m.kind == PatternKind::halve_hide);
    const auto b8 = m.resolve(8);
    for (int i = 0; i < 4; ++i) CHECK_FALSE(b8[i]);
    for (int i = 4; i < 8; ++i) CHECK(b8[i]);
  }

  TEST_CASE("repeated halving leaves ceil(n/2^k) active") {
    for (int n = 1; n <= 33; ++n) {
      int active = n;
      for (int k = 1; k <= 5; ++k) {
        const auto b = parse_pattern("!*").resolve(active);
        int kept = 0;
        for (bool hide : b)
          if (!hide) ++kept;
        active = kept;
        const int expected = (n + (1 << k) - 1) >> k;  // ceil(n / 2^k)
        CHECK(active == expected);
      }
    }
  }

  TEST_CASE("grammar errors") {
    CHECK_THROWS_AS(parse_pattern(""), Error);
    CHECK_THROWS_AS(parse_pattern("!"), Error);
    CHECK_THROWS_AS(parse_pattern("1*0*"), Error);
    CHECK_THROWS_AS(parse_pattern("1a0"), Error);
    CHECK_THROWS_WITH_AS(parse_pattern("**"), doctest::Contains("malformed-pattern"), Error);
  }

  TEST_CASE("resolution is deterministic and sized") {
    for (const char* src : {"1*", "*1", "!*", "101", "*"}) {
      for (int n : {1, 2, 5, 9}) {
        const auto a = parse_pattern(src).resolve(n);
        const auto b = parse_pattern(src).resolve(n);
        CHECK(a == b);
        CHECK(int(a.size()) == n);
      }
    }
  }
}
