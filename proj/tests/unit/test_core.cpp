#include <doctest.h>

#include <cmath>
#include <set>

#include "irops/core/error.hpp"
#include "irops/core/keyed_text.hpp"
#include "irops/core/rng.hpp"
#include "irops/core/text.hpp"

using namespace irops;

TEST_CASE("rng is reproducible and forks without consuming draws") {
  Rng a(7);
  Rng b(7);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  Rng c(7);
  const Rng child = c.fork("split");
  CHECK(child.seed() == derive_seed(7, "split"));
  CHECK(c.next_u64() == Rng(7).next_u64());
  CHECK(derive_seed(7, "split") != derive_seed(7, "tsne"));
  CHECK(derive_seed(7, "split") != derive_seed(8, "split"));
}

TEST_CASE("rng distributions") {
  Rng r(123);
  const int n = 200000;
  double sum = 0.0;
  double sum2 = 0.0;
  double umin = 1.0;
  double umax = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    sum += z;
    sum2 += z * z;
    const double u = r.uniform();
    umin = std::min(umin, u);
    umax = std::max(umax, u);
  }
  CHECK(std::fabs(sum / n) < 0.01);
  CHECK(std::fabs(sum2 / n - 1.0) < 0.02);
  CHECK(umin >= 0.0);
  CHECK(umax < 1.0);

  std::vector<int> counts(5, 0);
  for (int i = 0; i < 50000; ++i) {
    const auto k = r.index(5);
    REQUIRE(k < 5);
    ++counts[k];
  }
  for (int c : counts) {
    CHECK(std::abs(c - 10000) < 500);
  }
}

TEST_CASE("keyed text round trip and typed access") {
  const auto doc = KeyedText::parse("# comment\nn = 10\nname = Weather Delay \n\nflag = yes\nx = 0.25\n");
  CHECK(doc.get_uint("n") == 10);
  CHECK(doc.get_string("name") == "Weather Delay");
  CHECK(doc.get_bool("flag"));
  CHECK(doc.get_double("x") == 0.25);
  CHECK(doc.get_int("missing", -3) == -3);
  CHECK_THROWS_AS((void)doc.get_string("missing"), ConfigError);
  CHECK_THROWS_AS((void)doc.get_uint("name"), ConfigError);
  CHECK_THROWS_AS(KeyedText::parse("no separator"), ConfigError);

  KeyedText w;
  w.set("a.b", 1.5);
  w.set("a.c", std::string("text"));
  w.set("d", static_cast<std::uint64_t>(18446744073709551615ULL));
  const auto back = KeyedText::parse(w.to_string());
  CHECK(back.get_double("a.b") == 1.5);
  CHECK(back.get_uint("d") == 18446744073709551615ULL);
  const auto pre = back.with_prefix("a.");
  REQUIRE(pre.size() == 2);
  CHECK(pre[0].first == "b");
  CHECK(pre[1].second == "text");
}

TEST_CASE("csv splitting and quoting") {
  using text::split_csv_line;
  CHECK(split_csv_line("a,b,,c") == std::vector<std::string>{"a", "b", "", "c"});
  CHECK(split_csv_line("\"x,y\",\"say \"\"hi\"\"\"") ==
        std::vector<std::string>{"x,y", "say \"hi\""});
  CHECK(text::csv_field("plain") == "plain");
  CHECK(text::csv_field("a,b") == "\"a,b\"");
  CHECK(split_csv_line(text::csv_field("q\"uote")) == std::vector<std::string>{"q\"uote"});
}

TEST_CASE("format_double round trips") {
  Rng r(5);
  for (int i = 0; i < 1000; ++i) {
    const double v = r.normal() * std::pow(10.0, r.uniform(-30.0, 30.0));
    double back = 0.0;
    REQUIRE(text::parse_double(text::format_double(v), back));
    CHECK(back == v);
  }
  CHECK(text::format_double(0.0) == "0");
}

TEST_CASE("strict parsers reject trailing garbage") {
  double d = 0.0;
  std::int64_t i = 0;
  std::uint64_t u = 0;
  bool b = false;
  CHECK(text::parse_double(" 2.5 ", d));
  CHECK(d == 2.5);
  CHECK_FALSE(text::parse_double("2.5x", d));
  CHECK_FALSE(text::parse_double("nan", d));
  CHECK_FALSE(text::parse_double("inf", d));
  CHECK(text::parse_int("-4", i));
  CHECK_FALSE(text::parse_int("4.0", i));
  CHECK_FALSE(text::parse_uint("-1", u));
  CHECK(text::parse_bool("FALSE", b));
  CHECK_FALSE(b);
  CHECK_FALSE(text::parse_bool("maybe", b));
}
