#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unordered_set>

#include "harmlab/groups.hpp"
#include "harmlab/grigorchuk.hpp"
#include "harmlab/step_distribution.hpp"
#include "harmlab/walk_sim.hpp"
#include "oracles.hpp"

using namespace harmlab;

namespace {

const std::vector<std::string> kAllFamilies = {"z:1",         "z:2",    "free:2",
                                               "heis",        "lamplighter", "bs:1:2",
                                               "grigorchuk"};

GroupElement random_element(const GroupContext& ctx, SplitMix64& rng, int max_len = 6) {
  GroupElement g = ctx.identity;
  const int len = static_cast<int>(rng.next() % (max_len + 1));
  for (int i = 0; i < len; ++i) {
    g = multiply(g, ctx.generators[rng.next() % ctx.generators.size()].second);
  }
  return g;
}

}  // namespace

TEST_CASE("family spec parsing") {
  CHECK(parse_family("z:2").family == Family::Zd);
  CHECK(parse_family("z:2").d == 2);
  CHECK(parse_family("free:3").d == 3);
  CHECK(parse_family("heis").family == Family::Heisenberg);
  CHECK(parse_family("lamplighter").family == Family::Lamplighter);
  CHECK(parse_family("bs:1:2").m == 2);
  CHECK(parse_family("grigorchuk").family == Family::Grigorchuk);
  for (const auto& spec : kAllFamilies) CHECK(parse_family(spec).str() == spec);

  CHECK_THROWS_AS(parse_family("z:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_family("free:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_family("bs:1:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_family("bs:2:3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_family("dihedral"), std::invalid_argument);
  CHECK_THROWS_AS(parse_family("z:x"), std::invalid_argument);
}

TEST_CASE("make_group context") {
  const auto z2 = make_group(parse_family("z:2"));
  CHECK(format_element(z2.identity) == "(0,0)");
  REQUIRE(z2.generators.size() == 4);
  CHECK(format_element(z2.generator("x1")) == "(1,0)");
  CHECK(format_element(z2.generator("X2")) == "(0,-1)");

  const auto f2 = make_group(parse_family("free:2"));
  CHECK(is_identity(f2.identity));
  REQUIRE(f2.generators.size() == 4);
  CHECK(f2.generators[0].first == "a");
  CHECK(f2.generators[1].first == "A");
  CHECK(f2.generators[2].first == "b");
  CHECK(f2.generators[3].first == "B");

  const auto grig = make_group(parse_family("grigorchuk"));
  for (const auto& [name, g] : grig.generators) {
    CHECK(is_identity(multiply(g, g)));  // all four are involutions
    CHECK_FALSE(is_identity(g));
  }
}

TEST_CASE("multiply and invert examples") {
  const auto f2 = make_group(parse_family("free:2"));
  CHECK(is_identity(multiply(f2.generator("a"), f2.generator("A"))));
  CHECK(format_element(invert(parse_element(f2, "ab"))) == "BA");

  const auto z2 = make_group(parse_family("z:2"));
  CHECK(multiply(z2.generator("x1"), z2.generator("x2")) == parse_element(z2, "x1x2"));
  CHECK(format_element(multiply(z2.generator("x1"), z2.generator("x2"))) == "(1,1)");
  const GroupElement v = parse_element(z2, "x1x1x1X2");  // (3,-1)
  CHECK(format_element(invert(v)) == "(-3,1)");

  const auto lamp = make_group(parse_family("lamplighter"));
  const GroupElement tt = multiply(lamp.generator("t"), lamp.generator("t"));
  CHECK(format_element(tt) == "{}@2");

  const auto bs = make_group(parse_family("bs:1:2"));
  const GroupElement ts = multiply(bs.generator("s"), bs.generator("t"));  // x -> 2x+1
  CHECK(format_element(ts) == "(1|1)");
  CHECK(format_element(invert(ts)) == "(-1|-1/2)");
  CHECK(is_identity(multiply(ts, invert(ts))));

  CHECK_THROWS_AS(multiply(z2.identity, f2.identity), std::invalid_argument);
}

TEST_CASE("translate_path recenters") {
  const auto z2 = make_group(parse_family("z:2"));
  const GroupElement g = parse_element(z2, "x1x1x2x2x2");  // (2,3)
  const std::vector<GroupElement> path{g, multiply(g, z2.generator("x1"))};
  const auto moved = translate_path(g, path);
  CHECK(format_element(moved[0]) == "(0,0)");
  CHECK(format_element(moved[1]) == "(1,0)");

  const auto f2 = make_group(parse_family("free:2"));
  const GroupElement h = parse_element(f2, "ab");
  const auto moved2 = translate_path(h, {h, parse_element(f2, "aba")});
  CHECK(is_identity(moved2[0]));
  CHECK(format_element(moved2[1]) == "a");

  // identity translation leaves paths alone
  const auto same = translate_path(z2.identity, path);
  CHECK(same[0] == path[0]);
  CHECK(same[1] == path[1]);
}

TEST_CASE("group axioms on random samples") {
  for (const auto& spec : kAllFamilies) {
    const auto ctx = make_group(parse_family(spec));
    SplitMix64 rng(0xabcde0 + spec.size());
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
      const GroupElement g = random_element(ctx, rng);
      const GroupElement h = random_element(ctx, rng);
      const GroupElement k = random_element(ctx, rng);
      REQUIRE(multiply(multiply(g, h), k) == multiply(g, multiply(h, k)));
      REQUIRE(is_identity(multiply(g, invert(g))));
      REQUIRE(is_identity(multiply(invert(g), g)));
      REQUIRE(multiply(g, ctx.identity) == g);
      REQUIRE(multiply(ctx.identity, g) == g);
    }
  }
}

TEST_CASE("hash agrees with equality") {
  GroupElementHash hash;
  for (const auto& spec : kAllFamilies) {
    const auto ctx = make_group(parse_family(spec));
    SplitMix64 rng(77);
    for (int i = 0; i < 2000; ++i) {
      const GroupElement g = random_element(ctx, rng);
      // products with a relator inserted stay equal, payload included
      const size_t cut = rng.next() % ctx.generators.size();
      const GroupElement s = ctx.generators[cut].second;
      const GroupElement same = multiply(multiply(g, multiply(s, invert(s))), ctx.identity);
      REQUIRE(same == g);
      REQUIRE(hash(same) == hash(g));
    }
  }
}

TEST_CASE("grigorchuk relations") {
  const auto ctx = make_group(parse_family("grigorchuk"));
  const auto g = [&](const char* n) { return ctx.generator(n); };
  CHECK(multiply(g("b"), g("c")) == g("d"));
  CHECK(multiply(g("c"), g("b")) == g("d"));
  CHECK(multiply(g("b"), g("d")) == g("c"));
  CHECK(multiply(g("d"), g("b")) == g("c"));
  CHECK(multiply(g("c"), g("d")) == g("b"));
  CHECK(multiply(g("d"), g("c")) == g("b"));

  auto power = [&](const GroupElement& x, int n) {
    GroupElement acc = ctx.identity;
    for (int i = 0; i < n; ++i) acc = multiply(acc, x);
    return acc;
  };
  const GroupElement ad = parse_element(ctx, "ad");
  const GroupElement ac = parse_element(ctx, "ac");
  const GroupElement ab = parse_element(ctx, "ab");
  CHECK_FALSE(is_identity(power(ad, 2)));
  CHECK(is_identity(power(ad, 4)));
  CHECK_FALSE(is_identity(power(ac, 4)));
  CHECK(is_identity(power(ac, 8)));
  CHECK_FALSE(is_identity(power(ab, 8)));
  CHECK(is_identity(power(ab, 16)));
  CHECK_FALSE(is_identity(parse_element(ctx, "ab")));
}

TEST_CASE("grigorchuk word problem against the tree-action oracle") {
  // Every word of length <= 6, letters in {a,b,c,d}.
  for (int len = 0; len <= 6; ++len) {
    const int total = 1 << (2 * len);
    for (int m = 0; m < total; ++m) {
      std::string word;
      grig::Word letters;
      for (int i = 0; i < len; ++i) {
        const int c = (m >> (2 * i)) & 3;
        word += "abcd"[c];
        letters.push_back(static_cast<uint8_t>(c));
      }
      const bool lib = grig::is_trivial(grig::reduce(letters));
      const bool oracle = oracles::grig_trivial(word, 8);
      REQUIRE(lib == oracle);
    }
  }
}

TEST_CASE("grigorchuk canonical keys separate and join correctly") {
  const auto ctx = make_group(parse_family("grigorchuk"));
  // bc and d are the same element with different words
  const GroupElement bc = parse_element(ctx, "bc");
  const GroupElement d = ctx.generator("d");
  CHECK(bc == d);
  CHECK(GroupElementHash{}(bc) == GroupElementHash{}(d));
  // adad differs from identity and from d
  const GroupElement adad = parse_element(ctx, "adad");
  CHECK_FALSE(adad == ctx.identity);
  CHECK_FALSE(adad == d);

  // random pairs: canonical equality must match the action oracle
  SplitMix64 rng(1234);
  for (int i = 0; i < 300; ++i) {
    std::string w1, w2;
    const int l1 = static_cast<int>(rng.next() % 6), l2 = static_cast<int>(rng.next() % 6);
    for (int j = 0; j < l1; ++j) w1 += "abcd"[rng.next() % 4];
    for (int j = 0; j < l2; ++j) w2 += "abcd"[rng.next() % 4];
    const GroupElement g1 = parse_element(ctx, w1.empty() ? "e" : w1);
    const GroupElement g2 = parse_element(ctx, w2.empty() ? "e" : w2);
    const bool equal_oracle =
        oracles::grig_action_table(w1, 8) == oracles::grig_action_table(w2, 8);
    REQUIRE((g1 == g2) == equal_oracle);
  }
}

TEST_CASE("parse_element") {
  const auto z12 = make_group(parse_family("z:12"));
  CHECK(format_element(parse_element(z12, "x12")) == "(0,0,0,0,0,0,0,0,0,0,0,1)");
  CHECK(parse_element(z12, "x1.X1") == z12.identity);
  CHECK(parse_element(z12, "e") == z12.identity);
  CHECK_THROWS_AS(parse_element(z12, "q7"), std::invalid_argument);

  const auto f2 = make_group(parse_family("free:2"));
  CHECK(format_element(parse_element(f2, "abA")) == "abA");
  CHECK(format_element(parse_element(f2, "a B b A")) == "e");  // reduces away
}

TEST_CASE("element serialization round trip") {
  for (const auto& spec : kAllFamilies) {
    const auto ctx = make_group(parse_family(spec));
    SplitMix64 rng(99);
    for (int i = 0; i < 200; ++i) {
      const GroupElement g = random_element(ctx, rng);
      std::vector<uint8_t> buf;
      serialize_element(g, buf);
      const uint8_t* p = buf.data();
      const GroupElement back = deserialize_element(ctx.fam, p, buf.data() + buf.size());
      REQUIRE(back == g);
      REQUIRE(p == buf.data() + buf.size());
    }
  }
}

TEST_CASE("step distributions") {
  const auto z1 = make_group(parse_family("z:1"));
  const auto dist = uniform_steps(z1);
  CHECK(dist.steps.size() == 2);
  CHECK(dist.min_prob == Rational(1, 2));

  // overrides must be positive and sum to one
  CHECK_THROWS_AS(make_steps(z1, {Rational(1, 2), Rational(1, 3)}), std::invalid_argument);
  CHECK_THROWS_AS(make_steps(z1, {Rational(3, 2), Rational(-1, 2)}), std::invalid_argument);
  const auto biased = make_steps(z1, {Rational(1, 3), Rational(2, 3)});
  CHECK(biased.min_prob == Rational(1, 3));

  for (const auto& spec : kAllFamilies) {
    const auto ctx = make_group(parse_family(spec));
    CHECK_NOTHROW(uniform_steps(ctx));
  }

  // a support that cannot reach its own inverses fails the certificate
  const auto lamp = make_group(parse_family("lamplighter"));
  StepDistribution one_way;
  one_way.steps = {{lamp.generator("t"), Rational(1)}};
  one_way.min_prob = Rational(1);
  CHECK_THROWS_AS(check_strong_connectedness(lamp, one_way), std::invalid_argument);
}

TEST_CASE("format parse round trips through generator words") {
  const auto lamp = make_group(parse_family("lamplighter"));
  const GroupElement g = parse_element(lamp, "stts");
  CHECK(format_element(g) == "{0,2}@2");
  const auto heis = make_group(parse_family("heis"));
  CHECK(format_element(parse_element(heis, "xy")) == "(1,1,1)");
  CHECK(format_element(parse_element(heis, "yx")) == "(1,1,0)");
}
