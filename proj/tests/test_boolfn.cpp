#include <random>

#include "boolpp/boolfn.hpp"
#include "doctest.h"

using namespace boolpp;

namespace {

// Cell value of f at the argument vector, read straight off the bit string.
int naive_at(const BoolFn& f, const std::vector<int>& args) {
  std::size_t index = 0;
  for (int a : args) index = index * 2 + static_cast<std::size_t>(a);
  return f.bits()[index] - '0';
}

std::vector<int> bits_of(std::uint32_t index, int n) {
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = (index >> (n - 1 - j)) & 1u;
  return out;
}

BoolFn random_fn(int n, std::mt19937_64& rng) {
  std::string bits;
  for (std::uint32_t i = 0; i < (1u << n); ++i) bits += static_cast<char>('0' + (rng() & 1u));
  return BoolFn::from_bits(n, bits);
}

}  // namespace

TEST_CASE("eval on named operations") {
  CHECK(named("and").eval({1, 1}) == 1);
  CHECK(named("d3").eval({1, 0, 1}) == 1);
  CHECK(named("m").eval({1, 1, 1}) == 1);
  CHECK(named("and").eval({0, 1}) == 0);
}

TEST_CASE("named tables") {
  CHECK(named("d3").bits() == "00010111");
  CHECK(named("star").bits() == "0100");
  CHECK(named("∗").bits() == "0100");
  CHECK(named("pi2_2").bits() == "0101");
  CHECK(named("p").bits() == "00000111");
  CHECK(named("c").bits() == "10");
  CHECK_THROWS_AS(named("nonsense"), Error);
}

TEST_CASE("minor examples") {
  auto d3_xxy = minor(named("d3"), IndexMap(2, {0, 0, 1}));
  CHECK(d3_xxy.bits() == "0011");
  CHECK(minor(named("m"), IndexMap(2, {0, 0, 1})).bits() == "0101");
  auto f = named("p");
  CHECK(minor(f, IndexMap::identity(3)) == f);
}

TEST_CASE("minor agrees with the definition on random tables") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4), r = 1 + static_cast<int>(rng() % 4);
    auto f = random_fn(n, rng);
    std::vector<int> image;
    for (int i = 0; i < n; ++i) image.push_back(static_cast<int>(rng() % static_cast<unsigned>(r)));
    auto g = minor(f, IndexMap(r, image));
    REQUIRE(g.arity() == r);
    for (std::uint32_t t = 0; t < (1u << r); ++t) {
      auto x = bits_of(t, r);
      std::vector<int> args;
      for (int i : image) args.push_back(x[static_cast<std::size_t>(i)]);
      CHECK(naive_at(g, x) == naive_at(f, args));
    }
  }
}

TEST_CASE("minors compose along then()") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4), r = 1 + static_cast<int>(rng() % 4), s = 1 + static_cast<int>(rng() % 3);
    auto f = random_fn(n, rng);
    std::vector<int> a, b;
    for (int i = 0; i < n; ++i) a.push_back(static_cast<int>(rng() % static_cast<unsigned>(r)));
    for (int i = 0; i < r; ++i) b.push_back(static_cast<int>(rng() % static_cast<unsigned>(s)));
    IndexMap pi(r, a), sigma(s, b);
    CHECK(minor(minor(f, pi), sigma) == minor(f, pi.then(sigma)));
  }
}

TEST_CASE("compose examples") {
  auto p1 = BoolFn::projection(1, 2), p2 = BoolFn::projection(2, 2);
  std::vector<BoolFn> proj = {p1, p2};
  CHECK(compose(named("and"), proj) == named("and"));
  std::vector<BoolFn> one = {named("and")};
  CHECK(compose(named("c"), one).bits() == "1110");
  std::vector<BoolFn> inner = {BoolFn::projection(2, 3), BoolFn::projection(3, 3)};
  auto y_or_z = compose(named("or"), inner);
  std::vector<BoolFn> outer = {BoolFn::projection(1, 3), y_or_z};
  CHECK(compose(named("and"), outer).bits() == "00000111");
}

TEST_CASE("compose agrees with the definition on random tables") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3), k = 1 + static_cast<int>(rng() % 4);
    auto f = random_fn(n, rng);
    std::vector<BoolFn> gs;
    for (int i = 0; i < n; ++i) gs.push_back(random_fn(k, rng));
    auto h = compose(f, gs);
    for (std::uint32_t t = 0; t < (1u << k); ++t) {
      auto x = bits_of(t, k);
      std::vector<int> inner;
      for (const auto& g : gs) inner.push_back(naive_at(g, x));
      CHECK(naive_at(h, x) == naive_at(f, inner));
    }
  }
}

TEST_CASE("dual") {
  CHECK(dual(named("and")) == named("or"));
  CHECK(dual(named("m")) == named("m"));
  CHECK(dual(named("0")) == named("1"));
  CHECK(named("p^d") == dual(named("p")));
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    auto f = random_fn(1 + static_cast<int>(rng() % 5), rng);
    CHECK(dual(dual(f)) == f);
  }
}

TEST_CASE("idempotence and constants") {
  CHECK(named("d3").is_idempotent());
  CHECK_FALSE(named("c").is_idempotent());
  CHECK(named("q").is_idempotent());
  CHECK(named("0").is_constant());
  CHECK(BoolFn::projection(2, 3).projection_index() == 1);
  CHECK(named("m").projection_index() == -1);
}

TEST_CASE("text round trip") {
  std::mt19937_64 rng(15);
  for (int n = 1; n <= 8; ++n) {
    auto f = random_fn(n, rng);
    CHECK(BoolFn::parse(f.to_string()) == f);
  }
  CHECK_THROWS_AS(BoolFn::parse("3:0101"), Error);
  CHECK_THROWS_AS(BoolFn::parse("2:01x1"), Error);
  CHECK_THROWS_AS(BoolFn(0), Error);
  CHECK_THROWS_AS(BoolFn(kMaxArity + 1), Error);
}

TEST_CASE("large arity tables span several words") {
  auto f = BoolFn::from_function(8, [](std::uint32_t i) { return i % 3 == 0; });
  CHECK(f.at(255) == (255 % 3 == 0));
  CHECK(f.at(129) == (129 % 3 == 0));
  CHECK(dual(dual(f)) == f);
}
