#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "ncaz/algebra.hpp"
#include "ncaz/random.hpp"

using namespace ncaz;

TEST_CASE("philox known-answer vectors") {
  using Block = std::array<std::uint32_t, 4>;
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and independent of draw order elsewhere") {
  RandomStream a(42, 7);
  RandomStream b(42, 7);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  // interleaving draws from another stream does not change this one
  RandomStream c(42, 7);
  RandomStream other(42, 8);
  RandomStream d(42, 7);
  std::vector<std::uint64_t> xs, ys;
  for (int i = 0; i < 50; ++i) {
    xs.push_back(c.next_u64());
    other.next_u64();
  }
  for (int i = 0; i < 50; ++i) ys.push_back(d.next_u64());
  CHECK(xs == ys);

  RandomStream s1(1, 0), s2(2, 0), s3(1, 1);
  const auto v1 = s1.next_u64();
  CHECK(v1 != s2.next_u64());
  CHECK(v1 != s3.next_u64());
}

TEST_CASE("substreams depend on the tag and the parent") {
  const RandomStream root(3, 11);
  auto x = root.substream(1);
  auto y = root.substream(2);
  auto z = RandomStream(3, 12).substream(1);
  const auto vx = x.next_u64();
  CHECK(vx != y.next_u64());
  CHECK(vx != z.next_u64());
  auto again = root.substream(1);
  CHECK(vx == again.next_u64());
  CHECK(combine_tags(1, 2) != combine_tags(2, 1));
}

TEST_CASE("uniform and normal moments") {
  RandomStream rng(5, 0);
  const int n = 200000;
  double sum = 0.0, sum_sq = 0.0, lo = 1.0, hi = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    sum += u;
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo >= 0.0);
  CHECK(hi < 1.0);
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));

  sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sum_sq += z * z;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(sum_sq / n == doctest::Approx(1.0).epsilon(0.01));

  double mod_sq = 0.0;
  for (int i = 0; i < n; ++i) mod_sq += std::norm(rng.complex_normal());
  CHECK(mod_sq / n == doctest::Approx(1.0).epsilon(0.01));

  std::set<std::size_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto k = rng.index(7);
    CHECK(k < 7);
    seen.insert(k);
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("random element generators") {
  RandomStream rng(6, 0);
  const auto h = random_hermitian(5, rng);
  CHECK((h.matrix() - h.matrix().adjoint()).norm() == 0.0);
  const auto p = random_positive(5, rng);
  CHECK(min_eigenvalue(p) >= -1e-12);
  CHECK(operator_norm(p) == doctest::Approx(1.0));
}
