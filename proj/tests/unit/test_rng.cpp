#include <cmath>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "rsde/rng.hpp"

using namespace rsde;

TEST_CASE("Philox4x32-10 known answers") {
  using A = std::array<std::uint32_t, 4>;
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == A{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        A{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        A{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  CounterRng a(5, 3, 1), b(5, 3, 1), c(5, 4, 1), d(6, 3, 1), e(5, 3, 2);
  std::set<std::uint64_t> firsts;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    if (i == 0) {
      firsts.insert(x);
      firsts.insert(c.next_u64());
      firsts.insert(d.next_u64());
      firsts.insert(e.next_u64());
    }
  }
  CHECK(firsts.size() == 4);
}

TEST_CASE("uniform and normal moments") {
  CounterRng rng(1, 0);
  std::vector<double> u, z;
  for (int i = 0; i < 200000; ++i) {
    const double x = rng.uniform();
    CHECK_UNARY(x > 0.0);
    CHECK_UNARY(x < 1.0);
    u.push_back(x);
    z.push_back(rng.normal());
  }
  auto [mu, vu] = oracle::mean_variance(u);
  CHECK(std::abs(mu - 0.5) < 0.005);
  CHECK(std::abs(vu - 1.0 / 12.0) < 0.002);
  auto [mz, vz] = oracle::mean_variance(z);
  CHECK(std::abs(mz) < 0.01);
  CHECK(std::abs(vz - 1.0) < 0.02);
  double kurt = 0.0;
  for (double x : z) kurt += std::pow(x - mz, 4);
  CHECK(std::abs(kurt / z.size() / (vz * vz) - 3.0) < 0.1);
}
