#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "ftsm/rng.hpp"

using namespace ftsm;

TEST_CASE("philox known-answer vectors") {
  // Zero counter, zero key.
  auto r0 = rng::Philox4x32::block({0u, 0u, 0u, 0u}, {0u, 0u});
  CHECK(r0[0] == 0x6627e8d5u);
  CHECK(r0[1] == 0xe169c58du);
  CHECK(r0[2] == 0xbc57ac4cu);
  CHECK(r0[3] == 0x9b00dbd8u);
  // All-ones counter and key.
  auto r1 = rng::Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                   {0xffffffffu, 0xffffffffu});
  CHECK(r1[0] == 0x408f276du);
  CHECK(r1[1] == 0x41c83b0eu);
  CHECK(r1[2] == 0xa20bc7c6u);
  CHECK(r1[3] == 0x6d5451fdu);
  // Pi-digit counter/key.
  auto r2 = rng::Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                   {0xa4093822u, 0x299f31d0u});
  CHECK(r2[0] == 0xd16cfe09u);
  CHECK(r2[1] == 0x94fdccebu);
  CHECK(r2[2] == 0x5001e420u);
  CHECK(r2[3] == 0x24126ea1u);
}

TEST_CASE("u01 lies in (0, 1] and never returns zero") {
  rng::CounterRng g(12345, 7);
  for (int i = 0; i < 20000; ++i) {
    const double u = g.next_u01();
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
  }
}

TEST_CASE("streams are reproducible and independent of instance history") {
  rng::CounterRng a(42, rng::stream_id(3, rng::kStreamExp));
  std::vector<double> first;
  for (int i = 0; i < 100; ++i) first.push_back(a.next_u01());

  rng::CounterRng b(42, rng::stream_id(3, rng::kStreamExp));
  for (int i = 0; i < 100; ++i) CHECK(b.next_u01() == first[i]);
}

TEST_CASE("distinct streams differ") {
  rng::CounterRng a(42, rng::stream_id(3, rng::kStreamExp));
  rng::CounterRng b(42, rng::stream_id(3, rng::kStreamUnif));
  rng::CounterRng c(43, rng::stream_id(3, rng::kStreamExp));
  int same_ab = 0, same_ac = 0;
  for (int i = 0; i < 64; ++i) {
    const double x = a.next_u01(), y = b.next_u01(), z = c.next_u01();
    same_ab += (x == y);
    same_ac += (x == z);
  }
  CHECK(same_ab == 0);
  CHECK(same_ac == 0);
}

TEST_CASE("stream_id packs rep and label without collision") {
  CHECK(rng::stream_id(0, rng::kStreamGamma) == 0u);
  CHECK(rng::stream_id(1, rng::kStreamGamma) == 256u);
  CHECK(rng::stream_id(0, rng::kStreamTail) == 5u);
  CHECK(rng::stream_id(2, rng::kStreamBootstrap) == (2u << 8 | 16u));
  CHECK(rng::stream_id(5, rng::kStreamExp) != rng::stream_id(5, rng::kStreamUnif));
}

TEST_CASE("normal and exponential sample moments are sane") {
  rng::CounterRng g(2024, 1);
  const int n = 200000;
  double sn = 0, sn2 = 0, se = 0;
  for (int i = 0; i < n; ++i) {
    const double z = g.next_normal();
    sn += z;
    sn2 += z * z;
    se += g.next_exp();
  }
  CHECK(std::fabs(sn / n) < 0.01);           // mean 0, SE ~ 0.0022
  CHECK(std::fabs(sn2 / n - 1.0) < 0.02);    // variance 1
  CHECK(std::fabs(se / n - 1.0) < 0.01);     // Exp(1) mean
}
