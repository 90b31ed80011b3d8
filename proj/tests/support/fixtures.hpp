#pragma once

#include <vector>

#include "bppm/core.hpp"
#include "bppm/generator.hpp"

namespace fixture {

// The six-event, three-node table used throughout the unit tests, with ids
// 1,2,3 already mapped to 0,1,2.
bppm::EventStream six_events();

// Small planted two-block network with strongly assortative rates.
struct Planted {
  bppm::EventStream stream;
  bppm::ClassAssignment truth;
};
Planted planted_two_block(std::size_t n, double horizon, std::uint64_t seed);

// Random ascending times on [0, horizon).
std::vector<double> uniform_times(std::size_t m, double horizon, std::uint64_t seed);

}  // namespace fixture
