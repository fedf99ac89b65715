#pragma once

#include <cstdint>

#include "actnet/schedule.hpp"

namespace actnet {

// Small generated networks used as fixtures and test inputs.

// Seven tasks v1..v7 on two branches with distinct floats and three days
// of delivery slack; out_component(v1) covers the other six tasks.
ActivityNetwork make_fig3();

// Path t1 -> t2 -> ... -> tn with positive floats between consecutive
// tasks and postponement room before the delivery date.
ActivityNetwork make_chain(int n);

// a -> b -> d and a -> c -> d with zero floats on every edge.
ActivityNetwork make_diamond();

// Random schedule of n tasks over the given horizon; any pair ordered in
// time may become an edge with probability edge_prob. Deterministic for a
// given seed on every platform.
ActivityNetwork make_random_dag(int n, double edge_prob, int horizon,
                                std::uint64_t seed);

}  // namespace actnet
