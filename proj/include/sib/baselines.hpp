#pragma once

#include "sib/simulation.hpp"

namespace sib {

/// One row per user: a uniform catalog item, or a uniform point on the unit
/// sphere (Gaussian draw, normalized).
Matrix random_arms(const Catalog& catalog, int n, RngStream& rng);

/// Pure exploration: random_arms every round. No initialization phase, no
/// estimation.
RunResult run_rand(const SimConfig& cfg);

/// Pure exploitation: ridge estimate each round, then the greedy arm.
RunResult run_regression(const SimConfig& cfg);

}  // namespace sib
