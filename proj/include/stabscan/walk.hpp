#pragma once

#include "stabscan/atlas.hpp"
#include "stabscan/slicing.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace stabscan {

struct BudgetExceeded : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct TransitionEdge {
    int to = -1;  // -1: absorbing
    int wall = -1;
    double length = 0.0;
    double prob = 0.0;
    bool tail = false;  // lumped length of the walls past the truncation
};

struct TransitionMatrix {
    std::vector<std::vector<TransitionEdge>> rows;  // per cell
    bool trivial = false;                            // the seed has nowhere to go
};

TransitionMatrix transition_matrix(const ChamberAtlas& at, const CategoryModel& d, const InnerProductQ& ip);

struct WalkConfig {
    std::vector<int> depths{4, 6, 8};
    std::int64_t trials = 100000;
    std::int64_t max_steps = 10000;
    std::uint64_t seed = 1;
    std::int64_t budget = 20000000000LL;  // trials * max_steps * depths; STABSCAN_BUDGET overrides
    unsigned threads = 0;                 // 0: hardware concurrency
};

struct DepthEstimate {
    int depth = 0;
    std::int64_t returns = 0;
    std::int64_t absorbed = 0;
    std::int64_t unfinished = 0;  // hit max_steps
    double return_prob = 0.0;
    double stderr_ = 0.0;
};

enum class WalkVerdict { Recurrent, Transient, Inconclusive, Trivial };
std::string walk_verdict_name(WalkVerdict v);

struct WalkReport {
    std::string driver;
    WalkConfig cfg;
    std::vector<DepthEstimate> estimates;
    double decay_exponent = 0.0;  // escape ~ depth^-alpha between the first and last depth
    WalkVerdict verdict = WalkVerdict::Inconclusive;
};

// return probability to the seed cell before leaving the depth-d truncation, for each d
WalkReport estimate_type(DriverPtr d, WalkConfig cfg);
// same on prebuilt matrices, one per entry of cfg.depths
WalkReport estimate_type(const std::vector<TransitionMatrix>& ladder, WalkConfig cfg);
std::string walk_csv(const WalkReport& r);

using MassVector = std::array<double, 3>;

// normalised (m(s), m(e), m(t))
MassVector thurston_map_a2(const StabilityPoint& p);
bool thurston_region_check(const MassVector& v, double tol = 1e-12);

}  // namespace stabscan
