#pragma once

#include <cstddef>

#include "toric/exact.hpp"
#include "toric/fan.hpp"

namespace toric {

/// Values of a piecewise-linear function at the rays of a fan (indexed by ray).
struct HeightFunction {
    RatVec values;
};

/// The primitive integer relation sum a_i v_i = 0 among the n+1 rays of two
/// adjacent cones, scaled so both apex coefficients are positive.
struct WallRelation {
    IndexSet ray_indices;  // sorted
    IntVec coeffs;         // aligned with ray_indices
    IndexSet s_plus;
    IndexSet s_zero;
    IndexSet s_minus;
    std::size_t apex_a = 0;
    std::size_t apex_b = 0;

    Int coeff_of(std::size_t ray) const;
};

WallRelation wall_relation(const Fan& fan, const Wall& wall);

/// sum a_i h(v_i). Positive iff h is strictly convex across the wall; for the
/// log-discrepancy heights this is -(K+B).l_w up to a positive factor.
Rat defect(const WallRelation& relation, const HeightFunction& h);

enum class ContractionKind { fiber, divisorial, flipping };

struct Classification {
    ContractionKind kind = ContractionKind::fiber;
    std::size_t ray = 0;  // the contracted ray when divisorial
};

Classification classify(const WallRelation& relation);

const char* to_string(ContractionKind k);

}  // namespace toric
