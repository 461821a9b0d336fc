#pragma once

// Exact rational linear programming (two-phase dense simplex, Bland's rule).
// Used for cone-intersection feasibility, ample height search and lower-hull seeding.

#include <cstddef>
#include <vector>

#include "toric/exact.hpp"

namespace toric {

enum class Sense { le, ge, eq };

struct LpConstraint {
    RatVec coeffs;
    Sense sense = Sense::le;
    Rat rhs = 0;
};

struct LinearProgram {
    std::size_t num_vars = 0;
    std::vector<bool> free_var;  // empty = all variables nonnegative
    RatVec objective;            // maximized; empty = feasibility only
    std::vector<LpConstraint> constraints;

    void add(RatVec coeffs, Sense sense, Rat rhs) {
        constraints.push_back({std::move(coeffs), sense, std::move(rhs)});
    }
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    RatVec x;
    Rat value = 0;
    /// basic[i]: variable i (its positive part, for free variables) is basic at the optimum.
    std::vector<bool> basic;
};

LpResult solve_lp(const LinearProgram& lp);

}  // namespace toric
