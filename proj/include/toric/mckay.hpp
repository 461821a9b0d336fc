#pragma once

// Abelian quotient singularities as toric pairs, the terminalize + relative MMP
// pipeline with its rank ledger, and the two-dimensional Hirzebruch-Jung resolution.

#include <cstddef>
#include <vector>

#include "toric/exact.hpp"
#include "toric/fan.hpp"
#include "toric/lattice.hpp"
#include "toric/mmp.hpp"
#include "toric/pair.hpp"

namespace toric {

/// The element (1/r)(a_1, ..., a_n) of (Q/Z)^n.
struct GroupGenerator {
    Int r;
    IntVec weights;
};

/// Subgroup of (Q/Z)^n generated by `gens`, acting diagonally on A^n.
struct GroupData {
    std::size_t n = 0;
    std::vector<GroupGenerator> gens;
};

/// Throws InputError on r < 1, a weight outside [0, r) or a length mismatch.
void validate(const GroupData& g);

/// N = Z^n + sum Z (1/r_j) a_j.
LatticeBasis group_lattice(const GroupData& g);

/// [N : Z^n].
Int group_order(const GroupData& g);

bool is_sl(const GroupData& g);

/// The orthant over N with rays e_i / m_i (in N-coordinates) and boundary
/// coefficients 1 - 1/m_i.
ToricPair quotient_pair(const GroupData& g);

/// Sum over maximal cones of |det(m_i v_i)|, where d_i = 1 - 1/m_i.
Int stack_rank(const ToricPair& pair);

/// {l in [1, r-1] : l != floor(k r / s) for k = 1..s-1}.
std::vector<Int> case_a_components(const Int& r, const Int& s);

/// The pair on N / Z v_k induced on the divisor of ray k of a single-cone pair.
ToricPair boundary_divisor_pair(const ToricPair& pair, std::size_t k);

struct HJResolution {
    Fan fan;  // N-coordinates of the (1/r)(1,a) lattice
    LatticeBasis lattice;
    IntVec chain;  // -b_1, ..., -b_k
};

HJResolution hj_resolution(const Int& r, const Int& a);

enum class LedgerKind { extraction, flip, divisorial, coefficient_drop };
const char* to_string(LedgerKind k);

struct LedgerEntry {
    LedgerKind kind = LedgerKind::extraction;
    std::vector<LatticeVector> center;  // cone of the model the step acts on
    IndexSet base_face;                  // smallest face of the orthant of X under the center
    Int rank_delta;                      // stack rank before minus after
    std::vector<Int> components;         // explicit indices (coefficient drops)
};

struct McKayReport {
    GroupData group;
    Int order;
    bool sl = false;
    ToricPair x;
    std::vector<ExtractionStep> extractions;
    ToricPair terminal;
    std::vector<MmpStep> mmp_steps;
    ToricPair minimal;  // after the MMP, boundary carried
    ToricPair y;        // boundary dropped to 0
    std::vector<LedgerEntry> ledger;
    Int rank_x;
    Int rank_y;
    Int rank_delta_sum;
    bool rank_x_ok = false;     // stack_rank(X) = |G|
    bool telescope_ok = false;  // |G| = stack_rank(Y) + sum of deltas
    bool crepant_ok = true;     // SL: every extraction crepant and no MMP steps
};

McKayReport mckay_pipeline(const GroupData& g, std::optional<std::size_t> max_steps = std::nullopt);

}  // namespace toric
