#include "toric/mmp.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>

#include "toric/errors.hpp"
#include "toric/lp.hpp"

namespace toric {

namespace {

std::vector<LatticeVector> vectors_of(const Fan& fan, const IndexSet& idx) {
    std::vector<LatticeVector> out;
    for (auto i : idx) out.push_back(fan.ray(i));
    return out;
}

IndexSet indices_of(const Fan& fan, const std::vector<LatticeVector>& vs, const char* what) {
    IndexSet out;
    for (const auto& v : vs) {
        auto i = fan.ray_index(v);
        if (!i) throw InputError(std::string(what) + ": " + to_string(v) + " is not a ray of the fan");
        out.push_back(*i);
    }
    std::sort(out.begin(), out.end());
    return out;
}

IndexSet minus(const IndexSet& a, std::size_t i) {
    IndexSet out;
    for (auto x : a)
        if (x != i) out.push_back(x);
    return out;
}

IndexSet join(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool includes(const IndexSet& big, const IndexSet& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// Cones of the circuit Z = s_plus u s_minus around a wall: for each i in s_plus,
// the links L with (Z \ {i}) u L a maximal cone. Returns the common link set, or
// nullopt when the links differ.
std::optional<std::set<IndexSet>> common_link(const Fan& fan, const WallRelation& rel) {
    IndexSet z = join(rel.s_plus, rel.s_minus);
    std::optional<std::set<IndexSet>> common;
    for (auto i : rel.s_plus) {
        IndexSet face = minus(z, i);
        std::set<IndexSet> links;
        for (const auto& c : fan.cones()) {
            if (!includes(c, face)) continue;
            IndexSet l;
            std::set_difference(c.begin(), c.end(), face.begin(), face.end(), std::back_inserter(l));
            links.insert(l);
        }
        if (!common)
            common = links;
        else if (*common != links)
            return std::nullopt;
    }
    return common;
}

}  // namespace

WallRef wall_ref(const Fan& fan, const Wall& wall) {
    return {vectors_of(fan, wall.shared), fan.ray(wall.apex_a), fan.ray(wall.apex_b)};
}

RelationRef relation_ref(const Fan& fan, const WallRelation& rel) {
    return {vectors_of(fan, rel.ray_indices), rel.coeffs};
}

Wall find_wall(const Fan& fan, const WallRef& ref) {
    IndexSet shared = indices_of(fan, ref.shared, "wall");
    auto a = fan.ray_index(ref.apex_a), b = fan.ray_index(ref.apex_b);
    for (const auto& w : walls(fan)) {
        if (w.shared != shared) continue;
        if (a && b && ((w.apex_a == *a && w.apex_b == *b) || (w.apex_a == *b && w.apex_b == *a))) return w;
    }
    throw InputError("wall " + to_string(IntVec(shared.begin(), shared.end())) + " not found in the fan");
}

const char* to_string(MmpKind k) {
    return k == MmpKind::flip ? "flip" : "divisorial_contraction";
}

Fan bistellar_flip(const Fan& fan, const Wall& wall) {
    WallRelation rel = wall_relation(fan, wall);
    if (classify(rel).kind != ContractionKind::flipping)
        throw InputError(std::string("bistellar_flip: wall is ") + to_string(classify(rel).kind) + ", not flipping");
    auto links = common_link(fan, rel);
    if (!links || links->empty())
        throw InputError("bistellar_flip: circuit cones are not all present (not flippable in isolation)");
    IndexSet z = join(rel.s_plus, rel.s_minus);
    std::set<IndexSet> removed;
    for (auto i : rel.s_plus)
        for (const auto& l : *links) removed.insert(join(minus(z, i), l));
    std::vector<IndexSet> cones;
    for (const auto& c : fan.cones())
        if (!removed.count(c)) cones.push_back(c);
    for (auto j : rel.s_minus)
        for (const auto& l : *links) cones.push_back(join(minus(z, j), l));
    return Fan(fan.dim(), fan.rays(), std::move(cones));
}

Contraction divisorial_contract(const Fan& fan, const Wall& wall) {
    WallRelation rel = wall_relation(fan, wall);
    Classification cls = classify(rel);
    if (cls.kind != ContractionKind::divisorial)
        throw InputError(std::string("divisorial_contract: wall is ") + to_string(cls.kind) + ", not divisorial");
    const std::size_t j = cls.ray;
    auto links = common_link(fan, rel);
    if (!links || links->empty()) throw InputError("divisorial_contract: star of the ray does not match the circuit");
    IndexSet z = join(rel.s_plus, rel.s_minus);
    std::set<IndexSet> expected, star;
    for (auto i : rel.s_plus)
        for (const auto& l : *links) expected.insert(join(minus(z, i), l));
    for (const auto& c : fan.cones())
        if (std::binary_search(c.begin(), c.end(), j)) star.insert(c);
    if (star != expected)
        throw InputError("divisorial_contract: star of " + to_string(fan.ray(j)) +
                         " does not match the circuit (not extremal in isolation)");

    auto reindex = [j](std::size_t i) { return i > j ? i - 1 : i; };
    std::vector<LatticeVector> rays;
    for (std::size_t i = 0; i < fan.rays().size(); ++i)
        if (i != j) rays.push_back(fan.ray(i));
    std::vector<IndexSet> cones;
    auto push = [&](const IndexSet& c) {
        IndexSet r;
        for (auto i : c) r.push_back(reindex(i));
        cones.push_back(r);
    };
    for (const auto& c : fan.cones())
        if (!star.count(c)) push(c);
    for (const auto& l : *links) push(join(minus(z, j), l));

    IndexSet center;
    for (auto i : rel.s_plus) center.push_back(reindex(i));
    return Contraction{Fan(fan.dim(), std::move(rays), std::move(cones)), j, fan.ray(j), center};
}

HeightFunction find_ample_heights(const Fan& fan) {
    const std::size_t m = fan.rays().size();
    auto ws = walls(fan);
    HeightFunction h;
    if (ws.empty()) {
        h.values.assign(m, Rat(0));
        return h;
    }
    // variables: h_0..h_{m-1}, s ; maximize s
    LinearProgram lp;
    lp.num_vars = m + 1;
    lp.free_var.assign(m + 1, true);
    lp.objective.assign(m + 1, Rat(0));
    lp.objective[m] = 1;
    for (const auto& w : ws) {
        WallRelation rel = wall_relation(fan, w);
        RatVec row(m + 1, Rat(0));
        for (std::size_t k = 0; k < rel.ray_indices.size(); ++k) row[rel.ray_indices[k]] = rel.coeffs[k];
        row[m] = -1;
        lp.add(row, Sense::ge, Rat(0));
    }
    for (std::size_t i = 0; i < m; ++i) {
        RatVec row(m + 1, Rat(0));
        row[i] = 1;
        lp.add(row, Sense::le, Rat(1));
        lp.add(row, Sense::ge, Rat(-1));
    }
    RatVec cap(m + 1, Rat(0));
    cap[m] = 1;
    lp.add(cap, Sense::le, Rat(1));
    LpResult res = solve_lp(lp);
    if (res.status != LpStatus::optimal || res.value <= 0)
        throw InputError("fan is not projective (no strictly convex height function exists)");
    h.values.assign(res.x.begin(), res.x.begin() + static_cast<std::ptrdiff_t>(m));
    return h;
}

Fan regular_triangulation(std::size_t dim, const std::vector<LatticeVector>& rays, const RatVec& heights,
                          unsigned seed) {
    const std::size_t m = rays.size();
    if (heights.size() != m) throw InputError("regular_triangulation: one height per ray expected");
    if (m < dim) throw InputError("regular_triangulation: fewer rays than the dimension");
    for (const auto& r : rays)
        if (r.size() != dim) throw InputError("regular_triangulation: ray " + to_string(r) + " has wrong dimension");

    // Generic interior point of the support, then the lower-hull facet above it.
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coin(1, 997);
    RatVec p(dim, Rat(0));
    for (std::size_t i = 0; i < m; ++i) {
        Rat lambda(coin(rng), 1000);
        for (std::size_t k = 0; k < dim; ++k) p[k] += lambda * rays[i][k];
    }
    LinearProgram lp;
    lp.num_vars = m;
    for (auto h : heights) lp.objective.push_back(-h);
    for (std::size_t k = 0; k < dim; ++k) {
        RatVec row;
        for (std::size_t i = 0; i < m; ++i) row.push_back(Rat(rays[i][k]));
        lp.add(row, Sense::eq, p[k]);
    }
    LpResult res = solve_lp(lp);
    if (res.status != LpStatus::optimal)
        throw InputError("regular_triangulation: heights are unbounded below on the support");
    IndexSet start;
    for (std::size_t i = 0; i < m; ++i)
        if (res.basic[i] && res.x[i] > 0) start.push_back(i);
    if (start.size() != dim) throw InputError("regular_triangulation: non-generic heights (degenerate start facet)");

    auto matrix_of = [&](const IndexSet& c) {
        RatMatrix a;
        for (auto i : c) a.push_back(to_rat(rays[i]));
        return a;
    };

    std::set<IndexSet> done;
    std::deque<IndexSet> queue{start};
    done.insert(start);
    while (!queue.empty()) {
        IndexSet s = queue.front();
        queue.pop_front();
        auto inv = inverse(matrix_of(s));
        if (!inv) throw InputError("regular_triangulation: degenerate cone");
        // ell(x) = sum_k h_k * (x . column k of inv)
        RatVec ell(dim, Rat(0));
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t k = 0; k < dim; ++k) ell[r] += (*inv)[r][k] * heights[s[k]];
        for (std::size_t k = 0; k < dim; ++k) {
            RatVec nu(dim);
            for (std::size_t r = 0; r < dim; ++r) nu[r] = (*inv)[r][k];
            std::optional<std::size_t> best;
            Rat best_alpha;
            bool tie = false;
            for (std::size_t j = 0; j < m; ++j) {
                Rat side = dot(nu, rays[j]);
                if (side >= 0) continue;
                Rat alpha = (heights[j] - dot(ell, rays[j])) / side;
                if (!best || alpha > best_alpha) {
                    best = j;
                    best_alpha = alpha;
                    tie = false;
                } else if (alpha == best_alpha) {
                    tie = true;
                }
            }
            if (!best) continue;  // boundary facet of the support
            if (tie || best_alpha == 0)
                throw InputError("regular_triangulation: non-generic heights (zero wall defect)");
            if (best_alpha > 0) throw InvariantError("regular_triangulation: lost the lower hull");
            IndexSet next = minus(s, s[k]);
            next.push_back(*best);
            std::sort(next.begin(), next.end());
            if (done.insert(next).second) queue.push_back(next);
        }
    }
    std::vector<bool> used(m, false);
    for (const auto& c : done)
        for (auto i : c) used[i] = true;
    for (std::size_t i = 0; i < m; ++i)
        if (!used[i])
            throw InputError("regular_triangulation: ray " + to_string(rays[i]) + " is not on the lower hull");
    return Fan(dim, rays, std::vector<IndexSet>(done.begin(), done.end()));
}

std::size_t default_budget(std::size_t rays) {
    return 10 * rays * rays;
}

namespace {

struct Event {
    Wall wall;
    WallRelation rel;
    Rat d0;     // defect of h0
    Rat d1;     // defect of h1
    IntVec a;   // relation coefficients by ray index (perturbation of h1)
};

Int first_nonzero(const IntVec& v) {
    for (const auto& x : v)
        if (x != 0) return x;
    return 0;
}

// Event time of A before that of B, with h1 perturbed by delta^(i+1) at ray i.
bool earlier(const Event& A, const Event& B) {
    Rat c = B.d0 * A.d1 - A.d0 * B.d1;
    if (c != 0) return c < 0;
    for (std::size_t i = 0; i < A.a.size(); ++i) {
        Rat v = A.d0 * B.a[i] - B.d0 * A.a[i];
        if (v != 0) return v > 0;
    }
    return false;
}

Fan reorder_rays(const Fan& y, const Fan& x) {
    std::vector<std::size_t> to_x(y.rays().size());
    for (std::size_t i = 0; i < y.rays().size(); ++i) {
        auto j = x.ray_index(y.ray(i));
        if (!j) throw InputError("flop_decompose: ray sets differ");
        to_x[i] = *j;
    }
    std::vector<IndexSet> cones;
    for (const auto& c : y.cones()) {
        IndexSet r;
        for (auto i : c) r.push_back(to_x[i]);
        std::sort(r.begin(), r.end());
        cones.push_back(r);
    }
    return Fan(x.dim(), x.rays(), std::move(cones));
}

void require_ample(const Fan& fan, const HeightFunction& h, const char* which) {
    if (h.values.size() != fan.rays().size())
        throw InputError(std::string("flop_decompose: ") + which + " heights have the wrong length");
    for (const auto& w : walls(fan))
        if (defect(wall_relation(fan, w), h) <= 0)
            throw InputError(std::string("flop_decompose: ") + which + " heights are not strictly convex");
}

}  // namespace

std::vector<FlopStep> flop_decompose(const ToricPair& x, const ToricPair& y, std::optional<HeightFunction> ample_x,
                                     std::optional<HeightFunction> ample_y, std::optional<std::size_t> max_steps) {
    if (x.fan().dim() != y.fan().dim()) throw InputError("flop_decompose: dimension mismatch");
    auto kx = x.fan().support_kind(), ky = y.fan().support_kind();
    if (kx != ky || kx == SupportKind::other)
        throw InputError("flop_decompose: both fans must be complete or supported on the same cone");
    if (!k_equivalent(x, y)) throw InputError("flop_decompose: pairs are not K-equivalent");

    const Fan target = reorder_rays(y.fan(), x.fan());
    HeightFunction h0 = ample_x ? *ample_x : find_ample_heights(x.fan());
    require_ample(x.fan(), h0, "X");
    HeightFunction h1;
    if (ample_y) {
        require_ample(y.fan(), *ample_y, "Y");
        h1.values.assign(x.fan().rays().size(), Rat(0));
        for (std::size_t i = 0; i < y.fan().rays().size(); ++i)
            h1.values[*x.fan().ray_index(y.fan().ray(i))] = ample_y->values[i];
    } else {
        h1 = find_ample_heights(target);
    }
    const HeightFunction psi = psi_heights(x);
    const std::size_t m = x.fan().rays().size();
    const std::size_t budget = max_steps ? *max_steps : default_budget(m);

    Fan current = x.fan();
    std::vector<FlopStep> steps;
    std::optional<Event> prev;
    for (;;) {
        std::optional<Event> next;
        for (const auto& w : walls(current)) {
            Event e{w, wall_relation(current, w), 0, 0, IntVec(m, Int(0))};
            e.d1 = defect(e.rel, h1);
            for (std::size_t k = 0; k < e.rel.ray_indices.size(); ++k) e.a[e.rel.ray_indices[k]] = e.rel.coeffs[k];
            if (e.d1 > 0 || (e.d1 == 0 && first_nonzero(e.a) > 0)) continue;
            e.d0 = defect(e.rel, h0);
            if (!next || earlier(e, *next)) next = std::move(e);
        }
        if (!next) break;
        if (prev && earlier(*next, *prev)) throw InvariantError("flop_decompose: events out of order");
        if (steps.size() >= budget)
            throw BudgetExceeded("flop_decompose: step budget of " + std::to_string(budget) + " exceeded");
        Rat k = defect(next->rel, psi);
        if (k != 0)
            throw InvariantError("flop_decompose: event wall has nonzero psi-defect " + to_string(k));
        if (classify(next->rel).kind != ContractionKind::flipping)
            throw InputError(std::string("flop_decompose: event wall is ") + to_string(classify(next->rel).kind) +
                             " (inputs are not isomorphic in codimension one)");
        Rat denom = next->d0 - next->d1;
        FlopStep step{wall_ref(current, next->wall), relation_ref(current, next->rel),
                      denom == 0 ? Rat(1) : Rat(next->d0 / denom), k};
        try {
            current = bistellar_flip(current, next->wall);
        } catch (const InputError& e) {
            throw InvariantError(std::string("flop_decompose: event wall cannot be flipped: ") + e.what());
        }
        steps.push_back(std::move(step));
        prev = std::move(next);
    }
    if (!fans_equal(current, target)) throw InvariantError("flop_decompose: sweep did not reach the target fan");
    return steps;
}

namespace {

ToricPair apply_flip(const ToricPair& pair, const Wall& w) {
    return ToricPair(bistellar_flip(pair.fan(), w), pair.coeffs(), pair.lattice());
}

ToricPair apply_contraction(const ToricPair& pair, const Contraction& c) {
    RatVec coeffs = pair.coeffs();
    coeffs.erase(coeffs.begin() + static_cast<std::ptrdiff_t>(c.removed_index));
    return ToricPair(c.fan, std::move(coeffs), pair.lattice());
}

struct Candidate {
    Wall wall;
    WallRelation rel;
    Rat psi_defect;
    bool unbounded = false;  // ample defect <= 0
    Rat ratio;
    std::pair<LatticeVector, LatticeVector> apexes;
};

bool before(const Candidate& a, const Candidate& b) {
    if (a.unbounded != b.unbounded) return a.unbounded;
    if (!a.unbounded && a.ratio != b.ratio) return a.ratio > b.ratio;
    if (a.psi_defect != b.psi_defect) return a.psi_defect > b.psi_defect;
    return a.apexes < b.apexes;
}

}  // namespace

MmpResult relative_mmp(const ToricPair& pair, const std::optional<std::vector<LatticeVector>>& base,
                       std::optional<std::size_t> max_steps) {
    const Fan& fan = pair.fan();
    if (fan.support_kind() != SupportKind::cone)
        throw InputError("relative_mmp: the fan must be supported on a convex cone");
    if (base) {
        if (base->size() != fan.dim()) throw InputError("relative_mmp: base cone must be simplicial and full-dimensional");
        std::vector<LatticeVector> gens;
        IndexSet all;
        for (std::size_t i = 0; i < base->size(); ++i) {
            gens.push_back(primitive((*base)[i]));
            all.push_back(i);
        }
        if (!same_support(fan, Fan(fan.dim(), gens, {all})))
            throw InputError("relative_mmp: fan is not supported on the base cone");
    }
    const std::size_t budget = max_steps ? *max_steps : default_budget(fan.rays().size());

    ToricPair current = pair;
    std::optional<RatVec> scale;
    std::vector<MmpStep> steps;
    for (;;) {
        const Fan& f = current.fan();
        const HeightFunction psi = psi_heights(current);
        std::vector<Candidate> cands;
        for (const auto& w : walls(f)) {
            WallRelation rel = wall_relation(f, w);
            Rat d = defect(rel, psi);
            if (d <= 0) continue;
            if (!scale) scale = find_ample_heights(fan).values;
            Candidate c{w, rel, d, false, 0, {}};
            Rat da = defect(rel, HeightFunction{*scale});
            if (da <= 0)
                c.unbounded = true;
            else
                c.ratio = d / da;
            c.apexes = std::minmax(f.ray(w.apex_a), f.ray(w.apex_b));
            cands.push_back(std::move(c));
        }
        if (cands.empty()) break;
        if (steps.size() >= budget)
            throw BudgetExceeded("relative_mmp: step budget of " + std::to_string(budget) + " exceeded");
        std::sort(cands.begin(), cands.end(), before);

        bool done = false;
        for (const auto& c : cands) {
            Classification cls = classify(c.rel);
            if (cls.kind == ContractionKind::fiber)
                throw InputError("relative_mmp: K+B-negative wall of fiber type (not birational over the base)");
            MmpStep step;
            step.wall = wall_ref(f, c.wall);
            step.relation = relation_ref(f, c.rel);
            step.psi_defect = c.psi_defect;
            try {
                if (cls.kind == ContractionKind::flipping) {
                    step.kind = MmpKind::flip;
                    ToricPair next = apply_flip(current, c.wall);
                    current = std::move(next);
                } else {
                    step.kind = MmpKind::divisorial_contraction;
                    Contraction con = divisorial_contract(f, c.wall);
                    step.removed_ray = con.removed_ray;
                    step.center = vectors_of(con.fan, con.center);
                    ToricPair next = apply_contraction(current, con);
                    scale->erase(scale->begin() + static_cast<std::ptrdiff_t>(con.removed_index));
                    current = std::move(next);
                }
            } catch (const BudgetExceeded&) {
                throw;
            } catch (const InputError&) {
                continue;
            }
            steps.push_back(std::move(step));
            done = true;
            break;
        }
        if (!done) throw InvariantError("relative_mmp: no K+B-negative wall admits a flip or contraction");
    }
    if (!is_log_canonical_nef(current)) throw InvariantError("relative_mmp: result is not nef");
    return {current, steps};
}

TerminalizeResult terminalize(const ToricPair& pair, std::optional<std::size_t> max_steps) {
    ToricPair current = pair;
    std::vector<ExtractionStep> steps;
    for (;;) {
        auto low = low_discrepancy_points(current, Rat(1), false);
        if (low.empty()) break;
        const std::size_t budget = max_steps ? *max_steps : default_budget(current.fan().rays().size() + low.size());
        if (steps.size() >= budget)
            throw BudgetExceeded("terminalize: step budget of " + std::to_string(budget) + " exceeded");
        const auto& w = low.front();
        RatVec coeffs = current.coeffs();
        coeffs.push_back(Rat(0));
        current = ToricPair(star_subdivision(current.fan(), w.point), std::move(coeffs), current.lattice());
        steps.push_back({w.point, w.psi});
    }
    return {current, steps};
}

Fan replay_flops(const Fan& start, const std::vector<FlopStep>& steps) {
    Fan current = start;
    for (const auto& s : steps) current = bistellar_flip(current, find_wall(current, s.wall));
    return current;
}

ToricPair replay_mmp(const ToricPair& start, const std::vector<MmpStep>& steps) {
    ToricPair current = start;
    for (const auto& s : steps) {
        Wall w = find_wall(current.fan(), s.wall);
        if (s.kind == MmpKind::flip)
            current = apply_flip(current, w);
        else
            current = apply_contraction(current, divisorial_contract(current.fan(), w));
    }
    return current;
}

ToricPair replay_extractions(const ToricPair& start, const std::vector<ExtractionStep>& steps) {
    ToricPair current = start;
    for (const auto& s : steps) {
        RatVec coeffs = current.coeffs();
        coeffs.push_back(Rat(0));
        current = ToricPair(star_subdivision(current.fan(), s.ray), std::move(coeffs), current.lattice());
    }
    return current;
}

}  // namespace toric
