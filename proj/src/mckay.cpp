#include "toric/mckay.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "toric/errors.hpp"

namespace toric {

void validate(const GroupData& g) {
    if (g.n == 0) throw InputError("group: dimension must be at least 1");
    for (const auto& gen : g.gens) {
        if (gen.r < 1) throw InputError("group: generator order must be at least 1");
        if (gen.weights.size() != g.n)
            throw InputError("group: generator has " + std::to_string(gen.weights.size()) + " weights, expected " +
                             std::to_string(g.n));
        for (const auto& a : gen.weights)
            if (a < 0 || a >= gen.r)
                throw InputError("group: weight " + to_string(a) + " outside [0, " + to_string(gen.r) + ")");
    }
}

LatticeBasis group_lattice(const GroupData& g) {
    validate(g);
    std::vector<RatVec> gens;
    for (std::size_t i = 0; i < g.n; ++i) {
        RatVec e(g.n, Rat(0));
        e[i] = 1;
        gens.push_back(e);
    }
    for (const auto& gen : g.gens) {
        RatVec v;
        for (const auto& a : gen.weights) v.push_back(make_rat(a, gen.r));
        gens.push_back(v);
    }
    return LatticeBasis::from_generators(gens);
}

Int group_order(const GroupData& g) {
    Rat inv = 1 / group_lattice(g).covolume();
    if (inv.get_den() != 1) throw InvariantError("group order is not an integer");
    return inv.get_num();
}

bool is_sl(const GroupData& g) {
    validate(g);
    for (const auto& gen : g.gens) {
        Int s = 0;
        for (const auto& a : gen.weights) s += a;
        if (s % gen.r != 0) return false;
    }
    return true;
}

ToricPair quotient_pair(const GroupData& g) {
    LatticeBasis lat = group_lattice(g);
    std::vector<LatticeVector> rays;
    RatVec coeffs;
    IndexSet cone;
    for (std::size_t i = 0; i < g.n; ++i) {
        RatVec e(g.n, Rat(0));
        e[i] = 1;
        IntVec c = to_int(lat.coordinates(e));
        Int m = gcd_of(c);
        rays.push_back(primitive(c));
        coeffs.push_back(1 - make_rat(1, m));
        cone.push_back(i);
    }
    return ToricPair(Fan(g.n, rays, {cone}), coeffs, lat);
}

Int stack_rank(const ToricPair& pair) {
    const Fan& fan = pair.fan();
    std::vector<Int> orders;
    for (std::size_t i = 0; i < fan.rays().size(); ++i) {
        Int m = pair.standard_order(i);
        if (m == 0) throw InputError("stack_rank: coefficient " + to_string(pair.coeffs()[i]) + " is not standard");
        orders.push_back(m);
    }
    Int total = 0;
    for (const auto& c : fan.cones()) {
        IntMatrix a;
        for (auto i : c) {
            IntVec row = fan.ray(i);
            for (auto& x : row) x *= orders[i];
            a.push_back(row);
        }
        total += abs(determinant(a));
    }
    return total;
}

std::vector<Int> case_a_components(const Int& r, const Int& s) {
    if (s < 1 || r < 1) throw InputError("case_a_components: r and s must be positive");
    if (s > r) throw InputError("case_a_components: s exceeds r");
    std::set<Int> excluded;
    for (Int k = 1; k < s; ++k) excluded.insert(floor_div(k * r, s));
    std::vector<Int> out;
    for (Int l = 1; l < r; ++l)
        if (!excluded.count(l)) out.push_back(l);
    return out;
}

ToricPair boundary_divisor_pair(const ToricPair& pair, std::size_t k) {
    const Fan& fan = pair.fan();
    const std::size_t n = fan.dim();
    if (fan.cones().size() != 1) throw InputError("boundary_divisor_pair: fan must be a single cone");
    if (n < 2) throw InputError("boundary_divisor_pair: dimension must be at least 2");
    if (k >= fan.rays().size()) throw InputError("boundary_divisor_pair: no such ray");
    // v_k V = +-e_1, so coordinates x V split off the v_k direction.
    SmithResult snf = smith_normal_form(IntMatrix{fan.ray(k)});
    std::vector<LatticeVector> rays;
    RatVec coeffs;
    IndexSet cone;
    for (std::size_t i = 0; i < fan.rays().size(); ++i) {
        if (i == k) continue;
        Int m = pair.standard_order(i);
        if (m == 0)
            throw InputError("boundary_divisor_pair: coefficient " + to_string(pair.coeffs()[i]) + " is not standard");
        IntVec full = row_times(fan.ray(i), snf.v);
        IntVec image(full.begin() + 1, full.end());
        Int c = gcd_of(image);
        if (c == 0) throw InvariantError("boundary_divisor_pair: ray collapses in the quotient");
        rays.push_back(primitive(image));
        coeffs.push_back(1 - make_rat(1, c * m));
        cone.push_back(cone.size());
    }
    return ToricPair(Fan(n - 1, rays, {cone}), coeffs);
}

HJResolution hj_resolution(const Int& r, const Int& a) {
    if (!(0 < a && a < r)) throw InputError("hj_resolution: need 0 < a < r");
    Int g;
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t());
    if (g != 1) throw InputError("hj_resolution: gcd(r, a) must be 1");
    GroupData grp{2, {{r, {Int(1), a}}}};
    LatticeBasis lat = group_lattice(grp);

    // Lattice points of N in the unit square, ordered by x; their lower hull from
    // e2 to e1 (collinear points kept) is the compact boundary of the Newton polygon.
    std::vector<std::pair<Rat, Rat>> pts{{Rat(0), Rat(1)}};
    for (Int k = 1; k < r; ++k) pts.emplace_back(make_rat(k, r), frac(make_rat(k * a, r)));
    pts.emplace_back(Rat(1), Rat(0));
    std::vector<std::pair<Rat, Rat>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const auto& o = hull[hull.size() - 2];
            const auto& q = hull.back();
            Rat cross = (q.first - o.first) * (p.second - o.second) - (q.second - o.second) * (p.first - o.first);
            if (cross < 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    std::vector<LatticeVector> rays;
    for (const auto& [x, y] : hull) rays.push_back(to_int(lat.coordinates({x, y})));
    std::vector<IndexSet> cones;
    for (std::size_t i = 0; i + 1 < rays.size(); ++i) cones.push_back({i, i + 1});
    IntVec chain;
    for (std::size_t i = 1; i + 1 < rays.size(); ++i) {
        IntVec s{rays[i - 1][0] + rays[i + 1][0], rays[i - 1][1] + rays[i + 1][1]};
        std::size_t c = rays[i][0] != 0 ? 0 : 1;
        Int b = s[c] / rays[i][c];
        if (IntVec{b * rays[i][0], b * rays[i][1]} != s || b < 2)
            throw InvariantError("hj_resolution: boundary chain is not a resolution chain");
        chain.push_back(-b);
    }
    Fan fan(2, rays, cones);
    for (std::size_t c = 0; c < fan.cones().size(); ++c)
        if (abs(determinant(fan.cone_rays(c))) != 1) throw InvariantError("hj_resolution: cone is not unimodular");
    return {fan, lat, chain};
}

const char* to_string(LedgerKind k) {
    switch (k) {
        case LedgerKind::extraction: return "extraction";
        case LedgerKind::flip: return "flip";
        case LedgerKind::divisorial: return "divisorial";
        case LedgerKind::coefficient_drop: return "coefficient_drop";
    }
    return "extraction";
}

namespace {

std::vector<LatticeVector> face_vectors(const Fan& fan, const IndexSet& face) {
    std::vector<LatticeVector> out;
    for (auto i : face) out.push_back(fan.ray(i));
    return out;
}

RatVec vector_sum(const std::vector<LatticeVector>& vs, std::size_t n) {
    RatVec p(n, Rat(0));
    for (const auto& v : vs)
        for (std::size_t k = 0; k < n; ++k) p[k] += v[k];
    return p;
}

}  // namespace

McKayReport mckay_pipeline(const GroupData& g, std::optional<std::size_t> max_steps) {
    validate(g);
    const std::size_t n = g.n;
    const ToricPair x0 = quotient_pair(g);
    McKayReport rep{g, group_order(g), is_sl(g), x0, {}, x0, {}, x0, x0, {}, 0, 0, 0};
    const ToricPair& x = rep.x;
    auto base_face = [&](const RatVec& p) {
        auto f = carrier_face(x.fan(), 0, p);
        if (!f) throw InvariantError("mckay_pipeline: center lies outside the orthant of X");
        return *f;
    };
    rep.rank_x = stack_rank(x);
    rep.rank_x_ok = rep.rank_x == rep.order;

    TerminalizeResult term = terminalize(x, max_steps);
    rep.extractions = term.steps;
    ToricPair cur = x;
    for (const auto& step : term.steps) {
        RatVec p = to_rat(step.ray);
        Location loc = locate(cur.fan(), p);
        IndexSet face = *carrier_face(cur.fan(), loc.cone, p);
        ToricPair next = replay_extractions(cur, {step});
        rep.ledger.push_back({LedgerKind::extraction, face_vectors(cur.fan(), face), base_face(p),
                              stack_rank(cur) - stack_rank(next), {}});
        cur = std::move(next);
    }
    rep.terminal = term.pair;

    MmpResult mmp = relative_mmp(term.pair, x.fan().rays(), max_steps);
    rep.mmp_steps = mmp.steps;
    cur = term.pair;
    for (const auto& step : mmp.steps) {
        std::vector<LatticeVector> center = step.kind == MmpKind::flip ? step.relation.rays : step.center;
        ToricPair next = replay_mmp(cur, {step});
        rep.ledger.push_back({step.kind == MmpKind::flip ? LedgerKind::flip : LedgerKind::divisorial, center,
                              base_face(vector_sum(center, n)), stack_rank(cur) - stack_rank(next), {}});
        cur = std::move(next);
    }
    rep.minimal = mmp.pair;

    for (std::size_t i = 0; i < cur.fan().rays().size(); ++i) {
        Int m = cur.standard_order(i);
        if (m <= 1) continue;
        RatVec coeffs = cur.coeffs();
        coeffs[i] = 0;
        ToricPair next(cur.fan(), coeffs, cur.lattice());
        std::vector<LatticeVector> center{cur.fan().ray(i)};
        rep.ledger.push_back({LedgerKind::coefficient_drop, center, base_face(to_rat(center[0])),
                              stack_rank(cur) - stack_rank(next), case_a_components(m, 1)});
        cur = std::move(next);
    }
    rep.y = cur;

    rep.rank_y = stack_rank(rep.y);
    for (const auto& e : rep.ledger) rep.rank_delta_sum += e.rank_delta;
    rep.telescope_ok = rep.order == rep.rank_y + rep.rank_delta_sum;
    if (rep.sl) {
        rep.crepant_ok = rep.mmp_steps.empty();
        for (const auto& s : rep.extractions)
            if (s.psi_before != 1) rep.crepant_ok = false;
    }
    return rep;
}

}  // namespace toric
