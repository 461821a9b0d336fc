#include "toric/pair.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "toric/errors.hpp"

namespace toric {

ToricPair::ToricPair(Fan fan, RatVec coeffs)
    : ToricPair(std::move(fan), std::move(coeffs), LatticeBasis()) {}

ToricPair::ToricPair(Fan fan, RatVec coeffs, LatticeBasis lattice)
    : fan_(std::move(fan)), coeffs_(std::move(coeffs)), lattice_(std::move(lattice)) {
    if (lattice_.dim() == 0) lattice_ = LatticeBasis::standard(fan_.dim());
    if (lattice_.dim() != fan_.dim()) throw InputError("pair: lattice dimension differs from fan dimension");
    if (coeffs_.size() != fan_.rays().size())
        throw InputError("pair: expected " + std::to_string(fan_.rays().size()) + " coefficients, got " +
                         std::to_string(coeffs_.size()));
    for (const auto& d : coeffs_)
        if (d < 0 || d >= 1) throw InputError("pair: coefficient " + to_string(d) + " outside [0,1)");
}

Int ToricPair::standard_order(std::size_t ray) const {
    Rat m = 1 / (1 - coeffs_.at(ray));
    if (m.get_den() != 1) return 0;
    return m.get_num();
}

HeightFunction psi_heights(const ToricPair& pair) {
    HeightFunction h;
    for (const auto& d : pair.coeffs()) h.values.push_back(1 - d);
    return h;
}

Rat linear_extension(const Fan& fan, std::size_t cone, const HeightFunction& h, const RatVec& p) {
    RatVec lam = fan.barycentric(cone, p);
    Rat s = 0;
    for (std::size_t k = 0; k < lam.size(); ++k) s += lam[k] * h.values.at(fan.cone(cone)[k]);
    return s;
}

Rat pl_eval(const Fan& fan, const HeightFunction& h, const RatVec& p) {
    Location loc = locate(fan, p);
    Rat s = 0;
    for (std::size_t k = 0; k < loc.barycentric.size(); ++k)
        s += loc.barycentric[k] * h.values.at(fan.cone(loc.cone)[k]);
    return s;
}

std::vector<DiscrepancyWitness> low_discrepancy_points(const ToricPair& pair, const Rat& bound, bool strict) {
    const Fan& fan = pair.fan();
    const HeightFunction psi = psi_heights(pair);
    const std::size_t n = fan.dim();
    std::map<LatticeVector, DiscrepancyWitness> found;
    auto within = [&](const Rat& v) { return strict ? v < bound : v <= bound; };

    for (std::size_t c = 0; c < fan.cones().size(); ++c) {
        const auto rays = fan.cone_rays(c);
        RatVec weights;
        for (auto i : fan.cone(c)) weights.push_back(psi.values[i]);
        std::vector<RatVec> bases{RatVec(n, 0)};
        for (auto& b : box_points(rays)) bases.push_back(std::move(b.barycentric));

        for (const auto& t : bases) {
            Rat base_psi = 0;
            for (std::size_t k = 0; k < n; ++k) base_psi += t[k] * weights[k];
            RatVec coef = t;
            // Add nonnegative integers to the barycentric coordinates while psi stays in range.
            std::function<void(std::size_t, const Rat&)> rec = [&](std::size_t k, const Rat& acc) {
                if (k == n) {
                    RatVec p = row_times(coef, to_rat(rays));
                    LatticeVector q = to_int(p);
                    if (gcd_of(q) != 1 || fan.ray_index(q)) return;
                    if (found.count(q)) return;
                    found.emplace(q, DiscrepancyWitness{q, acc, c});
                    return;
                }
                Rat value = acc;
                Rat saved = coef[k];
                while (within(value)) {
                    rec(k + 1, value);
                    coef[k] += 1;
                    value += weights[k];
                }
                coef[k] = saved;
            };
            if (within(base_psi)) rec(0, base_psi);
        }
    }
    std::vector<DiscrepancyWitness> out;
    for (auto& [_, w] : found) out.push_back(std::move(w));
    std::stable_sort(out.begin(), out.end(),
                     [](const DiscrepancyWitness& a, const DiscrepancyWitness& b) { return a.psi < b.psi; });
    return out;
}

bool is_terminal(const ToricPair& pair) {
    return low_discrepancy_points(pair, Rat(1), false).empty();
}

bool is_canonical(const ToricPair& pair) {
    return low_discrepancy_points(pair, Rat(1), true).empty();
}

namespace {

// Ray index map from x's rays to y's rays, or nullopt when the vector sets differ.
std::optional<std::vector<std::size_t>> ray_bijection(const Fan& x, const Fan& y) {
    if (x.rays().size() != y.rays().size()) return std::nullopt;
    std::vector<std::size_t> map;
    for (const auto& r : x.rays()) {
        auto j = y.ray_index(r);
        if (!j) return std::nullopt;
        map.push_back(*j);
    }
    return map;
}

}  // namespace

bool k_equivalent(const ToricPair& x, const ToricPair& y) {
    if (x.fan().dim() != y.fan().dim() || !(x.lattice() == y.lattice())) return false;
    auto map = ray_bijection(x.fan(), y.fan());
    if (!map) return false;
    for (std::size_t i = 0; i < map->size(); ++i)
        if (x.coeffs()[i] != y.coeffs()[(*map)[i]]) return false;
    if (!same_support(x.fan(), y.fan())) throw InputError("k_equivalent: supports differ");

    const HeightFunction px = psi_heights(x), py = psi_heights(y);
    for (std::size_t a = 0; a < x.fan().cones().size(); ++a)
        for (std::size_t b = 0; b < y.fan().cones().size(); ++b) {
            auto p = interior_intersection_point(x.fan(), a, y.fan(), b);
            if (!p) continue;
            if (linear_extension(x.fan(), a, px, *p) != linear_extension(y.fan(), b, py, *p)) return false;
        }
    return true;
}

const char* to_string(KOrder k) {
    switch (k) {
        case KOrder::equal: return "equal";
        case KOrder::x_ge_y: return "X_ge_Y";
        case KOrder::y_ge_x: return "Y_ge_X";
        case KOrder::incomparable: return "incomparable";
    }
    return "incomparable";
}

KOrder k_compare(const ToricPair& x, const ToricPair& y) {
    if (x.fan().dim() != y.fan().dim()) throw InputError("k_compare: dimension mismatch");
    if (!(x.lattice() == y.lattice())) throw InputError("k_compare: pairs live on different lattices");
    if (!same_support(x.fan(), y.fan())) throw InputError("k_compare: supports differ");
    const HeightFunction px = psi_heights(x), py = psi_heights(y);
    bool some_less = false, some_greater = false;  // psi_X vs psi_Y
    for (std::size_t a = 0; a < x.fan().cones().size(); ++a)
        for (std::size_t b = 0; b < y.fan().cones().size(); ++b) {
            if (!interior_intersection_point(x.fan(), a, y.fan(), b)) continue;
            for (const auto& r : intersection_extreme_rays(x.fan(), a, y.fan(), b)) {
                RatVec p = to_rat(r);
                Rat vx = linear_extension(x.fan(), a, px, p);
                Rat vy = linear_extension(y.fan(), b, py, p);
                if (vx < vy) some_less = true;
                if (vx > vy) some_greater = true;
            }
        }
    if (!some_less && !some_greater) return KOrder::equal;
    if (some_less && some_greater) return KOrder::incomparable;
    // psi_X <= psi_Y everywhere  <=>  K_X+B >= K_Y+C
    return some_less ? KOrder::x_ge_y : KOrder::y_ge_x;
}

bool is_nef(const Fan& fan, const HeightFunction& h) {
    for (const auto& w : walls(fan))
        if (defect(wall_relation(fan, w), h) < 0) return false;
    return true;
}

bool is_log_canonical_nef(const ToricPair& pair) {
    const HeightFunction psi = psi_heights(pair);
    for (const auto& w : walls(pair.fan()))
        if (defect(wall_relation(pair.fan(), w), psi) > 0) return false;
    return true;
}

}  // namespace toric
