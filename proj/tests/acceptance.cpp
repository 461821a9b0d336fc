// Acceptance suite: one PASS/FAIL line per criterion. Usage: acceptance [1-9|all]...

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <string>

#include "generators.hpp"
#include "oracles.hpp"
#include "toric/errors.hpp"
#include "toric/json_io.hpp"
#include "toric/mckay.hpp"
#include "toric/mmp.hpp"

using namespace toric;

namespace {

struct Tally {
    std::string name;
    long cases = 0;
    long failures = 0;
    std::string first_failure;

    void check(bool ok, const std::string& what) {
        ++cases;
        if (ok) return;
        if (failures++ == 0) first_failure = what;
    }
    bool ok() const { return failures == 0; }
    void print() const {
        std::cout << "  " << name << ": " << cases - failures << "/" << cases;
        if (!ok()) std::cout << " (first failure: " << first_failure << ")";
        std::cout << "\n";
    }
};

ToricPair plain(const Fan& f) {
    return ToricPair(f, RatVec(f.rays().size(), Rat(0)));
}

GroupData cyclic(long r, const std::vector<long>& w) {
    IntVec a;
    for (auto x : w) a.push_back(Int(x));
    return {w.size(), {{Int(r), a}}};
}

std::string tuple_text(long r, const std::vector<long>& w) {
    std::string s = "1/" + std::to_string(r) + "(";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
    return s + ")";
}

/// All weight tuples (a_1..a_n) in [0, r)^n.
void for_tuples(std::size_t n, long r, const std::function<void(const std::vector<long>&)>& f) {
    std::vector<long> w(n, 0);
    for (;;) {
        f(w);
        std::size_t k = 0;
        while (k < n && ++w[k] == r) w[k++] = 0;
        if (k == n) return;
    }
}

bool has_cones(const Fan& fan, const std::set<std::set<LatticeVector>>& cones) {
    std::set<std::set<LatticeVector>> mine;
    for (std::size_t c = 0; c < fan.cones().size(); ++c) {
        auto rs = fan.cone_rays(c);
        mine.insert({rs.begin(), rs.end()});
    }
    for (const auto& c : cones)
        if (!mine.count(c)) return false;
    return true;
}

gen::FlopCase corpus_case(unsigned seed) {
    return gen::flop_case(seed, 3 + seed % 2);
}

bool criterion1() {
    const std::vector<LatticeVector> rays{{0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
    Fan x(3, rays, {{0, 1, 2}, {0, 2, 3}});
    Fan y(3, rays, {{0, 1, 3}, {1, 2, 3}});
    Tally t{"Atiyah flop"};
    t.check(k_equivalent(plain(x), plain(y)), "k_equivalent");
    auto steps = flop_decompose(plain(x), plain(y));
    t.check(steps.size() == 1, "exactly one flop");
    t.check(!steps.empty() && steps[0].k_defect_check == 0, "k_defect_check = 0");
    t.check(fans_equal(replay_flops(x, steps), y), "endpoint fans equal");
    t.print();
    return t.ok();
}

bool criterion2() {
    Tally t{"flop decompositions"}, kinds{"steps flipping with zero psi-defect"};
    for (unsigned seed = 0; seed < 100; ++seed) {
        gen::FlopCase fc = corpus_case(seed);
        std::string tag = "seed " + std::to_string(seed);
        try {
            auto steps = flop_decompose(plain(fc.x), plain(fc.y));
            t.check(fans_equal(replay_flops(fc.x, steps), fc.y), tag + ": final fan differs");
            for (const auto& s : steps) {
                long pos = 0, neg = 0;
                for (const auto& a : s.relation.coeffs) (a > 0 ? pos : neg) += a != 0;
                kinds.check(pos >= 2 && neg >= 2 && s.k_defect_check == 0, tag);
            }
        } catch (const std::exception& e) {
            t.check(false, tag + ": " + e.what());
        }
    }
    t.print();
    kinds.print();
    return t.ok() && kinds.ok();
}

bool criterion3() {
    Tally one{"walls with g_Y-defect <= 0 are absent from Y"}, two{"walls absent from Y have psi-defect 0"};
    for (unsigned seed = 0; seed < 100; ++seed) {
        gen::FlopCase fc = corpus_case(seed);
        std::string tag = "seed " + std::to_string(seed);
        HeightFunction gy = find_ample_heights(fc.y);
        HeightFunction g;
        for (const auto& v : fc.x.rays()) g.values.push_back(gy.values[*fc.y.ray_index(v)]);
        HeightFunction psi = psi_heights(plain(fc.x));
        for (const auto& w : walls(fc.x)) {
            auto rel = wall_relation(fc.x, w);
            std::set<LatticeVector> a, b;
            for (auto i : w.shared) a.insert(fc.x.ray(i)), b.insert(fc.x.ray(i));
            a.insert(fc.x.ray(w.apex_a));
            b.insert(fc.x.ray(w.apex_b));
            bool present = has_cones(fc.y, {a, b});
            if (defect(rel, g) <= 0) one.check(!present, tag);
            if (!present) two.check(defect(rel, psi) == 0, tag);
        }
    }
    one.print();
    two.print();
    return one.ok() && two.ok() && one.cases > 0 && two.cases > 0;
}

bool criterion4() {
    Tally rank_x{"|G| = stack_rank(X)"}, tele{"|G| = stack_rank(Y) + sum rank_delta"};
    for (std::size_t n : {2u, 3u})
        for (long r = 1; r <= 12; ++r)
            for_tuples(n, r, [&](const std::vector<long>& w) {
                std::string tag = tuple_text(r, w);
                try {
                    McKayReport rep = mckay_pipeline(cyclic(r, w));
                    rank_x.check(rep.rank_x_ok, tag);
                    tele.check(rep.telescope_ok, tag);
                } catch (const std::exception& e) {
                    rank_x.check(false, tag + ": " + e.what());
                }
            });
    rank_x.print();
    tele.print();
    return rank_x.ok() && tele.ok();
}

bool criterion5() {
    Tally crep{"SL: crepant extractions and no MMP steps"}, smooth{"SL with smooth Y: #cones = |G|"};
    for (std::size_t n : {2u, 3u})
        for (long r = 1; r <= 12; ++r)
            for_tuples(n, r, [&](const std::vector<long>& w) {
                if (std::accumulate(w.begin(), w.end(), 0L) % r != 0) return;
                std::string tag = tuple_text(r, w);
                McKayReport rep = mckay_pipeline(cyclic(r, w));
                bool ok = rep.mmp_steps.empty();
                for (const auto& s : rep.extractions) ok = ok && s.psi_before == 1;
                crep.check(ok, tag);
                const Fan& y = rep.y.fan();
                bool is_smooth = true;
                for (std::size_t c = 0; c < y.cones().size(); ++c)
                    is_smooth = is_smooth && abs(determinant(y.cone_rays(c))) == 1;
                for (const auto& d : rep.y.coeffs()) is_smooth = is_smooth && d == 0;
                if (is_smooth) smooth.check(Int(y.cones().size()) == rep.order, tag);
            });
    crep.print();
    smooth.print();
    return crep.ok() && smooth.ok();
}

bool criterion6() {
    Tally same{"hj_resolution = relative_mmp(terminalize(X))"}, chain{"chain entries b_i >= 2"},
        count{"sum(b_i - 1) + 1 = #maximal cones"};
    for (long r = 2; r <= 30; ++r)
        for (long a = 1; a < r; ++a) {
            if (std::gcd(r, a) != 1) continue;
            std::string tag = tuple_text(r, {1, a});
            HJResolution h = hj_resolution(r, a);
            ToricPair x = quotient_pair(cyclic(r, {1, a}));
            ToricPair t = terminalize(x).pair;
            ToricPair m = relative_mmp(t, x.fan().rays()).pair;
            same.check(m.lattice() == h.lattice && fans_equal(m.fan(), h.fan), tag);
            Int sum = 0;
            bool ge2 = true;
            for (const auto& e : h.chain) {
                ge2 = ge2 && -e >= 2;
                sum += -e - 1;
            }
            chain.check(ge2, tag);
            count.check(sum + 1 == Int(h.fan.cones().size()),
                        tag + ": sum(b_i - 1) + 1 = " + sum.get_str() + " + 1, cones = " +
                            std::to_string(h.fan.cones().size()));
        }
    same.print();
    chain.print();
    count.print();
    return same.ok() && chain.ok() && count.ok();
}

bool criterion7() {
    Tally t{"|case_a_components(r, s)| = r - s"};
    for (long r = 1; r <= 50; ++r)
        for (long s = 1; s <= r; ++s)
            t.check(Int(case_a_components(r, s).size()) == r - s, "r=" + std::to_string(r) + " s=" + std::to_string(s));
    t.print();
    return t.ok();
}

bool criterion8() {
    Tally term{"is_terminal vs lattice-point scan"}, box{"box points vs parallelepiped scan"},
        tri{"regular_triangulation vs lower-hull enumeration"};
    std::mt19937 rng(2024);
    const std::vector<Rat> coeffs{Rat(0), Rat(0), Rat(0), Rat(1, 2), Rat(2, 3)};
    long terminal_seen = 0;
    while (term.cases < 200) {
        std::size_t n = 2 + term.cases % 2;
        std::uniform_int_distribution<std::size_t> pick(0, coeffs.size() - 1);
        std::optional<ToricPair> made;
        std::vector<LatticeVector> rays;
        if (term.cases % 4 < 2) {
            // Random integer cone in Z^n.
            std::uniform_int_distribution<int> entry(n == 2 ? -8 : -4, n == 2 ? 8 : 4);
            for (std::size_t i = 0; i < n; ++i) {
                LatticeVector v;
                for (std::size_t k = 0; k < n; ++k) v.push_back(Int(entry(rng)));
                rays.push_back(v);
            }
            Int index = abs(determinant(IntMatrix(rays.begin(), rays.end())));
            if (index == 0 || index > 60) continue;
            bool prim = true;
            for (const auto& v : rays) prim = prim && gcd_of(v) == 1;
            if (!prim) continue;
            IndexSet cone(n);
            std::iota(cone.begin(), cone.end(), 0);
            RatVec d;
            for (std::size_t i = 0; i < n; ++i) d.push_back(coeffs[pick(rng)]);
            made.emplace(Fan(n, rays, {cone}), d);
        } else {
            // Orthant cone of a cyclic quotient, in the coordinates of its lattice;
            // every other 3-dimensional one is of the form 1/r(a, -a, b).
            std::uniform_int_distribution<long> order(2, 60);
            long r = order(rng);
            std::uniform_int_distribution<long> weight(0, r - 1);
            std::vector<long> w;
            for (std::size_t i = 0; i < n; ++i) w.push_back(weight(rng));
            if (n == 3 && term.cases % 8 == 7) w[1] = (r - w[0]) % r;
            ToricPair q = quotient_pair(cyclic(r, w));
            made.emplace(q.fan(), RatVec(n, Rat(0)));
            rays = q.fan().rays();
        }
        const ToricPair& pair = *made;
        Int index = abs(determinant(IntMatrix(rays.begin(), rays.end())));
        std::string tag = "cone " + std::to_string(term.cases);
        bool brute = oracle::low_points(pair, 1, false).empty();
        terminal_seen += brute;
        term.check(is_terminal(pair) == brute, tag);
        auto pts = box_points(rays);
        box.check(Int(pts.size()) + 1 == index && pts.size() + 1 == oracle::parallelepiped_points(rays).size(), tag);
    }
    long hull_complete = 0;
    for (int k = 0; k < 100; ++k) {
        std::size_t dim = 2 + k % 2;
        std::uniform_int_distribution<std::size_t> count(dim + 1, dim == 2 ? 7 : 8);
        auto rays = gen::height_one_rays(rng, dim, count(rng), dim == 2 ? 3 : 2);
        // Alternate generic paraboloid heights with arbitrary ones that may leave rays off the hull.
        RatVec h = gen::paraboloid_heights(rng, rays);
        std::uniform_int_distribution<int> height(0, 30000);
        if (k % 4 >= 2)
            for (auto& x : h) x = Rat(height(rng), 10000);
        auto cells = oracle::lower_hull_cells(dim, rays, h);
        std::set<std::set<LatticeVector>> brute;
        std::set<LatticeVector> used;
        for (const auto& s : cells) {
            std::set<LatticeVector> vs;
            for (auto i : s) vs.insert(rays[i]), used.insert(rays[i]);
            brute.insert(vs);
        }
        std::string tag = "triangulation " + std::to_string(k);
        hull_complete += used.size() == rays.size();
        try {
            Fan f = regular_triangulation(dim, rays, h);
            tri.check(used.size() == rays.size() && has_cones(f, brute) && f.cones().size() == brute.size(), tag);
        } catch (const InputError&) {
            tri.check(used.size() != rays.size(), tag + ": rejected although every ray is on the lower hull");
        }
    }
    term.print();
    std::cout << "    (" << terminal_seen << " terminal, " << term.cases - terminal_seen << " not terminal)\n";
    box.print();
    tri.print();
    std::cout << "    (" << hull_complete << " with every ray on the lower hull, " << 100 - hull_complete
              << " correctly rejected)\n";
    return term.ok() && box.ok() && tri.ok();
}

std::string dump(const Fan& f) {
    return fan_to_json(f).dump();
}

bool criterion9() {
    Tally flops{"flop steps replayed from JSON"}, mckay{"McKay pipeline replayed from JSON"},
        mmp{"MMP steps replayed from JSON"}, rerun{"re-runs are byte-identical"};
    for (unsigned seed = 0; seed < 20; ++seed) {
        gen::FlopCase fc = corpus_case(seed);
        auto steps = flop_decompose(plain(fc.x), plain(fc.y));
        Json j = Json::array();
        for (const auto& s : steps) j.push_back(to_json(s));
        auto parsed = flop_steps_from_json(parse_json(j.dump()));
        Fan a = replay_flops(fc.x, steps), b = replay_flops(fc.x, parsed);
        flops.check(dump(a) == dump(b) && fans_equal(b, fc.y), "seed " + std::to_string(seed));
    }
    for (const auto& [r, w] : std::vector<std::pair<long, std::vector<long>>>{
             {3, {1, 1, 1}}, {5, {1, 2, 3}}, {7, {1, 2, 4}}, {12, {1, 5, 6}}, {9, {1, 1, 7}}, {7, {1, 3}}, {6, {0, 1, 1}}}) {
        std::string tag = tuple_text(r, w);
        McKayReport rep = mckay_pipeline(cyclic(r, w));
        Json jr = to_json(rep);
        std::string text = jr.dump();
        Json back = parse_json(text);
        ToricPair x = pair_from_json(back["x"]);
        ToricPair t = replay_extractions(x, extraction_steps_from_json(back["extractions"]));
        ToricPair m = replay_mmp(t, mmp_steps_from_json(back["mmp_steps"]));
        mckay.check(dump(t.fan()) == dump(rep.terminal.fan()) && dump(m.fan()) == dump(rep.minimal.fan()) &&
                        pair_to_json(m).dump() == back["minimal"].dump(),
                    tag);
        rerun.check(to_json(mckay_pipeline(cyclic(r, w))).dump() == text, tag);
    }
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> coord(0, 3);
    for (int k = 0; k < 20; ++k) {
        std::size_t n = 2 + k % 2;
        std::vector<LatticeVector> rays;
        IndexSet cone;
        for (std::size_t i = 0; i < n; ++i) {
            LatticeVector e(n, Int(0));
            e[i] = 1;
            rays.push_back(e);
            cone.push_back(i);
        }
        Fan f(n, rays, {cone});
        for (int b = 0; b < 1 + k % 4;) {
            LatticeVector v;
            for (std::size_t i = 0; i < n; ++i) v.push_back(Int(coord(rng)));
            if (gcd_of(v) != 1 || f.ray_index(v)) continue;
            f = star_subdivision(f, v);
            ++b;
        }
        ToricPair start = plain(f);
        MmpResult res = relative_mmp(start);
        Json j = Json::array();
        for (const auto& s : res.steps) j.push_back(to_json(s));
        ToricPair again = replay_mmp(start, mmp_steps_from_json(parse_json(j.dump())));
        mmp.check(pair_to_json(again).dump() == pair_to_json(res.pair).dump(), "blow-up case " + std::to_string(k));
    }
    flops.print();
    mckay.print();
    mmp.print();
    rerun.print();
    return flops.ok() && mckay.ok() && mmp.ok() && rerun.ok();
}

const std::map<int, std::pair<const char*, bool (*)()>> kCriteria{
    {1, {"Atiyah flop", criterion1}},
    {2, {"flop decomposition property suite", criterion2}},
    {3, {"wall crossing properties", criterion3}},
    {4, {"McKay rank conservation", criterion4}},
    {5, {"SL crepant check", criterion5}},
    {6, {"dimension-2 cross-validation", criterion6}},
    {7, {"case (a) component count", criterion7}},
    {8, {"oracle equivalences", criterion8}},
    {9, {"determinism and replay", criterion9}},
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "all") continue;
        int k = std::atoi(a.c_str());
        if (!kCriteria.count(k)) {
            std::cerr << "unknown criterion " << a << "\n";
            return 2;
        }
        selected.push_back(k);
    }
    if (selected.empty())
        for (const auto& [k, _] : kCriteria) selected.push_back(k);
    bool all = true;
    for (int k : selected) {
        const auto& [name, run] = kCriteria.at(k);
        auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = run();
        } catch (const std::exception& e) {
            std::cout << "  exception: " << e.what() << "\n";
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << k << " (" << name << ", " << std::fixed
                  << std::setprecision(2) << secs << " s)\n";
        all = all && ok;
    }
    return all ? 0 : 1;
}
