#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "toric/errors.hpp"
#include "toric/mckay.hpp"
#include "toric/mmp.hpp"

using namespace toric;

namespace {

const std::vector<LatticeVector> kAtiyahRays{{0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};

Fan atiyah_x() {
    return Fan(3, kAtiyahRays, {{0, 1, 2}, {0, 2, 3}});
}

Fan atiyah_y() {
    return Fan(3, kAtiyahRays, {{0, 1, 3}, {1, 2, 3}});
}

Fan orthant(std::size_t n) {
    std::vector<LatticeVector> rays;
    IndexSet cone;
    for (std::size_t i = 0; i < n; ++i) {
        LatticeVector e(n, Int(0));
        e[i] = 1;
        rays.push_back(e);
        cone.push_back(i);
    }
    return Fan(n, rays, {cone});
}

ToricPair plain(const Fan& f) {
    return ToricPair(f, RatVec(f.rays().size(), Rat(0)));
}

std::set<std::set<LatticeVector>> cone_vectors(const Fan& f) {
    std::set<std::set<LatticeVector>> out;
    for (std::size_t c = 0; c < f.cones().size(); ++c) {
        auto rs = f.cone_rays(c);
        out.insert({rs.begin(), rs.end()});
    }
    return out;
}

std::map<LatticeVector, Int> relation_map(const RelationRef& r) {
    std::map<LatticeVector, Int> m;
    for (std::size_t i = 0; i < r.rays.size(); ++i) m[r.rays[i]] = r.coeffs[i];
    return m;
}

/// Random star subdivisions of the positive orthant.
Fan random_blowups(std::mt19937& rng, std::size_t n, int count) {
    std::uniform_int_distribution<int> coord(0, 3);
    Fan f = orthant(n);
    for (int k = 0; k < count;) {
        LatticeVector v;
        for (std::size_t i = 0; i < n; ++i) v.push_back(Int(coord(rng)));
        if (gcd_of(v) != 1 || f.ray_index(v)) continue;
        f = star_subdivision(f, v);
        ++k;
    }
    return f;
}

}  // namespace

TEST_CASE("bistellar flips") {
    Fan x = atiyah_x();
    Fan y = bistellar_flip(x, walls(x).at(0));
    CHECK(fans_equal(y, atiyah_y()));
    CHECK(fans_equal(bistellar_flip(y, walls(y).at(0)), x));

    Fan b(2, {{1, 0}, {0, 1}, {1, 1}}, {{0, 2}, {1, 2}});
    CHECK_THROWS_AS(bistellar_flip(b, walls(b).at(0)), InputError);

    // Flipping the reversed circuit undoes a flip.
    for (unsigned seed = 0; seed < 20; ++seed) {
        gen::FlopCase fc = gen::flop_case(seed, 3 + seed % 2);
        for (const auto& w : walls(fc.x)) {
            auto rel = wall_relation(fc.x, w);
            if (classify(rel).kind != ContractionKind::flipping) continue;
            Fan flipped = [&] {
                try {
                    return std::optional<Fan>(bistellar_flip(fc.x, w));
                } catch (const InputError&) {
                    return std::optional<Fan>();
                }
            }().value_or(fc.x);
            if (fans_equal(flipped, fc.x)) continue;
            auto before = relation_map(relation_ref(fc.x, rel));
            bool undone = false;
            for (const auto& w2 : walls(flipped)) {
                auto after = relation_map(relation_ref(flipped, wall_relation(flipped, w2)));
                bool reversed = after.size() == before.size();
                for (const auto& [v, a] : before) reversed = reversed && after.count(v) && after[v] == -a;
                if (!reversed) continue;
                CHECK(fans_equal(bistellar_flip(flipped, w2), fc.x));
                undone = true;
            }
            CHECK(undone);
        }
    }
}

TEST_CASE("divisorial contractions") {
    Fan b(2, {{1, 0}, {0, 1}, {1, 1}}, {{0, 2}, {1, 2}});
    auto c = divisorial_contract(b, walls(b).at(0));
    CHECK(fans_equal(c.fan, orthant(2)));
    CHECK(c.removed_index == 2);
    CHECK(c.removed_ray == LatticeVector{1, 1});
    CHECK(c.center.size() == 2);

    Fan s = star_subdivision(orthant(3), {1, 1, 1});
    for (const auto& w : walls(s)) {
        auto d = divisorial_contract(s, w);
        CHECK(fans_equal(d.fan, orthant(3)));
        CHECK(d.center.size() == 3);
    }
    Fan e = star_subdivision(orthant(3), {1, 1, 0});
    auto d = divisorial_contract(e, walls(e).at(0));
    CHECK(fans_equal(d.fan, orthant(3)));
    CHECK(d.center.size() == 2);

    // Star of (1,1,1) in a fan where it also meets a further subdivision: not contractible
    // through a wall whose circuit does not cover its star.
    Fan t = star_subdivision(star_subdivision(orthant(3), {1, 1, 1}), {1, 1, 2});
    int contractible = 0;
    for (const auto& w : walls(t)) {
        auto cl = classify(wall_relation(t, w));
        if (cl.kind != ContractionKind::divisorial) continue;
        try {
            auto r = divisorial_contract(t, w);
            CHECK(r.fan.rays().size() == 4);
            ++contractible;
        } catch (const InputError&) {
        }
    }
    CHECK(contractible > 0);
    CHECK_THROWS_AS(divisorial_contract(atiyah_x(), walls(atiyah_x()).at(0)), InputError);
}

TEST_CASE("regular triangulations") {
    Fan a = regular_triangulation(2, {{1, 0}, {0, 1}, {1, 1}}, {1, 1, 1});
    CHECK(fans_equal(a, Fan(2, {{1, 0}, {0, 1}, {1, 1}}, {{0, 2}, {1, 2}})));
    Fan x = regular_triangulation(3, kAtiyahRays, {0, 1, 0, 1});
    CHECK(fans_equal(x, atiyah_x()));
    Fan y = regular_triangulation(3, kAtiyahRays, {1, 0, 1, 0});
    CHECK(fans_equal(y, atiyah_y()));
    CHECK_THROWS_AS(regular_triangulation(3, kAtiyahRays, {0, 0, 0, 0}), InputError);

    std::mt19937 rng(41);
    for (int t = 0; t < 40; ++t) {
        std::size_t dim = 3 + t % 2;
        auto rays = gen::height_one_rays(rng, dim, dim + 1 + t % 4, dim == 3 ? 2 : 1);
        RatVec h = gen::paraboloid_heights(rng, rays);
        auto cells = oracle::lower_hull_cells(dim, rays, h);
        std::set<std::set<LatticeVector>> brute;
        for (const auto& s : cells) {
            std::set<LatticeVector> vs;
            for (auto i : s) vs.insert(rays[i]);
            brute.insert(vs);
        }
        std::set<LatticeVector> used;
        for (const auto& c : brute) used.insert(c.begin(), c.end());
        if (used.size() != rays.size()) {
            CHECK_THROWS_AS(regular_triangulation(dim, rays, h), InputError);
            continue;
        }
        Fan f = regular_triangulation(dim, rays, h);
        CHECK(cone_vectors(f) == brute);
        CHECK(fans_equal(f, regular_triangulation(dim, rays, h, 7)));
        for (const auto& w : walls(f)) CHECK(defect(wall_relation(f, w), HeightFunction{h}) > 0);
    }
}

TEST_CASE("ample heights") {
    auto h = find_ample_heights(atiyah_x());
    for (const auto& w : walls(atiyah_x())) CHECK(defect(wall_relation(atiyah_x(), w), h) > 0);
    CHECK_NOTHROW(find_ample_heights(orthant(3)));
}

TEST_CASE("flop decomposition") {
    auto steps = flop_decompose(plain(atiyah_x()), plain(atiyah_y()));
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].event_time == Rat(1, 2));
    CHECK(steps[0].k_defect_check == 0);
    CHECK(fans_equal(replay_flops(atiyah_x(), steps), atiyah_y()));
    CHECK(flop_decompose(plain(atiyah_x()), plain(atiyah_x())).empty());

    Fan tilted(3, {{0, 0, 1}, {1, 0, 1}, {1, 1, 2}, {0, 1, 1}}, {{0, 1, 2}, {0, 2, 3}});
    CHECK_THROWS_AS(flop_decompose(plain(atiyah_x()), plain(tilted)), InputError);
    CHECK_THROWS_AS(flop_decompose(plain(atiyah_x()), ToricPair(atiyah_y(), {Rat(1, 2), 0, 0, 0})), InputError);
    CHECK_THROWS_AS(flop_decompose(plain(atiyah_x()), plain(atiyah_y()), std::nullopt, std::nullopt, 0),
                    BudgetExceeded);

    for (unsigned seed = 100; seed < 124; ++seed) {
        gen::FlopCase fc = gen::flop_case(seed, 3 + seed % 2);
        auto s = flop_decompose(plain(fc.x), plain(fc.y));
        CHECK(!s.empty());
        Rat last = 0;
        for (const auto& st : s) {
            CHECK(st.k_defect_check == 0);
            CHECK(st.event_time >= last);
            CHECK(st.event_time <= 1);
            last = st.event_time;
        }
        CHECK(fans_equal(replay_flops(fc.x, s), fc.y));
    }
}

TEST_CASE("relative MMP") {
    Fan b(2, {{1, 0}, {0, 1}, {1, 1}}, {{0, 2}, {1, 2}});
    auto r = relative_mmp(plain(b));
    REQUIRE(r.steps.size() == 1);
    CHECK(r.steps[0].kind == MmpKind::divisorial_contraction);
    CHECK(r.steps[0].removed_ray == LatticeVector{1, 1});
    CHECK(r.steps[0].psi_defect > 0);
    CHECK(fans_equal(r.pair.fan(), orthant(2)));
    CHECK(is_log_canonical_nef(r.pair));

    HJResolution res = hj_resolution(3, 1);
    ToricPair min(res.fan, RatVec(res.fan.rays().size(), Rat(0)), res.lattice);
    auto m = relative_mmp(min);
    CHECK(m.steps.empty());

    ToricPair orth(orthant(3), {0, 0, 0});
    CHECK(relative_mmp(orth).steps.empty());
    CHECK_THROWS_AS(relative_mmp(plain(Fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {0, 2}}))), InputError);

    std::mt19937 rng(9);
    for (int t = 0; t < 30; ++t) {
        std::size_t n = 2 + t % 2;
        Fan f = random_blowups(rng, n, 1 + t % 4);
        ToricPair start = plain(f);
        auto res2 = relative_mmp(start);
        CHECK(fans_equal(res2.pair.fan(), orthant(n)));
        CHECK(is_log_canonical_nef(res2.pair));
        for (const auto& st : res2.steps) CHECK(st.psi_defect > 0);
        CHECK(fans_equal(replay_mmp(start, res2.steps).fan(), res2.pair.fan()));
    }
}

TEST_CASE("terminalization") {
    auto one = [](long r, std::vector<long> w) {
        IntVec weights;
        for (auto a : w) weights.push_back(Int(a));
        return quotient_pair(GroupData{w.size(), {{Int(r), weights}}});
    };
    CHECK(terminalize(one(2, {1, 1, 1})).steps.empty());
    auto t = terminalize(one(3, {1, 1, 1}));
    REQUIRE(t.steps.size() == 1);
    CHECK(t.steps[0].psi_before == 1);
    CHECK(is_terminal(t.pair));

    for (long r = 2; r <= 9; ++r)
        for (long a = 1; a < r; ++a) {
            ToricPair x = one(r, {1, a});
            auto tt = terminalize(x);
            CHECK(is_terminal(tt.pair));
            for (const auto& s : tt.steps) CHECK(s.psi_before <= 1);
            ToricPair again = replay_extractions(x, tt.steps);
            CHECK(fans_equal(again.fan(), tt.pair.fan()));
            CHECK(again.coeffs() == tt.pair.coeffs());
        }
    CHECK_THROWS_AS(terminalize(one(7, {1, 2, 4}), 0), BudgetExceeded);
}
