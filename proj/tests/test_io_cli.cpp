#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "toric/cli.hpp"
#include "toric/errors.hpp"
#include "toric/json_io.hpp"
#include "toric/mckay.hpp"

using namespace toric;

namespace {

const std::string kData = TORIC_DATA_DIR;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "toric-mmp");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
    auto p = std::filesystem::temp_directory_path() / ("toric_mmp_test_" + name);
    std::ofstream(p) << text;
    return p.string();
}

}  // namespace

TEST_CASE("integers and rationals round-trip") {
    Int big("123456789012345678901234567890");
    Json j = int_to_json(big);
    CHECK(j.is_string());
    CHECK(int_from_json(j) == big);
    CHECK(int_to_json(Int(-42)).is_number_integer());
    CHECK(int_from_json(Json(-42)) == -42);
    CHECK(int_from_json(Json("-9007199254740993")) == Int("-9007199254740993"));
    CHECK_THROWS_AS(int_from_json(Json("12x")), InputError);
    CHECK_THROWS_AS(int_from_json(Json(1.5)), InputError);
    CHECK(rat_from_json(rat_to_json(Rat(-7, 3))) == Rat(-7, 3));
    CHECK(rat_from_json(Json(5)) == 5);
    CHECK_THROWS_AS(rat_from_json(Json("1/0")), InputError);
}

TEST_CASE("pairs, fans and groups round-trip") {
    ToricPair p = pair_from_json(read_json_file(kData + "/smooth_orthant_half_boundary.json"));
    ToricPair q = pair_from_json(pair_to_json(p));
    CHECK(fans_equal(p.fan(), q.fan()));
    CHECK(p.coeffs() == q.coeffs());

    ToricPair x = quotient_pair(GroupData{3, {{Int(5), {Int(1), Int(2), Int(3)}}}});
    Json jx = pair_to_json(x);
    CHECK(jx.contains("lattice"));
    ToricPair y = pair_from_json(jx);
    CHECK(y.lattice() == x.lattice());
    CHECK(y.fan().rays() == x.fan().rays());
    Json bad = jx;
    bad["lattice"]["basis"][2][0] = 7;
    CHECK_THROWS_AS(pair_from_json(bad), InputError);

    Fan big(2, {{Int("100000000000000000000"), Int(1)}, {Int(0), Int(1)}}, {{0, 1}});
    Json jb = fan_to_json(big);
    CHECK(jb["rays"][0][0].is_string());
    CHECK(fan_from_json(jb).rays() == big.rays());

    GroupData g = group_from_json(read_json_file(kData + "/groups/group_fifth_123.json"));
    CHECK(group_to_json(g) == read_json_file(kData + "/groups/group_fifth_123.json"));
    CHECK_THROWS_AS(group_from_json(parse_json(R"({"n": 2, "gens": [{"r": 3, "weights": [1, 3]}]})")), InputError);
    CHECK_THROWS_AS(fan_from_json(parse_json(R"({"dim": 2, "rays": [[1, 0], [0, 1]]})")), InputError);
    CHECK_THROWS_AS(fan_from_json(parse_json(R"({"dim": 2, "rays": [[1, 0], [0, 1]], "cones": [[0, "a"]]})")),
                    InputError);
    CHECK_THROWS_AS(parse_json("{"), InputError);
    CHECK_THROWS_AS(read_json_file(kData + "/missing.json"), InputError);
}

TEST_CASE("step lists round-trip") {
    Run r = run({"--json", "flop-decompose", kData + "/atiyah_x.json", kData + "/atiyah_y.json"});
    REQUIRE(r.code == 0);
    Json j = parse_json(r.out);
    CHECK(j["k_equivalent"] == true);
    auto steps = flop_steps_from_json(j["flops"]);
    REQUIRE(steps.size() == 1);
    Json again = Json::array();
    for (const auto& s : steps) again.push_back(to_json(s));
    CHECK(again == j["flops"]);

    Run m = run({"--json", "mmp", kData + "/blowup_plane.json"});
    REQUIRE(m.code == 0);
    Json jm = parse_json(m.out);
    auto ms = mmp_steps_from_json(jm["steps"]);
    REQUIRE(ms.size() == 1);
    CHECK(to_json(ms[0]) == jm["steps"][0]);
    CHECK_THROWS_AS(mmp_steps_from_json(parse_json(R"([{"kind": "bogus"}])")), InputError);
}

TEST_CASE("command line") {
    Run h = run({"hj", "3", "1"});
    CHECK(h.code == 0);
    CHECK(h.out == "chain: -3\n");
    CHECK(run({"case-a", "5", "2"}).out == "components: 1 3 4\n");
    CHECK(run({"--help"}).code == 0);
    CHECK(run({}).code == 1);
    CHECK(run({"hj", "x", "1"}).code == 1);
    CHECK(run({"hj", "4", "2"}).code == 1);

    Run c = run({"check", kData + "/blowup_plane.json"});
    CHECK(c.code == 0);
    CHECK(c.out.find("terminal: yes") != std::string::npos);
    CHECK(c.out.find("nef(K+B) over base: no") != std::string::npos);

    Run f = run({"flop-decompose", kData + "/atiyah_x.json", kData + "/atiyah_y.json"});
    CHECK(f.code == 0);
    CHECK(f.out.find("flops: 1") != std::string::npos);
    CHECK(f.out.find("t = 1/2") != std::string::npos);
    Run nf = run({"flop-decompose", kData + "/atiyah_x.json", kData + "/blowup_plane.json"});
    CHECK(nf.code == 1);

    Run mk = run({"mckay", kData + "/groups/group_third_111.json"});
    CHECK(mk.code == 0);
    CHECK(mk.out.find("group order: 3") != std::string::npos);
    CHECK(mk.out.find("crepant check: ok") != std::string::npos);
    Run batch = run({"--json", "mckay", "--batch", kData + "/groups"});
    CHECK(batch.code == 0);
    CHECK(parse_json(batch.out).size() == 4);

    Run rk = run({"rank", kData + "/smooth_orthant_half_boundary.json"});
    CHECK(rk.code == 0);
    CHECK(rk.out.rfind("stack rank: ", 0) == 0);

    Run t = run({"--json", "triangulate", kData + "/a1_rays.json"});
    CHECK(t.code == 0);
    CHECK(fans_equal(fan_from_json(parse_json(t.out)), Fan(2, {{1, 0}, {0, 1}, {1, 1}}, {{0, 2}, {1, 2}})));

    Run term = run({"terminalize", temp_file("third.json", pair_to_json(quotient_pair(GroupData{3, {{Int(3), {Int(1), Int(1), Int(1)}}}})).dump())});
    CHECK(term.code == 0);
    CHECK(term.out.rfind("extractions: 1\n", 0) == 0);

    CHECK(run({"check", temp_file("garbage.json", "{\"dim\": 2")}).code == 1);
    CHECK(run({"check", kData + "/missing.json"}).code == 1);
    CHECK(run({"--max-steps", "0", "terminalize", temp_file("third0.json", pair_to_json(quotient_pair(GroupData{3, {{Int(3), {Int(1), Int(1), Int(1)}}}})).dump())}).code == 1);
}
