#include "toric/json_io.hpp"

#include <fstream>
#include <sstream>

#include "toric/errors.hpp"

namespace toric {

namespace {

const Int kSafe("9007199254740992");  // 2^53

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) throw InputError(std::string("expected a JSON object with field \"") + key + "\"");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(std::string("missing field \"") + key + "\"");
    return *it;
}

const Json& array_field(const Json& j, const char* key) {
    const Json& a = field(j, key);
    if (!a.is_array()) throw InputError(std::string("field \"") + key + "\" must be an array");
    return a;
}

std::size_t size_from_json(const Json& j) {
    Int v = int_from_json(j);
    if (v < 0 || !v.fits_ulong_p()) throw InputError("expected a nonnegative index, got " + to_string(v));
    return v.get_ui();
}

Json vec_to_json(const IntVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(int_to_json(x));
    return a;
}

IntVec vec_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("expected an integer array");
    IntVec v;
    for (const auto& x : j) v.push_back(int_from_json(x));
    return v;
}

Json vecs_to_json(const std::vector<LatticeVector>& vs) {
    Json a = Json::array();
    for (const auto& v : vs) a.push_back(vec_to_json(v));
    return a;
}

std::vector<LatticeVector> vecs_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("expected an array of integer vectors");
    std::vector<LatticeVector> out;
    for (const auto& v : j) out.push_back(vec_from_json(v));
    return out;
}

Json index_set_to_json(const IndexSet& s) {
    Json a = Json::array();
    for (auto i : s) a.push_back(i);
    return a;
}

Json wall_to_json(const WallRef& w) {
    return {{"shared", vecs_to_json(w.shared)}, {"apex_a", vec_to_json(w.apex_a)}, {"apex_b", vec_to_json(w.apex_b)}};
}

WallRef wall_from_json(const Json& j) {
    return {vecs_from_json(field(j, "shared")), vec_from_json(field(j, "apex_a")), vec_from_json(field(j, "apex_b"))};
}

Json relation_to_json(const RelationRef& r) {
    return {{"rays", vecs_to_json(r.rays)}, {"coeffs", vec_to_json(r.coeffs)}};
}

RelationRef relation_from_json(const Json& j) {
    return {vecs_from_json(field(j, "rays")), vec_from_json(field(j, "coeffs"))};
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Json::exception& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

Json int_to_json(const Int& x) {
    if (abs(x) < kSafe) return Json(x.get_si());
    return Json(x.get_str());
}

Int int_from_json(const Json& j) {
    if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
    if (j.is_number_unsigned()) return Int(std::to_string(j.get<unsigned long long>()));
    if (j.is_string()) {
        Int v;
        if (v.set_str(j.get<std::string>(), 10) != 0) throw InputError("not an integer: \"" + j.get<std::string>() + "\"");
        return v;
    }
    throw InputError("expected an integer, got " + j.dump());
}

Json rat_to_json(const Rat& x) {
    return Json(x.get_str());
}

Rat rat_from_json(const Json& j) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer() || j.is_number_unsigned()) return Rat(int_from_json(j));
    throw InputError("expected a rational string \"p/q\", got " + j.dump());
}

Json fan_to_json(const Fan& fan) {
    Json cones = Json::array();
    for (const auto& c : fan.cones()) cones.push_back(index_set_to_json(c));
    return {{"dim", fan.dim()}, {"rays", vecs_to_json(fan.rays())}, {"cones", cones}};
}

Fan fan_from_json(const Json& j) {
    return guarded([&] {
        std::size_t dim = size_from_json(field(j, "dim"));
        auto rays = vecs_from_json(array_field(j, "rays"));
        std::vector<IndexSet> cones;
        for (const auto& c : array_field(j, "cones")) {
            if (!c.is_array()) throw InputError("each cone must be an array of ray indices");
            IndexSet s;
            for (const auto& i : c) s.push_back(size_from_json(i));
            cones.push_back(s);
        }
        return Fan(dim, rays, cones);
    });
}

Json pair_to_json(const ToricPair& pair) {
    Json j = fan_to_json(pair.fan());
    Json coeffs = Json::array();
    for (const auto& d : pair.coeffs()) coeffs.push_back(rat_to_json(d));
    j["coeffs"] = coeffs;
    if (!pair.lattice().is_standard())
        j["lattice"] = {{"denominator", int_to_json(pair.lattice().denominator())},
                        {"basis", vecs_to_json(pair.lattice().hnf())}};
    return j;
}

ToricPair pair_from_json(const Json& j) {
    return guarded([&] {
        Fan fan = fan_from_json(j);
        RatVec coeffs(fan.rays().size(), Rat(0));
        if (j.contains("coeffs")) {
            coeffs.clear();
            for (const auto& c : array_field(j, "coeffs")) coeffs.push_back(rat_from_json(c));
        }
        if (!j.contains("lattice")) return ToricPair(fan, coeffs);
        const Json& l = field(j, "lattice");
        Int den = int_from_json(field(l, "denominator"));
        if (den <= 0) throw InputError("lattice denominator must be positive");
        std::vector<RatVec> gens;
        for (const auto& row : vecs_from_json(field(l, "basis"))) {
            RatVec g;
            for (const auto& x : row) g.push_back(make_rat(x, den));
            gens.push_back(g);
        }
        if (gens.size() != fan.dim()) throw InputError("lattice basis must have one row per dimension");
        LatticeBasis lat = LatticeBasis::from_generators(gens);
        if (lat.denominator() != den || lat.hnf() != vecs_from_json(field(l, "basis")))
            throw InputError("lattice basis must be given in canonical Hermite form with minimal denominator");
        return ToricPair(fan, coeffs, lat);
    });
}

Json group_to_json(const GroupData& g) {
    Json gens = Json::array();
    for (const auto& gen : g.gens) gens.push_back({{"r", int_to_json(gen.r)}, {"weights", vec_to_json(gen.weights)}});
    return {{"n", g.n}, {"gens", gens}};
}

GroupData group_from_json(const Json& j) {
    return guarded([&] {
        GroupData g;
        g.n = size_from_json(field(j, "n"));
        for (const auto& gen : array_field(j, "gens"))
            g.gens.push_back({int_from_json(field(gen, "r")), vec_from_json(field(gen, "weights"))});
        validate(g);
        return g;
    });
}

Json heights_to_json(const HeightFunction& h) {
    Json a = Json::array();
    for (const auto& x : h.values) a.push_back(rat_to_json(x));
    return a;
}

HeightFunction heights_from_json(const Json& j) {
    return guarded([&] {
        if (!j.is_array()) throw InputError("heights must be an array");
        HeightFunction h;
        for (const auto& x : j) h.values.push_back(rat_from_json(x));
        return h;
    });
}

Json to_json(const FlopStep& s) {
    return {{"wall", wall_to_json(s.wall)},
            {"relation", relation_to_json(s.relation)},
            {"event_time", rat_to_json(s.event_time)},
            {"k_defect_check", rat_to_json(s.k_defect_check)}};
}

Json to_json(const MmpStep& s) {
    Json j = {{"kind", to_string(s.kind)},
              {"wall", wall_to_json(s.wall)},
              {"relation", relation_to_json(s.relation)},
              {"psi_defect", rat_to_json(s.psi_defect)}};
    if (s.removed_ray) {
        j["removed_ray"] = vec_to_json(*s.removed_ray);
        j["center"] = vecs_to_json(s.center);
    }
    return j;
}

Json to_json(const ExtractionStep& s) {
    return {{"ray", vec_to_json(s.ray)}, {"psi_before", rat_to_json(s.psi_before)}};
}

Json to_json(const LedgerEntry& e) {
    Json comps = Json::array();
    for (const auto& c : e.components) comps.push_back(int_to_json(c));
    Json j = {{"kind", to_string(e.kind)},
              {"center", vecs_to_json(e.center)},
              {"base_face", index_set_to_json(e.base_face)},
              {"rank_delta", int_to_json(e.rank_delta)}};
    if (e.kind == LedgerKind::coefficient_drop) j["components"] = comps;
    return j;
}

Json to_json(const McKayReport& r) {
    Json ext = Json::array(), mmp = Json::array(), ledger = Json::array();
    for (const auto& s : r.extractions) ext.push_back(to_json(s));
    for (const auto& s : r.mmp_steps) mmp.push_back(to_json(s));
    for (const auto& e : r.ledger) ledger.push_back(to_json(e));
    return {{"group", group_to_json(r.group)},
            {"order", int_to_json(r.order)},
            {"sl", r.sl},
            {"x", pair_to_json(r.x)},
            {"extractions", ext},
            {"terminal", pair_to_json(r.terminal)},
            {"mmp_steps", mmp},
            {"minimal", pair_to_json(r.minimal)},
            {"y", pair_to_json(r.y)},
            {"ledger", ledger},
            {"rank_checks",
             {{"rank_x", int_to_json(r.rank_x)},
              {"rank_y", int_to_json(r.rank_y)},
              {"rank_delta_sum", int_to_json(r.rank_delta_sum)},
              {"rank_x_equals_order", r.rank_x_ok},
              {"telescoping", r.telescope_ok},
              {"crepant", r.crepant_ok}}},
            {"note", "the minimal model is one representative of its flop class; ledger order is pipeline order"}};
}

std::vector<FlopStep> flop_steps_from_json(const Json& j) {
    return guarded([&] {
        if (!j.is_array()) throw InputError("flop steps must be an array");
        std::vector<FlopStep> out;
        for (const auto& s : j)
            out.push_back({wall_from_json(field(s, "wall")), relation_from_json(field(s, "relation")),
                           rat_from_json(field(s, "event_time")), rat_from_json(field(s, "k_defect_check"))});
        return out;
    });
}

std::vector<MmpStep> mmp_steps_from_json(const Json& j) {
    return guarded([&] {
        if (!j.is_array()) throw InputError("MMP steps must be an array");
        std::vector<MmpStep> out;
        for (const auto& s : j) {
            MmpStep m;
            std::string kind = field(s, "kind").get<std::string>();
            if (kind == "flip")
                m.kind = MmpKind::flip;
            else if (kind == "divisorial_contraction")
                m.kind = MmpKind::divisorial_contraction;
            else
                throw InputError("unknown MMP step kind \"" + kind + "\"");
            m.wall = wall_from_json(field(s, "wall"));
            m.relation = relation_from_json(field(s, "relation"));
            m.psi_defect = rat_from_json(field(s, "psi_defect"));
            if (s.contains("removed_ray")) {
                m.removed_ray = vec_from_json(field(s, "removed_ray"));
                m.center = vecs_from_json(field(s, "center"));
            }
            out.push_back(std::move(m));
        }
        return out;
    });
}

std::vector<ExtractionStep> extraction_steps_from_json(const Json& j) {
    return guarded([&] {
        if (!j.is_array()) throw InputError("extraction steps must be an array");
        std::vector<ExtractionStep> out;
        for (const auto& s : j) out.push_back({vec_from_json(field(s, "ray")), rat_from_json(field(s, "psi_before"))});
        return out;
    });
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str());
}

}  // namespace toric
