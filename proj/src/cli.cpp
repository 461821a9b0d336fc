#include "toric/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "toric/errors.hpp"
#include "toric/json_io.hpp"
#include "toric/mckay.hpp"
#include "toric/mmp.hpp"

namespace toric {

namespace {

struct Options {
    bool json = false;
    std::optional<std::size_t> max_steps;
    unsigned seed = 0;
    std::string base = "orthant";
    std::vector<std::string> files;
    std::string batch;
    long long r = 0, a = 0;
};

std::string vec_text(const IntVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
    return s + ")";
}

std::string vecs_text(const std::vector<LatticeVector>& vs) {
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? " " : "") + vec_text(vs[i]);
    return s;
}

void print_pair(std::ostream& out, const ToricPair& p, const std::string& indent) {
    const Fan& f = p.fan();
    out << indent << "dimension " << f.dim() << ", " << f.rays().size() << " rays, " << f.cones().size()
        << " maximal cones, support " << to_string(f.support_kind()) << "\n";
    for (std::size_t i = 0; i < f.rays().size(); ++i)
        out << indent << "  ray " << i << " " << vec_text(f.ray(i)) << " coefficient " << p.coeffs()[i].get_str()
            << "\n";
    for (const auto& c : f.cones()) {
        out << indent << "  cone";
        for (auto i : c) out << " " << i;
        out << "\n";
    }
}

std::optional<std::vector<LatticeVector>> base_cone(const ToricPair& p, const std::string& base) {
    if (base == "support") return std::nullopt;
    if (base != "orthant") throw InputError("--base must be orthant or support");
    std::vector<LatticeVector> gens;
    for (std::size_t i = 0; i < p.fan().dim(); ++i) {
        RatVec e(p.fan().dim(), Rat(0));
        e[i] = 1;
        gens.push_back(primitive_direction(p.lattice().coordinates(e)));
    }
    return gens;
}

int cmd_check(const Options& o, std::ostream& out) {
    ToricPair p = pair_from_json(read_json_file(o.files.at(0)));
    const bool complete = p.fan().support_kind() == SupportKind::complete;
    const bool terminal = is_terminal(p), canonical = is_canonical(p);
    std::optional<bool> nef;
    if (complete || o.base == "support") {
        nef = is_log_canonical_nef(p);
    } else if (p.fan().support_kind() == SupportKind::cone) {
        auto base = base_cone(p, o.base);
        std::vector<LatticeVector> gens;
        IndexSet all;
        for (std::size_t i = 0; i < base->size(); ++i) {
            gens.push_back(primitive((*base)[i]));
            all.push_back(i);
        }
        if (same_support(p.fan(), Fan(p.fan().dim(), gens, {all}))) nef = is_log_canonical_nef(p);
    }
    if (o.json) {
        Json j = {{"valid", true},
                  {"complete", complete},
                  {"support", to_string(p.fan().support_kind())},
                  {"terminal", terminal},
                  {"canonical", canonical}};
        j["nef"] = nef ? Json(*nef) : Json(nullptr);
        out << j.dump(2) << "\n";
    } else {
        out << "valid: yes\n"
            << "complete: " << (complete ? "yes" : "no") << "\n"
            << "support: " << to_string(p.fan().support_kind()) << "\n"
            << "terminal: " << (terminal ? "yes" : "no") << "\n"
            << "canonical: " << (canonical ? "yes" : "no") << "\n"
            << "nef(K+B) over base: " << (nef ? (*nef ? "yes" : "no") : "undecided (fan not supported on the base)")
            << "\n";
    }
    return 0;
}

int cmd_terminalize(const Options& o, std::ostream& out) {
    ToricPair p = pair_from_json(read_json_file(o.files.at(0)));
    TerminalizeResult res = terminalize(p, o.max_steps);
    if (o.json) {
        Json steps = Json::array();
        for (const auto& s : res.steps) steps.push_back(to_json(s));
        out << Json{{"steps", steps}, {"pair", pair_to_json(res.pair)}}.dump(2) << "\n";
    } else {
        out << "extractions: " << res.steps.size() << "\n";
        for (const auto& s : res.steps) out << "  ray " << vec_text(s.ray) << " psi " << s.psi_before.get_str() << "\n";
        out << "terminal pair:\n";
        print_pair(out, res.pair, "  ");
    }
    return 0;
}

int cmd_mmp(const Options& o, std::ostream& out) {
    ToricPair p = pair_from_json(read_json_file(o.files.at(0)));
    MmpResult res = relative_mmp(p, base_cone(p, o.base), o.max_steps);
    if (o.json) {
        Json steps = Json::array();
        for (const auto& s : res.steps) steps.push_back(to_json(s));
        out << Json{{"steps", steps}, {"pair", pair_to_json(res.pair)}}.dump(2) << "\n";
    } else {
        out << "mmp steps: " << res.steps.size() << "\n";
        for (const auto& s : res.steps) {
            out << "  " << to_string(s.kind) << " psi-defect " << s.psi_defect.get_str() << " wall "
                << vecs_text(s.wall.shared);
            if (s.removed_ray) out << " removes " << vec_text(*s.removed_ray) << " onto " << vecs_text(s.center);
            out << "\n";
        }
        out << "minimal model:\n";
        print_pair(out, res.pair, "  ");
    }
    return 0;
}

void print_report(std::ostream& out, const McKayReport& r) {
    out << "group order: " << r.order.get_str() << "\n"
        << "sl: " << (r.sl ? "true" : "false") << "\n"
        << "extractions: " << r.extractions.size() << "\n"
        << "mmp steps: " << r.mmp_steps.size() << "\n"
        << "ledger:\n";
    for (const auto& e : r.ledger) {
        out << "  " << to_string(e.kind) << " center " << vecs_text(e.center) << " rank_delta " << e.rank_delta.get_str();
        if (!e.components.empty()) {
            out << " components";
            for (const auto& c : e.components) out << " " << c.get_str();
        }
        out << "\n";
    }
    out << "rank check: " << r.order.get_str() << " = " << r.rank_x.get_str() << " (stack rank of X) "
        << (r.rank_x_ok ? "ok" : "FAILED") << "\n"
        << "rank check: " << r.order.get_str() << " = " << r.rank_y.get_str() << " + " << r.rank_delta_sum.get_str()
        << " " << (r.telescope_ok ? "ok" : "FAILED") << "\n";
    if (r.sl) out << "crepant check: " << (r.crepant_ok ? "ok" : "FAILED") << "\n";
    out << "final pair:\n";
    print_pair(out, r.y, "  ");
}

int cmd_mckay(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.batch.empty()) {
        if (o.files.size() != 1) throw InputError("mckay expects one group file or --batch DIR");
        McKayReport r = mckay_pipeline(group_from_json(read_json_file(o.files[0])), o.max_steps);
        if (o.json)
            out << to_json(r).dump(2) << "\n";
        else
            print_report(out, r);
        return (r.rank_x_ok && r.telescope_ok && r.crepant_ok) ? 0 : 2;
    }
    std::vector<std::filesystem::path> files;
    std::error_code ec;
    for (const auto& e : std::filesystem::directory_iterator(o.batch, ec))
        if (e.path().extension() == ".json") files.push_back(e.path());
    if (ec) throw InputError("cannot read directory " + o.batch);
    std::sort(files.begin(), files.end());
    int code = 0;
    Json all = Json::array();
    for (const auto& f : files) {
        Json entry = {{"file", f.filename().string()}};
        try {
            McKayReport r = mckay_pipeline(group_from_json(read_json_file(f.string())), o.max_steps);
            bool ok = r.rank_x_ok && r.telescope_ok && r.crepant_ok;
            if (!ok) code = 2;
            if (o.json) {
                entry["report"] = to_json(r);
            } else {
                out << "== " << f.filename().string() << "\n";
                print_report(out, r);
            }
        } catch (const InputError& e) {
            code = std::max(code, 1);
            entry["error"] = e.what();
            err << f.filename().string() << ": error: " << e.what() << "\n";
        } catch (const InvariantError& e) {
            code = 2;
            entry["error"] = e.what();
            err << f.filename().string() << ": internal error: " << e.what() << "\n";
        }
        all.push_back(entry);
    }
    if (o.json) out << all.dump(2) << "\n";
    return code;
}

int cmd_flop(const Options& o, std::ostream& out) {
    if (o.files.size() != 2) throw InputError("flop-decompose expects two pair files");
    ToricPair x = pair_from_json(read_json_file(o.files[0]));
    ToricPair y = pair_from_json(read_json_file(o.files[1]));
    bool equivalent = false;
    std::string reason;
    try {
        equivalent = k_equivalent(x, y);
        if (!equivalent) {
            try {
                reason = std::string("divisor order ") + to_string(k_compare(x, y));
            } catch (const InputError&) {
                reason = "ray sets, coefficients or lattices differ";
            }
        }
    } catch (const InputError& e) {
        reason = e.what();
    }
    if (!equivalent) {
        if (o.json)
            out << Json{{"k_equivalent", false}, {"diagnosis", reason}}.dump(2) << "\n";
        else
            out << "not K-equivalent: " << reason << "\n";
        return 1;
    }
    auto steps = flop_decompose(x, y, std::nullopt, std::nullopt, o.max_steps);
    if (o.json) {
        Json js = Json::array();
        for (const auto& s : steps) js.push_back(to_json(s));
        out << Json{{"k_equivalent", true}, {"flops", js}}.dump(2) << "\n";
    } else {
        out << "flops: " << steps.size() << "\n";
        for (const auto& s : steps)
            out << "  t = " << s.event_time.get_str() << " wall " << vecs_text(s.wall.shared) << " apexes "
                << vec_text(s.wall.apex_a) << " " << vec_text(s.wall.apex_b) << " k-defect "
                << s.k_defect_check.get_str() << "\n";
    }
    return 0;
}

int cmd_hj(const Options& o, std::ostream& out) {
    HJResolution h = hj_resolution(Int(std::to_string(o.r)), Int(std::to_string(o.a)));
    if (o.json) {
        Json chain = Json::array();
        for (const auto& b : h.chain) chain.push_back(int_to_json(b));
        out << Json{{"r", o.r}, {"a", o.a}, {"chain", chain}, {"fan", fan_to_json(h.fan)}}.dump(2) << "\n";
    } else {
        out << "chain:";
        for (const auto& b : h.chain) out << " " << b.get_str();
        out << "\n";
    }
    return 0;
}

int cmd_rank(const Options& o, std::ostream& out) {
    Int r = stack_rank(pair_from_json(read_json_file(o.files.at(0))));
    if (o.json)
        out << Json{{"stack_rank", int_to_json(r)}}.dump(2) << "\n";
    else
        out << "stack rank: " << r.get_str() << "\n";
    return 0;
}

int cmd_case_a(const Options& o, std::ostream& out) {
    auto comps = case_a_components(Int(std::to_string(o.r)), Int(std::to_string(o.a)));
    if (o.json) {
        Json a = Json::array();
        for (const auto& c : comps) a.push_back(int_to_json(c));
        out << Json{{"components", a}}.dump(2) << "\n";
    } else {
        out << "components:";
        for (const auto& c : comps) out << " " << c.get_str();
        out << "\n";
    }
    return 0;
}

int cmd_triangulate(const Options& o, std::ostream& out) {
    Json j = read_json_file(o.files.at(0));
    Fan fan = [&] {
        try {
            std::vector<LatticeVector> rays;
            for (const auto& r : j.at("rays")) {
                IntVec v;
                for (const auto& x : r) v.push_back(int_from_json(x));
                rays.push_back(v);
            }
            return regular_triangulation(j.at("dim").get<std::size_t>(), rays, heights_from_json(j.at("heights")).values,
                                         o.seed);
        } catch (const Json::exception& e) {
            throw InputError(std::string("malformed JSON: ") + e.what());
        }
    }();
    if (o.json) {
        out << fan_to_json(fan).dump(2) << "\n";
    } else {
        out << "maximal cones: " << fan.cones().size() << "\n";
        for (const auto& c : fan.cones()) {
            out << "  cone";
            for (auto i : c) out << " " << i;
            out << "\n";
        }
    }
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact toric MMP: flops, relative MMP, terminalization and abelian McKay ledgers", "toric-mmp"};
    app.require_subcommand(1);
    Options o;
    std::size_t max_steps = 0;
    app.add_flag("--json", o.json, "machine-readable JSON output");
    auto* max_opt = app.add_option("--max-steps", max_steps, "step budget override");
    app.add_option("--seed", o.seed, "seed for generic choices (triangulate)");

    auto* check = app.add_subcommand("check", "validity, terminality and nefness of a pair");
    check->add_option("pair", o.files, "pair JSON")->required()->expected(1);
    check->add_option("--base", o.base, "orthant or support");
    auto* term = app.add_subcommand("terminalize", "extract divisors until the pair is terminal");
    term->add_option("pair", o.files, "pair JSON")->required()->expected(1);
    auto* mmp = app.add_subcommand("mmp", "relative MMP over a cone");
    mmp->add_option("pair", o.files, "pair JSON")->required()->expected(1);
    mmp->add_option("--base", o.base, "orthant or support");
    auto* mckay = app.add_subcommand("mckay", "quotient pair, terminalization, MMP and rank ledger");
    mckay->add_option("group", o.files, "group JSON");
    mckay->add_option("--batch", o.batch, "process every .json file in a directory");
    auto* flop = app.add_subcommand("flop-decompose", "decompose a K-equivalence into flops");
    flop->add_option("pairs", o.files, "X.json Y.json")->required()->expected(2);
    auto* hj = app.add_subcommand("hj", "Hirzebruch-Jung resolution of 1/r(1,a)");
    hj->add_option("r", o.r)->required();
    hj->add_option("a", o.a)->required();
    auto* rank = app.add_subcommand("rank", "stack rank of a pair with standard coefficients");
    rank->add_option("pair", o.files, "pair JSON")->required()->expected(1);
    auto* casea = app.add_subcommand("case-a", "component indices l for (r, s)");
    casea->add_option("r", o.r)->required();
    casea->add_option("s", o.a)->required();
    auto* tri = app.add_subcommand("triangulate", "regular triangulation of rays with heights");
    tri->add_option("input", o.files, "JSON with dim, rays, heights")->required()->expected(1);

    for (auto* sub : {check, term, mmp, mckay, flop, hj, rank, casea, tri}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }
    if (max_opt->count() > 0) o.max_steps = max_steps;

    try {
        if (check->parsed()) return cmd_check(o, out);
        if (term->parsed()) return cmd_terminalize(o, out);
        if (mmp->parsed()) return cmd_mmp(o, out);
        if (mckay->parsed()) return cmd_mckay(o, out, err);
        if (flop->parsed()) return cmd_flop(o, out);
        if (hj->parsed()) return cmd_hj(o, out);
        if (rank->parsed()) return cmd_rank(o, out);
        if (casea->parsed()) return cmd_case_a(o, out);
        if (tri->parsed()) return cmd_triangulate(o, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const InvariantError& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace toric
