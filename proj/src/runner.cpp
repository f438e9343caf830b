#include "rht/runner.hpp"

#include <fstream>
#include <sstream>

#include "rht/derivations.hpp"
#include "rht/parse.hpp"

namespace rht {

namespace {

const Catalog& catalog()
{
    static Catalog c;
    return c;
}

struct ResolvedInput {
    std::string label;
    std::string digest;
    std::optional<SpaceSpec> space;
    std::optional<MapSpec> map;
};

ResolvedInput resolve(const RunOptions& opt, bool want_map)
{
    ResolvedInput in;
    if (!opt.example.empty() && !opt.file.empty())
        throw SpecParseError("give either --example or --file, not both");
    if (opt.example.empty() && opt.file.empty())
        throw SpecParseError("this command needs --example NAME or --file SPEC.json");

    if (!opt.example.empty()) {
        in.label = "example:" + opt.example;
        if (catalog().has_map(opt.example)) {
            in.map = MapSpec::from_model(catalog().map(opt.example));
            in.digest = content_digest(map_spec_to_json(*in.map).dump());
        } else if (catalog().has_space(opt.example)) {
            in.space = SpaceSpec::from_model(catalog().space(opt.example));
            in.digest = content_digest(space_spec_to_json(*in.space).dump());
        } else {
            throw SpecParseError("unknown catalog entry '" + opt.example + "'");
        }
    } else {
        std::ifstream f(opt.file);
        if (!f)
            throw SpecParseError("cannot open " + opt.file);
        std::stringstream buf;
        buf << f.rdbuf();
        in.label = "file:" + opt.file;
        in.digest = content_digest(buf.str());
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(buf.str());
        } catch (const nlohmann::json::exception& e) {
            throw SpecParseError(std::string("bad JSON: ") + e.what());
        }
        if (json_is_map_spec(j))
            in.map = parse_map_spec(j);
        else
            in.space = parse_space_spec(j);
    }

    if (want_map && !in.map)
        throw HypothesisError("'" + opt.command + "' needs a map input");
    return in;
}

int scale_of(const SpaceSpec& s)
{
    if (s.pd)
        return s.pd->formal_dim;
    if (s.algebra.finite_dimensional())
        return s.algebra.top_degree();
    int top = 1;
    for (const auto& g : s.algebra.generators())
        top = std::max(top, g.degree);
    return top;
}

nlohmann::ordered_json base_json(const RunOptions& opt, const ResolvedInput& in,
                                 std::pair<int, int> window)
{
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["command"] = opt.command;
    j["input"] = in.label;
    j["digest"] = in.digest;
    j["window"] = {window.first, window.second};
    return j;
}

std::string pass_str(bool b)
{
    return b ? "pass" : "FAIL";
}

void append_hmap_rows(std::ostream& os, nlohmann::ordered_json& j,
                      const std::vector<HMapDegree>& rows)
{
    j["per_degree"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        j["per_degree"].push_back({{"degree", r.degree},
                                   {"source_betti", r.source_betti},
                                   {"target_betti", r.target_betti},
                                   {"rank", r.rank},
                                   {"injective", r.injective}});
        os << "  degree " << r.degree << ": betti " << r.source_betti << " -> "
           << r.target_betti << ", rank " << r.rank << ", injective "
           << (r.injective ? "yes" : "NO") << "\n";
    }
}

RunReport run_catalog(const RunOptions& opt)
{
    RunReport rep;
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["command"] = "catalog";
    j["entries"] = nlohmann::ordered_json::array();
    std::ostringstream os;
    os << "catalog entries:\n";
    for (const auto& [name, desc] : catalog().names()) {
        j["entries"].push_back({{"name", name}, {"description", desc}});
        os << "  " << name << "  -  " << desc << "\n";
    }
    (void)opt;
    rep.json = std::move(j);
    rep.text = os.str();
    return rep;
}

RunReport run_validate_pd(const RunOptions& opt)
{
    ResolvedInput in = resolve(opt, false);
    const SpaceSpec& s = in.space ? *in.space : in.map->big;
    PDStructure pd = s.pd ? *s.pd : s.require_pd();
    PDValidation v = check_pd(pd);

    RunReport rep;
    rep.json = base_json(opt, in, {0, v.formal_dim});
    rep.json["ok"] = v.ok;
    rep.json["formal_dim"] = v.formal_dim;
    if (!v.message.empty())
        rep.json["message"] = v.message;
    rep.json["pairing_ranks"] = nlohmann::ordered_json::array();
    std::ostringstream os;
    os << "validate-pd " << in.label << "\n";
    os << "  formal dimension: " << v.formal_dim << "\n";
    for (const auto& [deg, rank] : v.pairing_ranks) {
        rep.json["pairing_ranks"].push_back({{"degree", deg}, {"rank", rank}});
        os << "  pairing degree " << deg << ": rank " << rank << "\n";
    }
    os << "  RESULT: " << (v.ok ? "valid Poincare duality structure" : "INVALID: " + v.message)
       << "\n";
    rep.text = os.str();
    rep.exit_code = v.ok ? 0 : 1;
    return rep;
}

RunReport run_cohomology(const RunOptions& opt)
{
    ResolvedInput in = resolve(opt, false);
    const SpaceSpec& s = in.space ? *in.space : in.map->big;
    int m = scale_of(s);
    auto window = opt.window.value_or(std::make_pair(0, 2 * m + 4));
    auto h = cohomology(s.algebra, window.first, window.second);

    RunReport rep;
    rep.json = base_json(opt, in, window);
    rep.json["betti"] = nlohmann::ordered_json::array();
    std::ostringstream os;
    os << "cohomology " << in.label << ", degrees [" << window.first << ", " << window.second
       << "]\n";
    for (const auto& d : h.by_degree) {
        nlohmann::ordered_json row{{"degree", d.degree}, {"betti", d.betti}};
        if (opt.verbose) {
            row["representatives"] = nlohmann::ordered_json::array();
            for (const auto& r : d.representatives)
                row["representatives"].push_back(element_str(s.algebra, r));
        }
        rep.json["betti"].push_back(row);
        os << "  H^" << d.degree << ": " << d.betti;
        if (opt.verbose && !d.representatives.empty()) {
            os << "   [";
            for (std::size_t i = 0; i < d.representatives.size(); ++i)
                os << (i ? ", " : "") << element_str(s.algebra, d.representatives[i]);
            os << "]";
        }
        os << "\n";
    }
    rep.text = os.str();
    return rep;
}

RunReport run_loop_model(const RunOptions& opt)
{
    ResolvedInput in = resolve(opt, false);
    const SpaceSpec& s = in.space ? *in.space : in.map->big;
    auto [sullivan, phi] = s.require_sullivan();
    (void)phi;
    LoopModel lm = build_loop_model(sullivan);
    int m = scale_of(s);
    auto window = opt.window.value_or(std::make_pair(0, 2 * m + 4));
    auto h = loop_cohomology(lm, window.first, window.second);

    RunReport rep;
    rep.json = base_json(opt, in, window);
    rep.json["generators"] = nlohmann::ordered_json::array();
    std::ostringstream os;
    os << "loop-model " << in.label << "\n  generators:\n";
    for (std::size_t i = 0; i < lm.total.gen_count(); ++i) {
        const auto& g = lm.total.generators()[i];
        std::string dv = element_str(lm.total, lm.total.d_of_generator(i));
        rep.json["generators"].push_back(
            {{"name", g.name}, {"degree", g.degree}, {"differential", dv}});
        os << "    " << g.name << " (degree " << g.degree << "), D = " << dv << "\n";
    }
    rep.json["betti"] = nlohmann::ordered_json::array();
    os << "  loop space cohomology:\n";
    for (const auto& d : h.by_degree) {
        rep.json["betti"].push_back({{"degree", d.degree}, {"betti", d.betti}});
        os << "    H^" << d.degree << ": " << d.betti << "\n";
    }
    rep.text = os.str();
    return rep;
}

RunReport run_hh(const RunOptions& opt)
{
    ResolvedInput in = resolve(opt, false);
    const SpaceSpec& s = in.space ? *in.space : in.map->big;
    auto [sullivan, phi] = s.require_sullivan();
    LoopModel lm = build_loop_model(sullivan);
    CoefficientModule mod = CoefficientModule::from_algebra(s.algebra, phi, "A");
    if (opt.coefficients == "dual")
        mod = mod.dualize();
    else if (opt.coefficients != "self")
        throw SpecParseError("--coefficients must be self or dual");

    int m = scale_of(s);
    auto window = opt.window.value_or(default_window(m));
    if (opt.coefficients == "dual")
        window = opt.window.value_or(std::make_pair(-(2 * m + 4), m));

    HochschildComplex hc = HochschildComplex::build(lm, mod, window.first, window.second);
    auto rep_hh = hh_cohomology(hc);

    RunReport rep;
    rep.json = base_json(opt, in, window);
    rep.json["coefficients"] = mod.label();
    rep.json["betti"] = nlohmann::ordered_json::array();
    std::ostringstream os;
    os << "hh " << in.label << ", coefficients " << mod.label() << ", degrees ["
       << window.first << ", " << window.second << "]\n";
    for (const auto& d : rep_hh.by_degree) {
        nlohmann::ordered_json row{{"degree", d.degree}, {"betti", d.betti}};
        os << "  HH^" << d.degree << ": " << d.betti;
        if (opt.hodge) {
            nlohmann::ordered_json blocks = nlohmann::ordered_json::object();
            os << "   hodge {";
            bool first = true;
            for (const auto& [len, b] : d.hodge_betti) {
                blocks[std::to_string(len)] = b;
                os << (first ? "" : ", ") << len << ": " << b;
                first = false;
            }
            row["hodge"] = blocks;
            os << "}";
        }
        if (opt.verbose) {
            row["representatives"] = d.representatives;
            for (const auto& r : d.representatives)
                os << "\n      " << r;
        }
        rep.json["betti"].push_back(row);
        os << "\n";
    }
    rep.text = os.str();
    return rep;
}

RunReport run_shriek(const RunOptions& opt)
{
    ResolvedInput in = resolve(opt, true);
    const MapSpec& m = *in.map;
    DualityData ddA(m.big.require_pd()), ddB(m.small.require_pd());
    ShriekMap fs = shriek(m.f, ddA, ddB);
    ShriekChecks checks = verify_shriek(m.f, ddA, ddB, fs);

    RunReport rep;
    rep.json = base_json(opt, in, {0, ddB.formal_dim()});
    rep.json["shift"] = fs.shift;
    std::ostringstream os;
    os << "shriek " << in.label << "\n  degree shift m - n = " << fs.shift << "\n";
    if (fs.shift == 0) {
        Scalar c = degree_scalar(m.f, ddA, ddB);
        rep.json["degree_scalar"] = scalar_str(c);
        os << "  model-level degree c = " << scalar_str(c) << "\n";
    }
    rep.json["images"] = nlohmann::ordered_json::array();
    for (int j = 0; j <= ddB.formal_dim(); ++j)
        for (const auto& bm : m.small.algebra.basis_of_degree(j)) {
            Element be = m.small.algebra.monomial_element(bm);
            Element img = fs.apply(be);
            rep.json["images"].push_back({{"argument", element_str(m.small.algebra, be)},
                                          {"degree", j},
                                          {"value", element_str(m.big.algebra, img)}});
            os << "  f_!(" << element_str(m.small.algebra, be)
               << ") = " << element_str(m.big.algebra, img) << "\n";
        }
    rep.json["identities"] = {{"square_commutes", checks.square_commutes},
                              {"module_linear", checks.module_linear},
                              {"composite_is_mult", checks.composite_is_mult},
                              {"chain_map", checks.chain_map}};
    os << "  square pi_A f_! = f^# pi_B: " << pass_str(checks.square_commutes) << "\n"
       << "  A-linearity: " << pass_str(checks.module_linear) << "\n"
       << "  f_! f = multiplication by f_!(1): " << pass_str(checks.composite_is_mult) << "\n"
       << "  chain identity: " << pass_str(checks.chain_map) << "\n";
    if (!checks.all()) {
        os << "  detail: " << checks.detail << "\n";
        rep.exit_code = 3;
    }
    rep.text = os.str();
    return rep;
}

RunReport run_theorem1(const RunOptions& opt)
{
    ResolvedInput in = resolve(opt, true);
    const MapSpec& m = *in.map;
    DualityData ddA(m.big.require_pd()), ddB(m.small.require_pd());
    auto [sullivan, phi] = m.big.require_sullivan();
    (void)sullivan;
    auto window = opt.window.value_or(default_window(ddA.formal_dim()));
    auto rec = verify_theorem1(m.f, phi, ddA, ddB, window.first, window.second);

    RunReport rep;
    rep.json = base_json(opt, in, window);
    std::ostringstream os;
    os << "theorem1 " << in.label << ": CH(f_!) CH(f) = multiplication by the dual class\n";
    if (!rec.hypotheses_ok) {
        rep.json["hypotheses_ok"] = false;
        rep.json["failure"] = rec.failure;
        os << "  hypotheses not met: " << rec.failure << "\n";
        rep.exit_code = 1;
        rep.text = os.str();
        return rep;
    }
    rep.json["hypotheses_ok"] = true;
    rep.json["x"] = element_str(m.big.algebra, rec.x);
    rep.json["x_star"] = element_str(m.big.algebra, rec.x_star);
    rep.json["alpha"] = element_str(m.big.algebra, rec.alpha);
    rep.json["alpha_equals_x_star"] = rec.alpha_equals_x_star;
    rep.json["identities_checked"] = rec.identities_checked;
    rep.json["pass"] = rec.pass;
    os << "  preimage cocycle x = " << element_str(m.big.algebra, rec.x) << "\n"
       << "  dual class x* = " << element_str(m.big.algebra, rec.x_star) << "\n"
       << "  f_!(1) = " << element_str(m.big.algebra, rec.alpha)
       << (rec.alpha_equals_x_star ? "  (= x*)" : "  (differs from x*)") << "\n";
    rep.json["per_degree"] = nlohmann::ordered_json::array();
    for (const auto& [deg, count] : rec.per_degree) {
        rep.json["per_degree"].push_back({{"degree", deg}, {"basis", count}});
        if (opt.verbose)
            os << "  degree " << deg << ": " << count << " basis identities\n";
    }
    os << "  checked " << rec.identities_checked << " chain-level identities, exact\n";
    if (!rec.first_mismatch.empty()) {
        rep.json["first_mismatch"] = rec.first_mismatch;
        os << "  first mismatch: " << rec.first_mismatch << "\n";
    }
    os << "  RESULT: " << pass_str(rec.pass) << "\n";
    rep.exit_code = rec.pass ? 0 : 1;
    rep.text = os.str();
    return rep;
}

RunReport run_theorem2(const RunOptions& opt)
{
    ResolvedInput in = resolve(opt, true);
    const MapSpec& m = *in.map;
    DualityData ddA(m.big.require_pd()), ddB(m.small.require_pd());
    auto [sullivan, phi] = m.big.require_sullivan();
    (void)sullivan;
    auto window = opt.window.value_or(default_window(ddA.formal_dim()));
    auto rec = verify_theorem2(m.f, phi, ddA, ddB, window.first, window.second);

    RunReport rep;
    rep.json = base_json(opt, in, window);
    std::ostringstream os;
    os << "theorem2 " << in.label << ": HH(f) : HH(A;A) -> HH(A;B) is injective\n";
    if (!rec.hypotheses_ok) {
        rep.json["hypotheses_ok"] = false;
        rep.json["failure"] = rec.failure;
        os << "  hypotheses not met: " << rec.failure << "\n";
        rep.exit_code = 1;
        rep.text = os.str();
        return rep;
    }
    rep.json["hypotheses_ok"] = true;
    rep.json["degree_scalar"] = scalar_str(rec.c);
    rep.json["retraction_identity"] = rec.retraction_identity;
    os << "  model-level degree c = " << scalar_str(rec.c) << "\n"
       << "  chain-level retraction induced(p) induced(f) = id: "
       << pass_str(rec.retraction_identity) << "\n";
    append_hmap_rows(os, rep.json, rec.per_degree);
    rep.json["injective_all"] = rec.injective_all;
    os << "  RESULT: " << pass_str(rec.injective_all && rec.retraction_identity) << "\n";
    rep.exit_code = (rec.injective_all && rec.retraction_identity) ? 0 : 1;
    rep.text = os.str();
    return rep;
}

RunReport run_felix(const RunOptions& opt)
{
    ResolvedInput in = resolve(opt, true);
    const MapSpec& m = *in.map;
    DualityData ddA(m.big.require_pd()), ddB(m.small.require_pd());
    auto [sullivan, phi] = m.big.require_sullivan();
    (void)sullivan;
    int md = ddA.formal_dim();
    auto window = opt.window.value_or(std::make_pair(1, 2 * md + 4));
    if (window.first < 1)
        window.first = 1;
    auto rec = verify_injection_theorem(m.f, phi, ddA, ddB, window.first, window.second);

    RunReport rep;
    rep.json = base_json(opt, in, window);
    std::ostringstream os;
    os << "felix-injection " << in.label
       << ": H(f_*) on derivation homology is injective\n";
    if (!rec.hypotheses_ok) {
        rep.json["hypotheses_ok"] = false;
        rep.json["failure"] = rec.failure;
        os << "  hypotheses not met: " << rec.failure << "\n";
        rep.exit_code = 1;
        rep.text = os.str();
        return rep;
    }
    rep.json["hypotheses_ok"] = true;
    rep.json["degree_scalar"] = scalar_str(rec.c);
    rep.json["retraction_identity"] = rec.retraction_identity;
    os << "  model-level degree c = " << scalar_str(rec.c) << "\n"
       << "  chain-level retraction p_* f_* = id: " << pass_str(rec.retraction_identity)
       << "\n";
    append_hmap_rows(os, rep.json, rec.per_degree);
    rep.json["injective_all"] = rec.injective_all;
    rep.json["iso_all"] = rec.iso_all;
    os << "  RESULT: " << pass_str(rec.injective_all && rec.retraction_identity) << "\n";
    rep.exit_code = (rec.injective_all && rec.retraction_identity) ? 0 : 1;
    rep.text = os.str();
    return rep;
}

RunReport run_corollary(const RunOptions& opt)
{
    ResolvedInput in = resolve(opt, true);
    const MapSpec& m = *in.map;
    DualityData ddA(m.big.require_pd()), ddB(m.small.require_pd());
    auto [sullivan, phi] = m.big.require_sullivan();
    (void)sullivan;
    int md = ddA.formal_dim();
    auto window = opt.window.value_or(std::make_pair(-(2 * md + 4), md));
    auto rec = corollary_shriek_on_homology(m.f, phi, ddA, ddB, window.first, window.second);

    RunReport rep;
    rep.json = base_json(opt, in, window);
    std::ostringstream os;
    os << "corollary " << in.label
       << ": dual-coefficient composite (pi_A)_*^{-1} f_* (pi_B)_* is injective\n";
    if (!rec.hypotheses_ok) {
        rep.json["hypotheses_ok"] = false;
        rep.json["failure"] = rec.failure;
        os << "  hypotheses not met: " << rec.failure << "\n";
        rep.exit_code = 1;
        rep.text = os.str();
        return rep;
    }
    rep.json["hypotheses_ok"] = true;
    rep.json["degree_scalar"] = scalar_str(rec.c);
    os << "  model-level degree c = " << scalar_str(rec.c) << "\n";
    append_hmap_rows(os, rep.json, rec.per_degree);
    rep.json["injective_all"] = rec.injective_all;
    os << "  RESULT: " << pass_str(rec.injective_all) << "\n";
    rep.exit_code = rec.injective_all ? 0 : 1;
    rep.text = os.str();
    return rep;
}

RunReport run_maps_pi(const RunOptions& opt)
{
    ResolvedInput in = resolve(opt, false);
    RunReport rep;
    std::ostringstream os;

    AlgebraMorphism rho;
    int scale = 0;
    std::string what;
    ResolvedInput* inp = &in;
    if (inp->map) {
        const MapSpec& m = *inp->map;
        auto [sullivan, phi] = m.big.require_sullivan();
        (void)sullivan;
        rho = compose(m.f, phi);
        scale = scale_of(m.big);
        what = "map(N, M; g)";
    } else {
        const SpaceSpec& s = *inp->space;
        auto [sullivan, phi] = s.require_sullivan();
        (void)sullivan;
        rho = phi;
        scale = scale_of(s);
        what = "aut_1(M)";
    }
    auto window = opt.window.value_or(std::make_pair(1, 2 * scale + 4));
    if (window.first < 1)
        window.first = 1;
    DerivationComplex der = DerivationComplex::build(rho, window.first, window.second);
    auto rows = mapping_space_report(der, window.first, window.second);

    rep.json = base_json(opt, in, window);
    rep.json["space"] = what;
    rep.json["pi"] = nlohmann::ordered_json::array();
    os << "maps-pi " << in.label << ": dim pi_n(" << what << ") (x) Q\n";
    for (const auto& r : rows) {
        rep.json["pi"].push_back(
            {{"n", r.n}, {"dim", r.dim}, {"in_iso_range", r.in_iso_range}});
        os << "  n = " << r.n << ": " << r.dim << (r.in_iso_range ? "" : "   (below n = 2)")
           << "\n";
    }
    rep.text = os.str();
    return rep;
}

}  // namespace

RunReport run_command(const RunOptions& opt)
{
    if (opt.command == "catalog")
        return run_catalog(opt);
    if (opt.command == "validate-pd")
        return run_validate_pd(opt);
    if (opt.command == "cohomology")
        return run_cohomology(opt);
    if (opt.command == "loop-model")
        return run_loop_model(opt);
    if (opt.command == "hh")
        return run_hh(opt);
    if (opt.command == "shriek")
        return run_shriek(opt);
    if (opt.command == "theorem1")
        return run_theorem1(opt);
    if (opt.command == "theorem2")
        return run_theorem2(opt);
    if (opt.command == "felix-injection")
        return run_felix(opt);
    if (opt.command == "corollary")
        return run_corollary(opt);
    if (opt.command == "maps-pi")
        return run_maps_pi(opt);
    throw SpecParseError("unknown command '" + opt.command + "'");
}

int exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const SpecParseError*>(&e))
        return 2;
    if (dynamic_cast<const HypothesisError*>(&e))
        return 1;
    return 3;
}

}  // namespace rht
