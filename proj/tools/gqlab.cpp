#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "gqlab/catalog.hpp"
#include "gqlab/constructions.hpp"
#include "gqlab/geometry.hpp"
#include "gqlab/group.hpp"
#include "gqlab/io.hpp"
#include "gqlab/report.hpp"
#include "gqlab/search.hpp"
#include "gqlab/stgq.hpp"
#include "gqlab/symmetry.hpp"

namespace fs = std::filesystem;
using namespace gqlab;

namespace {

// Exit codes: 0 every asserted clause passed, 1 a verification failed,
// 2 usage or input trouble.
int exit_code_for(const error& e) {
    switch (e.code()) {
    case errc::io_error:
    case errc::invalid_argument:
    case errc::not_prime_power:
    case errc::size_budget_exceeded:
    case errc::budget_exceeded:
    case errc::unknown_theorem:
    case errc::invalid_point:
    case errc::division_by_zero:
        return 2;
    default:
        return 1;
    }
}

std::string order_text(const gq_order& o) {
    return "(" + std::to_string(o.s) + "," + std::to_string(o.t) + ")";
}

std::string power_text(int prime, int power, int value) {
    if (prime == 0) return std::to_string(value) + " (not a prime power)";
    return std::to_string(prime) + "^" + std::to_string(power);
}

// GQLAB_BUDGET_SECONDS caps any single search; unparsable values are
// rejected rather than ignored.
search_budget env_budget(int jobs) {
    search_budget b;
    b.jobs = jobs;
    if (const char* s = std::getenv("GQLAB_BUDGET_SECONDS")) {
        char* end = nullptr;
        double v = std::strtod(s, &end);
        if (end == s || *end != '\0' || v < 0)
            throw error(errc::invalid_argument,
                        "GQLAB_BUDGET_SECONDS must be a non-negative number, got '" +
                            std::string(s) + "'");
        b.seconds = v;
    }
    return b;
}

void emit(const report& rep, bool json) { std::cout << rep.render(json); }

struct construct_args {
    std::string type, output;
    int q = 0, n = 1;
};

int run_construct(const construct_args& a, bool force, bool json) {
    report rep;
    rep.put("command", "construct");
    rep.put("type", a.type);
    rep.put("q", a.q);
    if (a.type == "heisenberg") {
        rep.put("n", a.n);
        group_table g = heisenberg(a.n, a.q);
        write_group(a.output, g, force);
        rep.put("kind", "group");
        rep.put("order", (long long)g.n);
    } else {
        incidence_geometry geo;
        if (a.type == "w3")
            geo = symplectic_quadrangle(a.q);
        else if (a.type == "hermitian")
            geo = hermitian_quadrangle(a.q);
        else
            geo = coset_geometry(qclan_kantor_family(linear_qclan(a.q))).geometry;
        write_geometry(a.output, geo, force);
        rep.put("kind", "geometry");
        rep.put("points", geo.points);
        rep.put("lines", geo.num_lines());
        rep.put("order", order_text(verify_gq(geo)));
    }
    rep.put("output", a.output);
    rep.put("hash", hash_hex(file_hash(a.output)));
    emit(rep, json);
    return 0;
}

int run_verify_gq(const std::string& path, bool json) {
    incidence_geometry geo = read_geometry(path);
    report rep;
    rep.put("command", "verify-gq");
    rep.put("input", path);
    rep.put("points", geo.points);
    rep.put("lines", geo.num_lines());
    try {
        gq_order o = verify_gq(geo);
        rep.put("order", order_text(o));
        rep.put("hash", hash_hex(fnv1a(geometry_text(geo).data(), geometry_text(geo).size())));
        rep.put("pass", true);
        emit(rep, json);
        return 0;
    } catch (const error& e) {
        if (e.code() != errc::axiom_violation && e.code() != errc::not_uniform_order) throw;
        rep.put("pass", false);
        rep.put("witness", e.what());
        emit(rep, json);
        return 1;
    }
}

int run_verify_kantor(const std::string& path, bool json) {
    kantor_family fam = read_kantor(path);
    kantor_validation v = validate_kantor_family(fam.group, fam.members);
    report rep;
    rep.put("command", "verify-kantor");
    rep.put("input", path);
    rep.put("group_order", (long long)fam.group.n);
    rep.put("s", fam.s);
    rep.put("t", fam.t);
    rep.put("members", fam.members.size());
    rep.put("pass", v.ok);
    if (!v.ok) {
        rep.put("violations", v.violations.size());
        for (std::size_t i = 0; i < v.violations.size(); ++i)
            rep.put("violation_" + std::to_string(i),
                    v.violations[i].clause + ": " + v.violations[i].witness);
    }
    emit(rep, json);
    return v.ok ? 0 : 1;
}

struct analyze_args {
    std::string geo, group;
    int point = 0;
};

int run_analyze(const analyze_args& a, bool json) {
    incidence_geometry geo = read_geometry(a.geo);
    group_table g = read_group(a.group);
    stgq_triple t{geo, a.point, action_from_element_tags(geo, g)};

    report rep;
    rep.put("command", "analyze-stgq");
    rep.put("geo", a.geo);
    rep.put("group", a.group);
    rep.put("point", a.point);

    stgq_report r = is_stgq(t);
    rep.put("order", order_text(r.order));
    rep.put("s_decomposition", power_text(r.s_prime, r.s_power, r.order.s));
    rep.put("t_decomposition", power_text(r.t_prime, r.t_power, r.order.t));
    rep.put("egq", r.is_egq);
    if (!r.is_egq) rep.put("egq_witness", r.egq.witness);
    rep.put("symmetries", r.symmetries.size());
    rep.put("symmetry_count_matches_t", r.symmetry_count.value);
    rep.put("point_regular", r.regular_point.value);
    rep.put("certificates_agree", r.certificates_agree);
    rep.put("stgq", r.is_stgq);
    if (!r.is_stgq) {
        if (r.is_egq && !r.symmetry_count.value) rep.put("witness", r.symmetry_count.witness);
        emit(rep, json);
        return 1;
    }

    rep.put("property_C", property_c(t).holds);
    star_report st = property_star(t);
    rep.put("property_star", st.star);
    rep.put("star_lines", std::to_string(st.passing_lines) + "/" +
                              std::to_string(st.lines.size()));
    rep.put("star_zero_one_all", st.zero_one_all);
    for (const line_star_report& lr : st.lines)
        rep.put("star_line_" + std::to_string(lr.line),
                lr.pass ? std::string("pass") : "fail: " + lr.witness);

    mstgq_report m = mstgq_check(t);
    rep.put("moufang_roots", m.m1);
    rep.put("roots_checked", m.roots_checked);
    if (!m.m1) rep.put("moufang_witness", m.m1_witness);
    rep.put("no_unique_centre_triad", m.m3);
    rep.put("triads_checked", m.triads_checked);
    if (!m.m3) rep.put("triad_witness", m.m3_witness);

    quotient_geometry qg = gamma_phi(t);
    rep.put("frattini_order", qg.phi.size());
    rep.put("orbit_points", qg.gamma.points);
    rep.put("orbit_lines", qg.gamma.num_lines());
    rep.put("orbit_degree", qg.degree);

    generic_report gc = generic_conditions(t);
    rep.put("generic_a", gc.dual_partial_linear);
    rep.put("generic_a_dual_reading", gc.dual_reading);
    if (!gc.witness_partial.empty()) rep.put("generic_a_witness", gc.witness_partial);
    rep.put("generic_b", gc.pair_span_proper);
    rep.put("generic_b_pairs", gc.pairs_checked);
    rep.put("generic_b_reading", gc.span_reading);
    if (!gc.witness_span.empty()) rep.put("generic_b_witness", gc.witness_span);
    rep.put("extension_hypothesis", gc.unchecked);

    std::vector<ideal_subgq> ideals = find_ideal_subgq(t);
    rep.put("ideal_subquadrangles", ideals.size());
    for (std::size_t i = 0; i < ideals.size(); ++i)
        rep.put("ideal_" + std::to_string(i),
                "subgroup " + std::to_string(ideals[i].subgroup.size()) + ", order " +
                    order_text(ideals[i].order) +
                    (ideals[i].parameters_square ? ", square parameters" : ""));
    emit(rep, json);
    return 0;
}

int run_aut(const std::string& path, const std::string& output, bool force, bool json) {
    incidence_geometry geo = read_geometry(path);
    automorphism_group_result ag = automorphism_group(geo);
    report rep;
    rep.put("command", "aut");
    rep.put("input", path);
    rep.put("points", geo.points);
    rep.put("lines", geo.num_lines());
    rep.put("generators", ag.generators.size());
    rep.put("order", ag.order);
    rep.put("self_dual", ag.self_dual);
    rep.put("combined_order", ag.combined_order);
    rep.put("canonical_hash", ag.canonical_hash);
    if (!output.empty()) {
        write_aut(output, ag.generators, ag.order, force);
        rep.put("output", output);
    }
    emit(rep, json);
    return 0;
}

int run_iso(const std::string& a, const std::string& b, bool json) {
    incidence_geometry ga = read_geometry(a);
    incidence_geometry gb = read_geometry(b);
    std::optional<perm_pair> m = geometry_isomorphic(ga, gb);
    report rep;
    rep.put("command", "iso");
    rep.put("a", a);
    rep.put("b", b);
    rep.put("isomorphic", m.has_value());
    emit(rep, json);
    return m ? 0 : 1;
}

struct search_kantor_args {
    std::string input, output;
    int s = 0, t = 0, jobs = 0;
    bool modulo_aut = false;
};

int run_search_kantor(const search_kantor_args& a, bool force, bool json) {
    group_table g = read_group(a.input);
    kantor_search_result res =
        search_kantor_families(g, a.s, a.t, a.modulo_aut, env_budget(a.jobs));
    report rep;
    rep.put("command", "search-kantor");
    rep.put("input", a.input);
    rep.put("group_order", (long long)g.n);
    rep.put("s", a.s);
    rep.put("t", a.t);
    rep.put("modulo_aut", a.modulo_aut);
    rep.put("families", res.families.size());
    rep.put("complete", res.complete);
    if (!a.output.empty()) {
        fs::create_directories(a.output);
        std::string group_ref = fs::relative(fs::absolute(a.input), fs::absolute(a.output))
                                    .generic_string();
        manifest_file man;
        man.complete = res.complete;
        for (std::size_t i = 0; i < res.families.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "family_%03zu.kf", i);
            std::string path = (fs::path(a.output) / name).string();
            write_kantor(path, res.families[i], group_ref, force);
            man.entries.emplace_back(hash_hex(file_hash(path)), name);
        }
        write_manifest((fs::path(a.output) / "manifest").string(), man, force);
        rep.put("output", a.output);
        rep.put("files_written", res.families.size() + 1);
    }
    emit(rep, json);
    return 0;
}

int run_search_elation(const std::string& input, int point, int jobs, bool json) {
    incidence_geometry geo = read_geometry(input);
    elation_search_result res = search_elation_groups(geo, point, env_budget(jobs));
    report rep;
    rep.put("command", "search-elation");
    rep.put("input", input);
    rep.put("point", point);
    rep.put("stabilizer_order", res.stabilizer_order);
    rep.put("classes", res.classes.size());
    rep.put("complete", res.complete);
    for (std::size_t i = 0; i < res.classes.size(); ++i) {
        const elation_class& c = res.classes[i];
        rep.put("class_" + std::to_string(i),
                "order=" + std::to_string(c.group.n) + " count=" + std::to_string(c.count) +
                    " abelian=" + (is_abelian(c.group) ? "yes" : "no") +
                    " exponent=" + std::to_string(group_exponent(c.group)));
    }
    emit(rep, json);
    return 0;
}

int run_theorem(const std::string& name, int q, bool json) {
    theorem_verdict v = theorem_harness(name, q);
    report rep;
    rep.put("command", "theorem");
    rep.put("name", v.name);
    rep.put("q", v.q);
    rep.put("pass", v.pass);
    for (std::size_t i = 0; i < v.evidence.size(); ++i)
        rep.put("evidence_" + std::to_string(i), v.evidence[i]);
    emit(rep, json);
    return v.pass ? 0 : 1;
}

int run_catalog(int order, bool json) {
    catalog_list cat = catalog_groups(order);
    report rep;
    rep.put("command", "catalog");
    rep.put("order", order);
    rep.put("entries", cat.entries.size());
    rep.put("complete", cat.complete);
    for (std::size_t i = 0; i < cat.entries.size(); ++i) {
        const group_table& g = cat.entries[i].group;
        rep.put(cat.entries[i].name, std::string(is_abelian(g) ? "abelian" : "nonabelian") +
                                         " exponent=" + std::to_string(group_exponent(g)));
    }
    emit(rep, json);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite generalized quadrangle workbench"};
    app.require_subcommand(1);
    bool json = false, force = false;
    app.add_flag("--json", json, "emit reports as JSON with the same keys as the text form");
    app.add_flag("--force", force, "overwrite existing output files");

    construct_args ca;
    CLI::App* construct = app.add_subcommand(
        "construct", "build a bundled group or quadrangle and write it to a file");
    construct->fallthrough();
    construct->add_option("--type", ca.type, "heisenberg | w3 | hermitian | qclan-gq")
        ->required()
        ->check(CLI::IsMember({"heisenberg", "w3", "hermitian", "qclan-gq"}));
    construct->add_option("--q", ca.q, "field order")->required();
    construct->add_option("--n", ca.n, "heisenberg rank (default 1)");
    construct->add_option("-o,--output", ca.output, "output path")->required();

    std::string vg_path;
    CLI::App* vgq = app.add_subcommand("verify-gq", "check the quadrangle axioms of a .geo file");
    vgq->fallthrough();
    vgq->add_option("path", vg_path, "geometry file")->required();

    std::string vk_path;
    CLI::App* vk = app.add_subcommand("verify-kantor", "validate the family axioms of a .kf file");
    vk->fallthrough();
    vk->add_option("path", vk_path, "family file")->required();

    analyze_args aa;
    CLI::App* an = app.add_subcommand(
        "analyze-stgq", "full skew-translation analysis of a geometry with a tagged group");
    an->fallthrough();
    an->add_option("--geo", aa.geo, "geometry file")->required();
    an->add_option("--group", aa.group, "group file acting via element tags")->required();
    an->add_option("--point", aa.point, "base point index")->required();

    std::string aut_path, aut_out;
    CLI::App* aut = app.add_subcommand("aut", "automorphism group of a .geo file");
    aut->fallthrough();
    aut->add_option("path", aut_path, "geometry file")->required();
    aut->add_option("-o,--output", aut_out, "write generators to this file");

    std::string iso_a, iso_b;
    CLI::App* iso = app.add_subcommand("iso", "decide isomorphism of two .geo files");
    iso->fallthrough();
    iso->add_option("a", iso_a, "first geometry")->required();
    iso->add_option("b", iso_b, "second geometry")->required();

    search_kantor_args ska;
    CLI::App* sk = app.add_subcommand("search-kantor",
                                      "exhaustive family search inside a .grp file");
    sk->fallthrough();
    sk->add_option("path", ska.input, "group file")->required();
    sk->add_option("--s", ska.s, "member order")->required();
    sk->add_option("--t", ska.t, "one less than the family size")->required();
    sk->add_flag("--modulo-aut", ska.modulo_aut, "one family per automorphism orbit");
    sk->add_option("--jobs", ska.jobs, "worker count (0 = all hardware threads)");
    sk->add_option("-o,--output", ska.output, "directory for .kf files plus a manifest");

    std::string se_path;
    int se_point = 0, se_jobs = 0;
    CLI::App* se = app.add_subcommand("search-elation",
                                      "elation groups of a .geo file at a point");
    se->fallthrough();
    se->add_option("path", se_path, "geometry file")->required();
    se->add_option("--point", se_point, "base point index")->required();
    se->add_option("--jobs", se_jobs, "worker count (0 = all hardware threads)");

    std::string th_name;
    int th_q = 0;
    CLI::App* th = app.add_subcommand("theorem", "run a scripted desk-scale experiment");
    th->fallthrough();
    th->add_option("--name", th_name, "experiment name")->required();
    th->add_option("--q", th_q, "field order (0 = the experiment's default)");

    int cat_order = 0;
    CLI::App* cat = app.add_subcommand("catalog", "list a bundled order catalog");
    cat->fallthrough();
    cat->add_option("--order", cat_order, "group order")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            std::cout << app.help();
            return 0;
        }
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << app.help();
        return 2;
    }

    try {
        if (*construct) return run_construct(ca, force, json);
        if (*vgq) return run_verify_gq(vg_path, json);
        if (*vk) return run_verify_kantor(vk_path, json);
        if (*an) return run_analyze(aa, json);
        if (*aut) return run_aut(aut_path, aut_out, force, json);
        if (*iso) return run_iso(iso_a, iso_b, json);
        if (*sk) return run_search_kantor(ska, force, json);
        if (*se) return run_search_elation(se_path, se_point, se_jobs, json);
        if (*th) return run_theorem(th_name, th_q, json);
        if (*cat) return run_catalog(cat_order, json);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
