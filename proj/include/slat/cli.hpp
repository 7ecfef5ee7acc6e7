#pragma once

#include <CLI11.hpp>

#include <slat/dot.hpp>
#include <slat/json_io.hpp>
#include <slat/suite.hpp>

#include <fstream>
#include <iostream>
#include <string>

namespace slat {
namespace cli {

inline json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("IllFormed", "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail("IllFormed", path + ": " + e.what());
    }
    return j;
}

inline std::string map_line(const Morphism& f) {
    std::string out;
    for (int x = 0; x < f.src()->size(); ++x) {
        if (x) out += ", ";
        std::string a = f.src()->label(x), b = f.dst()->label(f(x));
        out += (a.empty() ? std::to_string(x) : a) + " -> " +
               (b.empty() ? std::to_string(f(x)) : b);
    }
    return out;
}

inline void print_report(const SuiteReport& rep, bool as_json) {
    if (as_json) {
        json j;
        j["suite"] = rep.suite;
        j["cases"] = rep.cases;
        j["violations"] = rep.violations;
        j["notes"] = rep.notes;
        j["wall_ms"] = rep.wall_ms;
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::cout << "suite " << rep.suite << ": " << rep.cases << " cases, "
              << rep.violations.size() << " violations (" << rep.wall_ms << " ms)\n";
    for (const std::string& n : rep.notes) std::cout << "  note: " << n << "\n";
    for (const std::string& v : rep.violations) std::cout << "  violation: " << v << "\n";
}

inline int run(int argc, char** argv) {
    CLI::App app{"exact workbench for finite join-semilattices with zero"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the verb

    std::string cache_dir;
    bool as_json = false;
    app.add_option("--cache-dir", cache_dir,
                   "directory for the boolean-cover memo cache")
        ->envname("SLAT_CACHE_DIR");
    app.add_flag("--json", as_json, "emit machine-readable JSON");

    auto make_store = [&] { return cache_dir.empty() ? CoverStore() : CoverStore(cache_dir); };

    std::string in_path;
    auto* analyze = app.add_subcommand("analyze", "classify a semilattice");
    analyze->add_option("file", in_path, "semilattice JSON")->required();

    bool trim = false;
    auto* phi = app.add_subcommand("phi", "boolean cover with unit and retraction");
    phi->add_option("file", in_path, "semilattice JSON")->required();
    phi->add_flag("--trim-zero", trim, "also separate zero and report the trimmed cover");

    auto* gs = app.add_subcommand("gs", "simple atomistic extension");
    gs->add_option("file", in_path, "semilattice JSON")->required();

    auto* colim = app.add_subcommand("colimit", "colimit of a diagram");
    colim->add_option("file", in_path, "diagram JSON")->required();

    auto* retract = app.add_subcommand("retract-system",
                                       "boolean covers of a whole direct system");
    retract->add_option("file", in_path, "direct system JSON")->required();

    bool emit = false;
    auto* cex = app.add_subcommand("counterexample",
                                   "certify the square with no simultaneous embedding");
    cex->add_flag("--emit", emit, "print the system as JSON instead of the report");

    int max_atoms = 6;
    long long work_limit = limits().max_search_work;
    bool raw = false;
    auto* search = app.add_subcommand("search", "bounded search for simultaneous embeddings");
    search->add_option("file", in_path, "direct system JSON")->required();
    search->add_option("--max-atoms", max_atoms, "largest boolean stage tried, in atoms");
    search->add_option("--work-limit", work_limit, "node expansion budget");
    search->add_flag("--raw", raw, "disable the necessary-condition filter");

    std::string suite_name;
    int max_size = 4;
    auto* suite = app.add_subcommand("suite", "run a named invariant suite over the corpus");
    suite->add_option("name", suite_name, "suite name")->required();
    suite->add_option("--max-size", max_size, "largest corpus member used");

    auto* dot = app.add_subcommand("export-dot",
                                   "Hasse diagram of a semilattice, morphism or diagram");
    dot->add_option("file", in_path, "JSON payload")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (analyze->parsed()) {
            SL s = decode_semilattice(read_json(in_path));
            Classification c = classify(s);
            if (as_json) {
                json j;
                j["size"] = s->size();
                j["distributive"] = c.distributive;
                j["boolean"] = c.boolean;
                j["atomistic"] = c.atomistic;
                j["lattice_simple"] = c.lattice_simple;
                j["join_irreducibles"] = s->join_irreducibles();
                j["atoms"] = s->atom_list();
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "size " << s->size() << ", " << s->join_irreducibles().size()
                          << " join-irreducibles, " << s->atom_list().size() << " atoms\n"
                          << "distributive: " << (c.distributive ? "yes" : "no")
                          << ", boolean: " << (c.boolean ? "yes" : "no")
                          << ", atomistic: " << (c.atomistic ? "yes" : "no")
                          << ", simple: " << (c.lattice_simple ? "yes" : "no") << "\n";
            }
            return 0;
        }
        if (phi->parsed()) {
            SL s = decode_semilattice(read_json(in_path));
            CoverStore store = make_store();
            const CoverEntry& e = phi_object(s, store);
            Morphism eps = store.eps_of(s), mu = store.mu_of(s);
            int bad = compose(mu, eps).map() != identity(s).map();
            json j;
            j["object_size"] = s->size();
            j["phi_size"] = e.phi->size();
            j["eps"] = eps.map();
            j["mu"] = mu.map();
            if (!as_json)
                std::cout << "cover has " << e.phi->size() << " elements over " << s->size()
                          << "\nunit: " << map_line(eps) << "\nretraction: " << map_line(mu)
                          << "\n";
            if (trim) {
                TrimReport tr = trim_zero(store);
                const TrimmedCover& tc = tr.entries.at(canonical_key(e.object));
                j["trimmed_size"] = tc.phi->size();
                j["kernel_join"] = tc.b;
                j["trim_violations"] = tr.violations;
                bad += int(tr.violations.size());
                if (!as_json) {
                    std::cout << "trimmed cover has " << tc.phi->size()
                              << " elements, kernel join " << tc.b << "\n";
                    for (const std::string& v : tr.violations)
                        std::cout << "  violation: " << v << "\n";
                }
            }
            if (as_json) std::cout << j.dump(2) << "\n";
            return bad ? 1 : 0;
        }
        if (gs->parsed()) {
            SL s = decode_semilattice(read_json(in_path));
            GSCheckReport rep = gs_checks(s);
            if (as_json) {
                json j;
                j["base_size"] = s->size();
                j["extended_size"] = rep.result.extended->size();
                j["atoms"] = rep.atoms;
                j["eps"] = rep.result.eps.map();
                j["mu"] = rep.result.mu.map();
                j["violations"] = rep.violations;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "extension has " << rep.result.extended->size()
                          << " elements and " << rep.atoms << " atoms ("
                          << rep.result.new_atoms.size() << " split pairs)\n"
                          << "unit: " << map_line(rep.result.eps) << "\n";
                for (const std::string& v : rep.violations)
                    std::cout << "  violation: " << v << "\n";
            }
            return rep.ok() ? 0 : 1;
        }
        if (colim->parsed()) {
            Diagram d = decode_diagram(read_json(in_path));
            ColimitResult c = colimit(d);
            if (as_json) {
                json j;
                j["apex"] = encode(c.apex);
                json legs = json::array();
                for (const Morphism& l : c.legs) legs.push_back(l.map());
                j["legs"] = legs;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "colimit has " << c.apex->size() << " elements\n";
                for (size_t v = 0; v < c.legs.size(); ++v)
                    std::cout << "leg " << v << ": " << map_line(c.legs[v]) << "\n";
            }
            return 0;
        }
        if (retract->parsed()) {
            DirectSystem sys = decode_direct_system(read_json(in_path));
            CoverStore store = make_store();
            RetractedSystem rs = retract_system(sys, store);
            std::vector<std::string> violations;
            for (size_t v = 0; v < rs.eps_family.size(); ++v)
                if (compose(rs.mu_family[v], rs.eps_family[v]).map() !=
                    identity(sys.vertices()[int(v)]).map())
                    violations.push_back("vertex " + std::to_string(v) +
                                         ": retraction is not the identity");
            for (auto [i, j] : sys.index().covers())
                if (compose(rs.booleans.transition(i, j), rs.eps_family[i]).map() !=
                    compose(rs.eps_family[j], sys.transition(i, j)).map())
                    violations.push_back("square broken at " + std::to_string(i) + "->" +
                                         std::to_string(j));
            if (as_json) {
                json j;
                j["system"] = encode(rs.booleans);
                j["violations"] = violations;
                std::cout << j.dump(2) << "\n";
            } else {
                for (size_t v = 0; v < rs.eps_family.size(); ++v)
                    std::cout << "vertex " << v << ": " << sys.vertices()[int(v)]->size()
                              << " -> boolean stage of "
                              << rs.booleans.vertices()[int(v)]->size() << "\n";
                for (const std::string& s : violations)
                    std::cout << "  violation: " << s << "\n";
            }
            return violations.empty() ? 0 : 1;
        }
        if (cex->parsed()) {
            if (emit) {
                std::cout << encode(build_counterexample()).dump(2) << "\n";
                return 0;
            }
            SuiteConfig cfg;
            cfg.cache_dir = cache_dir;
            SuiteReport rep = run_suite("counterexample", cfg);
            print_report(rep, as_json);
            return rep.ok() ? 0 : 1;
        }
        if (search->parsed()) {
            DirectSystem sys = decode_direct_system(read_json(in_path));
            SearchOptions opt;
            opt.max_atoms = max_atoms;
            opt.work_limit = work_limit;
            opt.necess_filter = !raw;
            SearchOutcome r = search_simultaneous(sys, opt);
            if (as_json) {
                json j;
                j["found"] = r.found;
                j["work"] = r.work;
                if (r.found) {
                    json comps = json::array();
                    for (const Morphism& c : r.embedding->components) comps.push_back(c.map());
                    j["components"] = comps;
                } else {
                    j["certificate"] = r.certificate;
                }
                std::cout << j.dump(2) << "\n";
            } else if (r.found) {
                std::cout << "found after " << r.work << " expansions\n";
                for (size_t v = 0; v < r.embedding->components.size(); ++v)
                    std::cout << "vertex " << v << ": "
                              << map_line(r.embedding->components[v]) << "\n";
            } else {
                std::cout << "no embedding: " << r.certificate << " (" << r.work
                          << " expansions)\n";
            }
            return 0;
        }
        if (suite->parsed()) {
            SuiteConfig cfg;
            cfg.max_size = max_size;
            cfg.cache_dir = cache_dir;
            SuiteReport rep = run_suite(suite_name, cfg);
            print_report(rep, as_json);
            return rep.ok() ? 0 : 1;
        }
        if (dot->parsed()) {
            json j = read_json(in_path);
            if (j.contains("index") && j.contains("vertices"))
                std::cout << export_dot(decode_diagram(j));
            else if (j.contains("map") && j.contains("src") && j.contains("dst") &&
                     j.at("src").is_object() && j.at("dst").is_object()) {
                SL s = decode_semilattice(j.at("src")), t = decode_semilattice(j.at("dst"));
                std::cout << export_dot(decode_morphism(j, s, t));
            } else if (j.contains("join"))
                std::cout << export_dot(decode_semilattice(j));
            else
                fail("IllFormed", "payload is neither semilattice, morphism nor diagram");
            return 0;
        }
    } catch (const SlatError& e) {
        if (as_json)
            std::cout << json{{"error", e.kind}, {"witness", e.witness}}.dump(2) << "\n";
        else
            std::cerr << "error: " << e.kind << ": " << e.witness << "\n";
        return 1;
    }
    return 0;
}

}  // namespace cli
}  // namespace slat
