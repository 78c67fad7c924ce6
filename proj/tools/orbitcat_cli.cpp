#include <cctype>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orbitcat/orbitcat.hpp"

using namespace orbitcat;
using nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "orbitcat/1";

std::string read_all(const std::string& path) {
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw validation_error("cannot open quiver file '" + path + "'");
        ss << in.rdbuf();
    }
    return ss.str();
}

Quiver load_quiver(const std::string& path) {
    const std::string text = read_all(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("quiver input is not valid JSON: ") + e.what());
    }
    return quiver_from_json(j);
}

int parse_int_str(const std::string& s, const std::string& what) {
    std::size_t pos = 0;
    long v = 0;
    bool ok = !s.empty();
    if (ok) {
        try {
            v = std::stol(s, &pos);
        } catch (const std::exception&) {
            ok = false;
        }
    }
    if (!ok || pos != s.size() || v < -1000000000 || v > 1000000000)
        throw validation_error("expected an integer for " + what + ", got '" + s + "'");
    return static_cast<int>(v);
}

// Object grammar: "(p,i)" | "d1,...,dn[@shift]" | "P3" | "I2" | "S1", each of
// the letter forms also taking an optional "@shift".
DerivedIndec parse_object(DerivedCategory& dc, std::string spec) {
    spec.erase(std::remove_if(spec.begin(), spec.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               spec.end());
    if (spec.empty()) throw validation_error("empty object spec");

    if (spec.front() == '(') {
        if (spec.back() != ')')
            throw validation_error("object spec '" + spec + "' is missing ')'");
        const std::string inner = spec.substr(1, spec.size() - 2);
        const auto comma = inner.find(',');
        if (comma == std::string::npos)
            throw validation_error("coordinate spec '" + spec + "' needs the form (p,i)");
        const int p = parse_int_str(inner.substr(0, comma), "slice");
        const int i = parse_int_str(inner.substr(comma + 1), "vertex");
        if (i < 1 || i > dc.quiver().rank())
            throw validation_error("vertex " + std::to_string(i) + " out of range 1.." +
                                   std::to_string(dc.quiver().rank()));
        return dc.resolve({p, i});
    }

    int shift = 0;
    std::string base = spec;
    const auto at = spec.find('@');
    if (at != std::string::npos) {
        base = spec.substr(0, at);
        shift = parse_int_str(spec.substr(at + 1), "shift");
    }

    const int n = dc.quiver().rank();
    if (!base.empty() && (base[0] == 'P' || base[0] == 'I' || base[0] == 'S')) {
        const int k = parse_int_str(base.substr(1), "vertex");
        if (k < 1 || k > n)
            throw validation_error("vertex " + std::to_string(k) + " out of range 1.." +
                                   std::to_string(n));
        DimVector d;
        if (base[0] == 'P') {
            d = dc.cartan().dim_projective(k);
        } else if (base[0] == 'I') {
            d = dc.cartan().dim_injective(k);
        } else {
            d.assign(static_cast<std::size_t>(n), 0);
            d[static_cast<std::size_t>(k - 1)] = 1;
        }
        return dc.object(d, shift);
    }

    DimVector d;
    std::size_t start = 0;
    while (start <= base.size()) {
        auto comma = base.find(',', start);
        if (comma == std::string::npos) comma = base.size();
        d.push_back(parse_int_str(base.substr(start, comma - start), "dimension entry"));
        start = comma + 1;
    }
    if (d.size() != static_cast<std::size_t>(n))
        throw validation_error("dimension vector has " + std::to_string(d.size()) +
                               " entries, quiver has " + std::to_string(n) + " vertices");
    if (dc.cartan().root_index(d) < 0)
        throw validation_error("dimension vector " + dim_str(d) +
                               " does not belong to an indecomposable");
    return dc.object(d, shift);
}

std::string cache_dir_from_env() {
    const char* dir = std::getenv("ORBITCAT_CACHE_DIR");
    return dir ? std::string(dir) : std::string();
}

ordered_json indec_json(const DerivedIndec& x) {
    ordered_json j;
    j["dim"] = x.dimv;
    j["shift"] = x.shift;
    j["coord"] = {x.coord.p, x.coord.i};
    return j;
}

ordered_json rep_json(const OrbitObjectRep& x) {
    ordered_json j;
    j["dim"] = x.dimv;
    j["shift"] = x.shift;
    j["coord"] = {x.coord.p, x.coord.i};
    return j;
}

ordered_json components_json(const std::map<int, std::int64_t>& m) {
    ordered_json j = ordered_json::object();
    for (const auto& [k, v] : m) j[std::to_string(k)] = v;
    return j;
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

struct CommonArgs {
    std::string quiver_path;
    std::string functor;
    bool json = false;
};

int run_classify(const std::string& qpath, bool json_out) {
    Quiver q = load_quiver(qpath);
    DynkinClass d = classify_dynkin(q);
    if (json_out) {
        ordered_json j;
        j["schema"] = kSchema;
        j["command"] = "classify";
        j["dynkin"] = d.is_dynkin();
        if (d.is_dynkin()) {
            j["name"] = d.name();
            j["rank"] = d.rank;
            j["coxeter_number"] = d.coxeter_number;
            j["positive_roots"] = d.rank * d.coxeter_number / 2;
        } else {
            j["witness"] = d.witness;
        }
        emit(j);
    } else if (d.is_dynkin()) {
        std::cout << d.name() << ": rank " << d.rank << ", Coxeter number "
                  << d.coxeter_number << ", " << d.rank * d.coxeter_number / 2
                  << " positive roots\n";
    } else {
        std::cout << "not a simply laced Dynkin quiver: " << d.witness << "\n";
    }
    return d.is_dynkin() ? 0 : 1;
}

int run_hom(const std::string& qpath, const std::vector<std::string>& objects,
            const std::string& oracle, bool json_out) {
    if (objects.size() != 2)
        throw validation_error("hom needs exactly two --object arguments");
    if (oracle != "mesh" && oracle != "rep" && oracle != "both")
        throw validation_error("oracle must be one of mesh, rep, both");
    Quiver q = load_quiver(qpath);
    DerivedCategory dc(q);
    DerivedIndec x = parse_object(dc, objects[0]);
    DerivedIndec y = parse_object(dc, objects[1]);

    HomCache cache(cache_dir_from_env(), q.hash_hex());
    std::optional<std::int64_t> mesh_dim, rep_dim;
    bool mesh_cached = false;
    if (oracle != "rep") {
        if (auto c = cache.lookup(x.coord, y.coord)) {
            mesh_dim = *c;
            mesh_cached = true;
        }
    }

    const bool want_mesh = oracle != "rep" && !mesh_dim;
    const bool want_rep = oracle != "mesh";
    if (want_mesh && want_rep) {
        // independent category instances per lane: the per-instance caches
        // are not synchronized
        std::exception_ptr mesh_err, rep_err;
        std::int64_t md = 0, rd = 0;
        std::thread tm([&] {
            try {
                DerivedCategory lane(q);
                md = lane.hom_dim_mesh(x.coord, y.coord);
            } catch (...) {
                mesh_err = std::current_exception();
            }
        });
        std::thread tr([&] {
            try {
                DerivedCategory lane(q);
                rd = lane.hom_dim_rep(lane.resolve(x.coord), lane.resolve(y.coord));
            } catch (...) {
                rep_err = std::current_exception();
            }
        });
        tm.join();
        tr.join();
        if (mesh_err) std::rethrow_exception(mesh_err);
        if (rep_err) std::rethrow_exception(rep_err);
        mesh_dim = md;
        rep_dim = rd;
    } else if (want_mesh) {
        mesh_dim = dc.hom_dim_mesh(x.coord, y.coord);
    } else if (want_rep) {
        rep_dim = dc.hom_dim_rep(x, y);
    }

    if (mesh_dim && !mesh_cached) {
        cache.store(x.coord, y.coord, *mesh_dim);
        cache.flush();
    }

    bool agree = true;
    if (mesh_dim && rep_dim && *mesh_dim != *rep_dim) agree = false;
    const std::int64_t dim = mesh_dim ? *mesh_dim : *rep_dim;

    if (json_out) {
        ordered_json j;
        j["schema"] = kSchema;
        j["command"] = "hom";
        j["x"] = indec_json(x);
        j["y"] = indec_json(y);
        j["oracle"] = oracle;
        j["dim"] = dim;
        if (mesh_dim) j["mesh_dim"] = *mesh_dim;
        if (rep_dim) j["rep_dim"] = *rep_dim;
        if (mesh_dim && rep_dim) j["oracles_agree"] = agree;
        emit(j);
    } else {
        std::cout << "hom " << x.str() << " -> " << y.str() << ": " << dim << "\n";
        if (mesh_dim && rep_dim && !agree)
            std::cout << "oracle disagreement: mesh " << *mesh_dim << ", rep " << *rep_dim
                      << "\n";
    }
    if (!agree) {
        std::cerr << "error: mesh and rep oracles disagree\n";
        return 1;
    }
    return 0;
}

int run_zq(const std::string& qpath, const std::string& window, bool dot, bool json_out) {
    Quiver q = load_quiver(qpath);
    DerivedCategory dc(q);
    int p_min = -2, p_max = 2;
    if (!window.empty()) {
        const auto colon = window.find(':');
        if (colon == std::string::npos)
            throw validation_error("window must have the form min:max");
        p_min = parse_int_str(window.substr(0, colon), "window start");
        p_max = parse_int_str(window.substr(colon + 1), "window end");
        if (p_min > p_max) throw validation_error("window start exceeds window end");
    }
    if (dot) {
        std::cout << zq_window_dot(dc, p_min, p_max);
        return 0;
    }
    if (json_out) {
        ordered_json j;
        j["schema"] = kSchema;
        j["command"] = "zq";
        j["window"] = {p_min, p_max};
        j["vertices"] = ordered_json::array();
        for (int p = p_min; p <= p_max; ++p)
            for (int i = 1; i <= q.rank(); ++i)
                j["vertices"].push_back(indec_json(dc.resolve({p, i})));
        emit(j);
        return 0;
    }
    for (int p = p_min; p <= p_max; ++p)
        for (int i = 1; i <= q.rank(); ++i) {
            DerivedIndec obj = dc.resolve({p, i});
            std::cout << obj.coord.str() << "  " << dim_str(obj.dimv) << "@" << obj.shift
                      << "\n";
        }
    return 0;
}

struct OrbitSession {
    Quiver quiver;
    std::unique_ptr<DerivedCategory> dc;
    std::unique_ptr<OrbitCategory> oc;
};

OrbitSession open_orbit(const CommonArgs& args) {
    if (args.functor.empty()) throw validation_error("--functor is required");
    OrbitSession s{load_quiver(args.quiver_path), nullptr, nullptr};
    FunctorWord w = FunctorWord::parse(args.functor);
    s.dc = std::make_unique<DerivedCategory>(s.quiver);
    s.oc = std::make_unique<OrbitCategory>(*s.dc, w);
    return s;
}

int run_orbit_check(const CommonArgs& args) {
    OrbitSession s = open_orbit(args);
    const OrbitConditions& c = s.oc->conditions();
    if (args.json) {
        ordered_json j;
        j["schema"] = kSchema;
        j["command"] = "orbit check";
        j["word"] = s.oc->word().str();
        j["drift"] = s.oc->shift_drift();
        j["ok"] = c.ok;
        j["finite_heart_hits"] = c.finite_heart_hits;
        j["shifts_bounded"] = c.shifts_bounded;
        j["objectwise_periodic"] = c.objectwise_periodic;
        j["shift_bound"] = c.shift_bound;
        j["witness"] = c.witness;
        j["evidence"] = c.evidence;
        emit(j);
    } else {
        std::cout << "word: " << s.oc->word().str() << "\n";
        std::cout << "shift drift per Coxeter period: " << s.oc->shift_drift() << "\n";
        std::cout << "finite heart hits: " << (c.finite_heart_hits ? "yes" : "no") << "\n";
        std::cout << "shifts bounded: "
                  << (c.shifts_bounded ? "yes, bound " + std::to_string(c.shift_bound) : "no")
                  << "\n";
        std::cout << "admissible: " << (c.ok ? "yes" : "no") << "\n";
        if (!c.witness.empty()) std::cout << "witness: " << c.witness << "\n";
        for (const auto& e : c.evidence) std::cout << "  " << e << "\n";
    }
    return c.ok ? 0 : 1;
}

int run_orbit_objects(const CommonArgs& args) {
    OrbitSession s = open_orbit(args);
    const auto& obj = s.oc->objects();
    if (args.json) {
        ordered_json j;
        j["schema"] = kSchema;
        j["command"] = "orbit objects";
        j["word"] = s.oc->word().str();
        j["count"] = obj.size();
        j["objects"] = ordered_json::array();
        for (const auto& o : obj) j["objects"].push_back(rep_json(o));
        emit(j);
    } else {
        std::cout << obj.size() << " objects\n";
        for (std::size_t k = 0; k < obj.size(); ++k)
            std::cout << "  [" << k << "] " << obj[k].str() << " at " << obj[k].coord.str()
                      << "\n";
    }
    return 0;
}

int run_orbit_hom(const CommonArgs& args, const std::vector<std::string>& objects) {
    if (objects.size() != 2)
        throw validation_error("orbit hom needs exactly two --object arguments");
    OrbitSession s = open_orbit(args);
    DerivedIndec xi = parse_object(*s.dc, objects[0]);
    DerivedIndec yi = parse_object(*s.dc, objects[1]);
    OrbitObjectRep x = s.oc->canonical_rep(xi.dimv, xi.shift);
    OrbitObjectRep y = s.oc->canonical_rep(yi.dimv, yi.shift);
    OrbitHom h = s.oc->hom(x, y);
    if (args.json) {
        ordered_json j;
        j["schema"] = kSchema;
        j["command"] = "orbit hom";
        j["word"] = s.oc->word().str();
        j["x"] = rep_json(x);
        j["y"] = rep_json(y);
        j["components"] = components_json(h.components);
        j["total"] = h.total;
        emit(j);
    } else {
        std::cout << "hom " << x.str() << " -> " << y.str() << ": total " << h.total << "\n";
        for (const auto& [k, d] : h.components)
            std::cout << "  power " << k << ": " << d << "\n";
    }
    return 0;
}

int run_orbit_endalg(const CommonArgs& args, const std::string& object) {
    if (object.empty()) throw validation_error("--object is required");
    OrbitSession s = open_orbit(args);
    DerivedIndec xi = parse_object(*s.dc, object);
    OrbitObjectRep x = s.oc->canonical_rep(xi.dimv, xi.shift);
    EndAlgebra e = s.oc->end_algebra(x);
    const bool unit_ok = e.check_identity();
    const bool assoc_ok = e.check_associativity();
    if (args.json) {
        ordered_json j;
        j["schema"] = kSchema;
        j["command"] = "orbit endalg";
        j["word"] = s.oc->word().str();
        j["object"] = rep_json(e.object);
        j["components"] = components_json(e.component_dims);
        j["total"] = e.total_dim;
        j["unit_ok"] = unit_ok;
        j["associative"] = assoc_ok;
        emit(j);
    } else {
        std::cout << "End(" << e.object.str() << "): dimension " << e.total_dim << "\n";
        for (const auto& [k, d] : e.component_dims)
            std::cout << "  power " << k << ": " << d << "\n";
        std::cout << "unit law: " << (unit_ok ? "ok" : "violated") << "\n";
        std::cout << "associativity: " << (assoc_ok ? "ok" : "violated") << "\n";
    }
    return unit_ok && assoc_ok ? 0 : 1;
}

int run_orbit_cy(const CommonArgs& args, int max_d) {
    if (max_d < 0) throw validation_error("--max-d must be nonnegative");
    OrbitSession s = open_orbit(args);
    CyProbe p = s.oc->cy_probe(max_d);
    if (args.json) {
        ordered_json j;
        j["schema"] = kSchema;
        j["command"] = "orbit cy";
        j["word"] = s.oc->word().str();
        j["max_d"] = max_d;
        j["compatible"] = p.compatible;
        if (p.dimension)
            j["dimension"] = *p.dimension;
        else
            j["dimension"] = nullptr;
        emit(j);
    } else {
        if (p.dimension)
            std::cout << "serre power matches shift power " << *p.dimension << "\n";
        else
            std::cout << "no shift power up to " << max_d << " matches the serre functor\n";
        std::cout << "compatible powers:";
        for (int d : p.compatible) std::cout << " " << d;
        std::cout << "\n";
    }
    return 0;
}

int run_orbit_ar(const CommonArgs& args, bool dot) {
    OrbitSession s = open_orbit(args);
    ArQuiverData ar = s.oc->ar_quiver();
    if (dot) {
        std::cout << ar_quiver_dot(s.quiver, ar);
        return 0;
    }
    if (args.json) {
        ordered_json j;
        j["schema"] = kSchema;
        j["command"] = "orbit ar";
        j["word"] = s.oc->word().str();
        j["vertices"] = ordered_json::array();
        for (const auto& v : ar.vertices) j["vertices"].push_back(rep_json(v));
        j["edges"] = ordered_json::array();
        for (const auto& e : ar.edges) j["edges"].push_back({e.first, e.second});
        j["tau"] = ar.tau_of;
        emit(j);
    } else {
        std::cout << ar.vertices.size() << " vertices\n";
        for (std::size_t k = 0; k < ar.vertices.size(); ++k)
            std::cout << "  [" << k << "] " << ar.vertices[k].str() << "\n";
        for (const auto& e : ar.edges)
            std::cout << "  [" << e.first << "] -> [" << e.second << "]\n";
        std::cout << "translation:";
        for (std::size_t k = 0; k < ar.tau_of.size(); ++k)
            std::cout << " " << k << "->" << ar.tau_of[k];
        std::cout << "\n";
    }
    return 0;
}

int guarded(const std::function<int()>& job) {
    try {
        return job();
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const unsupported_quiver& e) {
        std::cerr << "error: " << e.what();
        if (!e.witness.empty()) std::cerr << " (" << e.witness << ")";
        std::cerr << "\n";
        return 1;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact invariants of derived categories of Dynkin quivers and their orbit "
                 "categories"};
    app.require_subcommand(1);

    std::function<int()> job;

    // classify
    std::string cl_quiver;
    bool cl_json = false;
    auto* classify = app.add_subcommand("classify", "recognize the Dynkin type of a quiver");
    classify->add_option("-q,--quiver", cl_quiver, "quiver JSON file, or - for stdin")
        ->required();
    classify->add_flag("--json", cl_json, "machine readable output");
    classify->callback([&] { job = [&] { return run_classify(cl_quiver, cl_json); }; });

    // hom
    std::string h_quiver, h_oracle = "both";
    std::vector<std::string> h_objects;
    bool h_json = false;
    auto* hom = app.add_subcommand("hom", "hom dimension between two objects");
    hom->add_option("-q,--quiver", h_quiver, "quiver JSON file, or - for stdin")->required();
    hom->add_option("--object", h_objects, "object spec, given twice: source then target")
        ->expected(0, 2);
    hom->add_option("--oracle", h_oracle, "mesh, rep, or both (default both)");
    hom->add_flag("--json", h_json, "machine readable output");
    hom->callback([&] { job = [&] { return run_hom(h_quiver, h_objects, h_oracle, h_json); }; });

    // zq
    std::string z_quiver, z_window;
    bool z_dot = false, z_json = false;
    auto* zq = app.add_subcommand("zq", "list a window of the repetition quiver");
    zq->add_option("-q,--quiver", z_quiver, "quiver JSON file, or - for stdin")->required();
    zq->add_option("--window", z_window, "slice window min:max (default -2:2)");
    zq->add_flag("--dot", z_dot, "emit DOT");
    zq->add_flag("--json", z_json, "machine readable output");
    zq->callback([&] { job = [&] { return run_zq(z_quiver, z_window, z_dot, z_json); }; });

    // orbit family
    CommonArgs oa;
    auto* orbit = app.add_subcommand("orbit", "orbit category of a gluing word");
    orbit->require_subcommand(1);
    orbit->fallthrough();
    orbit->add_option("-q,--quiver", oa.quiver_path, "quiver JSON file, or - for stdin")
        ->required();
    orbit->add_option("-f,--functor", oa.functor, "gluing word, e.g. 't^-1*S' or 'v'")
        ->required();
    orbit->add_flag("--json", oa.json, "machine readable output");

    auto* ocheck = orbit->add_subcommand("check", "test the gluing word for admissibility");
    ocheck->callback([&] { job = [&] { return run_orbit_check(oa); }; });

    auto* oobjects = orbit->add_subcommand("objects", "list the canonical objects");
    oobjects->callback([&] { job = [&] { return run_orbit_objects(oa); }; });

    std::vector<std::string> oh_objects;
    auto* ohom = orbit->add_subcommand("hom", "graded hom between two orbit objects");
    ohom->add_option("--object", oh_objects, "object spec, given twice: source then target")
        ->expected(0, 2);
    ohom->callback([&] { job = [&] { return run_orbit_hom(oa, oh_objects); }; });

    std::string oe_object;
    auto* oend = orbit->add_subcommand("endalg", "endomorphism algebra of an orbit object");
    oend->add_option("--object", oe_object, "object spec")->required();
    oend->callback([&] { job = [&] { return run_orbit_endalg(oa, oe_object); }; });

    int ocy_max = 6;
    auto* ocy = orbit->add_subcommand("cy", "probe serre power against shift powers");
    ocy->add_option("--max-d", ocy_max, "largest shift power to try (default 6)");
    ocy->callback([&] { job = [&] { return run_orbit_cy(oa, ocy_max); }; });

    bool oar_dot = false;
    auto* oar = orbit->add_subcommand("ar", "quiver of irreducible maps between objects");
    oar->add_flag("--dot", oar_dot, "emit DOT");
    oar->callback([&] { job = [&] { return run_orbit_ar(oa, oar_dot); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (!job) return 2;
    return guarded(job);
}
