// dualcat: command-line front end.
//
// Exit codes: 0 = ran (any verdict), 1 = malformed input or usage,
// 2 = validation failure, unknown selector, or a refused report.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "dualcat/dualcat.hpp"

namespace {

using namespace dualcat;
using io::json;

struct Options {
    bool json = false;
    bool cross_check = false;
    std::optional<int> max_degree;
    std::string input;
    bool reduced = false;
    std::string relative;
    std::string simplex;
    std::string method = "all";
};

struct Loaded {
    std::optional<catcore::FiniteCategory> category;
    std::optional<scomplex::SimplicialComplex> complex;
    cmodule::CategoryPtr poset; // the category itself, or the face poset
};

Loaded load(const std::string& input)
{
    Loaded L;
    io::Input in;
    if (zoo::is_generator_spec(input)) {
        auto g = zoo::generate(input);
        if (auto* c = std::get_if<catcore::FiniteCategory>(&g))
            in = *c;
        else
            in = std::get<scomplex::SimplicialComplex>(g);
    } else if (input == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        in = io::input_from_json(io::parse_text(ss.str()));
    } else {
        in = io::input_from_json(io::read_file(input));
    }
    if (auto* c = std::get_if<catcore::FiniteCategory>(&in)) {
        L.category = *c;
        L.poset = cmodule::share(*c);
    } else {
        L.complex = std::get<scomplex::SimplicialComplex>(in);
        L.poset = cmodule::share(scomplex::face_poset(*L.complex));
    }
    return L;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

std::string degree_range_text(const zlat::GradedGroups& g, const std::string& sym, int lo, int hi,
                              const std::optional<int>& max_degree)
{
    std::ostringstream os;
    if (max_degree) hi = std::min(hi, *max_degree);
    for (int d = lo; d <= hi; ++d) os << sym << d << " = " << g.at(d) << "\n";
    return os.str();
}

json ranged_json(const zlat::GradedGroups& g, int lo, int hi, const std::optional<int>& max_degree)
{
    if (max_degree) hi = std::min(hi, *max_degree);
    json j = json::object();
    for (int d = lo; d <= hi; ++d) j[std::to_string(d)] = io::group_to_json(g.at(d));
    return j;
}

int top_degree(const Loaded& L) { return catcore::Nerve(*L.poset).max_degree(); }

// ---------------------------------------------------------------------------

int cmd_validate(const Options& o)
{
    const Loaded L = load(o.input);
    const auto& C = *L.poset;
    const auto sizes = catcore::nondegenerate_nerve_sizes(C);
    std::size_t non_id = 0;
    for (catcore::MorIdx m = 0; m < C.morphism_count(); ++m) non_id += C.is_identity(m) ? 0 : 1;
    if (o.json) {
        json j;
        j["kind"] = L.complex ? "complex" : "category";
        if (L.complex) {
            j["dimension"] = L.complex->dimension();
            j["f_vector"] = L.complex->f_vector();
        }
        j["objects"] = C.object_count();
        j["non_identity_morphisms"] = non_id;
        j["nerve_sizes"] = sizes;
        j["poset"] = C.is_poset();
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (L.complex) {
        std::cout << "valid complex: dimension " << L.complex->dimension() << ", f-vector";
        for (auto f : L.complex->f_vector()) std::cout << " " << f;
        std::cout << "\n";
    }
    std::cout << "valid category: " << C.object_count() << " objects, " << non_id << " non-identity morphisms, "
              << (C.is_poset() ? "poset" : "not a poset") << "\nnerve sizes:";
    for (auto s : sizes) std::cout << " " << s;
    std::cout << "\n";
    return 0;
}

int cmd_gen(const Options& o)
{
    auto g = zoo::generate(o.input);
    json j = std::holds_alternative<catcore::FiniteCategory>(g) ? io::category_to_json(std::get<catcore::FiniteCategory>(g))
                                                                 : io::complex_to_json(std::get<scomplex::SimplicialComplex>(g));
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_homology(const Options& o)
{
    const Loaded L = load(o.input);
    const auto& P = L.poset;
    const int top = top_degree(L);
    const auto Zl = cmodule::constant_module(P, cmodule::Variance::left);
    const auto Zr = cmodule::constant_module(P, cmodule::Variance::right);

    if (!o.relative.empty()) {
        std::vector<catcore::ObjIdx> sub;
        for (const auto& id : split(o.relative, ',')) {
            auto x = P->find_object(id);
            if (!x) throw Error(ErrorKind::UnknownFace, "unknown object or face '" + id + "'", {id});
            sub.push_back(*x);
        }
        const auto rel = scomplex::relative_cohomology(Zl, sub);
        if (o.json) {
            json j;
            j["relative_to"] = split(o.relative, ',');
            j["cohomology"] = ranged_json(rel, 0, top, o.max_degree);
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "relative cohomology\n" << degree_range_text(rel, "H^", 0, top, o.max_degree);
        }
        return 0;
    }

    const int lo = o.reduced ? -1 : 0;
    zlat::GradedGroups co, ho;
    if (o.reduced) {
        co = scomplex::reduced_category_cohomology(P);
        ho = scomplex::reduced_category_homology(P);
    } else {
        co = cmodule::ext(Zl, Zl);
        ho = cmodule::tor(Zr, Zl);
    }
    std::optional<bool> agrees;
    if (o.cross_check && L.complex) {
        const auto sc = o.reduced ? scomplex::reduced_cohomology(*L.complex) : scomplex::cohomology(*L.complex);
        const auto sh = o.reduced ? scomplex::reduced_homology(*L.complex) : scomplex::homology(*L.complex);
        agrees = sc == co && sh == ho;
    }
    if (o.json) {
        json j;
        j["reduced"] = o.reduced;
        j["cohomology"] = ranged_json(co, lo, top, o.max_degree);
        j["homology"] = ranged_json(ho, lo, top, o.max_degree);
        if (agrees) j["simplicial_cross_check"] = *agrees ? "pass" : "fail";
        std::cout << j.dump(2) << "\n";
    } else {
        const std::string c = o.reduced ? "~H^" : "H^";
        const std::string h = o.reduced ? "~H_" : "H_";
        std::cout << degree_range_text(co, c, lo, top, o.max_degree) << degree_range_text(ho, h, lo, top, o.max_degree);
        if (agrees) std::cout << "simplicial cross-check: " << (*agrees ? "pass" : "fail") << "\n";
    }
    return 0;
}

int cmd_local(const Options& o)
{
    const Loaded L = load(o.input);
    if (!L.complex) throw Error(ErrorKind::MalformedInput, "local cohomology needs a simplicial complex");
    if (o.simplex.empty()) throw Error(ErrorKind::MalformedInput, "--simplex is required");
    const scomplex::Face face = L.complex->face(split(o.simplex, ','));
    std::vector<scomplex::LocalMethod> methods;
    if (o.method == "all")
        methods = {scomplex::LocalMethod::link, scomplex::LocalMethod::pair, scomplex::LocalMethod::ext};
    else
        methods = {scomplex::parse_local_method(o.method)};
    const scomplex::LocalCohomology engine(*L.complex);
    const int top = std::max(L.complex->dimension(), 0);
    std::vector<zlat::GradedGroups> results;
    for (auto m : methods) results.push_back(engine.compute(face, m));
    bool agree = true;
    for (const auto& r : results) agree = agree && r == results.front();
    if (o.json) {
        json j;
        j["face"] = scomplex::face_id(face);
        j["methods"] = json::object();
        for (std::size_t i = 0; i < methods.size(); ++i)
            j["methods"][scomplex::to_string(methods[i])] = ranged_json(results[i], 0, top, o.max_degree);
        if (methods.size() > 1) j["agree"] = agree;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "face " << scomplex::face_id(face) << "\n";
    for (std::size_t i = 0; i < methods.size(); ++i)
        std::cout << "method " << scomplex::to_string(methods[i]) << "\n"
                  << degree_range_text(results[i], "H^", 0, top, o.max_degree);
    if (methods.size() > 1) std::cout << "methods agree: " << (agree ? "yes" : "no") << "\n";
    return 0;
}

struct ManifoldSummary {
    std::optional<bool> constant;
    std::optional<dualcert::OrientabilityReport> orient;
};

ManifoldSummary summarize(const dualcert::DualityCertificate& cert)
{
    ManifoldSummary s;
    if (!cert.certified() || !cert.dualizing) return s;
    for (const auto& v : cert.dualizing_values)
        if (!(v == zlat::FgAbelianGroup::free(1))) return s;
    s.constant = dualcert::is_constant_module(*cert.dualizing).constant;
    s.orient = dualcert::orientability(cert);
    return s;
}

int cmd_certify(const Options& o)
{
    const Loaded L = load(o.input);
    dualcert::DualityCertificate cert =
        L.complex ? dualcert::certify_simplicial(*L.complex) : dualcert::certify_generic(L.poset);
    if (o.cross_check) {
        if (L.complex) {
            const auto g = dualcert::certify_generic(L.poset);
            const bool same = g.verdict == cert.verdict && g.degree == cert.degree && g.dualizing_values == cert.dualizing_values;
            cert.checks["generic_equivalence"] = same ? "pass" : "fail";
        }
        if (cert.certified() && cert.dualizing) {
            const auto rep = dualcert::verify_duality_isomorphism(cert, dualcert::standard_test_modules(cert.category, false));
            cert.checks["duality_isomorphism"] = rep.all_match() ? "pass" : "fail";
            const auto back = dualcert::certify_dualizing_module(cert);
            cert.checks["dualizing_round_trip"] =
                back.checks.at("round_trip_degree") == "pass" && back.checks.at("round_trip_values") == "pass" ? "pass" : "fail";
        } else {
            cert.checks["duality_isomorphism"] = "skipped";
            cert.checks["dualizing_round_trip"] = "skipped";
        }
    }
    const ManifoldSummary ms = summarize(cert);
    if (o.json) {
        json j = io::certificate_to_json(cert);
        json r;
        r["dualizing_constant"] = ms.constant ? json(*ms.constant) : json(nullptr);
        r["orientable"] = ms.orient ? json(ms.orient->orientable) : json(nullptr);
        r["top_homology"] = ms.orient ? io::group_to_json(ms.orient->top_homology) : json(nullptr);
        j["report"] = r;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "verdict: " << dualcert::to_string(cert.verdict) << "\n";
    if (cert.degree) std::cout << "degree: " << *cert.degree << "\n";
    if (cert.certified()) {
        std::cout << "dualizing values:\n";
        for (std::size_t x = 0; x < cert.objects.size(); ++x)
            std::cout << "  " << cert.objects[x] << ": " << cert.dualizing_values[x] << "\n";
        if (!cert.dualizing) std::cout << "dualizing module: has torsion values, not assembled\n";
        if (ms.constant) std::cout << "dualizing module: " << (*ms.constant ? "constant" : "non-constant") << "\n";
        if (ms.orient)
            std::cout << "orientable: " << (ms.orient->orientable ? "true" : "false") << " (H_" << ms.orient->dimension
                      << " = " << ms.orient->top_homology << ")\n";
    }
    for (const auto& w : cert.witnesses) {
        std::cout << "witness: " << w.reason << ":";
        for (std::size_t i = 0; i < w.objects.size(); ++i) {
            std::cout << " " << w.objects[i];
            if (w.degrees.size() == w.objects.size()) std::cout << " (n = " << w.degrees[i] << ")";
        }
        if (w.degrees.size() != w.objects.size()) {
            std::cout << " degrees";
            for (int d : w.degrees) std::cout << " " << d;
        }
        std::cout << "\n";
    }
    std::cout << "checks:\n";
    for (const auto& [k, v] : cert.checks) std::cout << "  " << k << ": " << v << "\n";
    return 0;
}

int cmd_poincare(const Options& o)
{
    const Loaded L = load(o.input);
    const auto cert = L.complex ? dualcert::certify_simplicial(*L.complex) : dualcert::certify_generic(L.poset);
    const auto rep = dualcert::poincare_report(cert);
    if (o.json) {
        json j;
        j["dimension"] = rep.dimension;
        j["rows"] = json::array();
        for (const auto& r : rep.rows)
            j["rows"].push_back({{"degree", r.degree},
                                 {"homology", io::group_to_json(r.homology)},
                                 {"cohomology", io::group_to_json(r.cohomology)},
                                 {"match", r.match}});
        j["all_match"] = rep.all_match();
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "dimension " << rep.dimension << "\n";
    for (const auto& r : rep.rows)
        std::cout << "H_" << r.degree << " = " << r.homology << "  H^" << rep.dimension - r.degree << " = " << r.cohomology
                  << "  " << (r.match ? "match" : "MISMATCH") << "\n";
    std::cout << (rep.all_match() ? "all degrees match" : "mismatch found") << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Duality certification for finite loop-free categories and simplicial complexes"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_flag("--json", o.json, "Emit JSON");
    app.add_flag("--cross-check", o.cross_check, "Run the independent cross-checks");
    app.add_option("--max-degree", o.max_degree, "Highest degree to print")->check(CLI::NonNegativeNumber);

    const std::string input_help = "Input: JSON file, '-' for stdin, or gen:<name>(<params>)";
    auto* validate = app.add_subcommand("validate", "Validate a category or complex");
    validate->add_option("input", o.input, input_help)->required();
    auto* gen = app.add_subcommand("gen", "Emit a generated example as JSON");
    gen->add_option("spec", o.input, "gen:<name>(<params>)")->required();
    auto* homology = app.add_subcommand("homology", "Cohomology and homology tables");
    homology->add_option("input", o.input, input_help)->required();
    homology->add_flag("--reduced", o.reduced, "Reduced groups");
    homology->add_option("--relative", o.relative, "Comma-separated object or face ids of the subcategory");
    auto* local = app.add_subcommand("local", "Local cohomology at a face");
    local->add_option("input", o.input, input_help)->required();
    local->add_option("--simplex", o.simplex, "Comma-separated vertices of the face")->required();
    local->add_option("--method", o.method, "link, pair, ext or all");
    auto* certify = app.add_subcommand("certify", "Decide duality and compute the dualizing module");
    certify->add_option("input", o.input, input_help)->required();
    auto* poincare = app.add_subcommand("poincare", "Poincare duality table of an orientable manifold-like complex");
    poincare->add_option("input", o.input, input_help)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (validate->parsed()) return cmd_validate(o);
        if (gen->parsed()) return cmd_gen(o);
        if (homology->parsed()) return cmd_homology(o);
        if (local->parsed()) return cmd_local(o);
        if (certify->parsed()) return cmd_certify(o);
        if (poincare->parsed()) return cmd_poincare(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        for (const auto& w : e.witness()) std::cerr << "  at: " << w << "\n";
        return e.kind() == ErrorKind::MalformedInput ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
