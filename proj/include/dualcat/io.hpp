#pragma once

// JSON formats for categories, complexes, modules and certificates.

#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "dualcat/catcore.hpp"
#include "dualcat/cmodule.hpp"
#include "dualcat/dualcert.hpp"
#include "dualcat/error.hpp"
#include "dualcat/scomplex.hpp"
#include "dualcat/zlat.hpp"

namespace dualcat::io {

using json = nlohmann::ordered_json;
using catcore::FiniteCategory;
using cmodule::CategoryPtr;
using cmodule::CModule;
using dualcert::DualityCertificate;
using scomplex::SimplicialComplex;
using zlat::FgAbelianGroup;
using zlat::GradedGroups;
using zlat::IntMatrix;
using zlat::Integer;

namespace detail {

[[noreturn]] inline void malformed(const std::string& what) { throw Error(ErrorKind::MalformedInput, what); }

inline const json& field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) malformed(std::string("missing key '") + key + "'");
    return j.at(key);
}

inline std::string as_string(const json& j, const std::string& what)
{
    if (!j.is_string()) malformed(what + " must be a string");
    return j.get<std::string>();
}

inline std::vector<std::string> string_list(const json& j, const std::string& what)
{
    if (!j.is_array()) malformed(what + " must be an array");
    std::vector<std::string> out;
    for (const auto& e : j) out.push_back(as_string(e, what + " entry"));
    return out;
}

inline json integer_to_json(const Integer& v)
{
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return json(v.convert_to<long long>());
    return json(v.str());
}

inline Integer integer_from_json(const json& j)
{
    if (j.is_number_integer()) return Integer(j.get<long long>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos) malformed("bad integer '" + s + "'");
        return Integer(s);
    }
    malformed("matrix entries must be integers");
}

inline json matrix_to_json(const IntMatrix& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) r.push_back(integer_to_json(m(i, k)));
        rows.push_back(std::move(r));
    }
    return rows;
}

inline IntMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const std::string& what)
{
    if (!j.is_array()) malformed(what + " must be an array of rows");
    if (j.empty() && (rows == 0 || cols == 0)) return IntMatrix(rows, cols);
    if (j.size() != rows) throw Error(ErrorKind::DimensionMismatch, what + " has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& r = j[i];
        if (!r.is_array() || r.size() != cols)
            throw Error(ErrorKind::DimensionMismatch, what + " row " + std::to_string(i) + " has wrong length");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = integer_from_json(r[k]);
    }
    return m;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Categories
// ---------------------------------------------------------------------------

/// {"objects": [..], "morphisms": [{"id", "src", "dst"}], "compose": [[g, f, gf]]}
/// with implicit identities; an optional "identities" object switches to
/// explicit identities listed among the morphisms.
inline catcore::RawCategory raw_category_from_json(const json& j)
{
    catcore::RawCategory raw;
    raw.objects = detail::string_list(detail::field(j, "objects"), "objects");
    const json& ms = j.contains("morphisms") ? j.at("morphisms") : json::array();
    if (!ms.is_array()) detail::malformed("morphisms must be an array");
    for (const auto& m : ms)
        raw.morphisms.push_back({detail::as_string(detail::field(m, "id"), "morphism id"),
                                 detail::as_string(detail::field(m, "src"), "morphism src"),
                                 detail::as_string(detail::field(m, "dst"), "morphism dst")});
    const json& cs = j.contains("compose") ? j.at("compose") : json::array();
    if (!cs.is_array()) detail::malformed("compose must be an array");
    for (const auto& c : cs) {
        const auto t = detail::string_list(c, "composition entry");
        if (t.size() != 3) detail::malformed("composition entries are [g, f, gf]");
        raw.compose.push_back({t[0], t[1], t[2]});
    }
    if (j.contains("identities")) {
        const json& ids = j.at("identities");
        if (!ids.is_object()) detail::malformed("identities must map objects to morphism ids");
        for (const auto& [o, id] : ids.items()) raw.identities[o] = detail::as_string(id, "identity id");
    }
    return raw;
}

inline FiniteCategory category_from_json(const json& j) { return FiniteCategory::validate(raw_category_from_json(j)); }

inline json category_to_json(const FiniteCategory& C)
{
    const catcore::RawCategory raw = C.to_raw();
    json j;
    j["objects"] = raw.objects;
    j["morphisms"] = json::array();
    for (const auto& m : raw.morphisms) j["morphisms"].push_back({{"id", m.id}, {"src", m.src}, {"dst", m.dst}});
    j["compose"] = json::array();
    for (const auto& c : raw.compose) j["compose"].push_back({c[0], c[1], c[2]});
    return j;
}

// ---------------------------------------------------------------------------
// Complexes
// ---------------------------------------------------------------------------

/// {"vertices": [..], "facets": [[..]]}
inline SimplicialComplex complex_from_json(const json& j)
{
    auto vs = detail::string_list(detail::field(j, "vertices"), "vertices");
    const json& fs = detail::field(j, "facets");
    if (!fs.is_array()) detail::malformed("facets must be an array");
    std::vector<scomplex::Face> facets;
    for (const auto& f : fs) facets.push_back(detail::string_list(f, "facet"));
    return SimplicialComplex(std::move(vs), std::move(facets));
}

inline json complex_to_json(const SimplicialComplex& K)
{
    json j;
    j["vertices"] = K.vertices();
    j["facets"] = json::array();
    for (const auto& f : K.facets()) j["facets"].push_back(f);
    return j;
}

inline bool looks_like_complex(const json& j) { return j.is_object() && j.contains("facets"); }

using Input = std::variant<FiniteCategory, SimplicialComplex>;

inline Input input_from_json(const json& j)
{
    if (looks_like_complex(j)) return complex_from_json(j);
    if (j.is_object() && j.contains("objects")) return category_from_json(j);
    detail::malformed("input is neither a category nor a complex");
}

inline json parse_text(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        detail::malformed(std::string("invalid JSON: ") + e.what());
    }
}

inline json read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) detail::malformed("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

// ---------------------------------------------------------------------------
// Groups and modules
// ---------------------------------------------------------------------------

/// [rank, [torsion...]]
inline json group_to_json(const FgAbelianGroup& g)
{
    json t = json::array();
    for (const auto& d : g.torsion()) t.push_back(detail::integer_to_json(d));
    return json::array({g.rank(), t});
}

inline FgAbelianGroup group_from_json(const json& j)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_unsigned() || !j[1].is_array())
        detail::malformed("groups are [rank, [torsion]]");
    zlat::IntVector t;
    for (const auto& d : j[1]) t.push_back(detail::integer_from_json(d));
    return FgAbelianGroup(j[0].get<std::size_t>(), t);
}

/// {degree: [rank, [torsion]]} for nonzero degrees.
inline json graded_to_json(const GradedGroups& g)
{
    json j = json::object();
    for (const auto& [d, grp] : g.nonzero()) j[std::to_string(d)] = group_to_json(grp);
    return j;
}

inline GradedGroups graded_from_json(const json& j)
{
    if (!j.is_object()) detail::malformed("graded groups must be an object");
    GradedGroups g;
    for (const auto& [k, v] : j.items()) {
        int d = 0;
        try {
            std::size_t used = 0;
            d = std::stoi(k, &used);
            if (used != k.size()) throw std::invalid_argument(k);
        } catch (const std::exception&) {
            detail::malformed("bad degree '" + k + "'");
        }
        g.set(d, group_from_json(v));
    }
    return g;
}

/// {"variance", "ranks": {object: int}, "maps": {morphism: [[int]]}}; only
/// non-identity morphisms are written, missing identities are filled in.
inline json cmodule_to_json(const CModule& M)
{
    const FiniteCategory& C = M.category();
    json j;
    j["variance"] = cmodule::to_string(M.variance());
    j["ranks"] = json::object();
    for (catcore::ObjIdx x = 0; x < C.object_count(); ++x) j["ranks"][C.object(x)] = M.rank(x);
    j["maps"] = json::object();
    for (catcore::MorIdx m = 0; m < C.morphism_count(); ++m)
        if (!C.is_identity(m)) j["maps"][C.morphism_id(m)] = detail::matrix_to_json(M.map(m));
    return j;
}

inline CModule cmodule_from_json(const json& j, const CategoryPtr& C)
{
    const std::string v = detail::as_string(detail::field(j, "variance"), "variance");
    if (v != "left" && v != "right") detail::malformed("variance must be 'left' or 'right'");
    const cmodule::Variance var = v == "left" ? cmodule::Variance::left : cmodule::Variance::right;
    const json& rj = detail::field(j, "ranks");
    if (!rj.is_object()) detail::malformed("ranks must be an object");
    std::vector<std::size_t> ranks(C->object_count(), 0);
    std::vector<char> seen(C->object_count(), 0);
    for (const auto& [o, r] : rj.items()) {
        const auto x = C->object_index(o);
        if (!r.is_number_unsigned()) detail::malformed("rank of '" + o + "' must be a nonnegative integer");
        ranks[x] = r.get<std::size_t>();
        seen[x] = 1;
    }
    for (catcore::ObjIdx x = 0; x < C->object_count(); ++x)
        if (!seen[x]) detail::malformed("no rank given for object '" + C->object(x) + "'");
    const json& mj = j.contains("maps") ? j.at("maps") : json::object();
    if (!mj.is_object()) detail::malformed("maps must be an object");
    std::vector<IntMatrix> maps;
    for (catcore::MorIdx m = 0; m < C->morphism_count(); ++m) {
        const std::size_t from = ranks[var == cmodule::Variance::left ? C->source(m) : C->target(m)];
        const std::size_t to = ranks[var == cmodule::Variance::left ? C->target(m) : C->source(m)];
        const std::string& id = C->morphism_id(m);
        if (mj.contains(id))
            maps.push_back(detail::matrix_from_json(mj.at(id), to, from, "map of '" + id + "'"));
        else if (C->is_identity(m))
            maps.push_back(IntMatrix::identity(from));
        else if (from == 0 || to == 0)
            maps.push_back(IntMatrix(to, from));
        else
            detail::malformed("no matrix given for morphism '" + id + "'");
    }
    for (const auto& [id, _] : mj.items()) C->morphism_index(id);
    return CModule(C, var, std::move(ranks), std::move(maps));
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

inline json certificate_to_json(const DualityCertificate& cert)
{
    json j;
    j["verdict"] = dualcert::to_string(cert.verdict);
    j["degree"] = cert.degree ? json(*cert.degree) : json(nullptr);
    j["ext_table"] = json::object();
    for (std::size_t x = 0; x < cert.objects.size(); ++x) j["ext_table"][cert.objects[x]] = graded_to_json(cert.ext_table[x]);
    j["dualizing"] = cert.dualizing ? cmodule_to_json(*cert.dualizing) : json(nullptr);
    j["witnesses"] = json::array();
    for (const auto& w : cert.witnesses)
        j["witnesses"].push_back({{"objects", w.objects}, {"degrees", w.degrees}, {"reason", w.reason}});
    j["checks"] = json::object();
    for (const auto& [k, v] : cert.checks) j["checks"][k] = v;
    return j;
}

/// Re-reads a certificate for the category it was computed on.
inline DualityCertificate certificate_from_json(const json& j, const CategoryPtr& C)
{
    DualityCertificate cert;
    cert.category = C;
    cert.verdict = dualcert::parse_verdict(detail::as_string(detail::field(j, "verdict"), "verdict"));
    const json& d = detail::field(j, "degree");
    if (d.is_number_integer())
        cert.degree = d.get<int>();
    else if (!d.is_null())
        detail::malformed("degree must be an integer or null");
    cert.objects = C->objects();
    cert.ext_table.resize(C->object_count());
    const json& et = detail::field(j, "ext_table");
    if (!et.is_object()) detail::malformed("ext_table must be an object");
    for (const auto& [o, g] : et.items()) cert.ext_table[C->object_index(o)] = graded_from_json(g);
    const json& dj = detail::field(j, "dualizing");
    if (!dj.is_null()) cert.dualizing = cmodule_from_json(dj, C);
    if (cert.certified()) {
        bool free = true;
        for (const auto& col : cert.ext_table) {
            cert.dualizing_values.push_back(col.at(*cert.degree));
            free = free && cert.dualizing_values.back().is_free();
        }
        cert.dualizing_pointwise_free = free;
    }
    const json& ws = detail::field(j, "witnesses");
    if (!ws.is_array()) detail::malformed("witnesses must be an array");
    for (const auto& w : ws) {
        dualcert::Witness wit;
        wit.objects = detail::string_list(detail::field(w, "objects"), "witness objects");
        for (const auto& k : detail::field(w, "degrees")) wit.degrees.push_back(k.get<int>());
        wit.reason = detail::as_string(detail::field(w, "reason"), "witness reason");
        cert.witnesses.push_back(std::move(wit));
    }
    const json& cj = detail::field(j, "checks");
    if (!cj.is_object()) detail::malformed("checks must be an object");
    for (const auto& [k, v] : cj.items()) cert.checks[k] = detail::as_string(v, "check value");
    return cert;
}

} // namespace dualcat::io
