#pragma once

// Finite simplicial complexes, face posets, links and joins, reduced and
// relative cohomology, and local cohomology at a face computed three ways.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dualcat/catcore.hpp"
#include "dualcat/cmodule.hpp"
#include "dualcat/error.hpp"
#include "dualcat/zlat.hpp"

namespace dualcat::scomplex {

using catcore::FiniteCategory;
using catcore::ObjIdx;
using cmodule::CategoryPtr;
using cmodule::CModule;
using zlat::FgAbelianGroup;
using zlat::GradedGroups;
using zlat::IntegerChainComplex;
using zlat::IntMatrix;

/// A face as sorted vertex names.
using Face = std::vector<std::string>;

inline std::string face_id(const Face& f)
{
    std::string s;
    for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "+" : "") + f[i];
    return s;
}

inline Face normalize_face(Face f)
{
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end())
        throw Error(ErrorKind::MalformedInput, "face '" + face_id(f) + "' repeats a vertex", {face_id(f)});
    return f;
}

inline bool is_subface(const Face& a, const Face& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

/// A downward-closed family of nonempty vertex sets, stored by its facets.
/// Vertices and faces are kept sorted; the void complex has no vertices.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Every declared vertex must lie in some facet and every facet may only
    /// use declared vertices (NotClosed otherwise).
    SimplicialComplex(std::vector<std::string> vertices, std::vector<Face> facets)
    {
        std::set<std::string> declared;
        for (const auto& v : vertices)
            if (!declared.insert(v).second) throw Error(ErrorKind::DuplicateId, "duplicate vertex '" + v + "'", {v});
        std::set<Face> all;
        for (auto& f : facets) {
            if (f.empty()) throw Error(ErrorKind::MalformedInput, "empty facet");
            Face g = normalize_face(f);
            for (const auto& v : g)
                if (!declared.count(v))
                    throw Error(ErrorKind::NotClosed, "face '" + face_id(g) + "' uses undeclared vertex '" + v + "'",
                                {face_id(g), v});
            all.insert(std::move(g));
        }
        std::set<std::string> covered;
        for (const auto& f : all) covered.insert(f.begin(), f.end());
        for (const auto& v : declared)
            if (!covered.count(v))
                throw Error(ErrorKind::NotClosed, "vertex '" + v + "' is not contained in any facet", {v});
        vertices_.assign(declared.begin(), declared.end());
        for (const auto& f : all) {
            bool maximal = true;
            for (const auto& g : all)
                if (g.size() > f.size() && is_subface(f, g)) {
                    maximal = false;
                    break;
                }
            if (maximal) facets_.push_back(f);
        }
        build_faces();
    }

    /// Complex generated by the given faces (vertices inferred).
    static SimplicialComplex generated_by(const std::vector<Face>& faces)
    {
        std::set<std::string> vs;
        for (const auto& f : faces) vs.insert(f.begin(), f.end());
        return SimplicialComplex(std::vector<std::string>(vs.begin(), vs.end()), faces);
    }

    /// The full simplex on the given vertices (void when empty).
    static SimplicialComplex simplex(const Face& vertices)
    {
        if (vertices.empty()) return {};
        return generated_by({vertices});
    }

    bool is_void() const noexcept { return vertices_.empty(); }
    const std::vector<std::string>& vertices() const noexcept { return vertices_; }
    const std::vector<Face>& facets() const noexcept { return facets_; }
    int dimension() const noexcept { return static_cast<int>(by_dim_.size()) - 1; }

    /// All faces ordered by dimension, then lexicographically.
    const std::vector<Face>& faces() const noexcept { return faces_; }

    const std::vector<Face>& faces_of_dim(int k) const
    {
        static const std::vector<Face> none;
        if (k < 0 || k > dimension()) return none;
        return by_dim_[static_cast<std::size_t>(k)];
    }

    std::vector<std::size_t> f_vector() const
    {
        std::vector<std::size_t> out;
        for (const auto& d : by_dim_) out.push_back(d.size());
        return out;
    }

    bool contains(const Face& f) const { return index_.count(f) > 0; }

    /// Index of f among faces of its dimension.
    std::size_t index_in_dim(const Face& f) const
    {
        auto it = index_.find(f);
        if (it == index_.end()) throw Error(ErrorKind::UnknownFace, "no face '" + face_id(f) + "'", {face_id(f)});
        return it->second;
    }

    /// Looks up a face given in any vertex order.
    Face face(const std::vector<std::string>& vertices) const
    {
        Face f = vertices;
        std::sort(f.begin(), f.end());
        if (f.empty() || !contains(f)) throw Error(ErrorKind::UnknownFace, "no face '" + face_id(f) + "'", {face_id(f)});
        return f;
    }

    long long euler_characteristic() const
    {
        long long chi = 0;
        for (int k = 0; k <= dimension(); ++k) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(faces_of_dim(k).size());
        return chi;
    }

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b)
    {
        return a.vertices_ == b.vertices_ && a.facets_ == b.facets_;
    }

private:
    void build_faces()
    {
        std::set<Face> all;
        for (const auto& f : facets_) {
            const std::size_t n = f.size();
            for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
                Face s;
                for (std::size_t i = 0; i < n; ++i)
                    if (mask & (1ul << i)) s.push_back(f[i]);
                all.insert(std::move(s));
            }
        }
        for (const auto& f : all) {
            const std::size_t d = f.size() - 1;
            if (by_dim_.size() <= d) by_dim_.resize(d + 1);
            by_dim_[d].push_back(f);
        }
        for (auto& level : by_dim_) {
            for (std::size_t i = 0; i < level.size(); ++i) index_[level[i]] = i;
            faces_.insert(faces_.end(), level.begin(), level.end());
        }
    }

    std::vector<std::string> vertices_;
    std::vector<Face> facets_;
    std::vector<std::vector<Face>> by_dim_;
    std::vector<Face> faces_;
    std::map<Face, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

/// Faces ordered by inclusion; object ids are face ids.
inline FiniteCategory face_poset(const SimplicialComplex& K)
{
    std::vector<std::string> objects;
    for (const auto& f : K.faces()) objects.push_back(face_id(f));
    std::vector<std::pair<std::string, std::string>> covers;
    for (const auto& f : K.faces()) {
        if (f.size() < 2) continue;
        for (std::size_t i = 0; i < f.size(); ++i) {
            Face g = f;
            g.erase(g.begin() + static_cast<std::ptrdiff_t>(i));
            covers.emplace_back(face_id(g), face_id(f));
        }
    }
    return FiniteCategory::from_poset(objects, covers);
}

inline SimplicialComplex link(const SimplicialComplex& K, const Face& A)
{
    const Face a = normalize_face(A);
    if (!K.contains(a)) throw Error(ErrorKind::UnknownFace, "no face '" + face_id(a) + "'", {face_id(a)});
    std::vector<Face> faces;
    for (const auto& f : K.facets()) {
        if (!is_subface(a, f)) continue;
        Face rest;
        std::set_difference(f.begin(), f.end(), a.begin(), a.end(), std::back_inserter(rest));
        if (!rest.empty()) faces.push_back(std::move(rest));
    }
    return SimplicialComplex::generated_by(faces);
}

inline SimplicialComplex join(const SimplicialComplex& K, const SimplicialComplex& L)
{
    for (const auto& v : K.vertices())
        if (std::binary_search(L.vertices().begin(), L.vertices().end(), v))
            throw Error(ErrorKind::VertexClash, "vertex '" + v + "' occurs in both complexes", {v});
    if (K.is_void()) return L;
    if (L.is_void()) return K;
    std::vector<Face> facets;
    for (const auto& f : K.facets())
        for (const auto& g : L.facets()) {
            Face u = f;
            u.insert(u.end(), g.begin(), g.end());
            facets.push_back(normalize_face(std::move(u)));
        }
    std::vector<std::string> vs = K.vertices();
    vs.insert(vs.end(), L.vertices().begin(), L.vertices().end());
    return SimplicialComplex(std::move(vs), std::move(facets));
}

/// Complex of strict chains of a poset; vertices are object ids.
inline SimplicialComplex order_complex(const FiniteCategory& P)
{
    if (!P.is_poset()) throw Error(ErrorKind::NotAPoset, "order complex needs a poset");
    const std::size_t n = P.object_count();
    if (n == 0) return {};
    // covers: y covers x when x < y with nothing strictly between
    std::vector<std::vector<ObjIdx>> up(n);
    std::vector<char> has_down(n, 0);
    for (ObjIdx x = 0; x < n; ++x)
        for (catcore::MorIdx m : P.out_arrows(x)) {
            const ObjIdx y = P.target(m);
            bool cover = true;
            for (catcore::MorIdx k : P.out_arrows(x))
                if (!P.hom(P.target(k), y).empty() && P.target(k) != y) {
                    cover = false;
                    break;
                }
            if (cover) {
                up[x].push_back(y);
                has_down[y] = 1;
            }
        }
    std::vector<Face> facets;
    std::vector<ObjIdx> stack;
    auto dfs = [&](auto&& self, ObjIdx x) -> void {
        stack.push_back(x);
        if (up[x].empty()) {
            Face f;
            for (ObjIdx o : stack) f.push_back(P.object(o));
            facets.push_back(std::move(f));
        }
        for (ObjIdx y : up[x]) self(self, y);
        stack.pop_back();
    };
    for (ObjIdx x = 0; x < n; ++x)
        if (!has_down[x]) dfs(dfs, x);
    return SimplicialComplex(P.objects(), std::move(facets));
}

inline SimplicialComplex barycentric_subdivision(const SimplicialComplex& K) { return order_complex(face_poset(K)); }

// ---------------------------------------------------------------------------
// Simplicial (co)homology
// ---------------------------------------------------------------------------

/// Boundary of faces of dimension k into faces of dimension k-1 with signs
/// from the sorted vertex order; for k = 0 the target is the empty face.
inline IntMatrix boundary_matrix(const SimplicialComplex& K, int k)
{
    const auto& src = K.faces_of_dim(k);
    if (k == 0) {
        IntMatrix m(1, src.size());
        for (std::size_t j = 0; j < src.size(); ++j) m(0, j) = 1;
        return m;
    }
    IntMatrix m(K.faces_of_dim(k - 1).size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j)
        for (std::size_t i = 0; i < src[j].size(); ++i) {
            Face g = src[j];
            g.erase(g.begin() + static_cast<std::ptrdiff_t>(i));
            m(K.index_in_dim(g), j) = (i % 2 == 0) ? 1 : -1;
        }
    return m;
}

/// Simplicial chain complex; the augmented version adds Z (the empty face)
/// in degree -1, so the void complex gives Z in degree -1.
inline IntegerChainComplex chain_complex(const SimplicialComplex& K, bool augmented)
{
    std::vector<std::size_t> dims;
    std::vector<IntMatrix> between;
    std::vector<std::vector<std::string>> labels;
    if (augmented) {
        dims.push_back(1);
        labels.push_back({"{}"});
    }
    for (int k = 0; k <= K.dimension(); ++k) {
        dims.push_back(K.faces_of_dim(k).size());
        std::vector<std::string> l;
        for (const auto& f : K.faces_of_dim(k)) l.push_back(face_id(f));
        labels.push_back(std::move(l));
        if (k > 0 || augmented) between.push_back(boundary_matrix(K, k));
    }
    return IntegerChainComplex(zlat::Direction::chain, augmented ? -1 : 0, std::move(dims), std::move(between), std::move(labels));
}

inline IntegerChainComplex cochain_complex(const SimplicialComplex& K, bool augmented)
{
    const IntegerChainComplex X = chain_complex(K, augmented);
    if (X.empty()) return IntegerChainComplex(zlat::Direction::cochain, 0, {}, {});
    std::vector<std::size_t> dims;
    std::vector<IntMatrix> between;
    std::vector<std::vector<std::string>> labels;
    for (int n = X.lo(); n <= X.hi(); ++n) {
        dims.push_back(X.dim(n));
        labels.push_back(X.labels(n));
    }
    for (int n = X.lo(); n < X.hi(); ++n) between.push_back(X.outgoing(n + 1).transpose());
    return IntegerChainComplex(zlat::Direction::cochain, X.lo(), std::move(dims), std::move(between), std::move(labels));
}

inline GradedGroups homology(const SimplicialComplex& K) { return zlat::homology_all(chain_complex(K, false)); }
inline GradedGroups reduced_homology(const SimplicialComplex& K) { return zlat::homology_all(chain_complex(K, true)); }
inline GradedGroups cohomology(const SimplicialComplex& K) { return zlat::homology_all(cochain_complex(K, false)); }
inline GradedGroups reduced_cohomology(const SimplicialComplex& K) { return zlat::homology_all(cochain_complex(K, true)); }

inline long long reduced_euler_characteristic(const SimplicialComplex& K) { return K.euler_characteristic() - 1; }

/// Alternating sum of ranks, degree -1 included.
inline long long euler_of(const GradedGroups& g)
{
    long long chi = 0;
    for (const auto& [d, grp] : g.nonzero()) chi += ((d % 2 == 0) ? 1 : -1) * static_cast<long long>(grp.rank());
    return chi;
}

// ---------------------------------------------------------------------------
// Relative cohomology of categories
// ---------------------------------------------------------------------------

/// Bar resolution of Z̲ over C with every summand whose chain lies in `sub`
/// removed, i.e. the quotient B^C / B^{C'}.
inline cmodule::ProjectiveComplex quotient_bar(const CategoryPtr& C, const std::vector<ObjIdx>& sub)
{
    const FiniteCategory& cat = *C;
    std::vector<char> in_sub(cat.object_count(), 0);
    for (ObjIdx x : sub) in_sub.at(x) = 1;
    const catcore::Nerve nerve(cat);
    const int L = nerve.max_degree();
    const cmodule::ProjectiveComplex B = cmodule::bar_resolution(C);
    // keep[n][s]: summand s in cohomological degree n survives
    std::vector<std::vector<std::size_t>> remap;
    std::vector<std::vector<cmodule::Summand>> terms;
    for (int n = -L; n <= 0; ++n) {
        const auto& chains = nerve.degree(-n);
        std::vector<std::size_t> r(chains.size(), static_cast<std::size_t>(-1));
        std::vector<cmodule::Summand> t;
        for (std::size_t i = 0; i < chains.size(); ++i) {
            bool inside = true;
            for (ObjIdx o : catcore::chain_objects(cat, chains[i])) inside = inside && in_sub[o];
            if (inside) continue;
            r[i] = t.size();
            t.push_back(B.term(n)[i]);
        }
        remap.push_back(std::move(r));
        terms.push_back(std::move(t));
    }
    std::vector<std::vector<cmodule::ProjectiveEntry>> diffs;
    for (int n = -L; n < 0; ++n) {
        const auto& rf = remap[static_cast<std::size_t>(n + L)];
        const auto& rt = remap[static_cast<std::size_t>(n + L + 1)];
        std::vector<cmodule::ProjectiveEntry> entries;
        for (const auto& e : B.differential(n)) {
            const std::size_t from = rf[e.from];
            const std::size_t to = rt[e.to];
            if (from == static_cast<std::size_t>(-1) || to == static_cast<std::size_t>(-1)) continue;
            entries.push_back({to, from, e.via, e.coeff});
        }
        diffs.push_back(std::move(entries));
    }
    return cmodule::ProjectiveComplex(C, -L, std::move(terms), std::move(diffs));
}

/// H^*(C, C'; F) for the full subcategory on `sub`.
inline GradedGroups relative_cohomology(const CModule& F, const std::vector<ObjIdx>& sub)
{
    return zlat::homology_all(cmodule::hom_complex(quotient_bar(F.category_ptr(), sub), F));
}

/// C' given as a category; it must be a full subcategory of C (matched by ids).
inline GradedGroups relative_cohomology(const FiniteCategory& sub, const CModule& F)
{
    const FiniteCategory& C = F.category();
    std::vector<ObjIdx> objs;
    for (const auto& o : sub.objects()) {
        auto x = C.find_object(o);
        if (!x) throw Error(ErrorKind::NotFullSubcategory, "object '" + o + "' is not in the ambient category", {o});
        objs.push_back(*x);
    }
    for (std::size_t i = 0; i < objs.size(); ++i)
        for (std::size_t j = 0; j < objs.size(); ++j) {
            const auto& h = C.hom(objs[i], objs[j]);
            const auto& hs = sub.hom(i, j);
            std::set<std::string> a, b;
            for (auto m : h) a.insert(C.morphism_id(m));
            for (auto m : hs) b.insert(sub.morphism_id(m));
            if (a != b)
                throw Error(ErrorKind::NotFullSubcategory,
                            "morphisms " + sub.object(i) + " -> " + sub.object(j) + " differ from the ambient category",
                            {sub.object(i), sub.object(j)});
        }
    return relative_cohomology(F, objs);
}

/// Reduced cohomology of a category from the augmented Bar complex.
inline GradedGroups reduced_category_cohomology(const CategoryPtr& C)
{
    const auto Z = cmodule::constant_module(C, cmodule::Variance::left);
    const IntegerChainComplex X = cmodule::hom_complex(cmodule::bar_resolution(C), Z);
    std::vector<std::size_t> dims{1};
    std::vector<IntMatrix> between;
    for (int n = X.lo(); n <= X.hi(); ++n) dims.push_back(X.dim(n));
    {
        IntMatrix aug(X.dim(0), 1);
        for (std::size_t i = 0; i < X.dim(0); ++i) aug(i, 0) = 1;
        between.push_back(std::move(aug));
    }
    for (int n = X.lo(); n < X.hi(); ++n) between.push_back(X.outgoing(n));
    return zlat::homology_all(IntegerChainComplex(zlat::Direction::cochain, -1, std::move(dims), std::move(between)));
}

/// Reduced homology of a category from the augmented Bar complex.
inline GradedGroups reduced_category_homology(const cmodule::CategoryPtr& C)
{
    const auto X = cmodule::tensor_complex(cmodule::constant_module(C, cmodule::Variance::right), cmodule::bar_resolution(C));
    std::vector<std::size_t> dims{1};
    std::vector<IntMatrix> between;
    for (int n = X.lo(); n <= X.hi(); ++n) dims.push_back(X.dim(n));
    IntMatrix aug(1, X.dim(0));
    for (std::size_t i = 0; i < X.dim(0); ++i) aug(0, i) = 1;
    between.push_back(std::move(aug));
    for (int n = X.lo() + 1; n <= X.hi(); ++n) between.push_back(X.outgoing(n));
    return zlat::homology_all(IntegerChainComplex(zlat::Direction::chain, -1, std::move(dims), std::move(between)));
}

// ---------------------------------------------------------------------------
// Simplicial posets
// ---------------------------------------------------------------------------

inline bool is_simplicial_poset(const FiniteCategory& P)
{
    if (!P.is_poset()) throw Error(ErrorKind::NotAPoset, "not a poset");
    const std::size_t n = P.object_count();
    const catcore::ReachabilityOrder ord(P);
    std::vector<ObjIdx> atoms;
    for (ObjIdx x = 0; x < n; ++x) {
        bool minimal = true;
        for (ObjIdx y = 0; y < n; ++y) minimal = minimal && !ord.lt(y, x);
        if (minimal) atoms.push_back(x);
    }
    std::vector<std::vector<ObjIdx>> atom_set(n);
    for (ObjIdx x = 0; x < n; ++x)
        for (ObjIdx a : atoms)
            if (ord.leq(a, x)) atom_set[x].push_back(a);
    std::set<std::vector<ObjIdx>> seen;
    for (ObjIdx x = 0; x < n; ++x) {
        if (!seen.insert(atom_set[x]).second) return false;
        std::size_t below = 0;
        for (ObjIdx y = 0; y < n; ++y) below += ord.leq(y, x) ? 1 : 0;
        const std::size_t k = atom_set[x].size();
        if (k >= 63 || below != (std::size_t{1} << k) - 1) return false;
    }
    for (ObjIdx x = 0; x < n; ++x)
        for (ObjIdx y = 0; y < n; ++y) {
            const bool inc = std::includes(atom_set[y].begin(), atom_set[y].end(), atom_set[x].begin(), atom_set[x].end());
            if (inc != ord.leq(x, y)) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Local cohomology
// ---------------------------------------------------------------------------

enum class LocalMethod { link, pair, ext };

inline const char* to_string(LocalMethod m)
{
    switch (m) {
    case LocalMethod::link: return "link";
    case LocalMethod::pair: return "pair";
    case LocalMethod::ext: return "ext";
    }
    return "?";
}

inline LocalMethod parse_local_method(const std::string& s)
{
    if (s == "link") return LocalMethod::link;
    if (s == "pair") return LocalMethod::pair;
    if (s == "ext") return LocalMethod::ext;
    throw Error(ErrorKind::UnknownMethod, "unknown local cohomology method '" + s + "'", {s});
}

/// Shared data for repeated local computations on one complex.
class LocalCohomology {
public:
    explicit LocalCohomology(SimplicialComplex K)
        : K_(std::move(K)), P_(cmodule::share(face_poset(K_))), Z_(cmodule::constant_module(P_, cmodule::Variance::left))
    {
    }

    const SimplicialComplex& complex() const noexcept { return K_; }
    const CategoryPtr& poset() const noexcept { return P_; }

    GradedGroups compute(const Face& x, LocalMethod method) const
    {
        const Face f = normalize_face(x);
        if (!K_.contains(f)) throw Error(ErrorKind::UnknownFace, "no face '" + face_id(f) + "'", {face_id(f)});
        const int dim = static_cast<int>(f.size()) - 1;
        switch (method) {
        case LocalMethod::link: return reduced_cohomology(link(K_, f)).shifted(dim + 1);
        case LocalMethod::pair: {
            const ObjIdx o = P_->object_index(face_id(f));
            const catcore::ReachabilityOrder ord(*P_);
            std::vector<ObjIdx> away;
            for (ObjIdx y = 0; y < P_->object_count(); ++y)
                if (!ord.leq(o, y)) away.push_back(y);
            return relative_cohomology(Z_, away);
        }
        case LocalMethod::ext: {
            if (!bar_) bar_ = std::make_shared<cmodule::ProjectiveComplex>(cmodule::bar_resolution(P_));
            const CModule Px = cmodule::standard_projective(P_, face_id(f), cmodule::Variance::left);
            return zlat::homology_all(cmodule::hom_complex(*bar_, Px));
        }
        }
        throw Error(ErrorKind::UnknownMethod, "unknown method");
    }

private:
    SimplicialComplex K_;
    CategoryPtr P_;
    CModule Z_;
    mutable std::shared_ptr<cmodule::ProjectiveComplex> bar_;
};

inline GradedGroups local_cohomology(const SimplicialComplex& K, const Face& x, LocalMethod method)
{
    return LocalCohomology(K).compute(x, method);
}

inline GradedGroups local_cohomology(const SimplicialComplex& K, const Face& x, const std::string& method)
{
    return local_cohomology(K, x, parse_local_method(method));
}

} // namespace dualcat::scomplex
