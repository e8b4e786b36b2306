#pragma once

// Deterministic example categories and complexes.

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dualcat/catcore.hpp"
#include "dualcat/error.hpp"
#include "dualcat/scomplex.hpp"

namespace dualcat::zoo {

using catcore::FiniteCategory;
using catcore::RawCategory;
using scomplex::Face;
using scomplex::SimplicialComplex;

// ---------------------------------------------------------------------------
// Small categories
// ---------------------------------------------------------------------------

/// parallel_arrows: x => y via alpha, beta.
/// five_object: a: 4 -> 2, b: 0 -> 2, c: 1 -> 2, d: 0 -> 3, e: 1 -> 3.
/// square_poset: 0, 1 below both 2 and 3.
inline FiniteCategory paper_example(const std::string& name)
{
    if (name == "parallel_arrows") {
        RawCategory raw;
        raw.objects = {"x", "y"};
        raw.morphisms = {{"alpha", "x", "y"}, {"beta", "x", "y"}};
        return FiniteCategory::validate(raw);
    }
    if (name == "five_object") {
        RawCategory raw;
        raw.objects = {"0", "1", "2", "3", "4"};
        raw.morphisms = {{"a", "4", "2"}, {"b", "0", "2"}, {"c", "1", "2"}, {"d", "0", "3"}, {"e", "1", "3"}};
        return FiniteCategory::validate(raw);
    }
    if (name == "square_poset")
        return FiniteCategory::from_poset({"0", "1", "2", "3"}, {{"0", "2"}, {"0", "3"}, {"1", "2"}, {"1", "3"}});
    throw Error(ErrorKind::UnknownName, "unknown example '" + name + "'", {name});
}

/// Totally ordered set 0 < 1 < ... < n-1.
inline FiniteCategory chain_poset(int n)
{
    if (n < 1 || n > 12) throw Error(ErrorKind::OutOfRange, "chain length must be in [1, 12]");
    std::vector<std::string> objs;
    std::vector<std::pair<std::string, std::string>> rel;
    for (int i = 0; i < n; ++i) {
        objs.push_back(std::to_string(i));
        if (i > 0) rel.emplace_back(std::to_string(i - 1), std::to_string(i));
    }
    return FiniteCategory::from_poset(objs, rel);
}

inline FiniteCategory one_object()
{
    RawCategory raw;
    raw.objects = {"*"};
    return FiniteCategory::validate(raw);
}

// ---------------------------------------------------------------------------
// Complexes
// ---------------------------------------------------------------------------

inline std::string vertex(int i) { return "v" + std::to_string(i); }

inline std::vector<std::string> vertex_range(int n)
{
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) out.push_back(vertex(i));
    return out;
}

/// Boundary of the n-simplex on v1..v{n+1}: an (n-1)-sphere.
inline SimplicialComplex sphere_boundary(int n)
{
    if (n < 1 || n > 6) throw Error(ErrorKind::OutOfRange, "sphere_boundary needs 1 <= n <= 6");
    const auto vs = vertex_range(n + 1);
    std::vector<Face> facets;
    for (std::size_t skip = 0; skip < vs.size(); ++skip) {
        Face f;
        for (std::size_t i = 0; i < vs.size(); ++i)
            if (i != skip) f.push_back(vs[i]);
        facets.push_back(std::move(f));
    }
    return SimplicialComplex(vs, std::move(facets));
}

inline SimplicialComplex single_edge() { return SimplicialComplex({"v", "w"}, {{"v", "w"}}); }

inline SimplicialComplex edge_plus_point() { return SimplicialComplex(vertex_range(3), {{"v1", "v2"}, {"v3"}}); }

namespace detail {

inline SimplicialComplex from_triples(int n_vertices, const std::vector<std::array<int, 3>>& triples)
{
    std::vector<Face> facets;
    for (const auto& t : triples) facets.push_back({vertex(t[0]), vertex(t[1]), vertex(t[2])});
    return SimplicialComplex(vertex_range(n_vertices), std::move(facets));
}

} // namespace detail

/// Empty when K is a closed surface (pure of dimension 2, each edge in two
/// triangles, each vertex link a single cycle); otherwise a description.
inline std::optional<std::string> closed_surface_defect(const SimplicialComplex& K)
{
    if (K.dimension() != 2) return "dimension is not 2";
    for (const auto& f : K.facets())
        if (f.size() != 3) return "facet '" + scomplex::face_id(f) + "' is not a triangle";
    for (const auto& e : K.faces_of_dim(1)) {
        int count = 0;
        for (const auto& t : K.facets()) count += scomplex::is_subface(e, t) ? 1 : 0;
        if (count != 2) return "edge '" + scomplex::face_id(e) + "' lies in " + std::to_string(count) + " triangles";
    }
    for (const auto& v : K.faces_of_dim(0)) {
        const SimplicialComplex L = scomplex::link(K, v);
        if (L.dimension() != 1) return "link of '" + v[0] + "' is not a graph";
        for (const auto& w : L.faces_of_dim(0)) {
            int deg = 0;
            for (const auto& e : L.faces_of_dim(1)) deg += scomplex::is_subface(w, e) ? 1 : 0;
            if (deg != 2) return "link of '" + v[0] + "' is not a cycle";
        }
        if (!(scomplex::reduced_homology(L) == [] {
                zlat::GradedGroups g;
                g.set(1, zlat::FgAbelianGroup::free(1));
                return g;
            }()))
            return "link of '" + v[0] + "' is not connected";
    }
    return std::nullopt;
}

/// torus7: the 7-vertex torus, triangles {i, i+1, i+3}, {i, i+2, i+3} mod 7.
/// rp2_6: the 6-vertex projective plane.
/// klein8: an 8-vertex Klein bottle.
inline SimplicialComplex surface(const std::string& name)
{
    SimplicialComplex K;
    if (name == "torus7") {
        std::vector<std::array<int, 3>> t;
        for (int i = 0; i < 7; ++i) {
            t.push_back({i + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1});
            t.push_back({i + 1, (i + 2) % 7 + 1, (i + 3) % 7 + 1});
        }
        K = detail::from_triples(7, t);
    } else if (name == "rp2_6") {
        K = detail::from_triples(6, {{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 6, 2},
                                     {2, 3, 5}, {3, 4, 6}, {4, 5, 2}, {5, 6, 3}, {6, 2, 4}});
    } else if (name == "klein8") {
        K = detail::from_triples(8, {{1, 2, 3}, {1, 2, 8}, {1, 3, 5}, {1, 4, 6}, {1, 4, 7}, {1, 5, 6},
                                     {1, 7, 8}, {2, 3, 6}, {2, 4, 5}, {2, 4, 8}, {2, 5, 6}, {3, 4, 5},
                                     {3, 4, 7}, {3, 6, 8}, {3, 7, 8}, {4, 6, 8}});
    } else {
        throw Error(ErrorKind::UnknownName, "unknown surface '" + name + "'", {name});
    }
    if (auto defect = closed_surface_defect(K)) throw Error(ErrorKind::NotManifoldLike, name + ": " + *defect);
    return K;
}

/// Type A_n Coxeter complex: barycentric subdivision of the boundary of the
/// n-simplex, an (n-1)-sphere.
inline SimplicialComplex coxeter_complex_A(int n)
{
    if (n < 1 || n > 4) throw Error(ErrorKind::OutOfRange, "coxeter_complex_A needs 1 <= n <= 4");
    return scomplex::barycentric_subdivision(sphere_boundary(n));
}

// ---------------------------------------------------------------------------
// Spherical buildings of GL_n(F_q)
// ---------------------------------------------------------------------------

namespace detail {

using Row = std::vector<int>;

inline int rank_mod(std::vector<Row> m, int q)
{
    int rank = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
        std::size_t piv = static_cast<std::size_t>(rank);
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[static_cast<std::size_t>(rank)]);
        int inv = 1;
        while ((m[static_cast<std::size_t>(rank)][c] * inv) % q != 1) ++inv;
        for (auto& x : m[static_cast<std::size_t>(rank)]) x = (x * inv) % q;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == static_cast<std::size_t>(rank) || m[r][c] == 0) continue;
            const int f = m[r][c];
            for (std::size_t k = 0; k < cols; ++k) m[r][k] = ((m[r][k] - f * m[static_cast<std::size_t>(rank)][k]) % q + q) % q;
        }
        ++rank;
    }
    return rank;
}

/// All k x n reduced row echelon matrices over F_q of full rank k.
inline std::vector<std::vector<Row>> rref_subspaces(int n, int k, int q)
{
    std::vector<std::vector<Row>> out;
    // choose pivot columns, then fill the free entries
    std::vector<int> piv;
    std::function<void(int)> choose = [&](int start) {
        if (static_cast<int>(piv.size()) == k) {
            std::vector<std::pair<int, int>> free_cells;
            for (int r = 0; r < k; ++r)
                for (int c = piv[static_cast<std::size_t>(r)] + 1; c < n; ++c)
                    if (std::find(piv.begin(), piv.end(), c) == piv.end()) free_cells.emplace_back(r, c);
            std::vector<int> vals(free_cells.size(), 0);
            while (true) {
                std::vector<Row> m(static_cast<std::size_t>(k), Row(static_cast<std::size_t>(n), 0));
                for (int r = 0; r < k; ++r) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(piv[static_cast<std::size_t>(r)])] = 1;
                for (std::size_t i = 0; i < free_cells.size(); ++i)
                    m[static_cast<std::size_t>(free_cells[i].first)][static_cast<std::size_t>(free_cells[i].second)] = vals[i];
                out.push_back(std::move(m));
                std::size_t i = 0;
                while (i < vals.size() && ++vals[i] == q) vals[i++] = 0;
                if (i == vals.size()) break;
            }
            return;
        }
        for (int c = start; c < n; ++c) {
            piv.push_back(c);
            choose(c + 1);
            piv.pop_back();
        }
    };
    choose(0);
    return out;
}

inline std::string subspace_name(const std::vector<Row>& m)
{
    std::string s = "s";
    for (std::size_t r = 0; r < m.size(); ++r) {
        if (r) s += "_";
        for (int x : m[r]) s += static_cast<char>('0' + x);
    }
    return s;
}

} // namespace detail

/// Flag complex of proper nonzero subspaces of F_q^n; vertices are named by
/// their reduced row echelon bases.
inline SimplicialComplex building_gl(int n, int q)
{
    if ((n != 2 && n != 3) || (q != 2 && q != 3)) throw Error(ErrorKind::OutOfRange, "building_gl needs n, q in {2, 3}");
    std::vector<std::vector<detail::Row>> spaces;
    for (int k = 1; k < n; ++k)
        for (auto& m : detail::rref_subspaces(n, k, q)) spaces.push_back(std::move(m));
    std::vector<std::string> names;
    for (const auto& s : spaces) names.push_back(detail::subspace_name(s));
    std::vector<std::pair<std::string, std::string>> rel;
    for (std::size_t i = 0; i < spaces.size(); ++i)
        for (std::size_t j = 0; j < spaces.size(); ++j) {
            if (spaces[i].size() >= spaces[j].size()) continue;
            std::vector<detail::Row> stacked = spaces[j];
            stacked.insert(stacked.end(), spaces[i].begin(), spaces[i].end());
            if (detail::rank_mod(stacked, q) == static_cast<int>(spaces[j].size())) rel.emplace_back(names[i], names[j]);
        }
    return scomplex::order_complex(FiniteCategory::from_poset(names, rel));
}

// ---------------------------------------------------------------------------
// Generator specs: gen:<name>(<params>)
// ---------------------------------------------------------------------------

struct GeneratorSpec {
    std::string name;
    std::vector<int> params;
};

inline bool is_generator_spec(const std::string& s) { return s.rfind("gen:", 0) == 0; }

inline GeneratorSpec parse_generator_spec(const std::string& text)
{
    if (!is_generator_spec(text)) throw Error(ErrorKind::MalformedInput, "generator spec must start with 'gen:'");
    std::string body = text.substr(4);
    GeneratorSpec spec;
    const auto open = body.find('(');
    if (open == std::string::npos) {
        spec.name = body;
    } else {
        if (body.back() != ')') throw Error(ErrorKind::MalformedInput, "unbalanced parentheses in '" + text + "'");
        spec.name = body.substr(0, open);
        std::string args = body.substr(open + 1, body.size() - open - 2);
        std::size_t pos = 0;
        while (pos <= args.size() && !args.empty()) {
            const auto comma = args.find(',', pos);
            std::string tok = args.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.erase(tok.begin());
            while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.pop_back();
            if (tok.empty() || tok.find_first_not_of("-0123456789") != std::string::npos)
                throw Error(ErrorKind::MalformedInput, "bad generator parameter '" + tok + "'");
            spec.params.push_back(std::stoi(tok));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    if (spec.name.empty()) throw Error(ErrorKind::MalformedInput, "empty generator name");
    return spec;
}

using Generated = std::variant<FiniteCategory, SimplicialComplex>;

inline const std::vector<std::string>& generator_names()
{
    static const std::vector<std::string> names{"parallel_arrows", "five_object", "square_poset", "single_edge",
                                                "edge_plus_point", "sphere_boundary", "torus7", "rp2_6",
                                                "klein8", "coxeter_complex_A", "building_gl", "chain_poset"};
    return names;
}

inline Generated generate(const GeneratorSpec& spec)
{
    auto arity = [&](std::size_t k) {
        if (spec.params.size() != k)
            throw Error(ErrorKind::MalformedInput,
                        spec.name + " takes " + std::to_string(k) + " parameter" + (k == 1 ? "" : "s"));
    };
    const std::string& n = spec.name;
    if (n == "parallel_arrows" || n == "five_object" || n == "square_poset") {
        arity(0);
        return paper_example(n);
    }
    if (n == "single_edge") {
        arity(0);
        return single_edge();
    }
    if (n == "edge_plus_point") {
        arity(0);
        return edge_plus_point();
    }
    if (n == "torus7" || n == "rp2_6" || n == "klein8") {
        arity(0);
        return surface(n);
    }
    if (n == "sphere_boundary") {
        arity(1);
        return sphere_boundary(spec.params[0]);
    }
    if (n == "coxeter_complex_A") {
        arity(1);
        return coxeter_complex_A(spec.params[0]);
    }
    if (n == "chain_poset") {
        arity(1);
        return chain_poset(spec.params[0]);
    }
    if (n == "building_gl") {
        arity(2);
        return building_gl(spec.params[0], spec.params[1]);
    }
    throw Error(ErrorKind::UnknownName, "unknown generator '" + n + "'", {n});
}

inline Generated generate(const std::string& text) { return generate(parse_generator_spec(text)); }

} // namespace dualcat::zoo
