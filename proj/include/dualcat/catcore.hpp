#pragma once

// Finite loop-free categories (posets included): validation of the category
// axioms, opposites, the nondegenerate nerve with its face maps, and the
// order-theoretic full subcategories around an object.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dualcat/error.hpp"

namespace dualcat::catcore {

using ObjIdx = std::size_t;
using MorIdx = std::size_t;

struct Morphism {
    std::string id;
    std::string src;
    std::string dst;

    friend bool operator==(const Morphism&, const Morphism&) = default;
    friend auto operator<=>(const Morphism&, const Morphism&) = default;
};

using CompositionEntry = std::array<std::string, 3>; // (g, f, g o f)

/// Unvalidated category data as read from input.
///
/// With `identities` empty the identities are implicit: they are named
/// "id_<object>", must not be listed in `morphisms`, and identity
/// compositions are filled in automatically. With `identities` given, every
/// identity must be listed and the table must be total over all composable
/// pairs, identities included.
struct RawCategory {
    std::vector<std::string> objects;
    std::vector<Morphism> morphisms;
    std::vector<CompositionEntry> compose;
    std::map<std::string, std::string> identities;
};

inline std::string identity_id(const std::string& object) { return "id_" + object; }

class FiniteCategory {
public:
    FiniteCategory() = default;

    /// Checks ids, loop-freeness, totality, unit laws and associativity.
    static FiniteCategory validate(const RawCategory& raw);

    /// The poset generated by `relations` (pairs a < b; closed transitively).
    /// Morphism ids are "a<b".
    static FiniteCategory from_poset(const std::vector<std::string>& objects,
                                     const std::vector<std::pair<std::string, std::string>>& relations);

    std::size_t object_count() const noexcept { return objects_.size(); }
    std::size_t morphism_count() const noexcept { return morphisms_.size(); }
    const std::vector<std::string>& objects() const noexcept { return objects_; }
    const std::string& object(ObjIdx x) const { return objects_.at(x); }

    std::optional<ObjIdx> find_object(const std::string& id) const
    {
        auto it = object_index_.find(id);
        if (it == object_index_.end()) return std::nullopt;
        return it->second;
    }

    ObjIdx object_index(const std::string& id) const
    {
        auto x = find_object(id);
        if (!x) throw Error(ErrorKind::UnknownObject, "unknown object '" + id + "'", {id});
        return *x;
    }

    std::optional<MorIdx> find_morphism(const std::string& id) const
    {
        auto it = morphism_index_.find(id);
        if (it == morphism_index_.end()) return std::nullopt;
        return it->second;
    }

    MorIdx morphism_index(const std::string& id) const
    {
        auto m = find_morphism(id);
        if (!m) throw Error(ErrorKind::UnknownMorphism, "unknown morphism '" + id + "'", {id});
        return *m;
    }

    const std::string& morphism_id(MorIdx m) const { return morphisms_.at(m).id; }
    ObjIdx source(MorIdx m) const { return morphisms_.at(m).src; }
    ObjIdx target(MorIdx m) const { return morphisms_.at(m).dst; }
    bool is_identity(MorIdx m) const { return morphisms_.at(m).identity; }
    MorIdx identity(ObjIdx x) const { return identities_.at(x); }

    /// Hom(x, y), ordered by morphism id.
    const std::vector<MorIdx>& hom(ObjIdx x, ObjIdx y) const { return hom_.at(x * objects_.size() + y); }

    /// Non-identity morphisms leaving x, ordered by id.
    const std::vector<MorIdx>& out_arrows(ObjIdx x) const { return out_.at(x); }

    /// g o f; requires target(f) == source(g).
    MorIdx compose(MorIdx g, MorIdx f) const
    {
        if (target(f) != source(g))
            throw Error(ErrorKind::MalformedInput, "morphisms '" + morphism_id(g) + "' and '" + morphism_id(f) +
                                                       "' are not composable");
        if (is_identity(g)) return f;
        if (is_identity(f)) return g;
        return composition_.at(key(g, f));
    }

    /// Opposite category: sources and targets swapped, composition transposed.
    /// Object and morphism ids (and hence indices) are unchanged.
    FiniteCategory opposite() const;

    /// Full subcategory on the given objects.
    FiniteCategory full_subcategory(const std::vector<ObjIdx>& objects) const;

    /// Every hom-set has at most one element.
    bool is_poset() const
    {
        return std::all_of(hom_.begin(), hom_.end(), [](const auto& h) { return h.size() <= 1; });
    }

    /// Data in the raw format with implicit identities.
    RawCategory to_raw() const;

    friend bool operator==(const FiniteCategory& a, const FiniteCategory& b)
    {
        return a.objects_ == b.objects_ && a.morphisms_ == b.morphisms_ && a.composition_table() == b.composition_table();
    }

private:
    struct MorphismRec {
        std::string id;
        ObjIdx src = 0;
        ObjIdx dst = 0;
        bool identity = false;
        friend bool operator==(const MorphismRec&, const MorphismRec&) = default;
    };

    static std::uint64_t key(MorIdx g, MorIdx f) { return (static_cast<std::uint64_t>(g) << 32) | f; }

    std::set<std::array<MorIdx, 3>> composition_table() const
    {
        std::set<std::array<MorIdx, 3>> t;
        for (const auto& [k, h] : composition_) t.insert({static_cast<MorIdx>(k >> 32), static_cast<MorIdx>(k & 0xffffffffu), h});
        return t;
    }

    /// Builds indices from consistent data. `morphisms` must include the
    /// identities; `composition` lists non-identity pairs only.
    static FiniteCategory assemble(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                                   const std::map<std::string, std::string>& identity_of,
                                   const std::map<std::pair<std::string, std::string>, std::string>& composition);

    std::vector<std::string> objects_;
    std::map<std::string, ObjIdx> object_index_;
    std::vector<MorphismRec> morphisms_;
    std::map<std::string, MorIdx> morphism_index_;
    std::vector<MorIdx> identities_;
    std::vector<std::vector<MorIdx>> hom_;
    std::vector<std::vector<MorIdx>> out_;
    std::unordered_map<std::uint64_t, MorIdx> composition_;
};

inline FiniteCategory FiniteCategory::assemble(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                                               const std::map<std::string, std::string>& identity_of,
                                               const std::map<std::pair<std::string, std::string>, std::string>& composition)
{
    FiniteCategory c;
    std::sort(objects.begin(), objects.end());
    std::sort(morphisms.begin(), morphisms.end(), [](const Morphism& a, const Morphism& b) { return a.id < b.id; });
    c.objects_ = std::move(objects);
    for (ObjIdx i = 0; i < c.objects_.size(); ++i) c.object_index_[c.objects_[i]] = i;

    std::set<std::string> identity_ids;
    for (const auto& [obj, id] : identity_of) identity_ids.insert(id);

    const std::size_t n = c.objects_.size();
    c.identities_.assign(n, 0);
    c.hom_.assign(n * n, {});
    c.out_.assign(n, {});
    for (const auto& m : morphisms) {
        MorphismRec rec{m.id, c.object_index_.at(m.src), c.object_index_.at(m.dst), identity_ids.count(m.id) > 0};
        const MorIdx idx = c.morphisms_.size();
        c.morphism_index_[m.id] = idx;
        if (rec.identity) c.identities_[rec.src] = idx;
        c.hom_[rec.src * n + rec.dst].push_back(idx);
        if (!rec.identity) c.out_[rec.src].push_back(idx);
        c.morphisms_.push_back(std::move(rec));
    }
    for (const auto& [gf, h] : composition)
        c.composition_[key(c.morphism_index_.at(gf.first), c.morphism_index_.at(gf.second))] = c.morphism_index_.at(h);
    return c;
}

inline FiniteCategory FiniteCategory::validate(const RawCategory& raw)
{
    std::set<std::string> objects;
    for (const auto& o : raw.objects)
        if (!objects.insert(o).second) throw Error(ErrorKind::DuplicateId, "duplicate object id '" + o + "'", {o});

    const bool explicit_ids = !raw.identities.empty();
    std::map<std::string, std::string> identity_of;
    std::map<std::string, Morphism> by_id;
    for (const auto& m : raw.morphisms) {
        if (!objects.count(m.src)) throw Error(ErrorKind::UnknownObject, "morphism '" + m.id + "' has unknown source", {m.src});
        if (!objects.count(m.dst)) throw Error(ErrorKind::UnknownObject, "morphism '" + m.id + "' has unknown target", {m.dst});
        if (!by_id.emplace(m.id, m).second) throw Error(ErrorKind::DuplicateId, "duplicate morphism id '" + m.id + "'", {m.id});
    }
    if (explicit_ids) {
        for (const auto& [obj, id] : raw.identities) {
            if (!objects.count(obj)) throw Error(ErrorKind::UnknownObject, "identity for unknown object", {obj});
            auto it = by_id.find(id);
            if (it == by_id.end() || it->second.src != obj || it->second.dst != obj)
                throw Error(ErrorKind::MalformedInput, "identity '" + id + "' is not a listed endomorphism of '" + obj + "'", {id});
            identity_of[obj] = id;
        }
        for (const auto& o : objects)
            if (!identity_of.count(o)) throw Error(ErrorKind::MalformedInput, "object '" + o + "' has no identity", {o});
    } else {
        for (const auto& o : objects) {
            const std::string id = identity_id(o);
            if (by_id.count(id)) throw Error(ErrorKind::DuplicateId, "morphism id '" + id + "' clashes with an implicit identity", {id});
            identity_of[o] = id;
        }
    }
    std::set<std::string> identity_ids;
    for (const auto& [o, id] : identity_of) identity_ids.insert(id);
    auto is_id = [&](const std::string& m) { return identity_ids.count(m) > 0; };

    // Loop-freeness: no non-identity endomorphism, no directed cycle.
    std::map<std::string, std::set<std::string>> succ;
    for (const auto& [id, m] : by_id) {
        if (is_id(id)) continue;
        if (m.src == m.dst) throw Error(ErrorKind::NotLoopFree, "non-identity endomorphism '" + id + "'", {id});
        succ[m.src].insert(m.dst);
    }
    {
        std::map<std::string, int> state; // 0 new, 1 on stack, 2 done
        std::vector<std::string> stack;
        std::vector<std::string> cycle;
        auto dfs = [&](auto&& self, const std::string& v) -> bool {
            state[v] = 1;
            stack.push_back(v);
            for (const auto& w : succ[v]) {
                if (state[w] == 1) {
                    auto it = std::find(stack.begin(), stack.end(), w);
                    cycle.assign(it, stack.end());
                    cycle.push_back(w);
                    return true;
                }
                if (state[w] == 0 && self(self, w)) return true;
            }
            stack.pop_back();
            state[v] = 2;
            return false;
        };
        for (const auto& o : objects)
            if (state[o] == 0 && dfs(dfs, o)) throw Error(ErrorKind::NotLoopFree, "cycle of morphisms between objects", cycle);
    }

    // Composition table.
    std::map<std::pair<std::string, std::string>, std::string> table;
    for (const auto& e : raw.compose) {
        const auto& [g, f, h] = e;
        for (const auto* id : {&g, &f, &h})
            if (!by_id.count(*id) && !(!explicit_ids && is_id(*id)))
                throw Error(ErrorKind::UnknownMorphism, "composition entry names unknown morphism '" + *id + "'", {*id});
        auto src = [&](const std::string& m) {
            auto it = by_id.find(m);
            return it != by_id.end() ? it->second.src : m.substr(3);
        };
        auto dst = [&](const std::string& m) {
            auto it = by_id.find(m);
            return it != by_id.end() ? it->second.dst : m.substr(3);
        };
        if (dst(f) != src(g) || src(h) != src(f) || dst(h) != dst(g))
            throw Error(ErrorKind::MalformedInput, "composition entry (" + g + ", " + f + ") -> " + h + " has wrong endpoints", {g, f, h});
        auto [it, fresh] = table.emplace(std::make_pair(g, f), h);
        if (!fresh && it->second != h)
            throw Error(ErrorKind::MalformedInput, "conflicting composition entries for (" + g + ", " + f + ")", {g, f});
    }

    auto lookup = [&](const std::string& g, const std::string& f) -> std::string {
        auto it = table.find({g, f});
        if (it != table.end()) return it->second;
        if (!explicit_ids) {
            if (is_id(g)) return f;
            if (is_id(f)) return g;
        }
        throw Error(ErrorKind::MissingComposite, "missing composite of (" + g + ", " + f + ")", {g, f});
    };

    std::vector<std::string> all_ids;
    for (const auto& [id, m] : by_id) all_ids.push_back(id);
    if (!explicit_ids)
        for (const auto& [o, id] : identity_of) all_ids.push_back(id);
    auto src_of = [&](const std::string& m) { return by_id.count(m) ? by_id.at(m).src : m.substr(3); };
    auto dst_of = [&](const std::string& m) { return by_id.count(m) ? by_id.at(m).dst : m.substr(3); };

    std::map<std::string, std::vector<std::string>> starting_at;
    for (const auto& id : all_ids) starting_at[src_of(id)].push_back(id);

    // Totality and unit laws.
    for (const auto& f : all_ids)
        for (const auto& g : starting_at[dst_of(f)]) {
            const std::string h = lookup(g, f);
            if (is_id(g) && h != f)
                throw Error(ErrorKind::MalformedInput, "left unit law fails for '" + f + "'", {g, f, h});
            if (is_id(f) && h != g)
                throw Error(ErrorKind::MalformedInput, "right unit law fails for '" + g + "'", {g, f, h});
        }

    // Associativity over every composable triple.
    for (const auto& f : all_ids)
        for (const auto& g : starting_at[dst_of(f)])
            for (const auto& h : starting_at[dst_of(g)]) {
                const std::string left = lookup(lookup(h, g), f);
                const std::string right = lookup(h, lookup(g, f));
                if (left != right)
                    throw Error(ErrorKind::NotAssociative, "(" + h + " o " + g + ") o " + f + " differs from " + h + " o (" + g + " o " + f + ")",
                                {h, g, f});
            }

    std::vector<Morphism> morphisms;
    for (const auto& [id, m] : by_id) morphisms.push_back(m);
    if (!explicit_ids)
        for (const auto& [o, id] : identity_of) morphisms.push_back({id, o, o});
    std::map<std::pair<std::string, std::string>, std::string> composition;
    for (const auto& f : all_ids) {
        if (is_id(f)) continue;
        for (const auto& g : starting_at[dst_of(f)])
            if (!is_id(g)) composition[{g, f}] = lookup(g, f);
    }
    return assemble(raw.objects, std::move(morphisms), identity_of, composition);
}

inline FiniteCategory FiniteCategory::from_poset(const std::vector<std::string>& objects,
                                                 const std::vector<std::pair<std::string, std::string>>& relations)
{
    std::map<std::string, std::size_t> index;
    for (const auto& o : objects)
        if (!index.emplace(o, index.size()).second) throw Error(ErrorKind::DuplicateId, "duplicate object id '" + o + "'", {o});
    const std::size_t n = objects.size();
    std::vector<std::vector<char>> lt(n, std::vector<char>(n, 0));
    for (const auto& [a, b] : relations) {
        auto ia = index.find(a);
        auto ib = index.find(b);
        if (ia == index.end()) throw Error(ErrorKind::UnknownObject, "relation names unknown object '" + a + "'", {a});
        if (ib == index.end()) throw Error(ErrorKind::UnknownObject, "relation names unknown object '" + b + "'", {b});
        if (ia->second == ib->second) throw Error(ErrorKind::NotLoopFree, "relation " + a + " < " + a, {a});
        lt[ia->second][ib->second] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (lt[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (lt[k][j]) lt[i][j] = 1;
    for (std::size_t i = 0; i < n; ++i)
        if (lt[i][i]) throw Error(ErrorKind::NotLoopFree, "relations contain a cycle through '" + objects[i] + "'", {objects[i]});

    auto arrow = [&](std::size_t i, std::size_t j) { return objects[i] + "<" + objects[j]; };
    std::vector<Morphism> morphisms;
    std::map<std::string, std::string> identity_of;
    for (std::size_t i = 0; i < n; ++i) {
        identity_of[objects[i]] = identity_id(objects[i]);
        morphisms.push_back({identity_id(objects[i]), objects[i], objects[i]});
        for (std::size_t j = 0; j < n; ++j)
            if (lt[i][j]) morphisms.push_back({arrow(i, j), objects[i], objects[j]});
    }
    std::map<std::pair<std::string, std::string>, std::string> composition;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!lt[i][j]) continue;
            for (std::size_t k = 0; k < n; ++k)
                if (lt[j][k]) composition[{arrow(j, k), arrow(i, j)}] = arrow(i, k);
        }
    {
        std::set<std::string> ids;
        for (const auto& m : morphisms)
            if (!ids.insert(m.id).second) throw Error(ErrorKind::DuplicateId, "generated morphism id clash '" + m.id + "'", {m.id});
    }
    return assemble(objects, std::move(morphisms), identity_of, composition);
}

inline FiniteCategory FiniteCategory::opposite() const
{
    std::vector<Morphism> morphisms;
    std::map<std::string, std::string> identity_of;
    for (const auto& m : morphisms_) {
        morphisms.push_back({m.id, objects_[m.dst], objects_[m.src]});
        if (m.identity) identity_of[objects_[m.src]] = m.id;
    }
    std::map<std::pair<std::string, std::string>, std::string> composition;
    for (const auto& [k, h] : composition_) {
        const MorIdx g = static_cast<MorIdx>(k >> 32);
        const MorIdx f = static_cast<MorIdx>(k & 0xffffffffu);
        composition[{morphisms_[f].id, morphisms_[g].id}] = morphisms_[h].id;
    }
    return assemble(objects_, std::move(morphisms), identity_of, composition);
}

inline FiniteCategory FiniteCategory::full_subcategory(const std::vector<ObjIdx>& objects) const
{
    std::vector<char> keep(objects_.size(), 0);
    for (ObjIdx x : objects) keep.at(x) = 1;
    std::vector<std::string> names;
    std::vector<Morphism> morphisms;
    std::map<std::string, std::string> identity_of;
    for (ObjIdx x = 0; x < objects_.size(); ++x)
        if (keep[x]) names.push_back(objects_[x]);
    for (const auto& m : morphisms_) {
        if (!keep[m.src] || !keep[m.dst]) continue;
        morphisms.push_back({m.id, objects_[m.src], objects_[m.dst]});
        if (m.identity) identity_of[objects_[m.src]] = m.id;
    }
    std::map<std::pair<std::string, std::string>, std::string> composition;
    for (const auto& [k, h] : composition_) {
        const MorIdx g = static_cast<MorIdx>(k >> 32);
        const MorIdx f = static_cast<MorIdx>(k & 0xffffffffu);
        if (keep[morphisms_[f].src] && keep[morphisms_[g].dst] && keep[morphisms_[f].dst])
            composition[{morphisms_[g].id, morphisms_[f].id}] = morphisms_[h].id;
    }
    return assemble(std::move(names), std::move(morphisms), identity_of, composition);
}

inline RawCategory FiniteCategory::to_raw() const
{
    RawCategory raw;
    raw.objects = objects_;
    for (const auto& m : morphisms_)
        if (!m.identity) raw.morphisms.push_back({m.id, objects_[m.src], objects_[m.dst]});
    for (const auto& [g, f, h] : composition_table())
        raw.compose.push_back({morphisms_[g].id, morphisms_[f].id, morphisms_[h].id});
    std::sort(raw.compose.begin(), raw.compose.end());
    return raw;
}

// ---------------------------------------------------------------------------
// Nerve
// ---------------------------------------------------------------------------

/// Composable non-identity morphisms x_0 -> ... -> x_n; length 0 is a bare object.
struct Chain {
    ObjIdx start = 0;
    std::vector<MorIdx> arrows;

    std::size_t length() const noexcept { return arrows.size(); }
    friend bool operator==(const Chain&, const Chain&) = default;
};

inline ObjIdx first_object(const Chain& c) { return c.start; }

inline ObjIdx last_object(const FiniteCategory& C, const Chain& c)
{
    return c.arrows.empty() ? c.start : C.target(c.arrows.back());
}

/// Objects x_0, ..., x_n of a chain.
inline std::vector<ObjIdx> chain_objects(const FiniteCategory& C, const Chain& c)
{
    std::vector<ObjIdx> xs{c.start};
    for (MorIdx a : c.arrows) xs.push_back(C.target(a));
    return xs;
}

inline std::string chain_label(const FiniteCategory& C, const Chain& c)
{
    if (c.arrows.empty()) return C.object(c.start);
    std::string s;
    for (std::size_t i = 0; i < c.arrows.size(); ++i) s += (i ? "|" : "") + C.morphism_id(c.arrows[i]);
    return s;
}

/// The normalized nerve: all nondegenerate chains by degree, ordered
/// lexicographically on identifiers, with face maps.
class Nerve {
public:
    explicit Nerve(const FiniteCategory& C) : C_(&C)
    {
        std::vector<Chain> level;
        for (ObjIdx x = 0; x < C.object_count(); ++x) level.push_back({x, {}});
        while (!level.empty()) {
            degrees_.push_back(level);
            std::vector<Chain> next;
            for (const auto& c : level)
                for (MorIdx a : C.out_arrows(last_object(C, c))) {
                    Chain e = c;
                    e.arrows.push_back(a);
                    next.push_back(std::move(e));
                }
            std::sort(next.begin(), next.end(), [](const Chain& a, const Chain& b) { return a.arrows < b.arrows; });
            level = std::move(next);
        }
        index_.resize(degrees_.size());
        for (std::size_t n = 1; n < degrees_.size(); ++n)
            for (std::size_t i = 0; i < degrees_[n].size(); ++i) index_[n].emplace(degrees_[n][i].arrows, i);
    }

    const FiniteCategory& category() const noexcept { return *C_; }

    /// Longest chain length (the length of the normalized Bar resolution).
    int max_degree() const noexcept { return static_cast<int>(degrees_.size()) - 1; }

    std::size_t size(int n) const
    {
        if (n < 0 || n > max_degree()) return 0;
        return degrees_[static_cast<std::size_t>(n)].size();
    }

    const std::vector<Chain>& degree(int n) const { return degrees_.at(static_cast<std::size_t>(n)); }

    std::vector<std::size_t> degree_sizes() const
    {
        std::vector<std::size_t> s;
        for (const auto& d : degrees_) s.push_back(d.size());
        return s;
    }

    std::size_t index_of(const Chain& c) const
    {
        if (c.arrows.empty()) return c.start;
        return index_.at(c.arrows.size()).at(c.arrows);
    }

    /// d_i: drop x_0 (i = 0), drop x_n (i = n), otherwise compose at x_i.
    Chain face(const Chain& c, std::size_t i) const
    {
        const std::size_t n = c.length();
        if (n == 0 || i > n) throw Error(ErrorKind::OutOfRange, "face index out of range");
        const FiniteCategory& C = *C_;
        Chain d;
        if (i == 0) {
            d.start = C.target(c.arrows[0]);
            d.arrows.assign(c.arrows.begin() + 1, c.arrows.end());
        } else if (i == n) {
            d.start = c.start;
            d.arrows.assign(c.arrows.begin(), c.arrows.end() - 1);
        } else {
            d.start = c.start;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i - 1) {
                    d.arrows.push_back(C.compose(c.arrows[i], c.arrows[i - 1]));
                    ++k;
                } else {
                    d.arrows.push_back(c.arrows[k]);
                }
            }
        }
        return d;
    }

private:
    const FiniteCategory* C_;
    std::vector<std::vector<Chain>> degrees_;
    std::vector<std::map<std::vector<MorIdx>, std::size_t>> index_;
};

inline Nerve nondegenerate_nerve(const FiniteCategory& C) { return Nerve(C); }

inline std::vector<std::size_t> nondegenerate_nerve_sizes(const FiniteCategory& C) { return Nerve(C).degree_sizes(); }

// ---------------------------------------------------------------------------
// Order structure
// ---------------------------------------------------------------------------

/// x <= y iff x = y or Hom(x, y) is nonempty.
class ReachabilityOrder {
public:
    explicit ReachabilityOrder(const FiniteCategory& C) : n_(C.object_count()), leq_(n_ * n_, 0)
    {
        for (ObjIdx x = 0; x < n_; ++x)
            for (ObjIdx y = 0; y < n_; ++y) leq_[x * n_ + y] = (x == y || !C.hom(x, y).empty()) ? 1 : 0;
    }

    bool leq(ObjIdx x, ObjIdx y) const { return leq_.at(x * n_ + y) != 0; }
    bool lt(ObjIdx x, ObjIdx y) const { return x != y && leq(x, y); }

    bool joinable(ObjIdx x, ObjIdx y) const
    {
        for (ObjIdx z = 0; z < n_; ++z)
            if (leq(x, z) && leq(y, z)) return true;
        return false;
    }

    std::size_t size() const noexcept { return n_; }

private:
    std::size_t n_;
    std::vector<char> leq_;
};

inline ReachabilityOrder reachability_order(const FiniteCategory& C) { return ReachabilityOrder(C); }

enum class OrderKind {
    joinable,            // objects joinable to x
    strictly_below_join, // joinable to x and not >= x
    leq,
    lt,
    geq,
};

inline std::vector<ObjIdx> order_objects(const FiniteCategory& C, ObjIdx x, OrderKind kind)
{
    if (x >= C.object_count()) throw Error(ErrorKind::UnknownObject, "object index out of range");
    const ReachabilityOrder ord(C);
    std::vector<ObjIdx> out;
    for (ObjIdx z = 0; z < C.object_count(); ++z) {
        bool keep = false;
        switch (kind) {
        case OrderKind::joinable: keep = ord.joinable(z, x); break;
        case OrderKind::strictly_below_join: keep = ord.joinable(z, x) && !ord.leq(x, z); break;
        case OrderKind::leq: keep = ord.leq(z, x); break;
        case OrderKind::lt: keep = ord.lt(z, x); break;
        case OrderKind::geq: keep = ord.leq(x, z); break;
        }
        if (keep) out.push_back(z);
    }
    return out;
}

inline FiniteCategory order_subcategory(const FiniteCategory& C, const std::string& x, OrderKind kind)
{
    return C.full_subcategory(order_objects(C, C.object_index(x), kind));
}

inline bool is_poset(const FiniteCategory& C) { return C.is_poset(); }

inline FiniteCategory opposite(const FiniteCategory& C) { return C.opposite(); }

} // namespace dualcat::catcore
