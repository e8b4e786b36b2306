#pragma once

// Modules over a finite loop-free category with pointwise-free values,
// complexes of standard projectives (Bar resolutions in particular), the
// Hom and tensor complexes computing Ext and Tor, and the duality functor
// D = Hom(-, Z[Hom]) on complexes of projectives.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dualcat/catcore.hpp"
#include "dualcat/error.hpp"
#include "dualcat/zlat.hpp"

namespace dualcat::cmodule {

using catcore::Chain;
using catcore::FiniteCategory;
using catcore::MorIdx;
using catcore::Nerve;
using catcore::ObjIdx;
using zlat::FgAbelianGroup;
using zlat::GradedGroups;
using zlat::IntegerChainComplex;
using zlat::IntMatrix;
using zlat::IntVector;
using zlat::Integer;

using CategoryPtr = std::shared_ptr<const FiniteCategory>;

inline CategoryPtr share(FiniteCategory C) { return std::make_shared<const FiniteCategory>(std::move(C)); }

inline bool same_category(const CategoryPtr& a, const CategoryPtr& b) { return a == b || *a == *b; }

enum class Variance { left, right };

inline const char* to_string(Variance v) { return v == Variance::left ? "left" : "right"; }

// ---------------------------------------------------------------------------
// CModule
// ---------------------------------------------------------------------------

/// A functor from C (left) or C^op (right) to free abelian groups. For a
/// morphism f: x -> y the stored matrix is M(x) -> M(y) for left modules and
/// M(y) -> M(x) for right modules. Every morphism, identities included, has a
/// matrix; identity and composition laws are checked on construction.
class CModule {
public:
    CModule(CategoryPtr C, Variance variance, std::vector<std::size_t> ranks, std::vector<IntMatrix> maps,
            std::vector<std::vector<std::string>> labels = {})
        : C_(std::move(C)), variance_(variance), ranks_(std::move(ranks)), maps_(std::move(maps)), labels_(std::move(labels))
    {
        const FiniteCategory& cat = *C_;
        if (ranks_.size() != cat.object_count()) throw Error(ErrorKind::DimensionMismatch, "one rank per object required");
        if (maps_.size() != cat.morphism_count()) throw Error(ErrorKind::DimensionMismatch, "one matrix per morphism required");
        if (!labels_.empty()) {
            if (labels_.size() != ranks_.size()) throw Error(ErrorKind::DimensionMismatch, "one label list per object required");
            for (ObjIdx x = 0; x < ranks_.size(); ++x)
                if (labels_[x].size() != ranks_[x]) throw Error(ErrorKind::DimensionMismatch, "basis label count mismatch");
        }
        for (MorIdx m = 0; m < cat.morphism_count(); ++m) {
            const std::size_t from = rank(domain_of(m));
            const std::size_t to = rank(codomain_of(m));
            if (maps_[m].rows() != to || maps_[m].cols() != from)
                throw Error(ErrorKind::DimensionMismatch, "matrix for '" + cat.morphism_id(m) + "' has wrong shape",
                            {cat.morphism_id(m)});
            if (cat.is_identity(m) && !(maps_[m] == IntMatrix::identity(from)))
                throw Error(ErrorKind::NotFunctorial, "identity '" + cat.morphism_id(m) + "' does not act as identity",
                            {cat.morphism_id(m)});
        }
        for (MorIdx f = 0; f < cat.morphism_count(); ++f) {
            if (cat.is_identity(f)) continue;
            for (MorIdx g : cat.out_arrows(cat.target(f))) {
                const MorIdx gf = cat.compose(g, f);
                const IntMatrix expected = variance_ == Variance::left ? maps_[g] * maps_[f] : maps_[f] * maps_[g];
                if (!(maps_[gf] == expected))
                    throw Error(ErrorKind::NotFunctorial,
                                "composition law fails for (" + cat.morphism_id(g) + ", " + cat.morphism_id(f) + ")",
                                {cat.morphism_id(g), cat.morphism_id(f)});
            }
        }
    }

    const FiniteCategory& category() const noexcept { return *C_; }
    const CategoryPtr& category_ptr() const noexcept { return C_; }
    Variance variance() const noexcept { return variance_; }
    std::size_t rank(ObjIdx x) const { return ranks_.at(x); }
    const std::vector<std::size_t>& ranks() const noexcept { return ranks_; }
    const IntMatrix& map(MorIdx m) const { return maps_.at(m); }

    std::vector<std::string> labels(ObjIdx x) const
    {
        if (!labels_.empty()) return labels_.at(x);
        std::vector<std::string> out;
        for (std::size_t i = 0; i < rank(x); ++i) out.push_back("e" + std::to_string(i));
        return out;
    }

    /// The same data read as a module of the other variance over `Cop`,
    /// which must be the opposite of this module's category.
    CModule reinterpreted_over(CategoryPtr Cop) const
    {
        if (Cop->object_count() != C_->object_count() || Cop->morphism_count() != C_->morphism_count())
            throw Error(ErrorKind::VarianceMismatch, "target category is not the opposite");
        for (MorIdx m = 0; m < C_->morphism_count(); ++m)
            if (Cop->morphism_id(m) != C_->morphism_id(m) || Cop->source(m) != C_->target(m))
                throw Error(ErrorKind::VarianceMismatch, "target category is not the opposite");
        return CModule(std::move(Cop), variance_ == Variance::left ? Variance::right : Variance::left, ranks_, maps_, labels_);
    }

    friend bool operator==(const CModule& a, const CModule& b)
    {
        return same_category(a.C_, b.C_) && a.variance_ == b.variance_ && a.ranks_ == b.ranks_ && a.maps_ == b.maps_;
    }

private:
    ObjIdx domain_of(MorIdx m) const { return variance_ == Variance::left ? C_->source(m) : C_->target(m); }
    ObjIdx codomain_of(MorIdx m) const { return variance_ == Variance::left ? C_->target(m) : C_->source(m); }

    CategoryPtr C_;
    Variance variance_;
    std::vector<std::size_t> ranks_;
    std::vector<IntMatrix> maps_;
    std::vector<std::vector<std::string>> labels_;
};

/// Position of each morphism inside its hom-set.
inline std::vector<std::size_t> hom_positions(const FiniteCategory& C)
{
    std::vector<std::size_t> pos(C.morphism_count(), 0);
    for (ObjIdx x = 0; x < C.object_count(); ++x)
        for (ObjIdx y = 0; y < C.object_count(); ++y) {
            const auto& h = C.hom(x, y);
            for (std::size_t i = 0; i < h.size(); ++i) pos[h[i]] = i;
        }
    return pos;
}

/// Left: y -> Z[Hom(a, y)] acting by postcomposition. Right: y -> Z[Hom(y, a)]
/// acting by precomposition. Basis labels are morphism ids.
inline CModule standard_projective(const CategoryPtr& C, ObjIdx a, Variance variance)
{
    const FiniteCategory& cat = *C;
    if (a >= cat.object_count()) throw Error(ErrorKind::UnknownObject, "object index out of range");
    const auto pos = hom_positions(cat);
    const std::size_t n = cat.object_count();
    auto basis = [&](ObjIdx y) -> const std::vector<MorIdx>& { return variance == Variance::left ? cat.hom(a, y) : cat.hom(y, a); };
    std::vector<std::size_t> ranks(n);
    std::vector<std::vector<std::string>> labels(n);
    for (ObjIdx y = 0; y < n; ++y) {
        ranks[y] = basis(y).size();
        for (MorIdx g : basis(y)) labels[y].push_back(cat.morphism_id(g));
    }
    std::vector<IntMatrix> maps;
    for (MorIdx f = 0; f < cat.morphism_count(); ++f) {
        const ObjIdx y = cat.source(f);
        const ObjIdx z = cat.target(f);
        if (variance == Variance::left) {
            IntMatrix m(ranks[z], ranks[y]);
            const auto& hy = basis(y);
            for (std::size_t j = 0; j < hy.size(); ++j) m(pos[cat.compose(f, hy[j])], j) = 1;
            maps.push_back(std::move(m));
        } else {
            IntMatrix m(ranks[y], ranks[z]);
            const auto& hz = basis(z);
            for (std::size_t j = 0; j < hz.size(); ++j) m(pos[cat.compose(hz[j], f)], j) = 1;
            maps.push_back(std::move(m));
        }
    }
    return CModule(C, variance, std::move(ranks), std::move(maps), std::move(labels));
}

inline CModule standard_projective(const CategoryPtr& C, const std::string& a, Variance variance)
{
    return standard_projective(C, C->object_index(a), variance);
}

/// Z at every object, identity on every morphism.
inline CModule constant_module(const CategoryPtr& C, Variance variance)
{
    std::vector<IntMatrix> maps(C->morphism_count(), IntMatrix::identity(1));
    return CModule(C, variance, std::vector<std::size_t>(C->object_count(), 1), std::move(maps));
}

inline CModule direct_sum(const CModule& a, const CModule& b)
{
    if (!same_category(a.category_ptr(), b.category_ptr()) || a.variance() != b.variance())
        throw Error(ErrorKind::VarianceMismatch, "direct sum of modules over different categories or variances");
    const FiniteCategory& C = a.category();
    std::vector<std::size_t> ranks(C.object_count());
    std::vector<std::vector<std::string>> labels(C.object_count());
    for (ObjIdx x = 0; x < C.object_count(); ++x) {
        ranks[x] = a.rank(x) + b.rank(x);
        for (const auto& l : a.labels(x)) labels[x].push_back("1:" + l);
        for (const auto& l : b.labels(x)) labels[x].push_back("2:" + l);
    }
    std::vector<IntMatrix> maps;
    for (MorIdx m = 0; m < C.morphism_count(); ++m) {
        const IntMatrix& ma = a.map(m);
        const IntMatrix& mb = b.map(m);
        IntMatrix s(ma.rows() + mb.rows(), ma.cols() + mb.cols());
        for (std::size_t i = 0; i < ma.rows(); ++i)
            for (std::size_t j = 0; j < ma.cols(); ++j) s(i, j) = ma(i, j);
        for (std::size_t i = 0; i < mb.rows(); ++i)
            for (std::size_t j = 0; j < mb.cols(); ++j) s(ma.rows() + i, ma.cols() + j) = mb(i, j);
        maps.push_back(std::move(s));
    }
    return CModule(a.category_ptr(), a.variance(), std::move(ranks), std::move(maps), std::move(labels));
}

// ---------------------------------------------------------------------------
// Complexes of standard projectives
// ---------------------------------------------------------------------------

/// One standard projective P_tag = Z[Hom(tag, -)] inside a term.
struct Summand {
    ObjIdx tag = 0;
    std::string label;
};

/// A differential entry: the map P_{tag(from)} -> P_{tag(to)} given by
/// precomposition with `via`: tag(to) -> tag(from), scaled by `coeff`.
struct ProjectiveEntry {
    std::size_t to = 0;
    std::size_t from = 0;
    MorIdx via = 0;
    Integer coeff;
};

/// Augmentation of the top term onto a left module F: summand s maps its
/// identity generator to `images[s]` in F(tag(s)).
struct Augmentation {
    CModule target;
    std::vector<IntVector> images;
};

/// Bounded complex of finite sums of left standard projectives over C,
/// graded cohomologically: terms in degrees [lo, hi], differentials raise the
/// degree. A projective resolution B_n -> ... -> B_0 sits in degrees [-n, 0].
/// Complexes of right projectives are complexes of left projectives over C^op.
class ProjectiveComplex {
public:
    ProjectiveComplex(CategoryPtr C, int lo, std::vector<std::vector<Summand>> terms,
                      std::vector<std::vector<ProjectiveEntry>> differentials,
                      std::optional<Augmentation> augmentation = std::nullopt)
        : C_(std::move(C)), lo_(lo), terms_(std::move(terms)), diffs_(std::move(differentials)), aug_(std::move(augmentation))
    {
        const FiniteCategory& cat = *C_;
        if (terms_.empty() ? !diffs_.empty() : diffs_.size() + 1 != terms_.size())
            throw Error(ErrorKind::DimensionMismatch, "expected one differential between each pair of adjacent terms");
        for (std::size_t k = 0; k < diffs_.size(); ++k)
            for (const auto& e : diffs_[k]) {
                if (e.from >= terms_[k].size() || e.to >= terms_[k + 1].size())
                    throw Error(ErrorKind::DimensionMismatch, "differential entry refers to a missing summand");
                if (e.via >= cat.morphism_count() || cat.source(e.via) != terms_[k + 1][e.to].tag ||
                    cat.target(e.via) != terms_[k][e.from].tag)
                    throw Error(ErrorKind::DimensionMismatch, "differential entry morphism has wrong endpoints");
            }
        if (aug_) {
            if (!same_category(aug_->target.category_ptr(), C_) || aug_->target.variance() != Variance::left)
                throw Error(ErrorKind::VarianceMismatch, "augmentation target must be a left module over the same category");
            if (terms_.empty() || aug_->images.size() != terms_.back().size())
                throw Error(ErrorKind::DimensionMismatch, "one augmentation image per top summand required");
            for (std::size_t s = 0; s < aug_->images.size(); ++s)
                if (aug_->images[s].size() != aug_->target.rank(terms_.back()[s].tag))
                    throw Error(ErrorKind::DimensionMismatch, "augmentation image has wrong length");
        }
        pos_ = hom_positions(cat);
        for (ObjIdx y = 0; y < cat.object_count(); ++y) {
            const IntegerChainComplex X = evaluate(y); // checks d o d = 0 at y
            (void)X;
        }
    }

    const FiniteCategory& category() const noexcept { return *C_; }
    const CategoryPtr& category_ptr() const noexcept { return C_; }
    int lo() const noexcept { return lo_; }
    int hi() const noexcept { return lo_ + static_cast<int>(terms_.size()) - 1; }
    const std::optional<Augmentation>& augmentation() const noexcept { return aug_; }

    const std::vector<Summand>& term(int n) const
    {
        static const std::vector<Summand> none;
        if (n < lo_ || n > hi()) return none;
        return terms_[static_cast<std::size_t>(n - lo_)];
    }

    /// Entries of the differential leaving degree n.
    const std::vector<ProjectiveEntry>& differential(int n) const
    {
        static const std::vector<ProjectiveEntry> none;
        if (n < lo_ || n >= hi()) return none;
        return diffs_[static_cast<std::size_t>(n - lo_)];
    }

    /// Z-basis offsets of the term in degree n evaluated at y: summand s
    /// occupies [offset[s], offset[s+1]), one slot per g in Hom(tag(s), y).
    std::vector<std::size_t> offsets(int n, ObjIdx y) const
    {
        const auto& t = term(n);
        std::vector<std::size_t> off(t.size() + 1, 0);
        for (std::size_t s = 0; s < t.size(); ++s) off[s + 1] = off[s] + C_->hom(t[s].tag, y).size();
        return off;
    }

    /// The cochain complex of abelian groups obtained by evaluating at y.
    IntegerChainComplex evaluate(ObjIdx y) const
    {
        if (terms_.empty()) return IntegerChainComplex(zlat::Direction::cochain, 0, {}, {});
        std::vector<std::size_t> dims;
        std::vector<std::vector<std::string>> labels;
        for (int n = lo_; n <= hi(); ++n) {
            const auto off = offsets(n, y);
            dims.push_back(off.back());
            std::vector<std::string> l;
            for (const auto& s : term(n))
                for (MorIdx g : C_->hom(s.tag, y)) l.push_back(s.label + "@" + C_->morphism_id(g));
            labels.push_back(std::move(l));
        }
        std::vector<IntMatrix> between;
        for (int n = lo_; n < hi(); ++n) between.push_back(evaluate_differential(n, y));
        return IntegerChainComplex(zlat::Direction::cochain, lo_, std::move(dims), std::move(between), std::move(labels));
    }

    /// evaluate(y) extended by F(y) in degree hi + 1 through the augmentation.
    IntegerChainComplex evaluate_augmented(ObjIdx y) const
    {
        if (!aug_) throw Error(ErrorKind::MalformedInput, "complex carries no augmentation");
        const CModule& F = aug_->target;
        const IntegerChainComplex X = evaluate(y);
        std::vector<std::size_t> dims;
        std::vector<IntMatrix> between;
        for (int n = lo_; n <= hi(); ++n) dims.push_back(X.dim(n));
        for (int n = lo_; n < hi(); ++n) between.push_back(X.outgoing(n));
        dims.push_back(F.rank(y));
        const auto off = offsets(hi(), y);
        IntMatrix eps(F.rank(y), off.back());
        const auto& top = term(hi());
        for (std::size_t s = 0; s < top.size(); ++s) {
            const auto& h = C_->hom(top[s].tag, y);
            for (std::size_t j = 0; j < h.size(); ++j) {
                const IntVector v = F.map(h[j]).apply(aug_->images[s]);
                for (std::size_t i = 0; i < v.size(); ++i) eps(i, off[s] + j) = v[i];
            }
        }
        between.push_back(std::move(eps));
        return IntegerChainComplex(zlat::Direction::cochain, lo_, std::move(dims), std::move(between));
    }

    /// The chain map evaluate(source(h)) -> evaluate(target(h)), g -> h o g.
    zlat::ChainMap evaluation_map(MorIdx h) const
    {
        const ObjIdx y = C_->source(h);
        const ObjIdx z = C_->target(h);
        std::map<int, IntMatrix> comps;
        for (int n = lo_; n <= hi(); ++n) {
            const auto oy = offsets(n, y);
            const auto oz = offsets(n, z);
            IntMatrix m(oz.back(), oy.back());
            const auto& t = term(n);
            for (std::size_t s = 0; s < t.size(); ++s) {
                const auto& hy = C_->hom(t[s].tag, y);
                for (std::size_t j = 0; j < hy.size(); ++j) m(oz[s] + pos_[C_->compose(h, hy[j])], oy[s] + j) = 1;
            }
            comps.emplace(n, std::move(m));
        }
        return zlat::ChainMap(evaluate(y), evaluate(z), std::move(comps));
    }

private:
    IntMatrix evaluate_differential(int n, ObjIdx y) const
    {
        const auto src = offsets(n, y);
        const auto dst = offsets(n + 1, y);
        IntMatrix m(dst.back(), src.back());
        const auto& from_term = term(n);
        for (const auto& e : differential(n)) {
            const auto& h = C_->hom(from_term[e.from].tag, y);
            for (std::size_t j = 0; j < h.size(); ++j)
                m(dst[e.to] + pos_[C_->compose(h[j], e.via)], src[e.from] + j) += e.coeff;
        }
        return m;
    }

    CategoryPtr C_;
    int lo_;
    std::vector<std::vector<Summand>> terms_;
    std::vector<std::vector<ProjectiveEntry>> diffs_;
    std::optional<Augmentation> aug_;
    std::vector<std::size_t> pos_;
};

/// Objects at which the augmented complex fails to be exact (empty = exact).
inline std::vector<ObjIdx> inexact_objects(const ProjectiveComplex& R)
{
    std::vector<ObjIdx> bad;
    for (ObjIdx y = 0; y < R.category().object_count(); ++y)
        if (!zlat::homology_all(R.evaluate_augmented(y)).is_zero()) bad.push_back(y);
    return bad;
}

// ---------------------------------------------------------------------------
// Bar resolutions
// ---------------------------------------------------------------------------

/// Two-sided normalized Bar resolution of a left module F: the term of
/// homological degree n is the sum over nondegenerate chains
/// x_0 -> ... -> x_n of P_{x_n} (x) F(x_0). Face d_0 acts on the coefficient
/// through F(a_1), inner faces compose, d_n precomposes into the tag.
inline ProjectiveComplex bar_resolution_of_module(const CModule& F)
{
    if (F.variance() != Variance::left) throw Error(ErrorKind::VarianceMismatch, "Bar resolution needs a left module");
    const CategoryPtr& Cp = F.category_ptr();
    const FiniteCategory& C = *Cp;
    const Nerve nerve(C);
    const int L = nerve.max_degree();
    bool plain = true;
    for (ObjIdx x = 0; x < C.object_count(); ++x) plain = plain && F.rank(x) == 1;

    // first summand index of every chain, per homological degree
    std::vector<std::vector<std::size_t>> first(static_cast<std::size_t>(L) + 1);
    std::vector<std::vector<Summand>> terms_by_n(static_cast<std::size_t>(L) + 1);
    for (int n = 0; n <= L; ++n) {
        auto& firsts = first[static_cast<std::size_t>(n)];
        auto& terms = terms_by_n[static_cast<std::size_t>(n)];
        for (const Chain& c : nerve.degree(n)) {
            firsts.push_back(terms.size());
            const std::string label = catcore::chain_label(C, c);
            const std::size_t r = F.rank(catcore::first_object(c));
            for (std::size_t k = 0; k < r; ++k)
                terms.push_back({catcore::last_object(C, c), plain ? label : label + "#" + std::to_string(k)});
        }
    }

    // cohomological degree -n holds homological degree n
    std::vector<std::vector<Summand>> terms;
    std::vector<std::vector<ProjectiveEntry>> diffs;
    for (int n = L; n >= 0; --n) terms.push_back(terms_by_n[static_cast<std::size_t>(n)]);
    for (int n = L; n >= 1; --n) {
        std::vector<ProjectiveEntry> entries;
        const auto& chains = nerve.degree(n);
        for (std::size_t ci = 0; ci < chains.size(); ++ci) {
            const Chain& c = chains[ci];
            const std::size_t base = first[static_cast<std::size_t>(n)][ci];
            const std::size_t r = F.rank(c.start);
            for (std::size_t i = 0; i <= static_cast<std::size_t>(n); ++i) {
                const Chain d = nerve.face(c, i);
                const std::size_t target_base = first[static_cast<std::size_t>(n - 1)][nerve.index_of(d)];
                const Integer sign = (i % 2 == 0) ? 1 : -1;
                const MorIdx via = i == static_cast<std::size_t>(n) ? c.arrows.back()
                                                                    : C.identity(catcore::last_object(C, c));
                if (i == 0) {
                    const IntMatrix& act = F.map(c.arrows.front());
                    for (std::size_t k = 0; k < r; ++k)
                        for (std::size_t l = 0; l < act.rows(); ++l)
                            if (act(l, k) != 0) entries.push_back({target_base + l, base + k, via, sign * act(l, k)});
                } else {
                    for (std::size_t k = 0; k < r; ++k) entries.push_back({target_base + k, base + k, via, sign});
                }
            }
        }
        diffs.push_back(std::move(entries));
    }

    std::vector<IntVector> images;
    for (ObjIdx x = 0; x < C.object_count(); ++x)
        for (std::size_t k = 0; k < F.rank(x); ++k) {
            IntVector e(F.rank(x));
            e[k] = 1;
            images.push_back(std::move(e));
        }
    return ProjectiveComplex(Cp, -L, std::move(terms), std::move(diffs), Augmentation{F, std::move(images)});
}

/// Normalized Bar resolution of the constant left module.
inline ProjectiveComplex bar_resolution(const CategoryPtr& C)
{
    return bar_resolution_of_module(constant_module(C, Variance::left));
}

// ---------------------------------------------------------------------------
// Hom and tensor complexes
// ---------------------------------------------------------------------------

/// Hom(R, G) via Hom(P_a, G) = G(a); cochain complex with degree n built from
/// R in degree -n.
inline IntegerChainComplex hom_complex(const ProjectiveComplex& R, const CModule& G)
{
    if (G.variance() != Variance::left || !same_category(R.category_ptr(), G.category_ptr()))
        throw Error(ErrorKind::VarianceMismatch, "Hom complex needs a left module over the complex's category");
    const int lo = -R.hi();
    const int hi = -R.lo();
    auto offsets = [&](int n) {
        const auto& t = R.term(-n);
        std::vector<std::size_t> off(t.size() + 1, 0);
        for (std::size_t s = 0; s < t.size(); ++s) off[s + 1] = off[s] + G.rank(t[s].tag);
        return off;
    };
    std::vector<std::size_t> dims;
    std::vector<std::vector<std::string>> labels;
    for (int n = lo; n <= hi; ++n) {
        dims.push_back(offsets(n).back());
        std::vector<std::string> l;
        for (const auto& s : R.term(-n))
            for (const auto& b : G.labels(s.tag)) l.push_back(s.label + ":" + b);
        labels.push_back(std::move(l));
    }
    std::vector<IntMatrix> between;
    for (int n = lo; n < hi; ++n) {
        const auto src = offsets(n);     // Hom(R^{-n}, G)
        const auto dst = offsets(n + 1); // Hom(R^{-n-1}, G)
        IntMatrix m(dst.back(), src.back());
        for (const auto& e : R.differential(-n - 1)) {
            const IntMatrix& act = G.map(e.via); // G(tag(to)) -> G(tag(from))
            for (std::size_t i = 0; i < act.rows(); ++i)
                for (std::size_t j = 0; j < act.cols(); ++j)
                    if (act(i, j) != 0) m(dst[e.from] + i, src[e.to] + j) += e.coeff * act(i, j);
        }
        between.push_back(std::move(m));
    }
    return IntegerChainComplex(zlat::Direction::cochain, lo, std::move(dims), std::move(between), std::move(labels));
}

/// G (x)_C R via G (x) P_a = G(a); chain complex with degree n built from R in
/// degree -n.
inline IntegerChainComplex tensor_complex(const CModule& G, const ProjectiveComplex& R)
{
    if (G.variance() != Variance::right || !same_category(R.category_ptr(), G.category_ptr()))
        throw Error(ErrorKind::VarianceMismatch, "tensor complex needs a right module over the complex's category");
    const int lo = -R.hi();
    const int hi = -R.lo();
    auto offsets = [&](int n) {
        const auto& t = R.term(-n);
        std::vector<std::size_t> off(t.size() + 1, 0);
        for (std::size_t s = 0; s < t.size(); ++s) off[s + 1] = off[s] + G.rank(t[s].tag);
        return off;
    };
    std::vector<std::size_t> dims;
    for (int n = lo; n <= hi; ++n) dims.push_back(offsets(n).back());
    std::vector<IntMatrix> between;
    for (int n = lo + 1; n <= hi; ++n) {
        const auto src = offsets(n);     // degree n, from R^{-n}
        const auto dst = offsets(n - 1); // degree n-1, from R^{-n+1}
        IntMatrix m(dst.back(), src.back());
        for (const auto& e : R.differential(-n)) {
            const IntMatrix& act = G.map(e.via); // G(tag(from)) -> G(tag(to))
            for (std::size_t i = 0; i < act.rows(); ++i)
                for (std::size_t j = 0; j < act.cols(); ++j)
                    if (act(i, j) != 0) m(dst[e.to] + i, src[e.from] + j) += e.coeff * act(i, j);
        }
        between.push_back(std::move(m));
    }
    return IntegerChainComplex(zlat::Direction::chain, lo, std::move(dims), std::move(between));
}

/// Ext^*(F, G) from the two-sided Bar resolution of F.
inline GradedGroups ext(const CModule& F, const CModule& G)
{
    return zlat::homology_all(hom_complex(bar_resolution_of_module(F), G));
}

/// Tor_*(G, F) for a right module G and a left module F.
inline GradedGroups tor(const CModule& G, const CModule& F)
{
    return zlat::homology_all(tensor_complex(G, bar_resolution_of_module(F)));
}

/// Ext^i(F, G) for 0 <= i <= max_degree.
inline GradedGroups ext(const CategoryPtr& C, const CModule& F, const CModule& G, int max_degree)
{
    if (!same_category(C, F.category_ptr())) throw Error(ErrorKind::VarianceMismatch, "F lives over another category");
    GradedGroups all = ext(F, G), out;
    for (const auto& [d, g] : all.nonzero())
        if (d >= 0 && d <= max_degree) out.set(d, g);
    return out;
}

inline GradedGroups tor(const CategoryPtr& C, const CModule& G, const CModule& F)
{
    if (!same_category(C, F.category_ptr())) throw Error(ErrorKind::VarianceMismatch, "F lives over another category");
    return tor(G, F);
}

// ---------------------------------------------------------------------------
// Duality on complexes of projectives
// ---------------------------------------------------------------------------

/// D(X)^n = D(X^{-n}) with d^n = (-1)^{n+1} D(d^{-(n+1)}); each P_a becomes
/// P^a, i.e. the left projective at a over C^op. `Cop` must be the opposite
/// of the complex's category (indices are shared).
inline ProjectiveComplex dualize(const ProjectiveComplex& R, const CategoryPtr& Cop)
{
    const FiniteCategory& C = R.category();
    if (Cop->object_count() != C.object_count() || Cop->morphism_count() != C.morphism_count())
        throw Error(ErrorKind::VarianceMismatch, "dualization target is not the opposite category");
    std::vector<std::vector<Summand>> terms;
    std::vector<std::vector<ProjectiveEntry>> diffs;
    const int lo = -R.hi();
    const int hi = -R.lo();
    for (int n = lo; n <= hi; ++n) terms.push_back(R.term(-n));
    for (int n = lo; n < hi; ++n) {
        const Integer sign = ((n + 1) % 2 == 0) ? 1 : -1;
        std::vector<ProjectiveEntry> entries;
        for (const auto& e : R.differential(-(n + 1))) entries.push_back({e.from, e.to, e.via, sign * e.coeff});
        diffs.push_back(std::move(entries));
    }
    return ProjectiveComplex(Cop, lo, std::move(terms), std::move(diffs));
}

inline ProjectiveComplex dualize(const ProjectiveComplex& R) { return dualize(R, share(R.category().opposite())); }

inline ProjectiveComplex dualize_projective_complex(const ProjectiveComplex& R) { return dualize(R); }

/// The cohomology of D(R) for a resolution R of F: D^i(F)(x) = Ext^i(F, P_x)
/// as right C-modules. Structure maps are the maps induced on cohomology in
/// the canonical generators; they are only assembled into a CModule for
/// degrees whose values are all free.
struct DerivedDual {
    CategoryPtr category; // C
    int lo = 0;
    int hi = 0;
    std::map<int, std::vector<FgAbelianGroup>> values;   // degree -> per object
    std::map<int, std::optional<CModule>> modules;       // right modules over C
    std::map<int, std::vector<IntMatrix>> generators;    // degree -> per object cocycle generators

    FgAbelianGroup value(int degree, ObjIdx x) const
    {
        auto it = values.find(degree);
        return it == values.end() ? FgAbelianGroup{} : it->second.at(x);
    }

    bool pointwise_free(int degree) const
    {
        auto it = values.find(degree);
        if (it == values.end()) return true;
        for (const auto& g : it->second)
            if (!g.is_free()) return false;
        return true;
    }

    /// Per-object graded groups Ext^*(F, P_x).
    GradedGroups column(ObjIdx x) const
    {
        GradedGroups g;
        for (const auto& [d, vals] : values) g.set(d, vals.at(x));
        return g;
    }
};

inline DerivedDual derived_dual(const ProjectiveComplex& R)
{
    const CategoryPtr& Cp = R.category_ptr();
    const FiniteCategory& C = *Cp;
    const CategoryPtr Cop = share(C.opposite());
    const ProjectiveComplex Rd = dualize(R, Cop);
    DerivedDual out;
    out.category = Cp;
    out.lo = Rd.lo();
    out.hi = Rd.hi();
    const std::size_t n_obj = C.object_count();

    std::vector<IntegerChainComplex> evals;
    for (ObjIdx x = 0; x < n_obj; ++x) evals.push_back(Rd.evaluate(x));

    for (int d = Rd.lo(); d <= Rd.hi(); ++d) {
        std::vector<zlat::HomologyBasis> bases;
        std::vector<FgAbelianGroup> vals;
        std::vector<IntMatrix> gens;
        for (ObjIdx x = 0; x < n_obj; ++x) {
            bases.emplace_back(evals[x], d);
            vals.push_back(bases.back().group());
            gens.push_back(bases.back().generators());
        }
        out.values[d] = vals;
        out.generators[d] = gens;
        bool free = true;
        for (const auto& v : vals) free = free && v.is_free();
        if (!free) {
            out.modules[d] = std::nullopt;
            continue;
        }
        std::vector<std::size_t> ranks;
        for (const auto& v : vals) ranks.push_back(v.rank());
        std::vector<IntMatrix> maps;
        for (MorIdx m = 0; m < C.morphism_count(); ++m) {
            const ObjIdx src = C.source(m);
            const ObjIdx dst = C.target(m);
            if (C.is_identity(m)) {
                maps.push_back(IntMatrix::identity(ranks[src]));
                continue;
            }
            if (ranks[src] == 0 || ranks[dst] == 0) {
                maps.push_back(IntMatrix::zero(ranks[src], ranks[dst]));
                continue;
            }
            // m: src -> dst in C is dst -> src in C^op.
            const zlat::ChainMap f = Rd.evaluation_map(m);
            maps.push_back(zlat::induced_map(f, bases[dst], bases[src], d));
        }
        out.modules[d] = CModule(Cp, Variance::right, std::move(ranks), std::move(maps));
    }
    return out;
}

inline DerivedDual derived_dual(const CategoryPtr& C) { return derived_dual(bar_resolution(C)); }

} // namespace dualcat::cmodule
