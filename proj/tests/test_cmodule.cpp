#include <gtest/gtest.h>

#include "common.hpp"
#include "dualcat/cmodule.hpp"
#include "dualcat/scomplex.hpp"
#include "dualcat/zoo.hpp"

using namespace dualcat;
using namespace dualcat::cmodule;
using zlat::homology;
using zlat::homology_all;

namespace {

const FgAbelianGroup Z1 = FgAbelianGroup::free(1);
const FgAbelianGroup Z2 = FgAbelianGroup::free(2);

CategoryPtr example(const std::string& name) { return share(zoo::paper_example(name)); }

Augmentation to_constant(const CategoryPtr& C, std::size_t top_summands)
{
    return {constant_module(C, Variance::left), std::vector<IntVector>(top_summands, IntVector{1})};
}

// 0 -> P_y -> P_x with alpha^* - beta^*
ProjectiveComplex paper_parallel_resolution(const CategoryPtr& C)
{
    const ObjIdx x = C->object_index("x"), y = C->object_index("y");
    const MorIdx a = C->morphism_index("alpha"), b = C->morphism_index("beta");
    return ProjectiveComplex(C, -1, {{{y, "y"}}, {{x, "x"}}}, {{{0, 0, a, 1}, {0, 0, b, -1}}}, to_constant(C, 1));
}

// 0 -> P_2 + P_2 + P_3 -> P_0 + P_1 + P_4 with the matrix phi
ProjectiveComplex paper_five_object_resolution(const CategoryPtr& C)
{
    auto o = [&](const char* s) { return C->object_index(s); };
    auto m = [&](const char* s) { return C->morphism_index(s); };
    std::vector<Summand> low{{o("2"), "2a"}, {o("2"), "2b"}, {o("3"), "3"}};
    std::vector<Summand> top{{o("0"), "0"}, {o("1"), "1"}, {o("4"), "4"}};
    std::vector<ProjectiveEntry> phi{{0, 0, m("b"), 1},  {0, 1, m("b"), 1},  {0, 2, m("d"), 1},
                                     {1, 0, m("c"), -1}, {1, 2, m("e"), -1}, {2, 1, m("a"), -1}};
    return ProjectiveComplex(C, -1, {low, top}, {phi}, to_constant(C, 3));
}

// 0 -> P_{v+w} -> P_v + P_w for the single edge
ProjectiveComplex single_edge_resolution(const CategoryPtr& P)
{
    const ObjIdx v = P->object_index("v"), w = P->object_index("w"), vw = P->object_index("v+w");
    return ProjectiveComplex(P, -1, {{{vw, "vw"}}, {{v, "v"}, {w, "w"}}},
                             {{{0, 0, P->morphism_index("v<v+w"), 1}, {1, 0, P->morphism_index("w<v+w"), -1}}},
                             to_constant(P, 2));
}

GradedGroups single(int d, const FgAbelianGroup& g)
{
    GradedGroups out;
    out.set(d, g);
    return out;
}

// Unnormalized cochains of C with constant coefficients, all chains of
// length <= N (identities included); degrees < N are exact in the truncation.
GradedGroups unnormalized_cohomology(const FiniteCategory& C, int N)
{
    std::vector<std::vector<std::vector<MorIdx>>> chains(N + 1);
    std::vector<std::vector<ObjIdx>> starts(N + 1);
    for (ObjIdx x = 0; x < C.object_count(); ++x) {
        chains[0].push_back({});
        starts[0].push_back(x);
    }
    for (int n = 1; n <= N; ++n)
        for (std::size_t i = 0; i < chains[n - 1].size(); ++i) {
            const auto& c = chains[n - 1][i];
            const ObjIdx end = c.empty() ? starts[n - 1][i] : C.target(c.back());
            for (ObjIdx z = 0; z < C.object_count(); ++z)
                for (MorIdx f : C.hom(end, z)) {
                    auto e = c;
                    e.push_back(f);
                    chains[n].push_back(e);
                    starts[n].push_back(starts[n - 1][i]);
                }
        }
    auto find = [&](int n, ObjIdx s, const std::vector<MorIdx>& c) {
        for (std::size_t i = 0; i < chains[n].size(); ++i)
            if (chains[n][i] == c && (n > 0 || starts[n][i] == s)) return i;
        ADD_FAILURE();
        return std::size_t{0};
    };
    std::vector<std::size_t> dims;
    for (int n = 0; n <= N; ++n) dims.push_back(chains[n].size());
    std::vector<IntMatrix> between;
    for (int n = 0; n < N; ++n) {
        IntMatrix d(dims[n + 1], dims[n]);
        for (std::size_t r = 0; r < chains[n + 1].size(); ++r) {
            const auto& c = chains[n + 1][r];
            const ObjIdx s = starts[n + 1][r];
            for (int i = 0; i <= n + 1; ++i) {
                std::vector<MorIdx> f;
                ObjIdx fs = s;
                if (i == 0) {
                    f.assign(c.begin() + 1, c.end());
                    fs = C.target(c[0]);
                } else if (i == n + 1) {
                    f.assign(c.begin(), c.end() - 1);
                } else {
                    for (int k = 0; k < n + 1; ++k) {
                        if (k == i - 1) {
                            f.push_back(C.compose(c[i], c[i - 1]));
                            ++k;
                        } else {
                            f.push_back(c[k]);
                        }
                    }
                }
                d(r, find(n, fs, f)) += (i % 2 == 0) ? 1 : -1;
            }
        }
        between.push_back(d);
    }
    const IntegerChainComplex X(zlat::Direction::cochain, 0, dims, between);
    GradedGroups out;
    for (int n = 0; n < N; ++n) out.set(n, homology(X, n));
    return out;
}

} // namespace

TEST(StandardProjective, ParallelArrowsRanks)
{
    const CategoryPtr C = example("parallel_arrows");
    const ObjIdx x = C->object_index("x"), y = C->object_index("y");
    const CModule Px = standard_projective(C, "x", Variance::left);
    EXPECT_EQ(Px.rank(x), 1u);
    EXPECT_EQ(Px.rank(y), 2u);
    const CModule Py = standard_projective(C, "y", Variance::left);
    EXPECT_EQ(Py.rank(x), 0u);
    EXPECT_EQ(Py.rank(y), 1u);
    EXPECT_THROW(standard_projective(C, "z", Variance::left), Error);
}

TEST(StandardProjective, ContainsIdentity)
{
    for (const char* name : {"parallel_arrows", "five_object", "square_poset"}) {
        const CategoryPtr C = example(name);
        for (ObjIdx a = 0; a < C->object_count(); ++a)
            for (Variance v : {Variance::left, Variance::right}) {
                const auto labels = standard_projective(C, a, v).labels(a);
                EXPECT_NE(std::find(labels.begin(), labels.end(), C->morphism_id(C->identity(a))), labels.end());
            }
    }
}

TEST(ConstantModule, SquarePoset)
{
    const CategoryPtr C = example("square_poset");
    const CModule Z = constant_module(C, Variance::left);
    for (ObjIdx x = 0; x < C->object_count(); ++x) EXPECT_EQ(Z.rank(x), 1u);
    for (MorIdx m = 0; m < C->morphism_count(); ++m) EXPECT_EQ(Z.map(m), IntMatrix::identity(1));
    const CModule Zop = constant_module(share(C->opposite()), Variance::left);
    EXPECT_EQ(Zop.ranks(), Z.ranks());
}

TEST(ConstantModule, ConnectedH0)
{
    for (const char* name : {"parallel_arrows", "five_object", "square_poset"}) {
        const CategoryPtr C = example(name);
        const CModule Z = constant_module(C, Variance::left);
        EXPECT_EQ(ext(Z, Z).at(0), Z1) << name;
    }
}

TEST(CModuleCheck, RejectsNonFunctorialData)
{
    const CategoryPtr C = share(zoo::chain_poset(3));
    std::vector<IntMatrix> maps(C->morphism_count(), IntMatrix::identity(1));
    maps[C->morphism_index("0<2")] = IntMatrix{{-1}};
    EXPECT_THROW(CModule(C, Variance::left, {1, 1, 1}, maps), Error);
    maps[C->morphism_index("0<2")] = IntMatrix{{1}};
    maps[C->identity(0)] = IntMatrix{{2}};
    EXPECT_THROW(CModule(C, Variance::left, {1, 1, 1}, maps), Error);
}

TEST(Bar, ParallelArrowsShape)
{
    const CategoryPtr C = example("parallel_arrows");
    const ProjectiveComplex B = bar_resolution(C);
    EXPECT_EQ(B.lo(), -1);
    EXPECT_EQ(B.hi(), 0);
    ASSERT_EQ(B.term(-1).size(), 2u);
    for (const auto& s : B.term(-1)) EXPECT_EQ(s.tag, C->object_index("y"));
    std::vector<std::string> labels;
    for (const auto& s : B.term(-1)) labels.push_back(s.label);
    std::sort(labels.begin(), labels.end());
    EXPECT_EQ(labels, (std::vector<std::string>{"alpha", "beta"}));
    EXPECT_EQ(B.term(0).size(), 2u);
    EXPECT_TRUE(inexact_objects(B).empty());
}

TEST(Bar, OneObjectAndShortChain)
{
    const ProjectiveComplex B1 = bar_resolution(share(zoo::one_object()));
    EXPECT_EQ(B1.lo(), 0);
    EXPECT_EQ(B1.term(0).size(), 1u);
    EXPECT_TRUE(inexact_objects(B1).empty());

    const CategoryPtr C = share(zoo::chain_poset(2));
    const ProjectiveComplex B = bar_resolution(C);
    EXPECT_EQ(B.term(0).size(), 2u);
    ASSERT_EQ(B.term(-1).size(), 1u);
    EXPECT_EQ(B.term(-1)[0].tag, C->object_index("1"));
    EXPECT_TRUE(inexact_objects(B).empty());
}

TEST(Bar, ExactOnExamples)
{
    for (const char* name : {"parallel_arrows", "five_object", "square_poset"})
        EXPECT_TRUE(inexact_objects(bar_resolution(example(name))).empty()) << name;
}

TEST(Bar, ModuleCoefficients)
{
    const CategoryPtr C = example("square_poset");
    for (ObjIdx a = 0; a < C->object_count(); ++a)
        EXPECT_TRUE(inexact_objects(bar_resolution_of_module(standard_projective(C, a, Variance::left))).empty());
    // Z̲ coefficients give back the plain Bar resolution
    const ProjectiveComplex B = bar_resolution(C);
    const ProjectiveComplex BZ = bar_resolution_of_module(constant_module(C, Variance::left));
    for (ObjIdx y = 0; y < C->object_count(); ++y) EXPECT_EQ(homology_all(B.evaluate(y)), homology_all(BZ.evaluate(y)));
    EXPECT_THROW(bar_resolution_of_module(constant_module(C, Variance::right)), Error);
}

TEST(Bar, DualizingModuleCoefficients)
{
    const CategoryPtr C = example("five_object");
    const DerivedDual D = derived_dual(C);
    ASSERT_TRUE(D.modules.at(1).has_value());
    const CategoryPtr Cop = share(C->opposite());
    const CModule Dop = D.modules.at(1)->reinterpreted_over(Cop);
    EXPECT_EQ(Dop.variance(), Variance::left);
    EXPECT_TRUE(inexact_objects(bar_resolution_of_module(Dop)).empty());
}

TEST(PaperResolution, ParallelArrows)
{
    const CategoryPtr C = example("parallel_arrows");
    const ProjectiveComplex R = paper_parallel_resolution(C);
    EXPECT_TRUE(inexact_objects(R).empty());

    const ProjectiveComplex Rd = dualize_projective_complex(R);
    // P^y <- P^x: degree 0 carries P^x, degree 1 carries P^y
    EXPECT_EQ(Rd.lo(), 0);
    EXPECT_EQ(Rd.hi(), 1);
    ASSERT_EQ(Rd.term(0).size(), 1u);
    ASSERT_EQ(Rd.term(1).size(), 1u);
    EXPECT_EQ(Rd.term(0)[0].tag, C->object_index("x"));
    EXPECT_EQ(Rd.term(1)[0].tag, C->object_index("y"));
    EXPECT_EQ(Rd.differential(0).size(), 2u);
    for (ObjIdx z = 0; z < C->object_count(); ++z) EXPECT_EQ(homology_all(Rd.evaluate(z)), single(1, Z1));

    const DerivedDual D = derived_dual(R);
    EXPECT_EQ(D.value(1, 0), Z1);
    EXPECT_EQ(D.value(1, 1), Z1);
    EXPECT_TRUE(D.value(0, 0).is_trivial());
}

TEST(PaperResolution, FiveObject)
{
    const CategoryPtr C = example("five_object");
    const ProjectiveComplex R = paper_five_object_resolution(C);
    EXPECT_TRUE(inexact_objects(R).empty());
    const DerivedDual D = derived_dual(R);
    const std::vector<FgAbelianGroup> expected{Z2, Z2, Z2, Z1, Z1};
    for (ObjIdx x = 0; x < 5; ++x) {
        EXPECT_EQ(D.value(1, C->object_index(std::to_string(x))), expected[x]) << x;
        EXPECT_TRUE(D.value(0, x).is_trivial());
    }
    // agrees with the Bar resolution as a module
    const DerivedDual DB = derived_dual(C);
    for (ObjIdx x = 0; x < 5; ++x) EXPECT_EQ(DB.column(x), D.column(x));
}

TEST(PaperResolution, SingleEdge)
{
    const CategoryPtr P = share(scomplex::face_poset(zoo::single_edge()));
    const ProjectiveComplex R = single_edge_resolution(P);
    EXPECT_TRUE(inexact_objects(R).empty());
    const ProjectiveComplex Rd = dualize(R);
    EXPECT_TRUE(homology_all(Rd.evaluate(P->object_index("v"))).is_zero());
    EXPECT_TRUE(homology_all(Rd.evaluate(P->object_index("w"))).is_zero());
    EXPECT_EQ(homology_all(Rd.evaluate(P->object_index("v+w"))), single(1, Z1));
}

TEST(Dualize, Biduality)
{
    for (const char* name : {"parallel_arrows", "five_object", "square_poset"}) {
        const CategoryPtr C = example(name);
        const ProjectiveComplex B = bar_resolution(C);
        const CategoryPtr Cop = share(C->opposite());
        const ProjectiveComplex BB = dualize(dualize(B, Cop), C);
        EXPECT_EQ(BB.lo(), B.lo());
        EXPECT_EQ(BB.hi(), B.hi());
        for (ObjIdx y = 0; y < C->object_count(); ++y) {
            const auto X = B.evaluate(y), Y = BB.evaluate(y);
            for (int n = B.lo(); n <= B.hi(); ++n) {
                EXPECT_EQ(X.dim(n), Y.dim(n));
                // the two sign twists compose to -1, which is isomorphic to the original via (-1)^n
                EXPECT_EQ(X.outgoing(n).scaled(-1), Y.outgoing(n));
            }
        }
    }
}

TEST(Dualize, ProjectiveValues)
{
    // D(P_a)(y) has rank |Hom(y, a)|
    for (const char* name : {"parallel_arrows", "five_object", "square_poset"}) {
        const CategoryPtr C = example(name);
        for (ObjIdx a = 0; a < C->object_count(); ++a) {
            const ProjectiveComplex Pa(C, 0, {{{a, "a"}}}, {});
            const ProjectiveComplex Da = dualize(Pa);
            for (ObjIdx y = 0; y < C->object_count(); ++y) EXPECT_EQ(Da.evaluate(y).dim(0), C->hom(y, a).size());
        }
    }
}

TEST(HomComplex, ParallelArrowsProjectives)
{
    const CategoryPtr C = example("parallel_arrows");
    const ProjectiveComplex B = bar_resolution(C);
    for (const char* a : {"x", "y"}) {
        const GradedGroups e = homology_all(hom_complex(B, standard_projective(C, a, Variance::left)));
        EXPECT_EQ(e, single(1, Z1)) << a;
    }
    EXPECT_THROW(hom_complex(B, constant_module(C, Variance::right)), Error);
}

TEST(HomComplex, OneObject)
{
    const CategoryPtr C = share(zoo::one_object());
    const CModule Z = constant_module(C, Variance::left);
    const CModule Z3 = direct_sum(direct_sum(Z, Z), Z);
    EXPECT_EQ(ext(Z, Z3), single(0, FgAbelianGroup::free(3)));
}

TEST(Ext, CircleFacePoset)
{
    const CategoryPtr P = share(scomplex::face_poset(zoo::sphere_boundary(2)));
    const CModule Z = constant_module(P, Variance::left);
    GradedGroups expected;
    expected.set(0, Z1);
    expected.set(1, Z1);
    EXPECT_EQ(ext(P, Z, Z, 5), expected);
    EXPECT_EQ(ext(P, Z, Z, 0), single(0, Z1));
}

TEST(Ext, FiveObjectProjective)
{
    const CategoryPtr C = example("five_object");
    const CModule Z = constant_module(C, Variance::left);
    EXPECT_EQ(ext(Z, standard_projective(C, "2", Variance::left)), single(1, Z2));
}

TEST(Ext, YonedaCollapse)
{
    for (const char* name : {"parallel_arrows", "five_object", "square_poset"}) {
        const CategoryPtr C = example(name);
        const CModule Z = constant_module(C, Variance::left);
        const CModule Zr = constant_module(C, Variance::right);
        for (ObjIdx a = 0; a < C->object_count(); ++a) {
            const CModule Pa = standard_projective(C, a, Variance::left);
            for (ObjIdx b = 0; b < C->object_count(); ++b) {
                const CModule G = standard_projective(C, b, Variance::left);
                EXPECT_EQ(ext(Pa, G), single(0, FgAbelianGroup::free(G.rank(a))));
                const CModule H = standard_projective(C, b, Variance::right);
                EXPECT_EQ(tor(H, Pa), single(0, FgAbelianGroup::free(H.rank(a))));
            }
            EXPECT_EQ(ext(Pa, Z), single(0, Z1));
            EXPECT_EQ(tor(Zr, Pa), single(0, Z1));
        }
    }
}

TEST(Ext, MatchesUnnormalizedBar)
{
    const int N = 4;
    std::vector<FiniteCategory> cats{zoo::paper_example("parallel_arrows"), zoo::paper_example("five_object"),
                                     zoo::paper_example("square_poset"), scomplex::face_poset(zoo::sphere_boundary(2)),
                                     zoo::chain_poset(3)};
    for (const auto& C : cats) {
        const CategoryPtr Cp = share(C);
        const CModule Z = constant_module(Cp, Variance::left);
        EXPECT_EQ(ext(Cp, Z, Z, N - 1), unnormalized_cohomology(C, N));
    }
}

TEST(Tensor, CircleHomology)
{
    const CategoryPtr P = share(scomplex::face_poset(zoo::sphere_boundary(2)));
    GradedGroups expected;
    expected.set(0, Z1);
    expected.set(1, Z1);
    EXPECT_EQ(homology_all(tensor_complex(constant_module(P, Variance::right), bar_resolution(P))), expected);
    for (ObjIdx a = 0; a < P->object_count(); ++a)
        EXPECT_EQ(homology_all(tensor_complex(standard_projective(P, a, Variance::right), bar_resolution(P))), single(0, Z1));
    EXPECT_THROW(tensor_complex(constant_module(P, Variance::left), bar_resolution(P)), Error);
}

TEST(Tensor, SingleEdgeDualizing)
{
    const CategoryPtr P = share(scomplex::face_poset(zoo::single_edge()));
    const DerivedDual D = derived_dual(P);
    ASSERT_TRUE(D.modules.at(1).has_value());
    EXPECT_EQ(homology_all(tensor_complex(*D.modules.at(1), single_edge_resolution(P))), single(1, Z1));
}

TEST(Tor, TorusHomology)
{
    const CategoryPtr P = share(scomplex::face_poset(zoo::surface("torus7")));
    GradedGroups expected;
    expected.set(0, Z1);
    expected.set(1, Z2);
    expected.set(2, Z1);
    EXPECT_EQ(tor(P, constant_module(P, Variance::right), constant_module(P, Variance::left)), expected);
}

TEST(Tor, DualizingAgainstProjectives)
{
    const CategoryPtr C = example("five_object");
    const DerivedDual D = derived_dual(C);
    const CModule& Dm = *D.modules.at(1);
    for (ObjIdx x = 0; x < C->object_count(); ++x)
        EXPECT_EQ(tor(Dm, standard_projective(C, x, Variance::left)), single(0, D.value(1, x)));
}

TEST(DerivedDual, Examples)
{
    const DerivedDual D5 = derived_dual(example("five_object"));
    for (const auto& [d, vals] : D5.values)
        if (d != 1)
            for (const auto& v : vals) EXPECT_TRUE(v.is_trivial());

    const DerivedDual Dsq = derived_dual(example("square_poset"));
    ASSERT_TRUE(Dsq.modules.at(1).has_value());
    for (const auto& v : Dsq.values.at(1)) EXPECT_EQ(v, Z1);
    for (MorIdx m = 0; m < Dsq.category->morphism_count(); ++m) {
        const IntMatrix& a = Dsq.modules.at(1)->map(m);
        EXPECT_TRUE(a == IntMatrix{{1}} || a == IntMatrix{{-1}});
    }

    const DerivedDual D1 = derived_dual(share(zoo::one_object()));
    EXPECT_EQ(D1.column(0), single(0, Z1));
}
