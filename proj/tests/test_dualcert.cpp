#include <gtest/gtest.h>

#include "common.hpp"
#include "dualcat/dualcert.hpp"
#include "dualcat/zoo.hpp"

using namespace dualcat;
using namespace dualcat::dualcert;

namespace {

const FgAbelianGroup Z1 = FgAbelianGroup::free(1);
const FgAbelianGroup Z2 = FgAbelianGroup::free(2);

CategoryPtr example(const std::string& name) { return cmodule::share(zoo::paper_example(name)); }

FgAbelianGroup value_at(const DualityCertificate& c, const std::string& obj)
{
    return c.dualizing_values.at(c.category->object_index(obj));
}

void expect_signs_consistent(const CModule& M, const ConstancyResult& r)
{
    const FiniteCategory& C = M.category();
    ASSERT_TRUE(r.constant);
    for (MorIdx m = 0; m < C.morphism_count(); ++m) {
        const int s = M.map(m)(0, 0) < 0 ? -1 : 1;
        EXPECT_EQ(r.signs[C.source(m)] * s, r.signs[C.target(m)]) << C.morphism_id(m);
    }
}

CModule signed_square(int sign_on_02)
{
    const CategoryPtr P = example("square_poset");
    std::vector<zlat::IntMatrix> maps(P->morphism_count(), zlat::IntMatrix::identity(1));
    maps[P->morphism_index("0<2")] = zlat::IntMatrix{{sign_on_02}};
    return CModule(P, Variance::right, {1, 1, 1, 1}, maps);
}

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::MalformedInput;
}

} // namespace

TEST(CertifyGeneric, ParallelArrows)
{
    const DualityCertificate c = certify_generic(example("parallel_arrows"));
    ASSERT_TRUE(c.certified());
    EXPECT_EQ(c.degree, 1);
    EXPECT_EQ(c.dualizing_values, (std::vector<FgAbelianGroup>{Z1, Z1}));
    EXPECT_TRUE(is_constant_module(c.dualizing_module()).constant);
    EXPECT_EQ(c.checks.at("bar_exactness"), "pass");
    EXPECT_EQ(c.checks.at("naturality"), "structural");
    EXPECT_EQ(c.checks.at("projective_dimension"), "pass");
}

TEST(CertifyGeneric, FiveObject)
{
    const DualityCertificate c = certify_generic(example("five_object"));
    ASSERT_TRUE(c.certified());
    EXPECT_EQ(c.degree, 1);
    EXPECT_EQ(value_at(c, "0"), Z2);
    EXPECT_EQ(value_at(c, "1"), Z2);
    EXPECT_EQ(value_at(c, "2"), Z2);
    EXPECT_EQ(value_at(c, "3"), Z1);
    EXPECT_EQ(value_at(c, "4"), Z1);
    EXPECT_TRUE(c.dualizing_pointwise_free);
    EXPECT_EQ(kind_of([&] { is_constant_module(c.dualizing_module()); }), ErrorKind::RankNotOne);
}

TEST(CertifyGeneric, SquarePoset)
{
    const DualityCertificate c = certify_generic(example("square_poset"));
    ASSERT_TRUE(c.certified());
    EXPECT_EQ(c.degree, 1);
    const ConstancyResult r = is_constant_module(c.dualizing_module());
    expect_signs_consistent(c.dualizing_module(), r);
}

TEST(CertifyGeneric, OneObjectAndChains)
{
    const DualityCertificate c = certify_generic(cmodule::share(zoo::one_object()));
    ASSERT_TRUE(c.certified());
    EXPECT_EQ(c.degree, 0);
    // a chain has a terminal object, so Z̲ = P_top is projective
    const DualityCertificate ch = certify_generic(cmodule::share(zoo::chain_poset(3)));
    ASSERT_TRUE(ch.certified());
    EXPECT_EQ(ch.degree, 0);
}

TEST(CertifyGeneric, RefutedEdgePlusPoint)
{
    const DualityCertificate c = certify_generic(cmodule::share(scomplex::face_poset(zoo::edge_plus_point())));
    EXPECT_EQ(c.verdict, Verdict::refuted);
    ASSERT_FALSE(c.witnesses.empty());
    EXPECT_EQ(kind_of([&] { c.dualizing_module(); }), ErrorKind::NotCertified);
}

TEST(CertifySimplicial, Spheres)
{
    for (int n = 1; n <= 3; ++n) {
        const DualityCertificate c = certify_simplicial(zoo::sphere_boundary(n + 1));
        ASSERT_TRUE(c.certified()) << n;
        EXPECT_EQ(c.degree, n);
        for (const auto& v : c.dualizing_values) EXPECT_EQ(v, Z1);
        EXPECT_EQ(c.checks.at("link_vs_generic_values"), "pass");
        EXPECT_TRUE(is_constant_module(c.dualizing_module()).constant);
    }
}

TEST(CertifySimplicial, SingleEdge)
{
    const DualityCertificate c = certify_simplicial(zoo::single_edge());
    ASSERT_TRUE(c.certified());
    EXPECT_EQ(c.degree, 1);
    EXPECT_TRUE(value_at(c, "v").is_trivial());
    EXPECT_TRUE(value_at(c, "w").is_trivial());
    EXPECT_EQ(value_at(c, "v+w"), Z1);
}

TEST(CertifySimplicial, EdgePlusPointWitness)
{
    const DualityCertificate c = certify_simplicial(zoo::edge_plus_point());
    EXPECT_EQ(c.verdict, Verdict::refuted);
    ASSERT_EQ(c.witnesses.size(), 1u);
    const Witness& w = c.witnesses.front();
    std::set<int> degrees(w.degrees.begin(), w.degrees.end());
    EXPECT_EQ(degrees, (std::set<int>{0, 1}));
    EXPECT_NE(std::find(w.objects.begin(), w.objects.end(), "v3"), w.objects.end());
}

TEST(CertifySimplicial, Buildings)
{
    const DualityCertificate b23 = certify_simplicial(zoo::building_gl(2, 3));
    ASSERT_TRUE(b23.certified());
    EXPECT_EQ(b23.degree, 0);
    for (const auto& v : b23.dualizing_values) EXPECT_EQ(v, Z1);

    const SimplicialComplex F = zoo::building_gl(3, 2);
    const DualityCertificate b32 = certify_simplicial(F);
    ASSERT_TRUE(b32.certified());
    EXPECT_EQ(b32.degree, 1);
    for (const auto& f : F.faces()) {
        const auto& v = value_at(b32, scomplex::face_id(f));
        EXPECT_EQ(v, f.size() == 1 ? Z2 : Z1) << scomplex::face_id(f);
    }
}

TEST(CertifySimplicial, Degenerate)
{
    const DualityCertificate c = certify_simplicial(SimplicialComplex::simplex({"a", "b", "c"}));
    ASSERT_TRUE(c.certified());
    EXPECT_EQ(c.degree, 2);
    const DualityCertificate v = certify_simplicial(SimplicialComplex());
    EXPECT_EQ(v.verdict, Verdict::degenerate);
}

TEST(Constancy, SignedSquare)
{
    const CModule good = signed_square(1);
    expect_signs_consistent(good, is_constant_module(good));

    const CModule bad = signed_square(-1);
    const ConstancyResult r = is_constant_module(bad);
    EXPECT_FALSE(r.constant);
    EXPECT_EQ(r.cycle.size(), 4u);
    EXPECT_EQ(cycle_sign(bad, r.cycle), -1);
}

TEST(Constancy, Errors)
{
    const CategoryPtr P = example("square_poset");
    std::vector<zlat::IntMatrix> maps(P->morphism_count(), zlat::IntMatrix::identity(1));
    for (MorIdx m = 0; m < P->morphism_count(); ++m)
        if (!P->is_identity(m)) maps[m] = zlat::IntMatrix{{2}};
    const CModule twice(P, Variance::right, {1, 1, 1, 1}, maps);
    EXPECT_EQ(kind_of([&] { is_constant_module(twice); }), ErrorKind::MapNotUnit);
}

TEST(Orientability, Surfaces)
{
    const OrientabilityReport t = orientability(zoo::surface("torus7"));
    EXPECT_TRUE(t.orientable);
    EXPECT_TRUE(t.dualizing_constant);
    EXPECT_TRUE(t.consistent);
    EXPECT_EQ(t.top_homology, Z1);

    for (const char* name : {"rp2_6", "klein8"}) {
        const DualityCertificate c = certify_simplicial(zoo::surface(name));
        ASSERT_TRUE(c.certified()) << name;
        EXPECT_EQ(c.degree, 2);
        const OrientabilityReport o = orientability(c);
        EXPECT_FALSE(o.orientable) << name;
        EXPECT_TRUE(o.top_homology.is_trivial());
        EXPECT_FALSE(o.dualizing_constant);
        EXPECT_TRUE(o.consistent);
        const ConstancyResult r = is_constant_module(c.dualizing_module());
        ASSERT_FALSE(r.constant);
        EXPECT_EQ(cycle_sign(c.dualizing_module(), r.cycle), -1);
    }
}

TEST(Orientability, RequiresManifoldLike)
{
    EXPECT_EQ(kind_of([] { orientability(certify_generic(cmodule::share(zoo::paper_example("five_object")))); }),
              ErrorKind::NotManifoldLike);
    EXPECT_EQ(kind_of([] { orientability(zoo::edge_plus_point()); }), ErrorKind::NotCertified);
}

TEST(Poincare, SphereAndTorus)
{
    const PoincareReport s = poincare_report(zoo::sphere_boundary(3));
    ASSERT_EQ(s.rows.size(), 3u);
    EXPECT_EQ(s.rows[0].homology, Z1);
    EXPECT_EQ(s.rows[0].cohomology, Z1);
    EXPECT_TRUE(s.rows[1].homology.is_trivial());
    EXPECT_TRUE(s.rows[1].cohomology.is_trivial());
    EXPECT_EQ(s.rows[2].homology, Z1);
    EXPECT_TRUE(s.all_match());

    const PoincareReport t = poincare_report(zoo::surface("torus7"));
    EXPECT_EQ(t.rows[1].homology, Z2);
    EXPECT_EQ(t.rows[1].cohomology, Z2);
    EXPECT_TRUE(t.all_match());

    EXPECT_EQ(kind_of([] { poincare_report(zoo::surface("rp2_6")); }), ErrorKind::NotOrientable);
}

TEST(RoundTrip, PaperExamples)
{
    for (const char* name : {"parallel_arrows", "square_poset", "five_object"}) {
        const DualityCertificate c = certify_generic(example(name));
        const DualityCertificate back = certify_dualizing_module(c);
        ASSERT_TRUE(back.certified()) << name;
        EXPECT_EQ(back.degree, c.degree);
        for (const auto& v : back.dualizing_values) EXPECT_EQ(v, Z1);
        EXPECT_EQ(back.checks.at("round_trip_degree"), "pass");
        EXPECT_EQ(back.checks.at("round_trip_values"), "pass");
    }
}

TEST(RoundTrip, SingleEdge)
{
    const DualityCertificate back = certify_dualizing_module(certify_simplicial(zoo::single_edge()));
    ASSERT_TRUE(back.certified());
    EXPECT_EQ(back.degree, 1);
    for (const auto& v : back.dualizing_values) EXPECT_EQ(v, Z1);
}

TEST(DualityIsomorphism, ExamplesAndTorus)
{
    for (const char* name : {"parallel_arrows", "five_object", "square_poset"}) {
        const DualityCertificate c = certify_generic(example(name));
        EXPECT_TRUE(verify_duality_isomorphism(c).all_match()) << name;
    }
    const DualityCertificate t = certify_simplicial(zoo::surface("torus7"));
    const DualityReport r = verify_duality_isomorphism(t, standard_test_modules(t.category, false));
    EXPECT_TRUE(r.all_match());
    EXPECT_FALSE(r.rows.empty());
}

TEST(DualityIsomorphism, DetectsMismatch)
{
    // feeding the wrong degree breaks the comparison
    DualityCertificate c = certify_generic(example("square_poset"));
    c.degree = 0;
    EXPECT_FALSE(verify_duality_isomorphism(c).all_match());
}
