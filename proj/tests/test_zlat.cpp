#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "common.hpp"
#include "dualcat/zlat.hpp"

using namespace dualcat;
using namespace dualcat::zlat;

namespace {

// gcd of all k x k minors, by cofactor expansion on small matrices
long long minor_det(const std::vector<std::vector<long long>>& a, const std::vector<int>& rows, const std::vector<int>& cols)
{
    const std::size_t k = rows.size();
    if (k == 1) return a[rows[0]][cols[0]];
    long long d = 0;
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<int> r(rows.begin() + 1, rows.end());
        std::vector<int> c;
        for (std::size_t t = 0; t < k; ++t)
            if (t != j) c.push_back(cols[t]);
        const long long sub = minor_det(a, r, c);
        d += (j % 2 == 0 ? 1 : -1) * a[rows[0]][cols[j]] * sub;
    }
    return d;
}

void subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

long long determinantal_divisor(const std::vector<std::vector<long long>>& a, int k)
{
    const int m = static_cast<int>(a.size());
    const int n = m ? static_cast<int>(a[0].size()) : 0;
    std::vector<std::vector<int>> rs, cs;
    std::vector<int> cur;
    subsets(m, k, 0, cur, rs);
    subsets(n, k, 0, cur, cs);
    long long g = 0;
    for (const auto& r : rs)
        for (const auto& c : cs) g = std::gcd(g, minor_det(a, r, c));
    return g;
}

IntMatrix to_matrix(const std::vector<std::vector<long long>>& a)
{
    IntMatrix M(a.size(), a.empty() ? 0 : a[0].size());
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) M(i, j) = a[i][j];
    return M;
}

std::vector<std::vector<long long>> random_entries(std::mt19937& rng, int m, int n, int range)
{
    std::uniform_int_distribution<int> dist(-range, range);
    std::vector<std::vector<long long>> a(m, std::vector<long long>(n));
    for (auto& row : a)
        for (auto& v : row) v = dist(rng);
    return a;
}

bool is_unimodular(const IntMatrix& M) { return abs_value(determinant(M)) == 1; }

} // namespace

TEST(Smith, TwoByTwoExample)
{
    const IntMatrix M{{2, 4}, {6, 8}};
    const SmithForm f = smith_normal_form(M);
    EXPECT_EQ(f.U * M * f.V, f.S);
    EXPECT_EQ(f.S, (IntMatrix{{2, 0}, {0, 4}}));
    EXPECT_EQ(abs_value(determinant(f.S)), abs_value(determinant(M)));
    EXPECT_EQ(abs_value(determinant(M)), 8);
    EXPECT_TRUE(is_unimodular(f.U));
    EXPECT_TRUE(is_unimodular(f.V));
}

TEST(Smith, IdentityAndZero)
{
    const IntMatrix I = IntMatrix::identity(3);
    EXPECT_EQ(smith_normal_form(I).S, I);
    const IntMatrix Z = IntMatrix::zero(3, 2);
    const SmithForm f = smith_normal_form(Z);
    EXPECT_EQ(f.S, Z);
    EXPECT_EQ(f.rank, 0u);
}

TEST(Smith, RandomMatricesAgainstDeterminantalDivisors)
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const int m = 1 + trial % 4;
        const int n = 1 + (trial / 4) % 4;
        const auto a = random_entries(rng, m, n, 6);
        const IntMatrix M = to_matrix(a);
        const SmithForm f = smith_normal_form(M);
        ASSERT_EQ(f.U * M * f.V, f.S);
        ASSERT_TRUE(is_unimodular(f.U));
        ASSERT_TRUE(is_unimodular(f.V));
        ASSERT_EQ(f.U * f.U_inv, IntMatrix::identity(m));
        ASSERT_EQ(f.V * f.V_inv, IntMatrix::identity(n));
        // d_1 ... d_k = D_k
        Integer prod = 1;
        for (int k = 1; k <= std::min(m, n); ++k) {
            const long long Dk = determinantal_divisor(a, k);
            if (static_cast<std::size_t>(k) <= f.rank) {
                prod *= f.S(k - 1, k - 1);
                EXPECT_EQ(prod, Dk) << M;
            } else {
                EXPECT_EQ(Dk, 0) << M;
            }
        }
        for (std::size_t i = 1; i < f.rank; ++i) EXPECT_EQ(f.S(i, i) % f.S(i - 1, i - 1), 0);
    }
}

TEST(Smith, LargeEntriesDoNotOverflow)
{
    IntMatrix M(2, 2);
    M(0, 0) = Integer("123456789012345678901234567890");
    M(0, 1) = Integer("987654321098765432109876543210");
    M(1, 0) = 3;
    M(1, 1) = 7;
    const SmithForm f = smith_normal_form(M);
    EXPECT_EQ(f.U * M * f.V, f.S);
    EXPECT_EQ(f.S(0, 0) * f.S(1, 1), abs_value(determinant(M)));
}

TEST(Solve, Examples)
{
    EXPECT_EQ(solve_integer_system(IntMatrix{{2}}, {4}), (IntVector{2}));
    EXPECT_FALSE(solve_integer_system(IntMatrix{{2}}, {3}).has_value());
}

TEST(Solve, UnimodularAgainstAdjugate)
{
    const IntMatrix A{{2, 3}, {1, 2}}; // det 1, inverse [[2,-3],[-1,2]]
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> dist(-20, 20);
    for (int t = 0; t < 20; ++t) {
        const long long b0 = dist(rng), b1 = dist(rng);
        const auto x = solve_integer_system(A, {b0, b1});
        ASSERT_TRUE(x.has_value());
        EXPECT_EQ((*x)[0], 2 * b0 - 3 * b1);
        EXPECT_EQ((*x)[1], -b0 + 2 * b1);
    }
}

TEST(Solve, RandomConsistentSystems)
{
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> dist(-4, 4);
    for (int t = 0; t < 30; ++t) {
        const IntMatrix A = to_matrix(random_entries(rng, 3, 4, 5));
        IntVector x0(4);
        for (auto& v : x0) v = dist(rng);
        const IntVector b = A.apply(x0);
        const auto x = solve_integer_system(A, b);
        ASSERT_TRUE(x.has_value());
        EXPECT_EQ(A.apply(*x), b);
    }
}

TEST(Groups, IsoEqual)
{
    EXPECT_TRUE(group_iso_equal(FgAbelianGroup(1), FgAbelianGroup(1)));
    EXPECT_FALSE(group_iso_equal(FgAbelianGroup(0, {2}), FgAbelianGroup(0, {4})));
    EXPECT_TRUE(group_iso_equal(FgAbelianGroup(2, {2, 6}), FgAbelianGroup(2, {2, 6})));
    EXPECT_THROW(FgAbelianGroup(0, {2, 3}), Error);
    EXPECT_EQ(FgAbelianGroup(1, {2}).to_string(), "Z + Z/2");
    EXPECT_EQ(FgAbelianGroup::cokernel(IntMatrix{{2, 0}, {0, 3}}), FgAbelianGroup(0, {6}));
}

TEST(Groups, GradedShift)
{
    GradedGroups g;
    g.set(0, FgAbelianGroup(1));
    g.set(1, FgAbelianGroup());
    EXPECT_EQ(g.nonzero().size(), 1u);
    EXPECT_EQ(g.shifted(2).at(2), FgAbelianGroup(1));
    EXPECT_TRUE(g.at(5).is_trivial());
}

TEST(Homology, MultiplicationByTwo)
{
    // chain degrees 1 -> 0
    const IntegerChainComplex X(Direction::chain, 0, {1, 1}, {IntMatrix{{2}}});
    EXPECT_EQ(homology(X, 0), FgAbelianGroup(0, {2}));
    EXPECT_TRUE(homology(X, 1).is_trivial());
    EXPECT_TRUE(homology(X, 7).is_trivial());
    EXPECT_TRUE(homology(X, -3).is_trivial());
}

TEST(Homology, TriangleCircle)
{
    // edges ab, ac, bc over vertices a, b, c
    const IntMatrix d1{{-1, -1, 0}, {1, 0, -1}, {0, 1, 1}};
    const IntegerChainComplex X(Direction::chain, 0, {3, 3}, {d1});
    EXPECT_EQ(homology(X, 0), FgAbelianGroup(1));
    EXPECT_EQ(homology(X, 1), FgAbelianGroup(1));
    EXPECT_EQ(X.euler_characteristic(), 0);
    const IntegerChainComplex Y = X.reindexed();
    EXPECT_EQ(Y.direction(), Direction::cochain);
    EXPECT_EQ(homology(Y, -1), FgAbelianGroup(1));
}

TEST(Homology, RejectsNonComplex)
{
    EXPECT_THROW(IntegerChainComplex(Direction::chain, 0, {1, 1, 1}, {IntMatrix{{1}}, IntMatrix{{1}}}), Error);
    EXPECT_THROW(IntegerChainComplex(Direction::chain, 0, {2, 1}, {IntMatrix{{1}}}), Error);
}

TEST(Homology, GeneratorCoordinates)
{
    // Z^2 -> Z^2 via diag(1, 4): H_0 = Z/4
    const IntegerChainComplex X(Direction::chain, 0, {2, 2}, {IntMatrix{{1, 0}, {0, 4}}});
    const HomologyBasis B(X, 0);
    EXPECT_EQ(B.group(), FgAbelianGroup(0, {4}));
    EXPECT_EQ(B.coordinates({0, 5}), (IntVector{1}));
    EXPECT_EQ(B.coordinates({7, 4}), (IntVector{0}));
}

TEST(InducedMap, IdentityAndScalar)
{
    const IntMatrix d1{{-1, -1, 0}, {1, 0, -1}, {0, 1, 1}};
    const IntegerChainComplex X(Direction::chain, 0, {3, 3}, {d1});
    const ChainMap id(X, X, {{0, IntMatrix::identity(3)}, {1, IntMatrix::identity(3)}});
    EXPECT_EQ(induced_map(id, 1), IntMatrix::identity(1));
    EXPECT_EQ(induced_map(id, 0), IntMatrix::identity(1));
    const ChainMap triple(X, X, {{0, IntMatrix::identity(3).scaled(3)}, {1, IntMatrix::identity(3).scaled(3)}});
    EXPECT_EQ(induced_map(triple, 1), (IntMatrix{{3}}));
    EXPECT_EQ(induced_map(compose(triple, triple), 1), (IntMatrix{{9}}));
}

TEST(InducedMap, RejectsNonCommutingSquares)
{
    const IntegerChainComplex X(Direction::chain, 0, {1, 1}, {IntMatrix{{1}}});
    EXPECT_THROW(ChainMap(X, X, {{0, IntMatrix{{1}}}, {1, IntMatrix{{2}}}}), Error);
}
