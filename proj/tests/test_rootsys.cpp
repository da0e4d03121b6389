#include <gtest/gtest.h>

#include "twyd/rootsys.hpp"

using namespace twyd;

namespace {

Bichar rank2(Root q11, Root qt, Root q22) { return {{{q11, qt}, {Root(), q22}}}; }

// Cartan type: q_ii = q^{d_i}, q_ij q_ji = q^{d_i a_ij}
Bichar cartan_type(Root q, const std::vector<int>& d, const std::vector<std::vector<int>>& A) {
    size_t n = d.size();
    Bichar b{std::vector<std::vector<Root>>(n, std::vector<Root>(n))};
    for (size_t i = 0; i < n; ++i) {
        b.q[i][i] = q.pow(d[i]);
        for (size_t j = i + 1; j < n; ++j) b.q[i][j] = q.pow(d[i] * A[i][j]);
    }
    return b;
}

DynkinDiagram graph(size_t n, const std::vector<std::pair<size_t, size_t>>& es) {
    DynkinDiagram D;
    D.vertex.assign(n, Root::minus_one());
    for (auto [a, b] : es) D.edges[{std::min(a, b), std::max(a, b)}] = Root::minus_one();
    return D;
}

CocyclePtr phi_c(const FAGroup& G, int64_t c) {
    CSeq s = CSeq::zero(3);
    s.c3[0] = c;
    return std::make_shared<const Cocycle3>(Cocycle3::normal_form(G, s));
}

const Root z3(1, 3), z4(1, 4), z5(1, 5);

}  // namespace

TEST(Cartan, Entries) {
    EXPECT_EQ(cartan_entry(rank2(z3, z3.inv(), z3), 0, 1), -1);
    EXPECT_EQ(cartan_entry(rank2(z5, Root(), z5), 0, 1), 0);
    EXPECT_EQ(cartan_entry(rank2(Root(), z3, z3), 0, 1), std::nullopt);
    // zeta3^2 * zeta3 = 1
    EXPECT_EQ(cartan_entry(rank2(Root(), z3, z3), 1, 0), -2);
    EXPECT_EQ(cartan_entry(rank2(z3, z3, z3), 0, 0), 2);
    // q_ii = -1 with q~ != -1: (2)_{-1} = 0 gives m = 1
    EXPECT_EQ(cartan_entry(rank2(Root::minus_one(), z5, z5), 0, 1), -1);
    // q_ii = zeta5, q~ = zeta5^2: no m < 4 solves q^m q~ = 1 except m = 3; (m+1)_q vanishes at m = 4
    EXPECT_EQ(cartan_entry(rank2(z5, z5.pow(2), z5), 0, 1), -3);
}

TEST(Dynkin, SmallDiagrams) {
    auto D = dynkin_from(Bichar{{{Root()}}});
    EXPECT_EQ(D.vertex, std::vector<Root>{Root()});
    EXPECT_TRUE(D.edges.empty());
    auto A2 = dynkin_from(rank2(z3, z3.inv(), z3));
    EXPECT_EQ(A2.vertex, (std::vector<Root>{z3, z3}));
    ASSERT_EQ(A2.edges.size(), 1u);
    EXPECT_EQ(A2.edges.begin()->second, z3.inv());
    // splitting q_ij and q_ji differently gives the same diagram
    Bichar b = rank2(z3, z3.inv(), z3);
    b.q[0][1] = Root(1, 6);
    b.q[1][0] = Root(1, 6).inv() * z3.inv();
    EXPECT_EQ(dynkin_from(b), A2);
}

TEST(Dynkin, FourCycleOfTwoRankThreeSimples) {
    // Z4^3 with Phi = zeta4^{2 x1 y2 z3}: two-dimensional simples, beta1 beta2 = i
    FAGroup G({4, 4, 4});
    auto phi = phi_c(G, 2);
    auto c1 = rank3_constraints(G, *phi, canonical_triple(G), 1);
    auto c2 = rank3_constraints(G, *phi, canonical_triple(G), 2);
    ASSERT_EQ(c1.n, 2);
    Root a1 = Root::minus_one(), a2 = Root::minus_one();
    ASSERT_EQ(a1.pow(c1.mi), c1.alpha_rhs);
    Root b2 = c2.beta_rhs.roots(c2.mj)[0], b1;
    for (const auto& r : c1.beta_rhs.roots(c1.mj))
        if ((r * b2).order() == 4) b1 = r;
    ASSERT_EQ((b1 * b2).order(), 4);
    auto V1 = make_simple_rank3(G, phi, 1, a1, b1, c1.gamma_rhs.roots(c1.mk / c1.n)[0]);
    auto V2 = make_simple_rank3(G, phi, 2, a2, b2, c2.gamma_rhs.roots(c2.mk / c2.n)[0]);
    auto D = is_diagonal(direct_sum({V1, V2}));
    ASSERT_TRUE(D.has_value());
    auto dd = dynkin_from(bichar_of(*D));
    EXPECT_EQ(dd.vertex, std::vector<Root>(4, Root::minus_one()));
    EXPECT_EQ(dd.edges.size(), 4u);
    std::multiset<Root> labels;
    for (const auto& [e, r] : dd.edges) {
        labels.insert(r);
        EXPECT_NE(D->comp_of[e.first], D->comp_of[e.second]);
    }
    // labels come in pairs t, -t with t != +-1
    for (const auto& r : labels) {
        EXPECT_TRUE(labels.count(r * Root::minus_one()));
        EXPECT_NE(r.order(), 1);
        EXPECT_NE(r.order(), 2);
    }
    EXPECT_TRUE(has_long_cycle(dd));
    auto v = is_finite_type(bichar_of(*D));
    EXPECT_FALSE(v.finite());
}

TEST(Dynkin, Isomorphism) {
    auto P = graph(4, {{0, 3}, {1, 2}}), Q = graph(4, {{0, 2}, {1, 3}}), R = graph(4, {{0, 1}, {1, 2}});
    EXPECT_TRUE(isomorphic(P, Q));
    EXPECT_FALSE(isomorphic(P, R));
    auto L = P;
    L.edges[{0, 3}] = z4;
    EXPECT_FALSE(isomorphic(L, Q));
    L.vertex[0] = z4;
    EXPECT_FALSE(isomorphic(P, L));
}

TEST(Dynkin, LongCycles) {
    EXPECT_TRUE(has_long_cycle(graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}})));
    EXPECT_FALSE(has_long_cycle(graph(4, {{0, 1}, {1, 2}, {2, 3}})));
    EXPECT_FALSE(has_long_cycle(graph(3, {{0, 1}, {1, 2}, {2, 0}})));
    EXPECT_TRUE(has_long_cycle(graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}})));
    EXPECT_TRUE(has_long_cycle(graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})));
    // two triangles sharing an edge contain a 4-cycle
    EXPECT_TRUE(has_long_cycle(graph(4, {{0, 1}, {1, 2}, {2, 0}, {1, 3}, {3, 2}})));
    EXPECT_FALSE(has_long_cycle(graph(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}})));
}

TEST(Reflect, CartanTypeAndInvolution) {
    auto b = rank2(z3, z3.inv(), z3);
    for (size_t i : {0, 1}) {
        EXPECT_EQ(dynkin_from(reflect(b, i)), dynkin_from(b));
        EXPECT_EQ(dynkin_from(reflect(reflect(b, i), i)), dynkin_from(b));
    }
    auto c = rank2(Root::minus_one(), z5, z5.pow(2));
    for (size_t i : {0, 1}) EXPECT_EQ(dynkin_from(reflect(reflect(c, i), i)), dynkin_from(c));
    auto d = rank2(z5, Root(), z3);
    EXPECT_EQ(reflect(d, 0), d);
    EXPECT_THROW(reflect(rank2(Root(), z3, z3), 0), UndefinedReflection);
}

TEST(FiniteType, RankTwoTable) {
    auto a2 = is_finite_type(rank2(z3, z3.inv(), z3));
    ASSERT_TRUE(a2.finite());
    EXPECT_EQ(a2.positive_roots.size(), 3u);
    auto sup = is_finite_type(rank2(Root::minus_one(), Root::minus_one(), Root::minus_one()));
    ASSERT_TRUE(sup.finite());
    EXPECT_EQ(sup.positive_roots, (std::vector<std::vector<int>>{{0, 1}, {1, 0}, {1, 1}}));
    EXPECT_EQ(is_finite_type(rank2(z4, Root::minus_one(), z4)).status, RootSystemVerdict::Status::Infinite);
    EXPECT_EQ(is_finite_type(rank2(z5, z5.pow(2), z5)).status, RootSystemVerdict::Status::Infinite);
    auto one = is_finite_type(Bichar{{{Root()}}});
    ASSERT_TRUE(one.finite());
    EXPECT_EQ(one.positive_roots, (std::vector<std::vector<int>>{{1}}));
    auto und = is_finite_type(rank2(Root(), z3, z3));
    EXPECT_EQ(und.status, RootSystemVerdict::Status::Infinite);
    EXPECT_TRUE(und.undefined_entry.has_value());
}

TEST(FiniteType, SuperTypeA) {
    // standard super type A(1|0): a vertex -1 joined by q^{-1} to q, and its reflection (-1, q, -1)
    for (Root q : {z5, Root(2, 7), Root(1, 12)}) {
        auto a = is_finite_type(rank2(q, q.inv(), Root::minus_one()));
        ASSERT_TRUE(a.finite());
        EXPECT_EQ(a.positive_roots.size(), 3u);
        auto b = is_finite_type(rank2(Root::minus_one(), q, Root::minus_one()));
        ASSERT_TRUE(b.finite());
        EXPECT_EQ(b.positive_roots.size(), 3u);
    }
}

TEST(FiniteType, ClassicalRootCounts) {
    Root q(1, 25);
    std::vector<std::vector<int>> A2{{2, -1}, {-1, 2}}, B2{{2, -1}, {-2, 2}}, G2{{2, -1}, {-3, 2}};
    EXPECT_EQ(is_finite_type(cartan_type(q, {1, 1}, A2)).positive_roots.size(), 3u);
    EXPECT_EQ(is_finite_type(cartan_type(q, {2, 1}, B2)).positive_roots.size(), 4u);
    EXPECT_EQ(is_finite_type(cartan_type(q, {3, 1}, G2)).positive_roots.size(), 6u);
    std::vector<std::vector<int>> A3{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
    EXPECT_EQ(is_finite_type(cartan_type(q, {1, 1, 1}, A3)).positive_roots.size(), 6u);
    std::vector<std::vector<int>> D4{{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}};
    EXPECT_EQ(is_finite_type(cartan_type(q, {1, 1, 1, 1}, D4)).positive_roots.size(), 12u);
    // affine A1 and a Cartan triangle are not of finite type
    std::vector<std::vector<int>> Aff{{2, -2}, {-2, 2}};
    EXPECT_EQ(is_finite_type(cartan_type(q, {1, 1}, Aff)).status, RootSystemVerdict::Status::Infinite);
    std::vector<std::vector<int>> Tri{{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}};
    EXPECT_EQ(is_finite_type(cartan_type(q, {1, 1, 1}, Tri)).status, RootSystemVerdict::Status::Infinite);
    // the same triangle at q = zeta3, and affine A3 as a square
    EXPECT_EQ(is_finite_type(cartan_type(z3, {1, 1, 1}, Tri)).status, RootSystemVerdict::Status::Infinite);
    std::vector<std::vector<int>> Sq{{2, -1, 0, -1}, {-1, 2, -1, 0}, {0, -1, 2, -1}, {-1, 0, -1, 2}};
    EXPECT_EQ(is_finite_type(cartan_type(q, {1, 1, 1, 1}, Sq)).status, RootSystemVerdict::Status::Infinite);
}

TEST(FiniteType, CapIsReported) {
    Root q(1, 25);
    std::vector<std::vector<int>> A3{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
    auto v = is_finite_type(cartan_type(q, {1, 1, 1}, A3), 4);
    EXPECT_EQ(v.status, RootSystemVerdict::Status::ExceededCap);
}

TEST(FiniteType, DependsOnlyOnTheDiagram) {
    std::vector<Bichar> cases{rank2(z3, z3.inv(), z3), rank2(z4, Root::minus_one(), z4),
                              rank2(Root::minus_one(), Root::minus_one(), Root::minus_one()), rank2(z5, z5.pow(2), z5)};
    for (const auto& b : cases)
        for (int64_t k = 1; k < 12; ++k) {
            Root t(k, 12);
            Bichar c = b;
            c.q[0][1] = b.q[0][1] * t;
            c.q[1][0] = b.q[1][0] * t.inv();
            auto u = is_finite_type(b), w = is_finite_type(c);
            EXPECT_EQ(u.status, w.status);
            EXPECT_EQ(u.positive_roots, w.positive_roots);
        }
}

TEST(FiniteType, RootSetProperties) {
    Root q(1, 25);
    std::vector<std::vector<int>> B3{{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}};
    auto b = cartan_type(q, {2, 2, 1}, B3);
    auto v = is_finite_type(b);
    ASSERT_TRUE(v.finite());
    EXPECT_EQ(v.positive_roots.size(), 9u);
    std::set<std::vector<int>> pos(v.positive_roots.begin(), v.positive_roots.end());
    for (size_t i = 0; i < 3; ++i) {
        std::vector<int> e(3, 0);
        e[i] = 1;
        EXPECT_TRUE(pos.count(e));
        // Cartan type: every object equals the base, so s_i permutes the positive roots other than e_i
        auto a = cartan_row(b, i);
        for (const auto& r : pos) {
            if (r == e) continue;
            auto s = r;
            for (size_t j = 0; j < 3; ++j) s[i] -= a[j] * r[j];
            EXPECT_TRUE(pos.count(s));
        }
    }
}

TEST(Twist, DiagramIsTwistInvariant) {
    FAGroup G({3, 3});
    auto phi = std::make_shared<const Cocycle3>(Cocycle3::trivial(G));
    auto V = direct_sum({make_character_simple(G, phi, G.gen(0), std::vector<Root>{z3, Root()}),
                         make_character_simple(G, phi, G.gen(1), std::vector<Root>{z3 * z3, z3})});
    Cochain2 J = Cochain2::from_function(G, 9, [&](const GroupElement& x, const GroupElement& y) {
        if (x == G.identity() || y == G.identity()) return int64_t{0};
        return (x.exps[0] * y.exps[1] + 4 * x.exps[1] * y.exps[1] * y.exps[0] + 2 * x.exps[0]) % 9;
    });
    auto T = twist(V, J);
    auto d1 = is_diagonal(V), d2 = is_diagonal(T);
    ASSERT_TRUE(d1 && d2);
    EXPECT_EQ(dynkin_from(bichar_of(*d1)), dynkin_from(bichar_of(*d2)));
    EXPECT_EQ(is_finite_type(bichar_of(*d2)).positive_roots.size(), 3u);
}
