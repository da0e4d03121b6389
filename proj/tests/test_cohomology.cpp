#include <gtest/gtest.h>

#include <random>

#include "twyd/cohomology.hpp"

using namespace twyd;

namespace {

Cocycle3 random_abelian(const FAGroup& G, std::mt19937& rng) {
    auto b = CSeq::bounds(G);
    std::vector<int64_t> f(b.size(), 0);
    size_t n = G.rank(), abel = n + n * (n - 1) / 2;
    for (size_t i = 0; i < abel; ++i) f[i] = static_cast<int64_t>(rng() % b[i]);
    return Cocycle3::normal_form(G, CSeq::from_flat(n, f));
}

// Exhaustive search for a normalized J with values in mu_M and dJ = phi.
bool brute_coboundary(const Cocycle3& phi, int64_t M) {
    const FAGroup& G = phi.base();
    auto el = G.elements();
    std::vector<std::pair<size_t, size_t>> free;
    for (size_t a = 1; a < el.size(); ++a)
        for (size_t b = 1; b < el.size(); ++b) free.push_back({a, b});
    std::vector<int64_t> v(free.size(), 0);
    for (;;) {
        Cochain2 J(G, M);
        for (size_t i = 0; i < free.size(); ++i) J.set_exponent(el[free[i].first], el[free[i].second], v[i]);
        bool ok = true;
        for (const auto& x : el)
            for (const auto& y : el)
                for (const auto& z : el)
                    if (ok && Cocycle3::coboundary_value(J, x, y, z) != phi.eval(x, y, z)) ok = false;
        if (ok) return true;
        size_t i = 0;
        while (i < v.size() && ++v[i] == M) v[i++] = 0;
        if (i == v.size()) return false;
    }
}

}  // namespace

TEST(CSeq, LengthAndBounds) {
    EXPECT_EQ(CSeq::length(3), 7u);
    FAGroup G({2, 4, 6});
    EXPECT_EQ(CSeq::bounds(G), (std::vector<int64_t>{2, 4, 6, 2, 2, 2, 2}));
    EXPECT_EQ(CSeq::all(FAGroup({2, 2, 2})).size(), 128u);
    EXPECT_THROW(Cocycle3::normal_form(G, CSeq::from_flat(3, {2, 0, 0, 0, 0, 0, 0})), std::invalid_argument);
    EXPECT_THROW(CSeq::from_flat(3, {0, 0}), std::invalid_argument);
}

TEST(Cocycle3, CocycleIdentityAllZ2Cubed) {
    FAGroup G({2, 2, 2});
    for (const auto& c : CSeq::all(G)) EXPECT_TRUE(satisfies_cocycle_identity(Cocycle3::normal_form(G, c)));
}

TEST(Cocycle3, CocycleIdentityMixedGroups) {
    for (auto f : {std::vector<int64_t>{2, 4}, {3, 3}, {4}, {6}, {2, 2, 4}}) {
        FAGroup G(f);
        auto all = CSeq::all(G);
        size_t stride = G.order() > 9 ? 37 : 1;
        for (size_t i = 0; i < all.size(); i += stride)
            EXPECT_TRUE(satisfies_cocycle_identity(Cocycle3::normal_form(G, all[i])));
    }
}

TEST(Cocycle3, NonabelianValue) {
    FAGroup G({2, 2, 2});
    auto phi = Cocycle3::normal_form(G, CSeq::from_flat(3, {0, 0, 0, 0, 0, 0, 1}));
    EXPECT_FALSE(is_abelian(phi));
    EXPECT_EQ(phi.eval(G.gen(0), G.gen(1), G.gen(2)), Root::minus_one());
    EXPECT_EQ(phi.eval(G.gen(1), G.gen(0), G.gen(2)), Root::one());
    // the Phi_g ratio at (g1; g2, g3)
    EXPECT_EQ(phi_ratio(phi, G.gen(0), G.gen(1), G.gen(2)), Root::minus_one());
    EXPECT_FALSE(is_abelian_on(phi, {G.gen(0), G.gen(1), G.gen(2)}));
    EXPECT_TRUE(is_abelian_on(phi, {G.gen(0), G.gen(1)}));
}

TEST(Cocycle3, PullbackAndProductEvaluate) {
    FAGroup Z2({2}), Z4({4});
    auto phi = Cocycle3::normal_form(Z2, CSeq::from_flat(1, {1}));
    GroupHom pi(Z4, Z2, {Z2.gen(0)});
    auto pb = pullback(phi, pi);
    EXPECT_EQ(pb.eval(Z4.element({1}), Z4.element({1}), Z4.element({1})), Root::minus_one());
    EXPECT_TRUE(satisfies_cocycle_identity(pb));
    EXPECT_THROW(pb.cseq(), NotNormalForm);
}

TEST(Resolve, Z2IntoZ4) {
    FAGroup Z2({2});
    auto phi = Cocycle3::normal_form(Z2, CSeq::from_flat(1, {1}));
    HatGroup h = hat_of(Z2);
    auto J = resolve_coboundary(phi, h.hat, h.pi);
    ASSERT_TRUE(J.has_value());
    EXPECT_TRUE(J->is_normalized());
    // on Z2 itself the class is nontrivial
    EXPECT_FALSE(resolve_coboundary(phi, Z2, GroupHom::identity(Z2)).has_value());
    EXPECT_FALSE(brute_coboundary(phi, 4));
}

TEST(Resolve, AgreesWithBruteForceOnZ3) {
    FAGroup Z3({3});
    for (int64_t c = 0; c < 3; ++c) {
        auto phi = Cocycle3::normal_form(Z3, CSeq::from_flat(1, {c}));
        bool fast = resolve_coboundary(phi, Z3, GroupHom::identity(Z3)).has_value();
        EXPECT_EQ(fast, brute_coboundary(phi, 9)) << c;
        EXPECT_EQ(fast, c == 0);
    }
}

TEST(Resolve, AbelianCocyclesTrivialiseOnHat) {
    std::mt19937 rng(1);
    for (auto f : {std::vector<int64_t>{2, 2}, {3, 3}, {2, 4}, {6}, {2, 2, 2}}) {
        FAGroup G(f);
        HatGroup h = hat_of(G);
        for (int it = 0; it < 4; ++it) {
            auto phi = random_abelian(G, rng);
            auto J = resolve_coboundary(phi, h.hat, h.pi);
            ASSERT_TRUE(J.has_value()) << G.str();
            auto pb = pullback(phi, h.pi);
            auto twisted = Cocycle3::product(pb, *J, -1);
            for (const auto& x : h.hat.elements())
                for (const auto& y : h.hat.elements()) EXPECT_TRUE(twisted.eval(x, y, h.hat.gen(0)).is_one());
        }
    }
}

TEST(Resolve, NonabelianNeverTrivialisesOnHat) {
    FAGroup G({2, 2, 2});
    auto phi = Cocycle3::normal_form(G, CSeq::from_flat(3, {0, 0, 0, 0, 0, 0, 1}));
    HatGroup h = hat_of(G);
    EXPECT_FALSE(resolve_coboundary(phi, h.hat, h.pi).has_value());
}

TEST(Resolve, SizeGuard) {
    FAGroup G({3, 3, 3});
    auto phi = Cocycle3::trivial(G);
    HatGroup h = hat_of(G);
    EXPECT_THROW(resolve_coboundary(phi, h.hat, h.pi), std::length_error);
}

TEST(Coboundary, IsCocycle) {
    std::mt19937 rng(2);
    FAGroup G({2, 3});
    Cochain2 J = Cochain2::from_function(G, 6, [&](const GroupElement& a, const GroupElement& b) {
        return (a == G.identity() || b == G.identity()) ? 0 : static_cast<int64_t>(rng() % 6);
    });
    EXPECT_TRUE(satisfies_cocycle_identity(coboundary(J)));
}

TEST(PhiG, TwoCocycleOnAbelian) {
    FAGroup G({2, 4});
    for (const auto& c : CSeq::all(G)) {
        auto phi = Cocycle3::normal_form(G, c);
        for (const auto& g : G.elements()) EXPECT_TRUE(is_two_cocycle(phi_g(phi, g)));
    }
}
