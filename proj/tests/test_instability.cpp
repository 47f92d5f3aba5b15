#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hnstrat/instability.hpp"
#include "hnstrat/rng.hpp"

using namespace hnstrat;

namespace {

IntVec iv(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

WeightContext ctx_id(std::size_t dim, IntVec rho) {
    return WeightContext{dim, IntVec(dim, Int(1)), std::move(rho)};
}

WeightSet ws(std::vector<IntVec> w) { return WeightSet::make(std::move(w)); }

const WeightSet kCross2 = ws({iv({1, 0}), iv({-1, 0}), iv({0, 1}), iv({0, -1})});

}  // namespace

TEST_CASE("cone_from_weight_set") {
    const auto all = cone_from_weight_set(ws({}), 2);
    CHECK(all.normals.empty());
    CHECK(all.contains(iv({-5, 7})));

    const auto half = cone_from_weight_set(ws({iv({1, 0})}), 2);
    CHECK(half.contains(iv({3, -9})));
    CHECK(!half.contains(iv({-1, 0})));

    const auto origin = cone_from_weight_set(kCross2, 2);
    CHECK(origin.contains(iv({0, 0})));
    CHECK(!origin.contains(iv({1, 0})));
    CHECK(!origin.contains(iv({0, -1})));
}

TEST_CASE("is_weight_set_semistable") {
    const auto ctx = ctx_id(2, iv({1, 1}));
    CHECK(!is_weight_set_semistable(ws({}), ctx));            // empty set always unstable
    CHECK(!is_weight_set_semistable(ws({iv({1, 0})}), ctx));  // (0,-1) destabilises
    CHECK(is_weight_set_semistable(kCross2, ctx));            // cone {0}
    // trivial character: semistable vacuously
    CHECK(is_weight_set_semistable(ws({}), ctx_id(2, iv({0, 0}))));
}

TEST_CASE("adapted_one_ps on the named cases") {
    {
        const auto a = adapted_one_ps(ws({}), ctx_id(2, iv({1, 1})));
        CHECK(a.lambda == iv({-1, -1}));
        CHECK(a.value.pairing == Rat(-2));
        CHECK(a.value.norm_sq == Rat(2));
    }
    {
        const auto a = adapted_one_ps(ws({iv({1, 0})}), ctx_id(2, iv({1, 1})));
        CHECK(a.lambda == iv({0, -1}));
        CHECK(a.value.pairing == Rat(-1));
        CHECK(a.value.norm_sq == Rat(1));
    }
    {
        const auto a = adapted_one_ps(ws({iv({1, 1})}), ctx_id(2, iv({0, 1})));
        CHECK(a.lambda == iv({1, -1}));
        CHECK(a.value.pairing == Rat(-1));
        CHECK(a.value.norm_sq == Rat(2));
    }
    CHECK_THROWS_WITH_AS(adapted_one_ps(kCross2, ctx_id(2, iv({1, 1}))), "no adapted 1-PS",
                         std::domain_error);
}

TEST_CASE("stratify_weight_sets labels points and is deterministic") {
    const auto ctx = ctx_id(2, iv({1, 1}));
    const auto labels =
        stratify_weight_sets({ws({}), kCross2, ws({iv({1, 0})}), ws({iv({1, 0})})}, ctx);
    REQUIRE(labels.size() == 4);
    CHECK(labels[0].lambda == iv({-1, -1}));
    CHECK(labels[1].semistable);
    CHECK(labels[2].lambda == iv({0, -1}));
    CHECK(labels[3].lambda == labels[2].lambda);
}

TEST_CASE("dominant_representative sorts within blocks") {
    CHECK(dominant_representative(iv({-1, 0}), {2}) == iv({0, -1}));
    CHECK(dominant_representative(iv({1, -1, 2}), {2, 1}) == iv({1, -1, 2}));
    CHECK(dominant_representative(iv({0, 0, -1, -1}), {4}) == iv({0, 0, -1, -1}));
    CHECK_THROWS_AS(dominant_representative(iv({1, 2}), {3}), std::invalid_argument);
}

TEST_CASE("twist_character") {
    const auto ctx = ctx_id(2, iv({1, 1}));
    CHECK(twist_character(ctx, iv({0, -1})) == iv({1, 0}));
    CHECK(twist_character(ctx, iv({1, -1})) == iv({2, 2}));
    CHECK(twist_character(ctx_id(2, iv({1, 0})), iv({1, 0})) == iv({0, 0}));
    CHECK_THROWS_AS(twist_character(ctx, iv({0, 0})), std::domain_error);
}

TEST_CASE("twist_character with a non-trivial metric uses the metric dual") {
    WeightContext ctx{2, iv({2, 3}), iv({1, 1})};
    // ||(1,-1)||^2 = 5, (rho,lambda) = 0, lambda* = (2,-3)
    CHECK(twist_character(ctx, iv({1, -1})) == iv({5, 5}));
    // lambda = (1,0): ||.||^2 = 2, pairing 1, lambda* = (2,0)
    CHECK(twist_character(ctx, iv({1, 0})) == iv({0, 2}));
}

TEST_CASE("grassmann_stratum on the named cases") {
    Mat m(2, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    auto s = grassmann_stratum(m);
    CHECK(s.k == 1);
    CHECK(!s.semistable);
    CHECK(s.lambda == iv({0, -1}));

    Mat full(2, 2);
    full.at(0, 0) = 1;
    full.at(0, 1) = 2;
    full.at(1, 0) = 3;
    full.at(1, 1) = 7;
    auto sf = grassmann_stratum(full);
    CHECK(sf.k == 2);
    CHECK(sf.semistable);

    Mat zero(2, 3);
    auto sz = grassmann_stratum(zero);
    CHECK(sz.k == 0);
    CHECK(sz.lambda == iv({-1, -1}));

    Mat tall(3, 2);
    CHECK_THROWS_AS(grassmann_stratum(tall), std::invalid_argument);
}

TEST_CASE("grassmannian labels equal rank labels on random matrices") {
    Rng rng(29);
    for (int iter = 0; iter < 150; ++iter) {
        const std::size_t r = 1 + rng.below(3);
        const std::size_t n = r + rng.below(4 - r + 1);
        Mat m(r, n);
        for (auto& x : m.a) x = make_rat(rng.range(-2, 2));
        const std::size_t k = rank(m);
        const auto s = grassmann_stratum(m);
        CHECK(s.k == k);
        if (k == r) {
            CHECK(s.semistable);
        } else {
            IntVec expected(r, Int(0));
            for (std::size_t i = k; i < r; ++i) expected[i] = -1;
            CHECK(s.lambda == expected);
        }
    }
}

TEST_CASE("adapted 1-PS is invariant under scaling the weights") {
    Rng rng(31);
    for (int iter = 0; iter < 40; ++iter) {
        const std::size_t dim = 2 + rng.below(3);
        WeightContext ctx{dim, IntVec(dim, Int(1)), IntVec(dim)};
        for (auto& x : ctx.rho) x = rng.range(-3, 3);
        std::vector<IntVec> weights(1 + rng.below(4), IntVec(dim));
        for (auto& w : weights)
            for (auto& x : w) x = rng.range(-3, 3);
        const auto w1 = WeightSet::make(weights);
        std::vector<IntVec> scaled = weights;
        const long c = rng.range(2, 5);
        for (auto& w : scaled)
            for (auto& x : w) x *= c;
        const auto w2 = WeightSet::make(scaled);
        if (is_weight_set_semistable(w1, ctx)) {
            CHECK(is_weight_set_semistable(w2, ctx));
        } else {
            CHECK(adapted_one_ps(w1, ctx).lambda == adapted_one_ps(w2, ctx).lambda);
        }
    }
}

TEST_CASE("adapted value undercuts random cone samples") {
    Rng rng(37);
    int tested = 0;
    for (int iter = 0; iter < 60 && tested < 25; ++iter) {
        const std::size_t dim = 2 + rng.below(3);
        WeightContext ctx{dim, IntVec(dim), IntVec(dim)};
        for (auto& x : ctx.metric) x = rng.range(1, 3);
        for (auto& x : ctx.rho) x = rng.range(-4, 4);
        std::vector<IntVec> weights(rng.below(5), IntVec(dim));
        for (auto& w : weights)
            for (auto& x : w) x = rng.range(-4, 4);
        const auto w = WeightSet::make(weights);
        if (is_weight_set_semistable(w, ctx)) continue;
        ++tested;
        const auto a = adapted_one_ps(w, ctx);
        const auto cone = cone_from_weight_set(w, dim);
        int found = 0;
        for (int s = 0; s < 4000 && found < 400; ++s) {
            IntVec cand(dim);
            bool nonzero = false;
            for (auto& x : cand) {
                x = rng.range(-20, 20);
                if (sign(x) != 0) nonzero = true;
            }
            if (!nonzero || !cone.contains(cand)) continue;
            ++found;
            NormValue v{dot(ctx.rho, cand), ctx.norm_sq(cand)};
            CHECK(compare_norm_values(a.value, v) <= 0);
        }
    }
    CHECK(tested >= 10);
}

TEST_CASE("index order via compare_norm_values is antisymmetric and transitive") {
    // Grassmannian indices lambda_k for r = 4: values (-(r-k), r-k)
    std::vector<NormValue> vals;
    for (long k = 0; k < 4; ++k) vals.push_back({Rat(-(4 - k)), Rat(4 - k)});
    for (const auto& a : vals)
        for (const auto& b : vals) {
            CHECK(compare_norm_values(a, b) == -compare_norm_values(b, a));
            for (const auto& c : vals)
                if (compare_norm_values(a, b) <= 0 && compare_norm_values(b, c) <= 0)
                    CHECK(compare_norm_values(a, c) <= 0);
        }
    // smaller rank is more unstable: lambda_0 < lambda_1 < ... in the order
    for (std::size_t i = 0; i + 1 < vals.size(); ++i)
        CHECK(compare_norm_values(vals[i], vals[i + 1]) < 0);
}
