#include <catch2/catch_amalgamated.hpp>

#include <orbitcat/orbitcat.hpp>

#include "oracle_preprojective.hpp"
#include "test_util.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <thread>

using namespace orbitcat;
using testutil::d_quiver;
using testutil::linear_quiver;

namespace {

// Object <-> quiver vertex bijection for tau-gluings: every canonical object
// is a projective at shift zero, so sort order matches vertex order.
std::vector<std::vector<std::int64_t>> totals_of(OrbitCategory& oc) {
    const auto& obj = oc.objects();
    std::vector<std::vector<std::int64_t>> t(obj.size(),
                                             std::vector<std::int64_t>(obj.size(), 0));
    for (std::size_t i = 0; i < obj.size(); ++i)
        for (std::size_t j = 0; j < obj.size(); ++j) t[i][j] = oc.hom(obj[i], obj[j]).total;
    return t;
}

bool matches_up_to_transpose(const std::vector<std::vector<std::int64_t>>& a,
                             const std::vector<std::vector<std::int64_t>>& b) {
    const std::size_t n = a.size();
    bool direct = true, flipped = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            direct = direct && a[i][j] == b[i][j];
            flipped = flipped && a[i][j] == b[j][i];
        }
    return direct || flipped;
}

} // namespace

TEST_CASE("gluing words that act trivially are rejected outright") {
    DerivedCategory dc(linear_quiver(2));
    CHECK_THROWS_AS(OrbitCategory(dc, FunctorWord{0, 0}), hypothesis_failed);
    CHECK_THROWS_AS(OrbitCategory(dc, FunctorWord{3000000, 1}), validation_error);
}

TEST_CASE("zero drift fails both finiteness conditions with a witness") {
    DerivedCategory dc(linear_quiver(5)); // h = 6
    OrbitCategory oc(dc, FunctorWord{3, 1});
    CHECK(oc.shift_drift() == 0);
    const OrbitConditions& c = oc.conditions();
    CHECK_FALSE(c.ok);
    CHECK_FALSE(c.finite_heart_hits);
    CHECK_FALSE(c.shifts_bounded);
    CHECK(c.objectwise_periodic);
    CHECK_FALSE(c.witness.empty());
    CHECK_THROWS_AS(oc.objects(), hypothesis_failed);
    CHECK_THROWS_AS(oc.canonical_rep({1, 0, 0, 0, 0}, 0), hypothesis_failed);
}

TEST_CASE("admissible words report positive evidence") {
    DerivedCategory dc(linear_quiver(2));
    OrbitCategory oc(dc, FunctorWord{-1, 1});
    const OrbitConditions& c = oc.conditions();
    CHECK(c.ok);
    CHECK(c.finite_heart_hits);
    CHECK(c.shifts_bounded);
    CHECK_FALSE(c.objectwise_periodic);
    CHECK(c.witness.empty());
    CHECK_FALSE(c.evidence.empty());
    CHECK(c.shift_bound == 1);
}

TEST_CASE("cluster gluing of A2: objects, translation, pentagon") {
    DerivedCategory dc(linear_quiver(2));
    OrbitCategory oc(dc, FunctorWord{-1, 1});
    CHECK(oc.shift_drift() == 5);

    const auto& obj = oc.objects();
    REQUIRE(obj.size() == 5);
    auto expect = [&](std::size_t k, const DimVector& d, int shift, ZQVertex coord) {
        INFO("object " << k);
        CHECK(obj[k].dimv == d);
        CHECK(obj[k].shift == shift);
        CHECK(obj[k].coord == coord);
    };
    expect(0, {1, 1}, 0, {0, 1});
    expect(1, {0, 1}, 0, {0, 2});
    expect(2, {1, 0}, 0, {1, 2});
    expect(3, {0, 1}, 1, {1, 1});
    expect(4, {1, 1}, 1, {2, 2});

    // every derived object canonicalizes onto one of the five
    for (const DimVector& root : dc.cartan().positive_roots())
        for (int s = -4; s <= 4; ++s) {
            OrbitObjectRep r = oc.canonical_rep(root, s);
            CHECK(oc.object_index(r.coord).has_value());
            // and the canonical representative is idempotent
            CHECK(oc.canonical_rep(r.dimv, r.shift) == r);
        }

    // canonicalization is invariant along the gluing orbit
    for (const OrbitObjectRep& x : obj) {
        OrbitCategory::Stalk s{x.dimv, x.shift};
        for (int k = -3; k <= 3; ++k) {
            OrbitCategory::Stalk moved = oc.functor_stalk(s, k);
            CHECK(oc.canonical_rep(moved.first, moved.second) == x);
        }
    }

    ArQuiverData ar = oc.ar_quiver();
    REQUIRE(ar.vertices.size() == 5);
    CHECK(ar.tau_of == std::vector<std::size_t>{4, 3, 1, 0, 2});
    std::vector<std::pair<std::size_t, std::size_t>> pentagon{
        {0, 2}, {1, 0}, {2, 3}, {3, 4}, {4, 1}};
    CHECK(ar.edges == pentagon);

    // the translation permutation is a single 5-cycle
    std::set<std::size_t> seen;
    std::size_t at = 0;
    for (int step = 0; step < 5; ++step) {
        seen.insert(at);
        at = ar.tau_of[at];
    }
    CHECK(at == 0);
    CHECK(seen.size() == 5);

    CyProbe cy = oc.cy_probe(6);
    CHECK(cy.compatible == std::vector<int>{2});
    REQUIRE(cy.dimension.has_value());
    CHECK(*cy.dimension == 2);

    CHECK_FALSE(oc.tau_identity_check().ok);
    CHECK(oc.category_algebra_dim() == 10);
}

TEST_CASE("cluster gluing of A2: hom spaces and composition") {
    DerivedCategory dc(linear_quiver(2));
    OrbitCategory oc(dc, FunctorWord{-1, 1});
    const auto& obj = oc.objects();

    for (const OrbitObjectRep& x : obj) {
        OrbitHom end = oc.hom(x, x);
        CHECK(end.total == 1);
        REQUIRE(end.components.size() == 1);
        CHECK(end.components.count(0) == 1);

        EndAlgebra e = oc.end_algebra(x);
        CHECK(e.total_dim == 1);
        CHECK(e.check_identity());
        CHECK(e.check_associativity());
    }

    // identity composes neutrally with an AR arrow
    OrbitMorphism f = oc.basis_morphism(obj[0], obj[2], 0, 0);
    CHECK(oc.compose(f, oc.identity_morphism(obj[0])) == f);
    CHECK(oc.compose(oc.identity_morphism(obj[2]), f) == f);

    // two consecutive pentagon arrows compose to zero: the target space is trivial
    OrbitHom skip = oc.hom(obj[0], obj[3]);
    CHECK(skip.total == 0);
    OrbitMorphism g = oc.basis_morphism(obj[2], obj[3], 0, 0);
    CHECK(oc.compose(g, f).is_zero());

    CHECK_THROWS_AS(oc.basis_morphism(obj[0], obj[3], 0, 0), validation_error);
    CHECK_THROWS_AS(oc.basis_morphism(obj[0], obj[2], 0, 5), validation_error);
    CHECK_THROWS_AS(oc.compose(f, f), validation_error);
}

TEST_CASE("cluster gluing of A3: counts, associativity, symmetry") {
    DerivedCategory dc(linear_quiver(3));
    OrbitCategory oc(dc, FunctorWord{-1, 1});
    const auto& obj = oc.objects();
    REQUIRE(obj.size() == 9);
    CHECK(oc.conditions().ok);
    CHECK(oc.conditions().shift_bound == 1);

    // crossing count of the hexagon diagonal model: 15 unordered pairs,
    // every hom space one-dimensional, plus one loop per object
    CHECK(oc.category_algebra_dim() == 30);

    CyProbe cy = oc.cy_probe(6);
    REQUIRE(cy.dimension.has_value());
    CHECK(*cy.dimension == 2);

    ArQuiverData ar = oc.ar_quiver();
    // single tau-orbit of size 9 would be wrong: A3 folds into orbits 6 + 3
    std::vector<std::size_t> cycle_sizes;
    std::set<std::size_t> visited;
    for (std::size_t v = 0; v < 9; ++v) {
        if (visited.count(v)) continue;
        std::size_t len = 0, at = v;
        while (!visited.count(at)) {
            visited.insert(at);
            at = ar.tau_of[at];
            ++len;
        }
        cycle_sizes.push_back(len);
    }
    std::sort(cycle_sizes.begin(), cycle_sizes.end());
    CHECK(cycle_sizes == std::vector<std::size_t>{3, 6});

    // identity laws on every object
    for (const OrbitObjectRep& x : obj) {
        EndAlgebra e = oc.end_algebra(x);
        CHECK(e.total_dim == 1);
        CHECK(e.check_identity());
    }

    // sampled associativity over composable basis triples
    std::mt19937 rng(20240816);
    std::uniform_int_distribution<std::size_t> pick(0, obj.size() - 1);
    int done = 0;
    while (done < 50) {
        const OrbitObjectRep& a = obj[pick(rng)];
        const OrbitObjectRep& b = obj[pick(rng)];
        const OrbitObjectRep& c = obj[pick(rng)];
        const OrbitObjectRep& d = obj[pick(rng)];
        OrbitHom ab = oc.hom(a, b), bc = oc.hom(b, c), cd = oc.hom(c, d);
        if (ab.total == 0 || bc.total == 0 || cd.total == 0) continue;
        auto first_degree = [](const OrbitHom& h) { return h.components.begin()->first; };
        OrbitMorphism f = oc.basis_morphism(a, b, first_degree(ab), 0);
        OrbitMorphism g = oc.basis_morphism(b, c, first_degree(bc), 0);
        OrbitMorphism k = oc.basis_morphism(c, d, first_degree(cd), 0);
        CHECK(oc.compose(oc.compose(k, g), f) == oc.compose(k, oc.compose(g, f)));
        ++done;
    }
}

TEST_CASE("tau gluing reproduces the doubled-quiver quotient") {
    struct Row {
        Quiver q;
        std::int64_t total;
    };
    std::vector<Row> rows{{linear_quiver(1), 1},
                          {linear_quiver(2), 4},
                          {linear_quiver(3), 10},
                          {linear_quiver(4), 20},
                          {d_quiver(4), 28}};
    for (Row& row : rows) {
        DerivedCategory dc(row.q);
        OrbitCategory oc(dc, FunctorWord{1, 0});
        INFO(classify_dynkin(row.q).name());

        const auto& obj = oc.objects();
        REQUIRE(obj.size() == static_cast<std::size_t>(row.q.rank()));
        CHECK(oc.conditions().shift_bound == 0);
        for (std::size_t k = 0; k < obj.size(); ++k) {
            CHECK(obj[k].shift == 0);
            CHECK(obj[k].dimv == dc.cartan().dim_projective(static_cast<int>(k) + 1));
        }

        oracle::PathAlgebraOracle po = oracle::preprojective_oracle(row.q);
        CHECK(po.total_dim() == row.total);
        CHECK(oc.category_algebra_dim() == po.total_dim());
        CHECK(matches_up_to_transpose(totals_of(oc), po.pair_dims()));

        CHECK(oc.tau_identity_check().ok);
        CyProbe cy = oc.cy_probe(4);
        REQUIRE(cy.dimension.has_value());
        CHECK(*cy.dimension == 1);

        ArQuiverData ar = oc.ar_quiver();
        for (std::size_t v = 0; v < obj.size(); ++v) CHECK(ar.tau_of[v] == v);
        CHECK(ar.edges.size() == 2 * row.q.arrows().size());
        // folded arrows join exactly the underlying edges, both ways
        std::multiset<std::pair<std::size_t, std::size_t>> expect;
        for (const Arrow& a : row.q.arrows()) {
            expect.insert({static_cast<std::size_t>(a.from - 1),
                           static_cast<std::size_t>(a.to - 1)});
            expect.insert({static_cast<std::size_t>(a.to - 1),
                           static_cast<std::size_t>(a.from - 1)});
        }
        CHECK(std::multiset<std::pair<std::size_t, std::size_t>>(ar.edges.begin(),
                                                                 ar.edges.end()) == expect);
    }
}

TEST_CASE("serre gluing of A2 yields the dual numbers") {
    DerivedCategory dc(linear_quiver(2));
    OrbitCategory oc(dc, FunctorWord{1, 1});
    const auto& obj = oc.objects();
    REQUIRE(obj.size() == 1);
    CHECK(obj[0].dimv == DimVector{1, 1});
    CHECK(obj[0].shift == 0);

    EndAlgebra e = oc.end_algebra(obj[0]);
    CHECK(e.total_dim == 2);
    REQUIRE(e.component_dims.size() == 2);
    CHECK(e.component_dims.at(0) == 1);
    CHECK(e.component_dims.at(1) == 1);
    CHECK(e.check_identity());
    CHECK(e.check_associativity());

    // the degree-one generator squares to zero
    std::size_t eps = 0;
    for (std::size_t i = 0; i < e.basis.size(); ++i)
        if (e.basis[i].first == 1) eps = i;
    auto sq = e.mul(e.unit_vector(eps), e.unit_vector(eps));
    for (const Rational& c : sq) CHECK(c.is_zero());

    CHECK(oc.category_algebra_dim() == oracle::loop_chain_oracle(1).total_dim());

    CyProbe cy = oc.cy_probe(6);
    REQUIRE(cy.dimension.has_value());
    CHECK(*cy.dimension == 1);
    CHECK(std::find(cy.compatible.begin(), cy.compatible.end(), 2) !=
          cy.compatible.end()); // the shift itself is trivial here, so 2 works too
}

TEST_CASE("looped tube of rank 1") {
    DerivedCategory dc(linear_quiver(2));
    OrbitCategory oc(dc, FunctorWord{2, 1});
    CHECK(oc.shift_drift() == -1);
    const auto& obj = oc.objects();
    REQUIRE(obj.size() == 1);

    EndAlgebra e = oc.end_algebra(obj[0]);
    CHECK(e.total_dim == 2);
    CHECK(e.component_dims.at(-1) == 1);
    CHECK(e.component_dims.at(0) == 1);
    CHECK(e.check_identity());
    CHECK(e.check_associativity());
    CHECK(oc.category_algebra_dim() == oracle::loop_chain_oracle(1).total_dim());

    CHECK(oc.tau_identity_check().ok);
    CyProbe cy = oc.cy_probe(6);
    REQUIRE(cy.dimension.has_value());
    CHECK(*cy.dimension == 1);
}

TEST_CASE("looped tube of rank 2") {
    DerivedCategory dc(linear_quiver(4));
    OrbitCategory oc(dc, FunctorWord{3, 1});
    CHECK(oc.shift_drift() == -1);
    const auto& obj = oc.objects();
    REQUIRE(obj.size() == 2);
    CHECK(obj[0].dimv == DimVector{1, 1, 1, 1});
    CHECK(obj[0].shift == 0);
    CHECK(obj[1].dimv == DimVector{0, 1, 1, 1});
    CHECK(obj[1].shift == 0);

    EndAlgebra outer = oc.end_algebra(obj[0]);
    CHECK(outer.total_dim == 2);
    CHECK(outer.component_dims.at(-3) == 1);
    CHECK(outer.component_dims.at(0) == 1);
    EndAlgebra inner = oc.end_algebra(obj[1]);
    CHECK(inner.total_dim == 4);
    CHECK(inner.component_dims.at(-3) == 1);
    CHECK(inner.component_dims.at(-2) == 1);
    CHECK(inner.component_dims.at(-1) == 1);
    CHECK(inner.component_dims.at(0) == 1);
    CHECK(inner.check_identity());
    CHECK(inner.check_associativity());

    oracle::PathAlgebraOracle po = oracle::loop_chain_oracle(2);
    CHECK(oc.category_algebra_dim() == po.total_dim());
    CHECK(oc.hom(obj[0], obj[1]).total == po.pair_dims()[1][0]);
    CHECK(oc.hom(obj[1], obj[0]).total == po.pair_dims()[0][1]);

    CHECK(oc.tau_identity_check().ok);

    ArQuiverData ar = oc.ar_quiver();
    CHECK(ar.tau_of == std::vector<std::size_t>{0, 1});
    std::multiset<std::pair<std::size_t, std::size_t>> edges(ar.edges.begin(),
                                                             ar.edges.end());
    std::multiset<std::pair<std::size_t, std::size_t>> expect{{0, 1}, {1, 0}, {1, 1}};
    CHECK(edges == expect);

    CyProbe cy = oc.cy_probe(6);
    REQUIRE(cy.dimension.has_value());
    CHECK(*cy.dimension == 1);
}

TEST_CASE("canonical representatives stay stable far from the base slice") {
    DerivedCategory dc(linear_quiver(3));
    OrbitCategory oc(dc, FunctorWord{-1, 1});
    for (const DimVector& root : dc.cartan().positive_roots()) {
        OrbitObjectRep base = oc.canonical_rep(root, 0);
        for (int s : {11, 23, -17, 36}) {
            OrbitCategory::Stalk far{root, s};
            OrbitObjectRep again = oc.canonical_rep(far.first, far.second);
            CHECK(oc.object_index(again.coord).has_value());
            (void)base; // distinct orbits may differ; stability is what matters
        }
    }
    // the same object queried through different orbit members gives equal homs
    const auto& obj = oc.objects();
    OrbitCategory::Stalk moved = oc.functor_stalk({obj[0].dimv, obj[0].shift}, 7);
    OrbitObjectRep via_far = oc.canonical_rep(moved.first, moved.second);
    CHECK(via_far == obj[0]);
}

TEST_CASE("orbit categories answer consistently under concurrency") {
    DerivedCategory dc(linear_quiver(3));
    OrbitCategory base(dc, FunctorWord{-1, 1});
    std::vector<std::vector<std::int64_t>> expected = totals_of(base);

    std::vector<std::vector<std::vector<std::int64_t>>> got(2);
    std::vector<std::thread> workers;
    for (int t = 0; t < 2; ++t)
        workers.emplace_back([&dc, &got, t] {
            OrbitCategory oc(dc, FunctorWord{-1, 1});
            got[static_cast<std::size_t>(t)] = totals_of(oc);
        });
    for (auto& w : workers) w.join();
    CHECK(got[0] == expected);
    CHECK(got[1] == expected);
}
