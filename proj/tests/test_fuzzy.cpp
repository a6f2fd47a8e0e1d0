#include "fuzzpoc/fuzzy.hpp"
#include "fuzzpoc/rng.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace fuzzpoc;

namespace {

Tfn random_tfn(Rng& rng) {
    return {rng.uniform(-5.0, 5.0), rng.uniform(0.05, 3.0), rng.uniform(0.05, 3.0)};
}

}  // namespace

TEST_CASE("membership follows the triangle") {
    const Tfn t{1.0, 0.5, 0.5};
    CHECK(membership(t, 1.0) == 1.0);
    CHECK(membership(t, 0.75) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(membership(t, 2.0) == 0.0);
    CHECK(membership(t, 0.5) == 0.0);
    CHECK(membership(Tfn::crisp(3.0), 3.0) == 1.0);
    CHECK(membership(Tfn::crisp(3.0), 3.0001) == 0.0);
    CHECK_THROWS_AS(Tfn(0.0, -1.0, 0.0), std::invalid_argument);
}

TEST_CASE("addition and scaling") {
    CHECK(add({1.0, 0.5, 0.5}, {2.0, 0.3, 0.7}) == Tfn{3.0, 0.8, 1.2});
    CHECK(add(Tfn::crisp(4.0), Tfn::crisp(0.0)) == Tfn::crisp(4.0));
    const Tfn s = add({1.0, 0.2, 0.3}, {-1.0, 0.3, 0.2});
    CHECK(s.center() == 0.0);
    CHECK(s.left_dev() == doctest::Approx(0.5));
    CHECK(s.right_dev() == doctest::Approx(0.5));

    CHECK(scale(2.0, {1.0, 0.5, 0.5}) == Tfn{2.0, 1.0, 1.0});
    CHECK(scale(0.0, {7.0, 1.0, 2.0}) == Tfn{0.0, 0.0, 0.0});
    CHECK(scale(0.5, {4.0, 2.0, 6.0}) == Tfn{2.0, 1.0, 3.0});
    CHECK_THROWS_AS(scale(-1.0, {1.0, 1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("arithmetic agrees with alpha-cut endpoints") {
    Rng rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const Tfn a = random_tfn(rng), b = random_tfn(rng);
        const double nu = rng.uniform(0.0, 4.0);
        for (double alpha : {0.0, 0.25, 0.5, 0.9, 1.0}) {
            const auto ca = oracle::alpha_cut(a, alpha), cb = oracle::alpha_cut(b, alpha);
            const auto sum = oracle::alpha_cut(add(a, b), alpha);
            CHECK(sum.lo == doctest::Approx(ca.lo + cb.lo).epsilon(1e-12));
            CHECK(sum.hi == doctest::Approx(ca.hi + cb.hi).epsilon(1e-12));
            const auto sc = oracle::alpha_cut(scale(nu, a), alpha);
            CHECK(sc.lo == doctest::Approx(nu * ca.lo).epsilon(1e-12));
            CHECK(sc.hi == doctest::Approx(nu * ca.hi).epsilon(1e-12));
        }
    }
}

TEST_CASE("dominance order") {
    CHECK(dominates({2.0, 0.1, 0.1}, {1.0, 0.1, 0.1}));
    const Tfn a{1.0, 0.4, 0.3};
    CHECK(dominates(a, a));
    CHECK_FALSE(dominates({1.0, 0.9, 0.1}, {1.0, 0.1, 0.1}));
}

TEST_CASE("satisfaction of simple shapes") {
    const Tfn a{1.0, 0.5, 0.5};
    CHECK(satisfaction(a, a, Direction::less) == doctest::Approx(0.5).epsilon(1e-6));
    const PiecewiseLinear left = PiecewiseLinear::rectangle(0.0, 1.0);
    const PiecewiseLinear right = PiecewiseLinear::rectangle(2.0, 3.0);
    CHECK(satisfaction(left, right, Direction::less) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(satisfaction(left, right, Direction::greater) == doctest::Approx(0.0).epsilon(1e-12));

    const Tfn p{1.0, 1.0, 1.0}, q{1.5, 1.0, 1.0};
    const double got = satisfaction(p, q, Direction::less);
    const double exact = oracle::sf_less_triangles(p, q);
    const double grid = oracle::sf_less_grid(p, q, 4096);
    CHECK(got > 0.5);
    CHECK(got < 1.0);
    CHECK(got == doctest::Approx(exact).epsilon(1e-5));
    CHECK(grid == doctest::Approx(exact).epsilon(1e-3));
}

TEST_CASE("satisfaction matches the exact triangle oracle") {
    Rng rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const Tfn a = random_tfn(rng), b = random_tfn(rng);
        CHECK(satisfaction(a, b, Direction::less) == doctest::Approx(oracle::sf_less_triangles(a, b)).epsilon(1e-4));
    }
}

TEST_CASE("satisfaction matches the rectangle closed form") {
    Rng rng(6);
    for (int trial = 0; trial < 300; ++trial) {
        const double a0 = rng.uniform(-3.0, 3.0), a1 = a0 + rng.uniform(0.1, 3.0);
        const double b0 = rng.uniform(-3.0, 3.0), b1 = b0 + rng.uniform(0.1, 3.0);
        const double got = satisfaction(PiecewiseLinear::rectangle(a0, a1), PiecewiseLinear::rectangle(b0, b1),
                                        Direction::less);
        CHECK(std::fabs(got - oracle::sf_less_rectangles(a0, a1, b0, b1)) <= 1e-4);
    }
}

TEST_CASE("satisfaction complement and self comparison") {
    Rng rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const Tfn a = random_tfn(rng), b = random_tfn(rng);
        const double lt = satisfaction(a, b, Direction::less);
        const double gt = satisfaction(a, b, Direction::greater);
        CHECK(std::fabs(lt + gt - 1.0) <= 1e-4);
        CHECK(std::fabs(satisfaction(a, a, Direction::less) - 0.5) <= 1e-4);
    }
}

TEST_CASE("crisp numbers are widened before integration") {
    CHECK(crisp_widening(0.0) == 1e-9);
    CHECK(crisp_widening(-50.0) == doctest::Approx(5e-8));
    const Tfn w = widen_if_crisp(Tfn::crisp(2.0));
    CHECK(w.left_dev() > 0.0);
    CHECK(satisfaction(Tfn::crisp(1.0), Tfn::crisp(2.0), Direction::less) == doctest::Approx(1.0));
    CHECK(satisfaction(Tfn::crisp(1.0), Tfn::crisp(1.0), Direction::less) == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("viewpoints cover the set") {
    const std::vector<Tfn> set{{1.0, 0.5, 0.5}, {2.0, 0.5, 0.5}, {3.0, 0.5, 0.5}};
    for (Stance s : {Stance::neutral, Stance::optimistic, Stance::pessimistic}) {
        const Viewpoint v = make_viewpoint(set, s);
        CHECK(v.shape.lower() <= 0.5);
        CHECK(v.shape.upper() >= 3.5);
    }
    CHECK(make_viewpoint(set, Stance::neutral).shape.center() == doctest::Approx(2.0));
    CHECK_THROWS_AS(make_viewpoint(std::vector<Tfn>{}, Stance::neutral), std::invalid_argument);
    CHECK(stance_from_string(to_string(Stance::pessimistic)) == Stance::pessimistic);
    CHECK_THROWS_AS(stance_from_string("sideways"), std::invalid_argument);
}

TEST_CASE("evaluation values and relative indices") {
    const Tfn v{1.0, 2.0, 2.0};
    const Viewpoint view{v, Stance::neutral};
    CHECK(evaluation_value(v, view) == doctest::Approx(0.5).epsilon(1e-6));
    // concentric symmetric shapes sit at exactly one half whatever their widths
    CHECK(evaluation_value({1.0, 0.5, 0.5}, view) == doctest::Approx(0.5).epsilon(1e-6));
    const double e = evaluation_value({1.8, 0.5, 0.5}, view);
    CHECK(e > 0.5);
    CHECK(e < 1.0);
    CHECK(e == doctest::Approx(1.0 - oracle::sf_less_triangles({1.8, 0.5, 0.5}, v)).epsilon(1e-4));
    CHECK(evaluation_value({2.9, 0.01, 0.01}, view) > 0.99);
    CHECK_THROWS_AS(evaluation_value({10.0, 1.0, 1.0}, view), std::invalid_argument);

    const std::vector<Tfn> one{{4.0, 1.0, 1.0}};
    CHECK(relative_index(one, make_viewpoint(one, Stance::neutral)) == std::vector<double>{1.0});
    const std::vector<Tfn> same(4, Tfn{2.0, 0.3, 0.3});
    for (double x : relative_index(same, make_viewpoint(same, Stance::neutral))) CHECK(x == 1.0);

    const std::vector<Tfn> rising{{1.0, 0.5, 0.5}, {2.0, 0.5, 0.5}, {3.0, 0.5, 0.5}};
    const auto idx = relative_index(rising, make_viewpoint(rising, Stance::neutral));
    CHECK(idx[0] < idx[1]);
    CHECK(idx[1] < idx[2]);
    CHECK(idx[2] == 1.0);
}

TEST_CASE("degenerate memberships are rejected") {
    const PiecewiseLinear flat({{0.0, 0.0}, {1.0, 0.0}});
    CHECK_THROWS_AS(satisfaction(flat, PiecewiseLinear::rectangle(0.0, 1.0), Direction::less), QuadratureError);
    CHECK_THROWS_AS(satisfaction(PiecewiseLinear::rectangle(0.0, 1.0), flat, Direction::less), QuadratureError);
    QuadratureOptions bad;
    bad.nodes = 1;
    CHECK_THROWS_AS(satisfaction(Tfn{0.0, 1.0, 1.0}, Tfn{1.0, 1.0, 1.0}, Direction::less, bad), std::invalid_argument);
}
