#include <cmath>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "renyi/errors.hpp"
#include "renyi/measure_ops.hpp"

using namespace renyi;

namespace {

RenyiState inverse_intensity_state() {
    return RenyiState::half_line([](double l) { return -std::log(l); });
}

RenyiState exp_over_lambda_state(double t) {
    return RenyiState::half_line([t](double l) { return -t * l - std::log(l); });
}

} // namespace

TEST_CASE("window mass: flat density and interval length") {
    const RenyiState s = RenyiState::uniform(BaseMeasure::lebesgue_line());
    const MassValue m = window_mass(s, WindowSet::interval(-1, 1));
    REQUIRE(m.finite());
    CHECK(m.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(m.rel_error <= 1e-9);
}

TEST_CASE("window mass: the scale prior has infinite mass") {
    const MassValue m = window_mass(inverse_intensity_state(), WindowSet::interval(0, kInf));
    CHECK(m.infinite());
}

TEST_CASE("window mass matches an independent Riemann oracle") {
    const double t = 2.0;
    const double tol = 1e-12;
    const MassValue m = window_mass(exp_over_lambda_state(t), WindowSet::interval(1, 3),
                                    QuadratureOptions{tol, 1'000'000});
    const double ref =
        oracles::riemann([t](double l) { return std::exp(-t * l) / l; }, 1.0, 3.0, 8'000'000);
    REQUIRE(m.finite());
    CHECK(std::abs(m.value - ref) <= 10.0 * tol * ref + 1e-13 * ref);
    CHECK(m.rel_error <= tol);
}

TEST_CASE("elementary windows are the finite positive ones") {
    const RenyiState uniform = RenyiState::uniform(BaseMeasure::lebesgue_line());
    CHECK(is_elementary(uniform, WindowSet::interval(0, 1)) == Tristate::True);
    CHECK(is_elementary(uniform, WindowSet::interval(-kInf, kInf)) == Tristate::False);
    CHECK(is_elementary(inverse_intensity_state(), WindowSet::interval(0, 1)) ==
          Tristate::False);
}

TEST_CASE("undetermined mass stays a distinct outcome") {
    // 1/(x log^2 x) decays too irregularly for the doubling classifier on the
    // raw line; the verdict must be undetermined, never silently coerced
    const RenyiState s = RenyiState::on_1d(
        BaseMeasure::lebesgue_line({2.0, kInf}),
        [](double x) { return -std::log(x) - 2.0 * std::log(std::log(x)); });
    const MassValue m = window_mass(s, WindowSet::interval(2.0, kInf));
    CHECK(m.undetermined());
    CHECK(is_elementary(s, WindowSet::interval(2.0, kInf)) == Tristate::Undetermined);
}

TEST_CASE("conditional probabilities") {
    const RenyiState uniform = RenyiState::uniform(BaseMeasure::lebesgue_line());
    CHECK(conditional_probability(uniform, WindowSet::interval(0, 1),
                                  WindowSet::interval(-1, 1)) ==
          doctest::Approx(0.5).epsilon(1e-10));
    CHECK(conditional_probability(uniform, WindowSet::interval(-1, 1),
                                  WindowSet::interval(-1, 1)) ==
          doctest::Approx(1.0).epsilon(1e-12));

    const RenyiState s = exp_over_lambda_state(2.0);
    const double num =
        oracles::riemann([](double l) { return std::exp(-2 * l) / l; }, 1.0, 2.0, 4'000'000);
    const double den =
        oracles::riemann([](double l) { return std::exp(-2 * l) / l; }, 1.0, 3.0, 4'000'000);
    CHECK(conditional_probability(s, WindowSet::interval(1, 2), WindowSet::interval(1, 3)) ==
          doctest::Approx(num / den).epsilon(1e-7));
}

TEST_CASE("conditioning on a non-elementary window is refused with the reason") {
    const RenyiState uniform = RenyiState::uniform(BaseMeasure::lebesgue_line());
    try {
        conditional_probability(uniform, WindowSet::interval(0, 1),
                                WindowSet::interval(-kInf, kInf));
        FAIL("expected NotElementaryError");
    } catch (const NotElementaryError& e) {
        CHECK(e.reason == ElementaryFailure::InfiniteMass);
    }
    try {
        conditional_probability(uniform, WindowSet::interval(0, 1), WindowSet::empty());
        FAIL("expected NotElementaryError");
    } catch (const NotElementaryError& e) {
        CHECK(e.reason == ElementaryFailure::ZeroMass);
    }
}

TEST_CASE("restriction is the conditional given the window") {
    const RenyiState plane = RenyiState::uniform(BaseMeasure::lebesgue_plane());
    const WindowSet upper = WindowSet::box({-kInf, kInf}, {0, kInf});
    const RenyiState restricted = restrict_to(plane, upper);
    CHECK(restricted.log_density(Point{3.0, 2.0}) == 0.0);
    CHECK(restricted.log_density(Point{3.0, -2.0}) == -kInf);
    const MassValue box = window_mass(restricted, WindowSet::box({0, 2}, {-5, 1}));
    REQUIRE(box.finite());
    CHECK(box.value == doctest::Approx(2.0).epsilon(1e-9)); // only y in [0,1] survives

    const RenyiState s = exp_over_lambda_state(2.0);
    const WindowSet whole = WindowSet::whole(s.base);
    const WindowSet probe[] = {WindowSet::interval(0.5, 4.0)};
    CHECK(states_equivalent(restrict_to(s, whole), s, probe, 1e-12));

    CHECK_THROWS_AS(restrict_to(s, WindowSet::empty()), ZeroMassError);
}

TEST_CASE("nested restriction collapses") {
    const RenyiState s = exp_over_lambda_state(1.0);
    const WindowSet inner = WindowSet::interval(0.5, 2.0);
    const WindowSet outer = WindowSet::interval(0.25, 3.0);
    const RenyiState twice = restrict_to(restrict_to(s, outer), inner);
    const RenyiState once = restrict_to(s, inner);
    const WindowSet probe[] = {inner};
    CHECK(states_equivalent(twice, once, probe, 1e-12));
}

TEST_CASE("normalization on a window") {
    const RenyiState uniform = RenyiState::uniform(BaseMeasure::lebesgue_line());
    const int n = 4;
    const RenyiState mn = normalize_on_window(uniform, WindowSet::interval(-n, n));
    CHECK(mn.log_density(Point{0.3, 0}) == doctest::Approx(-std::log(2.0 * n)).epsilon(1e-10));
    const MassValue total = window_mass(mn, WindowSet::interval(-n, n));
    REQUIRE(total.finite());
    CHECK(total.value == doctest::Approx(1.0).epsilon(1e-8));

    const RenyiState s = exp_over_lambda_state(2.0);
    const RenyiState ns = normalize_on_window(s, WindowSet::interval(1, 3));
    const MassValue m = window_mass(ns, WindowSet::interval(1, 3));
    REQUIRE(m.finite());
    CHECK(m.value == doctest::Approx(1.0).epsilon(1e-8));

    // a pure point-mass window under delta_0 + dtheta
    const RenyiState mixed = RenyiState::on_1d(
        BaseMeasure::lebesgue_with_atoms({0.0}),
        [](double t) { return t == 0.0 ? std::log(0.25) : -std::abs(t); });
    const RenyiState atom_only = normalize_on_window(mixed, WindowSet::interval(0, 0));
    CHECK(atom_only.log_density(Point{0.0, 0}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(atom_only.log_density(Point{1.0, 0}) == -kInf);
}

TEST_CASE("state equivalence is scale blindness") {
    const RenyiState s = exp_over_lambda_state(2.0);
    const RenyiState scaled = s.scaled(std::log(7.0));
    const WindowSet probe[] = {WindowSet::interval(0.5, 4.0)};
    CHECK(states_equivalent(s, scaled, probe, 1e-12));

    // a perturbed patch wide enough to catch probe points breaks it
    const RenyiState bent = RenyiState::half_line([](double l) {
        const double base = -2.0 * l - std::log(l);
        return std::abs(l - 2.0) < 0.2 ? base + 1.0 : base;
    });
    CHECK(!states_equivalent(s, bent, probe, 1e-6));

    // disjoint supports: no probe point carries both densities
    const RenyiState left = restrict_to(s, WindowSet::interval(0.5, 1.0));
    const RenyiState right = restrict_to(s, WindowSet::interval(2.0, 4.0));
    EquivalenceDiagnostics diag;
    CHECK(!states_equivalent(left, right, probe, 1e-6, &diag));
    CHECK(!diag.note.empty());
}

TEST_CASE("bunch axioms for the canonical family") {
    const RenyiState uniform = RenyiState::uniform(BaseMeasure::lebesgue_line());
    std::vector<WindowSet> family;
    for (int n = 1; n <= 5; ++n) family.push_back(WindowSet::interval(-n, n));
    const BunchReport ok =
        check_bunch_axioms(uniform, family, WindowSet::interval(-5, 5));
    CHECK(ok.pass());

    std::vector<WindowSet> with_empty = family;
    with_empty.push_back(WindowSet::empty());
    CHECK(!check_bunch_axioms(uniform, with_empty, WindowSet::interval(-5, 5)).axiom_no_empty);

    const std::vector<WindowSet> no_union{WindowSet::interval(0, 1), WindowSet::interval(2, 3)};
    const BunchReport broken =
        check_bunch_axioms(uniform, no_union, WindowSet::interval(0, 1));
    CHECK(!broken.axiom_union_closed);
}

TEST_CASE("conditional consistency under nesting") {
    const RenyiState uniform = RenyiState::uniform(BaseMeasure::lebesgue_line());
    CHECK(check_consistency(uniform, WindowSet::interval(0, 0.5), WindowSet::interval(0, 1),
                            WindowSet::interval(-1, 1), 1e-9));

    const RenyiState post = exp_over_lambda_state(2.0); // the x = 0 posterior shape
    CHECK(check_consistency(post, WindowSet::interval(0.5, 1), WindowSet::interval(0.1, 1),
                            WindowSet::interval(0.1, 10), 1e-8));

    // a disjoint from b1: both sides vanish
    CHECK(check_consistency(uniform, WindowSet::interval(5, 6), WindowSet::interval(0, 1),
                            WindowSet::interval(-1, 1), 1e-12));
}

TEST_CASE("q-vague: constant sequences converge trivially") {
    const RenyiState s = exp_over_lambda_state(2.0);
    const std::vector<int> schedule{1, 2, 4, 8};
    const std::vector<WindowSet> probes{WindowSet::interval(0.5, 1), WindowSet::interval(1, 3)};
    const QVagueReport rep = q_vague_limit_check([&](int) { return s; }, s,
                                                 WindowSet::interval(0.5, 2), probes,
                                                 schedule, 1e-9);
    CHECK(rep.converged);
    for (const auto& row : rep.probes)
        for (double v : row.scaled_masses)
            CHECK(v == doctest::Approx(row.limit_mass).epsilon(1e-8));
}

TEST_CASE("q-vague: normal slabs with growing spread collapse to the atom") {
    const double atom_mass = 0.5;
    auto member = [atom_mass](int n) {
        const double tau = n;
        return RenyiState::on_1d(
            BaseMeasure::lebesgue_with_atoms({0.0}), [atom_mass, tau](double t) {
                if (t == 0.0) return std::log(atom_mass);
                const double z = t / tau;
                return std::log1p(-atom_mass) - 0.5 * z * z -
                       std::log(tau * std::sqrt(2.0 * 3.14159265358979324));
            });
    };
    const RenyiState delta = RenyiState::on_1d(
        BaseMeasure::lebesgue_with_atoms({0.0}),
        [](double t) { return t == 0.0 ? 0.0 : -kInf; });

    const std::vector<int> schedule{1, 2, 4, 8, 16, 32, 64, 128, 256, 512};
    const std::vector<WindowSet> probes{WindowSet::interval(-1, 1), WindowSet::interval(-3, 3)};
    const QVagueReport rep = q_vague_limit_check(member, delta, WindowSet::interval(0, 0),
                                                 probes, schedule, 0.02);
    CHECK(rep.converged);
    CHECK(rep.flagged_indices.empty());
}

TEST_CASE("q-vague: normalized boxes recover the uniform state") {
    auto member = [](int n) {
        return RenyiState::line([n](double t) {
            return std::abs(t) <= n ? -std::log(2.0 * n) : -kInf;
        });
    };
    const RenyiState lebesgue = RenyiState::uniform(BaseMeasure::lebesgue_line());
    const std::vector<int> schedule{1, 2, 4, 8, 16, 32, 64};
    const std::vector<WindowSet> probes{WindowSet::interval(-3, 3), WindowSet::interval(0, 2)};
    const QVagueReport rep = q_vague_limit_check(member, lebesgue, WindowSet::interval(-1, 1),
                                                 probes, schedule, 1e-9);
    CHECK(rep.converged);
}

// ---------------------------------------------------------------------------
// property tests

namespace {

struct RandomLogConcave {
    double mean, sd;
    double operator()(double x) const {
        const double z = (x - mean) / sd;
        return -0.5 * z * z;
    }
};

} // namespace

TEST_CASE("property: every output is invariant under rescaling the state") {
    std::mt19937 gen(20240811);
    std::uniform_real_distribution<double> mu(-2.0, 2.0), width(0.5, 2.0), scale(0.01, 100.0);
    for (int trial = 0; trial < 25; ++trial) {
        const RandomLogConcave f{mu(gen), width(gen)};
        const RenyiState s = RenyiState::line([f](double x) { return f(x); });
        const RenyiState cs = s.scaled(std::log(scale(gen)));

        const double a_lo = mu(gen), a_len = width(gen);
        const WindowSet a = WindowSet::interval(a_lo, a_lo + a_len);
        const WindowSet b = WindowSet::interval(a_lo - width(gen), a_lo + a_len + width(gen));

        CHECK(is_elementary(s, b) == is_elementary(cs, b));
        const double p1 = conditional_probability(s, a, b);
        const double p2 = conditional_probability(cs, a, b);
        CHECK(std::abs(p1 - p2) <= 1e-12);
        const WindowSet probe[] = {b};
        CHECK(states_equivalent(s, cs, probe, 1e-10));
    }
}

TEST_CASE("property: finite additivity of conditionals on disjoint pieces") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> mu(-1.0, 1.0), width(0.3, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const RandomLogConcave f{mu(gen), width(gen) + 0.5};
        const RenyiState s = RenyiState::line([f](double x) { return f(x); });
        const WindowSet b = WindowSet::interval(-3, 3);
        const double split = mu(gen);
        const WindowSet a1 = WindowSet::interval(-3, split);
        const WindowSet a2 = WindowSet::interval(split, 3);
        const double tol = 1e-9;
        const double lhs = conditional_probability(s, window_union(s.base, a1, a2), b,
                                                   QuadratureOptions{tol, 1'000'000});
        const double rhs = conditional_probability(s, a1, b, QuadratureOptions{tol, 1'000'000}) +
                           conditional_probability(s, a2, b, QuadratureOptions{tol, 1'000'000});
        CHECK(std::abs(lhs - rhs) <= 2.0 * tol + 1e-12);
    }
}

TEST_CASE("property: consistency holds on random nested elementary windows") {
    std::mt19937 gen(99);
    std::uniform_real_distribution<double> mu(-1.5, 1.5), width(0.4, 2.0), pad(0.1, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const RandomLogConcave f{mu(gen), width(gen)};
        const RenyiState s = RenyiState::line([f](double x) { return f(x); });
        const double lo = mu(gen) - width(gen);
        const double hi = lo + width(gen) + 0.3;
        const WindowSet b1 = WindowSet::interval(lo, hi);
        const WindowSet b2 = WindowSet::interval(lo - pad(gen), hi + pad(gen));
        const WindowSet a = WindowSet::interval(lo + 0.1 * (hi - lo), hi - 0.2 * (hi - lo));
        CHECK(check_consistency(s, a, b1, b2, 1e-7));
    }
}

TEST_CASE("restricted states drop tail hints the window cannot reach") {
    TailHint hint;
    hint.axis[0].toward_hi = TailBehavior{-1.0, 0.0}; // divergent tail if reachable
    const RenyiState s = RenyiState::half_line([](double l) { return -std::log(l); }, hint);
    CHECK(window_mass(s, WindowSet::interval(1, kInf)).infinite());
    const RenyiState cut = restrict_to(s, WindowSet::interval(1, 2));
    const MassValue m = window_mass(cut, WindowSet::interval(1, kInf));
    REQUIRE(m.finite());
    CHECK(m.value == doctest::Approx(std::log(2.0)).epsilon(1e-8));
}
