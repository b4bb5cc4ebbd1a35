#include <doctest.h>

#include "catmew/analytic.hpp"
#include "catmew/fock_oracle.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * pi;

std::vector<double> uniform_grid(double start, double end, int points) {
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        grid[static_cast<std::size_t>(i)] =
            start + (end - start) *
                        (static_cast<double>(i) / (points - 1));
    }
    return grid;
}

double wrapped_phase_distance(double a, double b) {
    const double d = std::fmod(std::abs(a - b), two_pi);
    return std::min(d, two_pi - d);
}

} // namespace

TEST_CASE("coherent state amplitudes and truncation gate") {
    const auto vacuum = catmew::coherent_state(0.0, 5);
    REQUIRE(vacuum.dim() == 5);
    CHECK(vacuum.amps[0] == std::complex<double>(1.0, 0.0));
    for (int n = 1; n < 5; ++n) {
        CHECK(std::abs(vacuum.amps[static_cast<std::size_t>(n)]) == 0.0);
    }

    // Poisson mean equals |alpha|^2.
    const auto one = catmew::coherent_state(1.0, 30);
    double mean = 0.0;
    for (int n = 0; n < one.dim(); ++n) {
        mean += n * std::norm(one.amps[static_cast<std::size_t>(n)]);
    }
    CHECK(std::abs(mean - 1.0) < 1e-9);

    CHECK_THROWS_AS(catmew::coherent_state(2.0, 5), catmew::truncation_error);
    try {
        catmew::coherent_state(2.0, 5);
    } catch (const catmew::truncation_error& e) {
        CHECK(e.achieved_norm_sq() > 0.0);
        CHECK(e.achieved_norm_sq() < 1.0 - 1e-10);
    }

    CHECK_THROWS_AS(catmew::coherent_state(0.0, 1), std::invalid_argument);
}

TEST_CASE("vacuum overlap with a coherent state") {
    const auto vacuum = catmew::coherent_state(0.0, 40);
    for (const std::complex<double> alpha :
         {std::complex<double>(0.5, 0.0), std::complex<double>(0.0, 1.0),
          std::complex<double>(1.2, -0.9), std::complex<double>(2.0, 0.0)}) {
        const auto state = catmew::coherent_state(alpha, 40);
        const auto overlap = catmew::inner_product(vacuum, state);
        CHECK(std::abs(overlap - std::exp(-0.5 * std::norm(alpha))) < 1e-9);
    }
}

TEST_CASE("inner product requires matching dimensions") {
    CHECK_THROWS_AS(catmew::inner_product(catmew::vacuum_state(4),
                                          catmew::vacuum_state(5)),
                    std::invalid_argument);
}

TEST_CASE("truncation sizing rule") {
    CHECK(catmew::recommended_dim(0.0) == 10);
    CHECK(catmew::recommended_dim(0.1) == 11);
    CHECK(catmew::recommended_dim(0.5) == 11);
    CHECK(catmew::recommended_dim(1.0) == 24);
    CHECK(catmew::recommended_dim(1.5) == 39);
}

TEST_CASE("oracle configuration validation") {
    catmew::OracleConfig cfg;
    cfg.dim = 1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.dim = 8;
    cfg.steps_per_period = 99;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.steps_per_period = 100;
    CHECK_NOTHROW(cfg.validate());

    const auto sized = catmew::OracleConfig::for_kappa(0.5);
    CHECK(sized.dim == 11);
    CHECK(sized.propagator == catmew::Propagator::eigendecomposition);
}

TEST_CASE("arm Hamiltonians are tridiagonal with the ladder couplings") {
    const auto h = catmew::coupled_arm_hamiltonian(0.5, 6);
    REQUIRE(h.diag.size() == 6);
    REQUIRE(h.sub.size() == 5);
    for (int n = 0; n < 6; ++n) {
        CHECK(h.diag[static_cast<std::size_t>(n)] == static_cast<double>(n));
    }
    for (int n = 0; n < 5; ++n) {
        CHECK(h.sub[static_cast<std::size_t>(n)] ==
              doctest::Approx(-0.5 * std::sqrt(n + 1.0)).epsilon(1e-15));
    }

    const auto free = catmew::free_arm_hamiltonian(6);
    for (double coupling : free.sub) {
        CHECK(coupling == 0.0);
    }
}

TEST_CASE("decoupled arms stay in vacuum") {
    const auto pair =
        catmew::evolve_branches(0.0, 5.3, catmew::OracleConfig{8});
    CHECK(std::abs(std::abs(pair.branch_a.amps[0]) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(pair.branch_b.amps[0]) - 1.0) < 1e-12);
    CHECK(std::abs(pair.branch_a.norm_sq() - 1.0) < 1e-12);

    const auto record = catmew::beamsplitter_output(pair, 0.0);
    CHECK(record.i_c == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(record.i_d == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("revival returns the coupled arm to vacuum with the self-phase") {
    const catmew::OracleConfig cfg{30};
    const auto pair = catmew::evolve_branches(0.5, two_pi, cfg);

    const auto vacuum = catmew::vacuum_state(30);
    const auto overlap = catmew::inner_product(vacuum, pair.branch_a);
    CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-8);

    // The uncoupled branch carries zero phase, so the phase difference is
    // arg<0|branch_a> itself; 2 pi kappa^2 = pi/2 here.
    const double phase_b = std::arg(pair.branch_b.amps[0]);
    CHECK(wrapped_phase_distance(std::arg(overlap) - phase_b, pi / 2.0) <
          1e-6);
}

TEST_CASE("branch overlap magnitude matches the visibility envelope") {
    const catmew::OracleConfig cfg{30};
    const auto pair = catmew::evolve_branches(0.5, pi, cfg);
    const auto overlap =
        catmew::inner_product(pair.branch_b, pair.branch_a);
    CHECK(std::abs(std::abs(overlap) - std::exp(-0.5)) < 1e-7);
}

TEST_CASE("numerical evolution reproduces the displaced-state solution") {
    // The propagator integrates the Hamiltonian; it must land on
    // e^{i phi}|alpha> without being told so.
    const catmew::OracleConfig cfg{60};
    for (double kappa : {0.1, 0.5, 1.0}) {
        for (double theta : {pi / 3.0, pi, two_pi, 3.0 * pi}) {
            const auto pair = catmew::evolve_branches(kappa, theta, cfg);

            auto reference = catmew::coherent_state(
                catmew::mirror_amplitude(kappa, theta), 60);
            const std::complex<double> phase =
                std::polar(1.0, catmew::kerr_phase(kappa, theta));
            for (auto& amp : reference.amps) {
                amp *= phase;
            }

            const auto overlap =
                catmew::inner_product(reference, pair.branch_a);
            CHECK(std::abs(overlap) > 1.0 - 1e-7);
            CHECK(wrapped_phase_distance(std::arg(overlap), 0.0) < 1e-6);
        }
    }
}

TEST_CASE("beamsplitter port examples") {
    const catmew::OracleConfig cfg{30};

    const auto tuned = catmew::beamsplitter_output(
        catmew::evolve_branches(0.5, two_pi, cfg), pi);
    CHECK(std::abs(tuned.i_c - 1.0) < 1e-8);
    CHECK(std::abs(tuned.i_d) < 1e-8);

    const auto mid = catmew::beamsplitter_output(
        catmew::evolve_branches(0.5, pi, cfg), 0.0);
    CHECK(std::abs(mid.i_c - 0.285559028759823) < 1e-6);
    CHECK(std::abs(mid.i_d - 0.714440971240177) < 1e-6);
    CHECK(std::abs(mid.coherence_ab -
                   std::complex<double>(0.214440971240177,
                                        0.214440971240177)) < 1e-6);
    CHECK(std::abs(mid.cross_cd.real() - 0.107220485620088) < 1e-6);
    CHECK(std::abs(mid.cross_cd.imag()) < 1e-8);
}

TEST_CASE("beamsplitter conserves total probability") {
    const catmew::OracleConfig cfg{24};
    for (double kappa : {0.0, 0.3, 1.0}) {
        for (double theta : {0.7, pi, 4.9}) {
            const auto pair = catmew::evolve_branches(kappa, theta, cfg);
            const auto record = catmew::beamsplitter_output(pair, 0.4);
            const double budget = 0.5 * (pair.branch_a.norm_sq() +
                                         pair.branch_b.norm_sq());
            CHECK(std::abs(record.i_c + record.i_d - budget) < 1e-12);
        }
    }
}

TEST_CASE("beamsplitter rejects a half-missing state") {
    catmew::BranchPair pair;
    pair.branch_a = catmew::vacuum_state(4);
    pair.branch_b = catmew::vacuum_state(4);
    pair.weight_a = 1.0 / std::numbers::sqrt2;
    pair.weight_b = 1.0 / std::numbers::sqrt2;
    pair.theta = 0.0;
    pair.branch_a.amps.assign(4, {0.0, 0.0});

    CHECK_THROWS_AS(catmew::beamsplitter_output(pair, 0.0),
                    catmew::truncation_error);
    try {
        catmew::beamsplitter_output(pair, 0.0);
    } catch (const catmew::truncation_error& e) {
        CHECK(e.achieved_norm_sq() == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("propagators agree on the port-C intensity") {
    const catmew::OracleConfig eigen{11, catmew::Propagator::eigendecomposition};
    const catmew::OracleConfig stepped{
        11, catmew::Propagator::fixed_step_fourth_order, 2000};

    for (double theta : uniform_grid(0.0, 4.0 * pi, 41)) {
        const auto via_eigen = catmew::beamsplitter_output(
            catmew::evolve_branches(0.5, theta, eigen), 0.0);
        const auto via_steps = catmew::beamsplitter_output(
            catmew::evolve_branches(0.5, theta, stepped), 0.0);
        CHECK(std::abs(via_eigen.i_c - via_steps.i_c) < 1e-8);
    }
}

TEST_CASE("evolution under a too-small truncation leaks norm") {
    // The stepping propagator dissipates amplitude that the truncation
    // reflects back across the boundary.
    const catmew::OracleConfig cramped{
        26, catmew::Propagator::fixed_step_fourth_order, 110};
    CHECK_THROWS_AS(catmew::evolve_branches(2.0, 4.0 * pi, cramped),
                    catmew::truncation_error);
}

TEST_CASE("stepping propagator refuses unstable step sizes") {
    const catmew::OracleConfig unstable{
        300, catmew::Propagator::fixed_step_fourth_order, 100};
    CHECK_THROWS_AS(catmew::evolve_branches(0.5, pi, unstable),
                    std::invalid_argument);
}

TEST_CASE("propagate validates its inputs") {
    const auto h = catmew::coupled_arm_hamiltonian(0.5, 8);
    const catmew::OracleConfig cfg{10};
    CHECK_THROWS_AS(
        catmew::propagate(h, catmew::vacuum_state(8), 1.0, cfg),
        std::invalid_argument);
    CHECK_THROWS_AS(catmew::evolve_branches(-0.1, 1.0, catmew::OracleConfig{8}),
                    std::domain_error);
}

TEST_CASE("comparison harness agrees with the closed forms") {
    const auto degenerate = catmew::compare_with_analytic(
        0.0, uniform_grid(0.0, 4.0 * pi, 21), 0.3, catmew::OracleConfig{8});
    CHECK(degenerate.max_deviation() < 1e-12);

    const auto standard = catmew::compare_with_analytic(
        0.5, uniform_grid(0.0, 4.0 * pi, 201), 0.0, catmew::OracleConfig{40});
    CHECK(standard.max_deviation() < 1e-6);
    REQUIRE(standard.rows.size() == 201);

    double max_ic = 0.0;
    for (const auto& row : standard.rows) {
        max_ic = std::max(max_ic, row.dev_i_c);
    }
    CHECK(max_ic == standard.max_dev_i_c);

    const auto stress = catmew::compare_with_analytic(
        1.5, uniform_grid(0.0, two_pi, 201), 0.0, catmew::OracleConfig{80});
    CHECK(stress.max_deviation() < 1e-6);
}

TEST_CASE("comparison harness rejects bad grids") {
    const catmew::OracleConfig cfg{8};
    CHECK_THROWS_AS(
        catmew::compare_with_analytic(0.5, std::vector<double>{}, 0.0, cfg),
        std::invalid_argument);
    CHECK_THROWS_AS(catmew::compare_with_analytic(
                        0.5, std::vector<double>{1.0, 1.0}, 0.0, cfg),
                    std::invalid_argument);
}
