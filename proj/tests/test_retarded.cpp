#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "bohm/ensemble.hpp"
#include "bohm/errors.hpp"
#include "bohm/experiment.hpp"
#include "bohm/retarded.hpp"
#include "bohm/rng.hpp"
#include "bohm/trajectory_history.hpp"
#include "doctest.h"

using namespace bohm;

namespace {
const ExperimentConfig base_cfg{};

TrajectoryHistory single_node_history(double u0, double v0) {
    TrajectoryHistory h(1e-3, 1);
    h.append(0.0, u0, v0, 0.5, 0.5);
    return h;
}
}  // namespace

TEST_CASE("config derives the delay from the signal speed") {
    ExperimentConfig e = base_cfg;
    e.l = 3.0;
    e.c_light = 4.0;
    const RetardedConfig rc = RetardedConfig::from_signal_speed(e);
    CHECK(rc.T == doctest::Approx(1.5).epsilon(1e-14));
    CHECK_THROWS_AS(RetardedConfig::with_delay(base_cfg, -0.5), ConfigError);
    CHECK_THROWS_AS(RetardedConfig::with_delay(base_cfg, 1e-9), ConfigError);
}

TEST_CASE("zero delay reduces to the coupled pair velocities") {
    const TrajectoryHistory hist = single_node_history(0.0, 0.0);
    auto rng = SplitMix64::stream(41, 0);
    for (int i = 0; i < 50; ++i) {
        const double u = 3.0 * (rng.uniform01() - 0.5);
        const double v = 3.0 * (rng.uniform01() - 0.5);
        const double t = 8.0 * rng.uniform01();
        const auto [du_r, dv_r] = retarded_pair_velocity(t, u, v, hist, 0.0);
        const auto [du, dv] = pair_velocity({u, v, t});
        CHECK(du_r == du);
        CHECK(dv_r == dv);
    }
}

TEST_CASE("before the delay each detector ignores the other entirely") {
    const double T = 2.0;
    const TrajectoryHistory h1 = single_node_history(0.3, -0.8);
    const TrajectoryHistory h2 = single_node_history(-5.0, 7.0);
    for (double t : {0.0, 0.5, 1.3, 1.999}) {
        const auto [du1, dv1] = retarded_pair_velocity(t, 0.4, -0.2, h1, T);
        const auto [du2, dv2] = retarded_pair_velocity(t, 0.4, -0.2, h2, T);
        CHECK(du1 == du2);  // stored history is irrelevant pre-delay
        CHECK(dv1 == dv2);
        CHECK(du1 == single_detector_velocity(0.4, t));
        CHECK(dv1 == single_detector_velocity(-0.2, t));
    }
}

TEST_CASE("the two RHS forms agree at the switch time") {
    // the delayed coordinate enters with weight t - T = 0 at t = T, so the
    // coupled form collapses to the independent one there
    const double T = 1.5;
    for (double v0 : {-2.0, 0.0, 3.3}) {
        const TrajectoryHistory h = single_node_history(0.9, v0);
        const auto [coupled_u, coupled_v] = retarded_pair_velocity(T, 0.9, -0.4, h, T);
        CHECK(coupled_u == doctest::Approx(single_detector_velocity(0.9, T)).epsilon(1e-12));
        CHECK(coupled_v ==
              doctest::Approx(single_detector_velocity(-0.4, T)).epsilon(1e-12));
    }
}

TEST_CASE("delayed lookups beyond the stored history are rejected") {
    const TrajectoryHistory h = single_node_history(0.0, 0.0);
    CHECK_THROWS_AS(retarded_pair_velocity(5.0, 0.1, 0.1, h, 2.0),
                    InsufficientHistoryError);
}

TEST_CASE("zero-delay integration matches the non-retarded integrator") {
    auto rng = SplitMix64::stream(43, 1);
    for (int k = 0; k < 5; ++k) {
        const auto [z0, z1] = rng.normal_pair();
        const double u0 = std::sqrt(0.5) * z0;
        const double v0 = std::sqrt(0.5) * z1;
        const TrajectoryHistory r =
            integrate_retarded(u0, v0, RetardedConfig::with_delay(base_cfg, 0.0));
        const TrajectoryHistory p = integrate_pair(u0, v0, base_cfg);
        REQUIRE(r.size() == p.size());
        double worst = 0.0;
        for (size_t i = 0; i < r.size(); ++i) {
            worst = std::max(worst, std::abs(r.u()[i] - p.u()[i]));
            worst = std::max(worst, std::abs(r.v()[i] - p.v()[i]));
        }
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("delays beyond twice the horizon reproduce solo runs bit for bit") {
    const RetardedConfig rc = RetardedConfig::with_delay(base_cfg, 20.0);
    const TrajectoryHistory paired = integrate_retarded(0.3, -0.4, rc);
    const TrajectoryHistory solo_u = integrate_single_detector(0.3, 10.0, paired.step());
    const TrajectoryHistory solo_v = integrate_single_detector(-0.4, 10.0, paired.step());
    REQUIRE(paired.size() == solo_u.size());
    for (size_t i = 0; i < paired.size(); ++i) {
        CHECK(paired.u()[i] == solo_u.u()[i]);
        CHECK(paired.v()[i] == solo_v.u()[i]);
    }
}

TEST_CASE("small delay with separated coordinates keeps the one-detector verdict") {
    const RetardedConfig rc = RetardedConfig::with_delay(base_cfg, 0.1);
    const TrajectoryHistory r = integrate_retarded(0.6, 0.5, rc);
    CHECK(r.final_u_dot() > 0.99);
    CHECK(r.final_v_dot() < 0.01);
    const TrajectoryHistory p = integrate_pair(0.6, 0.5, base_cfg);
    CHECK(p.final_u_dot() > 0.99);
    CHECK(p.final_v_dot() < 0.01);
}

TEST_CASE("pre-delay segments match solo runs bit for bit") {
    const double T = 1.0;
    const RetardedConfig rc = RetardedConfig::with_delay(base_cfg, T);
    const TrajectoryHistory paired = integrate_retarded(0.37, -0.62, rc);
    const TrajectoryHistory solo = integrate_single_detector(0.37, 10.0, paired.step());
    const size_t pre = static_cast<size_t>(T / paired.step());
    REQUIRE(pre > 100);
    for (size_t i = 0; i <= pre; ++i) {
        CHECK(paired.u()[i] == solo.u()[i]);
    }
    // causality: the partner's initial coordinate cannot matter before T
    const TrajectoryHistory other = integrate_retarded(0.37, 1.44, rc);
    for (size_t i = 0; i <= pre; ++i) {
        CHECK(paired.u()[i] == other.u()[i]);
    }
    CHECK(paired.u()[pre + 200] != other.u()[pre + 200]);
}

TEST_CASE("delay breaks the drift conservation law off the invariant set") {
    const double T = 1.0;
    const RetardedConfig rc = RetardedConfig::with_delay(base_cfg, T);

    // generic point: violated well beyond tolerance by t_final
    const TrajectoryHistory gen = integrate_retarded(0.7, -0.4, rc);
    const size_t n = gen.size() - 1;
    CHECK(std::abs(gen.u()[n] + gen.v()[n] - gen.times()[n] - 0.3) > 1e-3);

    // the origin rides the diagonal u = v = t/2; the diagonal is unstable, so
    // roundoff in the delayed exponent grows, but stays far below the generic
    // violation scale
    const TrajectoryHistory origin = integrate_retarded(0.0, 0.0, rc);
    const size_t switch_node = static_cast<size_t>(T / origin.step());
    for (size_t i = 0; i < origin.size(); i += 200) {
        CHECK(origin.u()[i] == origin.v()[i]);  // exact exchange symmetry
        const double drift = std::abs(origin.u()[i] + origin.v()[i] - origin.times()[i]);
        CHECK(drift < (i <= switch_node ? 1e-10 : 1e-3));
    }

    // nonzero symmetric starts violate it already before the delay
    const TrajectoryHistory sym = integrate_retarded(0.5, 0.5, rc);
    const size_t pre = static_cast<size_t>(T / sym.step()) - 1;
    CHECK(std::abs(sym.u()[pre] + sym.v()[pre] - sym.times()[pre] - 1.0) > 1e-3);
}

TEST_CASE("step adjustment makes the delay an exact node multiple") {
    const RetardedConfig rc = RetardedConfig::with_delay(base_cfg, 1.0 / 3.0);
    const TrajectoryHistory h = integrate_retarded(0.1, 0.2, rc);
    CHECK(h.step() <= base_cfg.dt + 1e-15);
    const double ratio = rc.T / h.step();
    CHECK(std::abs(ratio - std::round(ratio)) < 1e-9);
}

TEST_CASE("divergent inputs abort with the partial history attached") {
    const RetardedConfig rc = RetardedConfig::with_delay(base_cfg, 1.0);
    try {
        integrate_retarded(std::numeric_limits<double>::infinity(), 0.0, rc);
        FAIL("expected DdeIntegrationError");
    } catch (const DdeIntegrationError& e) {
        CHECK(e.partial.size() == 0);  // diverged on the very first sample
        CHECK(std::string(e.what()).find("integrate_retarded") != std::string::npos);
    }
}

TEST_CASE("retarded time of a static source is the light travel time") {
    auto fixed = [](double) { return 3.0; };
    const double tk = retarded_time(10.0, 7.0, fixed, -100.0, 100.0, 2.0);
    CHECK(tk == doctest::Approx(10.0 - 4.0 / 2.0).epsilon(1e-12));
}

TEST_CASE("retarded time approaches the emission time for fast signals") {
    auto wiggle = [](double t) { return std::sin(t); };
    const double tk = retarded_time(4.0, 2.5, wiggle, -100.0, 100.0, 1e9);
    CHECK(std::abs(tk - 4.0) < 1e-8);
}

TEST_CASE("retarded time of a receding linear source matches the closed form") {
    // source at x0 - w t moving away from the observer at x_i > x0
    const double x0 = -1.0, w = 0.5, c = 1.0, x_i = 2.0, t_i = 6.0;
    auto linear = [&](double t) { return x0 - w * t; };
    // |x_i - x_k(t_k)| = x_i - x0 + w t_k  =>  t_k = (t_i - (x_i - x0)/c)/(1 + w/c)
    const double expected = (t_i - (x_i - x0) / c) / (1.0 + w / c);
    const double tk = retarded_time(t_i, x_i, linear, -100.0, 100.0, c);
    CHECK(tk == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("retarded time is monotone in the observation time") {
    auto pos = [](double t) { return 0.4 * std::sin(0.7 * t); };
    double prev = -1e300;
    for (double ti = 0.0; ti <= 10.0; ti += 0.25) {
        const double tk = retarded_time(ti, 5.0, pos, -100.0, 100.0, 1.0);
        CHECK(tk >= prev);
        CHECK(tk <= ti);
        prev = tk;
    }
}

TEST_CASE("retarded time demands enough history") {
    auto fixed = [](double) { return 0.0; };
    CHECK_THROWS_AS(retarded_time(1.0, 50.0, fixed, 0.0, 1.0, 1.0),
                    InsufficientHistoryError);
}

TEST_CASE("retarded time reads stored trajectories") {
    TrajectoryHistory h(0.1, 101);
    for (int i = 0; i <= 100; ++i) {
        const double t = 0.1 * i;
        h.append(t, 3.0, 0.0, 0.0, 0.0);  // static source at x = 3
    }
    const double tk = retarded_time(8.0, 1.0, h, 4.0);
    CHECK(tk == doctest::Approx(8.0 - 2.0 / 4.0).epsilon(1e-10));
}

TEST_CASE("trajectory history validates its structure") {
    TrajectoryHistory h(0.5);
    CHECK_THROWS_AS(h.append(1.0, 0, 0, 0, 0), ConfigError);  // must start at 0
    h.append(0.0, 1.0, 2.0, 0.1, 0.2);
    CHECK_THROWS_AS(h.append(0.7, 0, 0, 0, 0), ConfigError);  // wrong spacing
    h.append(0.5, 1.1, 2.1, 0.1, 0.2);
    CHECK(h.query_u(0.0) == 1.0);
    CHECK(h.query_u(0.5) == 1.1);
    CHECK_THROWS_AS(h.query_u(0.51), InsufficientHistoryError);
    CHECK_THROWS_AS(h.query_u(-0.1), InsufficientHistoryError);
}

TEST_CASE("history interpolation is fourth order in the step") {
    auto build = [](double h, int n) {
        TrajectoryHistory hist(h, n + 1);
        for (int i = 0; i <= n; ++i) {
            const double t = h * i;
            hist.append(t, std::sin(t), std::cos(t), std::cos(t), -std::sin(t));
        }
        return hist;
    };
    auto worst = [&](double h) {
        const auto hist = build(h, static_cast<int>(2.0 / h));
        double w = 0.0;
        for (double t = 0.05; t < 1.9; t += 0.0317) {
            w = std::max(w, std::abs(hist.query_u(t) - std::sin(t)));
        }
        return w;
    };
    const double e1 = worst(0.1);
    const double e2 = worst(0.05);
    CHECK(e1 / e2 > 8.0);
}

TEST_CASE("wrongness parameter screens the detector scenarios") {
    const double hbar = 1.054571817e-34;
    const double c = 2.99792458e8;
    // macroscopic pointer: a gram at micrometre confinement
    const double pointer = wrongness_parameter(3.0, 1e-3, 1e-6, 5e-7, hbar, c);
    CHECK(pointer < 1e-20);
    // electron absorbing an optical photon at atomic confinement
    const double m_e = 9.1093837015e-31;
    const double electron = wrongness_parameter(3.0, m_e, 1e-10, 5e-7, hbar, c);
    CHECK(electron > 1e3);
    // value * d stays order 1e-5..1e-6 per metre of confinement
    const double per_d = wrongness_parameter(3.0, m_e, 1.0, 5e-7, hbar, c);
    CHECK(per_d > 1e-6);
    CHECK(per_d < 1e-4);
    // linear in l
    CHECK(wrongness_parameter(6.0, m_e, 1.0, 5e-7, hbar, c) ==
          doctest::Approx(2.0 * per_d).epsilon(1e-12));
    CHECK_THROWS_AS(wrongness_parameter(-1.0, 1.0, 1.0, 1.0, 1.0, 1.0), ConfigError);
}
