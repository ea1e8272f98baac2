#include <doctest.h>

#include <cmath>
#include <json.hpp>

#include "mds22/formulas.hpp"
#include "oracles.hpp"

using namespace mds22;

namespace {

int ceil_real(double x) { return static_cast<int>(std::ceil(x - 1e-9)); }

// Restatement of the optimum theorem with real-valued ceilings.
int beta_reference(int q, int n) {
    const bool odd = q % 2 == 1;
    if (n == 5 && (q == 3 || q == 4 || q >= 7)) return 4;
    if (n == 6 && (q == 4 || q >= 7)) return 5;
    if (n == 9 && ((odd && q >= 7) || (!odd && q >= 16))) return 9;
    if (n == 10 && ((odd && q >= 7 && q != 9) || (!odd && q >= 16))) return 10;
    return std::max(ceil_real((5.0 * n - 8) / 4), 2 * n - q - 3);
}

int gamma_reference(int q, int n) {
    if (n == 4) return 3;
    return std::max(ceil_real((4.0 * n - 6) / 3), 2 * n - q - 3);
}

}  // namespace

TEST_CASE("printed optima") {
    struct G {
        int q, n, beta;
    };
    const G goldens[] = {
        {2, 5, 5},   {3, 5, 4},   {4, 5, 4},   {5, 5, 5},   {5, 6, 6},   {3, 6, 6},   {4, 6, 5},
        {9, 9, 9},   {8, 9, 10},  {8, 10, 11}, {9, 10, 11}, {4, 9, 11},  {4, 10, 13}, {3, 9, 12},
        {3, 10, 14}, {5, 9, 10},  {5, 10, 12}, {32, 10, 10}, {7, 6, 5},
    };
    for (const auto& g : goldens) {
        CAPTURE(g.q);
        CAPTURE(g.n);
        CHECK(beta_opt(g.q, g.n) == g.beta);
    }
    for (int q : oracle::prime_powers(7, 81)) CHECK(beta_opt(q, 6) == 5);
    for (int q : oracle::prime_powers(2, 13)) CHECK(gamma_opt(q, 4) == 3);
    CHECK(gamma_opt(3, 7) == 8);
    CHECK(gamma_opt(2, 3) == 2);
}

TEST_CASE("thresholds") {
    CHECK(n_bw(7) == 10);
    CHECK(n_bw_tilde(3) == 6);
    CHECK(n_io(4) == 7);
    CHECK(n_io_tilde(4) == 8);
    for (int q : oracle::prime_powers(2, 81)) {
        CAPTURE(q);
        const int want_bw = q % 3 == 0 ? 4 * q / 3 : q % 3 == 1 ? (4 * q + 2) / 3 : 4 * (q + 1) / 3;
        CHECK(n_bw(q) == want_bw);
        CHECK(n_bw_tilde(q) == ceil_real(4.0 * (q + 1) / 3));
        CHECK(n_io(q) == static_cast<int>(std::floor(3.0 * (q + 1) / 2)));
        CHECK(n_io_tilde(q) == n_io(q) + (q % 2 == 0));
        // Threshold identities by residue.
        if (q % 3 == 0) CHECK(n_bw_tilde(q) == 4 * q / 3 + 2);
        if (q % 2 == 0) {
            CHECK(n_io(q) == 3 * q / 2 + 1);
            CHECK(n_io_tilde(q) == 3 * q / 2 + 2);
        }
    }
}

TEST_CASE("formulas match the reference over every admissible length") {
    for (int q : oracle::prime_powers(2, 13)) {
        for (int n = 3; n <= q * q + 1; ++n) {
            CAPTURE(q);
            CAPTURE(n);
            const int b = beta_opt(q, n), g = gamma_opt(q, n);
            REQUIRE(b == beta_reference(q, n));
            REQUIRE(g == gamma_reference(q, n));
            const Bounds bd = bounds(q, n);
            REQUIRE(b >= std::max(bd.beta_weak, bd.incidence));
            REQUIRE(b <= 2 * (n - 1));
            REQUIRE(g >= b);
            REQUIRE(g <= 2 * (n - 1));
            REQUIRE(bd.beta_weak == ceil_real((5.0 * n - 10) / 4));
            REQUIRE(bd.beta_sharp == ceil_real((5.0 * n - 8) / 4));
            REQUIRE(bd.gamma_weak == ceil_real((4.0 * n - 7) / 3));
            REQUIRE(bd.gamma_sharp == ceil_real((4.0 * n - 6) / 3));
            REQUIRE(bd.incidence == 2 * n - q - 3);
        }
    }
}

TEST_CASE("the max formula already equals the appendix values outside exceptions") {
    CHECK(beta_regime(8, 9) == BetaRegime::NOnly);
    CHECK(std::max(ceil_div(5 * 9 - 8, 4), 2 * 9 - 8 - 3) == 10);
    CHECK(beta_opt(8, 9) == 10);
}

TEST_CASE("regimes") {
    CHECK(beta_regime(7, 5) == BetaRegime::ExceptionA);
    CHECK(beta_regime(4, 6) == BetaRegime::ExceptionB);
    CHECK(beta_regime(16, 9) == BetaRegime::ExceptionC);
    CHECK(beta_regime(7, 10) == BetaRegime::ExceptionD);
    CHECK(beta_regime(9, 10) == BetaRegime::NOnly);
    CHECK(beta_regime(3, 10) == BetaRegime::QDependent);
    CHECK(std::string(regime_name(BetaRegime::ExceptionC)) == "exceptional_c");
}

TEST_CASE("input validation") {
    CHECK_ERRC(beta_opt(6, 5), Errc::OutOfRange);
    CHECK_ERRC(beta_opt(3, 2), Errc::OutOfRange);
    CHECK_ERRC(beta_opt(3, 11), Errc::OutOfRange);
    CHECK_ERRC(gamma_opt(1, 3), Errc::OutOfRange);
    CHECK_ERRC(bounds(10, 4), Errc::OutOfRange);
    CHECK_NOTHROW(beta_opt(3, 10));
    CHECK(parse_metric("bw") == Metric::Bandwidth);
    CHECK(parse_metric("io") == Metric::IO);
    CHECK_ERRC(parse_metric("both"), Errc::InvalidArgument);
    CHECK(ceil_div(-3, 4) == 0);
    CHECK(ceil_div(7, 4) == 2);
}

TEST_CASE("verdict JSON") {
    const OptimumVerdict v = verdict(7, 6);
    CHECK(v.beta_opt == 5);
    CHECK(v.constructible_bw);
    const auto j = nlohmann::json::parse(to_json(v));
    CHECK(j["beta_opt"] == 5);
    CHECK(j["gamma_opt"] == 6);
    CHECK(j["beta_regime"] == "exceptional_b");
    CHECK(j["thresholds"]["N_bw"] == 10);
    const OptimumVerdict far = verdict(5, 20);
    CHECK(far.beta_opt == 32);
    CHECK_FALSE(far.constructible_bw);
    CHECK_FALSE(far.constructible_io);
    CHECK_ERRC(verdict(5, 30), Errc::OutOfRange);
}
