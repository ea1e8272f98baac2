#include "mds22/formulas.hpp"

#include <algorithm>

#include <json.hpp>

#include "mds22/constructions.hpp"
#include "mds22/gf.hpp"

namespace mds22 {

const char* regime_name(BetaRegime r) {
    switch (r) {
        case BetaRegime::NOnly: return "n_only";
        case BetaRegime::QDependent: return "q_dependent";
        case BetaRegime::ExceptionA: return "exceptional_a";
        case BetaRegime::ExceptionB: return "exceptional_b";
        case BetaRegime::ExceptionC: return "exceptional_c";
        case BetaRegime::ExceptionD: return "exceptional_d";
    }
    return "?";
}

Metric parse_metric(const std::string& s) {
    if (s == "bw") return Metric::Bandwidth;
    if (s == "io") return Metric::IO;
    raise(Errc::InvalidArgument, "metric must be bw or io, got '" + s + "'");
}

const char* metric_name(Metric m) { return m == Metric::Bandwidth ? "bw" : "io"; }

void validate_qn(long long q, long long n) {
    if (q < 2 || q > 65536 || !prime_power(static_cast<std::uint64_t>(q)))
        raise(Errc::OutOfRange, "q=" + std::to_string(q) + " is not a supported prime power");
    if (n < 3 || n > q * q + 1)
        raise(Errc::OutOfRange, "n=" + std::to_string(n) + " outside 3..q^2+1 for q=" + std::to_string(q));
}

int ceil_div(int a, int b) {
    const int d = a / b, r = a % b;
    return (r != 0 && ((r > 0) == (b > 0))) ? d + 1 : d;
}

namespace {

bool exception_applies(int q, int n, BetaRegime& which, int& value) {
    const bool odd = q % 2 == 1;
    if (n == 5 && (q == 3 || q == 4 || q >= 7)) {
        which = BetaRegime::ExceptionA;
        value = 4;
        return true;
    }
    if (n == 6 && (q == 4 || q >= 7)) {
        which = BetaRegime::ExceptionB;
        value = 5;
        return true;
    }
    if (n == 9 && ((odd && q >= 7) || (!odd && q >= 16))) {
        which = BetaRegime::ExceptionC;
        value = 9;
        return true;
    }
    if (n == 10 && ((odd && q >= 7 && q != 9) || (!odd && q >= 16))) {
        which = BetaRegime::ExceptionD;
        value = 10;
        return true;
    }
    return false;
}

}  // namespace

int beta_opt(int q, int n) {
    validate_qn(q, n);
    BetaRegime r;
    int v;
    if (exception_applies(q, n, r, v)) return v;
    return std::max(ceil_div(5 * n - 8, 4), 2 * n - q - 3);
}

int gamma_opt(int q, int n) {
    validate_qn(q, n);
    if (n == 4) return 3;
    return std::max(ceil_div(4 * n - 6, 3), 2 * n - q - 3);
}

BetaRegime beta_regime(int q, int n) {
    validate_qn(q, n);
    BetaRegime r;
    int v;
    if (exception_applies(q, n, r, v)) return r;
    return 2 * n - q - 3 > ceil_div(5 * n - 8, 4) ? BetaRegime::QDependent : BetaRegime::NOnly;
}

int n_bw(int q) {
    switch (q % 3) {
        case 0: return 4 * q / 3;
        case 1: return (4 * q + 2) / 3;
        default: return 4 * (q + 1) / 3;
    }
}

int n_bw_tilde(int q) { return ceil_div(4 * (q + 1), 3); }

int n_io(int q) { return 3 * (q + 1) / 2; }

int n_io_tilde(int q) { return n_io(q) + (q % 2 == 0 ? 1 : 0); }

Bounds bounds(int q, int n) {
    validate_qn(q, n);
    Bounds b;
    b.beta_weak = ceil_div(5 * n - 10, 4);
    b.beta_sharp = ceil_div(5 * n - 8, 4);
    b.gamma_weak = ceil_div(4 * n - 7, 3);
    b.gamma_sharp = ceil_div(4 * n - 6, 3);
    b.incidence = 2 * n - q - 3;
    b.N_bw = n_bw(q);
    b.N_bw_tilde = n_bw_tilde(q);
    b.N_io = n_io(q);
    b.N_io_tilde = n_io_tilde(q);
    return b;
}

OptimumVerdict verdict(int q, int n) {
    OptimumVerdict v;
    v.q = q;
    v.n = n;
    v.beta_opt = beta_opt(q, n);
    v.gamma_opt = gamma_opt(q, n);
    v.beta_regime = beta_regime(q, n);
    v.constructible_bw = plan_route(q, n, Metric::Bandwidth) != Route::Unconstructible;
    v.constructible_io = plan_route(q, n, Metric::IO) != Route::Unconstructible;
    return v;
}

std::string to_json(const OptimumVerdict& v, int indent) {
    const Bounds b = bounds(v.q, v.n);
    nlohmann::json j;
    j["q"] = v.q;
    j["n"] = v.n;
    j["beta_opt"] = v.beta_opt;
    j["gamma_opt"] = v.gamma_opt;
    j["beta_regime"] = regime_name(v.beta_regime);
    j["constructible"] = {{"bw", v.constructible_bw}, {"io", v.constructible_io}};
    j["route"] = {{"bw", route_name(plan_route(v.q, v.n, Metric::Bandwidth))},
                  {"io", route_name(plan_route(v.q, v.n, Metric::IO))}};
    j["bounds"] = {{"beta_weak", b.beta_weak},   {"beta_sharp", b.beta_sharp}, {"gamma_weak", b.gamma_weak},
                   {"gamma_sharp", b.gamma_sharp}, {"incidence", b.incidence}};
    j["thresholds"] = {{"N_bw", b.N_bw}, {"N_bw_tilde", b.N_bw_tilde}, {"N_io", b.N_io}, {"N_io_tilde", b.N_io_tilde}};
    return j.dump(indent);
}

}  // namespace mds22
