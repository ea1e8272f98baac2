#pragma once

// Closed-form optimal repair bandwidth / repair I/O of (n, n-2, 2) MDS array
// codes over F_q, the lower bounds they are built from, and the length
// thresholds separating the short and long regimes.

#include <string>

namespace mds22 {

enum class BetaRegime { NOnly, QDependent, ExceptionA, ExceptionB, ExceptionC, ExceptionD };
const char* regime_name(BetaRegime r);

enum class Metric { Bandwidth, IO };
Metric parse_metric(const std::string& s);  // "bw" or "io"
const char* metric_name(Metric m);

// Throws OutOfRange unless q is a prime power and 3 <= n <= q^2 + 1.
void validate_qn(long long q, long long n);

int ceil_div(int a, int b);

int beta_opt(int q, int n);
int gamma_opt(int q, int n);
BetaRegime beta_regime(int q, int n);

// Short-length bandwidth threshold: 4q/3, (4q+2)/3 or 4(q+1)/3 by q mod 3.
int n_bw(int q);
// Long-length bandwidth threshold ceil(4(q+1)/3).
int n_bw_tilde(int q);
// Short-length I/O threshold floor(3(q+1)/2).
int n_io(int q);
// Long-length I/O threshold: n_io(q), plus one when q is even.
int n_io_tilde(int q);

struct Bounds {
    int beta_weak = 0;     // ceil((5n-10)/4), valid for every n
    int beta_sharp = 0;    // ceil((5n-8)/4), valid for n not in {5,6,9,10}
    int gamma_weak = 0;    // ceil((4n-7)/3), valid for every n
    int gamma_sharp = 0;   // ceil((4n-6)/3), valid for n != 4
    int incidence = 0;     // 2n-q-3
    int N_bw = 0, N_bw_tilde = 0, N_io = 0, N_io_tilde = 0;
};
Bounds bounds(int q, int n);

struct OptimumVerdict {
    int q = 0, n = 0;
    int beta_opt = 0, gamma_opt = 0;
    BetaRegime beta_regime = BetaRegime::NOnly;
    bool constructible_bw = false;
    bool constructible_io = false;
};
OptimumVerdict verdict(int q, int n);
std::string to_json(const OptimumVerdict& v, int indent = -1);

}  // namespace mds22
