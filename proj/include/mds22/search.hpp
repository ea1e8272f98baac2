#pragma once

// Finite searches: witness parameters for the 10-node template families and
// the exhaustive optimality / non-existence verifications for small fields.
//
// The exhaustive searches stream through their outer loop and can persist
// progress to a JSON checkpoint so an interrupted run resumes where it
// stopped. Completed runs also keep their verdict in the checkpoint, so a
// resume of a finished search returns immediately.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mds22/gf.hpp"

namespace mds22 {

enum class WitnessFamily { Even, Char3, Odd };
WitnessFamily parse_witness_family(const std::string& s);  // even | char3 | odd
const char* witness_family_name(WitnessFamily f);
// Family matching the characteristic of q (odd means characteristic >= 5).
WitnessFamily witness_family_for(unsigned q);

// Predicates defining each family's admissible parameters.
bool even_witness_ok(const Field& f, Elem s);
bool char3_witness_ok(const Field& f, Elem s);
bool odd_witness_ok(const Field& f, Elem c);

// Smallest-encoded admissible parameter. Raises InvalidArgument when the
// family does not match the characteristic, OutOfRange below the family's
// range (even: q >= 16, char3: q >= 27, odd: q >= 7) and NotFound when no
// element qualifies.
Elem search_witness(WitnessFamily family, unsigned q);

struct SearchOptions {
    // Checkpoint file; empty disables checkpointing.
    std::string checkpoint;
    // Save progress every this many outer iterations.
    int checkpoint_every = 1;
    // Stop after this many outer iterations in this call (0 = run to the
    // end). Used by tests to exercise resume.
    long long max_steps = 0;
    // Progress callback (outer index, outer total).
    std::function<void(long long, long long)> progress;
};

struct SearchVerdict {
    std::string name;           // n5q5 | n10q8 | n10q9 | n9q8
    bool complete = false;      // false when stopped early via max_steps
    long long outer_done = 0, outer_total = 0;
    long long configs = 0;       // configurations enumerated
    long long mds_survivors = 0; // configurations passing the MDS filter
    long long passed = 0;        // configurations passing every condition
    // Configurations satisfying each repair condition on its own (before the
    // MDS filter), keyed by condition name.
    std::map<std::string, long long> feasible;
    int min_beta = -1;           // n5q5 only
    long long codes_at_min = 0;  // n5q5 only
    double runtime_s = 0;        // accumulated over resumed runs
    std::string checkpoint;
};

std::string to_json(const SearchVerdict& v, int indent = -1);

// Every admissible pair {A, B} of 2x2 matrices over GF(5) (A, B, A-I, B-I,
// A-B invertible) gives the code [I;I], [I;A], [I;B], [I;0], [0;I]; the
// minimum of beta over all of them.
SearchVerdict exhaust_n5_q5(const SearchOptions& opt = {});
// Normal-form 10-node codes over GF(8) or GF(9) with beta = 10.
SearchVerdict exhaust_n10(unsigned q, const SearchOptions& opt = {});
// Normal-form 9-node codes over GF(8) with beta = 9.
SearchVerdict exhaust_n9_q8(const SearchOptions& opt = {});

// Configurations meeting one repair condition within one outer step, so the
// pruned enumeration can be checked against a direct evaluation.
//
// Ten-node search: outer step i is the i-th pair (c, d) of distinct elements
// of F_q minus {0, 1} in encoding order; T_1..T_4 follow the (c, d) normal
// form. A configuration {p1, p2, p3, p4} picks the p_a-th lambda pair (in
// lexicographic order of index pairs l < l', lambda = l + 1) for T_a.
// condition is 'A' (repair of [I;0]) or 'D' (repair of [0;I]).
std::vector<std::array<int, 4>> n10_condition_configs(unsigned q, int outer, char condition);
// Nine-node search: family k has element 7(x-2) + (lambda-1) for x in
// 2..7 and lambda in 1..7; {p2, p3} are pair indices for families 2 and 3
// with p1 fixed for family 1. condition is 'B', 'A' or 'D' (repair of
// [I;I], [I;0], [0;I]).
std::vector<std::array<int, 2>> n9q8_condition_configs(int p1, char condition);

}  // namespace mds22
