#include <doctest.h>

#include <json.hpp>
#include <random>

#include "mds22/constructions.hpp"
#include "mds22/formulas.hpp"
#include "mds22/repair.hpp"
#include "oracles.hpp"

using namespace mds22;

TEST_CASE("subspace counts") {
    CHECK(count_subspaces(Field::of_order(3)) == 130);
    CHECK(count_subspaces(Field::of_order(2)) == 35);
    // The Gaussian binomial [4 choose 2]_q, counted independently as the
    // number of ordered bases of 2-planes divided by |GL_2|.
    for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
        const std::uint64_t q4 = q * q * q * q;
        const std::uint64_t bases = (q4 - 1) * (q4 - q);
        const std::uint64_t gl2 = (q * q - 1) * (q * q - q);
        CHECK(count_subspaces(Field::of_order(static_cast<unsigned>(q))) == bases / gl2);
    }
}

TEST_CASE("all evaluators agree with brute force over every repair matrix") {
    std::mt19937_64 rng(31);
    for (unsigned q : {2u, 3u}) {
        const Field f = Field::of_order(q);
        for (int k = 0; k < (q == 2 ? 12 : 6); ++k) {
            const int n = q == 2 ? 3 + static_cast<int>(rng() % 3) : 3 + static_cast<int>(rng() % 4);
            const ArrayCode c = oracle::random_mds_code(f, n, rng);
            const NodeOptima m = optima_matrix(c), s = optima_subspace(c), inc = optima_incidence(c);
            for (int i = 0; i < n; ++i) {
                CAPTURE(i);
                const oracle::BruteNode b = oracle::brute_node(c, i);
                CHECK(m.beta[i].value == b.beta);
                CHECK(m.gamma[i].value == b.gamma);
                CHECK(s.beta[i].value == b.beta);
                CHECK(s.gamma[i].value == b.gamma);
                CHECK(inc.beta[i].value == b.beta);
                CHECK(inc.gamma[i].value == b.gamma);
                // The matrix evaluator reports the lexicographically first
                // minimizing normalized repair matrix.
                const auto& e = m.beta[i].witness.matrix.entries();
                CHECK(std::equal(e.begin(), e.end(), b.beta_witness.begin()));
            }
        }
    }
}

TEST_CASE("single-node entry points") {
    std::mt19937_64 rng(32);
    const Field f = Field::of_order(4);
    const ArrayCode c = oracle::random_mds_code(f, 6, rng);
    const NodeOptima m = optima_matrix(c);
    for (int i = 0; i < c.n(); ++i) {
        CHECK(beta_node_matrix(c, i).value == m.beta[i].value);
        CHECK(beta_node_subspace(c, i).value == m.beta[i].value);
        CHECK(gamma_node(c, i, Method::Matrix).value == m.gamma[i].value);
        CHECK(gamma_node(c, i, Method::Subspace).value == m.gamma[i].value);
    }
    CHECK_ERRC(beta_node_matrix(c, 6), Errc::IndexOutOfRange);
    CHECK_ERRC(gamma_node(c, 0, Method::Both), Errc::InvalidArgument);
}

TEST_CASE("witness schemes are consistent") {
    std::mt19937_64 rng(33);
    for (unsigned q : {4u, 5u}) {
        const Field f = Field::of_order(q);
        const ArrayCode c = oracle::random_mds_code(f, 6, rng);
        for (Method meth : {Method::Matrix, Method::Subspace, Method::Incidence}) {
            const CostReport r = cost_report(c, meth);
            for (int i = 0; i < c.n(); ++i) {
                for (const RepairScheme* s : {&r.beta_witness[i], &r.gamma_witness[i]}) {
                    CHECK(s->node == i);
                    CHECK(s->matrix * c.block(i) == Mat::identity(f, 2));
                    CHECK(s->kernel.cols() == 2);
                    CHECK((s->matrix * s->kernel).is_zero());
                    CHECK(skew(s->kernel, c.block(i)));
                    CHECK(s->per_helper.size() == static_cast<std::size_t>(c.n() - 1));
                    for (const auto& h : s->per_helper) {
                        CHECK(h.rank >= 1);  // MDS: W never contains a whole helper
                        CHECK(h.nz >= h.rank);
                    }
                }
                CHECK(r.beta_witness[i].bandwidth() == r.beta_i[i]);
                CHECK(r.gamma_witness[i].io() == r.gamma_i[i]);
                CHECK(r.gamma_i[i] >= r.beta_i[i]);
                CHECK(r.alpha_i[i] == 2 * (c.n() - 1) - r.beta_i[i]);
                CHECK(r.lambda_i[i] == 2 * (c.n() - 1) - r.gamma_i[i]);
            }
        }
    }
}

TEST_CASE("make_scheme and repair_matrix_for_subspace") {
    const Field f = Field::of_order(5);
    std::mt19937_64 rng(34);
    const ArrayCode c = oracle::random_mds_code(f, 5, rng);
    const Mat M = Mat::from_ints(f, {{1, 0, 0, 0}, {0, 1, 0, 0}});
    const Mat W = Mat::from_ints(f, {{0, 0}, {0, 0}, {1, 0}, {0, 1}});
    for (int i = 0; i < c.n(); ++i) {
        if (!skew(W, c.block(i))) continue;
        const RepairScheme s = make_scheme(c, i, M);
        CHECK(s.matrix * c.block(i) == Mat::identity(f, 2));
        CHECK(colspace_canonical(s.kernel) == colspace_canonical(W));
        CHECK(repair_matrix_for_subspace(c, i, W) == s.matrix);
    }
    const Mat bad = Mat::zeros(f, 2, 4);
    CHECK_ERRC(make_scheme(c, 0, bad), Errc::Singular);
}

TEST_CASE("non-MDS inputs are rejected") {
    const Field f3 = Field::of_order(3);
    const Mat a = Mat::from_ints(f3, {{1, 0}, {0, 1}, {0, 0}, {0, 0}});
    const Mat b = Mat::from_ints(f3, {{0, 0}, {0, 0}, {1, 0}, {0, 1}});
    const ArrayCode c(f3, {a, a, b});
    CHECK_ERRC(cost_report(c), Errc::NotMds);
    CHECK_ERRC(optima_subspace(c), Errc::NotMds);
    CHECK_ERRC(optima_incidence(c), Errc::NotMds);
    CHECK_ERRC(beta_node_matrix(c, 0), Errc::NotMds);
}

TEST_CASE("named optima") {
    // q = 2, n = 3 short code: beta = 2.
    CHECK(cost_report(construct_short_bw(2, 3).code, Method::Both).beta == 2);
    // q = 3, n = 4 short code: beta = 3.
    CHECK(cost_report(construct_short_bw(3, 4).code, Method::Both).beta == 3);
    // Four-node I/O codes of both parities: gamma = 3.
    for (int q : {2, 3, 4, 5, 7}) CHECK(cost_report(construct_n4_io(q).code, Method::Both).gamma == 3);
    // The q = 2, n = 5 spread: gamma = beta = 5.
    const CostReport spread = cost_report(construct_spread_q2_n5().code, Method::Both);
    CHECK(spread.gamma == 5);
    CHECK(spread.beta == 5);
    // The nine-node GF(9) code: every beta_i <= 9 and beta = 9.
    const CostReport n9 = cost_report(construct_n9_n10(9, 9).code, Method::Both);
    CHECK(n9.beta == 9);
    for (int b : n9.beta_i) CHECK(b <= 9);
}

TEST_CASE("lower bounds on random MDS codes") {
    std::mt19937_64 rng(35);
    for (int q : {2, 3, 4, 5}) {
        const Field f = Field::of_order(static_cast<unsigned>(q));
        for (int n = 3; n <= std::min(8, q * q + 1); ++n) {
            for (int k = 0; k < 6; ++k) {
                const ArrayCode c = oracle::random_mds_code(f, n, rng);
                const CostReport r = cost_report(c, Method::Both);
                const Bounds bd = bounds(q, n);
                CAPTURE(q);
                CAPTURE(n);
                CHECK(r.beta >= std::max(bd.beta_weak, bd.incidence));
                CHECK(r.gamma >= std::max(bd.gamma_weak, bd.incidence));
                if (n != 5 && n != 6 && n != 9 && n != 10) CHECK(r.beta >= bd.beta_sharp);
                if (n != 4) CHECK(r.gamma >= bd.gamma_sharp);
                CHECK(r.beta >= beta_opt(q, n));
                CHECK(r.gamma >= gamma_opt(q, n));
            }
        }
    }
}

TEST_CASE("cost report JSON and method names") {
    const CostReport r = cost_report(construct_n4_io(3).code, Method::Both);
    const auto j = nlohmann::json::parse(to_json(r));
    CHECK(j["gamma"] == 3);
    CHECK(j["n"] == 4);
    CHECK(j["methods"] == nlohmann::json::array({"matrix", "subspace"}));
    CHECK(j["witnesses"].size() == 4);
    CHECK(j["witnesses"][0]["node"] == 1);
    CHECK(j["witnesses"][0]["beta"]["per_helper"].size() == 3);
    for (const char* s : {"matrix", "subspace", "both", "incidence", "auto"})
        CHECK(std::string(method_name(parse_method(s))) == s);
    CHECK_ERRC(parse_method("fast"), Errc::InvalidArgument);
    // Auto runs both exhaustive evaluators for small fields.
    CHECK(cost_report(construct_n4_io(3).code).methods.size() == 2);
    CHECK(cost_report(construct_n4_io(37).code).methods == std::vector<std::string>{"incidence"});
}
