#include <doctest.h>

#include <filesystem>
#include <json.hpp>
#include <random>
#include <set>

#include "mds22/constructions.hpp"
#include "mds22/search.hpp"
#include "oracles.hpp"

using namespace mds22;

namespace {

using M2 = std::array<Elem, 4>;

M2 mul(const Field& f, const M2& a, const M2& b) {
    return {f.add(f.mul(a[0], b[0]), f.mul(a[1], b[2])), f.add(f.mul(a[0], b[1]), f.mul(a[1], b[3])),
            f.add(f.mul(a[2], b[0]), f.mul(a[3], b[2])), f.add(f.mul(a[2], b[1]), f.mul(a[3], b[3]))};
}
M2 lin(const Field& f, Elem s, const M2& a, Elem t, const M2& b) {
    M2 r{};
    for (int i = 0; i < 4; ++i) r[i] = f.add(f.mul(s, a[i]), f.mul(t, b[i]));
    return r;
}
int rk(const Field& f, const M2& a) { return oracle::rank2x2(f, a[0], a[1], a[2], a[3]); }

const M2 kI = {1, 0, 0, 1};

// Row vector v times 2x2 T lies on the line spanned by u.
bool row_on_line(const Field& f, const std::array<Elem, 2>& v, const M2& T, const std::array<Elem, 2>& u) {
    const Elem a = f.add(f.mul(v[0], T[0]), f.mul(v[1], T[2]));
    const Elem b = f.add(f.mul(v[0], T[1]), f.mul(v[1], T[3]));
    return f.sub(f.mul(a, u[1]), f.mul(b, u[0])) == 0;
}

// T_1..T_4 of the (c, d) normal form found by exhaustive search: the unique
// invertible T_b with T_b[0][0] = 1 sending v_a into <u_a> for every a != b.
std::array<M2, 4> brute_normal_form(const Field& f, Elem c, Elem d) {
    const std::array<std::array<Elem, 2>, 4> v = {{{0, 1}, {1, 0}, {1, 1}, {1, c}}};
    const std::array<std::array<Elem, 2>, 4> u = {{{0, 1}, {1, 0}, {1, 1}, {1, d}}};
    std::array<M2, 4> out{};
    for (int b = 0; b < 4; ++b) {
        int found = 0;
        for (Elem t1 = 0; t1 < f.q(); ++t1)
            for (Elem t2 = 0; t2 < f.q(); ++t2)
                for (Elem t3 = 0; t3 < f.q(); ++t3) {
                    const M2 T = {1, t1, t2, t3};
                    if (rk(f, T) < 2) continue;
                    bool ok = true;
                    for (int a = 0; a < 4 && ok; ++a)
                        if (a != b) ok = row_on_line(f, v[a], T, u[a]);
                    if (ok) {
                        out[b] = T;
                        ++found;
                    }
                }
        REQUIRE(found == 1);
    }
    return out;
}

// Minimum over every X of a per-X cost, compared with a budget.
template <class Cost>
bool some_x_within(const Field& f, int budget, Cost cost) {
    const Elem q = f.q();
    for (Elem a = 0; a < q; ++a)
        for (Elem b = 0; b < q; ++b)
            for (Elem c = 0; c < q; ++c)
                for (Elem d = 0; d < q; ++d)
                    if (cost(M2{a, b, c, d}) <= budget) return true;
    return false;
}

std::vector<std::pair<int, int>> lex_pairs(int m) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) out.emplace_back(i, j);
    return out;
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "mds22_test_search";
    std::filesystem::create_directories(dir);
    const auto p = dir / name;
    std::filesystem::remove(p);
    return p;
}

}  // namespace

TEST_CASE("witness predicates and search") {
    // GF(32) has no element meeting the four trace conditions (checked over
    // the whole field); its template uses an explicit matrix C instead.
    const Field f32 = Field::of_order(32);
    CHECK(f32.abs_trace(f32.inv(2)) == 0);
    CHECK(f32.abs_trace(f32.inv(f32.mul(2, 3))) == 1);
    for (Elem s = 0; s < 32; ++s) CHECK_FALSE(even_witness_ok(f32, s));
    CHECK_ERRC(search_witness(WitnessFamily::Even, 32), Errc::NotFound);
    CHECK(even_witness_ok(Field::of_order(16), search_witness(WitnessFamily::Even, 16)));
    CHECK(char3_witness_ok(Field::of_order(27), 3));
    const Elem w13 = search_witness(WitnessFamily::Odd, 13);
    CHECK(odd_witness_ok(Field::of_order(13), w13));
    for (Elem c = 0; c < w13; ++c) CHECK_FALSE(odd_witness_ok(Field::of_order(13), c));
    CHECK(witness_family_for(27) == WitnessFamily::Char3);
    CHECK(witness_family_for(64) == WitnessFamily::Even);
    CHECK(witness_family_for(49) == WitnessFamily::Odd);
    CHECK(parse_witness_family("char3") == WitnessFamily::Char3);
    CHECK(std::string(witness_family_name(WitnessFamily::Odd)) == "odd");
    CHECK_ERRC(parse_witness_family("ternary"), Errc::InvalidArgument);
    CHECK_ERRC(search_witness(WitnessFamily::Even, 9), Errc::InvalidArgument);
    CHECK_ERRC(search_witness(WitnessFamily::Even, 8), Errc::OutOfRange);
    CHECK_ERRC(search_witness(WitnessFamily::Char3, 9), Errc::OutOfRange);
    CHECK_ERRC(search_witness(WitnessFamily::Odd, 5), Errc::OutOfRange);
}

TEST_CASE("every admissible witness yields an MDS template") {
    const Field f16 = Field::of_order(16);
    int admissible = 0;
    for (Elem s = 0; s < 16; ++s) {
        if (!even_witness_ok(f16, s)) continue;
        ++admissible;
        CHECK(template_code(template_params_even(f16, s)).code.is_mds());
    }
    CHECK(admissible > 0);
    const Field f13 = Field::of_order(13);
    for (Elem c = 0; c < 13; ++c)
        if (odd_witness_ok(f13, c)) CHECK(template_code(template_params_odd(f13, c)).code.is_mds());
}

TEST_CASE("ten-node condition sets match a direct evaluation") {
    std::mt19937_64 rng(41);
    for (unsigned q : {8u, 9u}) {
        CAPTURE(q);
        const Field f = Field::of_order(q);
        std::vector<std::pair<Elem, Elem>> outer;
        for (Elem c = 2; c < q; ++c)
            for (Elem d = 2; d < q; ++d)
                if (c != d) outer.emplace_back(c, d);
        const auto pairs = lex_pairs(static_cast<int>(q) - 1);
        const int P = static_cast<int>(pairs.size());
        for (int oi : {0, static_cast<int>(outer.size()) / 2, static_cast<int>(outer.size()) - 1}) {
            CAPTURE(oi);
            const auto [c, d] = outer[static_cast<std::size_t>(oi)];
            const auto T = brute_normal_form(f, c, d);
            for (char cond : {'A', 'D'}) {
                CAPTURE(cond);
                const auto listed = n10_condition_configs(q, oi, cond);
                std::set<std::array<int, 4>> in(listed.begin(), listed.end());
                auto holds = [&](const std::array<int, 4>& cfg) {
                    std::vector<M2> blocks;
                    for (int a = 0; a < 4; ++a) {
                        const auto [l1, l2] = pairs[static_cast<std::size_t>(cfg[a])];
                        blocks.push_back(lin(f, static_cast<Elem>(l1 + 1), T[a], 0, kI));
                        blocks.push_back(lin(f, static_cast<Elem>(l2 + 1), T[a], 0, kI));
                    }
                    return some_x_within(f, 10, [&](const M2& X) {
                        int s = rk(f, X);
                        for (const M2& W : blocks) {
                            s += cond == 'A' ? rk(f, lin(f, 1, kI, f.neg(1), mul(f, X, W))) : rk(f, lin(f, 1, W, f.neg(1), X));
                            if (s > 10) break;
                        }
                        return s;
                    });
                };
                // Listed configurations hold.
                for (int k = 0; k < 40 && !listed.empty(); ++k) CHECK(holds(listed[rng() % listed.size()]));
                // Sampled configurations agree in both directions.
                for (int k = 0; k < 60; ++k) {
                    std::array<int, 4> cfg{};
                    for (auto& p : cfg) p = static_cast<int>(rng() % static_cast<unsigned>(P));
                    CHECK(holds(cfg) == (in.count(cfg) > 0));
                }
            }
        }
    }
}

TEST_CASE("nine-node condition sets match a direct evaluation") {
    const Field f = Field::of_order(8);
    std::array<std::vector<M2>, 3> fam;
    for (Elem x = 2; x < 8; ++x)
        for (Elem lam = 1; lam < 8; ++lam) {
            fam[0].push_back(lin(f, lam, M2{1, 0, x, f.add(1, x)}, 0, kI));
            fam[1].push_back(lin(f, lam, M2{1, x, 0, f.add(1, x)}, 0, kI));
            fam[2].push_back(lin(f, lam, M2{1, 0, 0, x}, 0, kI));
        }
    const auto pairs = lex_pairs(42);
    const int P = static_cast<int>(pairs.size());
    std::mt19937_64 rng(42);
    for (int p1 : {0, 77, 860}) {
        for (char cond : {'B', 'A', 'D'}) {
            CAPTURE(p1);
            CAPTURE(cond);
            const auto listed = n9q8_condition_configs(p1, cond);
            std::set<std::array<int, 2>> in(listed.begin(), listed.end());
            auto holds = [&](const std::array<int, 2>& cfg) {
                std::vector<M2> blocks;
                const int ps[3] = {p1, cfg[0], cfg[1]};
                for (int k = 0; k < 3; ++k) {
                    blocks.push_back(fam[k][static_cast<std::size_t>(pairs[static_cast<std::size_t>(ps[k])].first)]);
                    blocks.push_back(fam[k][static_cast<std::size_t>(pairs[static_cast<std::size_t>(ps[k])].second)]);
                }
                return some_x_within(f, 9, [&](const M2& X) {
                    const M2 IX = lin(f, 1, kI, f.neg(1), X);
                    int s = rk(f, X) + rk(f, IX);
                    for (const M2& W : blocks) {
                        if (cond == 'B') s += rk(f, lin(f, 1, X, 1, mul(f, IX, W)));
                        else if (cond == 'A') s += rk(f, lin(f, 1, kI, f.neg(1), mul(f, X, W)));
                        else s += rk(f, lin(f, 1, W, f.neg(1), X));
                        if (s > 9) break;
                    }
                    return s;
                });
            };
            for (int k = 0; k < 30 && !listed.empty(); ++k) CHECK(holds(listed[rng() % listed.size()]));
            for (int k = 0; k < 60; ++k) {
                const std::array<int, 2> cfg = {static_cast<int>(rng() % static_cast<unsigned>(P)),
                                                static_cast<int>(rng() % static_cast<unsigned>(P))};
                CHECK(holds(cfg) == (in.count(cfg) > 0));
            }
        }
    }
    CHECK_ERRC(n9q8_condition_configs(P, 'A'), Errc::IndexOutOfRange);
    CHECK_ERRC(n9q8_condition_configs(0, 'C'), Errc::InvalidArgument);
    CHECK_ERRC(n10_condition_configs(8, 0, 'B'), Errc::InvalidArgument);
    CHECK_ERRC(n10_condition_configs(8, 42, 'A'), Errc::IndexOutOfRange);
    CHECK_ERRC(n10_condition_configs(7, 0, 'A'), Errc::UnsupportedQ);
    CHECK_ERRC(exhaust_n10(11), Errc::UnsupportedQ);
}

TEST_CASE("exhaustive searches over GF(8) and GF(9)") {
    const SearchVerdict n10q8 = exhaust_n10(8);
    CHECK(n10q8.complete);
    CHECK(n10q8.outer_total == 30);
    CHECK(n10q8.passed == 0);
    CHECK(n10q8.feasible.at("A") > 0);
    CHECK(n10q8.feasible.at("D") > 0);
    CHECK(n10q8.mds_survivors > 0);
    const SearchVerdict n10q9 = exhaust_n10(9);
    CHECK(n10q9.complete);
    CHECK(n10q9.passed == 0);
    CHECK(n10q9.mds_survivors > 0);
    const SearchVerdict n9 = exhaust_n9_q8();
    CHECK(n9.complete);
    CHECK(n9.outer_total == 861);
    CHECK(n9.passed == 0);
    CHECK(n9.mds_survivors > 0);
    for (const char* k : {"A", "B", "D"}) CHECK(n9.feasible.at(k) > 0);
    const auto j = nlohmann::json::parse(to_json(n9));
    CHECK(j["case"] == "n9q8");
    CHECK(j["passed_configs"] == 0);
}

TEST_CASE("checkpointed searches resume to the same verdict") {
    const auto path = scratch("n10q8.json");
    SearchOptions opt;
    opt.checkpoint = path.string();
    opt.max_steps = 10;
    const SearchVerdict part = exhaust_n10(8, opt);
    CHECK_FALSE(part.complete);
    CHECK(part.outer_done == 10);
    CHECK(std::filesystem::exists(path));
    opt.max_steps = 0;
    long long calls = 0;
    opt.progress = [&](long long, long long) { ++calls; };
    const SearchVerdict rest = exhaust_n10(8, opt);
    CHECK(rest.complete);
    CHECK(calls >= 20);
    const SearchVerdict full = exhaust_n10(8);
    CHECK(rest.configs == full.configs);
    CHECK(rest.mds_survivors == full.mds_survivors);
    CHECK(rest.feasible == full.feasible);
    CHECK(rest.passed == full.passed);
    // A finished checkpoint returns its verdict without recomputing.
    const SearchVerdict again = exhaust_n10(8, opt);
    CHECK(again.complete);
    CHECK(again.configs == full.configs);
    // A checkpoint written by another search is refused.
    CHECK_THROWS_AS(exhaust_n10(9, opt), Error);
}

TEST_CASE("five-node exhaustive minimum over GF(5)" * doctest::test_suite("slow")) {
    const SearchVerdict v = exhaust_n5_q5();
    CHECK(v.complete);
    CHECK(v.min_beta == 5);
    CHECK(v.codes_at_min > 0);
    CHECK(v.codes_at_min <= v.configs);
    CHECK(v.passed == 0);
}
