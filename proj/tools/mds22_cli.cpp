// Command-line front end: formula evaluation, constructions, MDS checks,
// repair cost computation, the optimum sweep and the finite searches.
//
// Machine output (JSON or CSV) goes to standard output, diagnostics to
// standard error. Exit codes: 0 success, 1 negative result (non-MDS file,
// sweep mismatch, witness not found, runtime failure), 2 argument or
// validation error, 3 unconstructible length, 4 repair oracles disagree.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "mds22/constructions.hpp"
#include "mds22/formulas.hpp"
#include "mds22/repair.hpp"
#include "mds22/search.hpp"

using namespace mds22;
using nlohmann::json;

namespace {

constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnconstructible = 3;
constexpr int kExitDisagreement = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::InvalidArgument, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int exit_code_for(Errc e) {
    switch (e) {
        case Errc::Unconstructible: return kExitUnconstructible;
        case Errc::OracleDisagreement: return kExitDisagreement;
        case Errc::NotFound: return kExitNegative;
        default: return kExitUsage;
    }
}

// ---------------------------------------------------------------------------

int run_formula(int q, int n, const std::string& metric) {
    const OptimumVerdict v = verdict(q, n);
    json j = json::parse(to_json(v));
    if (metric != "both") {
        j["metric"] = metric;
        j["value"] = parse_metric(metric) == Metric::Bandwidth ? v.beta_opt : v.gamma_opt;
    }
    std::cout << j.dump() << "\n";
    return 0;
}

int run_construct(int q, int n, const std::string& metric, const std::string& out) {
    try {
        const Construction c = construct_optimal(q, n, parse_metric(metric));
        const std::string text = to_json(c);
        if (out.empty()) {
            std::cout << text << "\n";
        } else {
            std::ofstream f(out, std::ios::binary);
            if (!f) raise(Errc::InvalidArgument, "cannot write " + out);
            f << text << "\n";
            std::cerr << "wrote " << c.family << " code (q=" << q << ", n=" << n << ") to " << out << "\n";
        }
        return 0;
    } catch (const Error& e) {
        if (e.code() != Errc::Unconstructible) throw;
        json j = {{"error", "Unconstructible"}, {"q", q}, {"n", n}, {"metric", metric}};
        if (e.formula_value) j["formula"] = *e.formula_value;
        std::cout << j.dump() << "\n";
        std::cerr << e.what() << "\n";
        return kExitUnconstructible;
    }
}

int run_verify(const std::string& file) {
    const ArrayCode c = from_json(read_file(file));
    const MdsCheck m = c.check_mds();
    json j = {{"mds", m.ok}, {"q", c.field().q()}, {"n", c.n()}};
    if (!m.ok) j["singular_pair"] = {m.i + 1, m.j + 1};
    std::cout << j.dump() << "\n";
    return m.ok ? 0 : kExitNegative;
}

int run_cost(const std::string& file, const std::string& metric, const std::string& method) {
    const ArrayCode c = from_json(read_file(file));
    if (!c.is_mds()) raise(Errc::NotMds, "input code is not MDS");
    const CostReport r = cost_report(c, parse_method(method));
    json j = json::parse(to_json(r));
    if (metric == "bw") {
        for (const char* k : {"gamma", "gamma_i", "lambda_i"}) j.erase(k);
    } else if (metric == "io") {
        for (const char* k : {"beta", "beta_i", "alpha_i"}) j.erase(k);
    }
    std::cout << j.dump() << "\n";
    return 0;
}

// One supported (q, n, metric) cell of the sweep.
struct Cell {
    int q, n;
    Metric metric;
    int formula = 0, measured = -1;
    std::string error;
};

int run_sweep(int qmax, bool slow, int jobs) {
    if (qmax < 2) raise(Errc::InvalidArgument, "--qmax must be at least 2");
    std::vector<Cell> cells;
    for (int q = 2; q <= qmax; ++q) {
        if (!prime_power(static_cast<std::uint64_t>(q))) continue;
        for (int n = 3; n <= std::min(q * q + 1, 2 * q + 2); ++n)
            for (Metric m : {Metric::Bandwidth, Metric::IO})
                if (plan_route(q, n, m) != Route::Unconstructible) cells.push_back({q, n, m});
    }
    std::atomic<std::size_t> next{0};
    std::mutex log_mu;
    auto worker = [&] {
        for (std::size_t k = next++; k < cells.size(); k = next++) {
            Cell& c = cells[k];
            c.formula = c.metric == Metric::Bandwidth ? beta_opt(c.q, c.n) : gamma_opt(c.q, c.n);
            // Both exhaustive oracles for small fields (or everywhere with
            // --slow); the incidence evaluator beyond.
            const Method method = (slow || c.q <= 9) ? Method::Both : Method::Incidence;
            try {
                const CostReport r = cost_report(construct_optimal(c.q, c.n, c.metric).code, method);
                c.measured = c.metric == Metric::Bandwidth ? r.beta : r.gamma;
            } catch (const Error& e) {
                c.error = e.what();
            }
            const std::lock_guard<std::mutex> lock(log_mu);
            std::cerr << "sweep q=" << c.q << " n=" << c.n << " " << metric_name(c.metric) << " done\n";
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    int mismatches = 0;
    std::cout << "q,n,metric,formula,measured,match\n";
    for (const Cell& c : cells) {
        const bool ok = c.error.empty() && c.measured == c.formula;
        mismatches += !ok;
        std::cout << c.q << "," << c.n << "," << metric_name(c.metric) << "," << c.formula << "," << c.measured << ","
                  << (ok ? "true" : "false") << "\n";
        if (!c.error.empty()) std::cerr << "q=" << c.q << " n=" << c.n << ": " << c.error << "\n";
    }
    std::cerr << cells.size() << " cells, " << mismatches << " mismatches\n";
    return mismatches == 0 ? 0 : kExitNegative;
}

std::string default_checkpoint(const std::string& name) {
    const char* dir = std::getenv("MDS22_CACHE_DIR");
    if (dir == nullptr || *dir == '\0') return {};
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / (name + ".json")).string();
}

int run_search(const std::string& which, const std::string& resume, const std::string& family, int q) {
    if (which == "witness") {
        if (q <= 0) raise(Errc::InvalidArgument, "search witness needs --q");
        const WitnessFamily fam = family.empty() ? witness_family_for(static_cast<unsigned>(q)) : parse_witness_family(family);
        json j = {{"case", "witness"}, {"family", witness_family_name(fam)}, {"q", q}};
        try {
            j["parameter"] = search_witness(fam, static_cast<unsigned>(q));
            j["found"] = true;
        } catch (const Error& e) {
            if (e.code() != Errc::NotFound) throw;
            j["found"] = false;
            std::cout << j.dump() << "\n";
            return kExitNegative;
        }
        std::cout << j.dump() << "\n";
        return 0;
    }
    SearchOptions opt;
    opt.checkpoint = resume.empty() ? default_checkpoint(which) : resume;
    opt.progress = [&](long long done, long long total) {
        if (done % 64 == 0 || done == total) std::cerr << which << ": " << done << "/" << total << "\n";
    };
    SearchVerdict v;
    if (which == "n5q5") v = exhaust_n5_q5(opt);
    else if (which == "n10q8") v = exhaust_n10(8, opt);
    else if (which == "n10q9") v = exhaust_n10(9, opt);
    else if (which == "n9q8") v = exhaust_n9_q8(opt);
    else raise(Errc::InvalidArgument, "unknown search '" + which + "'");
    std::cout << to_json(v) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal-repair (n, n-2, 2) MDS array codes over finite fields"};
    app.require_subcommand(1);

    int q = 0, n = 0, qmax = 0, jobs = 1;
    std::string metric, method = "both", out, file, resume, which, family;
    bool slow = false;

    auto* formula = app.add_subcommand("formula", "Print the optimum verdict for (q, n) as JSON");
    formula->add_option("--q", q, "Field size (prime power)")->required();
    formula->add_option("--n", n, "Code length")->required();
    formula->add_option("--metric", metric, "bw, io or both")->default_val("both")->check(CLI::IsMember({"bw", "io", "both"}));

    auto* construct = app.add_subcommand("construct", "Build a code attaining the optimum and emit its JSON");
    construct->add_option("--q", q, "Field size (prime power)")->required();
    construct->add_option("--n", n, "Code length")->required();
    construct->add_option("--metric", metric, "bw or io")->required()->check(CLI::IsMember({"bw", "io"}));
    construct->add_option("--out", out, "Output file (default: standard output)");

    auto* verify = app.add_subcommand("verify", "Check that a code JSON file is MDS");
    verify->add_option("file", file, "Code JSON file")->required();

    auto* cost = app.add_subcommand("cost", "Exact repair bandwidth and I/O of a code JSON file");
    cost->add_option("file", file, "Code JSON file")->required();
    cost->add_option("--metric", metric, "bw, io or both")->default_val("both")->check(CLI::IsMember({"bw", "io", "both"}));
    cost->add_option("--method", method, "matrix, subspace, both, incidence or auto")
        ->default_val("both")
        ->check(CLI::IsMember({"matrix", "subspace", "both", "incidence", "auto"}));

    auto* sweep = app.add_subcommand("sweep", "Compare constructions with the formulas for every q <= qmax (CSV)");
    sweep->add_option("--qmax", qmax, "Largest field size")->required();
    sweep->add_flag("--slow", slow, "Run both exhaustive oracles for every q");
    sweep->add_option("--jobs", jobs, "Worker threads")->default_val(1)->check(CLI::PositiveNumber);

    auto* search = app.add_subcommand("search", "Witness search or an exhaustive verification");
    search->add_option("case", which, "witness, n5q5, n10q8, n10q9 or n9q8")
        ->required()
        ->check(CLI::IsMember({"witness", "n5q5", "n10q8", "n10q9", "n9q8"}));
    search->add_option("--resume", resume, "Checkpoint file (default: $MDS22_CACHE_DIR/<case>.json)");
    search->add_option("--q", q, "Field size for the witness search");
    search->add_option("--family", family, "Witness family: even, char3 or odd (default: by characteristic)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*formula) return run_formula(q, n, metric);
        if (*construct) return run_construct(q, n, metric, out);
        if (*verify) return run_verify(file);
        if (*cost) return run_cost(file, metric, method);
        if (*sweep) return run_sweep(qmax, slow, jobs);
        if (*search) return run_search(which, resume, family, q);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNegative;
    }
    return kExitUsage;
}
