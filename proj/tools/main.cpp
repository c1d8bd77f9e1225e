#include "thetacycle/basis_cache.hpp"
#include "thetacycle/report_io.hpp"
#include "thetacycle/verifier.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace thetacycle;

namespace {

struct RunConfig {
    std::uint64_t p = 0;
    unsigned m = 2;
    std::string form = "Delta";
    long k = -1;                  // exceptional: weight without a form
    long i_max = -1;              // engine default when negative
    std::size_t precision = 0;    // working-precision floor
    std::size_t guard = 5;
    bool engine = false;          // compute without the theorem-mode checks
    std::string format = "both";  // csv | json | both
    std::string out;              // file prefix, or "-" for stdout
    std::vector<std::string> claims{"all"};
    std::string cache_dir;
    unsigned jobs = 1;
};

void apply_cache_dir(const RunConfig& cfg) {
    std::string dir = cfg.cache_dir;
    if (dir.empty())
        if (const char* env = std::getenv("THETACYCLE_CACHE_DIR")) dir = env;
    if (!dir.empty()) BasisCache::instance().set_directory(dir);
}

CycleOptions cycle_options(const RunConfig& cfg) {
    CycleOptions opts;
    opts.i_max = cfg.i_max;
    opts.guard = cfg.guard;
    opts.theorem_mode = !cfg.engine;
    opts.precision_floor = cfg.precision;
    return opts;
}

int cmd_cycle(const RunConfig& cfg) {
    apply_cache_dir(cfg);
    FormExpr f = parse_form_expr(cfg.form);
    CycleReport rep = compute_cycle(f, Modulus(cfg.p, cfg.m), cycle_options(cfg));
    bool want_csv = cfg.format == "csv" || cfg.format == "both";
    bool want_json = cfg.format == "json" || cfg.format == "both";
    if (cfg.out == "-") {
        if (want_csv) std::cout << report_to_csv(rep);
        if (want_json) std::cout << report_to_json(rep);
        return 0;
    }
    std::string prefix = cfg.out.empty()
                             ? "cycle_p" + std::to_string(cfg.p) + "_m" +
                                   std::to_string(cfg.m)
                             : cfg.out;
    write_report_files(rep, prefix, want_csv, want_json);
    if (want_csv) std::cerr << "wrote " << prefix << ".csv\n";
    if (want_json) std::cerr << "wrote " << prefix << ".json\n";
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    apply_cache_dir(cfg);
    FormExpr f = parse_form_expr(cfg.form);
    Verifier v(cfg.p, f, cfg.guard);
    std::ofstream file;
    std::ostream* ledger = &std::cout;
    if (!cfg.out.empty() && cfg.out != "-") {
        file.open(cfg.out);
        if (!file)
            throw std::runtime_error("cannot open ledger file: " + cfg.out);
        ledger = &file;
    }
    std::size_t fails = 0;
    for (const std::string& cs : cfg.claims) {
        std::vector<CheckOutcome> outcomes = v.run(cs);
        for (const CheckOutcome& o : outcomes)
            *ledger << outcome_json_line(o) << "\n";
        CheckSummary s = summarize(cs, outcomes);
        fails += s.fail;
        std::cerr << "claims " << cs << ": " << s.pass << " pass, " << s.fail
                  << " fail, " << s.inapplicable << " inapplicable\n";
    }
    return fails == 0 ? 0 : 1;
}

int cmd_figure(const RunConfig& cfg) {
    apply_cache_dir(cfg);
    FormExpr f = parse_form_expr(cfg.form);
    bool dual = cfg.m == 2;   // mod-p companion panel alongside mod p^2
    CycleOptions opts = cycle_options(cfg);
    CycleOptions companion_opts = opts;
    companion_opts.i_max = -1;   // full mod-p cycle regardless of --i-max
    CycleReport rep;
    std::optional<CycleReport> companion;
    if (dual && cfg.jobs > 1) {
        auto fut = std::async(std::launch::async, [&] {
            return compute_cycle(f, Modulus(cfg.p, 1), companion_opts);
        });
        rep = compute_cycle(f, Modulus(cfg.p, 2), opts);
        companion = fut.get();
    } else {
        rep = compute_cycle(f, Modulus(cfg.p, cfg.m), opts);
        if (dual) companion = compute_cycle(f, Modulus(cfg.p, 1), companion_opts);
    }
    std::string prefix = cfg.out.empty()
                             ? "figure_p" + std::to_string(cfg.p) + "_m" +
                                   std::to_string(cfg.m)
                             : cfg.out;
    atomic_write_file(prefix + ".svg",
                      report_to_svg(rep, companion ? &*companion : nullptr));
    write_report_files(rep, prefix, true, false);
    std::cerr << "wrote " << prefix << ".svg\nwrote " << prefix << ".csv\n";
    if (companion) {
        write_report_files(*companion, prefix + "_modp", true, false);
        std::cerr << "wrote " << prefix << "_modp.csv\n";
    }
    return 0;
}

int cmd_exceptional(const RunConfig& cfg) {
    long k = cfg.k;
    if (k < 0) k = parse_form_expr(cfg.form).weight();
    Modulus probe(cfg.p, 1);   // validates the prime
    (void)probe;
    long lp = static_cast<long>(cfg.p);
    long i_max = cfg.i_max >= 0 ? cfg.i_max : (lp - 1) * lp + (lp - k + 1);
    std::vector<long> idx = exceptional_indices(cfg.p, k, i_max);
    if (cfg.format == "json") {
        auto arr = nlohmann::ordered_json::array();
        for (long i : idx)
            arr.push_back(nlohmann::ordered_json{
                {"i", i}, {"n", i / lp}, {"i_prime", i % lp}});
        std::cout << arr.dump(2) << "\n";
    } else {
        std::cout << "i,n,i_prime\n";
        for (long i : idx)
            std::cout << i << "," << i / lp << "," << i % lp << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"theta cycles of level-one modular forms mod p and p^2"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub, bool with_form) {
        sub->add_option("--p", cfg.p, "prime p >= 5")->required();
        if (with_form)
            sub->add_option("--form", cfg.form,
                            "form expression over E4, E6, Delta (default Delta)");
        sub->add_option("--guard", cfg.guard, "extra comparison coefficients");
        sub->add_option("--cache-dir", cfg.cache_dir,
                        "basis cache directory (default $THETACYCLE_CACHE_DIR)");
    };

    CLI::App* cyc = app.add_subcommand("cycle", "compute a theta cycle report");
    add_common(cyc, true);
    cyc->add_option("--m", cfg.m, "modulus exponent, 1 or 2")
        ->check(CLI::Range(1u, 2u));
    cyc->add_option("--i-max", cfg.i_max, "largest theta power (default: full cycle)");
    cyc->add_option("--precision", cfg.precision, "working-precision floor");
    cyc->add_flag("--engine", cfg.engine,
                  "skip the theorem-mode hypothesis checks");
    cyc->add_option("--format", cfg.format, "csv | json | both")
        ->check(CLI::IsMember({"csv", "json", "both"}));
    cyc->add_option("--out", cfg.out, "output prefix, or - for stdout");

    CLI::App* ver = app.add_subcommand("verify", "check published claims");
    add_common(ver, true);
    ver->add_option("--claims", cfg.claims,
                    "claim sets: prop2.2 thmA corB thmC corD lemma2.4 bounds "
                    "identities all")
        ->delimiter(',');
    ver->add_option("--out", cfg.out, "ledger file (default stdout)");

    CLI::App* fig = app.add_subcommand("figure", "emit an SVG of the cycle");
    add_common(fig, true);
    fig->add_option("--m", cfg.m, "modulus exponent, 1 or 2")
        ->check(CLI::Range(1u, 2u));
    fig->add_option("--i-max", cfg.i_max, "largest theta power");
    fig->add_option("--precision", cfg.precision, "working-precision floor");
    fig->add_flag("--engine", cfg.engine,
                  "skip the theorem-mode hypothesis checks");
    fig->add_option("--jobs", cfg.jobs, "parallelism for the two panels");
    fig->add_option("--out", cfg.out, "output prefix");

    CLI::App* exc = app.add_subcommand("exceptional", "list exceptional indices");
    add_common(exc, true);
    exc->add_option("--k", cfg.k, "weight (overrides --form)");
    exc->add_option("--i-max", cfg.i_max, "index range (default: all bands)");
    exc->add_option("--format", cfg.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json", "both"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (cyc->parsed()) return cmd_cycle(cfg);
        if (ver->parsed()) return cmd_verify(cfg);
        if (fig->parsed()) return cmd_figure(cfg);
        if (exc->parsed()) return cmd_exceptional(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
