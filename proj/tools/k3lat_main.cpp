// k3lat: verification suites and single-object queries.
//
// Exit codes: 0 all checks pass (warns allowed), 1 check failure or a
// semantically invalid input, 2 usage or malformed input.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "k3lat/kondo.hpp"
#include "k3lat/query.hpp"
#include "k3lat/suites.hpp"

namespace {

constexpr int kUsage = 2;

bool input_error(k3lat::Errc c) {
    return c == k3lat::Errc::parse_error || c == k3lat::Errc::not_symmetric || c == k3lat::Errc::dimension_mismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact lattice computations for the K3 model of quartic curves and its Heegner divisors", "k3lat"};
    app.require_subcommand(0, 1);

    bool json = false, timing = false, dump_flag = false;
    std::int64_t box_bound = 2;
    std::size_t closure_cap = std::size_t(1) << 22;
    app.add_flag("--json", json, "machine-readable output");
    app.add_flag("--timing", timing, "include wall time in suite reports");
    app.add_option("--box-bound", box_bound, "|t_i| bound of the Heegner box scan")->check(CLI::Range(0, 6));
    app.add_option("--closure-cap", closure_cap, "element cap for the Weyl closure; 0 skips it");
    app.add_flag("--dump-model", dump_flag, "same as the dump-model subcommand");

    std::string suite, lattice_arg, vector_arg;
    auto* verify = app.add_subcommand("verify", "run a verification suite")->fallthrough();
    verify->add_option("suite", suite, "core, appendix, kondo, heegner, examples or all")->required();
    auto* lattice = app.add_subcommand("lattice", "invariants of a builtin lattice or a lattice JSON file")->fallthrough();
    lattice->add_option("name", lattice_arg, "builtin name (E7, D4, U(2), <2>, ...) or path")->required();
    auto* heegner = app.add_subcommand("heegner", "invariants of r in L- (t1,t2,f1_1..f3_4)")->fallthrough();
    heegner->add_option("r", vector_arg, "14 comma-separated integers")->required()->allow_extra_args(false);
    auto* dump = app.add_subcommand("dump-model", "model fixture as JSON")->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*verify) {
            if (!k3lat::is_suite(suite)) {
                std::cerr << "unknown suite '" << suite << "'; expected one of core, appendix, kondo, heegner, examples, all\n";
                return kUsage;
            }
            k3lat::SuiteReport r = k3lat::run_suite(suite, {box_bound, closure_cap});
            if (json)
                std::cout << k3lat::to_json(r, timing).dump(2) << "\n";
            else
                std::cout << k3lat::to_text(r, timing);
            return r.exit_code();
        }
        if (*lattice) {
            k3lat::Lattice l = k3lat::load_lattice(lattice_arg);
            if (json)
                std::cout << k3lat::lattice_summary(l).dump(2) << "\n";
            else
                std::cout << k3lat::lattice_summary_text(l);
            return 0;
        }
        if (*heegner) {
            k3lat::IntVector r = k3lat::parse_lminus_vector(vector_arg);
            auto q = k3lat::query_heegner(k3lat::kondo_model(), r);
            std::cout << q.report.dump(2) << "\n";
            return q.ok ? 0 : 1;
        }
        if (*dump || dump_flag) {
            std::cout << k3lat::dump_model(k3lat::kondo_model()).dump(2) << "\n";
            return 0;
        }
        std::cerr << app.help();
        return kUsage;
    } catch (const k3lat::Error& e) {
        std::cerr << "error (" << k3lat::errc_name(e.code()) << "): " << e.what() << "\n";
        return input_error(e.code()) ? kUsage : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
