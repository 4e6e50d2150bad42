// framesmith: construct wavelet frames from a spectral function and verify them.
//
// Exit codes: 0 pass, 1 fail, 2 uncertain, 3 malformed input, validation
// error or I/O failure.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "framesmith/errors.hpp"
#include "framesmith/pipeline.hpp"

using namespace framesmith;

namespace {

constexpr int kExitError = 3;

int exit_code(Status s) {
    switch (s) {
        case Status::pass: return 0;
        case Status::fail: return 1;
        case Status::uncertain: return 2;
    }
    return kExitError;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_text_file(path, text);
}

int finish(const VerificationReport& report, const ReportHeader& header, const std::string& out) {
    emit(out, report_to_json(report, header));
    std::size_t failed = 0, uncertain = 0;
    for (const auto& c : report.checks()) {
        if (c.status == Status::fail) ++failed;
        if (c.status == Status::uncertain) ++uncertain;
    }
    std::cerr << header.command << ": " << to_string(report.status()) << " (" << report.checks().size() << " checks, "
              << failed << " failed, " << uncertain << " uncertain)\n";
    for (const auto& c : report.checks()) {
        if (c.status == Status::pass) continue;
        std::cerr << "  " << to_string(c.status) << " " << c.name;
        if (c.witness) std::cerr << " at xi = " << c.witness->xi << ": " << c.witness->lhs << " vs " << c.witness->rhs;
        std::cerr << "\n";
    }
    return exit_code(report.status());
}

std::uint64_t parse_seed(const std::string& text) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &used, 0);
    } catch (const std::exception&) {
        throw ParseError("malformed seed", text);
    }
    if (used != text.size()) throw ParseError("malformed seed", text);
    return v;
}

FamilyFile load_family(const std::string& path, bool validate) {
    return family_from_json(read_text_file(path), validate);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Construct normalized tight frame wavelets from a spectral function and verify them.\n"
                 "Frequencies are in units of pi. FRAMESMITH_PRECISION sets the enclosure bits (default 64).\n"
                 "Exit codes: 0 pass, 1 fail, 2 uncertain, 3 parse, validation or I/O error."};
    app.require_subcommand(1);
    app.fallthrough();

    std::string seed_text = "0x5EED";
    bool no_validate = false;
    app.add_option("--seed", seed_text, "Seed for every random grid (decimal or 0x hex)")->capture_default_str();
    app.add_flag("--no-validate", no_validate, "Load family files without re-checking their invariants");

    // construct
    auto* construct = app.add_subcommand("construct", "Build the scaling and wavelet families of sigma");
    std::string example, sigma_arg, partition = "layered", construct_out;
    long a = 2;
    auto* ex_opt = construct->add_option("--example", example,
                                         "Built-in sigma: shannon, journe, tent[:w=W], pwl:a=A,b=B");
    auto* sigma_opt = construct->add_option("--sigma", sigma_arg,
                                            "sigma as a JSON piece list, inline or a file path");
    ex_opt->excludes(sigma_opt);
    construct->add_option("--a", a, "Integer dilation, |a| >= 2")->capture_default_str();
    construct->add_option("--partition", partition, "layered or window")
        ->check(CLI::IsMember({"layered", "window"}))
        ->capture_default_str();
    construct->add_option("--out", construct_out, "Family file (default stdout)");

    // check
    auto* check = app.add_subcommand("check", "Run verification suites on a family file");
    std::string family_path, suites = "ntf", check_out, f_text = "1@0,1@1";
    long series_window = 4, j_max = 64;
    check->add_option("--family", family_path, "Family file")->required();
    check->add_option("--suite", suites,
                      "Comma-separated: ntf, ntf-numeric, wavelets, characterization, sufficiency, density, "
                      "semiorth, dilation, series, additivity, or all")
        ->capture_default_str();
    check->add_option("--f", f_text, "Test sequence for trace suites, e.g. \"1@0,1+i@2\"")->capture_default_str();
    check->add_option("--series-window", series_window, "series checks |s| <= N")->capture_default_str();
    check->add_option("--j-max", j_max, "Largest j for decay and monotonicity")->capture_default_str();
    check->add_option("--out", check_out, "Report file (default stdout)");

    // check-waveletset
    auto* cws = app.add_subcommand("check-waveletset", "Check the multiwavelet-set conditions for E_1, ..., E_n");
    std::vector<std::string> sets;
    std::string window = "64", cws_out;
    long cws_a = 2, j_range = 24;
    cws->add_option("--E", sets, "A set \"[l,r)u[l,r)\", shannon or journe; repeat for several")->required();
    cws->add_option("--a", cws_a, "Integer dilation")->capture_default_str();
    cws->add_option("--window", window, "Tiling is checked on [-W, W)")->capture_default_str();
    cws->add_option("--j-range", j_range, "Tiling gap (-W |a|^-j, W |a|^-j) is left untested")->capture_default_str();
    cws->add_option("--out", cws_out, "Report file (default stdout)");

    // waveletset
    auto* ws = app.add_subcommand("waveletset", "Classify a wavelet-set seed E or build the family of chi of its closure");
    std::string seed_set, ws_out;
    long ws_a = 2;
    bool classify = false;
    ws->add_option("--E", seed_set, "Seed set \"[l,r)u[l,r)\"")->required();
    ws->add_option("--a", ws_a, "Integer dilation")->capture_default_str();
    ws->add_flag("--classify", classify, "Print the classification report");
    ws->add_option("--out", ws_out, "Write the family of sigma = chi of the dilation closure");

    // trace
    auto* tr = app.add_subcommand("trace", "Spectral, dimension and restricted trace functions as CSV");
    std::string tr_family, space = "V0", tr_out, tr_f = "1@0";
    long tr_grid = 256;
    tr->add_option("--family", tr_family, "Family file")->required();
    tr->add_option("--space", space, "V0, W0 or V1")->capture_default_str();
    tr->add_option("--f", tr_f, "Sequence for tau_f")->capture_default_str();
    tr->add_option("--grid", tr_grid, "Number of points in [-1, 1)")->capture_default_str();
    tr->add_option("--out", tr_out, "CSV file (default stdout)");

    // frame-test
    auto* ft = app.add_subcommand("frame-test", "Energy test sum |<f, psi_jk>|^2 / ||f||^2");
    std::string ft_family, ft_out;
    std::vector<std::string> signals{"tent:[-1,1)"};
    FrameTestOptions ft_options;
    ft->add_option("--family", ft_family, "Family file")->required();
    ft->add_option("--signal", signals, "tent:[l,r) or box:[l,r); repeat for several")->capture_default_str();
    ft->add_option("--jmin", ft_options.energy.jmin, "Lowest level")->capture_default_str();
    ft->add_option("--jmax", ft_options.energy.jmax, "Highest level")->capture_default_str();
    ft->add_option("--tol", ft_options.tol, "Allowed |ratio - expected|")->capture_default_str();
    ft->add_option("--expected", ft_options.expected, "Expected ratio")->capture_default_str();
    ft->add_option("--out", ft_out, "Report file (default stdout)");

    // sample
    auto* sa = app.add_subcommand("sample", "Profiles on a uniform grid as CSV (xi, psi_hat_i..., sigma)");
    std::string sa_family, sa_out;
    long sa_grid = 1024;
    sa->add_option("--family", sa_family, "Family file")->required();
    sa->add_option("--grid", sa_grid, "Number of rows")->capture_default_str();
    sa->add_option("--out", sa_out, "CSV file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        const std::uint64_t seed = parse_seed(seed_text);
        const int bits = precision_from_environment();
        const bool validate = !no_validate;

        if (construct->parsed()) {
            SpectralSpec spec;
            std::string input;
            if (!example.empty()) {
                spec = builtin_spec(example, a);
                input = example;
            } else if (!sigma_arg.empty()) {
                const std::string text = sigma_arg.front() == '[' ? sigma_arg : read_text_file(sigma_arg);
                spec = {parse_piecewise_linear_json(text), a};
                input = text;
            } else {
                throw ParseError("construct needs --example or --sigma", "construct");
            }
            input += " a=" + std::to_string(a) + " " + partition;
            const auto adm = admissibility_check(spec);
            if (!adm.admissible()) {
                return finish(admissibility_report(adm), {"construct", {}, seed, bits}, "-");
            }
            const auto rule = partition == "window" ? PartitionRule::window : PartitionRule::layered;
            const FamilyFile family = construct_family(spec, input, rule);
            emit(construct_out, family_to_json(family));
            std::cerr << "construct: " << family.scaling.phis.size() << " scaling and " << family.wavelets.psis.size()
                      << " wavelet profiles\n";
            return 0;
        }
        if (check->parsed()) {
            const std::string text = read_text_file(family_path);
            const FamilyFile family = family_from_json(text, validate);
            SuiteOptions options{seed, bits, f_text, series_window, j_max};
            const auto report = run_suites(family, parse_suites(suites), options);
            return finish(report, {"check", fnv1a64_hex(family_to_json(family)), seed, bits}, check_out);
        }
        if (cws->parsed()) {
            std::vector<IntervalSet> es;
            for (const auto& s : sets) es.push_back(parse_interval_set(s));
            const auto report = check_waveletset(es, cws_a, Rational::parse(window), j_range);
            return finish(report, {"check-waveletset", {}, seed, bits}, cws_out);
        }
        if (ws->parsed()) {
            if (!classify && ws_out.empty()) throw ParseError("waveletset needs --classify or --out", "waveletset");
            const IntervalSet e = parse_interval_set(seed_set);
            int code = 0;
            if (classify) {
                const auto c = classify_waveletset_seed(e, ws_a);
                code = finish(classification_report(c), {"waveletset", {}, seed, bits}, "-");
                std::cerr << "class: " << to_string(c.kind) << "\n";
            }
            if (!ws_out.empty()) {
                const SpectralSpec spec{waveletset_sigma(e, ws_a), ws_a};
                const auto adm = admissibility_check(spec);
                if (!adm.admissible()) return finish(admissibility_report(adm), {"waveletset", {}, seed, bits}, "-");
                const std::string input = "waveletset " + e.str() + " a=" + std::to_string(ws_a) + " layered";
                emit(ws_out, family_to_json(construct_family(spec, input)));
            }
            return code;
        }
        if (tr->parsed()) {
            const FamilyFile family = load_family(tr_family, validate);
            emit(tr_out, trace_csv(family, parse_trace_space(space), Sequence::parse(tr_f), tr_grid, bits));
            return 0;
        }
        if (ft->parsed()) {
            const std::string text = read_text_file(ft_family);
            const FamilyFile family = family_from_json(text, validate);
            std::vector<TestSignal> parsed;
            for (const auto& s : signals) parsed.push_back(TestSignal::parse(s));
            const auto report = frame_test_report(family.wavelets, parsed, ft_options);
            return finish(report, {"frame-test", fnv1a64_hex(family_to_json(family)), seed, bits}, ft_out);
        }
        if (sa->parsed()) {
            emit(sa_out, sample_csv(load_family(sa_family, validate), sa_grid));
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitError;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
