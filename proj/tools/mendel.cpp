// mendel: construct, enumerate, verify and inspect resolvable Mendelsohn designs.
//
// Exit codes: 0 success, 1 invalid parameters or failed verification of an
// input file, 2 a constructed design failed its own verification.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mendel/constructions.hpp"
#include "mendel/design_json.hpp"
#include "mendel/mendel.hpp"

namespace {

using namespace mendel;

struct ConstructArgs {
    std::string method;
    u64 q = 0, k = 0, v = 0, power = 1;
    std::optional<u64> multiplier;
    std::vector<u64> m;
    std::string out;
    bool full = false;
    bool no_verify = false;
    unsigned threads = 1;
};

struct VerifyArgs {
    std::string path;
    std::optional<u64> perfect;
    bool resolvable = false;
    bool automorphisms = false;
    bool as_json = false;
    unsigned threads = 1;
};

struct OrthoArgs {
    u64 v = 0;
    std::optional<u64> k;
    u64 multiplier = 0;
};

u64 max_v_from_env()
{
    if (const char* s = std::getenv("MENDEL_MAX_V")) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw invalid_parameter(std::string("MENDEL_MAX_V is not a number: ") + s);
        }
    }
    return default_max_v;
}

void print_report(std::ostream& os, const VerificationReport& report)
{
    for (const auto& c : report.checks) {
        os << (c.pass ? "PASS " : "FAIL ") << c.name;
        if (c.counterexample)
            os << ": " << c.counterexample->detail;
        os << " (" << std::fixed << std::setprecision(1) << c.elapsed_ms << " ms)\n";
    }
}

std::string optional_regularity(const std::optional<u64>& k)
{
    return k ? std::to_string(*k) : "irregular";
}

int run_construct(const ConstructArgs& args)
{
    ConstructOptions opts;
    opts.verify = !args.no_verify;
    opts.max_v = args.no_verify ? max_modulus : max_v_from_env();
    opts.verify_options.threads = args.threads;

    std::optional<Construction> built;
    std::vector<u64> alternatives;
    if (args.method == "agl") {
        require(args.q != 0 && args.k != 0, "agl needs --q and --k");
        built = construct_agl(args.q, args.k, opts);
    } else if (args.method == "ferrero") {
        require(args.v != 0 && args.k != 0, "ferrero needs --v and --k");
        built = construct_ferrero(args.v, args.k, args.power, opts);
    } else if (args.method == "cyclic") {
        require(args.v != 0 && args.k != 0, "cyclic needs --v and --k");
        if (args.multiplier) {
            built = construct_cyclic_with_multiplier(args.v, args.k, *args.multiplier, opts);
        } else {
            auto m = args.m;
            if (m.empty())
                m.assign(factorize(args.v).size(), 1);
            built = construct_cyclic(args.v, args.k, m, opts).construction;
        }
    } else if (args.method == "k4" || args.method == "k6") {
        require(args.v != 0, args.method + " needs --v");
        auto all = args.method == "k4" ? construct_k4(args.v, opts) : construct_k6(args.v, opts);
        for (const auto& c : all)
            alternatives.push_back(c.multiplier);
        for (auto& c : all)
            if (!args.multiplier || c.multiplier == *args.multiplier) {
                built = std::move(c.construction);
                break;
            }
        require(built.has_value(), "--multiplier is not a root of the congruence");
    } else {
        throw invalid_parameter("unknown method '" + args.method + "'");
    }

    const Design& d = built->design;
    if (!args.out.empty()) {
        std::ofstream f(args.out, std::ios::binary);
        require(f.good(), "cannot open " + args.out + " for writing");
        f << dump_design(d, args.full);
    }

    std::cout << "method=" << d.provenance.method << " group=" << d.group.describe() << "\n"
              << "v=" << d.v() << " k=" << d.k << " lambda=" << d.lambda
              << " blocks=" << d.blocks.size() << " classes=" << d.class_count()
              << " base_blocks=" << d.base_blocks.size() << "\n";
    if (d.provenance.multiplier)
        std::cout << "multiplier=" << *d.provenance.multiplier << "\n";
    if (!alternatives.empty()) {
        std::cout << "roots=";
        for (std::size_t i = 0; i < alternatives.size(); ++i)
            std::cout << (i ? " " : "") << alternatives[i];
        std::cout << "\n";
    }
    if (built->k() <= max_perfectness_k)
        std::cout << "perfectness_level=" << perfectness_level(d.group, built->theta.perm()) << "\n";
    if (opts.verify)
        print_report(std::cout, built->report);
    else
        std::cout << "verification skipped\n";
    return 0;
}

int run_enumerate(u64 v, u64 k)
{
    const auto values = enumerate_cyclic_multipliers(v, k);
    for (std::size_t i = 0; i < values.size(); ++i)
        std::cout << (i ? " " : "") << values[i];
    std::cout << "\ncount=" << values.size() << "\n";
    return 0;
}

int run_verify(const VerifyArgs& args)
{
    std::ifstream f(args.path, std::ios::binary);
    require(f.good(), "cannot open " + args.path);
    std::stringstream buf;
    buf << f.rdbuf();
    const Design d = parse_design(buf.str());

    VerifyOptions opts{args.threads};
    VerificationReport report = verify_md(d, opts);
    if (args.perfect)
        report.append(verify_l_fold_perfect(d, *args.perfect, opts));
    if (args.resolvable)
        report.append(verify_resolvable(d));
    if (args.automorphisms)
        report.append(verify_automorphism_group(d, provenance_automorphism(d)));

    if (args.as_json)
        std::cout << report_to_json(report).dump(2) << "\n";
    else
        print_report(std::cout, report);
    return report.passed() ? 0 : 1;
}

int run_ortho(const OrthoArgs& args)
{
    const auto group = GroupSpec::cyclic(args.v);
    const auto phi = Automorphism::cyclic(group, args.multiplier);
    const u64 k = phi.order();
    if (args.k)
        require(*args.k == k, "multiplier has order " + std::to_string(k) + ", not " +
                                  std::to_string(*args.k));
    const auto theta = from_automorphism(phi, k);
    const auto bar = derived_complete_mapping(group, theta.perm());

    std::cout << "cycles: " << theta.to_string() << "\n"
              << "cycle_count=" << theta.cycles().size() << "\n"
              << "regularity=" << optional_regularity(regularity(theta.perm())) << "\n";
    if (k <= max_perfectness_k)
        std::cout << "perfectness_level=" << perfectness_level(group, theta.perm()) << "\n";
    std::cout << "orthomorphism=" << (is_orthomorphism(group, theta.perm()) ? "yes" : "no") << "\n"
              << "derived_complete_mapping=" << (is_complete_mapping(group, bar) ? "yes" : "no")
              << "\n"
              << "derived_regularity=" << optional_regularity(regularity(bar)) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Resolvable Mendelsohn designs from fixed-point-free automorphisms"};
    app.require_subcommand(1);

    ConstructArgs cargs;
    auto* construct = app.add_subcommand("construct", "Build a design and write it as JSON");
    construct->add_option("--method", cargs.method, "agl | ferrero | cyclic | k4 | k6")
        ->required()
        ->check(CLI::IsMember({"agl", "ferrero", "cyclic", "k4", "k6"}));
    construct->add_option("--q", cargs.q, "Field order (agl)");
    construct->add_option("--k", cargs.k, "Block size");
    construct->add_option("--v", cargs.v, "Number of points");
    construct->add_option("--power", cargs.power, "Element omega^power of H (ferrero)");
    construct->add_option("--m", cargs.m, "Exponent vector m_1,...,m_t (cyclic)")->delimiter(',');
    construct->add_option("--multiplier", cargs.multiplier, "Explicit multiplier a (cyclic, k4, k6)");
    construct->add_option("--out", cargs.out, "Output JSON path");
    construct->add_flag("--full", cargs.full, "Store the full block list, class by class");
    construct->add_flag("--no-verify", cargs.no_verify, "Skip verification and lift the size cap");
    construct->add_option("--threads", cargs.threads, "Verification threads")->check(CLI::PositiveNumber);

    u64 ev = 0, ek = 0;
    auto* enumerate = app.add_subcommand("enumerate", "List the multipliers of the cyclic construction");
    enumerate->add_option("--v", ev)->required();
    enumerate->add_option("--k", ek)->required();

    VerifyArgs vargs;
    auto* verify = app.add_subcommand("verify", "Verify a design file");
    verify->add_option("path", vargs.path, "Design JSON")->required();
    verify->add_option("--perfect", vargs.perfect, "Check l-fold perfectness");
    verify->add_flag("--resolvable", vargs.resolvable, "Check the resolution classes");
    verify->add_flag("--automorphisms", vargs.automorphisms, "Check translations and the multiplier");
    verify->add_flag("--json", vargs.as_json, "Print the report as JSON");
    verify->add_option("--threads", vargs.threads, "Verification threads")->check(CLI::PositiveNumber);

    OrthoArgs oargs;
    auto* ortho = app.add_subcommand("ortho", "Show the orthomorphism x -> a x of Z_v");
    ortho->add_option("--v", oargs.v)->required();
    ortho->add_option("--k", oargs.k);
    ortho->add_option("--multiplier", oargs.multiplier)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*construct)
            return run_construct(cargs);
        if (*enumerate)
            return run_enumerate(ev, ek);
        if (*verify)
            return run_verify(vargs);
        if (*ortho)
            return run_ortho(oargs);
    } catch (const verification_failure& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
