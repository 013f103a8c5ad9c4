#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qbell/families.hpp"
#include "qbell_cli/classify.hpp"
#include "qbell_cli/document.hpp"
#include "qbell_cli/exit_code.hpp"
#include "qbell_cli/sweep.hpp"

namespace {

using namespace qbell;
using namespace qbell::cli;

struct Options {
    std::uint64_t seed = 0;
    double tol = kDefaultTol;
    std::string out;
    std::string format = "json";
};

struct GenArgs {
    std::string family;
    std::size_t d = 3;
    double eps = 1.0;
    double gamma = 1.0;
    std::size_t k = 0;
    std::size_t copies = 1;
    std::vector<double> pi, q, p;
    std::vector<std::string> members;
};

void require_json(const Options& o, const char* what) {
    if (o.format != "json") throw InvalidArgument(std::string(what) + " writes JSON only");
}

void emit_document(const Options& o, const StateDocument& doc) {
    require_json(o, "gen");
    write_text(o.out, dump(to_json(doc)));
}

std::vector<std::size_t> parse_indices(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw InvalidArgument("bad lattice index '" + item + "'");
        out.push_back(v);
    }
    return out;
}

// "m1,...,mN:n1,...,nN"
families::LatticePoint parse_member(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw InvalidArgument("lattice member must look like m1,m2:n1,n2");
    return {parse_indices(text.substr(0, colon)), parse_indices(text.substr(colon + 1))};
}

StateDocument gen_family(const GenArgs& g) {
    Json meta{{"family", g.family}};
    if (g.family == "epsilon") {
        meta["eps"] = g.eps;
        return bell_document(families::rho_epsilon(g.eps), meta);
    }
    if (g.family == "gamma") {
        meta["gamma"] = g.gamma;
        return bell_document(families::rho_gamma(g.d, g.gamma), meta);
    }
    if (g.family == "delta") {
        meta["k"] = g.k;
        meta["pi"] = g.pi;
        return bell_document(families::delta_distribution(g.d, g.k, g.pi), meta);
    }
    if (g.family == "product") {
        meta["q"] = g.q;
        meta["p"] = g.p;
        return bell_document(families::product_distribution(g.d, g.q, g.p), meta);
    }
    throw InvalidArgument("unknown family '" + g.family + "'");
}

StateDocument gen_lattice(const GenArgs& g) {
    std::vector<families::LatticePoint> pts;
    for (const auto& m : g.members) pts.push_back(parse_member(m));
    const families::LatticeSubset subset(g.d, g.copies, std::move(pts));
    const std::size_t dim = subset.local_dimension();
    return dense_document(dim, families::lattice_state(subset),
                          Json{{"family", "lattice"}, {"d", g.d}, {"copies", g.copies}, {"members", g.members}});
}

int run(int argc, char** argv) {
    CLI::App app{"Circulant and Bell-diagonal state toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--seed", opt.seed, "Seed for random generation and sampling");
    app.add_option("--tol", opt.tol, "Tolerance for PSD and trace checks")->check(CLI::PositiveNumber);
    app.add_option("--out", opt.out, "Output path (default stdout)");
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

    GenArgs g;
    auto* gen = app.add_subcommand("gen", "Generate a state document");
    gen->require_subcommand(1);
    gen->fallthrough();

    auto* fam = gen->add_subcommand("family", "Named family: epsilon, gamma, delta, product");
    fam->add_option("name", g.family)->required()->check(CLI::IsMember({"epsilon", "gamma", "delta", "product"}));
    fam->add_option("--d", g.d, "Local dimension")->check(CLI::Range(2, 1 << 12));
    fam->add_option("--eps", g.eps, "epsilon parameter");
    fam->add_option("--gamma", g.gamma, "gamma parameter");
    fam->add_option("--k", g.k, "Row index of a delta distribution");
    fam->add_option("--pi", g.pi, "Weights of a delta distribution")->delimiter(',');
    fam->add_option("--q", g.q, "Row weights of a product distribution")->delimiter(',');
    fam->add_option("--p", g.p, "Column weights of a product distribution")->delimiter(',');

    auto* bellcmd = gen->add_subcommand("bell", "Bell-diagonal state from p_mn, row-major");
    bellcmd->add_option("--d", g.d, "Local dimension")->required()->check(CLI::Range(2, 1 << 12));
    bellcmd->add_option("--p", g.p, "d^2 weights")->required()->delimiter(',');

    auto* randcirc = gen->add_subcommand("random-circulant", "Random circulant state");
    randcirc->add_option("--d", g.d, "Local dimension")->required()->check(CLI::Range(2, 1 << 12));

    auto* randbell = gen->add_subcommand("random-bell", "Random Bell-diagonal state");
    randbell->add_option("--d", g.d, "Local dimension")->required()->check(CLI::Range(2, 1 << 12));

    auto* lattice = gen->add_subcommand("lattice", "Generalized lattice state (dense)");
    lattice->add_option("--d", g.d, "Single-copy dimension")->required()->check(CLI::Range(2, 16));
    lattice->add_option("--copies", g.copies, "Number of copies N")->check(CLI::Range(1, 8));
    lattice->add_option("--member", g.members, "Point m1,..,mN:n1,..,nN (repeatable)")->required();

    std::string input;
    std::vector<std::string> witnesses;
    auto* cls = app.add_subcommand("classify", "Classify a state document");
    cls->add_option("file", input, "State document")->required();
    cls->add_option("--witness", witnesses,
                    "Witness to evaluate: reduction, flip, choi:a,b,c, wlm:lambda,mu, wdk:k (repeatable; "
                    "replaces the default battery)");

    std::string range_text, a_text = "0:2:5", b_text = "0:2:5", c_text = "0:2:5";
    bool log_scale = false;
    double lambda = 0.1, mu = 0.05;
    std::size_t trials = 1000;
    auto* sweep = app.add_subcommand("sweep", "Parameter sweep to CSV");
    sweep->require_subcommand(1);
    sweep->fallthrough();
    auto* sw_eps = sweep->add_subcommand("epsilon", "rho_eps over an epsilon range");
    sw_eps->add_option("--range", range_text, "from:to:steps")->required();
    sw_eps->add_flag("--log", log_scale, "Logarithmic spacing");
    auto* sw_gamma = sweep->add_subcommand("gamma", "W_{lambda,mu} on rho_gamma (d = 3) over a gamma range");
    sw_gamma->add_option("--range", range_text, "from:to:steps")->required();
    sw_gamma->add_flag("--log", log_scale, "Logarithmic spacing");
    sw_gamma->add_option("--lambda", lambda, "lambda")->check(CLI::NonNegativeNumber);
    sw_gamma->add_option("--mu", mu, "mu")->check(CLI::NonNegativeNumber);
    auto* sw_choi = sweep->add_subcommand("choi", "Validity grid of W[a,b,c]");
    sw_choi->add_option("--a", a_text, "from:to:steps");
    sw_choi->add_option("--b", b_text, "from:to:steps");
    sw_choi->add_option("--c", c_text, "from:to:steps");
    sw_choi->add_option("--trials", trials, "Product states sampled per grid point")->check(CLI::Range(1, 10000000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (gen->parsed()) {
        if (fam->parsed()) {
            emit_document(opt, gen_family(g));
        } else if (bellcmd->parsed()) {
            if (g.p.size() != g.d * g.d) throw InvalidArgument("--p needs d^2 weights");
            emit_document(opt, bell_document(bell::BellProbabilities(g.d, g.p)));
        } else if (randcirc->parsed()) {
            Rng rng(opt.seed);
            emit_document(opt, circulant_document(circulant::random_state(g.d, rng), Json{{"seed", opt.seed}}));
        } else if (randbell->parsed()) {
            Rng rng(opt.seed);
            emit_document(opt, bell_document(bell::random_probabilities(g.d, rng), Json{{"seed", opt.seed}}));
        } else if (lattice->parsed()) {
            emit_document(opt, gen_lattice(g));
        }
        return 0;
    }

    if (cls->parsed()) {
        const StateDocument doc = read_document(input);
        const ResolvedState state = resolve(doc);
        const auto battery = witnesses.empty() ? default_witness_battery(state.d) : witnesses;
        const auto report = classify(state, doc.kind, input, battery, opt.tol);
        write_text(opt.out, opt.format == "csv" ? report_to_csv(report) : dump(report_to_json(report)));
        return 0;
    }

    if (sweep->parsed()) {
        Table t;
        if (sw_eps->parsed()) {
            t = sweep_epsilon(Range::parse(range_text, log_scale), opt.tol);
        } else if (sw_gamma->parsed()) {
            t = sweep_gamma(Range::parse(range_text, log_scale), lambda, mu, opt.tol);
        } else {
            t = sweep_choi(Range::parse(a_text), Range::parse(b_text), Range::parse(c_text), trials, opt.seed);
        }
        // sweeps default to CSV unless JSON is asked for explicitly
        const bool json = app.count("--format") > 0 && opt.format == "json";
        write_text(opt.out, json ? dump(table_to_json(t)) : table_to_csv(t));
        return 0;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        const int code = qbell::cli::exit_code_for(e);
        std::cerr << (code == qbell::cli::kExitNumerical ? "numerical failure: " : "error: ") << e.what() << "\n";
        return code;
    }
}
