#include "qbell_cli/sweep.hpp"

#include <cmath>
#include <cstdio>

#include "qbell/families.hpp"
#include "qbell/linalg.hpp"
#include "qbell/witness.hpp"
#include "qbell_cli/classify.hpp"

namespace qbell::cli {

namespace {

struct PptData {
    bool ppt = false;
    double min_pt_eigenvalue = 0.0;
};

// Dense partial-transpose spectrum, cross-checked against the block verdict.
PptData ppt_data(const bell::BellProbabilities& bp, const ComplexMatrix& dense, double tol) {
    PptData out;
    const ComplexMatrix pt = brute_partial_transpose(dense, bp.d());
    out.min_pt_eigenvalue = min_eigenvalue(pt);
    out.ppt = is_psd(pt, tol);
    if (bell::is_ppt_bell(bp, tol) != out.ppt) {
        throw NumericalAssertionError("block PPT verdict disagrees with the dense oracle during sweep");
    }
    return out;
}

double flag(bool b) { return b ? 1.0 : 0.0; }

}  // namespace

Range Range::parse(const std::string& text, bool log) {
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos) {
        throw InvalidArgument("range must look like from:to:steps, got '" + text + "'");
    }
    Range r;
    r.log = log;
    try {
        std::size_t used = 0;
        const std::string a = text.substr(0, c1), b = text.substr(c1 + 1, c2 - c1 - 1), n = text.substr(c2 + 1);
        r.from = std::stod(a, &used);
        if (used != a.size()) throw InvalidArgument("");
        r.to = std::stod(b, &used);
        if (used != b.size()) throw InvalidArgument("");
        const long long steps = std::stoll(n, &used);
        if (used != n.size() || steps < 1) throw InvalidArgument("");
        r.steps = static_cast<std::size_t>(steps);
    } catch (const std::exception&) {
        throw InvalidArgument("range must look like from:to:steps with steps >= 1, got '" + text + "'");
    }
    if (!std::isfinite(r.from) || !std::isfinite(r.to)) throw InvalidArgument("range bounds must be finite");
    if (log && (r.from <= 0.0 || r.to <= 0.0)) throw InvalidArgument("log range needs positive bounds");
    return r;
}

std::vector<double> Range::points() const {
    std::vector<double> out;
    out.reserve(steps);
    if (steps == 1) {
        out.push_back(from);
        return out;
    }
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(steps - 1);
        out.push_back(log ? std::exp(std::log(from) + t * (std::log(to) - std::log(from))) : from + t * (to - from));
    }
    out.back() = to;
    return out;
}

Table sweep_epsilon(const Range& eps, double tol) {
    Table t;
    t.header = {"eps", "ppt", "min_pt_eigenvalue", "ccnr_value", "w_reduction", "w_choi_110", "w_choi_101"};
    const ComplexMatrix reduction = witness::reduction_witness(3);
    const ComplexMatrix choi_110 = witness::choi_grid(1.0, 1.0, 0.0);
    const ComplexMatrix choi_101 = witness::choi_grid(1.0, 0.0, 1.0);
    for (double e : eps.points()) {
        const auto bp = families::rho_epsilon(e);
        const auto cs = bell::to_circulant(bp);
        const ComplexMatrix rho = circulant::assemble_dense(cs);
        const auto pd = ppt_data(bp, rho, tol);
        t.rows.push_back({e, flag(pd.ppt), pd.min_pt_eigenvalue, circulant::ccnr_value(cs),
                          witness::evaluate(reduction, rho).value, witness::evaluate(choi_110, rho).value,
                          witness::evaluate(choi_101, rho).value});
    }
    return t;
}

Table sweep_gamma(const Range& gamma, double lambda, double mu, double tol) {
    Table t;
    t.header = {"gamma", "ppt", "min_pt_eigenvalue", "ccnr_value", "w_lambda_mu", "inside_region"};
    for (double g : gamma.points()) {
        const auto bp = families::rho_gamma(3, g);
        const auto cs = bell::to_circulant(bp);
        const ComplexMatrix rho = circulant::assemble_dense(cs);
        const auto pd = ppt_data(bp, rho, tol);
        const auto det = witness::detects_rho_gamma(lambda, mu, g);
        t.rows.push_back({g, flag(pd.ppt), pd.min_pt_eigenvalue, circulant::ccnr_value(cs), det.verdict.value,
                          flag(det.inside_region)});
    }
    return t;
}

Table sweep_choi(const Range& a, const Range& b, const Range& c, std::size_t trials, std::uint64_t seed) {
    Table t;
    t.header = {"a", "b", "c", "cond_a_range", "cond_sum", "cond_product", "valid", "min_eigenvalue",
                "block_positivity_min"};
    for (double av : a.points())
        for (double bv : b.points())
            for (double cv : c.points()) {
                const auto v = witness::choi_validity(av, bv, cv);
                const ComplexMatrix w = witness::choi_grid(av, bv, cv);
                t.rows.push_back({av, bv, cv, flag(v.a_in_range), flag(v.sum_condition), flag(v.product_condition),
                                  flag(v.valid()), min_eigenvalue(w),
                                  witness::block_positivity_sample(w, trials, seed)});
            }
    return t;
}

std::string table_to_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) out += (i ? "," : "") + table.header[i];
    out += "\n";
    char buf[40];
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.14e", row[i]);
            out += (i ? "," : "");
            out += buf;
        }
        out += "\n";
    }
    return out;
}

Json table_to_json(const Table& table) {
    Json rows = Json::array();
    for (const auto& row : table.rows) {
        Json obj;
        for (std::size_t i = 0; i < row.size(); ++i) obj[table.header[i]] = row[i];
        rows.push_back(std::move(obj));
    }
    return Json{{"columns", table.header}, {"rows", std::move(rows)}, {"version", kFormatVersion}};
}

}  // namespace qbell::cli
