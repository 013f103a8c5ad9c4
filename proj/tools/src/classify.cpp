#include "qbell_cli/classify.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qbell/families.hpp"
#include "qbell/linalg.hpp"

namespace qbell::cli {

namespace {

std::vector<double> parse_numbers(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw InvalidArgument("bad number '" + item + "'");
        }
        if (used != item.size()) throw InvalidArgument("bad number '" + item + "'");
        out.push_back(v);
    }
    return out;
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.14e", v);
    return buf;
}

// Rank-one weights p_mn = q_m p_n; returns the marginals when they reproduce p.
bool product_marginals(const bell::BellProbabilities& bp, std::vector<double>& q, std::vector<double>& p) {
    const std::size_t d = bp.d();
    q.assign(d, 0.0);
    p.assign(d, 0.0);
    for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n) {
            q[m] += bp(m, n);
            p[n] += bp(m, n);
        }
    for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n)
            if (std::abs(bp(m, n) - q[m] * p[n]) > 1e-12) return false;
    return true;
}

void family_notes(const ResolvedState& state, ClassificationReport& r) {
    if (!state.family.empty()) r.notes.push_back("family: " + state.family);
    if (!state.bell) return;
    std::vector<double> q, p;
    if (!product_marginals(*state.bell, q, p)) return;
    std::size_t rows = 0, k = 0;
    for (std::size_t m = 0; m < q.size(); ++m)
        if (q[m] > 1e-12) {
            ++rows;
            k = m;
        }
    const auto ev = rows == 1 ? families::classify_delta(state.d, k, p) : families::classify_product(state.d, q, p);
    r.notes.push_back(ev.note + " (claim; PPT and realignment values are the numerical evidence)");
}

}  // namespace

std::vector<std::string> default_witness_battery(std::size_t d) {
    std::vector<std::string> out{"reduction", "flip"};
    if (d == 3) {
        out.push_back("choi:1,1,0");
        out.push_back("choi:1,0,1");
    } else if (d > 3) {
        out.push_back("wdk:1");
    }
    return out;
}

ComplexMatrix witness_from_spec(const std::string& spec, std::size_t d) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::vector<double> args =
        colon == std::string::npos ? std::vector<double>{} : parse_numbers(spec.substr(colon + 1));
    const auto expect = [&](std::size_t n) {
        if (args.size() != n) {
            throw InvalidArgument("witness '" + name + "' takes " + std::to_string(n) + " parameter(s)");
        }
    };
    const auto need_d3 = [&] {
        if (d != 3) throw InvalidArgument("witness '" + name + "' is defined for d = 3 only");
    };
    if (name == "reduction") {
        expect(0);
        return witness::reduction_witness(d);
    }
    if (name == "flip") {
        expect(0);
        return witness::flip(d);
    }
    if (name == "choi") {
        expect(3);
        need_d3();
        auto cw = witness::choi_witness(args[0], args[1], args[2]);
        if (!cw.verdict.valid()) throw InvalidArgument("choi parameters " + spec + " do not give a witness");
        return cw.matrix;
    }
    if (name == "wlm") {
        expect(2);
        need_d3();
        return witness::w_lambda_mu(args[0], args[1]);
    }
    if (name == "wdk") {
        expect(1);
        const double k = args[0];
        if (k != std::floor(k) || k < 1) throw InvalidArgument("wdk needs an integer k >= 1");
        return witness::w_dk(d, static_cast<std::size_t>(k));
    }
    throw InvalidArgument("unknown witness '" + spec + "'");
}

ClassificationReport classify(const ResolvedState& state, const std::string& kind, const std::string& state_id,
                              const std::vector<std::string>& witnesses, double tol) {
    ClassificationReport r;
    r.d = state.d;
    r.kind = kind;
    r.state_id = state_id;
    const std::size_t d = state.d;
    const ComplexMatrix& rho = state.dense;

    r.hermitian = hermiticity_defect(rho) <= tol * (1.0 + rho.max_abs());
    r.unit_trace = std::abs(rho.trace() - Complex{1.0, 0.0}) <= tol;
    r.circulant = state.circulant.has_value();
    r.bell_diagonal = state.bell.has_value();
    r.ccnr_value = trace_norm(brute_realign(rho, d));

    if (!r.hermitian) {
        r.notes.push_back("input is not Hermitian; spectral checks and witnesses skipped");
        return r;
    }

    r.psd = is_psd(rho, tol);
    const ComplexMatrix pt = brute_partial_transpose(rho, d);
    r.min_pt_eigenvalue = min_eigenvalue(pt);
    r.ppt_oracle = is_psd(pt, tol);

    if (state.circulant) {
        const bool blocks_ppt = circulant::is_ppt(*state.circulant, tol);
        r.ppt_closed_form = blocks_ppt;
        if (blocks_ppt != r.ppt_oracle) {
            throw NumericalAssertionError("tilde-block PPT verdict " + std::to_string(blocks_ppt) +
                                          " disagrees with dense partial transpose verdict " +
                                          std::to_string(r.ppt_oracle) +
                                          " (min PT eigenvalue " + format_real(r.min_pt_eigenvalue) + ")");
        }
        const double closed_ccnr = circulant::ccnr_value(*state.circulant);
        if (std::abs(closed_ccnr - r.ccnr_value) > 1e-9) {
            throw NumericalAssertionError("block realignment trace norm " + format_real(closed_ccnr) +
                                          " disagrees with dense value " + format_real(r.ccnr_value));
        }
    }
    if (state.bell) {
        const auto& bp = *state.bell;
        const bool orbit_ppt = bell::is_ppt_bell(bp, tol);
        if (orbit_ppt != r.ppt_oracle) {
            throw NumericalAssertionError("orbit-representative PPT verdict " + std::to_string(orbit_ppt) +
                                          " disagrees with dense verdict " + std::to_string(r.ppt_oracle));
        }
        if (d == 2 && bell::ppt_d2(bp, tol) != r.ppt_oracle) {
            throw NumericalAssertionError("d = 2 closed-form PPT verdict disagrees with dense verdict");
        }
        if (d == 3) {
            const auto v = bell::ppt_d3(bp);
            if (!v.consistent) {
                r.notes.push_back("d = 3 minor conditions disagree with the block eigenvalues (boundary case)");
            }
        }
        if (d == 4 && bell::ppt_d4(bp, tol) != r.ppt_oracle) {
            throw NumericalAssertionError("d = 4 closed-form PPT verdict disagrees with dense verdict");
        }
        r.notes.push_back("Bell diagonal");
    } else if (state.circulant) {
        r.notes.push_back("circulant");
    }

    for (const auto& spec : witnesses) {
        r.witness_results.push_back(witness::evaluate(witness_from_spec(spec, d), rho, spec, state_id));
    }

    family_notes(state, r);

    const bool ccnr_violated = r.ccnr_value > 1.0 + tol;
    bool detected = false;
    for (const auto& w : r.witness_results) {
        if (w.detected) {
            detected = true;
            r.notes.push_back("witness " + w.witness_id + " detects entanglement");
        }
    }
    if (!r.psd || !r.unit_trace) r.notes.push_back("not a density matrix");
    if (!r.ppt_oracle) r.notes.push_back("NPT: entangled");
    if (ccnr_violated) r.notes.push_back("realignment criterion certifies entanglement");
    if (r.ppt_oracle && ccnr_violated) r.notes.push_back("PPT entangled (bound entangled)");
    if (r.ppt_oracle && !ccnr_violated && !detected) {
        r.notes.push_back("consistent with separability (PPT, realignment and witnesses pass)");
    }
    return r;
}

Json report_to_json(const ClassificationReport& r) {
    Json j;
    j["d"] = r.d;
    j["kind"] = r.kind;
    j["state_id"] = r.state_id;
    j["hermitian"] = r.hermitian;
    j["unit_trace"] = r.unit_trace;
    j["psd"] = r.psd;
    j["circulant"] = r.circulant;
    j["bell_diagonal"] = r.bell_diagonal;
    j["ppt_closed_form"] = r.ppt_closed_form ? Json(*r.ppt_closed_form) : Json(nullptr);
    j["ppt_oracle"] = r.ppt_oracle;
    j["min_pt_eigenvalue"] = r.min_pt_eigenvalue;
    j["ccnr_value"] = r.ccnr_value;
    Json ws = Json::array();
    for (const auto& w : r.witness_results) {
        ws.push_back({{"witness_id", w.witness_id}, {"state_id", w.state_id}, {"value", w.value},
                      {"detected", w.detected}});
    }
    j["witness_results"] = std::move(ws);
    j["notes"] = r.notes;
    j["version"] = kFormatVersion;
    return j;
}

std::string report_to_csv(const ClassificationReport& r) {
    std::string header =
        "d,kind,hermitian,unit_trace,psd,circulant,bell_diagonal,ppt_closed_form,ppt_oracle,min_pt_eigenvalue,"
        "ccnr_value";
    const auto flag = [](bool b) { return b ? std::string("1") : std::string("0"); };
    std::string row = std::to_string(r.d) + "," + r.kind + "," + flag(r.hermitian) + "," + flag(r.unit_trace) + "," +
                      flag(r.psd) + "," + flag(r.circulant) + "," + flag(r.bell_diagonal) + "," +
                      (r.ppt_closed_form ? flag(*r.ppt_closed_form) : std::string()) + "," + flag(r.ppt_oracle) +
                      "," + format_real(r.min_pt_eigenvalue) + "," + format_real(r.ccnr_value);
    for (const auto& w : r.witness_results) {
        header += ",\"w[" + w.witness_id + "]\"";
        row += "," + format_real(w.value);
    }
    return header + "\n" + row + "\n";
}

}  // namespace qbell::cli
