#include "qbell_cli/document.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qbell/families.hpp"

namespace qbell::cli {

namespace {

const Json& require(const Json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw DocumentError(std::string("missing field '") + key + "'");
    }
    return obj.at(key);
}

std::vector<double> real_list(const Json& j, const char* what) {
    if (!j.is_array()) throw DocumentError(std::string(what) + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw DocumentError(std::string(what) + " must be an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

bell::BellProbabilities family_probabilities(std::size_t d, const Json& payload, std::string& name) {
    name = require(payload, "name").get<std::string>();
    if (name == "epsilon") {
        if (d != 3) throw DocumentError("epsilon family requires d = 3");
        return families::rho_epsilon(require(payload, "eps").get<double>());
    }
    if (name == "gamma") {
        return families::rho_gamma(d, require(payload, "gamma").get<double>());
    }
    if (name == "delta") {
        return families::delta_distribution(d, require(payload, "k").get<std::size_t>(),
                                            real_list(require(payload, "pi"), "pi"));
    }
    if (name == "product") {
        return families::product_distribution(d, real_list(require(payload, "q"), "q"),
                                              real_list(require(payload, "p"), "p"));
    }
    throw DocumentError("unknown family '" + name + "'");
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw DocumentError("complex numbers must be [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != rows) {
        throw DocumentError("expected " + std::to_string(rows) + " matrix rows");
    }
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) {
            throw DocumentError("expected " + std::to_string(cols) + " entries in row " + std::to_string(r));
        }
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
    }
    return m;
}

StateDocument bell_document(const bell::BellProbabilities& bp, Json metadata) {
    StateDocument doc;
    doc.kind = "bell";
    doc.d = bp.d();
    doc.payload = {{"p", bp.values()}};
    doc.metadata = std::move(metadata);
    return doc;
}

StateDocument circulant_document(const circulant::CirculantState& cs, Json metadata) {
    StateDocument doc;
    doc.kind = "circulant";
    doc.d = cs.d();
    Json blocks = Json::array();
    for (const auto& b : cs.blocks().blocks) blocks.push_back(matrix_to_json(b));
    doc.payload = {{"blocks", std::move(blocks)}};
    doc.metadata = std::move(metadata);
    return doc;
}

StateDocument dense_document(std::size_t d, const ComplexMatrix& m, Json metadata) {
    if (m.rows() != d * d || m.cols() != d * d) throw DimensionError("dense document needs a d^2 x d^2 matrix");
    StateDocument doc;
    doc.kind = "dense";
    doc.d = d;
    doc.payload = {{"matrix", matrix_to_json(m)}};
    doc.metadata = std::move(metadata);
    return doc;
}

Json to_json(const StateDocument& doc) {
    Json j;
    j["kind"] = doc.kind;
    j["d"] = doc.d;
    j["payload"] = doc.payload;
    j["metadata"] = doc.metadata;
    j["version"] = doc.version;
    return j;
}

StateDocument document_from_json(const Json& j) {
    if (!j.is_object()) throw DocumentError("document must be a JSON object");
    StateDocument doc;
    const Json& kind = require(j, "kind");
    const Json& d = require(j, "d");
    if (!kind.is_string()) throw DocumentError("'kind' must be a string");
    if (!d.is_number_unsigned() || d.get<std::size_t>() < 2) throw DocumentError("'d' must be an integer >= 2");
    doc.kind = kind.get<std::string>();
    if (doc.kind != "bell" && doc.kind != "circulant" && doc.kind != "dense" && doc.kind != "family") {
        throw DocumentError("unknown kind '" + doc.kind + "'");
    }
    doc.d = d.get<std::size_t>();
    doc.payload = require(j, "payload");
    if (!doc.payload.is_object()) throw DocumentError("'payload' must be an object");
    if (j.contains("metadata")) doc.metadata = j.at("metadata");
    if (j.contains("version")) doc.version = j.at("version").get<std::string>();
    return doc;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

StateDocument read_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DocumentError("cannot open '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DocumentError("'" + path + "': " + e.what());
    }
    return document_from_json(j);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DocumentError("cannot write '" + path + "'");
    out << text;
    if (!out) throw DocumentError("write to '" + path + "' failed");
}

std::size_t max_dense_dim() {
    const char* env = std::getenv("QBELL_MAX_DIM");
    if (env == nullptr || *env == '\0') return kDefaultMaxDim;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || v == 0) throw DocumentError("QBELL_MAX_DIM must be a positive integer");
    return static_cast<std::size_t>(v);
}

bell::BellProbabilities bell_from_document(const StateDocument& doc) {
    if (doc.kind == "bell") {
        std::vector<double> p = real_list(require(doc.payload, "p"), "p");
        if (p.size() != doc.d * doc.d) throw DocumentError("'p' must have d^2 entries");
        return bell::BellProbabilities(doc.d, std::move(p));
    }
    if (doc.kind == "family") {
        std::string name;
        return family_probabilities(doc.d, doc.payload, name);
    }
    throw DocumentError("document of kind '" + doc.kind + "' has no Bell weights");
}

ResolvedState resolve(const StateDocument& doc, std::size_t max_dim) {
    const std::size_t d = doc.d;
    if (d * d > max_dim) {
        throw DocumentError("d^2 = " + std::to_string(d * d) + " exceeds the dense cap " + std::to_string(max_dim) +
                            " (set QBELL_MAX_DIM to raise it)");
    }
    ResolvedState rs;
    rs.d = d;
    if (doc.metadata.is_object() && doc.metadata.contains("family") && doc.metadata["family"].is_string()) {
        rs.family = doc.metadata["family"].get<std::string>();
    }
    try {
        if (doc.kind == "bell" || doc.kind == "family") {
            rs.bell = doc.kind == "family" ? family_probabilities(d, doc.payload, rs.family) : bell_from_document(doc);
            rs.circulant = bell::to_circulant(*rs.bell);
            rs.dense = circulant::assemble_dense(*rs.circulant);
        } else if (doc.kind == "circulant") {
            const Json& blocks = require(doc.payload, "blocks");
            if (!blocks.is_array() || blocks.size() != d) throw DocumentError("'blocks' must hold d matrices");
            circulant::BlockSet bs{d, {}};
            for (const auto& b : blocks) bs.blocks.push_back(matrix_from_json(b, d, d));
            rs.circulant = circulant::CirculantState(std::move(bs));
            rs.dense = circulant::assemble_dense(*rs.circulant);
        } else {
            rs.dense = matrix_from_json(require(doc.payload, "matrix"), d * d, d * d);
            if (!rs.dense.all_finite()) throw DocumentError("matrix has non-finite entries");
            try {
                rs.circulant = circulant::from_dense(rs.dense, d);
            } catch (const Error&) {
                // not a circulant state; classified densely
            }
        }
        if (rs.circulant && !rs.bell) {
            try {
                rs.bell = bell::from_circulant(*rs.circulant);
            } catch (const NotBellDiagonalError&) {
            }
        }
    } catch (const DocumentError&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        throw DocumentError(e.what());
    } catch (const InvalidArgument& e) {
        throw DocumentError(e.what());
    } catch (const DimensionError& e) {
        throw DocumentError(e.what());
    }
    return rs;
}

}  // namespace qbell::cli
