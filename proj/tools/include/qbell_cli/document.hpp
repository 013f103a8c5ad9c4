#pragma once

// JSON state documents:
//   {"kind": "bell" | "circulant" | "dense" | "family",
//    "d": <int>, "payload": {...}, "metadata": {...}, "version": "<string>"}
// Complex numbers are [re, im] pairs. Payloads:
//   bell       {"p": [p_00, p_01, ..., p_{d-1,d-1}]}       (row-major, m then n)
//   circulant  {"blocks": [block_0, ..., block_{d-1}]}      (each d rows of [re, im])
//   dense      {"matrix": [...]}                            (d^2 rows of [re, im])
//   family     {"name": "epsilon", "eps": x}
//              {"name": "gamma", "gamma": x}
//              {"name": "delta", "k": i, "pi": [...]}
//              {"name": "product", "q": [...], "p": [...]}

#include <cstddef>
#include <optional>
#include <string>

#include <json.hpp>

#include "qbell/belldiag.hpp"
#include "qbell/error.hpp"
#include "qbell/circulant.hpp"
#include "qbell/matrix.hpp"

namespace qbell::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "1";
inline constexpr std::size_t kDefaultMaxDim = 64;  // cap on d^2 for dense work

// Malformed document or unreadable file.
class DocumentError : public Error {
public:
    using Error::Error;
};

struct StateDocument {
    std::string kind;
    std::size_t d = 0;
    Json payload = Json::object();
    Json metadata = Json::object();
    std::string version = kFormatVersion;
};

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols);

StateDocument bell_document(const bell::BellProbabilities& bp, Json metadata = Json::object());
StateDocument circulant_document(const circulant::CirculantState& cs, Json metadata = Json::object());
StateDocument dense_document(std::size_t d, const ComplexMatrix& m, Json metadata = Json::object());

Json to_json(const StateDocument& doc);
StateDocument document_from_json(const Json& j);

std::string dump(const Json& j);
StateDocument read_document(const std::string& path);
// Writes to stdout when `path` is empty.
void write_text(const std::string& path, const std::string& text);

// d^2 cap for dense work: QBELL_MAX_DIM when set, else kDefaultMaxDim.
std::size_t max_dense_dim();

// A document resolved to concrete objects. `circulant` and `bell` are filled
// when the state has that structure.
struct ResolvedState {
    std::size_t d = 0;
    ComplexMatrix dense;
    std::optional<circulant::CirculantState> circulant;
    std::optional<bell::BellProbabilities> bell;
    std::string family;  // family name from payload or metadata, if any
};

// Throws DocumentError for malformed payloads or when d^2 exceeds the cap.
ResolvedState resolve(const StateDocument& doc, std::size_t max_dim = max_dense_dim());

bell::BellProbabilities bell_from_document(const StateDocument& doc);

}  // namespace qbell::cli
