#pragma once

// Newform coefficient data: the JSON snapshot format, complex embeddings of
// the coefficient field, and the optional network client.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hgff/algebraic.hpp"

namespace hgff {

struct Newform {
    std::string label;
    int weight = 0;
    int level = 0;
    std::string character;
    std::vector<std::int64_t> field_poly;  // monic, constant term first
    std::vector<std::vector<Rational>> an; // an[n - 1] over the power basis
    int embedding_precision_bits = 256;
    std::vector<ComplexValue> embeddings;  // roots of field_poly, sorted by (re, im)

    int degree() const { return static_cast<int>(field_poly.size()) - 1; }
    std::int64_t max_n() const { return static_cast<std::int64_t>(an.size()); }
};

/// Directory holding <label>.json files: $HGFF_DATA_DIR or ./data.
std::filesystem::path data_dir();

Newform parse_newform(const std::string& json_text);
Newform load_newform(const std::filesystem::path& path);
Newform load_newform(std::istream& in);
/// Loads data_dir()/<label>.json; LabelNotFound when the file is missing.
Newform load_newform_label(const std::string& label);

/// Serialises back to the snapshot schema.
std::string newform_to_json(const Newform& f);

/// Roots of an integer polynomial (constant term first) with certified
/// error discs, sorted by (re, im).
std::vector<ComplexValue> polynomial_roots(const std::vector<std::int64_t>& poly, int precision);

/// Coordinates of a(n); IndexOutOfRange outside 1..max_n.
const std::vector<Rational>& coeff(const Newform& f, std::int64_t n);
/// a(n) when it is a rational integer.
std::optional<BigInt> coeff_integer(const Newform& f, std::int64_t n);
/// a(n) under the e-th embedding.
ComplexValue coeff_embedded(const Newform& f, std::int64_t n, std::size_t e);

/// Makes <label>.json available locally and returns its path. The bundled
/// snapshot (data_dir()) is used when it has the label; otherwise the
/// endpoint is queried. endpoint is a URL template in which "{label}" is
/// replaced (or the label is appended when the template has no
/// placeholder). Responses may be a schema document or an LMFDB-style
/// {"data": [record]} envelope. Errors: LabelNotFound, FetchError.
std::filesystem::path fetch_newform(const std::string& label, const std::string& endpoint,
                                    const std::filesystem::path& dest_dir);

}  // namespace hgff
