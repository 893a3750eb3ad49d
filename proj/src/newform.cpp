#include "hgff/newform.hpp"

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hgff/errors.hpp"

namespace hgff {

using nlohmann::json;

std::filesystem::path data_dir() {
    if (const char* env = std::getenv("HGFF_DATA_DIR"); env != nullptr && *env != '\0') return env;
    return "data";
}

namespace {

Rational parse_coord(const json& v) {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (!v.is_string()) throw Error(ErrorCode::DataFormatError, "coefficient entries must be strings");
    const std::string s = v.get<std::string>();
    const auto slash = s.find('/');
    try {
        std::size_t used = 0;
        const std::int64_t num = std::stoll(s.substr(0, slash), &used);
        if (used != (slash == std::string::npos ? s.size() : slash)) throw std::invalid_argument(s);
        std::int64_t den = 1;
        if (slash != std::string::npos) {
            const std::string tail = s.substr(slash + 1);
            den = std::stoll(tail, &used);
            if (used != tail.size() || den == 0) throw std::invalid_argument(s);
        }
        return Rational(num, den);
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::DataFormatError, "bad coefficient '" + s + "'");
    }
}

template <typename T>
T field_as(const json& doc, const char* key) {
    if (!doc.contains(key)) throw Error(ErrorCode::DataFormatError, std::string("missing field '") + key + "'");
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception&) {
        throw Error(ErrorCode::DataFormatError, std::string("field '") + key + "' has the wrong type");
    }
}

using Cplx = std::complex<long double>;

Cplx horner(const std::vector<std::int64_t>& poly, Cplx z) {
    Cplx acc = 0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * z + static_cast<long double>(*it);
    return acc;
}

// Durand-Kerner seeds for a monic polynomial.
std::vector<Cplx> seed_roots(const std::vector<std::int64_t>& poly) {
    const std::size_t n = poly.size() - 1;
    std::vector<Cplx> z(n);
    const Cplx base(0.4L, 0.9L);
    long double radius = 1;
    for (auto c : poly) radius = std::max(radius, std::abs(static_cast<long double>(c)) + 1);
    for (std::size_t i = 0; i < n; ++i) z[i] = std::pow(base, static_cast<long double>(i)) * std::min(radius, 2.0L);
    for (int iter = 0; iter < 500; ++iter) {
        long double change = 0;
        for (std::size_t i = 0; i < n; ++i) {
            Cplx den = 1;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) den *= z[i] - z[j];
            const Cplx step = horner(poly, z[i]) / den;
            z[i] -= step;
            change = std::max(change, std::abs(step));
        }
        if (change < 1e-17L) break;
    }
    return z;
}

// f(z) and f'(z) with tracked error.
std::pair<ComplexValue, ComplexValue> eval_with_derivative(const std::vector<std::int64_t>& poly,
                                                           const ComplexValue& z, int precision) {
    ComplexValue f(precision), df(precision);
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) {
        df *= z;
        df += f;
        f *= z;
        f += ComplexValue::from_integer(*it, precision);
    }
    return {f, df};
}

}  // namespace

std::vector<ComplexValue> polynomial_roots(const std::vector<std::int64_t>& poly, int precision) {
    if (poly.size() < 2 || poly.back() != 1) throw Error(ErrorCode::DataFormatError, "field polynomial must be monic");
    const std::size_t n = poly.size() - 1;
    std::vector<ComplexValue> roots;
    if (n == 1) {
        roots.push_back(ComplexValue::from_integer(-poly[0], precision));
        return roots;
    }
    for (const Cplx& seed : seed_roots(poly)) {
        ComplexValue z(static_cast<double>(seed.real()), static_cast<double>(seed.imag()), 0.0, precision);
        for (int iter = 0; iter < 12; ++iter) {
            auto [f, df] = eval_with_derivative(poly, z, precision);
            z -= f / df;
            z = ComplexValue::from_parts(z.re().get(), z.im().get(), 0.0, precision);
        }
        // A root lies within n |f(z) / f'(z)| of z.
        auto [f, df] = eval_with_derivative(poly, z, precision);
        const double fmag = f.l1_upper() + f.err();
        const double dlow = std::max(std::abs(df.re_double()), std::abs(df.im_double())) - df.err();
        if (!(dlow > 0)) throw Error(ErrorCode::PrecisionExhausted, "repeated root in field polynomial");
        z.widen(static_cast<double>(n) * fmag / dlow * (1 + 1e-9));
        roots.push_back(std::move(z));
    }
    std::sort(roots.begin(), roots.end(), [](const ComplexValue& a, const ComplexValue& b) {
        const double tol = 1e-20;
        if (std::abs(a.re_double() - b.re_double()) > tol) return a.re_double() < b.re_double();
        return a.im_double() < b.im_double();
    });
    return roots;
}

Newform parse_newform(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::DataFormatError, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::DataFormatError, "newform document must be an object");
    Newform f;
    f.label = field_as<std::string>(doc, "label");
    f.weight = field_as<int>(doc, "weight");
    f.level = field_as<int>(doc, "level");
    f.character = field_as<std::string>(doc, "char");
    f.field_poly = field_as<std::vector<std::int64_t>>(doc, "field_poly");
    f.embedding_precision_bits = doc.contains("embedding_precision_bits")
                                     ? field_as<int>(doc, "embedding_precision_bits")
                                     : 256;
    if (f.field_poly.size() < 2 || f.field_poly.back() != 1)
        throw Error(ErrorCode::DataFormatError, "field_poly must be monic of degree >= 1");
    if (f.embedding_precision_bits < 53) throw Error(ErrorCode::DataFormatError, "embedding precision below 53 bits");
    if (!doc.contains("an") || !doc["an"].is_array() || doc["an"].empty())
        throw Error(ErrorCode::DataFormatError, "missing coefficient list 'an'");
    const auto deg = static_cast<std::size_t>(f.degree());
    for (const auto& row : doc["an"]) {
        if (!row.is_array() || row.size() != deg)
            throw Error(ErrorCode::DataFormatError, "coefficient vector length differs from the field degree");
        std::vector<Rational> coords;
        for (const auto& v : row) coords.push_back(parse_coord(v));
        f.an.push_back(std::move(coords));
    }
    const auto& a1 = f.an.front();
    if (a1[0] != Rational(1) || std::any_of(a1.begin() + 1, a1.end(), [](const Rational& r) { return r.numerator() != 0; }))
        throw Error(ErrorCode::NotNormalized, f.label + ": a(1) != 1");
    f.embeddings = polynomial_roots(f.field_poly, f.embedding_precision_bits);
    return f;
}

Newform load_newform(std::istream& in) {
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_newform(ss.str());
}

Newform load_newform(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::LabelNotFound, "cannot open " + path.string());
    return load_newform(in);
}

Newform load_newform_label(const std::string& label) {
    const auto path = data_dir() / (label + ".json");
    if (!std::filesystem::exists(path)) throw Error(ErrorCode::LabelNotFound, "no data file for " + label);
    return load_newform(path);
}

std::string newform_to_json(const Newform& f) {
    json doc;
    doc["label"] = f.label;
    doc["weight"] = f.weight;
    doc["level"] = f.level;
    doc["char"] = f.character;
    doc["field_poly"] = f.field_poly;
    json an = json::array();
    for (const auto& row : f.an) {
        json r = json::array();
        for (const auto& c : row) r.push_back(std::to_string(c.numerator()) + "/" + std::to_string(c.denominator()));
        an.push_back(std::move(r));
    }
    doc["an"] = std::move(an);
    doc["embedding_precision_bits"] = f.embedding_precision_bits;
    return doc.dump();
}

const std::vector<Rational>& coeff(const Newform& f, std::int64_t n) {
    if (n < 1 || n > f.max_n())
        throw Error(ErrorCode::IndexOutOfRange, f.label + ": coefficient " + std::to_string(n) + " not stored");
    return f.an[static_cast<std::size_t>(n - 1)];
}

std::optional<BigInt> coeff_integer(const Newform& f, std::int64_t n) {
    const auto& c = coeff(f, n);
    if (c[0].denominator() != 1) return std::nullopt;
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i].numerator() != 0) return std::nullopt;
    return BigInt(c[0].numerator());
}

ComplexValue coeff_embedded(const Newform& f, std::int64_t n, std::size_t e) {
    const auto& c = coeff(f, n);
    if (e >= f.embeddings.size())
        throw Error(ErrorCode::IndexOutOfRange, f.label + ": embedding " + std::to_string(e) + " does not exist");
    const int prec = f.embedding_precision_bits;
    const ComplexValue& root = f.embeddings[e];
    ComplexValue acc(prec);
    for (std::size_t j = c.size(); j-- > 0;) {
        acc *= root;
        acc += ComplexValue::from_rational(c[j], prec);
    }
    return acc;
}

}  // namespace hgff
