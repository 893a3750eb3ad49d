// hgff: evaluate finite-field and p-adic hypergeometric functions and verify
// their relations to modular form coefficients.

#include <fstream>
#include <iostream>
#include <set>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hgff/errors.hpp"
#include "hgff/hypergeometric.hpp"
#include "hgff/newform.hpp"
#include "hgff/padic.hpp"
#include "hgff/relations.hpp"

using namespace hgff;

namespace {

int cmd_list(bool as_json) {
    if (as_json) {
        nlohmann::ordered_json out = nlohmann::ordered_json::array();
        for (const auto& s : registry()) {
            out.push_back({{"id", s.id},
                           {"description", s.description},
                           {"hyp", s.hyp},
                           {"field", s.field},
                           {"oracle", s.oracle},
                           {"transform", s.transform},
                           {"sign", s.sign_kind ? to_string(*s.sign_kind) : ""},
                           {"condition", s.condition},
                           {"backend", to_string(s.backend)},
                           {"conjectural", s.conjectural},
                           {"conjugate_sensitive", s.conjugate_sensitive},
                           {"ceiling", s.ceiling},
                           {"note", s.note}});
        }
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    for (const auto& s : registry()) {
        std::cout << s.id << "  [" << s.condition << "; " << to_string(s.backend)
                  << (s.conjectural ? "; conjectural" : "") << "]\n    " << s.description << "\n";
    }
    return 0;
}

std::pair<std::int64_t, int> split_prime_power(std::int64_t q) {
    for (std::int64_t p = 2; p <= q; ++p) {
        if (q % p) continue;
        int n = 0;
        std::int64_t r = q;
        while (r % p == 0) {
            r /= p;
            ++n;
        }
        if (r != 1) break;
        return {p, n};
    }
    throw Error(ErrorCode::InvalidPrime, std::to_string(q) + " is not a prime power");
}

int cmd_eval(const std::string& params_text, const std::string& x_text, std::int64_t q, const std::string& backend,
             int precision, int padic_k) {
    const auto [p, n] = split_prime_power(q);
    if (p == 2) throw Error(ErrorCode::InvalidPrime, "q must be odd");
    if (n > 3) throw Error(ErrorCode::InvalidArgument, "fields of degree above 3 are not supported");
    const RationalParams labels = parse_params(params_text);
    const Rational x = parse_rational(x_text);
    std::optional<BigInt> complex_int;

    if (backend == "complex" || backend == "both") {
        const auto fld = make_field(p, n);
        const FieldElement xe = field_element_from_rational(fld, x);
        const ComplexValue v = eval_F(params_from_labels(fld, labels, xe), *gauss_table(fld, precision));
        std::cout << "F = " << v.to_string(20) << "  (err " << v.err() << ")\n";
        try {
            complex_int = round_to_integer(v);
            std::cout << "F is the integer " << *complex_int << "\n";
        } catch (const Error&) {
        }
    }
    if (backend == "padic" || backend == "both") {
        if (n != 1) throw Error(ErrorCode::InvalidArgument, "the p-adic backend needs q = p");
        if (x.numerator() % p == 0) throw Error(ErrorCode::InvalidArgument, "x must be a unit for the p-adic backend");
        // F(A|x) = G(a|1/x) with the character t/k read as the parameter <-t/k>.
        GParams g;
        for (const auto& a : labels.upper) g.a.push_back(frac(-a));
        for (const auto& b : labels.lower) g.b.push_back(frac(-b));
        const auto fld = make_field(p, 1);
        g.x = static_cast<std::int64_t>(fld->inv(field_element_from_rational(fld, x)).code);
        const int k = padic_k > 0 ? padic_k : default_precision(p, static_cast<int>(labels.upper.size()) + 1);
        const PadicResidue r = eval_G(p, g, k);
        const BigInt half = (BigInt(r.modulus()) - 1) / 2;
        const BigInt lift = lift_symmetric(r, half);
        std::cout << "G = " << r.value << " mod " << p << "^" << k << "  (symmetric lift " << lift << ")\n";
        if (complex_int) {
            const bool agree = *complex_int == lift;
            std::cout << "backends " << (agree ? "agree" : "disagree") << "\n";
            return agree ? 0 : 1;
        }
    }
    return 0;
}

std::set<std::string> data_labels(const std::string& filter) {
    std::set<std::string> out;
    for (const auto& s : registry()) {
        if (!id_matches(filter, s.id)) continue;
        if (s.oracle.rfind("data:", 0) == 0) out.insert(s.oracle.substr(5));
    }
    return out;
}

int cmd_verify(SuiteOptions opts, const std::string& out_path, const std::string& endpoint) {
    if (!endpoint.empty()) {
        for (const auto& label : data_labels(opts.filter)) {
            try {
                fetch_newform(label, endpoint, data_dir());
            } catch (const Error& e) {
                std::cerr << "warning: " << e.what() << "\n";
            }
        }
    }
    const SuiteResult result = run_suite(opts);
    const std::string json = report_json(result, opts);
    if (out_path == "-") {
        std::cout << json;
    } else if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << json;
    }
    std::cerr << summary_text(result);
    return result.exit_status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-field hypergeometric functions and modular forms"};
    app.require_subcommand(1);

    auto* relations = app.add_subcommand("relations", "Inspect the relation registry");
    relations->require_subcommand(1);
    auto* list = relations->add_subcommand("list", "List every relation");
    bool list_json = false;
    list->add_flag("--json", list_json, "Print the registry as JSON");

    auto* eval = app.add_subcommand("eval", "Evaluate mFm(A; B | x)_q");
    std::string params, x_text = "1", backend = "complex";
    std::int64_t q = 0;
    int precision = kDefaultPrecision, padic_k = 0;
    eval->add_option("--params", params, "Labels 'a1,..,am;b1,..,bm' (t/k is chi_k^t)")->required();
    eval->add_option("--x", x_text, "Argument, a rational number");
    eval->add_option("--q", q, "Field size p^n, n <= 3")->required();
    eval->add_option("--backend", backend, "complex, padic or both")
        ->check(CLI::IsMember({"complex", "padic", "both"}));
    eval->add_option("--precision", precision, "Working precision in bits")->check(CLI::Range(64, 4096));
    eval->add_option("--padic-precision", padic_k, "p-adic precision k (default from the Weil bound)");

    auto* verify = app.add_subcommand("verify", "Check relations over a range of primes");
    SuiteOptions opts;
    std::string out_path, endpoint;
    opts.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    verify->add_option("--filter", opts.filter, "Glob on relation ids");
    verify->add_option("--pmin", opts.pmin, "Smallest prime");
    verify->add_option("--pmax", opts.pmax, "Largest prime");
    verify->add_option("--jobs", opts.jobs, "Worker threads")->check(CLI::PositiveNumber);
    verify->add_option("--out", out_path, "Write the JSON report here ('-' for stdout)");
    verify->add_flag("--strict-conjectures", opts.strict_conjectures, "Fail the run on conjectural failures");
    verify->add_flag("--timing", opts.timing, "Include per-check timings in the report");
    verify->add_option("--endpoint", endpoint, "Fetch missing newform data from this URL template");

    auto* data = app.add_subcommand("data", "Newform data management");
    data->require_subcommand(1);
    auto* fetch = data->add_subcommand("fetch", "Make a newform data file available locally");
    std::string label, fetch_endpoint, dest;
    fetch->add_option("--label", label, "Newform label")->required();
    fetch->add_option("--endpoint", fetch_endpoint, "URL template, '{label}' is substituted");
    fetch->add_option("--dest", dest, "Output directory (default: the data directory)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) return cmd_list(list_json);
        if (eval->parsed()) return cmd_eval(params, x_text, q, backend, precision, padic_k);
        if (verify->parsed()) return cmd_verify(opts, out_path, endpoint);
        if (fetch->parsed()) {
            const auto path = fetch_newform(label, fetch_endpoint, dest.empty() ? data_dir() : std::filesystem::path(dest));
            std::cout << path.string() << "\n";
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
