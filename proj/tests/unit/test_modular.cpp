#include <doctest.h>

#include <atomic>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <unistd.h>

#include <httplib.h>

#include "helpers.hpp"
#include "hgff/elliptic.hpp"
#include "hgff/eta.hpp"
#include "hgff/newform.hpp"

using namespace hgff;

namespace {

// prod (1 - q^n)^r by repeated multiplication, degree <= D.
std::vector<BigInt> euler_power_direct(int r, int D) {
    std::vector<BigInt> out(static_cast<std::size_t>(D + 1), 0);
    out[0] = 1;
    for (int n = 1; n <= D; ++n)
        for (int t = 0; t < r; ++t)
            for (int i = D; i >= n; --i) out[static_cast<std::size_t>(i)] -= out[static_cast<std::size_t>(i - n)];
    return out;
}

bool close_to(const ComplexValue& z, double re, double im) {
    return certified_equal(z, ComplexValue(re, im, 1e-12, z.precision()));
}

std::filesystem::path scratch_dir(const std::string& name) {
    const auto d = std::filesystem::temp_directory_path() / ("hgff_test_" + name + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(d);
    std::filesystem::create_directories(d);
    return d;
}

}  // namespace

TEST_SUITE("modular") {

TEST_CASE("pentagonal series") {
    const auto e = euler_power(1, 30);
    std::vector<BigInt> expect(31, 0);
    for (int k : {0, 5, 7, 22, 26}) expect[static_cast<std::size_t>(k)] = 1;
    for (int k : {1, 2, 12, 15}) expect[static_cast<std::size_t>(k)] = -1;
    CHECK(e == expect);
    for (int r : {2, 3, 8, 24}) CHECK(euler_power(r, 40) == euler_power_direct(r, 40));
}

TEST_CASE("eta product expansions") {
    const auto a = eta_expansion(EtaProduct{{{4, 2}, {8, 2}}}, 10);
    CHECK(a[1] == 1);
    CHECK(a[5] == -2);
    const auto b = eta_expansion(EtaProduct{{{2, 4}, {4, 4}}}, 8);
    CHECK(b[3] == -4);
    const auto tau = eta_expansion(EtaProduct{{{1, 24}}}, 10);
    CHECK(tau[2] == -24);
    CHECK(tau[3] == 252);
    CHECK(tau[5] == 4830);
    CHECK(tau[7] == -16744);
    CHECK(tau[6] == tau[2] * tau[3]);
    CHECK(tau[4] == tau[2] * tau[2] - 2048);
    CHECK(EtaProduct{{{1, 24}}}.weight() == Rational(12));
    CHECK(error_of([] { eta_expansion(EtaProduct{{{1, 1}}}, 5); }) == ErrorCode::NotAnIntegralForm);
}

TEST_CASE("eta combinations") {
    const EtaCombination c{{{1, EtaProduct{{{1, 8}, {4, 4}}}}, {8, EtaProduct{{{4, 12}}}}}};
    const auto v = eta_expansion(c, 20);
    const auto x = eta_expansion(EtaProduct{{{1, 8}, {4, 4}}}, 20);
    const auto y = eta_expansion(EtaProduct{{{4, 12}}}, 20);
    for (int n = 0; n <= 20; ++n)
        CHECK(v[static_cast<std::size_t>(n)] == x[static_cast<std::size_t>(n)] + 8 * y[static_cast<std::size_t>(n)]);
    // normalized newform: a(1) = 1 and multiplicative at coprime indices
    CHECK(v[1] == 1);
    CHECK(v[15] == v[3] * v[5]);
}

TEST_CASE("point counts") {
    const auto f5 = make_field(5, 1);
    CHECK(ec_ap(EllipticCurve::weierstrass(-1, 0), f5) == -2);
    CHECK(ec_ap_naive(EllipticCurve::weierstrass(-1, 0), f5) == -2);
    const auto f7 = make_field(7, 1);
    CHECK(ec_ap(EllipticCurve::weierstrass(27, -27), f7) == -4);
    CHECK(ec_ap(EllipticCurve::legendre(Rational(-1)), f5) == ec_ap(EllipticCurve::weierstrass(-1, 0), f5));
    CHECK(error_of([&] { ec_ap(EllipticCurve::weierstrass(0, 0), f5); }) == ErrorCode::SingularReduction);
    CHECK(error_of([&] { ec_ap(EllipticCurve::legendre(Rational(1)), f5); }) == ErrorCode::SingularReduction);
    CHECK(error_of([&] { ec_ap(EllipticCurve::legendre(Rational(1, 7)), f7); }) == ErrorCode::SingularReduction);
    // bad reduction at 5, multiplicative
    CHECK(ec_ap_any_reduction(EllipticCurve::weierstrass(27, -27), f5) == -1);
}

TEST_CASE("character-sum count equals enumeration") {
    const EllipticCurve curves[] = {EllipticCurve::weierstrass(1, 1), EllipticCurve::weierstrass(-1, 1),
                                    EllipticCurve::weierstrass(-3, 5), EllipticCurve::legendre(Rational(3))};
    for (auto [p, n] : {std::pair{7, 1}, std::pair{11, 1}, std::pair{29, 1}, std::pair{5, 2}, std::pair{7, 2},
                        std::pair{3, 3}}) {
        const auto f = make_field(p, n);
        for (const auto& E : curves) {
            const auto a = error_of([&] { ec_ap(E, f); });
            const auto b = error_of([&] { ec_ap_naive(E, f); });
            CHECK(a == b);
            if (!a) CHECK(ec_ap(E, f) == ec_ap_naive(E, f));
        }
    }
}

TEST_CASE("a(E, p)^2 = a(E, p^2) + 2p") {
    for (auto [a, b] : {std::pair{1, 1}, std::pair{-1, 1}, std::pair{-3, 5}}) {
        const EllipticCurve E = EllipticCurve::weierstrass(a, b);
        for (std::int64_t p : {5, 7, 11, 13, 17}) {
            if ((4 * a * a * a + 27 * b * b) % p == 0) continue;
            const std::int64_t ap = ec_ap(E, make_field(p, 1));
            CHECK(ap * ap == ec_ap(E, make_field(p, 2)) + 2 * p);
        }
    }
}

TEST_CASE("j-invariants") {
    for (std::int64_t p : {5, 7, 11, 13}) {
        const auto f = make_field(p, 1);
        CHECK(j_invariant(EllipticCurve::weierstrass(-1, 0), f) == f->from_int(1728));
        CHECK(j_invariant(EllipticCurve::weierstrass(0, 1), f) == f->zero());
    }
    const auto f7 = make_field(7, 1);
    const FieldElement j = j_invariant(EllipticCurve::weierstrass(27, -27), f7);
    CHECK(j != f7->zero());
    CHECK(j != f7->from_int(1728));
    // 1728 * 4 * 27^3 / (4 * 27^3 + 27 * 27^2) mod 7, by integers
    const std::int64_t num = 1728 * 4 * 19683 % 7, den = (4 * 19683 + 27 * 729) % 7;
    std::int64_t inv = 1;
    while (inv * den % 7 != 1) ++inv;
    CHECK(j == f7->from_int(num * inv));
}

TEST_CASE("newform 27.3.b.b") {
    const Newform f = load_newform_label("27.3.b.b");
    CHECK(f.weight == 3);
    CHECK(f.level == 27);
    REQUIRE(f.embeddings.size() == 2);
    CHECK(close_to(coeff_embedded(f, 2, 0), 0, 3));
    for (std::size_t e = 0; e < 2; ++e) {
        CHECK(close_to(coeff_embedded(f, 7, e), 5, 0));
        CHECK(close_to(coeff_embedded(f, 1, e), 1, 0));
    }
    CHECK(coeff_integer(f, 7) == BigInt(5));
    CHECK_FALSE(coeff_integer(f, 2).has_value());
    CHECK(error_of([&] { coeff(f, 0); }) == ErrorCode::IndexOutOfRange);
    CHECK(error_of([&] { coeff(f, f.max_n() + 1); }) == ErrorCode::IndexOutOfRange);
    CHECK(error_of([&] { coeff_embedded(f, 2, 5); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("newform 32.3.c.a") {
    const Newform f = load_newform_label("32.3.c.a");
    for (std::size_t e = 0; e < f.embeddings.size(); ++e) {
        CHECK(close_to(coeff_embedded(f, 5, e), 2, 0));
        const ComplexValue a3 = coeff_embedded(f, 3, e);
        CHECK(certified_equal(a3 * a3, ComplexValue::from_integer(-16, 128)));
    }
}

TEST_CASE("newform 128.3.d.c has the zeta_8 pattern") {
    const Newform f = load_newform_label("128.3.d.c");
    REQUIRE(f.degree() == 4);
    std::set<std::pair<int, int>> signs;
    for (std::size_t e = 0; e < 4; ++e) {
        const ComplexValue a3 = coeff_embedded(f, 3, e), a5 = coeff_embedded(f, 5, e);
        CHECK(certified_equal(a3 * a3, ComplexValue::from_integer(8, 128)));
        CHECK(certified_equal(a5 * a5, ComplexValue::from_integer(-16, 128)));
        signs.insert({a3.re_double() > 0 ? 1 : -1, a5.im_double() > 0 ? 1 : -1});
    }
    CHECK(signs.size() == 4);
}

TEST_CASE("newform 768.2.a.j embeddings are conjugate") {
    const Newform f = load_newform_label("768.2.a.j");
    REQUIRE(f.embeddings.size() == 2);
    for (std::int64_t p : {5, 7, 11, 13, 17}) {
        const ComplexValue x = coeff_embedded(f, p, 0), y = coeff_embedded(f, p, 1);
        const BigInt tr = round_to_integer(x + y);
        const BigInt nm = round_to_integer(x * y);
        const auto& c = coeff(f, p);
        // a = c0 + c1 sqrt(3): trace 2 c0, norm c0^2 - 3 c1^2
        CHECK(tr == 2 * c[0].numerator());
        CHECK(nm == c[0].numerator() * c[0].numerator() - 3 * c[1].numerator() * c[1].numerator());
    }
}

TEST_CASE("polynomial roots") {
    const auto r = polynomial_roots({1, 0, 1}, 128);
    REQUIRE(r.size() == 2);
    CHECK(close_to(r[0], 0, -1));
    CHECK(close_to(r[1], 0, 1));
    const auto c = polynomial_roots({-2, 0, 0, 1}, 128);
    REQUIRE(c.size() == 3);
    for (const auto& z : c) CHECK(certified_equal(z * z * z, ComplexValue::from_integer(2, 128)));
}

TEST_CASE("snapshot parsing") {
    const std::string good =
        R"({"label":"t.2.a.a","weight":2,"level":11,"char":"trivial","field_poly":[0,1],"an":[["1/1"],["-2/1"],["-1/1"]]})";
    const Newform f = parse_newform(good);
    CHECK(f.label == "t.2.a.a");
    CHECK(f.max_n() == 3);
    CHECK(coeff_integer(f, 2) == BigInt(-2));
    const Newform g = parse_newform(newform_to_json(f));
    CHECK(g.an == f.an);
    CHECK(g.field_poly == f.field_poly);

    CHECK(error_of([] { parse_newform("{not json"); }) == ErrorCode::DataFormatError);
    CHECK(error_of([] { parse_newform(R"({"label":"x","weight":2})"); }) == ErrorCode::DataFormatError);
    CHECK(error_of([] {
              parse_newform(R"({"label":"x","weight":2,"level":1,"char":"","field_poly":[0,1],"an":[["1/x"]]})");
          }) == ErrorCode::DataFormatError);
    CHECK(error_of([] {
              parse_newform(R"({"label":"x","weight":2,"level":1,"char":"","field_poly":[0,1],"an":[["1/1","0/1"]]})");
          }) == ErrorCode::DataFormatError);
    CHECK(error_of([] {
              parse_newform(R"({"label":"x","weight":2,"level":1,"char":"","field_poly":[0,1],"an":[["2/1"]]})");
          }) == ErrorCode::NotNormalized);
    CHECK(error_of([] { load_newform_label("no.such.label"); }) == ErrorCode::LabelNotFound);
}

TEST_CASE("offline fetch") {
    const auto path = fetch_newform("27.3.b.b", "", data_dir());
    CHECK(std::filesystem::exists(path));
    CHECK(error_of([] { fetch_newform("no.such.label", "", data_dir()); }) == ErrorCode::LabelNotFound);
    CHECK(error_of([] { fetch_newform("../etc/passwd", "", data_dir()); }) == ErrorCode::LabelNotFound);
}

TEST_CASE("fetch from an HTTP endpoint") {
    httplib::Server server;
    std::atomic<int> hits{0};
    server.Get(R"(/forms/([^/]+))", [&](const httplib::Request& req, httplib::Response& res) {
        ++hits;
        const std::string label = req.matches[1];
        if (label == "11.2.a.a") {
            res.set_content(
                R"({"data":[{"label":"11.2.a.a","weight":2,"level":11,"char_orbit_label":"a","an":[1,-2,-1,2,1,2,-2,0,-2,-2]}]})",
                "application/json");
        } else if (label == "11.2.a.b") {
            res.set_content(R"({"label":"11.2.a.b","weight":2,"level":11,"char":"trivial","field_poly":[0,1],)"
                            R"("an":[["1/1"],["-2/1"]]})",
                            "application/json");
        } else if (label == "empty.1.a.a") {
            res.set_content(R"({"data":[]})", "application/json");
        } else if (label == "garbage.1.a.a") {
            res.set_content("<html>", "text/html");
        } else if (label == "broken.1.a.a") {
            res.status = 500;
        } else if (label == "unnormalized.1.a.a") {
            res.set_content(R"({"data":[{"weight":2,"level":1,"an":[3,1]}]})", "application/json");
        } else {
            res.status = 404;
        }
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread worker([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    const std::string endpoint = "http://127.0.0.1:" + std::to_string(port) + "/forms/{label}";
    const auto dest = scratch_dir("fetch");

    const auto path = fetch_newform("11.2.a.a", endpoint, dest);
    CHECK(path == dest / "11.2.a.a.json");
    const Newform f = load_newform(path);
    CHECK(f.level == 11);
    CHECK(f.character == "a");
    CHECK(coeff_integer(f, 2) == BigInt(-2));
    CHECK(coeff_integer(f, 10) == BigInt(-2));

    const auto plain = fetch_newform("11.2.a.b", "http://127.0.0.1:" + std::to_string(port) + "/forms/", dest);
    CHECK(load_newform(plain).max_n() == 2);

    CHECK(error_of([&] { fetch_newform("missing.1.a.a", endpoint, dest); }) == ErrorCode::LabelNotFound);
    CHECK(error_of([&] { fetch_newform("empty.1.a.a", endpoint, dest); }) == ErrorCode::LabelNotFound);
    CHECK(error_of([&] { fetch_newform("garbage.1.a.a", endpoint, dest); }) == ErrorCode::FetchError);
    CHECK(error_of([&] { fetch_newform("broken.1.a.a", endpoint, dest); }) == ErrorCode::FetchError);
    CHECK(error_of([&] { fetch_newform("unnormalized.1.a.a", endpoint, dest); }) == ErrorCode::FetchError);
    CHECK_FALSE(std::filesystem::exists(dest / "garbage.1.a.a.json"));

    // the bundled snapshot wins over the endpoint
    const int before = hits;
    CHECK(fetch_newform("27.3.b.b", endpoint, dest) == data_dir() / "27.3.b.b.json");
    CHECK(hits == before);

    server.stop();
    worker.join();
    std::filesystem::remove_all(dest);

    CHECK(error_of([&] { fetch_newform("11.2.a.c", endpoint, dest); }) == ErrorCode::FetchError);
    CHECK(error_of([&] { fetch_newform("11.2.a.c", "ftp://example/{label}", dest); }) == ErrorCode::FetchError);
}

}  // TEST_SUITE
