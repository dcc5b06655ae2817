#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "doctest.h"
#include "galimage/lmfdb.hpp"

using namespace galimage;
using nlohmann::json;

namespace {

std::string read_all(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("galimage_" + name)).string();
}

NFElement gauss(const NewformRecord& rec, long re, long im) {
    return rec.field->from_coords(std::vector<BigRat>{BigRat(re), BigRat(im)});
}

// Rows shaped like the LMFDB mf_newforms / mf_hecke_nf tables, built from the level 27 form.
json newform_row() { return {{"label", "27.3.b.a"}, {"level", 27}, {"weight", 3}, {"char_order", 2}, {"char_conductor", 3}, {"char_parity", -1}}; }

json hecke_row(std::size_t n_an, std::size_t n_ap) {
    const auto a = build_level27_newform(1200);
    json an = json::array(), ap = json::array();
    for (std::size_t n = 1; n <= n_an; ++n) an.push_back({a[n].re.get_si(), a[n].im.get_si()});
    std::size_t count = 0;
    for (std::uint64_t p = 2; count < n_ap; ++p)
        if (is_prime_u64(p)) {
            ap.push_back({a[p].re.get_si(), a[p].im.get_si()});
            ++count;
        }
    // basis (1, i) written as (2 * 1 / 2, i)
    return {{"label", "27.3.b.a"},
            {"field_poly", {1, 0, 1}},
            {"hecke_ring_numerators", {{2, 0}, {0, 1}}},
            {"hecke_ring_denominators", {2, 1}},
            {"an", an},
            {"ap", ap}};
}

}  // namespace

TEST_CASE("level 27 record") {
    const auto& rec = builtin_form("level27");
    CHECK(rec.field->degree() == 2);
    CHECK(rec.precision() == 2000);
    CHECK(rec.a(2) == gauss(rec, 0, 3));
    CHECK(r_invariant(rec, 5) == rec.field->from_rational(9));
    CHECK(r_invariant(rec, 109) == rec.field->from_rational(164 * 164));
    CHECK(r_invariant(rec, 379) == rec.field->from_rational(704 * 704));
    CHECK(r_invariant(rec, 2) == rec.field->from_rational(9));
    CHECK_THROWS_AS(r_invariant(rec, 3), DataError);
    CHECK_THROWS_AS(rec.a(2001), DataError);
}

TEST_CASE("level 160 fixture") {
    const auto& rec = builtin_form("level160");
    CHECK(rec.field->degree() == 6);
    CHECK(rec.level == 160);
    CHECK(rec.weight == 3);
    CHECK(rec.nebentypus_disc == -20);
    CHECK(rec.precision() == 2000);
    // r_3 lies in the cubic subfield: N_E(r_3) = N_K(r_3)^2 and N_K(r_3) = -minpoly(0).
    const QPoly m3 = minpoly_over_Q(r_invariant(rec, 3));
    REQUIRE(m3.degree() == 3);
    CHECK(-m3[0] == 64);
    CHECK(nf_norm(r_invariant(rec, 3)) == 64 * 64);
    for (std::uint64_t p : {3, 7, 11, 13, 17}) {
        const int deg = minpoly_over_Q(r_invariant(rec, p)).degree();
        CHECK((deg == 3 || deg == 1));
    }
    CHECK_THROWS_AS(r_invariant(rec, 5), DataError);
}

TEST_CASE("files round-trip byte for byte") {
    for (const char* name : {"level27", "level160"}) {
        const auto& rec = builtin_form(name);
        const std::string path = temp_path(std::string(name) + ".json");
        save_file(rec, path);
        const auto back = load_file(path);
        CHECK(back.level == rec.level);
        CHECK(back.precision() == rec.precision());
        for (std::uint64_t n = 1; n <= rec.precision(); ++n) CHECK(back.coeffs[n] == rec.coeffs[n]);
        CHECK(serialize(back) == read_all(path));
        std::remove(path.c_str());
    }
    CHECK(read_all(data_dir() + "/level160.json") == serialize(builtin_form("level160")));
}

TEST_CASE("validation gates") {
    json doc = to_json(level27_record(60));
    SUBCASE("not normalized") {
        doc["coefficients"][0] = {"0", "0"};
        CHECK_THROWS_WITH_AS(from_json(doc), doctest::Contains("not normalized"), DataError);
    }
    SUBCASE("schema") {
        doc["schema"] = "CoefficientFileV0";
        CHECK_THROWS_WITH_AS(from_json(doc), doctest::Contains("schema mismatch"), DataError);
    }
    SUBCASE("vector length") {
        doc["coefficients"][3] = {"1"};
        CHECK_THROWS_WITH_AS(from_json(doc), doctest::Contains("schema mismatch"), DataError);
    }
    SUBCASE("reducible field") {
        doc["field_poly"] = {"-1", "0", "1"};
        CHECK_THROWS_WITH_AS(from_json(doc), doctest::Contains("reducible"), DataError);
    }
    SUBCASE("non-integral r_p") {
        doc["coefficients"][4] = {"1/2", "0"};
        CHECK_THROWS_WITH_AS(from_json(doc), doctest::Contains("non-integral r_5"), DataError);
    }
    SUBCASE("hecke gate") {
        doc["coefficients"][9] = {"1", "0"};
        CHECK_THROWS_WITH_AS(from_json(doc), doctest::Contains("Hecke"), DataError);
    }
    SUBCASE("bad nebentypus") {
        doc["nebentypus_discriminant"] = -7;
        CHECK_THROWS_AS(from_json(doc), DataError);
    }
    SUBCASE("intact") { CHECK(from_json(doc).precision() == 60); }
}

TEST_CASE("LMFDB conversion") {
    auto res = convert_lmfdb("27.3.b.a", newform_row(), hecke_row(100, 0), 80);
    CHECK(res.obtained == 80);
    CHECK(res.record.nebentypus_disc == -3);
    const auto ref = level27_record(1000);
    for (std::uint64_t n = 1; n <= 80; ++n) CHECK(res.record.coeffs[n] == ref.coeffs[n]);
    // Short "an": the rest comes from "ap"; 168 primes reach 997.
    auto big = convert_lmfdb("27.3.b.a", newform_row(), hecke_row(100, 168), 2000);
    CHECK(big.requested == 2000);
    CHECK(big.obtained == 997);
    for (std::uint64_t n = 1; n <= 997; ++n) CHECK(big.record.coeffs[n] == ref.coeffs[n]);
    // No "ap" and short "an": reported, never padded.
    auto shortr = convert_lmfdb("27.3.b.a", newform_row(), hecke_row(50, 0), 2000);
    CHECK(shortr.obtained == 50);
    json cubic = newform_row();
    cubic["char_order"] = 3;
    CHECK_THROWS_WITH_AS(convert_lmfdb("27.3.b.a", cubic, hecke_row(50, 0), 50), doctest::Contains("non-quadratic"), DataError);
}

TEST_CASE("LMFDB client against a local server") {
    httplib::Server svr;
    std::atomic<int> hits{0};
    svr.Get("/api/mf_newforms/", [&](const httplib::Request& req, httplib::Response& res) {
        ++hits;
        if (req.get_param_value("label") == "27.3.b.a")
            res.set_content(json{{"data", {newform_row()}}}.dump(), "application/json");
        else if (req.get_param_value("label") == "1.3.a.a")
            res.set_content("<html>oops</html>", "text/html");
        else
            res.set_content(R"({"data": []})", "application/json");
    });
    svr.Get("/api/mf_hecke_nf/", [&](const httplib::Request&, httplib::Response& res) {
        ++hits;
        res.set_content(json{{"data", {hecke_row(100, 168)}}}.dump(), "application/json");
    });
    const int port = svr.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread th([&] { svr.listen_after_bind(); });
    svr.wait_until_ready();
    LmfdbOptions opts;
    opts.base_url = "http://127.0.0.1:" + std::to_string(port);
    opts.timeout_seconds = 5;

    auto res = fetch_lmfdb("27.3.b.a", 500, opts);
    CHECK(res.obtained == 500);
    CHECK(res.record.a(2) == gauss(res.record, 0, 3));
    CHECK(hits == 2);
    CHECK_THROWS_WITH_AS(fetch_lmfdb("1.3.a.a", 10, opts), doctest::Contains("<html>oops</html>"), DataError);
    CHECK_THROWS_WITH_AS(fetch_lmfdb("2.3.a.a", 10, opts), doctest::Contains("no data rows"), DataError);
    CHECK_THROWS_WITH_AS(fetch_lmfdb("160.3.c", 10, opts), doctest::Contains("malformed"), DataError);
    const int before = hits;
    opts.offline = true;
    CHECK_THROWS_WITH_AS(fetch_lmfdb("27.3.b.a", 10, opts), doctest::Contains("offline"), DataError);
    CHECK(hits == before);
    svr.stop();
    th.join();
}

TEST_CASE("label syntax") {
    CHECK(valid_newform_label("160.3.c.a"));
    CHECK(valid_newform_label("27.3.b.a"));
    CHECK_FALSE(valid_newform_label("160.3.c"));
    CHECK_FALSE(valid_newform_label("160.3.C.a"));
    CHECK_FALSE(valid_newform_label("0.3.c.a"));
    CHECK_FALSE(valid_newform_label("160.3.c.a; rm"));
}
