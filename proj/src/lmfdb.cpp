#include "galimage/lmfdb.hpp"

#include <cstdlib>
#include <regex>

#include <httplib.h>

namespace galimage {

using nlohmann::json;

std::string default_lmfdb_base_url() {
    if (const char* env = std::getenv("LMFDB_BASE_URL"); env && *env) return env;
    return "https://www.lmfdb.org";
}

bool valid_newform_label(const std::string& label) {
    static const std::regex re(R"(^[1-9][0-9]*\.[1-9][0-9]*\.[a-z]+\.[a-z]+$)");
    return std::regex_match(label, re);
}

namespace {

std::string excerpt(const std::string& s) { return s.size() <= 240 ? s : s.substr(0, 240) + "..."; }

BigInt exact_int(const json& v) {
    if (v.is_number_integer()) return v.is_number_unsigned() ? BigInt(std::to_string(v.get<std::uint64_t>()))
                                                             : BigInt(std::to_string(v.get<std::int64_t>()));
    if (v.is_string()) return parse_bigint(v.get<std::string>());
    throw DataError("expected an exact integer, got " + excerpt(v.dump()));
}

const json& field(const json& row, const char* key) {
    if (!row.is_object() || !row.contains(key) || row.at(key).is_null())
        throw DataError(std::string("LMFDB payload lacks \"") + key + "\": " + excerpt(row.dump()));
    return row.at(key);
}

std::int64_t nebentypus_from(const json& row) {
    const auto order = exact_int(field(row, "char_order"));
    if (order == 1) return 1;
    if (order != 2) throw DataError("non-quadratic nebentypus (order " + order.get_str() + ") is not supported");
    const auto cond = exact_int(field(row, "char_conductor"));
    const auto parity = exact_int(field(row, "char_parity"));
    return parity.get_si() * cond.get_si();
}

}  // namespace

FetchResult convert_lmfdb(const std::string& label, const json& nf, const json& hk, std::uint64_t wanted) {
    FetchResult res;
    res.requested = wanted;
    NewformRecord& rec = res.record;
    rec.level = exact_int(field(nf, "level")).get_ui();
    rec.weight = static_cast<int>(exact_int(field(nf, "weight")).get_si());
    rec.nebentypus_disc = nebentypus_from(nf);

    std::vector<BigInt> fp;
    for (const auto& c : field(hk, "field_poly")) fp.push_back(exact_int(c));
    try {
        rec.field = NumberField::create(ZPoly(fp), "E");
    } catch (const std::invalid_argument& e) {
        throw DataError(std::string("reducible field polynomial: ") + e.what());
    }
    const int d = rec.field->degree();

    // Hecke ring basis beta_i = (sum_j num[i][j] x^j) / den[i].
    std::vector<NFElement> basis;
    if (hk.contains("hecke_ring_numerators") && !hk.at("hecke_ring_numerators").is_null()) {
        const auto& nums = hk.at("hecke_ring_numerators");
        const auto& dens = field(hk, "hecke_ring_denominators");
        if (nums.size() != static_cast<std::size_t>(d) || dens.size() != static_cast<std::size_t>(d))
            throw DataError("Hecke ring basis has the wrong size: " + excerpt(nums.dump()));
        for (int i = 0; i < d; ++i) {
            std::vector<BigRat> c;
            for (const auto& v : nums.at(static_cast<std::size_t>(i))) c.emplace_back(exact_int(v));
            c.resize(static_cast<std::size_t>(d), BigRat(0));
            basis.push_back(rec.field->from_coords(c) * BigRat(1, exact_int(dens.at(static_cast<std::size_t>(i)))));
        }
    } else {
        for (int i = 0; i < d; ++i) basis.push_back(rec.field->gen().pow(i));
    }
    auto combine = [&](const json& v) {
        if (!v.is_array() || v.size() != static_cast<std::size_t>(d))
            throw DataError("coefficient vector of the wrong length: " + excerpt(v.dump()));
        NFElement x = rec.field->from_rational(0);
        for (int i = 0; i < d; ++i) x += basis[static_cast<std::size_t>(i)] * BigRat(exact_int(v.at(static_cast<std::size_t>(i))));
        return x;
    };

    const json an = hk.value("an", json::array());
    const json ap = hk.value("ap", json::array());
    rec.coeffs.assign(1, rec.field->from_rational(0));
    if (an.size() >= wanted || ap.empty()) {
        const std::uint64_t n = std::min<std::uint64_t>(wanted, an.size());
        for (std::uint64_t i = 0; i < n; ++i) rec.coeffs.push_back(combine(an.at(i)));
    } else {
        // a_p for the first ap.size() primes; rebuild a_n multiplicatively.
        std::vector<std::uint64_t> ps;
        for (std::uint64_t p = 2; ps.size() < ap.size(); ++p)
            if (is_prime_u64(p)) ps.push_back(p);
        const std::uint64_t bound = std::min<std::uint64_t>(wanted, ps.back());
        rec.coeffs.resize(bound + 1, rec.field->from_rational(0));
        rec.coeffs[1] = rec.field->from_rational(1);
        for (std::size_t i = 0; i < ps.size() && ps[i] <= bound; ++i) {
            const std::uint64_t p = ps[i];
            const NFElement a_p = combine(ap.at(i));
            const bool bad = rec.level % p == 0;
            const BigRat c = bad ? BigRat(0)
                                 : BigRat(kronecker(rec.nebentypus_disc, static_cast<std::int64_t>(p))) *
                                       BigRat(pow(BigInt(static_cast<unsigned long>(p)), static_cast<unsigned long>(rec.weight - 1)));
            rec.coeffs[p] = a_p;
            std::uint64_t prev = 1, cur = p;
            while (cur <= bound / p) {
                rec.coeffs[cur * p] = a_p * rec.coeffs[cur] - rec.coeffs[prev] * c;
                prev = cur;
                cur *= p;
            }
        }
        for (std::uint64_t n = 2; n <= bound; ++n) {
            std::uint64_t p = factor_u64(n).front().first, pe = 1;
            while (n % (pe * p) == 0) pe *= p;
            if (pe != n) rec.coeffs[n] = rec.coeffs[pe] * rec.coeffs[n / pe];
        }
    }
    res.obtained = rec.precision();
    rec.source = "LMFDB " + label + " (" + std::to_string(res.obtained) + " of " + std::to_string(wanted) +
                 " coefficients)";
    validate(rec);
    return res;
}

FetchResult fetch_lmfdb(const std::string& label, std::uint64_t wanted, const LmfdbOptions& opts) {
    if (!valid_newform_label(label)) throw DataError("malformed newform label '" + label + "' (expected N.k.c.x)");
    if (opts.offline)
        throw DataError("offline mode: network access disabled; use the shipped fixture under " + data_dir());
    const std::string base = opts.base_url.empty() ? default_lmfdb_base_url() : opts.base_url;
    httplib::Client cli(base);
    cli.set_connection_timeout(opts.timeout_seconds, 0);
    cli.set_read_timeout(opts.timeout_seconds, 0);
    cli.set_follow_location(true);
    auto get_row = [&](const std::string& table) {
        const std::string path = "/api/" + table + "/?label=" + label + "&_format=json";
        auto r = cli.Get(path);
        if (!r) throw DataError("GET " + base + path + " failed: " + httplib::to_string(r.error()));
        if (r->status != 200)
            throw DataError("GET " + base + path + " returned HTTP " + std::to_string(r->status) + ": " + excerpt(r->body));
        json doc;
        try {
            doc = json::parse(r->body);
        } catch (const json::parse_error&) {
            throw DataError("GET " + base + path + " returned malformed JSON: " + excerpt(r->body));
        }
        if (!doc.contains("data") || !doc["data"].is_array() || doc["data"].empty())
            throw DataError("GET " + base + path + " has no data rows: " + excerpt(r->body));
        return doc["data"][0];
    };
    const json nf = get_row("mf_newforms");
    const json hk = get_row("mf_hecke_nf");
    return convert_lmfdb(label, nf, hk, wanted);
}

}  // namespace galimage
