#include "galimage/newform.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

namespace galimage {

using nlohmann::json;

const NFElement& NewformRecord::a(std::uint64_t n) const {
    if (n == 0 || n > precision()) throw DataError("coefficient missing: a_" + std::to_string(n));
    return coeffs[n];
}

void validate(const NewformRecord& rec) {
    if (rec.level == 0) throw DataError("level must be positive");
    if (rec.weight < 2) throw DataError("weight must be at least 2");
    if (rec.precision() < 1) throw DataError("no coefficients");
    if (rec.a(1) != rec.field->from_rational(1)) throw DataError("not normalized: a_1 != 1");
    try {
        QuadChar::from_kronecker(rec.nebentypus_disc, rec.level);
    } catch (const std::exception&) {
        throw DataError("nebentypus (" + std::to_string(rec.nebentypus_disc) + "/.) is not a character mod " +
                        std::to_string(rec.level));
    }
    for (std::uint64_t p : primes_up_to(rec.precision())) {
        if (rec.level % p == 0) continue;
        if (!is_integral(r_invariant(rec, p))) throw DataError("non-integral r_" + std::to_string(p));
    }
    auto rep = hecke_validate(rec.coeffs, rec.weight, rec.nebentypus_disc, rec.level);
    if (!rep.pass) throw DataError("Hecke relation violated: " + rep.violation);
}

namespace {

std::vector<std::string> coords_to_strings(const NFElement& x) {
    std::vector<std::string> out;
    for (const auto& c : x.coords()) out.push_back(to_string(c));
    return out;
}

BigRat rat_field(const json& v) {
    if (v.is_string()) return parse_bigrat(v.get<std::string>());
    if (v.is_number_integer()) return BigRat(BigInt(std::to_string(v.get<long long>())));
    throw DataError("expected a decimal string, got " + v.dump());
}

}  // namespace

json to_json(const NewformRecord& rec) {
    json j;
    j["schema"] = "CoefficientFileV1";
    j["level"] = rec.level;
    j["weight"] = rec.weight;
    j["nebentypus_discriminant"] = rec.nebentypus_disc;
    std::vector<std::string> fp;
    for (const auto& c : rec.field->poly().coeffs()) fp.push_back(to_string(c));
    j["field_poly"] = fp;
    j["basis"] = "power";
    json cs = json::array();
    for (std::uint64_t n = 1; n <= rec.precision(); ++n) cs.push_back(coords_to_strings(rec.coeffs[n]));
    j["coefficients"] = std::move(cs);
    j["source"] = rec.source;
    return j;
}

NewformRecord from_json(const json& doc) {
    if (!doc.is_object()) throw DataError("schema mismatch: top level is not an object");
    if (doc.value("schema", std::string()) != "CoefficientFileV1")
        throw DataError("schema mismatch: expected \"schema\": \"CoefficientFileV1\"");
    for (const char* key : {"level", "weight", "nebentypus_discriminant", "field_poly", "coefficients"})
        if (!doc.contains(key)) throw DataError(std::string("schema mismatch: missing \"") + key + "\"");
    if (doc.value("basis", std::string("power")) != "power") throw DataError("schema mismatch: basis must be \"power\"");
    NewformRecord rec;
    try {
        rec.level = doc.at("level").get<std::uint64_t>();
        rec.weight = doc.at("weight").get<int>();
        rec.nebentypus_disc = doc.at("nebentypus_discriminant").get<std::int64_t>();
    } catch (const json::exception& e) {
        throw DataError(std::string("schema mismatch: ") + e.what());
    }
    rec.source = doc.value("source", std::string());
    std::vector<BigInt> fp;
    for (const auto& c : doc.at("field_poly")) fp.push_back(rat_field(c).get_num());
    try {
        rec.field = NumberField::create(ZPoly(fp), "E");
    } catch (const std::invalid_argument& e) {
        throw DataError(std::string("reducible field polynomial: ") + e.what());
    }
    const auto d = static_cast<std::size_t>(rec.field->degree());
    rec.coeffs.push_back(rec.field->from_rational(0));
    for (const auto& v : doc.at("coefficients")) {
        if (!v.is_array() || v.size() != d)
            throw DataError("schema mismatch: coordinate vector of length " + std::to_string(v.size()) + ", expected " +
                            std::to_string(d));
        std::vector<BigRat> c;
        for (const auto& x : v) c.push_back(rat_field(x));
        rec.coeffs.push_back(rec.field->from_coords(c));
    }
    validate(rec);
    return rec;
}

std::string serialize(const NewformRecord& rec) { return to_json(rec).dump() + "\n"; }

NewformRecord load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw DataError("schema mismatch: " + path + ": " + e.what());
    }
    return from_json(doc);
}

void save_file(const NewformRecord& rec, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << serialize(rec);
}

NFElement r_invariant(const NewformRecord& rec, std::uint64_t p) {
    if (rec.level % p == 0) throw DataError("r_p undefined: " + std::to_string(p) + " divides the level");
    const NFElement& ap = rec.a(p);
    const int e = rec.eps(static_cast<std::int64_t>(p));
    return ap * ap * BigRat(e);
}

NewformRecord level27_record(int precision) {
    const auto a = build_level27_newform(precision);
    NewformRecord rec;
    rec.level = 27;
    rec.weight = 3;
    rec.nebentypus_disc = -3;
    rec.field = NumberField::create(ZPoly({BigInt(1), BigInt(0), BigInt(1)}), "E");
    for (const auto& z : a) rec.coeffs.push_back(rec.field->from_coords(std::vector<BigRat>{BigRat(z.re), BigRat(z.im)}));
    rec.source = "computed: (i/2) g theta_0 - ((1+i)/2) g theta_1 + (3/2) g theta_2, B = " + std::to_string(precision);
    validate(rec);
    return rec;
}

std::string data_dir() {
    if (const char* env = std::getenv("GALIMAGE_DATA_DIR"); env && *env) return env;
    return GALIMAGE_DATA_DIR;
}

const NewformRecord& builtin_form(const std::string& name) {
    static std::mutex mu;
    static std::map<std::string, NewformRecord> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(name); it != cache.end()) return it->second;
    NewformRecord rec;
    if (name == "level27")
        rec = level27_record();
    else if (name == "level160")
        rec = load_file(data_dir() + "/level160.json");
    else
        throw DataError("unknown builtin form '" + name + "' (known: level27, level160)");
    return cache.emplace(name, std::move(rec)).first->second;
}

std::vector<std::string> builtin_names() { return {"level27", "level160"}; }

}  // namespace galimage
