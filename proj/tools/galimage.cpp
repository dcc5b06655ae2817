// galimage: coefficients, field analysis, exceptional sets and image certificates.

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "galimage/certifier.hpp"
#include "galimage/gl2.hpp"
#include "galimage/lmfdb.hpp"

using namespace galimage;
using nlohmann::json;

namespace {

struct RunConfig {
    std::string builtin;
    std::string file;
    std::string label;
    std::uint64_t precision = 2000;
    std::uint64_t k_search_bound = 2000;
    std::uint64_t prime_search_bound = 10000;
    std::vector<std::uint64_t> q_list, p_list, index_primes;
    std::uint64_t q = 0;
    std::uint64_t ell = 0, min = 2, max = 100;
    std::string output;
    bool json_stdout = false;
    bool offline = false;
    unsigned jobs = 1;
    std::uint64_t seed = 0;
    bool selftest = false;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const RunConfig& cfg, const json& doc, const std::string& summary) {
    if (!cfg.output.empty()) {
        std::ofstream out(cfg.output, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + cfg.output);
        out << doc.dump(2) << "\n";
    }
    if (cfg.json_stdout)
        std::cout << doc.dump(2) << "\n";
    else
        std::cout << summary;
}

NewformRecord load_form(const RunConfig& cfg) {
    if (!cfg.file.empty() && !cfg.builtin.empty()) throw UsageError("--builtin and --file are exclusive");
    if (!cfg.file.empty()) return load_file(cfg.file);
    if (cfg.builtin.empty()) throw UsageError("a form is required: --builtin NAME or --file PATH");
    return builtin_form(cfg.builtin);
}

Choices make_choices(const RunConfig& cfg, const NewformRecord& rec, const KLProfile& prof) {
    Choices c = default_choices(rec, prof, cfg.file.empty() ? cfg.builtin : "");
    if (!cfg.q_list.empty()) c.q_list = cfg.q_list;
    if (!cfg.p_list.empty()) c.p_list = cfg.p_list;
    if (cfg.q) c.q = cfg.q;
    c.extra_index_primes = cfg.index_primes;
    validate_choices(rec, prof, c);
    return c;
}

json form_json(const NewformRecord& rec) {
    return {{"level", rec.level}, {"weight", rec.weight}, {"nebentypus_discriminant", rec.nebentypus_disc},
            {"precision", rec.precision()}, {"source", rec.source}};
}

std::string cert_line(const Certificate& c) {
    std::string s = "  ell = " + std::to_string(c.ell) + "  " + c.lambda + "  ";
    s += c.verdict == Verdict::Inconclusive ? "Inconclusive: " + c.reason : c.group + "  [" + c.path + "]";
    return s + "\n";
}

int run_coeffs(const RunConfig& cfg) {
    const auto rec = level27_record(static_cast<int>(cfg.precision));
    std::string s = "level 27, weight 3, D = -3, " + std::to_string(rec.precision()) + " coefficients\n ";
    for (std::uint64_t n = 1; n <= std::min<std::uint64_t>(13, rec.precision()); ++n)
        s += " a_" + std::to_string(n) + " = " + rec.a(n).str("i");
    s += "\n";
    if (!cfg.output.empty()) save_file(rec, cfg.output);
    if (cfg.json_stdout)
        std::cout << serialize(rec);
    else
        std::cout << s;
    return 0;
}

int run_ingest(const RunConfig& cfg) {
    NewformRecord rec;
    json meta;
    if (!cfg.label.empty()) {
        LmfdbOptions opts;
        opts.offline = cfg.offline;
        const auto res = fetch_lmfdb(cfg.label, cfg.precision, opts);
        rec = res.record;
        meta = {{"requested", res.requested}, {"obtained", res.obtained}};
    } else {
        rec = load_form(cfg);
        meta = {{"obtained", rec.precision()}};
    }
    if (!cfg.output.empty()) save_file(rec, cfg.output);
    std::string s = "validated level " + std::to_string(rec.level) + ", weight " + std::to_string(rec.weight) +
                    ", [E:Q] = " + std::to_string(rec.field->degree()) + ", " + std::to_string(rec.precision()) +
                    " coefficients\n";
    if (cfg.json_stdout) std::cout << json{{"form", form_json(rec)}, {"fetch", meta}}.dump(2) << "\n";
    else std::cout << s;
    return 0;
}

int run_analyze(const RunConfig& cfg) {
    const auto rec = load_form(cfg);
    const auto prof = analyze(rec, cfg.k_search_bound);
    json doc = {{"form", form_json(rec)}, {"profile", to_json(prof)}};
    std::string s = "K = Q[x]/(" + prof.K->poly().str("x") + "), [K:Q] = " + std::to_string(prof.k_degree) +
                    ", K = Q(r_" + std::to_string(prof.generator_prime) + ")\nM = " + std::to_string(prof.M) +
                    ", generating primes:";
    for (auto p : prof.generating_primes) s += " " + std::to_string(p);
    s += std::string("\nL = K: ") + (prof.L_equals_K ? "yes" : "no") + "\n";
    for (const auto& a : prof.assumptions) s += "assumption: " + a + "\n";
    emit(cfg, doc, s);
    return 0;
}

int run_exceptional(const RunConfig& cfg) {
    const auto rec = load_form(cfg);
    const auto prof = analyze(rec, cfg.k_search_bound);
    const auto choices = make_choices(cfg, rec, prof);
    const auto S = exceptional_set(rec, prof, choices);
    json doc = {{"form", form_json(rec)}, {"choices", to_json(choices)}, {"exceptional_set", to_json(S)}};
    std::string s = "S lies above ell in {";
    const auto ells = S.ells();
    for (std::size_t i = 0; i < ells.size(); ++i) s += (i ? ", " : "") + std::to_string(ells[i]);
    s += "}\n";
    for (const auto& m : S.members) {
        s += "  " + std::to_string(m.ell) + " " + m.lambda + ":";
        for (const auto& r : m.reasons) s += " " + r + ";";
        s += "\n";
    }
    emit(cfg, doc, s);
    return 0;
}

int run_certify(const RunConfig& cfg, bool scan) {
    const auto rec = load_form(cfg);
    const auto prof = analyze(rec, cfg.k_search_bound);
    const auto choices = make_choices(cfg, rec, prof);
    const auto S = exceptional_set(rec, prof, choices);
    CertifyConfig cc;
    cc.prime_search_bound = cfg.prime_search_bound;

    std::vector<std::uint64_t> ells;
    if (scan) {
        if (cfg.min > cfg.max) throw UsageError("--min must not exceed --max");
        for (auto p : primes_up_to(cfg.max))
            if (p >= cfg.min) ells.push_back(p);
    } else {
        if (!cfg.ell) throw UsageError("--ell is required");
        if (!is_prime_u64(cfg.ell)) throw UsageError("--ell must be prime");
        ells.push_back(cfg.ell);
    }

    std::vector<std::vector<Certificate>> results(ells.size());
    std::vector<std::string> errors(ells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < ells.size();) {
            try {
                results[i] = certify(rec, prof, choices, S, ells[i], cc);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    const unsigned width = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(ells.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t + 1 < width; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    json certs = json::array();
    std::string s;
    bool all_ok = true;
    for (std::size_t i = 0; i < ells.size(); ++i) {
        if (!errors[i].empty()) {
            all_ok = false;
            certs.push_back({{"ell", ells[i]}, {"verdict", "Inconclusive"}, {"reason", errors[i]}});
            s += "  ell = " + std::to_string(ells[i]) + "  Inconclusive: " + errors[i] + "\n";
            continue;
        }
        for (const auto& c : results[i]) {
            all_ok = all_ok && c.verdict != Verdict::Inconclusive;
            certs.push_back(c.to_json());
            s += cert_line(c);
        }
    }
    json doc = {{"schema", "GalImageRunV1"},
                {"form", form_json(rec)},
                {"choices", to_json(choices)},
                {"exceptional_set", S.ells()},
                {"prime_search_bound", cfg.prime_search_bound},
                {"seed", cfg.seed},
                {"certificates", certs}};
    emit(cfg, doc, s);
    return all_ok ? 0 : 1;
}

int run_oracle(const RunConfig& cfg) {
    if (!cfg.selftest) throw UsageError("oracle: only --selftest is available");
    bool ok = true;
    json doc = json::array();
    std::string s;
    for (const auto& r : run_oracle_selftest()) {
        ok = ok && r.pass;
        doc.push_back({{"suite", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        s += std::string(r.pass ? "pass  " : "FAIL  ") + r.name + " (" + r.detail + ")\n";
    }
    s += ok ? "oracle self-test: pass\n" : "oracle self-test: FAIL\n";
    emit(cfg, doc, s);
    return ok ? 0 : 1;
}

void error_json(const std::string& kind, const std::string& msg) {
    std::cerr << json{{"error", kind}, {"message", msg}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Projective mod-lambda images of newforms with quadratic nebentypus"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto form_opts = [&](CLI::App* sc) {
        sc->add_option("--builtin", cfg.builtin, "Builtin form: level27 or level160");
        sc->add_option("--file", cfg.file, "CoefficientFileV1 JSON file");
        sc->add_option("--search-bound", cfg.k_search_bound, "Prime bound when searching for K")->check(CLI::PositiveNumber);
    };
    auto out_opts = [&](CLI::App* sc) {
        sc->add_option("-o,--output", cfg.output, "Write JSON here");
        sc->add_flag("--json", cfg.json_stdout, "Print JSON instead of the summary");
    };
    auto choice_opts = [&](CLI::App* sc) {
        sc->add_option("--q-list", cfg.q_list, "Override the primes q_i (= 1 mod N)")->delimiter(',');
        sc->add_option("--p-list", cfg.p_list, "Override the primes p_i")->delimiter(',');
        sc->add_option("--q", cfg.q, "Override the prime q with Q(r_q) = K");
        sc->add_option("--index-primes", cfg.index_primes, "Extra primes for the index bullet")->delimiter(',');
        sc->add_option("--prime-bound", cfg.prime_search_bound, "Witness search bound")->check(CLI::PositiveNumber);
        sc->add_option("--seed", cfg.seed, "Recorded in the output; all computations are deterministic");
    };

    auto* coeffs = app.add_subcommand("coeffs", "Level 27 coefficients from the eta/theta formula");
    coeffs->add_option("--precision", cfg.precision, "Number of coefficients")->check(CLI::Range(1, 1000000));
    out_opts(coeffs);

    auto* ingest = app.add_subcommand("ingest", "Fetch from LMFDB or validate a coefficient file");
    ingest->add_option("--label", cfg.label, "LMFDB newform label, e.g. 27.3.b.a");
    ingest->add_option("--precision", cfg.precision, "Coefficients wanted")->check(CLI::PositiveNumber);
    ingest->add_flag("--offline", cfg.offline, "Never touch the network");
    form_opts(ingest);
    out_opts(ingest);

    auto* an = app.add_subcommand("analyze", "Find K, the generating primes and whether L = K");
    form_opts(an);
    out_opts(an);

    auto* ex = app.add_subcommand("exceptional-set", "Compute the exceptional set S");
    form_opts(ex);
    choice_opts(ex);
    out_opts(ex);

    auto* cert = app.add_subcommand("certify", "Certify the image at every prime above ell");
    cert->add_option("--ell", cfg.ell, "Prime ell")->required();
    form_opts(cert);
    choice_opts(cert);
    out_opts(cert);

    auto* scan = app.add_subcommand("scan", "Certify every prime ell in [min, max]");
    scan->add_option("--min", cfg.min, "Smallest ell");
    scan->add_option("--max", cfg.max, "Largest ell");
    scan->add_option("-j,--jobs", cfg.jobs, "Parallel workers")->check(CLI::Range(1u, 256u));
    form_opts(scan);
    choice_opts(scan);
    out_opts(scan);

    auto* oracle = app.add_subcommand("oracle", "Exhaustive GL2 checks");
    oracle->add_flag("--selftest", cfg.selftest, "Run the self-test suites");
    out_opts(oracle);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        error_json("usage", e.what());
        return 2;
    }

    try {
        if (*coeffs) return run_coeffs(cfg);
        if (*ingest) return run_ingest(cfg);
        if (*an) return run_analyze(cfg);
        if (*ex) return run_exceptional(cfg);
        if (*cert) return run_certify(cfg, false);
        if (*scan) return run_certify(cfg, true);
        if (*oracle) return run_oracle(cfg);
    } catch (const UsageError& e) {
        error_json("usage", e.what());
        return 2;
    } catch (const DataError& e) {
        error_json("data", e.what());
        return 3;
    } catch (const std::exception& e) {
        error_json("internal", e.what());
        return 4;
    }
    return 2;
}
