// Command-line surface: every library capability as a subcommand emitting
// newline-delimited records (JSON by default, flattened CSV on request).
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "trinogen/arith.hpp"
#include "trinogen/bigint.hpp"
#include "trinogen/lucas.hpp"
#include "trinogen/monogenic.hpp"
#include "trinogen/polyfp.hpp"
#include "trinogen/quadfield.hpp"

using ordered_json = nlohmann::ordered_json;
using namespace trinogen;

namespace {

constexpr const char* kSchemaVersion = "1";

std::string dec(const BigInt& v) { return v.get_str(); }
std::string dec(uint64_t v) { return std::to_string(v); }
std::string dec(int64_t v) { return std::to_string(v); }
std::string dec(int v) { return std::to_string(v); }
std::string dec(uint32_t v) { return std::to_string(v); }

const char* method_name(lucas::WssMethod m) {
    switch (m) {
        case lucas::WssMethod::definition: return "definition";
        case lucas::WssMethod::shifted_index: return "shifted_index";
        case lucas::WssMethod::unit_congruence: return "unit_congruence";
    }
    return "?";
}

ordered_json verdict_json(const lucas::WssVerdict& v) {
    ordered_json j;
    j["k"] = dec(v.k);
    j["p"] = dec(v.p);
    j["delta"] = dec(v.delta);
    j["pi_p"] = dec(v.pi_p);
    j["pi_p2"] = dec(v.pi_p2);
    if (v.u_residue)
        j["u_residue"] = dec(*v.u_residue);
    else
        j["u_residue"] = nullptr;
    j["is_wss"] = v.is_wss;
    j["method"] = method_name(v.method);
    return j;
}

ordered_json report_json(const monogenic::MonogenicityReport& rep) {
    ordered_json j;
    j["discriminant"] = dec(rep.discriminant);
    j["irreducible"] = rep.irreducible;
    j["irreducibility_basis"] = monogenic::basis_name(rep.basis);
    ordered_json verdicts = ordered_json::array();
    for (const auto& v : rep.verdicts) {
        ordered_json vj;
        vj["p"] = dec(v.p);
        vj["divides_index"] = v.divides_index;
        vj["rule"] = monogenic::rule_name(v.rule);
        vj["detail"] = v.detail;
        verdicts.push_back(std::move(vj));
    }
    j["verdicts"] = std::move(verdicts);
    j["complete"] = rep.complete;
    ordered_json cof = ordered_json::array();
    for (const auto& c : rep.untested_cofactors) cof.push_back(dec(c));
    j["untested_cofactors"] = std::move(cof);
    if (rep.is_monogenic)
        j["is_monogenic"] = *rep.is_monogenic;
    else
        j["is_monogenic"] = nullptr;
    return j;
}

// Flatten a record into dotted keys for CSV output; arrays index as .0, .1.
void flatten(const std::string& prefix, const ordered_json& j,
             std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (const auto& [key, val] : j.items())
            flatten(prefix.empty() ? key : prefix + "." + key, val, out);
    } else if (j.is_array()) {
        size_t i = 0;
        for (const auto& val : j) flatten(prefix + "." + std::to_string(i++), val, out);
        if (j.empty()) out.emplace_back(prefix, "");
    } else if (j.is_string()) {
        out.emplace_back(prefix, j.get<std::string>());
    } else if (j.is_boolean()) {
        out.emplace_back(prefix, j.get<bool>() ? "true" : "false");
    } else if (j.is_null()) {
        out.emplace_back(prefix, "");
    } else {
        out.emplace_back(prefix, j.dump());
    }
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += "\"\"";
        q += c;
    }
    q += "\"";
    return q;
}

class Emitter {
public:
    explicit Emitter(bool csv) : csv_(csv) {}

    void emit(const std::string& command, const ordered_json& inputs, const ordered_json& result,
              std::chrono::steady_clock::time_point t0) {
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                              t0)
                        .count();
        ordered_json rec;
        rec["schema_version"] = kSchemaVersion;
        rec["command"] = command;
        rec["inputs"] = inputs;
        rec["result"] = result;
        rec["timing_ms"] = ms;
        if (!csv_) {
            std::cout << rec.dump() << "\n";
            return;
        }
        std::vector<std::pair<std::string, std::string>> flat;
        flatten("", rec, flat);
        std::string header;
        for (size_t i = 0; i < flat.size(); ++i)
            header += (i ? "," : "") + csv_escape(flat[i].first);
        if (header != last_header_) {
            std::cout << header << "\n";
            last_header_ = header;
        }
        for (size_t i = 0; i < flat.size(); ++i)
            std::cout << (i ? "," : "") << csv_escape(flat[i].second);
        std::cout << "\n";
    }

private:
    bool csv_;
    std::string last_header_;
};

int degree_cap_from_env() {
    const char* raw = std::getenv("TRINOGEN_DEGREE_CAP");
    if (raw == nullptr || *raw == '\0') return polyfp::kDefaultDegreeCap;
    char* end = nullptr;
    long v = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || v < 2 || v > 1000000)
        throw std::invalid_argument("TRINOGEN_DEGREE_CAP must be an integer in [2, 1000000]");
    return static_cast<int>(v);
}

BigInt parse_bigint(const std::string& s, const std::string& flag) {
    try {
        return BigInt(s);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument(flag + " must be a decimal integer, got '" + s + "'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lucas-sequence periods, Wall-Sun-Sun prime search, and trinomial monogenicity"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "json";
    unsigned jobs = 1;
    bool quiet = false;
    app.add_option("--format", format, "Output format: json (one record per line) or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--jobs", jobs, "Worker count for the sieve (output is identical for any value)")
        ->check(CLI::Range(1u, 256u));
    app.add_flag("--quiet", quiet, "Suppress stderr progress lines");

    // period --k K --m M
    auto* cmd_period = app.add_subcommand("period", "Period of the Lucas pair orbit mod m");
    uint64_t pk = 0, pm = 0;
    cmd_period->fallthrough();
    cmd_period->add_option("--k", pk, "Recurrence multiplier")->required();
    cmd_period->add_option("--m", pm, "Modulus")->required();

    // wss check / wss sieve
    auto* cmd_wss = app.add_subcommand("wss", "Wall-Sun-Sun prime tests");
    cmd_wss->fallthrough();
    cmd_wss->require_subcommand(1);
    auto* wss_check = cmd_wss->add_subcommand("check", "Test one prime");
    uint64_t wk = 0, wp = 0;
    wss_check->fallthrough();
    wss_check->add_option("--k", wk, "Recurrence multiplier")->required();
    wss_check->add_option("--p", wp, "Prime to test")->required();
    auto* wss_sieve = cmd_wss->add_subcommand("sieve", "Scan a prime range; one record per hit");
    uint64_t sk = 0, spmin = 2, spmax = 0;
    wss_sieve->fallthrough();
    wss_sieve->add_option("--k", sk, "Recurrence multiplier")->required();
    wss_sieve->add_option("--pmin", spmin, "Lower end of the prime range (default 2)");
    wss_sieve->add_option("--pmax", spmax, "Upper end of the prime range")->required();

    // field --k K
    auto* cmd_field = app.add_subcommand("field", "Real quadratic field invariants for k");
    uint64_t fk = 0;
    cmd_field->fallthrough();
    cmd_field->add_option("--k", fk, "Recurrence multiplier (k = 4 rejected)")->required();

    // mono: --family --k --s --n  |  --N --M --A --B [--assume-irreducible]
    auto* cmd_mono = app.add_subcommand("mono", "Monogenicity report for a trinomial");
    bool family = false, attest = false;
    uint64_t mk = 0, ms = 0;
    uint32_t mn = 0;
    int mN = 0, mM = 0;
    std::string mA, mB;
    cmd_mono->fallthrough();
    cmd_mono->add_flag("--family", family, "Use the x^(2t) - k x^t - 1 family with t = s^n");
    cmd_mono->add_option("--k", mk, "Family multiplier");
    cmd_mono->add_option("--s", ms, "Family base");
    cmd_mono->add_option("--n", mn, "Family exponent");
    cmd_mono->add_option("--N", mN, "Trinomial degree");
    cmd_mono->add_option("--M", mM, "Inner exponent, 0 < M < N");
    cmd_mono->add_option("--A", mA, "Coefficient of x^M (decimal, arbitrary size)");
    cmd_mono->add_option("--B", mB, "Constant term (decimal, arbitrary size)");
    cmd_mono->add_flag("--assume-irreducible", attest,
                       "Vouch for irreducibility when no built-in criterion applies");

    // verify --k K --s S --depth N
    auto* cmd_verify = app.add_subcommand(
        "verify", "Check the family monogenicity / Wall-Sun-Sun equivalence for one (k, s)");
    uint64_t vk = 0, vs = 0;
    uint32_t vdepth = 1;
    cmd_verify->fallthrough();
    cmd_verify->add_option("--k", vk, "Recurrence multiplier")->required();
    cmd_verify->add_option("--s", vs, "Tower base")->required();
    cmd_verify->add_option("--depth", vdepth, "Tower levels to test (default 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit 0; flag errors exit 2
    }

    Emitter out(format == "csv");
    auto t0 = std::chrono::steady_clock::now();
    try {
        const int cap = degree_cap_from_env();

        if (cmd_period->parsed()) {
            auto rec = lucas::period({pk}, pm);
            ordered_json inputs{{"k", dec(pk)}, {"m", dec(pm)}};
            ordered_json result{{"k", dec(rec.k)}, {"m", dec(rec.m)}, {"pi", dec(rec.pi)}};
            out.emit("period", inputs, result, t0);
        } else if (wss_check->parsed()) {
            auto v = lucas::wss_test({wk}, wp);
            ordered_json inputs{{"k", dec(wk)}, {"p", dec(wp)}};
            out.emit("wss check", inputs, verdict_json(v), t0);
        } else if (wss_sieve->parsed()) {
            lucas::SieveProgress progress;
            if (!quiet) {
                progress = [](uint64_t primes_done, uint64_t chunks_done, uint64_t chunks_total) {
                    if (chunks_total >= 20 && chunks_done % (chunks_total / 20) != 0 &&
                        chunks_done != chunks_total)
                        return;
                    std::cerr << "progress: chunks " << chunks_done << "/" << chunks_total
                              << ", primes tested " << primes_done << "\n";
                };
            }
            auto hits = lucas::wss_sieve({sk}, spmin, spmax, jobs, progress);
            // jobs is an execution parameter, not an input to the math, and
            // including it would break the jobs-invariance of the output
            ordered_json inputs{{"k", dec(sk)}, {"pmin", dec(spmin)}, {"pmax", dec(spmax)}};
            for (const auto& v : hits) out.emit("wss sieve", inputs, verdict_json(v), t0);
            if (!quiet)
                std::cerr << "sieve done: " << hits.size() << " hit(s) in [" << spmin << ", "
                          << spmax << "]\n";
        } else if (cmd_field->parsed()) {
            auto fd = quadfield::field_data(fk);
            ordered_json inputs{{"k", dec(fk)}};
            ordered_json result;
            result["k"] = dec(fd.k);
            result["D"] = dec(fd.D);
            result["fund_disc"] = dec(fd.fund_disc);
            result["squarefree"] = fd.squarefree_D;
            if (fd.class_number)
                result["class_number"] = dec(*fd.class_number);
            else
                result["class_number"] = nullptr;
            result["unit_is_fundamental"] = fd.unit_is_fundamental;
            out.emit("field", inputs, result, t0);
        } else if (cmd_mono->parsed()) {
            bool raw = cmd_mono->count("--N") || cmd_mono->count("--M") ||
                       cmd_mono->count("--A") || cmd_mono->count("--B");
            ordered_json inputs;
            std::optional<polyfp::Trinomial> t;
            if (family && raw)
                throw std::invalid_argument(
                    "mono takes either --family with --k/--s/--n or raw --N/--M/--A/--B, not both");
            if (family) {
                if (!cmd_mono->count("--k") || !cmd_mono->count("--s") || !cmd_mono->count("--n"))
                    throw std::invalid_argument("mono --family requires --k, --s and --n");
                if (mk == 0 || ms == 0 || mn == 0)
                    throw std::invalid_argument("mono --family requires k, s, n >= 1");
                uint64_t tpow = 1;
                for (uint32_t i = 0; i < mn; ++i) {
                    if (tpow > static_cast<uint64_t>(cap) / ms)
                        throw std::domain_error("family degree 2*s^n exceeds cap " +
                                                std::to_string(cap));
                    tpow *= ms;
                }
                if (2 * tpow > static_cast<uint64_t>(cap))
                    throw std::domain_error("family degree 2*s^n exceeds cap " +
                                            std::to_string(cap));
                inputs = {{"family", true}, {"k", dec(mk)}, {"s", dec(ms)}, {"n", dec(mn)}};
                t.emplace(static_cast<int>(2 * tpow), static_cast<int>(tpow),
                          -BigInt(static_cast<unsigned long>(mk)), BigInt(-1), cap);
            } else {
                if (!raw)
                    throw std::invalid_argument(
                        "mono requires either --family with --k/--s/--n or raw --N/--M/--A/--B");
                if (!cmd_mono->count("--N") || !cmd_mono->count("--M") ||
                    !cmd_mono->count("--A") || !cmd_mono->count("--B"))
                    throw std::invalid_argument("mono raw mode requires all of --N, --M, --A, --B");
                BigInt A = parse_bigint(mA, "--A"), B = parse_bigint(mB, "--B");
                inputs = {{"family", false},
                          {"N", dec(mN)},
                          {"M", dec(mM)},
                          {"A", dec(A)},
                          {"B", dec(B)}};
                t.emplace(mN, mM, A, B, cap);
            }
            inputs["assume_irreducible"] = attest;
            auto rep = monogenic::monogenicity_report(*t, attest);
            ordered_json result;
            result["N"] = dec(rep.trinomial.N);
            result["M"] = dec(rep.trinomial.M);
            result["A"] = dec(rep.trinomial.A);
            result["B"] = dec(rep.trinomial.B);
            ordered_json body = report_json(rep);
            result.update(body);
            out.emit("mono", inputs, result, t0);
        } else if (cmd_verify->parsed()) {
            auto rep = monogenic::verify_main_theorem(vk, vs, vdepth, cap);
            ordered_json inputs{{"k", dec(vk)}, {"s", dec(vs)}, {"depth", dec(vdepth)}};
            ordered_json result;
            result["k_mod_4_ok"] = rep.k_mod_4_ok;
            result["D_squarefree"] = rep.D_squarefree;
            result["delta_minus1_per_odd_p"] = rep.delta_minus1_per_odd_p;
            result["gcd_p_hD_per_odd_p"] = rep.gcd_p_hD_per_odd_p;
            result["hypotheses_ok"] = rep.hypotheses_ok;
            ordered_json wd = ordered_json::array();
            for (uint64_t p : rep.wss_divisors) wd.push_back(dec(p));
            result["wss_divisors"] = std::move(wd);
            ordered_json fam = ordered_json::array();
            for (const auto& [n, mono] : rep.family_results) {
                ordered_json fj;
                fj["n"] = dec(n);
                fj["is_monogenic"] = mono;
                fam.push_back(std::move(fj));
            }
            result["family"] = std::move(fam);
            if (rep.consistent_with_theorem)
                result["consistent_with_theorem"] = *rep.consistent_with_theorem;
            else
                result["consistent_with_theorem"] = nullptr;
            out.emit("verify", inputs, result, t0);
            if (rep.consistent_with_theorem && !*rep.consistent_with_theorem) return 3;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
