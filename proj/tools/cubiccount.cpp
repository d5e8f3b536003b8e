// cubiccount: enumerate and count classes of binary cubic forms, check local
// densities, asymptotic constants and the class-group identity.
#include <openssl/evp.h>

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cubic/cubic.hpp"

using namespace cubic;
using nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr i128 kMaxWidth = 1000000000;  // |Disc| bound accepted on the command line

enum Exit { kOk = 0, kIdentity = 1, kUsage = 2, kResource = 3 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Settings that determine the output; threads and output paths are excluded
// so that the hash is the same for every parallelism degree.
struct RunConfig {
    std::string command;
    std::map<std::string, std::string> settings;

    std::string canonical() const {
        std::string s = command;
        for (const auto& [k, v] : settings) s += ";" + k + "=" + v;
        return s;
    }

    std::string hash() const {
        unsigned char md[EVP_MAX_MD_SIZE];
        unsigned int len = 0;
        std::string text = canonical();
        EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr);
        char hex[17];
        for (int i = 0; i < 8; ++i) std::snprintf(hex + 2 * i, 3, "%02x", md[i]);
        return hex;
    }

    std::string header() const { return std::string("# cubiccount ") + kVersion + " config=" + hash() + " " + canonical(); }
};

struct DiscRange {
    i128 lo = 0, hi = 0;
};

DiscRange parse_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) throw UsageError("discriminant range must look like lo..hi");
    DiscRange r;
    try {
        r.lo = parse_i128(s.substr(0, dots));
        r.hi = parse_i128(s.substr(dots + 2));
    } catch (const std::exception&) {
        throw UsageError("malformed discriminant range '" + s + "'");
    }
    if (r.lo > r.hi) throw UsageError("empty discriminant range: lo > hi");
    if (abs_value(r.lo) > kMaxWidth || abs_value(r.hi) > kMaxWidth)
        throw ResourceError("discriminant range exceeds the supported width 10^9");
    return r;
}

Signature parse_signature(const std::string& s) {
    if (s == "positive") return Signature::PositiveDisc;
    if (s == "negative") return Signature::NegativeDisc;
    throw UsageError("signature must be positive or negative");
}

std::vector<Signature> parse_signatures(const std::string& s) {
    if (s == "both") return {Signature::PositiveDisc, Signature::NegativeDisc};
    return {parse_signature(s)};
}

SplittingSymbol parse_symbol(const std::string& s) {
    for (auto sym : kSymbols)
        if (symbol_name(sym) == s) return sym;
    throw UsageError("unknown splitting symbol '" + s + "'");
}

// p:any, p:maximal, p:ntr, p:split=111/12
LocalCondition parse_local(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw UsageError("local condition must look like p:kind");
    u64 p = 0;
    try {
        p = std::stoull(s.substr(0, colon));
    } catch (const std::exception&) {
        throw UsageError("malformed prime in '" + s + "'");
    }
    if (!is_prime_u64(p)) throw UsageError("local condition needs a prime, got " + s.substr(0, colon));
    std::string kind = s.substr(colon + 1);
    if (kind == "any") return LocalCondition::any(p);
    if (kind == "maximal") return LocalCondition::maximal(p);
    if (kind == "ntr") return LocalCondition::not_totally_ramified(p);
    if (kind.rfind("split=", 0) == 0) {
        std::set<SplittingSymbol> syms;
        std::stringstream ss(kind.substr(6));
        std::string item;
        while (std::getline(ss, item, '/')) syms.insert(parse_symbol(item));
        return LocalCondition::splitting_in(p, syms);
    }
    throw UsageError("unknown local condition kind '" + kind + "'");
}

ClassFilter parse_filter(const std::string& mode, const std::vector<std::string>& locals) {
    ClassFilter f;
    if (mode == "all" || mode == "orders")
        f = ClassFilter::for_mode(CountMode::Orders);
    else if (mode == "maximal" || mode == "fields")
        f = ClassFilter::for_mode(CountMode::Fields);
    else if (mode == "nowhere_tot_ram")
        f = ClassFilter::for_mode(CountMode::NowhereTotRam);
    else
        throw UsageError("filter must be all, maximal or nowhere_tot_ram");
    for (const auto& l : locals) f.local.push_back(parse_local(l));
    return f;
}

std::string filter_text(const ClassFilter& f) {
    std::string s = f.describe();
    for (const auto& c : f.local) s += " " + c.describe();
    return s;
}

// stdout unless a path is given
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open " + path + " for writing");
        }
    }
    std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

ordered_json record_json(const ClassRecord& r) {
    return {{"form", {r.form.a, r.form.b, r.form.c, r.form.d}},
            {"disc", static_cast<long long>(r.disc)},
            {"sig", r.sig == Signature::PositiveDisc ? "+" : "-"},
            {"content", r.content},
            {"aut", r.aut},
            {"maximal", r.maximal},
            {"ntr", r.ntr}};
}

std::string num(long double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12Lg", v);
    return buf;
}

// Options shared by every subcommand.
struct Common {
    int threads = 1;
    bool json = false;
    std::string output;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--threads", c.threads, "worker threads (output does not depend on it)")->check(CLI::Range(1, 256));
    sub->add_flag("--json", c.json, "machine-readable output");
    sub->add_option("-o,--output", c.output, "write to this file instead of stdout");
}

// ---------------------------------------------------------------------------

struct EnumerateArgs {
    Common common;
    std::string disc, filter = "all";
    std::vector<std::string> local;
    bool no_cache = false;
};

int cmd_enumerate(const EnumerateArgs& a) {
    DiscRange r = parse_range(a.disc);
    ClassFilter filter = parse_filter(a.filter, a.local);
    RunConfig cfg{"enumerate", {{"disc", to_string(r.lo) + ".." + to_string(r.hi)}, {"filter", filter_text(filter)}}};
    InventoryMeta meta{r.lo, r.hi, filter_text(filter)};

    std::vector<ClassRecord> rows;
    bool cached = false;
    std::filesystem::path cache_file;
    if (const char* dir = std::getenv("CUBIC_CACHE_DIR"); dir && *dir && !a.no_cache) {
        cache_file = std::filesystem::path(dir) / ("inventory-" + cfg.hash() + ".csv");
        if (std::ifstream in(cache_file); in) {
            std::string version_line;
            std::getline(in, version_line);
            rows = read_inventory_csv(in, meta);
            cached = true;
        }
    }
    if (!cached) rows = classes(r.lo, r.hi, filter, {a.common.threads, true});
    if (!cache_file.empty() && !cached) {
        std::filesystem::create_directories(cache_file.parent_path());
        std::ofstream out(cache_file);
        out << cfg.header() << "\n";
        write_inventory_csv(out, meta, rows);
    }

    Sink sink(a.common.output);
    if (a.common.json) {
        ordered_json j{{"version", kVersion}, {"config", cfg.hash()}, {"range", {static_cast<long long>(r.lo), static_cast<long long>(r.hi)}},
                       {"filter", filter_text(filter)}, {"classes", ordered_json::array()}};
        for (const auto& rec : rows) j["classes"].push_back(record_json(rec));
        sink.out() << j.dump(2) << "\n";
    } else {
        sink.out() << cfg.header() << "\n";
        write_inventory_csv(sink.out(), meta, rows);
    }
    return kOk;
}

// ---------------------------------------------------------------------------

struct CountArgs {
    Common common;
    i64 x = 0;
    std::string sig = "both", filter = "all";
    std::vector<std::string> local;
};

int cmd_count(const CountArgs& a) {
    if (a.x < 1) throw UsageError("--x must be at least 1");
    if (a.x > kMaxWidth) throw ResourceError("--x exceeds the supported width 10^9");
    ClassFilter filter = parse_filter(a.filter, a.local);
    RunConfig cfg{"count", {{"x", std::to_string(a.x)}, {"sig", a.sig}, {"filter", filter_text(filter)}}};
    Sink sink(a.common.output);
    ordered_json j{{"version", kVersion}, {"config", cfg.hash()}, {"x", a.x}, {"filter", filter_text(filter)},
                   {"counts", ordered_json::array()}};
    if (!a.common.json) sink.out() << cfg.header() << "\nsig,raw,c3_classes,weighted\n";
    for (Signature s : parse_signatures(a.sig)) {
        CountReport rep = count(a.x, s, filter, a.common.threads);
        if (a.common.json)
            j["counts"].push_back({{"sig", signature_name(s)}, {"raw", rep.raw}, {"c3_classes", rep.c3_classes},
                                   {"weighted", rep.weighted.str()}});
        else
            sink.out() << signature_name(s) << "," << rep.raw << "," << rep.c3_classes << "," << rep.weighted << "\n";
    }
    if (a.common.json) sink.out() << j.dump(2) << "\n";
    return kOk;
}

// ---------------------------------------------------------------------------

struct ReportArgs {
    Common common;
    std::vector<i64> xs;
    std::string kind = "forms", sig = "negative";
};

int cmd_report(const ReportArgs& a) {
    CountKind kind;
    if (a.kind == "forms")
        kind = CountKind::Forms;
    else if (a.kind == "fields")
        kind = CountKind::Fields;
    else
        throw UsageError("--kind must be forms or fields");
    for (i64 x : a.xs)
        if (x < 0) throw UsageError("--x values must be nonnegative");
    Signature sig = parse_signature(a.sig);
    std::string xs_text;
    for (i64 x : a.xs) xs_text += (xs_text.empty() ? "" : ",") + std::to_string(x);
    RunConfig cfg{"report", {{"x", xs_text}, {"kind", a.kind}, {"sig", a.sig}}};
    auto rows = residual_report(a.xs, kind, sig, a.common.threads);
    Sink sink(a.common.output);
    if (a.common.json) {
        ordered_json j{{"version", kVersion}, {"config", cfg.hash()}, {"kind", a.kind}, {"sig", a.sig}, {"rows", ordered_json::array()}};
        for (const auto& r : rows)
            j["rows"].push_back({{"X", static_cast<long long>(r.X)},
                                 {"count", r.count},
                                 {"weighted", r.weighted.str()},
                                 {"pred1", r.pred1},
                                 {"pred2_theorem", r.pred2_theorem},
                                 {"pred2_composed", r.pred2_composed},
                                 {"res1", r.res1()},
                                 {"res2_theorem", r.res2_theorem()},
                                 {"res2_composed", r.res2_composed()},
                                 {"res1_over_x56", r.scaled(r.res1(), 5.0L / 6)},
                                 {"res2_theorem_over_x56", r.scaled(r.res2_theorem(), 5.0L / 6)},
                                 {"res2_theorem_over_x34", r.scaled(r.res2_theorem(), 0.75L)}});
        sink.out() << j.dump(2) << "\n";
    } else {
        sink.out() << cfg.header() << "\n";
        write_residual_csv(sink.out(), rows);
    }
    return kOk;
}

// ---------------------------------------------------------------------------

struct DensityArgs {
    Common common;
    u64 p = 2;
    bool brute = false, check = false;
};

int cmd_densities(const DensityArgs& a) {
    if (!is_prime_u64(a.p)) throw UsageError("--p must be a prime");
    RunConfig cfg{"densities", {{"p", std::to_string(a.p)}, {"brute_force", a.brute ? "1" : "0"}}};
    std::vector<DensitySet> sets;
    for (auto s : kSymbols) sets.push_back(DensitySet::T(s));
    for (auto s : kSymbols) sets.push_back(DensitySet::U_of(s));
    sets.push_back(DensitySet::U());
    sets.push_back(DensitySet::V());
    sets.push_back(DensitySet::W());

    Sink sink(a.common.output);
    ordered_json j{{"version", kVersion}, {"config", cfg.hash()}, {"p", a.p}, {"densities", ordered_json::object()}};
    if (!a.common.json) sink.out() << cfg.header() << "\n";
    int mismatches = 0;
    for (const auto& set : sets) {
        Rational closed = density_closed_form(set, a.p);
        Rational shown = closed;
        if (a.brute) {
            shown = density_bruteforce(a.p, set.level(), set);
            if (shown != closed) ++mismatches;
        }
        if (a.common.json)
            j["densities"][set.name()] = shown.str();
        else
            sink.out() << set.name() << " " << shown << "\n";
    }
    ordered_json sums{{"mu1_total", mu1_total(a.p).str()}, {"mu2_total", mu2_total(a.p).str()}};
    if (a.common.json) {
        j["sums"] = sums;
        j["mismatches"] = mismatches;
        sink.out() << j.dump(2) << "\n";
    } else {
        sink.out() << "mu1_total " << mu1_total(a.p) << "\nmu2_total " << mu2_total(a.p) << "\n";
    }
    if (mismatches > 0) {
        std::cerr << "error: " << mismatches << " brute-force densities differ from the closed forms\n";
        return kIdentity;
    }
    return kOk;
}

// ---------------------------------------------------------------------------

struct ConstantsArgs {
    Common common;
    bool check = false;
    double tolerance = 1e-10;
};

int cmd_constants(const ConstantsArgs& a) {
    RunConfig cfg{"constants", {}};
    ConstantSet c = constants();
    auto ids = verify_identities();
    bool ok = true;
    for (const auto& r : ids) ok = ok && r.residual() < a.tolerance;
    Sink sink(a.common.output);
    if (a.common.json) {
        ordered_json j{{"version", kVersion}, {"config", cfg.hash()}, {"constants", ordered_json::array()},
                       {"identities", ordered_json::array()}, {"normalization_ratio", normalization_ratio()}};
        for (const auto& k : c.table) j["constants"].push_back({{"name", k.name}, {"expression", k.expression}, {"value", k.value}});
        for (const auto& r : ids)
            j["identities"].push_back({{"name", r.name}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"residual", r.residual()}});
        sink.out() << j.dump(2) << "\n";
    } else {
        sink.out() << cfg.header() << "\n";
        for (const auto& k : c.table) sink.out() << k.name << " = " << num(k.value) << "    # " << k.expression << "\n";
        sink.out() << "normalization_ratio = " << num(normalization_ratio()) << "\n";
        for (const auto& r : ids) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3Le", r.residual());
            sink.out() << "residual " << buf << "  " << r.name << "\n";
        }
    }
    if (a.check && !ok) {
        std::cerr << "error: an identity residual exceeds " << a.tolerance << "\n";
        return kIdentity;
    }
    return kOk;
}

// ---------------------------------------------------------------------------

struct ClassGroupArgs {
    Common common;
    i64 x = 0;
    std::string sign = "both";
    bool check_identity = false;
};

int cmd_classgroup(const ClassGroupArgs& a) {
    if (a.x < 2) throw UsageError("--x must be at least 2");
    std::vector<int> signs;
    if (a.sign == "both")
        signs = {1, -1};
    else if (a.sign == "positive")
        signs = {1};
    else if (a.sign == "negative")
        signs = {-1};
    else
        throw UsageError("--sign must be positive, negative or both");
    RunConfig cfg{"classgroup", {{"x", std::to_string(a.x)}, {"sign", a.sign}, {"check_identity", a.check_identity ? "1" : "0"}}};
    Sink sink(a.common.output);
    ordered_json j{{"version", kVersion}, {"config", cfg.hash()}, {"x", a.x}};
    if (!a.common.json) sink.out() << cfg.header() << "\n";
    bool ok = true;
    if (a.check_identity) {
        j["identity"] = ordered_json::array();
        for (int s : signs) {
            L4Check c = verify_l4eq(a.x, s, a.common.threads);
            ok = ok && c.residual() == 0;
            const char* name = s > 0 ? "positive" : "negative";
            if (a.common.json)
                j["identity"].push_back({{"sign", name}, {"torsion_side", c.lhs}, {"cubic_side", c.rhs}, {"residual", c.residual()}});
            else
                sink.out() << name << " torsion_side=" << c.lhs << " cubic_side=" << c.rhs << " residual " << c.residual() << "\n";
        }
    } else {
        std::vector<ClassGroupRow> rows;
        for (int s : signs) {
            auto part = class_group_table(a.x, s);
            rows.insert(rows.end(), part.begin(), part.end());
        }
        std::stable_sort(rows.begin(), rows.end(), [](const ClassGroupRow& x, const ClassGroupRow& y) {
            if (abs_value(x.D) != abs_value(y.D)) return abs_value(x.D) < abs_value(y.D);
            return x.D < y.D;
        });
        if (a.common.json) {
            j["rows"] = ordered_json::array();
            for (const auto& r : rows) j["rows"].push_back({{"D", r.D}, {"h", r.h}, {"h3star", r.h3}});
        } else {
            write_class_group_csv(sink.out(), rows);
        }
    }
    if (a.common.json) sink.out() << j.dump(2) << "\n";
    if (!ok) {
        std::cerr << "error: three-torsion identity violated\n";
        return kIdentity;
    }
    return kOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    Common common;
    i64 x = 10000;
};

int cmd_verify(const VerifyArgs& a) {
    if (a.x < 10 || a.x > 100000) throw UsageError("--x must lie in [10, 10^5]");
    RunConfig cfg{"verify", {{"x", std::to_string(a.x)}}};
    std::vector<std::pair<std::string, bool>> results;
    auto add = [&](const std::string& name, bool ok) { results.emplace_back(name, ok); };

    for (u64 p : {2, 3}) {
        bool ok = true;
        for (auto s : kSymbols) {
            ok = ok && density_bruteforce(p, 1, DensitySet::T(s)) == density_closed_form(DensitySet::T(s), p);
            ok = ok && density_bruteforce(p, 2, DensitySet::U_of(s)) == density_closed_form(DensitySet::U_of(s), p);
        }
        add("densities p=" + std::to_string(p), ok);
    }
    bool sums = true;
    for (u64 p : primes_up_to(101)) {
        const Rational P(static_cast<i128>(p)), one(1), q = one - one / (P * P);
        const i64 pi = static_cast<i64>(p);
        sums = sums && mu1_total(p) == CubeRootRational(pi, q * (one - one / (P * P * P)));
        sums = sums && mu2_total(p) == CubeRootRational(pi, q, 0, -q / P);
    }
    add("density sums p<=101", sums);
    bool masses = true;
    for (u64 p : {2, 3, 5, 7}) {
        const Rational P(static_cast<i128>(p)), one(1);
        MassCheck m = mass_check(p);
        masses = masses && m.field_mass == one + one / P + one / (P * P);
        masses = masses && m.order_mass == one / ((one - one / P) * (one - one / (P * P)));
    }
    add("mass formulas", masses);
    for (u64 p : {2, 3}) add("switching p=" + std::to_string(p), verify_switching(p, a.x, a.common.threads).residual == 0);
    for (int s : {1, -1})
        add(std::string("three-torsion identity ") + (s > 0 ? "positive" : "negative"),
            verify_l4eq(a.x, s, a.common.threads).residual() == 0);
    bool ids = true;
    for (const auto& r : verify_identities()) ids = ids && r.residual() < 1e-10L;
    add("gamma/zeta identities", ids);

    bool all = true;
    Sink sink(a.common.output);
    if (a.common.json) {
        ordered_json j{{"version", kVersion}, {"config", cfg.hash()}, {"checks", ordered_json::array()}};
        for (const auto& [n, ok] : results) j["checks"].push_back({{"name", n}, {"ok", ok}});
        sink.out() << j.dump(2) << "\n";
    } else {
        sink.out() << cfg.header() << "\n";
        for (const auto& [n, ok] : results) sink.out() << (ok ? "ok   " : "FAIL ") << n << "\n";
    }
    for (const auto& r : results) all = all && r.second;
    if (!all) {
        std::cerr << "error: identity suite failed\n";
        return kIdentity;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Counts classes of binary cubic forms by discriminant.\n"
                 "Discriminant ranges are lo..hi and select lo < Disc < hi; every bound X selects 0 < |Disc| < X."};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config", "", "file of key = value lines; command-line flags override it");
    app.require_subcommand(1);

    const int default_threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    EnumerateArgs en;
    en.common.threads = default_threads;
    auto* e = app.add_subcommand("enumerate", "write the class inventory of a discriminant range as CSV");
    add_common(e, en.common);
    e->add_option("--disc", en.disc, "range lo..hi (strict: lo < Disc < hi)")->required();
    e->add_option("--filter", en.filter, "all | maximal | nowhere_tot_ram");
    e->add_option("--local", en.local, "extra local condition p:any | p:maximal | p:ntr | p:split=111/12/3/1^21/1^3");
    e->add_flag("--no-cache", en.no_cache, "ignore CUBIC_CACHE_DIR");

    CountArgs co;
    co.common.threads = default_threads;
    auto* c = app.add_subcommand("count", "raw and C3-weighted class counts with 0 < +-Disc < X");
    add_common(c, co.common);
    c->add_option("--x", co.x, "bound X")->required();
    c->add_option("--sig", co.sig, "positive | negative | both");
    c->add_option("--filter,--mode", co.filter, "all | maximal | nowhere_tot_ram");
    c->add_option("--local", co.local, "extra local condition, as for enumerate");

    ReportArgs re;
    re.common.threads = default_threads;
    auto* r = app.add_subcommand("report", "counts against one- and two-term predictions");
    add_common(r, re.common);
    r->add_option("--x", re.xs, "bounds, comma separated")->required()->delimiter(',');
    r->add_option("--kind", re.kind, "forms | fields");
    r->add_option("--sig", re.sig, "positive | negative");

    DensityArgs de;
    auto* d = app.add_subcommand("densities", "local densities at a prime");
    add_common(d, de.common);
    d->add_option("--p", de.p, "prime")->required();
    d->add_flag("--brute-force", de.brute, "count residues instead of using closed forms (exit 1 on mismatch)");

    ConstantsArgs cn;
    auto* k = app.add_subcommand("constants", "asymptotic constants and identity residuals");
    add_common(k, cn.common);
    k->add_flag("--check", cn.check, "exit 1 if a residual exceeds the tolerance");
    k->add_option("--tolerance", cn.tolerance, "residual tolerance");

    ClassGroupArgs cg;
    cg.common.threads = default_threads;
    auto* g = app.add_subcommand("classgroup", "class numbers and three-torsion of quadratic fields");
    add_common(g, cg.common);
    g->add_option("--x", cg.x, "bound on |D|")->required();
    g->add_option("--sign", cg.sign, "positive | negative | both");
    g->add_flag("--check-identity", cg.check_identity, "compare three-torsion with unramified cubic classes");

    VerifyArgs ve;
    ve.common.threads = default_threads;
    auto* v = app.add_subcommand("verify", "run the identity suite");
    add_common(v, ve.common);
    v->add_option("--x", ve.x, "bound for the enumeration-based identities");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int rc = app.exit(err);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*e) return cmd_enumerate(en);
        if (*c) return cmd_count(co);
        if (*r) return cmd_report(re);
        if (*d) return cmd_densities(de);
        if (*k) return cmd_constants(cn);
        if (*g) return cmd_classgroup(cg);
        if (*v) return cmd_verify(ve);
    } catch (const UsageError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kUsage;
    } catch (const ResourceError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kResource;
    } catch (const DomainError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kUsage;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kResource;
    }
    return kUsage;
}
