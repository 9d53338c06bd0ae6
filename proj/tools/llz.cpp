// Batch front end: Monte Carlo eigenvalue statistics for the classical compact
// groups, 1-/2-level densities of the twisted eigenform families, and the
// self-check table.  Output is CSV (stdout or --out).

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>

#include "llz/config.hpp"
#include "llz/density.hpp"
#include "llz/gammafactors.hpp"
#include "llz/hecke.hpp"
#include "llz/maass.hpp"
#include "llz/primes.hpp"
#include "llz/rmt.hpp"
#include "llz/satake.hpp"

using namespace llz;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitCheck = 3;

std::string data_dir() {
    const char* d = std::getenv("LLZ_DATA_DIR");
    return d ? d : "data";
}

SymmetryGroup parse_group(const std::string& s) {
    if (s == "U") return SymmetryGroup::U;
    if (s == "USp") return SymmetryGroup::USp;
    if (s == "O") return SymmetryGroup::O;
    if (s == "SOeven") return SymmetryGroup::SOeven;
    if (s == "SOodd") return SymmetryGroup::SOodd;
    throw std::runtime_error("unknown group: " + s);
}

FamilyTag parse_family(const std::string& s) {
    if (s == "f") return FamilyTag::F;
    if (s == "sym2f") return FamilyTag::Sym2F;
    if (s == "phi-f") return FamilyTag::PhiF;
    if (s == "phi-sym2f") return FamilyTag::PhiSym2F;
    throw std::runtime_error("unknown family tag: " + s);
}

MaassForm load_phi(const RunConfig& cfg) {
    std::string path = cfg.str("maass");
    if (!path.empty()) {
        if (path.find('/') == std::string::npos) path = data_dir() + "/" + path;
        return load_maass(path);
    }
    auto seed = static_cast<std::uint64_t>(cfg.integer("synthetic-seed", 1));
    auto P = static_cast<std::uint64_t>(cfg.integer("synthetic-p", 100000));
    return synthetic_maass(seed, P, cfg.num("synthetic-t", 13.7797513519));
}

RunConfig meta_of(const RunConfig& cfg) {
    RunConfig m = cfg;
    m.kv.erase("out");  // the destination path is not part of the run's identity
    return m;
}

std::unique_ptr<std::ofstream> open_out(const RunConfig& cfg, std::ostream*& out) {
    std::string path = cfg.str("out");
    out = &std::cout;
    if (path.empty()) return nullptr;
    auto f = std::make_unique<std::ofstream>(path);
    if (!*f) throw std::runtime_error("cannot open output file " + path);
    out = f.get();
    return f;
}

int cmd_rmt(const RunConfig& cfg) {
    auto group = parse_group(cfg.str("group"));
    int N = static_cast<int>(cfg.integer("N", 40));
    auto samples = static_cast<std::uint64_t>(cfg.integer("samples", 10000));
    double sigma = cfg.num("sigma", 0.5);
    auto seed = static_cast<std::uint64_t>(cfg.integer("seed", 1));
    bool two = cfg.integer("two-level", 0) != 0;
    double sigma2 = cfg.num("sigma2", sigma);
    auto F1 = fejer_pair(sigma);
    std::ostream* out;
    auto hold = open_out(cfg, out);
    *out << "group,N,samples,statistic,empirical,predicted,stderr\n";
    char buf[256];
    if (!two) {
        auto r = empirical_nlevel(group, N, samples, F1, nullptr, seed);
        double pred = predicted_1level(group, F1);
        std::snprintf(buf, sizeof buf, "%s,%d,%llu,one_level,%.12g,%.12g,%.12g\n",
                      group_name(group), N, (unsigned long long)r.samples, r.mean, pred,
                      r.stderr_);
        *out << buf;
    } else {
        auto F2 = fejer_pair(sigma2);
        auto r = empirical_nlevel(group, N, samples, F1, &F2, seed);
        double pred = predicted_2level(group, F1, F2);
        std::snprintf(buf, sizeof buf, "%s,%d,%llu,two_level,%.12g,%.12g,%.12g\n",
                      group_name(group), N, (unsigned long long)r.samples, r.mean, pred,
                      r.stderr_);
        *out << buf;
    }
    write_csv_metadata(*out, meta_of(cfg));
    return 0;
}

int cmd_family(const RunConfig& cfg) {
    auto family = parse_family(cfg.str("tag"));
    int k = static_cast<int>(cfg.integer("k", 12));
    double sigma = cfg.num("sigma", 0.125);
    bool two = cfg.integer("two-level", 0) != 0;
    auto eulerP = static_cast<std::uint64_t>(cfg.integer("euler-p", 10000));
    auto nmax = static_cast<std::uint64_t>(cfg.integer("nmax", 0));
    if (nmax == 0) nmax = std::max<std::uint64_t>(eulerP, 700);
    auto phi = load_phi(cfg);
    auto space = build_space(k, nmax);
    auto forms = eigenforms(space, nmax, eulerP);
    auto F = fejer_pair(sigma);
    FamilyDensityReport rep =
        two ? d2_family(family, k, F, fejer_pair(cfg.num("sigma2", sigma)), forms, phi)
            : d1_family(family, k, F, forms, phi);
    std::ostream* out;
    auto hold = open_out(cfg, out);
    write_report_csv(*out, rep);
    write_csv_metadata(*out, meta_of(cfg));
    return 0;
}

int cmd_checks(const RunConfig& cfg) {
    int kmin = 12, kmax = 32;
    std::string w = cfg.str("weights");
    if (!w.empty()) {
        auto dots = w.find("..");
        if (dots == std::string::npos) throw std::runtime_error("weights: expected a..b");
        kmin = std::stoi(w.substr(0, dots));
        kmax = std::stoi(w.substr(dots + 2));
    }
    bool corrupt = cfg.integer("inject-corruption", 0) != 0;
    std::ostream* out;
    auto hold = open_out(cfg, out);
    int failures = 0;
    auto report = [&](const std::string& name, bool ok) {
        *out << (ok ? "PASS  " : "FAIL  ") << name << "\n";
        if (!ok) ++failures;
    };

    // two-route Satake identity on an angle grid
    {
        bool ok = true;
        for (int ia = 0; ia < 12 && ok; ++ia)
            for (int ib = 0; ib < 12 && ok; ++ib) {
                cplx alpha = std::polar(1.0, M_PI * (ia + 0.5) / 12.0);
                cplx beta = std::polar(1.0, M_PI * (ib + 0.5) / 12.0);
                auto fpow = [alpha](int j) {
                    cplx s = 0.0;
                    for (int l = 0; l <= j; ++l) s += std::pow(alpha, 2 * l - j);
                    return s.real();
                };
                auto ppow = [beta](int j) {
                    cplx s = 0.0;
                    for (int l = 0; l <= j; ++l) s += std::pow(beta, 2 * l - j);
                    return s.real();
                };
                for (auto fam :
                     {FamilyTag::F, FamilyTag::Sym2F, FamilyTag::PhiF, FamilyTag::PhiSym2F})
                    for (int nu : {1, 2, 3}) {
                        double ps = a_coeff_powersum(local_params(fam, alpha, beta, 2), nu);
                        double cf = a_coeff_closed(fam, fpow, ppow, nu);
                        if (std::abs(ps - cf) > 1e-10) ok = false;
                    }
            }
        report("satake two-route identity", ok);
    }
    // Hecke multiplicativity across the requested weights
    {
        bool ok = true;
        for (int k = kmin; k <= kmax && ok; k += 2) {
            if (dim_Sk(k) == 0) continue;
            auto S = build_space(k, 900);
            auto forms = eigenforms(S, 900, 400);
            for (auto f : forms) {
                if (corrupt) f.lambda[6] += 1e-3;
                if (!check_multiplicativity(f, 30)) ok = false;
            }
        }
        report("hecke multiplicativity", ok);
    }
    // Petersson diagonal behavior at a mid-size weight
    {
        auto S = build_space(40, 2000);
        auto forms = eigenforms(S, 2000, 2000);
        double d = petersson_delta(forms, 1, 1);
        report("petersson diagonal near 1", std::abs(d - 1.0) < 0.3);
    }
    // gamma asymptotics
    {
        bool ok = true;
        auto F = fejer_pair(0.5);
        double prev = 1e9;
        for (int k : {12, 50, 200}) {
            auto P = mu_params(FamilyTag::PhiSym2F, k, 13.7797513519);
            double dev = std::abs(gamma_term_A(P, F, std::pow(double(k), 4.0)) - 1.0);
            if (dev >= prev) ok = false;
            prev = dev;
        }
        report("gamma term approaches ghat(0)", ok);
    }
    // root numbers
    {
        bool ok = true;
        for (int k = kmin; k <= std::min(kmax, 400); k += 2)
            if (root_number(FamilyTag::PhiF, k) != 1 ||
                root_number(FamilyTag::PhiSym2F, k) != 1)
                ok = false;
        report("root numbers +1", ok);
    }
    return failures == 0 ? 0 : kExitCheck;
}

int cmd_prime_sums(const RunConfig& cfg) {
    double sigma = cfg.num("sigma", 0.5);
    int a = static_cast<int>(cfg.integer("a", 1));
    auto F = fejer_pair(sigma);
    std::ostream* out;
    auto hold = open_out(cfg, out);
    *out << "R,kind,value,target,residual\n";
    char buf[256];
    std::istringstream rl(cfg.str("R-list", "1e3,1e4,1e5,1e6"));
    std::string tok;
    while (std::getline(rl, tok, ',')) {
        double R = std::stod(tok);
        auto lin = prime_sum_linear(F, a, R);
        double tl = F.g0 / (2.0 * a);
        std::snprintf(buf, sizeof buf, "%g,linear,%.12g,%.12g,%.12g\n", R, lin.value, tl,
                      std::abs(lin.value - tl));
        *out << buf;
        auto quad = prime_sum_quadratic(F, R);
        // target: 2 int |u| ghat(u) du
        double tq =
            4.0 * integrate([&](double u) { return u * F.ghat(u); }, 0.0, F.support, 1e-11);
        std::snprintf(buf, sizeof buf, "%g,quadratic,%.12g,%.12g,%.12g\n", R, quad.value, tq,
                      std::abs(quad.value - tq));
        *out << buf;
    }
    write_csv_metadata(*out, meta_of(cfg));
    return 0;
}

int cmd_gamma(const RunConfig& cfg) {
    auto family = parse_family(cfg.str("family", "phi-sym2f"));
    double sigma = cfg.num("sigma", 0.5);
    double t = cfg.num("t", 13.7797513519);
    auto F = fejer_pair(sigma);
    std::ostream* out;
    auto hold = open_out(cfg, out);
    *out << "family,k,t,gamma_term,ghat0,deviation\n";
    char buf[256];
    std::istringstream ks(cfg.str("k-list", "12,50,200,800"));
    std::string tok;
    while (std::getline(ks, tok, ',')) {
        int k = std::stoi(tok);
        double v = gamma_term_A(mu_params(family, k, t), F, std::pow(double(k), 4.0));
        std::snprintf(buf, sizeof buf, "%s,%d,%.10g,%.12g,%.12g,%.12g\n", family_name(family), k,
                      t, v, F.ghat0, std::abs(v / F.ghat0 - 1.0));
        *out << buf;
    }
    write_csv_metadata(*out, meta_of(cfg));
    return 0;
}

int cmd_root_number(const RunConfig& cfg) {
    auto family = parse_family(cfg.str("family", "phi-sym2f"));
    std::ostream* out;
    auto hold = open_out(cfg, out);
    *out << "family,k,root_number\n";
    std::istringstream ks(cfg.str("k-list", "12,14,16"));
    std::string tok;
    while (std::getline(ks, tok, ',')) {
        int k = std::stoi(tok);
        *out << family_name(family) << "," << k << "," << root_number(family, k) << "\n";
    }
    write_csv_metadata(*out, meta_of(cfg));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"low-lying zero statistics for twisted eigenform families"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "key=value configuration file");

    RunConfig cfg;
    auto add_flags = [&](CLI::App* sub, std::initializer_list<const char*> keys) {
        for (const char* key : keys) {
            auto k = std::string(key);
            sub->add_option_function<std::string>(
                "--" + k, [&cfg, k](const std::string& v) { cfg.set(k, v); });
        }
    };
    auto* rmt = app.add_subcommand("rmt", "Monte Carlo vs closed-form eigenvalue statistics");
    add_flags(rmt, {"group", "N", "samples", "sigma", "sigma2", "two-level", "seed", "out"});
    rmt->get_option("--group")->required();
    auto* family = app.add_subcommand("family", "1-/2-level density report for a family");
    add_flags(family, {"tag", "k", "sigma", "sigma2", "two-level", "maass", "synthetic-seed",
                       "synthetic-p", "synthetic-t", "euler-p", "nmax", "out"});
    family->get_option("--tag")->required();
    auto* checks = app.add_subcommand("checks", "run the self-check table");
    add_flags(checks, {"weights", "inject-corruption", "out"});
    auto* psums = app.add_subcommand("prime-sums", "prime sum values against their limits");
    add_flags(psums, {"sigma", "a", "R-list", "out"});
    auto* gam = app.add_subcommand("gamma", "gamma-factor contribution across weights");
    add_flags(gam, {"family", "k-list", "sigma", "t", "out"});
    auto* rn = app.add_subcommand("root-number", "functional equation signs");
    add_flags(rn, {"family", "k-list", "out"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (!config_path.empty()) {
            RunConfig file_cfg = RunConfig::from_file(config_path);
            for (auto& [k, v] : cfg.kv) file_cfg.kv[k] = v;  // flags win
            cfg = file_cfg;
        }
        if (rmt->parsed()) return cmd_rmt(cfg);
        if (family->parsed()) return cmd_family(cfg);
        if (checks->parsed()) return cmd_checks(cfg);
        if (psums->parsed()) return cmd_prime_sums(cfg);
        if (gam->parsed()) return cmd_gamma(cfg);
        if (rn->parsed()) return cmd_root_number(cfg);
    } catch (const MissingDataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
