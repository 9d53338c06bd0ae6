#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "llz/gammafactors.hpp"
#include "llz/hecke.hpp"
#include "llz/maass.hpp"
#include "llz/primes.hpp"
#include "llz/rmt.hpp"
#include "llz/satake.hpp"

namespace llz {

struct ClassifierVerdict {
    SymmetryGroup group;
    bool orthogonal_tie = false;  // the three orthogonal predictions coincide
    double margin = 0.0;          // distance gap to the runner-up
    std::map<SymmetryGroup, double> distances;

    std::string label() const {
        return orthogonal_tie ? "orthogonal-tie" : group_name(group);
    }
};

struct FamilyDensityReport {
    FamilyTag family;
    int k = 0;
    double R = 0.0;
    double sigma1 = 0.0, sigma2 = 0.0;  // sigma2 only for two-level reports
    bool two_level = false;
    bool support_flagged = false;  // sigma at or past the documented threshold

    double gamma_term = 0.0;
    double nu1_term = 0.0;
    double nu2_term = 0.0;
    double nu2_diag_plus1 = 0.0;   // the +-1 diagonal piece of the nu=2 average
    double nu2_lambda_phi2 = 0.0;  // the lambda_phi(p^2) diagonal piece
    double nu2_nondiag = 0.0;      // family-fluctuation remainder
    double nu_ge3_bound = 0.0;
    double lambda_phi_p2 = 0.0;    // reported value of the lambda_phi(p^2) prime sum

    double total = 0.0;            // D1 (or D2 for two-level reports)
    double d2_11 = 0.0, d2_12 = 0.0, d2_21 = 0.0, d2_22 = 0.0;  // mixed prime-sum averages
    double d2_11_diag = 0.0;       // p1 = p2 part of the (1,1) average
    double harmonic_avg = 0.0;     // measured family average of the weights
    double gamma_residual = 0.0;   // |gamma_term/ghat(0) - 1|, shrinks like 1/log k
    double euler_drift = 0.0;      // largest truncation drift among the L-values

    std::map<SymmetryGroup, double> predictions;
    ClassifierVerdict verdict;
};

// sum_p lambda_phi(p^2) ghat(2 log p/log R) log p/(p log R): reported, not
// assumed small (its size is only bounded on average)
inline double lambda_phi_p2_sum(const MaassForm& phi, const TestFunctionPair& F, double R) {
    double logR = std::log(R);
    double cutoff = std::pow(R, F.support / 2.0);
    double total = 0.0;
    if (cutoff < 2.0) return 0.0;
    if (phi.max_prime() < static_cast<std::uint64_t>(cutoff))
        throw MissingDataError("lambda_phi_p2_sum: prime table below cutoff " +
                               std::to_string(static_cast<std::uint64_t>(cutoff)));
    for (std::uint64_t p : sieve_primes(static_cast<std::uint64_t>(cutoff) + 1).primes) {
        double u = 2.0 * std::log(double(p)) / logR;
        double w = F.ghat(u);
        if (w <= 0.0) continue;
        total += lambda_phi_power(phi, p, 2) * w * std::log(double(p)) / (double(p) * logR);
    }
    return total;
}

namespace detail {

struct TermKernels {
    std::vector<std::uint64_t> p1, p2;      // primes inside the nu = 1, 2 windows
    std::vector<double> k1, k2;             // ghat(nu log p/log R) log p/(p^{nu/2} log R)
};

inline TermKernels make_kernels(const TestFunctionPair& F, double R) {
    TermKernels T;
    double logR = std::log(R);
    double c1 = std::pow(R, F.support), c2 = std::pow(R, F.support / 2.0);
    if (c1 >= 2.0)
        for (std::uint64_t p : sieve_primes(static_cast<std::uint64_t>(c1) + 1).primes) {
            double lp = std::log(double(p));
            double w = F.ghat(lp / logR);
            if (w <= 0.0) continue;
            T.p1.push_back(p);
            T.k1.push_back(w * lp / (std::sqrt(double(p)) * logR));
        }
    if (c2 >= 2.0)
        for (std::uint64_t p : sieve_primes(static_cast<std::uint64_t>(c2) + 1).primes) {
            double lp = std::log(double(p));
            double w = F.ghat(2.0 * lp / logR);
            if (w <= 0.0) continue;
            T.p2.push_back(p);
            T.k2.push_back(w * lp / (double(p) * logR));
        }
    return T;
}

// bound for the neglected nu >= 3 prime powers from |a(p^nu)| <= deg p^{7 nu/64}
inline double nu_ge3_bound(FamilyTag family, const TestFunctionPair& F, double R) {
    double logR = std::log(R);
    double bound = 0.0;
    int deg = family_degree(family);
    for (int nu = 3;; ++nu) {
        double cutoff = std::pow(R, F.support / nu);
        if (cutoff < 2.0) break;
        for (std::uint64_t p : sieve_primes(static_cast<std::uint64_t>(cutoff) + 1).primes) {
            double lp = std::log(double(p));
            bound += 2.0 * deg * std::pow(double(p), nu * (7.0 / 64.0 - 0.5)) * lp / logR;
        }
    }
    return bound;
}

// a^{(f)}(p^nu) through the closed forms, using the stored lambda tables
inline double a_closed(FamilyTag family, const HeckeEigenform& f, const MaassForm& phi,
                       std::uint64_t p, int nu) {
    auto fp = lookup_from_form(f, p);
    auto pp = lookup_from_maass(phi, p);
    return a_coeff_closed(family, fp, pp, nu);
}

} // namespace detail

inline ClassifierVerdict classify_symmetry(const FamilyDensityReport& rep) {
    ClassifierVerdict v;
    if (rep.predictions.empty()) throw std::domain_error("classify_symmetry: no predictions");
    std::vector<std::pair<double, SymmetryGroup>> d;
    for (auto& [g, p] : rep.predictions) d.emplace_back(std::abs(rep.total - p), g);
    std::sort(d.begin(), d.end());
    v.group = d[0].second;
    v.margin = d.size() > 1 ? d[1].first - d[0].first : 0.0;
    for (auto& [dist, g] : d) v.distances[g] = dist;
    if (!rep.two_level) {
        // the three orthogonal predictions coincide for supports inside (-1,1)
        auto so = rep.predictions.find(SymmetryGroup::SOeven);
        auto oo = rep.predictions.find(SymmetryGroup::O);
        if (so != rep.predictions.end() && oo != rep.predictions.end() &&
            so->second == oo->second &&
            (v.group == SymmetryGroup::SOeven || v.group == SymmetryGroup::O ||
             v.group == SymmetryGroup::SOodd))
            v.orthogonal_tie = true;
    }
    return v;
}

// 1-level density of the weighted family: gamma term minus twice the nu = 1, 2
// prime sums, with the family average over H_k computed exactly.
inline FamilyDensityReport d1_family(FamilyTag family, int k, const TestFunctionPair& F,
                                     const std::vector<HeckeEigenform>& forms,
                                     const MaassForm& phi) {
    if (family != FamilyTag::PhiF && family != FamilyTag::PhiSym2F)
        throw std::domain_error("d1_family: the twisted families carry the k^4 conductor");
    if (forms.empty()) throw MissingDataError("d1_family: empty eigenbasis");
    FamilyDensityReport rep;
    rep.family = family;
    rep.k = k;
    rep.R = std::pow(double(k), 4.0);
    rep.sigma1 = F.support;
    rep.support_flagged = family == FamilyTag::PhiSym2F && F.support >= 5.0 / 24.0;
    rep.gamma_term = gamma_term_A(mu_params(family, k, phi.t_phi), F, rep.R);
    rep.gamma_residual = std::abs(rep.gamma_term / F.ghat0 - 1.0);
    auto T = detail::make_kernels(F, rep.R);
    double wsum = 0.0;
    for (const auto& f : forms) wsum += f.harmonic_weight;
    rep.harmonic_avg = wsum / forms.size();
    for (const auto& f : forms) rep.euler_drift = std::max(rep.euler_drift, f.L1sym2_drift);
    // largest prime power needed: p^(2 nu) for the sym2 side
    for (std::size_t i = 0; i < T.p1.size(); ++i) {
        std::uint64_t p = T.p1[i];
        std::uint64_t need = family == FamilyTag::PhiSym2F ? p * p : p;
        if (need >= forms[0].lambda.size())
            throw MissingDataError("d1_family: eigenvalue tables end before " +
                                   std::to_string(need));
        double avg = 0.0;
        for (const auto& f : forms)
            avg += f.harmonic_weight * detail::a_closed(family, f, phi, p, 1);
        avg /= forms.size();
        rep.nu1_term += avg * T.k1[i];
    }
    for (std::size_t i = 0; i < T.p2.size(); ++i) {
        std::uint64_t p = T.p2[i];
        std::uint64_t need = family == FamilyTag::PhiSym2F ? p * p * p * p : p * p;
        if (need >= forms[0].lambda.size())
            throw MissingDataError("d1_family: eigenvalue tables end before " +
                                   std::to_string(need));
        double avg = 0.0;
        for (const auto& f : forms)
            avg += f.harmonic_weight * detail::a_closed(family, f, phi, p, 2);
        avg /= forms.size();
        rep.nu2_term += avg * T.k2[i];
        // diagonal bookkeeping: a(p^2) = (lambda_phi(p^2) - 1)(...); the lambda_f(1)^2
        // pieces of the second factor are +-1 diagonal terms
        double lphi2 = lambda_phi_power(phi, p, 2);
        double diag_sign = family == FamilyTag::PhiSym2F ? -1.0 : 1.0;
        rep.nu2_diag_plus1 += diag_sign * rep.harmonic_avg * T.k2[i];
        rep.nu2_lambda_phi2 += lphi2 * (-diag_sign) * rep.harmonic_avg * T.k2[i];
    }
    rep.nu2_nondiag = rep.nu2_term - rep.nu2_diag_plus1 - rep.nu2_lambda_phi2;
    rep.lambda_phi_p2 = lambda_phi_p2_sum(phi, F, rep.R);
    rep.nu_ge3_bound = detail::nu_ge3_bound(family, F, rep.R);
    rep.total = rep.gamma_term - 2.0 * (rep.nu1_term + rep.nu2_term);
    for (auto g : {SymmetryGroup::U, SymmetryGroup::USp, SymmetryGroup::O,
                   SymmetryGroup::SOeven, SymmetryGroup::SOodd})
        rep.predictions[g] = predicted_1level(g, F);
    rep.verdict = classify_symmetry(rep);
    return rep;
}

// 2-level density for the degree-6 family: the product of two full-zero-sum
// factors (per form, through the explicit formula with the b-coefficients)
// minus twice the 1-level density with test function g1 g2.
inline FamilyDensityReport d2_family(FamilyTag family, int k, const TestFunctionPair& f1,
                                     const TestFunctionPair& f2,
                                     const std::vector<HeckeEigenform>& forms,
                                     const MaassForm& phi) {
    if (family != FamilyTag::PhiSym2F)
        throw std::domain_error("d2_family: implemented for the degree-6 family");
    if (f1.support + f2.support >= 1.0)
        throw std::domain_error("d2_family: supports must satisfy s1+s2 < 1");
    if (forms.empty()) throw MissingDataError("d2_family: empty eigenbasis");
    FamilyDensityReport rep;
    rep.family = family;
    rep.k = k;
    rep.R = std::pow(double(k), 4.0);
    rep.sigma1 = f1.support;
    rep.sigma2 = f2.support;
    rep.two_level = true;
    double R = rep.R;
    auto P = mu_params(family, k, phi.t_phi);
    double G1 = gamma_term_A(P, f1, R), G2 = gamma_term_A(P, f2, R);
    rep.gamma_term = G1;
    rep.gamma_residual = std::abs(G1 / f1.ghat0 - 1.0);
    auto T1 = detail::make_kernels(f1, R), T2 = detail::make_kernels(f2, R);
    double H1 = 0.0, H2 = 0.0;  // the extracted +1 diagonal of the nu=2 sums
    for (double v : T1.k2) H1 += 2.0 * v;
    for (double v : T2.k2) H2 += 2.0 * v;
    double C1 = G1 + H1, C2 = G2 + H2;
    double wsum = 0.0;
    for (const auto& f : forms) wsum += f.harmonic_weight;
    rep.harmonic_avg = wsum / forms.size();
    for (const auto& f : forms) rep.euler_drift = std::max(rep.euler_drift, f.L1sym2_drift);

    auto S_of = [&](const HeckeEigenform& f, const detail::TermKernels& T) {
        double s = 0.0;
        for (std::size_t i = 0; i < T.p1.size(); ++i) {
            auto fp = lookup_from_form(f, T.p1[i]);
            auto pp = lookup_from_maass(phi, T.p1[i]);
            s += 2.0 * b_coeff(family, fp, pp, 1) * T.k1[i];
        }
        for (std::size_t i = 0; i < T.p2.size(); ++i) {
            auto fp = lookup_from_form(f, T.p2[i]);
            auto pp = lookup_from_maass(phi, T.p2[i]);
            s += 2.0 * b_coeff(family, fp, pp, 2) * T.k2[i];
        }
        return s;
    };
    auto S_part = [&](const HeckeEigenform& f, const detail::TermKernels& T, int nu) {
        double s = 0.0;
        const auto& ps = nu == 1 ? T.p1 : T.p2;
        const auto& ks = nu == 1 ? T.k1 : T.k2;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            auto fp = lookup_from_form(f, ps[i]);
            auto pp = lookup_from_maass(phi, ps[i]);
            s += 2.0 * b_coeff(family, fp, pp, nu) * ks[i];
        }
        return s;
    };
    double main = 0.0;
    for (const auto& f : forms) {
        double s1 = S_of(f, T1), s2 = S_of(f, T2);
        main += f.harmonic_weight * (C1 - s1) * (C2 - s2);
        rep.d2_11 += f.harmonic_weight * S_part(f, T1, 1) * S_part(f, T2, 1);
        rep.d2_12 += f.harmonic_weight * S_part(f, T1, 1) * S_part(f, T2, 2);
        rep.d2_21 += f.harmonic_weight * S_part(f, T1, 2) * S_part(f, T2, 1);
        rep.d2_22 += f.harmonic_weight * S_part(f, T1, 2) * S_part(f, T2, 2);
    }
    main /= forms.size();
    rep.d2_11 /= forms.size();
    rep.d2_12 /= forms.size();
    rep.d2_21 /= forms.size();
    rep.d2_22 /= forms.size();
    // the p1 = p2 diagonal of the (1,1) average: 4 sum_p avg[w b(p)^2] k1(p)^2,
    // whose main term matches 2 int |u| ghat1 ghat2 du
    {
        std::size_t i = 0, j = 0;
        while (i < T1.p1.size() && j < T2.p1.size()) {
            if (T1.p1[i] < T2.p1[j]) ++i;
            else if (T1.p1[i] > T2.p1[j]) ++j;
            else {
                double avg = 0.0;
                for (const auto& f : forms) {
                    auto fp = lookup_from_form(f, T1.p1[i]);
                    auto pp = lookup_from_maass(phi, T1.p1[i]);
                    double b = b_coeff(family, fp, pp, 1);
                    avg += f.harmonic_weight * b * b;
                }
                avg /= forms.size();
                rep.d2_11_diag += 4.0 * avg * T1.k1[i] * T2.k1[j];
                ++i;
                ++j;
            }
        }
    }
    auto P12 = product_pair(f1, f2);
    auto d1 = d1_family(family, k, P12, forms, phi);
    rep.nu1_term = d1.nu1_term;
    rep.nu2_term = d1.nu2_term;
    rep.lambda_phi_p2 = d1.lambda_phi_p2;
    rep.nu_ge3_bound = detail::nu_ge3_bound(family, f1, R) + detail::nu_ge3_bound(family, f2, R) +
                       d1.nu_ge3_bound;
    rep.total = main - 2.0 * d1.total;
    for (auto g : {SymmetryGroup::SOeven, SymmetryGroup::O, SymmetryGroup::SOodd})
        rep.predictions[g] = predicted_2level(g, f1, f2);
    rep.verdict = classify_symmetry(rep);
    return rep;
}

// CSV rows: family, k, sigma, term, value, residual_bound
inline void write_report_csv(std::ostream& out, const FamilyDensityReport& rep) {
    char buf[256];
    auto row = [&](const char* term, double value, double resid) {
        std::snprintf(buf, sizeof buf, "%s,%d,%.6g,%s,%.12g,%.12g\n", family_name(rep.family),
                      rep.k, rep.sigma1, term, value, resid);
        out << buf;
    };
    out << "family,k,sigma,term,value,residual_bound\n";
    row("gamma_term", rep.gamma_term, rep.gamma_residual);
    row("nu1_term", rep.nu1_term, 0.0);
    row("nu2_term", rep.nu2_term, 0.0);
    row("nu2_diag_plus1", rep.nu2_diag_plus1, 0.0);
    row("nu2_lambda_phi2", rep.nu2_lambda_phi2, 0.0);
    row("nu2_nondiag", rep.nu2_nondiag, 0.0);
    row("lambda_phi_p2_sum", rep.lambda_phi_p2, 0.0);
    row(rep.two_level ? "total_D2" : "total_D1", rep.total, rep.nu_ge3_bound);
    if (rep.two_level) {
        row("d2_11", rep.d2_11, 0.0);
        row("d2_12", rep.d2_12, 0.0);
        row("d2_21", rep.d2_21, 0.0);
        row("d2_22", rep.d2_22, 0.0);
        row("d2_11_diag", rep.d2_11_diag, 0.0);
    }
    row("harmonic_avg", rep.harmonic_avg, rep.euler_drift);
    for (auto& [g, p] : rep.predictions) {
        std::string name = std::string("prediction_") + group_name(g);
        row(name.c_str(), p, 0.0);
    }
    out << "# verdict=" << rep.verdict.label() << " margin=" << rep.verdict.margin << "\n";
}

} // namespace llz
