// Command-line surface: oracle counts, the direct Fredholm method, the
// closed-form diagonal and Dwork-family pipelines, and small utilities
// (Teichmuller lifts, Gamma_p values, Newton polygons). Every subcommand can
// emit JSON with --json. Exit codes: 0 ok, 1 validation failure, 2 usage.

#include <dwork/deformation.hpp>
#include <dwork/diagonal.hpp>
#include <dwork/fredholm.hpp>
#include <dwork/oracle.hpp>
#include <dwork/selftest.hpp>
#include <dwork/splitting.hpp>
#include <dwork/zeta.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

using json = nlohmann::json;
using namespace dwork;

namespace {

long long to_ll(const BigInt& v) { return v.convert_to<long long>(); }

json zeta_json(const ZetaData& z) {
    json j;
    j["p"] = z.p;
    j["n"] = z.n;
    j["d"] = z.d;
    if (z.gamma) j["gamma"] = *z.gamma;
    j["method"] = z.method;
    json num = json::array();
    for (auto& c : z.numerator) num.push_back(to_ll(c));
    j["numerator"] = num;
    j["numerator_is_inverted"] = z.numerator_is_inverted;
    json den = json::array();
    for (auto& [c, e] : z.denominator_factors) den.push_back(json::array({c, e}));
    j["denominator_factors"] = den;
    json counts = json::array();
    for (auto& [s, N] : z.counts) counts.push_back(json::array({s, to_ll(N)}));
    j["counts"] = counts;
    j["checks"] = json::object();
    for (auto& [k, v] : z.checks) j["checks"][k] = v;
    return j;
}

std::string poly_text(const std::vector<BigInt>& coeffs) {
    std::string out;
    for (size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] == 0) continue;
        std::string c = coeffs[k].str();
        if (!out.empty() && c[0] != '-') out += " + ";
        else if (!out.empty()) { out += " - "; c = c.substr(1); }
        if (k == 0) out += c;
        else out += (c == "1" ? "" : c + "*") + std::string("T") + (k == 1 ? "" : "^" + std::to_string(k));
    }
    return out.empty() ? "0" : out;
}

void print_zeta(const ZetaData& z, bool as_json, const VerifyReport* rep) {
    if (as_json) {
        json j = zeta_json(z);
        if (rep) {
            j["checks"]["weil_moduli"] = rep->moduli_ok;
            j["checks"]["functional_equation"] = rep->functional_equation_ok;
            j["checks"]["newton_symmetric"] = rep->newton_symmetric;
        }
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::cout << "numerator" << (z.numerator_is_inverted ? " (inverted, in the denominator)" : "")
              << ": " << poly_text(z.numerator) << "\n";
    std::cout << "denominator:";
    for (auto& [c, e] : z.denominator_factors) {
        std::string base = e == 0 ? "T" : e == 1 ? "p T" : "p^" + std::to_string(e) + " T";
        std::cout << " (1 - " << base << ")";
        if (c != 1) std::cout << "^" << c;
    }
    std::cout << "\n";
    for (auto& [s, N] : z.counts) std::cout << "N_" << s << " = " << N << "\n";
    for (auto& [k, v] : z.checks) std::cout << "check " << k << ": " << (v ? "ok" : "FAIL") << "\n";
    if (rep) {
        std::cout << "check weil_moduli: " << (rep->moduli_ok ? "ok" : "FAIL") << "\n";
        std::cout << "check functional_equation: " << (rep->functional_equation_ok ? "ok" : "FAIL")
                  << "\n";
        std::cout << "check newton_symmetric: " << (rep->newton_symmetric ? "ok" : "FAIL") << "\n";
    }
}

// Direct Fredholm pipeline: subset traces at s = 1..S, counts, then a fit.
ZetaData run_direct(const FpPolynomial& f, int prec, int threads) {
    (void)threads;
    long p = f.p;
    int n = f.nvars;
    int d = f.degree();
    int S = static_cast<int>(h0_size_formula(n, d).convert_to<long>());
    if (S < 1) S = 1;
    if (prec <= S)
        throw contract_error("zeta-direct: precision must exceed the numerator degree " +
                             std::to_string(S));
    UMatrix U(f, prec, truncation_degree(p, prec));
    std::vector<std::vector<PiElem>> traces;
    for (unsigned mask = 0; mask < (1u << n); ++mask) traces.push_back(U.subset_traces(mask, S));
    std::vector<std::pair<int, BigInt>> counts;
    for (int s = 1; s <= S; ++s) {
        std::vector<PiElem> at_s;
        for (auto& per_mask : traces) at_s.push_back(per_mask[s - 1]);
        counts.emplace_back(s, counts_from_traces(at_s, p, n, s));
    }
    std::vector<std::pair<int, int>> den;
    for (int j = 0; j <= n - 2; ++j) den.emplace_back(1, j);
    ZetaData z = zeta_fit(counts, den, S, p, n % 2 == 0);
    z.n = n;
    z.d = d;
    z.method = "fredholm-direct";
    return z;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zeta functions of hypersurfaces over prime fields by p-adic methods"};
    app.require_subcommand(1);
    bool as_json = false;

    long p = 0;
    int s = 1, prec = 3, threads = 1;
    std::string poly;
    bool torus = false;
    auto* cmd_count = app.add_subcommand("count", "exact point count over F_(p^s)");
    cmd_count->add_option("--p", p, "prime")->required();
    cmd_count->add_option("--s", s, "extension degree");
    cmd_count->add_option("--poly", poly, "polynomial, e.g. \"x1^3+x2^3+x3^3\"")->required();
    cmd_count->add_flag("--torus", torus, "count over the torus instead of projective space");
    cmd_count->add_option("--threads", threads, "worker threads");

    auto* cmd_direct = app.add_subcommand("zeta-direct", "direct Fredholm truncation method");
    cmd_direct->add_option("--p", p, "prime")->required();
    cmd_direct->add_option("--poly", poly, "homogeneous polynomial")->required();
    cmd_direct->add_option("--precision", prec, "p-adic working precision")->required();
    cmd_direct->add_option("--threads", threads, "worker threads");

    int d = 4;
    long a1 = 1, a2 = 1, a3 = 1;
    int dprec = -1;
    auto* cmd_diag = app.add_subcommand("zeta-diagonal", "closed forms for diagonal hypersurfaces");
    cmd_diag->add_option("--p", p, "prime")->required();
    cmd_diag->add_option("--d", d, "degree: 4 = Fermat quartic (p = 1 mod 4), 3 = cubic (p = 2 mod 3)");
    cmd_diag->add_option("--a1", a1, "cubic coefficient a1");
    cmd_diag->add_option("--a2", a2, "cubic coefficient a2");
    cmd_diag->add_option("--a3", a3, "cubic coefficient a3");
    cmd_diag->add_option("--precision", dprec, "override working precision");

    long gamma = 0;
    bool skip_n2 = false;
    auto* cmd_dwork = app.add_subcommand("zeta-dwork4", "quartic Dwork family, p = 1 mod 4");
    cmd_dwork->add_option("--p", p, "prime")->required();
    cmd_dwork->add_option("--gamma", gamma, "deformation parameter")->required();
    cmd_dwork->add_flag("--skip-n2", skip_n2, "skip the F_(p^2) oracle cross-check");
    cmd_dwork->add_option("--threads", threads, "worker threads");

    long a = 0;
    auto* cmd_teich = app.add_subcommand("teich", "Teichmuller lift mod p^N");
    cmd_teich->add_option("--p", p, "prime")->required();
    cmd_teich->add_option("--precision", prec, "precision N")->required();
    cmd_teich->add_option("--a", a, "residue to lift")->required();

    long znum = 0, zden = 1;
    auto* cmd_gamma = app.add_subcommand("gamma", "Gamma_p at a rational argument");
    cmd_gamma->add_option("--p", p, "prime")->required();
    cmd_gamma->add_option("--precision", prec, "precision N")->required();
    cmd_gamma->add_option("--num", znum, "argument numerator")->required();
    cmd_gamma->add_option("--den", zden, "argument denominator (prime to p)");

    std::string coeffs;
    auto* cmd_np = app.add_subcommand("newton-polygon", "p-adic Newton polygon of a polynomial");
    cmd_np->add_option("--p", p, "prime")->required();
    cmd_np->add_option("--coeffs", coeffs, "comma-separated coefficients, constant first")->required();

    auto* cmd_selftest = app.add_subcommand("selftest", "run the full acceptance suite");

    for (auto* sub : {cmd_count, cmd_direct, cmd_diag, cmd_dwork, cmd_teich, cmd_gamma, cmd_np,
                      cmd_selftest})
        sub->add_flag("--json", as_json, "emit JSON on stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*cmd_count) {
            auto f = parse_polynomial(poly, p);
            FqTable t(p, s);
            BigInt N = torus ? count_torus(f, t, threads) : count_projective(f, t, threads);
            if (as_json)
                std::cout << json{{"p", p}, {"s", s}, {"torus", torus}, {"count", to_ll(N)}}.dump(2)
                          << "\n";
            else
                std::cout << N << "\n";
        } else if (*cmd_direct) {
            auto f = parse_polynomial(poly, p);
            ZetaData z = run_direct(f, prec, threads);
            auto rep = verify_report(z);
            print_zeta(z, as_json, &rep);
            if (!rep.all_ok()) return 1;
        } else if (*cmd_diag) {
            ZetaData z = d == 4 ? fermat_quartic_P(p, dprec)
                                : cubic_swap_P(p, a1, a2, a3, dprec < 0 ? 6 : dprec);
            auto rep = verify_report(z);
            print_zeta(z, as_json, &rep);
            if (!rep.all_ok()) return 1;
        } else if (*cmd_dwork) {
            ZetaData z = deformation_zeta(p, gamma, !skip_n2, threads);
            auto rep = verify_report(z);
            print_zeta(z, as_json, &rep);
            if (!rep.all_ok()) return 1;
        } else if (*cmd_teich) {
            PadicInt t = teichmuller(a, p, prec);
            if (as_json)
                std::cout << json{{"p", p}, {"precision", prec}, {"a", a},
                                  {"teichmuller", to_ll(t.residue())}}.dump(2)
                          << "\n";
            else
                std::cout << t.residue() << "\n";
        } else if (*cmd_gamma) {
            PadicInt z = PadicInt::from_rational(Rational(znum, zden), p, prec);
            PadicInt g = gamma_p_at(z);
            if (as_json)
                std::cout << json{{"p", p}, {"precision", prec},
                                  {"value", to_ll(g.residue())},
                                  {"centered", to_ll(g.centered_lift())}}.dump(2)
                          << "\n";
            else
                std::cout << g.residue() << "\n";
        } else if (*cmd_np) {
            std::vector<std::pair<long, Rational>> pts;
            std::stringstream ss(coeffs);
            std::string item;
            long k = 0;
            while (std::getline(ss, item, ',')) {
                BigInt c(item);
                if (c != 0) pts.emplace_back(k, Rational(ord_p_int(c, p)));
                ++k;
            }
            auto np = newton_polygon(pts);
            if (as_json) {
                json j;
                j["p"] = p;
                j["vertices"] = json::array();
                for (auto& [deg, val] : np.vertices)
                    j["vertices"].push_back(json::array({deg, val.convert_to<double>()}));
                j["slopes"] = json::array();
                for (auto& sl : np.slopes)
                    j["slopes"].push_back(
                        json::array({sl.slope.convert_to<double>(), sl.length}));
                std::cout << j.dump(2) << "\n";
            } else {
                for (auto& sl : np.slopes)
                    std::cout << "slope " << sl.slope << " length " << sl.length << "\n";
            }
        } else if (*cmd_selftest) {
            auto results = run_acceptance();
            bool all = true;
            if (as_json) {
                json j = json::array();
                for (auto& r : results) {
                    j.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed},
                                 {"detail", r.detail}, {"seconds", r.seconds}});
                    all = all && r.passed;
                }
                std::cout << j.dump(2) << "\n";
            } else {
                for (auto& r : results) {
                    std::cout << "criterion " << r.id << " [" << (r.passed ? "PASS" : "FAIL")
                              << "] " << r.name
                              << (r.detail.empty() ? "" : " - " + r.detail) << "\n";
                    all = all && r.passed;
                }
            }
            if (!all) return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
