#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "schottky/cohomology.hpp"
#include "schottky/cuntz_krieger.hpp"
#include "schottky/error.hpp"
#include "schottky/fractal.hpp"
#include "schottky/group_io.hpp"
#include "schottky/special.hpp"
#include "schottky/words.hpp"
#include "schottky/zeta.hpp"

using json = nlohmann::ordered_json;
using namespace schottky;

namespace {

struct RunConfig {
    std::string preset;
    std::string file;
    std::string format = "json";
    std::string output;
    unsigned long seed = 1;
};

// Rows of scalar cells, emitted either as a JSON array of objects or as CSV.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;

    json to_json() const {
        json arr = json::array();
        for (const auto& r : rows) {
            json o = json::object();
            for (std::size_t i = 0; i < columns.size(); ++i) o[columns[i]] = r[i];
            arr.push_back(o);
        }
        return arr;
    }

    std::string to_csv() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
        os << "\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                os << (i ? "," : "");
                if (r[i].is_string())
                    os << r[i].get<std::string>();
                else
                    os << r[i].dump();
            }
            os << "\n";
        }
        return os.str();
    }
};

json big(const mpz_class& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

std::string rat(const Rational& q) { return q.get_str(); }

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

json word_json(const Word& w) {
    json a = json::array();
    for (Letter x : w) a.push_back(x);
    return a;
}

json class_json(const GradedClass& x) {
    json coeffs = json::object();
    for (const auto& [w, q] : x.coeffs) coeffs[to_string(w)] = rat(q);
    return json{{"side", side_name(x.side)}, {"twist", x.twist}, {"level", x.level}, {"coeffs", coeffs}};
}

json arch_json(const ArchClass& x) {
    json c = json::array();
    for (const auto& q : x.coeffs) c.push_back(rat(q));
    return json{{"degree", x.degree}, {"twist", x.twist}, {"coeffs", c}};
}

class Emitter {
public:
    explicit Emitter(const RunConfig& cfg) : cfg_(cfg) {}

    void require_format(std::initializer_list<const char*> allowed) const {
        for (const char* f : allowed)
            if (cfg_.format == f) return;
        fail("UnsupportedFormat", "format '" + cfg_.format + "' is not available for this subcommand");
    }

    void json_doc(const std::string& command, json body) const {
        require_format({"json"});
        json doc = json::object();
        doc["schema"] = 1;
        doc["command"] = command;
        for (auto& [k, v] : body.items()) doc[k] = v;
        write(doc.dump(2) + "\n");
    }

    // Tables honour --format csv; JSON wraps them next to the extra fields.
    void table_doc(const std::string& command, const Table& t, json extra = json::object()) const {
        require_format({"json", "csv"});
        if (cfg_.format == "csv") {
            write(t.to_csv());
            return;
        }
        extra["rows"] = t.to_json();
        json_doc(command, extra);
    }

    void write(const std::string& text) const {
        if (cfg_.output.empty()) {
            std::cout << text;
            std::cout.flush();
            return;
        }
        std::ofstream os(cfg_.output, std::ios::binary);
        if (!os) fail("OutputUnwritable", cfg_.output);
        os << text;
    }

    const std::string& format() const { return cfg_.format; }

private:
    const RunConfig& cfg_;
};

GroupDocument load_document(const RunConfig& cfg) {
    const bool has_preset = !cfg.preset.empty();
    const bool has_file = !cfg.file.empty();
    if (has_preset == has_file) fail("InputSource", "give exactly one of --preset or --file");
    return has_preset ? preset(cfg.preset) : load_group_file(cfg.file);
}

void check_positive(double x, const char* name) {
    if (!(x > 0)) fail("InvalidTolerance", std::string(name) + " must be positive");
}

std::vector<double> default_grid(std::vector<double> given, std::vector<double> fallback) {
    return given.empty() ? fallback : given;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Schottky group dynamics, dynamical cohomology and zeta identities"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--preset", cfg.preset, "builtin group: " + [] {
        std::string s;
        for (const auto& n : preset_names()) s += (s.empty() ? "" : ", ") + n;
        return s;
    }());
    app.add_option("--file", cfg.file, "group JSON document");
    app.add_option("--format", cfg.format, "json, csv or svg")->check(CLI::IsMember({"json", "csv", "svg"}));
    app.add_option("--output,-o", cfg.output, "write to this path instead of stdout");
    app.add_option("--seed", cfg.seed, "seed for randomized property checks");

    Emitter out(cfg);
    std::function<void()> action;

    // group
    auto* group = app.add_subcommand("group", "group ingestion");
    group->require_subcommand(1);
    group->add_subcommand("validate", "build the group and check the disc configuration")->callback([&] {
        action = [&] {
            GroupDocument doc = load_document(cfg);
            SchottkyGroup G = build_group(doc);
            json gens = json::array();
            for (int i = 0; i < G.genus; ++i) {
                const MoebiusMap& m = G.generators[i];
                FixedPointData fp = fixed_points(m);
                gens.push_back(json{{"matrix", json::array({cplx_json(m.a), cplx_json(m.b), cplx_json(m.c),
                                                            cplx_json(m.d)})},
                                    {"attracting", fp.z_plus.inf ? json("inf") : cplx_json(fp.z_plus.z)},
                                    {"repelling", fp.z_minus.inf ? json("inf") : cplx_json(fp.z_minus.z)},
                                    {"length", fp.length}});
            }
            json circles = json::array();
            for (const auto& c : G.circles) circles.push_back(json{{"center", cplx_json(c.center)}, {"radius", c.radius}});
            out.json_doc("group validate", json{{"valid", true},
                                                {"label", doc.label ? json(*doc.label) : json(nullptr)},
                                                {"genus", G.genus},
                                                {"fuchsian", G.fuchsian},
                                                {"circles", circles},
                                                {"generators", gens}});
        };
    });

    // orbits
    auto* orbits = app.add_subcommand("orbits", "periodic orbits of the shift");
    orbits->require_subcommand(1);
    int o_genus = 2, o_max = 8, o_n = 3;
    bool o_all = false;
    auto* o_count = orbits->add_subcommand("count", "trace, brute-force and necklace counts");
    o_count->add_option("--genus", o_genus)->required();
    o_count->add_option("--max-n", o_max);
    o_count->callback([&] {
        action = [&] {
            if (o_genus < 1) fail("InvalidGenus", std::to_string(o_genus));
            Table t{{"N", "periodic_points", "bruteforce", "primitive_orbits", "necklaces", "closed_K", "closed_R",
                     "closed_form_agrees"},
                    {}};
            bool discrepancy = false;
            for (int N = 1; N <= o_max; ++N) {
                mpz_class pp = periodic_points(o_genus, N);
                mpz_class po = primitive_orbits(o_genus, N);
                json brute = nullptr, neck = nullptr;
                if (count_words(o_genus, N) <= 5000000) {
                    brute = big(periodic_points_bruteforce(o_genus, N));
                    neck = static_cast<long>(primitive_necklaces(o_genus, N).size());
                }
                const bool agrees = paper_KN(o_genus, N) == pp && paper_RN(o_genus, N) == po;
                discrepancy = discrepancy || !agrees;
                t.rows.push_back(
                    {N, big(pp), brute, big(po), neck, big(paper_KN(o_genus, N)), big(paper_RN(o_genus, N)), agrees});
            }
            out.table_doc("orbits count", t,
                          json{{"genus", o_genus}, {"oracle", "enumeration"}, {"closed_form_discrepancy", discrepancy}});
        };
    });
    auto* o_list = orbits->add_subcommand("list", "primitive necklaces of one period");
    o_list->add_option("--genus", o_genus)->required();
    o_list->add_option("--n", o_n)->required();
    o_list->add_flag("--all", o_all, "include imprimitive necklaces");
    o_list->callback([&] {
        action = [&] {
            if (o_genus < 1) fail("InvalidGenus", std::to_string(o_genus));
            auto list = o_all ? necklaces(o_genus, o_n) : primitive_necklaces(o_genus, o_n);
            Table t{{"word", "primitive"}, {}};
            for (const auto& c : list) t.rows.push_back({word_json(c.letters()), c.primitive()});
            if (out.format() == "csv") {
                for (auto& r : t.rows) r[0] = to_string(r[0].get<Word>());
            }
            out.table_doc("orbits list", t, json{{"genus", o_genus}, {"n", o_n}, {"count", list.size()}});
        };
    });

    // cohomology
    auto* cohom = app.add_subcommand("cohomology", "dynamical cohomology");
    cohom->require_subcommand(1);
    int c_genus = 2, c_max = 3, c_p = 0, c_perturb = 100;
    auto* c_ranks = cohom->add_subcommand("ranks", "filtration ranks by exact elimination");
    c_ranks->add_option("--genus", c_genus)->required();
    c_ranks->add_option("--max-level", c_max);
    c_ranks->callback([&] {
        action = [&] {
            Table t{{"n", "rank_Pn", "rank_image_delta", "rank_Fn", "closed_form", "match"}, {}};
            for (int n = 0; n <= c_max; ++n) {
                FiltrationReport r = filtration_rank(c_genus, n, std::max(c_max, default_level_cap(c_genus)));
                t.rows.push_back({n, r.rank_Pn, r.rank_image_delta, r.rank_Fn, r.closed_form, r.rank_Fn == r.closed_form});
            }
            out.table_doc("cohomology ranks", t, json{{"genus", c_genus}});
        };
    });
    auto* c_pair = cohom->add_subcommand("pairing", "Birkhoff pairing of chi classes with generator powers");
    c_pair->add_option("--genus", c_genus)->required();
    c_pair->add_option("--max-level", c_max);
    c_pair->add_option("--perturbations", c_perturb, "random coboundary perturbations per level");
    c_pair->callback([&] {
        action = [&] {
            if (c_genus < 1) fail("InvalidGenus", std::to_string(c_genus));
            std::mt19937_64 rng(cfg.seed);
            std::uniform_int_distribution<int> coef(-5, 5);
            Table t{{"n", "k", "j", "value"}, {}};
            long invariance_failures = 0, invariance_checks = 0;
            for (int n = 1; n <= c_max; ++n) {
                for (Letter k = 0; k < 2 * c_genus; ++k) {
                    Cochain f = to_cochain(chi_class(c_genus, n, k));
                    for (Letter j = 0; j < 2 * c_genus; ++j)
                        t.rows.push_back({n, k, j, rat(pairing(f, Word(n, j)))});
                }
                if (n > 3) continue;  // perturbation vectors grow as (2g-1)^n
                for (int r = 0; r < c_perturb; ++r) {
                    Letter k = static_cast<Letter>(rng() % (2 * c_genus));
                    Cochain f = to_cochain(chi_class(c_genus, n, k));
                    Cochain h = Cochain::zero(c_genus, n - 1);
                    for (auto& x : h.c) x = coef(rng);
                    Cochain pert = extend(f, n) + coboundary(h);
                    Word orbit(n);
                    do {
                        for (auto& a : orbit) a = static_cast<Letter>(rng() % (2 * c_genus));
                    } while (!cyclically_reduced(orbit, c_genus));
                    ++invariance_checks;
                    if (pairing(pert, orbit) != pairing(f, orbit)) ++invariance_failures;
                }
            }
            out.table_doc("cohomology pairing", t,
                          json{{"genus", c_genus},
                               {"seed", cfg.seed},
                               {"invariance_checks", invariance_checks},
                               {"invariance_failures", invariance_failures}});
        };
    });
    auto* c_maps = cohom->add_subcommand("maps", "images of the Archimedean basis under U, Ubar, Utilde");
    c_maps->add_option("--genus", c_genus)->required();
    c_maps->add_option("--p", c_p, "grade, p <= 0");
    c_maps->callback([&] {
        action = [&] {
            const int n = -c_p + 1;
            if (c_p > 0) fail("InvalidGrade", "grade must satisfy p <= 0");
            CylinderMeasure mu = CylinderMeasure::uniform_markov(c_genus, n + 1);
            json rows = json::array();
            for (int k = 0; k < 2 * c_genus; ++k) {
                ArchClass x1 = ArchClass::basis(c_genus, 1, c_p - 1, k);
                ArchClass x2 = ArchClass::basis(c_genus, 2, -c_p, k);
                GradedClass u = embed_U(x1, mu), ub = embed_Ubar(x1), ut = embed_Utilde(x2);
                rows.push_back(json{{"k", k},
                                    {"U", class_json(u)},
                                    {"Ubar", class_json(ub)},
                                    {"Utilde", class_json(ut)},
                                    {"U_frobenius_equivariant", embed_U(frobenius(x1), mu) == frobenius(u)},
                                    {"Ubar_frobenius_equivariant", embed_Ubar(frobenius(x1)) == frobenius(ub)}});
            }
            out.json_doc("cohomology maps", json{{"genus", c_genus}, {"p", c_p}, {"measure", "uniform"}, {"rows", rows}});
        };
    });
    auto* c_diag = cohom->add_subcommand("diagram", "commuting square between delta_1 and its dual");
    c_diag->add_option("--genus", c_genus)->required();
    c_diag->add_option("--p", c_p, "grade, p <= 0");
    c_diag->callback([&] {
        action = [&] {
            if (c_p > 0) fail("InvalidGrade", "grade must satisfy p <= 0");
            json rows = json::array();
            bool all = true;
            for (int k = 0; k < 2 * c_genus; ++k) {
                ArchClass x = ArchClass::basis(c_genus, 1, c_p - 1, k);
                GradedClass lhs = embed_Utilde(delta1(x));
                GradedClass rhs = duality_tilde_delta1(embed_Ubar(x));
                const bool ok = lhs == rhs;
                all = all && ok;
                rows.push_back(json{{"k", k},
                                    {"utilde_delta1", class_json(lhs)},
                                    {"tilde_delta1_ubar", class_json(rhs)},
                                    {"commutes", ok}});
            }
            out.json_doc("cohomology diagram",
                         json{{"genus", c_genus}, {"p", c_p}, {"commutes", all}, {"rows", rows}});
        };
    });

    // zeta
    auto* zeta = app.add_subcommand("zeta", "Gamma factors, regularized determinants and zeta functions");
    zeta->require_subcommand(1);
    int z_genus = 2, z_lmax = 6;
    std::vector<double> z_s;
    bool z_strict = false;
    auto* z_gamma = zeta->add_subcommand("gamma", "Gamma_R, Gamma_C and the duplication residual");
    z_gamma->add_option("--s", z_s, "evaluation points");
    z_gamma->callback([&] {
        action = [&] {
            Table t{{"s", "log_gamma_R", "log_gamma_C", "duplication_residual"}, {}};
            for (double s : default_grid(z_s, {0.5, 1.0, 1.5, 2.0, 2.5, 3.0})) {
                const double lr = log_gamma_R(s).real(), lc = log_gamma_C(s).real();
                const double dup = std::abs(std::exp(lc - lr - log_gamma_R(s + 1).real()) - 1.0);
                t.rows.push_back({s, lr, lc, dup});
            }
            out.table_doc("zeta gamma", t);
        };
    });
    auto* z_phi = zeta->add_subcommand("phi", "zeta and eta of the grading operator");
    z_phi->add_option("--genus", z_genus)->required();
    z_phi->add_option("--s", z_s, "evaluation points (> 1)");
    z_phi->callback([&] {
        action = [&] {
            Table t{{"s", "closed", "truncated", "tail_bound"}, {}};
            for (double s : default_grid(z_s, {2.0, 3.0, 4.0})) {
                if (!(s > 1)) fail("OutsideConvergence", "zeta_Phi needs s > 1");
                TruncatedSum tr = zeta_phi_truncated(z_genus, s, 100000);
                t.rows.push_back({s, zeta_phi(z_genus, s).real(), tr.value, tr.tail_bound});
            }
            out.table_doc("zeta phi", t,
                          json{{"genus", z_genus}, {"volume", volume(z_genus)}, {"eta_at_zero", eta_invariant(z_genus)}});
        };
    });
    auto* z_tor = zeta->add_subcommand("torsion", "two-path torsion identity");
    z_tor->add_option("--genus", z_genus)->required();
    z_tor->add_option("--s", z_s);
    z_tor->callback([&] {
        action = [&] {
            Table t{{"s", "log_Z", "log_tau", "log_rhs", "residual", "residual_inverse"}, {}};
            for (double s : default_grid(z_s, {1.5, 2.0, 2.5})) {
                TorsionReport r = torsion_identity(z_genus, s);
                t.rows.push_back({s, r.log_Z, r.log_tau, r.log_rhs, r.residual, r.residual_inverse});
            }
            out.table_doc("zeta torsion", t, json{{"genus", z_genus}});
        };
    });
    auto* z_sel = zeta->add_subcommand("selberg", "truncated Selberg product over primitive classes");
    z_sel->add_option("--s", z_s)->required();
    z_sel->add_option("--lmax", z_lmax);
    z_sel->add_flag("--strict", z_strict, "fail when the tail bound is not small");
    z_sel->callback([&] {
        action = [&] {
            SchottkyGroup G = build_group(load_document(cfg));
            Table t{{"s", "log_value", "tail_bound", "tail_small", "classes"}, {}};
            for (double s : z_s) {
                SelbergResult r = selberg_zeta(G, s, z_lmax, true, z_strict);
                t.rows.push_back({s, r.log_value, r.tail_bound, r.tail_small, r.classes});
            }
            out.table_doc("zeta selberg", t, json{{"lmax", z_lmax}});
        };
    });

    // fractal
    int f_depth = 6, f_lmax = 8, f_quad = 512;
    double f_tol = 1e-6;
    auto* haus = app.add_subcommand("hausdorff", "Hausdorff dimension of the limit set");
    haus->add_option("--depth", f_depth);
    haus->add_option("--tol", f_tol);
    haus->callback([&] {
        action = [&] {
            check_positive(f_tol, "--tol");
            SchottkyGroup G = build_group(load_document(cfg));
            DimensionEstimate d = hausdorff_dim(G, f_depth, f_tol);
            MeasureVector mu = ps_measure(G, f_depth);
            out.json_doc("hausdorff", json{{"depth", d.depth},
                                           {"tol", f_tol},
                                           {"delta", d.delta},
                                           {"delta_coarser", d.delta_coarser},
                                           {"gap", d.gap},
                                           {"bisection_steps", d.bisection_steps},
                                           {"quasi_invariance_residual", quasi_invariance_residual(G, mu)}});
        };
    });
    auto* lim = app.add_subcommand("limit-set", "sample of the limit set");
    lim->add_option("--depth", f_depth);
    lim->callback([&] {
        action = [&] {
            out.require_format({"svg", "csv", "json"});
            SchottkyGroup G = build_group(load_document(cfg));
            LimitSetSample sample = limit_set_sample(G, f_depth);
            if (out.format() == "svg") {
                out.write(limit_set_svg(G, sample));
                return;
            }
            Table t{{"re", "im"}, {}};
            for (const auto& z : sample.points) t.rows.push_back({z.real(), z.imag()});
            out.table_doc("limit-set", t, json{{"depth", f_depth}});
        };
    });
    auto* per = app.add_subcommand("periods", "periods of the Poincare-series differentials");
    per->add_option("--lmax", f_lmax);
    per->add_option("--quadrature", f_quad);
    per->callback([&] {
        action = [&] {
            if (f_quad < 4) fail("InvalidQuadrature", "need at least 4 nodes");
            SchottkyGroup G = build_group(load_document(cfg));
            auto tab = period_table(G, f_lmax, f_quad);
            Table t{{"j", "k", "re", "im"}, {}};
            for (std::size_t j = 0; j < tab.size(); ++j)
                for (std::size_t k = 0; k < tab[j].size(); ++k)
                    t.rows.push_back({j, k, tab[j][k].real(), tab[j][k].imag()});
            out.table_doc("periods", t, json{{"lmax", f_lmax}, {"quadrature", f_quad}});
        };
    });

    // ck
    auto* ck = app.add_subcommand("ck", "Cuntz-Krieger relations on truncations");
    ck->require_subcommand(1);
    int k_depth = 6;
    std::string k_measure = "ps";
    auto* k_verify = ck->add_subcommand("verify", "symbolic check of the operator relations");
    k_verify->add_option("--depth", k_depth);
    k_verify->add_option("--measure", k_measure)->check(CLI::IsMember({"ps", "uniform"}));
    k_verify->callback([&] {
        action = [&] {
            SchottkyGroup G = build_group(load_document(cfg));
            const CKMeasure m = k_measure == "ps" ? CKMeasure::PattersonSullivan : CKMeasure::Uniform;
            RelationReport rep = ck_verify(G, k_depth, m);
            json checks = json::array();
            for (const auto& c : rep.checks)
                checks.push_back(json{{"name", c.name},
                                      {"levels", json::array({c.lowest_level, c.domain_level})},
                                      {"vectors", c.vectors},
                                      {"nonzero", c.nonzero},
                                      {"numeric", c.numeric}});
            out.json_doc("ck verify", json{{"genus", rep.g},
                                           {"depth", rep.depth},
                                           {"measure", rep.measure},
                                           {"dimension", rep.dimension},
                                           {"delta", rep.delta},
                                           {"exact", rep.exact()},
                                           {"checks", checks}});
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        action();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.numeric() ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
