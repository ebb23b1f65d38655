#include "drinfeld/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <memory>
#include <set>
#include <ostream>
#include <sstream>

#include "drinfeld/encode.hpp"
#include "drinfeld/verify.hpp"

namespace drinfeld {

namespace {

using nlohmann::json;

struct Emitter {
    std::ostream& out;
    bool as_json = false;

    void record(const std::string& kind, const std::vector<std::pair<std::string, std::string>>& fields) {
        if (as_json) {
            json j;
            j["record"] = kind;
            for (const auto& [k, v] : fields) j[k] = v;
            out << j.dump() << "\n";
        } else {
            out << kind;
            for (const auto& [k, v] : fields) out << ' ' << k << '=' << v;
            out << "\n";
        }
    }
};

struct Common {
    RunConfig cfg;
    std::unique_ptr<Fq> F;
    bool as_json = false;

    void finalize() { F = std::make_unique<Fq>(cfg.p, cfg.e0); }
};

SkewPoly<RatF> parse_skew_ratf(const Fq* F, const std::string& s) {
    std::string t = s;
    if (t.size() >= 2 && t.front() == '[' && t.back() == ']') t = t.substr(1, t.size() - 2);
    std::vector<RatF> c;
    std::string cur;
    for (char ch : t + ";") {
        if (ch == ';') {
            if (!cur.empty()) c.push_back(parse_ratf(F, cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    return SkewPoly<RatF>(std::move(c));
}

OmegaPoint parse_omega(const Fq* F, const std::string& s) {
    std::vector<TLaurent> coords;
    std::string cur;
    for (char ch : s + ";") {
        if (ch == ';') {
            if (!cur.empty()) coords.push_back(parse_tlaurent(F, cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    return make_omega(std::move(coords));
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact arithmetic for Drinfeld modules over F_q[t]"};
    app.require_subcommand(1);

    Common c;
    std::string config_path;
    std::vector<std::string> overrides;
    app.add_option("--config", config_path, "key=value config file");
    app.add_option("--set", overrides, "config overrides key=value")->take_all();
    app.add_flag("--json", c.as_json, "emit one JSON object per record");

    // exp-series
    std::string phi_str = "[0 1; 1]";
    int rank = 1, depth = 3;
    bool generalised = false;
    auto* cmd_exp = app.add_subcommand("exp-series", "exponential series of a Drinfeld module");
    cmd_exp->add_option("--phi", phi_str, "phi_t as [b0; b1; ...] over F_q(t)");
    cmd_exp->add_option("--r", rank, "rank");
    cmd_exp->add_option("--depth", depth, "truncation index");
    cmd_exp->add_flag("--generalised", generalised, "allow rank drop");

    // act
    std::string a_str = "0 1";
    auto* cmd_act = app.add_subcommand("act", "phi_a for a in A");
    cmd_act->add_option("--phi", phi_str, "phi_t as [b0; b1; ...]");
    cmd_act->add_option("--r", rank, "rank");
    cmd_act->add_option("--a", a_str, "a in A, ascending coefficients");
    cmd_act->add_flag("--generalised", generalised, "allow rank drop");

    // isogeny
    std::string kernel_str = "0";
    auto* cmd_iso = app.add_subcommand("isogeny", "isogeny from an F_q-rational kernel");
    cmd_iso->add_option("--phi", phi_str, "phi_t as [b0; b1; ...]");
    cmd_iso->add_option("--r", rank, "rank");
    cmd_iso->add_option("--kernel", kernel_str, "kernel points over F_q(t), ';'-separated");

    // lattice-exp / module-from-lattice / torsion
    std::string lat_str = "1;0|0;1", omega_str, z_str, ell_str;
    auto* cmd_lexp = app.add_subcommand("lattice-exp", "lattice exponential e_{L omega}(z)");
    cmd_lexp->add_option("--lattice", lat_str, "basis rows over F ('|' rows, ';' entries)");
    cmd_lexp->add_option("--omega", omega_str, "omega coordinates, ';'-separated TLaurent")->required();
    cmd_lexp->add_option("--z", z_str, "argument z as TLaurent")->required();

    auto* cmd_mfl = app.add_subcommand("module-from-lattice", "psi^{L omega}_a");
    cmd_mfl->add_option("--lattice", lat_str, "basis rows over F");
    cmd_mfl->add_option("--omega", omega_str, "omega coordinates")->required();
    cmd_mfl->add_option("--a", a_str, "a in A");

    // u-expand
    int coeff_index = 2;
    auto* cmd_u = app.add_subcommand("u-expand", "u-expansion of a module coefficient");
    cmd_u->add_option("--lattice", lat_str, "rank-2 lattice basis rows");
    cmd_u->add_option("--a", a_str, "a in A");
    cmd_u->add_option("--i", coeff_index, "coefficient index");

    // order-at-infinity
    std::string series_str;
    auto* cmd_ord = app.add_subcommand("order-at-infinity", "order of a u-series");
    cmd_ord->add_option("--series", series_str, "USeries as ord:prec_u:[...]");
    cmd_ord->add_option("--lattice", lat_str, "rank-2 lattice basis rows (when no --series)");
    cmd_ord->add_option("--a", a_str, "a in A (when no --series)");
    cmd_ord->add_option("--i", coeff_index, "coefficient index (when no --series)");

    // hecke-cosets (plain coset tables, or block decomposition tables with
    // --block-h at level N)
    std::string delta_str = "0 1;1|1;1";
    std::string gp_level = "full", g_level = "full";
    std::string block_h_glob, block_h_k;
    auto* cmd_cos = app.add_subcommand("hecke-cosets", "coset tables and block decomposition tables");
    cmd_cos->add_option("--delta", delta_str, "delta over F");
    cmd_cos->add_option("--gamma-prime", gp_level, "'full' or a level polynomial");
    cmd_cos->add_option("--gamma", g_level, "'full' or a level polynomial");
    cmd_cos->add_option("--block-h", block_h_glob, "adelic global part: emit the block table instead");
    cmd_cos->add_option("--block-k", block_h_k, "adelic class mod N of h (matrix over A)");

    // hecke-apply
    std::string form_name = "one";
    int weight = 0;
    auto* cmd_app = app.add_subcommand("hecke-apply", "apply T_delta to a built-in form at omega");
    cmd_app->add_option("--delta", delta_str, "delta over F");
    cmd_app->add_option("--form", form_name, "one | g | delta-form");
    cmd_app->add_option("--k", weight, "weight");
    cmd_app->add_option("--omega", omega_str, "sample point")->required();

    // hecke-compose
    std::string h_str = "0 1;0|0;1", hp_str = "0 1;0|0;1", level_str = "1";
    auto* cmd_comp = app.add_subcommand("hecke-compose", "decomposition of T_h' o T_h");
    cmd_comp->add_option("--left", h_str, "h over A");
    cmd_comp->add_option("--right", hp_str, "h' over A");
    cmd_comp->add_option("--level", level_str, "level N (constant = full level)");

    // components
    auto* cmd_cc = app.add_subcommand("components", "number of connected components at level K(N)");
    cmd_cc->add_option("--level", level_str, "level N");
    cmd_cc->add_option("--r", rank, "rank");

    // verify
    auto* cmd_ver = app.add_subcommand("verify", "run the module invariant suites");

    for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; })) sc->fallthrough();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage: " << e.what() << "\n";
        return 2;
    }

    try {
        if (!config_path.empty()) c.cfg = RunConfig::from_file(config_path);
        c.cfg.apply_overrides(overrides);
        c.finalize();
        const Fq* F = c.F.get();
        Emitter em{out, c.as_json};
        if (!c.as_json) out << c.cfg.header(*F);

        auto module_record = [&](const DrinfeldModule<RatF>& m) {
            em.record("module", {{"r", std::to_string(m.rank)},
                                 {"generalised", m.generalised ? "1" : "0"},
                                 {"phi_t", m.phi_t.str()}});
        };
        if (*cmd_exp) {
            auto m = make_module(parse_skew_ratf(F, phi_str), rank, generalised);
            module_record(m);
            ExpSeries<RatF> e = exp_series(m, depth);
            for (int i = 0; i <= e.depth(); ++i)
                em.record("exp-coeff", {{"i", std::to_string(i)}, {"value", e.e[i].str()}});
        } else if (*cmd_act) {
            auto m = make_module(parse_skew_ratf(F, phi_str), rank, generalised);
            module_record(m);
            em.record("act", {{"a", parse_poly(F, a_str).str()}, {"phi_a", act(m, parse_poly(F, a_str)).str()}});
        } else if (*cmd_iso) {
            auto m = make_module(parse_skew_ratf(F, phi_str), rank, false);
            std::vector<RatF> H;
            std::string cur;
            for (char ch : kernel_str + ";") {
                if (ch == ';') {
                    if (!cur.empty()) H.push_back(parse_ratf(F, cur));
                    cur.clear();
                } else {
                    cur += ch;
                }
            }
            Isogeny<RatF> iso = isogeny_from_kernel(m, H);
            em.record("isogeny", {{"e_H", iso.e.str()}, {"target_phi_t", iso.target.phi_t.str()}});
        } else if (*cmd_lexp) {
            LatticeFr L = LatticeFr::from_rows(parse_matf(F, lat_str));
            OmegaPoint w = parse_omega(F, omega_str);
            TLaurent z = parse_tlaurent(F, z_str);
            em.record("lattice-exp", {{"value", lattice_exp(L, w, z, c.cfg.D).str()}});
        } else if (*cmd_mfl) {
            LatticeFr L = LatticeFr::from_rows(parse_matf(F, lat_str));
            OmegaPoint w = parse_omega(F, omega_str);
            SkewPoly<TLaurent> psi = module_from_lattice(L, w, parse_poly(F, a_str), c.cfg.D);
            em.record("psi", {{"a", parse_poly(F, a_str).str()}, {"value", psi.str()}});
        } else if (*cmd_u) {
            LatticeFr L = LatticeFr::from_rows(parse_matf(F, lat_str));
            OmegaPoint wp = make_omega({TLaurent::one(F, c.cfg.ram, c.cfg.prec)});
            UContext ctx = UContext::make(L, wp);
            // raise D until the inner exponentials stabilize, up to the ceiling
            int used_D = c.cfg.D;
            USeries s = [&] {
                for (;; used_D += 2) {
                    try {
                        return coeff_form_u_series(ctx, parse_poly(F, a_str), coeff_index, c.cfg.m_u,
                                                   used_D);
                    } catch (const Error& e) {
                        if (!e.is_precision_failure() || used_D + 2 > c.cfg.D_ceiling) throw;
                    }
                }
            }();
            em.record("u-series",
                      {{"a", parse_poly(F, a_str).str()},
                       {"i", std::to_string(coeff_index)},
                       {"value", s.str()},
                       {"D", std::to_string(used_D)},
                       {"stable_coeffs", std::to_string(s.coeffs().size())}});
        } else if (*cmd_ord) {
            USeries s = [&] {
                if (!series_str.empty()) return parse_useries(F, series_str);
                LatticeFr L = LatticeFr::from_rows(parse_matf(F, lat_str));
                OmegaPoint wp = make_omega({TLaurent::one(F, c.cfg.ram, c.cfg.prec)});
                UContext ctx = UContext::make(L, wp);
                return coeff_form_u_series(ctx, parse_poly(F, a_str), coeff_index, c.cfg.m_u, c.cfg.D);
            }();
            OrderAtInfinity o = order_at_infinity(s);
            em.record("order-at-infinity",
                      {{"ord", std::to_string(o.ord)},
                       {"holomorphic", o.ord >= 0 ? "1" : "0"},
                       {"cuspidal", o.ord >= 1 ? "1" : "0"}});
        } else if (*cmd_cos) {
            if (!block_h_glob.empty()) {
                // decomposition table of the level-N Hecke operator given by
                // (g_glob, k mod N), over canonical component representatives
                PolyA N = parse_poly(F, c.cfg.N);
                MatF hg = parse_matf(F, block_h_glob);
                rank = hg.rows();
                MatA hk = block_h_k.empty() ? MatA::identity(rank, F) : parse_mata(F, block_h_k);
                AdelicApprox h = make_adelic(hg, hk, N);
                std::vector<AdelicApprox> reps;
                std::set<std::string> seen;
                std::vector<std::uint16_t> digits(std::max(N.deg(), 1), 0);
                for (;;) {
                    PolyA d(F, digits);
                    if (N.is_constant() || (gcd(d, N).is_one() &&
                                            seen.insert(det_class_label(d, N).str()).second)) {
                        MatA k = MatA::identity(rank, F);
                        k.at(0, 0) = N.is_constant() ? PolyA::one(F) : d;
                        reps.push_back(make_adelic(MatF::identity(rank, F), k, N));
                    }
                    if (N.is_constant()) break;
                    int kk = 0;
                    while (kk < N.deg() && digits[kk] == F->q() - 1) digits[kk++] = 0;
                    if (kk >= N.deg()) break;
                    ++digits[kk];
                }
                for (const HeckeBlock& b : hecke_blocks(h, N, reps)) {
                    out << "#block " << b.source << " -> " << b.target << "\n";
                    if (b.deltas_enumerated)
                        for (const MatF& d : b.deltas) em.record("delta", {{"rep", d.str()}});
                    else
                        em.record("delta", {{"rep", "unenumerated"}});
                }
            } else {
                auto parse_group = [&](const std::string& s) {
                    if (s == "full") return ArithSubgroup::full_gl(F, rank);
                    return ArithSubgroup::principal(F, rank, parse_poly(F, s));
                };
                MatF delta = parse_matf(F, delta_str);
                rank = delta.rows();
                CosetSet cs = coset_reps(parse_group(gp_level), delta, parse_group(g_level));
                em.record("coset-count", {{"n", std::to_string(cs.reps.size())},
                                          {"certified", cs.complete_certified ? "1" : "0"}});
                for (const MatF& m : cs.reps) em.record("coset", {{"rep", m.str()}});
            }
        } else if (*cmd_app) {
            MatF delta = parse_matf(F, delta_str);
            OmegaPoint w = parse_omega(F, omega_str);
            ArithSubgroup G = ArithSubgroup::full_gl(F, delta.rows());
            FormEvaluator f;
            if (form_name == "one") {
                f = [F, &w](const OmegaPoint& p) { return TLaurent::one(F, p.ram(), w.coords[0].prec()); };
            } else if (form_name == "g" || form_name == "delta-form") {
                int idx = form_name == "g" ? 1 : 2;
                int D = c.cfg.D;
                f = [F, idx, D](const OmegaPoint& p) {
                    OmegaPoint p2 = p;
                    p2.certified = true;
                    LatticeFr L = LatticeFr::standard(F, p.rank());
                    return module_from_lattice(L, p2, PolyA::t(F), D).coeff_ref(idx);
                };
            } else {
                err << "usage: unknown form '" << form_name << "'\n";
                return 2;
            }
            TLaurent v = hecke_apply(f, delta, G, G, weight)(w);
            em.record("hecke-apply", {{"form", form_name}, {"k", std::to_string(weight)}, {"value", v.str()}});
        } else if (*cmd_comp) {
            ComposeResult res = hecke_compose_check(parse_matf(F, h_str), parse_matf(F, hp_str),
                                                    parse_poly(F, level_str));
            em.record("compose-mass", {{"lhs", std::to_string(res.mass_lhs)}, {"rhs", std::to_string(res.mass_rhs)}});
            for (const auto& t : res.terms) {
                std::ostringstream div;
                for (std::size_t i = 0; i < t.divisors.size(); ++i) {
                    if (i) div << ", ";
                    div << t.divisors[i].str();
                }
                em.record("compose-term", {{"divisors", div.str()},
                                           {"multiplicity", std::to_string(t.multiplicity)},
                                           {"convolution", std::to_string(t.convolution)},
                                           {"cosets", std::to_string(t.coset_count)}});
            }
        } else if (*cmd_cc) {
            em.record("components", {{"N", parse_poly(F, level_str).str()},
                                     {"count", std::to_string(component_count(parse_poly(F, level_str), rank))}});
        } else if (*cmd_ver) {
            bool all = true;
            for (const CheckResult& r : run_verify(c.cfg)) {
                em.record("invariant", {{"name", r.name}, {"pass", r.pass ? "1" : "0"}, {"detail", r.detail}});
                all = all && r.pass;
            }
            return all ? 0 : 1;
        }
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.is_precision_failure() ? 3 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return dispatch(args, out, err);
}

}  // namespace drinfeld
