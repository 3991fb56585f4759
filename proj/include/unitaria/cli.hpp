// Command-line front end: configuration, dispatch, report emission, and the
// expansion cache wiring.  Lives in a header so tests can drive dispatch()
// directly; tools/unitaria.cpp is a thin main().
#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "unitaria/bernoulli.hpp"
#include "unitaria/cache.hpp"
#include "unitaria/domain.hpp"
#include "unitaria/eisenstein.hpp"
#include "unitaria/finite_unitary.hpp"
#include "unitaria/hecke.hpp"
#include "unitaria/json_io.hpp"
#include "unitaria/maass.hpp"
#include "unitaria/qexp.hpp"

namespace unitaria {

struct Config {
    long precision_bits = kDefaultPrecisionBits;
    std::string cache_dir;  // empty: caching disabled
    std::string format = "json";
    std::uint64_t budget_enum = kDefaultEnumBudget;

    void validate() const {
        if (precision_bits < 64) throw std::domain_error("precision must be at least 64 bits");
        if (budget_enum == 0) throw std::domain_error("budgets must be positive");
        if (format != "json" && format != "csv" && format != "pretty")
            throw std::domain_error("format must be json, csv, or pretty");
    }
};

namespace cli_detail {

inline void apply_env(Config& cfg) {
    if (const char* v = std::getenv("UNITARIA_PRECISION")) cfg.precision_bits = std::atol(v);
    if (const char* v = std::getenv("UNITARIA_CACHE_DIR")) cfg.cache_dir = v;
    if (const char* v = std::getenv("UNITARIA_FORMAT")) cfg.format = v;
    if (const char* v = std::getenv("UNITARIA_BUDGET_ENUM"))
        cfg.budget_enum = static_cast<std::uint64_t>(std::atoll(v));
}

inline void flatten_csv(const Json& j, const std::string& prefix, std::ostream& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten_csv(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten_csv(j.at(i), prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out << prefix << "," << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

inline QExp1 named_form(const std::string& name, std::size_t bound) {
    if (name == "delta") return delta_qexp(bound);
    if (name.size() > 1 && name[0] == 'e') {
        unsigned w = static_cast<unsigned>(std::stoul(name.substr(1)));
        return eisenstein_qexp(w, bound);
    }
    if (name.size() > 1 && name[0] == 'g') {
        unsigned w = static_cast<unsigned>(std::stoul(name.substr(1)));
        if (w % 2) throw std::domain_error("named form: even weight expected");
        QExp1 out{static_cast<long>(w), 1, to_classical(g2k_qexp(w / 2, static_cast<unsigned>(bound)))};
        return out;
    }
    throw std::domain_error("unknown form '" + name + "' (use delta, e<K>, or g<K>)");
}

inline HermLattice builtin_lattice(const std::string& name) {
    if (name == "z") return scalar_lattice(1, Rational(1));
    if (name == "gaussian2") return integer_hermitian_lattice(1, 2);
    if (name == "eisenstein2") return integer_hermitian_lattice(3, 2);
    throw std::domain_error("unknown builtin lattice '" + name + "'");
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

}  // namespace cli_detail

/// Executes one command; the report goes to `out` in the configured format.
/// Exit code 0 on success, 1 on a domain error (structured JSON error on
/// stdout), 2 on usage errors (text on stderr).  stderr never carries
/// payload data.
inline int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    Config cfg;
    cli_detail::apply_env(cfg);

    CLI::App app{"unitaria: computational toolkit for automorphic forms on unitary groups"};
    app.require_subcommand(1);
    app.add_option("--precision", cfg.precision_bits, "working precision in bits (>= 64)");
    app.add_option("--cache-dir", cfg.cache_dir, "expansion cache directory");
    app.add_option("--format", cfg.format, "output format: json, csv, pretty");
    app.add_option("--budget-enum", cfg.budget_enum, "enumeration budget cap");

    // --- subcommand parameter stores ---
    unsigned arg_n = 0, arg_k = 0, arg_r = 0, arg_lambda = 0;
    std::uint64_t arg_p = 0, arg_q = 0, arg_level = 1, arg_cutoff = 1000, arg_qv = 2;
    std::size_t arg_bound = 20, arg_grid = 8;
    long arg_m = 0, arg_weight = 12;
    double z_re = 0.0, z_im = 1.0, s_re = 0.0, s_im = 0.0;
    std::string arg_input, arg_form = "delta", arg_form2 = "e4", arg_sr = "1", arg_chi = "0",
                arg_eta = "0", arg_ap = "0", arg_exclude, arg_builtin, arg_alpha = "0/1,1/1";
    bool flag_even = false, flag_neg = false, flag_negligible = false;

    auto* c_bern = app.add_subcommand("bernoulli", "Bernoulli number B_n");
    c_bern->add_option("--n", arg_n)->required();

    auto* c_zeta = app.add_subcommand("zeta", "special zeta values");
    c_zeta->add_flag("--even", flag_even, "zeta(2k) as rational * pi^{2k}");
    c_zeta->add_flag("--neg", flag_neg, "zeta(1-2k), exact");
    c_zeta->add_option("--k", arg_k)->required();

    auto* c_g2k = app.add_subcommand("g2k", "q-expansion of G_{2k}");
    c_g2k->add_option("--k", arg_k)->required();
    c_g2k->add_option("--bound", arg_bound);

    auto* c_eis = app.add_subcommand("eis-num", "Eisenstein lattice sum E_{lambda,N}(z, s, chi trivial)");
    c_eis->add_option("--lambda", arg_lambda)->required();
    c_eis->add_option("--level", arg_level);
    c_eis->add_option("--z-re", z_re);
    c_eis->add_option("--z-im", z_im);
    c_eis->add_option("--s-re", s_re);
    c_eis->add_option("--s-im", s_im);
    c_eis->add_option("--cutoff", arg_cutoff);

    auto* c_hecke = app.add_subcommand("hecke", "apply T_p to a named form");
    c_hecke->add_option("--form", arg_form);
    c_hecke->add_option("--p", arg_p)->required();
    c_hecke->add_option("--bound", arg_bound);

    auto* c_satake = app.add_subcommand("satake", "GL_2 Satake parameters from a_p");
    c_satake->add_option("--ap", arg_ap)->required();
    c_satake->add_option("--p", arg_p)->required();
    c_satake->add_option("--k", arg_k)->required();

    auto* c_euler = app.add_subcommand("euler", "partial L as an Euler product over a Satake file");
    c_euler->add_option("--satake", arg_input)->required();
    c_euler->add_option("--s", s_re)->required();
    c_euler->add_option("--cutoff", arg_cutoff);
    c_euler->add_option("--exclude", arg_exclude, "comma-separated primes to drop");

    auto* c_dnv = app.add_subcommand("dnv", "doubling normalization d_{n,v}(s)");
    c_dnv->add_option("--n", arg_n)->required();
    c_dnv->add_option("--s", arg_sr, "rational s");
    c_dnv->add_option("--chi", arg_chi, "rotation of chi(uniformizer), or 'ram'");
    c_dnv->add_option("--eta", arg_eta, "rotation of eta(uniformizer), or 'ram'");
    c_dnv->add_option("--qv", arg_qv);

    auto* c_rankin = app.add_subcommand("rankin", "Rankin-Selberg series D(s, f, g)");
    c_rankin->add_option("--f", arg_form);
    c_rankin->add_option("--g", arg_form2);
    c_rankin->add_option("--s", s_re)->required();
    c_rankin->add_option("--cutoff", arg_cutoff);

    auto* c_pet = app.add_subcommand("petersson", "Petersson inner product over the fundamental domain");
    c_pet->add_option("--f", arg_form);
    c_pet->add_option("--g", arg_form2);
    c_pet->add_option("--grid", arg_grid);
    c_pet->add_option("--bound", arg_bound);

    auto* c_ratio = app.add_subcommand("ratio", "algebraicity ratio D(m,f,g)/(pi^k <f,f>)");
    c_ratio->add_option("--f", arg_form);
    c_ratio->add_option("--g", arg_form2);
    c_ratio->add_option("--m", arg_m)->required();
    c_ratio->add_option("--cutoff", arg_cutoff);
    c_ratio->add_option("--grid", arg_grid);

    auto* c_ms = app.add_subcommand("ms-verify", "Maass-Shimura raising identity report");
    c_ms->add_option("--lambda", arg_lambda)->required();
    c_ms->add_option("--r", arg_r)->required();
    c_ms->add_option("--z-re", z_re);
    c_ms->add_option("--z-im", z_im);
    c_ms->add_option("--cutoff", arg_cutoff);

    auto* c_pel = app.add_subcommand("pel-validate", "validate a PEL datum of unitary type");
    c_pel->add_option("--input", arg_input)->required();

    auto* c_sig = app.add_subcommand("signature", "signature of a Hermitian space");
    c_sig->add_option("--input", arg_input)->required();

    auto* c_orb = app.add_subcommand("doubling-orbits", "orbit decomposition of maximal isotropics");
    c_orb->add_option("--n", arg_n)->required();
    c_orb->add_option("--q", arg_q)->required();
    c_orb->add_flag("--negligible", flag_negligible, "include negligibility certificates");

    auto* c_dual = app.add_subcommand("dual-lattice", "dual of a Hermitian matrix lattice");
    c_dual->add_option("--input", arg_input);
    c_dual->add_option("--builtin", arg_builtin);

    auto* c_psd = app.add_subcommand("psd-enum", "PSD lattice points up to a trace bound");
    c_psd->add_option("--input", arg_input);
    c_psd->add_option("--builtin", arg_builtin);
    c_psd->add_option("--trace-bound", arg_sr);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        err << app.help() << "\n" << e.what() << "\n";
        return 2;
    }

    auto started = std::chrono::steady_clock::now();
    Json result;
    Json params;
    std::string command;

    try {
        cfg.validate();
        long prec = cfg.precision_bits;

        if (c_bern->parsed()) {
            command = "bernoulli";
            params = {{"n", arg_n}};
            result = {{"value", bernoulli(arg_n).str()}};
        } else if (c_zeta->parsed()) {
            command = "zeta";
            params = {{"k", arg_k}, {"even", flag_even}, {"neg", flag_neg}};
            if (flag_even == flag_neg) throw std::domain_error("choose exactly one of --even / --neg");
            if (flag_even) {
                auto [r, e] = zeta_even(arg_k);
                result = {{"rational", r.str()}, {"pi_power", e}};
            } else {
                result = {{"value", zeta_neg(arg_k).str()}};
            }
        } else if (c_g2k->parsed()) {
            command = "g2k";
            params = {{"k", arg_k}, {"bound", arg_bound}};
            bool from_cache = false;
            std::string key = cache_key("g2k|" + std::to_string(arg_k) + "|" + std::to_string(arg_bound));
            Json expansion;
            bool cache_warn = false;
            if (!cfg.cache_dir.empty()) {
                auto hit = cache_get(cfg.cache_dir, key);
                cache_warn = hit.corrupt;
                if (hit.payload) {
                    expansion = Json::parse(*hit.payload);
                    from_cache = true;
                }
            }
            if (!from_cache) {
                expansion = to_json(g2k_qexp(arg_k, static_cast<unsigned>(arg_bound)));
                if (!cfg.cache_dir.empty()) cache_put(cfg.cache_dir, key, expansion.dump());
            }
            result = {{"expansion", expansion}, {"cache_hit", from_cache}};
            if (cache_warn) result["cache_warning"] = "corrupt entry recomputed and overwritten";
        } else if (c_eis->parsed()) {
            command = "eis-num";
            params = {{"lambda", arg_lambda}, {"level", arg_level}, {"z_re", z_re}, {"z_im", z_im},
                      {"s_re", s_re},         {"s_im", s_im},       {"cutoff", arg_cutoff}};
            EisensteinSpec spec{arg_lambda, arg_level, DirichletCharacter::trivial(arg_level),
                                BigComplex(s_re, s_im, prec)};
            auto v = eisenstein_numeric(spec, BigComplex(z_re, z_im, prec), arg_cutoff);
            result = {{"value", to_json(v.value)}, {"tail_bound", v.tail_bound.str()}};
        } else if (c_hecke->parsed()) {
            command = "hecke";
            params = {{"form", arg_form}, {"p", arg_p}, {"bound", arg_bound}};
            QExp1 f = cli_detail::named_form(arg_form, arg_bound * arg_p);
            QExp1 tf = hecke_tp(f, arg_p, arg_bound);
            Json coeffs = Json::array();
            for (const auto& c : tf.coeffs) coeffs.push_back(c.str());
            result = {{"weight", tf.weight}, {"coeffs", coeffs}};
        } else if (c_satake->parsed()) {
            command = "satake";
            params = {{"ap", arg_ap}, {"p", arg_p}, {"k", arg_k}};
            SatakeData data = satake_gl2(rational_from_string(arg_ap), arg_p, arg_k, prec);
            Json esym = Json::array(), numeric = Json::array();
            for (const auto& e : data.esym) esym.push_back(e.str());
            for (const auto& p : data.params) numeric.push_back(to_json(p));
            result = {{"esym", esym}, {"params", numeric}};
        } else if (c_euler->parsed()) {
            command = "euler";
            params = {{"satake", arg_input}, {"s", s_re}, {"cutoff", arg_cutoff}, {"exclude", arg_exclude}};
            SatakeFile file = satake_file_from_json(cli_detail::read_json_file(arg_input));
            std::set<std::uint64_t> excluded;
            std::stringstream ss(arg_exclude);
            for (std::string tok; std::getline(ss, tok, ',');)
                if (!tok.empty()) excluded.insert(std::stoull(tok));
            auto v = partial_l(file.factors_up_to(arg_cutoff), excluded, BigComplex(s_re, 0.0, prec),
                               arg_cutoff, prec);
            result = {{"value", to_json(v.value)},
                      {"last_factor_gap", v.last_factor_gap.str()},
                      {"largest_prime", v.largest_prime}};
        } else if (c_dnv->parsed()) {
            command = "dnv";
            params = {{"n", arg_n}, {"s", arg_sr}, {"chi", arg_chi}, {"eta", arg_eta}, {"qv", arg_qv}};
            auto parse_rot = [](const std::string& s) -> std::optional<Rational> {
                if (s == "ram") return std::nullopt;
                return rational_from_string(s);
            };
            DnvProduct d = doubling_dnv(arg_n, rational_from_string(arg_sr), parse_rot(arg_chi),
                                        parse_rot(arg_eta), arg_qv);
            Json factors = Json::array();
            for (const auto& f : d.factors)
                factors.push_back(Json{{"arg", f.arg.str()},
                                       {"char_rotation", f.char_rot ? Json(f.char_rot->str()) : Json()}});
            result = {{"factors", factors}, {"value", to_json(d.evaluate(prec))}};
        } else if (c_rankin->parsed()) {
            command = "rankin";
            params = {{"f", arg_form}, {"g", arg_form2}, {"s", s_re}, {"cutoff", arg_cutoff}};
            QExp1 f = cli_detail::named_form(arg_form, arg_cutoff);
            QExp1 g = cli_detail::named_form(arg_form2, arg_cutoff);
            double theta = 0.5 * f.weight + 0.5 * g.weight;
            auto v = rankin_selberg_d(f, g, BigComplex(s_re, s_im, prec), arg_cutoff, 500.0, theta, prec);
            result = {{"value", to_json(v.value)}, {"tail_bound", v.tail_bound.str()}};
        } else if (c_pet->parsed()) {
            command = "petersson";
            params = {{"f", arg_form}, {"g", arg_form2}, {"grid", arg_grid}, {"bound", arg_bound}};
            std::size_t bound = std::max<std::size_t>(arg_bound, 64);
            QExp1 f = cli_detail::named_form(arg_form, bound);
            QExp1 g = cli_detail::named_form(arg_form2, bound);
            auto v = petersson(f, g, static_cast<unsigned>(arg_grid), prec);
            result = {{"value", to_json(v.value)}, {"refinement_gap", v.refinement_gap.str()}};
        } else if (c_ratio->parsed()) {
            command = "ratio";
            params = {{"f", arg_form}, {"g", arg_form2}, {"m", arg_m}, {"cutoff", arg_cutoff},
                      {"grid", arg_grid}};
            QExp1 f = cli_detail::named_form(arg_form, arg_cutoff);
            QExp1 g = cli_detail::named_form(arg_form2, arg_cutoff);
            auto rep = algebraicity_ratio(f, g, arg_m, arg_cutoff, static_cast<unsigned>(arg_grid), prec);
            result = {{"ratio", to_json(rep.ratio)},
                      {"guess", rep.guess ? Json(rep.guess->str()) : Json("unrecognized")},
                      {"d_tail", rep.d_tail.str()},
                      {"petersson_gap", rep.petersson_gap.str()}};
        } else if (c_ms->parsed()) {
            command = "ms-verify";
            params = {{"lambda", arg_lambda}, {"r", arg_r}, {"z_re", z_re}, {"z_im", z_im},
                      {"cutoff", arg_cutoff}};
            EstarParams ep;
            ep.cutoff = arg_cutoff;
            ep.prec = prec;
            auto rep = verify_estar_relation(arg_lambda, arg_r, BigComplex(z_re, z_im, prec), ep);
            result = {{"lhs", to_json(rep.lhs)},
                      {"rhs", to_json(rep.rhs)},
                      {"abs_error", rep.abs_error.str()},
                      {"rel_error", rep.rel_error.str()},
                      {"value_is_zero", rep.value_is_zero},
                      {"lattice_tail", rep.lattice_tail.str()}};
        } else if (c_pel->parsed()) {
            command = "pel-validate";
            params = {{"input", arg_input}};
            Json j = cli_detail::read_json_file(arg_input);
            std::uint64_t d = j.at("d").get<std::uint64_t>();
            FieldElem alpha = field_elem_from_json(j.at("alpha"), d);
            std::vector<HermitianSpace> spaces;
            for (const auto& g : j.at("spaces")) spaces.emplace_back(d, field_matrix_from_json(g, d));
            PELDatumUnitary datum = build_unitary_pel_datum(std::move(spaces), alpha);
            Json sigs = Json::array();
            for (const auto& s : datum.signatures()) sigs.push_back(Json{{"a", s.pos}, {"b", s.neg}});
            result = {{"valid", true}, {"factors", datum.factors()}, {"signatures", sigs}};
        } else if (c_sig->parsed()) {
            command = "signature";
            params = {{"input", arg_input}};
            HermitianSpace s = hermitian_space_from_json(cli_detail::read_json_file(arg_input));
            Signature sig = signature(s);
            result = {{"a", sig.pos}, {"b", sig.neg}};
        } else if (c_orb->parsed()) {
            command = "doubling-orbits";
            params = {{"n", arg_n}, {"q", arg_q}};
            FiniteHermSpace v = standard_finite_space(arg_q, arg_n);
            FiniteHermSpace w = doubled_space(v);
            auto group = unitary_elements(v, cfg.budget_enum);
            auto decomp = classify_orbits(w, group, cfg.budget_enum);
            Json orbits = Json::array();
            Json counts;
            counts["total"] = decomp.total;
            for (const auto& orbit : decomp.orbits) {
                auto stab = stabilizer(w, group, orbit.representative);
                Json o{{"d", orbit.label}, {"size", orbit.members.size()}, {"stabilizer_order", stab.size()}};
                if (flag_negligible) {
                    auto rep = check_negligible(w, group, orbit);
                    o["negligible"] = rep.negligible;
                    o["negligible_reason"] = rep.reason;
                    o["witness_order"] = rep.witness.size();
                }
                counts["X" + std::to_string(orbit.label)] = orbit.members.size();
                orbits.push_back(o);
            }
            result = {{"counts", counts}, {"orbits", orbits}, {"group_order", group.size()}};
        } else if (c_dual->parsed()) {
            command = "dual-lattice";
            params = {{"input", arg_input}, {"builtin", arg_builtin}};
            HermLattice lat = arg_builtin.empty()
                                  ? herm_lattice_from_json(cli_detail::read_json_file(arg_input))
                                  : cli_detail::builtin_lattice(arg_builtin);
            result = {{"dual", to_json(dual_lattice(lat))}};
        } else if (c_psd->parsed()) {
            command = "psd-enum";
            params = {{"input", arg_input}, {"builtin", arg_builtin}, {"trace_bound", arg_sr}};
            HermLattice lat = arg_builtin.empty()
                                  ? herm_lattice_from_json(cli_detail::read_json_file(arg_input))
                                  : cli_detail::builtin_lattice(arg_builtin);
            auto pts = enumerate_psd(lat, rational_from_string(arg_sr));
            Json indices = Json::array();
            for (const auto& p : pts) indices.push_back(to_json(p.matrix()));
            result = {{"count", pts.size()}, {"indices", indices}};
        } else {
            err << app.help() << "\n";
            return 2;
        }
    } catch (const std::exception& e) {
        Json error = {{"schema", kSchemaVersion}, {"error", e.what()}, {"command", command}};
        out << error.dump() << "\n";
        return 1;
    }

    auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
    Json report = {{"schema", kSchemaVersion},
                   {"command", command},
                   {"parameters", params},
                   {"result", result},
                   {"wall_time_ms", elapsed.count()}};
    if (cfg.format == "csv") {
        cli_detail::flatten_csv(report["result"], "", out);
    } else if (cfg.format == "pretty") {
        out << report.dump(2) << "\n";
    } else {
        out << report.dump() << "\n";
    }
    return 0;
}

}  // namespace unitaria
