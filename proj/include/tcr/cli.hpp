#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "tcr/augmentation.hpp"
#include "tcr/blowup.hpp"
#include "tcr/extremal.hpp"
#include "tcr/io.hpp"

namespace tcr::cli {

/// What a subcommand hands back. A non-zero code still prints the report.
struct Outcome {
    Json result = Json::object();
    Json certificates = Json::object();
    int code = 0;
    std::string summary;
};

namespace detail {

inline Rational rational_option(const std::string& name, const std::string& text) {
    try {
        return parse_rational(text);
    } catch (const std::exception&) {
        throw Error(ErrorCode::Usage, "--" + name + ": not a rational: '" + text + "'");
    }
}

inline Json graph_summary(const ColouredKGraph& h) {
    return {{"k", h.k()}, {"n", h.n()}, {"edges", h.size()}, {"red", h.count(Colour::Red)}, {"blue", h.count(Colour::Blue)}};
}

inline Json load_json(const std::string& path) {
    try {
        return Json::parse(read_text(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
}

/// Accepts a bare artifact or a full report carrying it under certificates.
inline Json unwrap(const Json& j, const std::string& key) {
    if (j.contains("certificates") && j.at("certificates").contains(key)) return j.at("certificates").at(key);
    return j;
}

inline Json component_table(const ColouredKGraph& h, const TightDecomposition& d) {
    Json a = Json::array();
    for (int c = 0; c < static_cast<int>(d.count()); ++c) {
        KGraph g = component_graph(h.graph(), d, c);
        a.push_back({{"id", c},
                     {"colour", colour_name(d.colour[c])},
                     {"edges", d.components[c].size()},
                     {"vertices", vertex_support(g).size()}});
    }
    return a;
}

inline ColouredKGraph load_graph(const std::string& path) { return parse_coloured_hypergraph(read_text(path)); }

}  // namespace detail

/// Options shared by the driver and augment subcommands.
struct DriverOptions {
    std::string eps = "1/50", gamma = "1/20", delta = "1/10", eta = "3/20", c = "1/100";
    std::optional<std::uint64_t> seed;
    std::optional<int> n;
    std::optional<std::string> bp_eps;
    int max_iterations = 64;

    void attach(CLI::App* s) {
        s->add_option("--eps", eps, "density parameter")->capture_default_str();
        s->add_option("--gamma", gamma, "augmentation gain per step")->capture_default_str();
        s->add_option("--delta", delta, "initial matching fraction")->capture_default_str();
        s->add_option("--eta", eta, "vertex slack")->capture_default_str();
        s->add_option("--c", c, "minimum edge weight")->capture_default_str();
        s->add_option("--seed", seed, "random seed")->required();
        s->add_option("--n", n, "target scale (default floor(N / (5/4 + 3 eta)))");
        s->add_option("--bp-eps", bp_eps, "blueprint eps");
        s->add_option("--max-iterations", max_iterations)->capture_default_str();
    }
    DriverParams params() const {
        DriverParams p;
        p.eps = detail::rational_option("eps", eps);
        p.gamma = detail::rational_option("gamma", gamma);
        p.delta = detail::rational_option("delta", delta);
        p.eta = detail::rational_option("eta", eta);
        p.c = detail::rational_option("c", c);
        p.seed = *seed;
        p.n = n;
        if (bp_eps) p.bp_eps = detail::rational_option("bp-eps", *bp_eps);
        p.max_iterations = max_iterations;
        return p;
    }
};

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tight cycles in 2-coloured hypergraphs: constructions, matchings, blueprints, augmentation"};
    app.name("tcr");
    app.require_subcommand(1);
    bool timing = false;
    int jobs = 1;
    app.add_flag("--timing", timing, "add wall-clock time to the report");
    app.add_option("--jobs", jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);

    std::string in = "-";
    std::function<Outcome()> handler;
    Json inputs = Json::object();
    std::string command;

    auto add_in = [&](CLI::App* s) { s->add_option("--in", in, "tcg file, - for stdin")->capture_default_str(); };
    auto load = [&] {
        inputs["in"] = in;
        return detail::load_graph(in);
    };

    // components
    auto* comp = app.add_subcommand("components", "monochromatic tight components");
    add_in(comp);
    comp->callback([&] {
        command = "components";
        handler = [&] {
            auto h = load();
            inputs = {{"in", in}};
            auto d = monochromatic_components(h);
            Outcome o;
            o.result = {{"graph", detail::graph_summary(h)}, {"count", d.count()}, {"components", detail::component_table(h, d)}};
            return o;
        };
    });

    // match
    std::string mode = "lp";
    int s_param = 1;
    std::string beta = "0";
    std::optional<int> component;
    std::optional<std::string> certificate;
    std::size_t match_cap = kDefaultMatchingCap;
    auto* match = app.add_subcommand("match", "matchings inside monochromatic tight components");
    add_in(match);
    match->add_option("--mode", mode, "exact | lp | mu")->check(CLI::IsMember({"exact", "lp", "mu"}))->capture_default_str();
    match->add_option("--s", s_param, "components combined (mu)")->capture_default_str();
    match->add_option("--beta", beta, "minimum positive weight (mu)")->capture_default_str();
    match->add_option("--component", component, "restrict to one component id");
    match->add_option("--certificate", certificate, "validate a fractional matching from a report instead");
    match->add_option("--cap", match_cap, "edge cap for the exact search")->capture_default_str();
    match->callback([&] {
        command = "match";
        handler = [&] {
            auto h = load();
            auto d = monochromatic_components(h);
            Outcome o;
            o.result["graph"] = detail::graph_summary(h);
            if (certificate) {
                inputs = {{"in", in}, {"certificate", *certificate}};
                auto phi = fractional_from_json(detail::unwrap(detail::load_json(*certificate), "matching"));
                auto v = validate_fractional(h.edges(), phi);
                std::set<int> comps;
                for (const auto& [e, w] : phi.weights) {
                    int id = h.index_of(e);
                    comps.insert(id < 0 ? -1 : d.component_of[id]);
                }
                bool single = comps.size() <= 1 && !comps.count(-1);
                o.result["check"] = {{"valid", v.valid}, {"single_component", single}, {"weight", to_json(phi.weight())}};
                if (!v.valid) o.result["check"]["violation"] = v.violation;
                if (!v.valid || !single) {
                    o.code = exit_code(ErrorCode::InconsistentWitness);
                    o.summary = "fractional matching rejected";
                }
                return o;
            }
            inputs = {{"in", in}, {"mode", mode}};
            if (component) inputs["component"] = *component;
            if (mode == "mu") {
                inputs["s"] = s_param;
                inputs["beta"] = beta;
                auto m = mu_estimate(h, s_param, detail::rational_option("beta", beta));
                o.result["mu"] = to_json(m);
                o.certificates["matching"] = to_json(m.matching);
                return o;
            }
            if (mode == "exact") inputs["cap"] = match_cap;
            Json per = Json::array();
            std::optional<int> best;
            Rational best_w = -1;
            Json best_cert;
            for (int c = 0; c < static_cast<int>(d.count()); ++c) {
                if (component && *component != c) continue;
                auto host = component_graph(h.graph(), d, c).edges();
                Json row{{"component", c}, {"colour", colour_name(d.colour[c])}};
                Rational w;
                Json cert;
                if (mode == "exact") {
                    auto m = max_matching_exact(host, match_cap);
                    w = static_cast<long>(m.size);
                    row["size"] = m.size;
                    row["optimal"] = m.optimal;
                    row["states"] = m.states;
                    cert = to_json(m);
                } else {
                    auto phi = max_fractional_lp(host);
                    phi.component = c;
                    w = phi.weight();
                    row["weight"] = to_json(w);
                    cert = to_json(phi);
                }
                per.push_back(row);
                if (w > best_w) best_w = w, best = c, best_cert = cert;
            }
            if (component && !best) throw Error(ErrorCode::Usage, "no component " + std::to_string(*component));
            o.result["components"] = per;
            if (best) {
                o.result["best"] = {{"component", *best}, {"value", to_json(best_w)}};
                o.certificates["matching"] = best_cert;
            }
            return o;
        };
    });

    // blueprint build | check
    std::optional<std::string> bp_eps_text;
    std::string bp_file;
    std::optional<int> sample;
    std::optional<std::uint64_t> bp_seed;
    auto* blueprint = app.add_subcommand("blueprint", "epsilon-blueprints");
    blueprint->require_subcommand(1);
    auto* bp_build = blueprint->add_subcommand("build", "construct a blueprint and trim it");
    add_in(bp_build);
    bp_build->add_option("--eps", bp_eps_text, "blueprint eps (default max(1/20, (k-1)/N))");
    bp_build->callback([&] {
        command = "blueprint build";
        handler = [&] {
            auto h = load();
            Rational eps = bp_eps_text ? detail::rational_option("eps", *bp_eps_text) : default_blueprint_eps(h.n(), h.k());
            inputs = {{"in", in}, {"eps", to_json(eps)}};
            auto a = make_atlas(h);
            auto bp = build_blueprint(h, a, eps);
            auto chk = check_blueprint(h, a, bp);
            Outcome o;
            o.result = {{"graph", detail::graph_summary(h)},
                        {"edges", bp.size()},
                        {"omitted", bp.omitted.size()},
                        {"vertices", bp.vertices.size()},
                        {"min_degree", bp.min_degree()},
                        {"check", to_json(chk)}};
            try {
                auto t = trim_spanning_component(bp, eps);
                o.result["trim"] = {{"colour", colour_name(t.colour)}, {"vertices", t.graph.vertices.size()},
                                    {"edges", t.graph.size()}, {"min_degree", t.min_degree}};
            } catch (const Error& e) {
                o.result["trim"] = {{"error", e.what()}};
            }
            o.certificates["blueprint"] = to_json(bp);
            if (!chk.pass) o.code = exit_code(ErrorCode::ContractUnmet), o.summary = "built blueprint failed its own check";
            return o;
        };
    });
    auto* bp_check = blueprint->add_subcommand("check", "check BP1/BP2 and optionally sample edge goodness");
    add_in(bp_check);
    bp_check->add_option("--blueprint", bp_file, "blueprint JSON or a report holding one")->required();
    bp_check->add_option("--sample", sample, "number of host edges to test for goodness");
    bp_check->add_option("--seed", bp_seed, "random seed, required with --sample");
    bp_check->callback([&] {
        command = "blueprint check";
        handler = [&] {
            if (sample && !bp_seed) throw Error(ErrorCode::Usage, "--sample needs --seed");
            auto h = load();
            auto bp = blueprint_from_json(detail::unwrap(detail::load_json(bp_file), "blueprint"));
            inputs = {{"in", in}, {"blueprint", bp_file}};
            auto a = make_atlas(h);
            auto chk = check_blueprint(h, a, bp);
            Outcome o;
            o.result = {{"graph", detail::graph_summary(h)}, {"check", to_json(chk)}};
            if (sample) {
                inputs["sample"] = *sample;
                inputs["seed"] = *bp_seed;
                std::mt19937_64 rng(*bp_seed);
                Json rows = Json::array();
                int good = 0;
                for (int t = 0; t < *sample && h.size() > 0; ++t) {
                    const Edge& e = h.edge(static_cast<int>(rng() % h.size()));
                    auto g = good_flags(a, bp, e);
                    good += g.good();
                    rows.push_back({{"edge", to_json(e)}, {"G1", g.g1}, {"G2", g.g2}, {"G3", g.g3}});
                }
                o.result["sample"] = {{"good", good}, {"edges", rows}};
            }
            if (!chk.pass) o.code = exit_code(ErrorCode::ContractUnmet), o.summary = "blueprint rejected";
            return o;
        };
    });

    // blowup
    int r = 2;
    bool density = false;
    std::optional<std::string> blown_out;
    std::size_t blow_cap = kDefaultBlowUpCap;
    auto* blowup = app.add_subcommand("blowup", "r-blow-up of a coloured k-graph");
    add_in(blowup);
    blowup->add_option("--r", r, "class size")->required()->check(CLI::PositiveNumber);
    blowup->add_flag("--density", density, "check density transfer");
    blowup->add_option("--out", blown_out, "write the blown-up graph as tcg");
    blowup->add_option("--cap", blow_cap, "edge cap")->capture_default_str();
    blowup->callback([&] {
        command = "blowup";
        handler = [&] {
            auto h = load();
            inputs = {{"in", in}, {"r", r}, {"density", density}};
            if (blown_out) inputs["out"] = *blown_out;
            auto [b, m] = blow_up(h, r, blow_cap);
            auto d0 = monochromatic_components(h), d1 = monochromatic_components(b);
            Outcome o;
            o.result = {{"base", detail::graph_summary(h)},
                        {"blown", detail::graph_summary(b)},
                        {"components", {{"base", d0.count()}, {"blown", d1.count()}}}};
            if (density) {
                Rational eps = std::max(min_density_eps(h.graph()), blowup_density_eps(h.k(), h.n(), r));
                Json dj{{"base_eps", to_json(min_density_eps(h.graph()))},
                        {"finite_bound", to_json(blowup_density_eps(h.k(), h.n(), r))},
                        {"eps", to_json(eps)}};
                if (eps <= Rational(1, 2)) {
                    bool base = density_check(h.graph(), 1 - eps, eps).pass;
                    bool blown = density_check(b.graph(), 1 - 2 * eps, 2 * eps).pass;
                    dj["base_pass"] = base;
                    dj["blown_pass"] = blown;
                    if (base && !blown) o.code = exit_code(ErrorCode::ContractUnmet), o.summary = "density did not transfer";
                } else {
                    dj["vacuous"] = true;
                }
                o.result["density"] = dj;
            }
            if (blown_out) write_text(*blown_out, serialize_coloured_hypergraph(b));
            return o;
        };
    });

    // augment | driver
    DriverOptions aug_opts, drv_opts;
    auto* augment = app.add_subcommand("augment", "one augmentation step from the initial matching");
    add_in(augment);
    aug_opts.attach(augment);
    augment->callback([&] {
        command = "augment";
        handler = [&] {
            auto h = load();
            auto p = aug_opts.params();
            inputs = {{"in", in}, {"params", to_json(p)}};
            DriverReport rep;
            const auto& ctx = prepare_driver(h, p, rep);
            auto init = initial_matching(ctx, p);
            Outcome o;
            o.result = {{"N", rep.N}, {"n", rep.n}, {"R", rep.red}, {"initial", to_json(init)}};
            if (init.status == InitialStatus::Stuck) {
                o.code = exit_code(ErrorCode::Stuck), o.summary = "no initial matching";
                return o;
            }
            std::mt19937_64 rng(p.seed);
            auto step = augment_once(ctx, init.state, p, rng);
            o.result["step"] = to_json(step);
            o.certificates["matching"] = to_json(step.state.to_fractional(ctx));
            if (step.status == StepStatus::StepFailed)
                o.code = exit_code(ErrorCode::StepFailed), o.summary = "augmentation step failed: " + step.failed_claim;
            return o;
        };
    });
    auto* driver = app.add_subcommand("driver", "iterate augmentation towards weight n/4");
    add_in(driver);
    drv_opts.attach(driver);
    driver->callback([&] {
        command = "driver";
        handler = [&] {
            auto h = load();
            auto p = drv_opts.params();
            inputs = {{"in", in}, {"params", to_json(p)}};
            auto rep = run_driver(h, p);
            Outcome o;
            o.result = to_json(rep);
            o.certificates["matching"] = o.result["matching"];
            o.result.erase("matching");
            switch (rep.status) {
                case DriverStatus::Reached: break;
                case DriverStatus::StepFailed:
                    o.code = exit_code(ErrorCode::StepFailed), o.summary = "driver stopped on a failed step";
                    break;
                case DriverStatus::Stuck: o.code = exit_code(ErrorCode::Stuck), o.summary = "no initial matching"; break;
                case DriverStatus::IterationCap:
                    o.code = exit_code(ErrorCode::SearchCapExceeded), o.summary = "iteration cap reached";
                    break;
            }
            return o;
        };
    });

    // extremal split | parity | verify
    int ek = 4, en = 2, ei = 0;
    std::optional<int> len;
    bool verify = false, no_cross = false;
    std::optional<std::string> col_out, cert_file;
    std::string form = "split";
    int support_cap = kDefaultSupportCap;
    auto* extremal = app.add_subcommand("extremal", "lower-bound colourings and their certificates");
    extremal->require_subcommand(1);
    auto certify = [&](const ColouredKGraph& g, const ExtremalSpec& spec, Outcome& o) {
        const int l = len ? *len : spec.target_length();
        inputs["len"] = l;
        inputs["cross_check"] = !no_cross;
        auto cert = verify_no_mono_cycle(g, spec, l, !no_cross, support_cap);
        Json methods = Json::object();
        for (const auto& ev : cert.components) {
            auto& slot = methods[method_name(ev.method)];
            slot = slot.is_null() ? 1 : slot.get<int>() + 1;
        }
        o.result["verify"] = {{"length", l}, {"absent", cert.absent}, {"components", cert.components.size()},
                              {"methods", methods}, {"cross_checked", cert.cross_checked}};
        o.certificates["absence"] = to_json(cert);
        if (!cert.absent)
            o.code = exit_code(ErrorCode::ContractUnmet), o.summary = "monochromatic tight cycle of length " + std::to_string(l) + " found";
    };
    auto construct = [&](bool parity) {
        auto c = parity ? parity_coloring(ek, en, ei) : split_coloring(ek, en);
        inputs = {{"k", ek}, {"n", en}};
        if (parity) inputs["i"] = ei;
        Outcome o;
        o.result = {{"spec", to_json(c.spec)}, {"graph", detail::graph_summary(c.graph)}};
        if (col_out) {
            inputs["out"] = *col_out;
            write_text(*col_out, serialize_coloured_hypergraph(c.graph));
        }
        if (verify || len) certify(c.graph, c.spec, o);
        return o;
    };
    auto shape_options = [&](CLI::App* s, bool parity) {
        s->add_option("--k", ek, "uniformity")->required();
        s->add_option("--n", en, "cycle scale")->required();
        if (parity) s->add_option("--i", ei, "length offset, cycle length kn + i")->required();
    };
    auto verify_options = [&](CLI::App* s) {
        s->add_flag("--verify", verify, "certify absence of monochromatic tight cycles");
        s->add_option("--len", len, "cycle length (default kn + i)");
        s->add_flag("--no-cross-check", no_cross, "skip the independent exhaustive search");
        s->add_option("--support-cap", support_cap, "vertex cap for exhaustive search")->capture_default_str();
    };
    auto* ex_split = extremal->add_subcommand("split", "red meets X, |X| = n - 1");
    shape_options(ex_split, false);
    verify_options(ex_split);
    ex_split->add_option("--out", col_out, "write the colouring as tcg");
    ex_split->callback([&] {
        command = "extremal split";
        handler = [&] { return construct(false); };
    });
    auto* ex_parity = extremal->add_subcommand("parity", "red has an even number of vertices in X");
    shape_options(ex_parity, true);
    verify_options(ex_parity);
    ex_parity->add_option("--out", col_out, "write the colouring as tcg");
    ex_parity->callback([&] {
        command = "extremal parity";
        handler = [&] { return construct(true); };
    });
    auto* ex_verify = extremal->add_subcommand("verify", "certify or recheck a colouring read from --in");
    add_in(ex_verify);
    ex_verify->add_option("--form", form, "split | parity")->check(CLI::IsMember({"split", "parity"}))->capture_default_str();
    ex_verify->add_option("--n", en, "cycle scale")->required();
    ex_verify->add_option("--i", ei, "length offset (parity)")->capture_default_str();
    ex_verify->add_option("--len", len, "cycle length (default kn + i)");
    ex_verify->add_option("--cert", cert_file, "recheck this certificate instead of computing one");
    ex_verify->add_flag("--no-cross-check", no_cross, "skip the independent exhaustive search");
    ex_verify->add_option("--support-cap", support_cap, "vertex cap for exhaustive search")->capture_default_str();
    ex_verify->callback([&] {
        command = "extremal verify";
        handler = [&] {
            auto h = load();
            auto spec = form == "split" ? split_spec(h.k(), en) : parity_spec(h.k(), en, ei);
            if (spec.N != h.n())
                throw Error(ErrorCode::HypothesisViolated, "construction has " + std::to_string(spec.N) + " vertices, file has " +
                                                               std::to_string(h.n()));
            inputs = {{"in", in}, {"form", form}, {"n", en}};
            if (form == "parity") inputs["i"] = ei;
            Outcome o;
            o.result = {{"spec", to_json(spec)}, {"graph", detail::graph_summary(h)}};
            if (cert_file) {
                inputs["cert"] = *cert_file;
                auto cert = certificate_from_json(detail::unwrap(detail::load_json(*cert_file), "absence"));
                if (len && *len != cert.length) throw Error(ErrorCode::Usage, "--len disagrees with the certificate");
                bool ok = recheck_certificate(h, spec, cert);
                o.result["recheck"] = {{"length", cert.length}, {"absent", cert.absent}, {"consistent", ok}};
                if (!ok) o.code = exit_code(ErrorCode::InconsistentWitness), o.summary = "certificate does not match the colouring";
                return o;
            }
            certify(h, spec, o);
            return o;
        };
    });

    // ramsey
    int rk = 2, rn = 5;
    std::string target = "c3";
    auto* ramsey = app.add_subcommand("ramsey", "exhaustive 2-colouring search on K_N^(k)");
    ramsey->add_option("--k", rk, "uniformity")->required();
    ramsey->add_option("--target", target, "c<l> tight cycle or p<l> tight path")->required();
    ramsey->add_option("--N", rn, "vertices")->required();
    ramsey->callback([&] {
        command = "ramsey";
        handler = [&] {
            inputs = {{"k", rk}, {"target", target}, {"N", rn}};
            auto t = parse_target(target);
            auto res = ramsey_search_tiny(rk, t, rn);
            Outcome o;
            o.result = {{"target", t.str()},         {"verdict", verdict_name(res.verdict)}, {"method", res.method},
                        {"nodes", res.nodes},        {"canonical", res.canonical},           {"target_hits", res.target_hits}};
            if (res.colouring) o.certificates["colouring"] = serialize_coloured_hypergraph(*res.colouring);
            return o;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 1;
    }

    const auto start = std::chrono::steady_clock::now();
    Json report;
    report["command"] = command;
    try {
        Outcome o = handler();
        inputs["jobs"] = jobs;
        report["inputs"] = inputs;
        report["result"] = o.result;
        report["certificates"] = o.certificates;
        if (timing)
            report["timing"] = {{"wall_ms", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count()}};
        out << report.dump(2) << "\n";
        if (o.code != 0) err << "tcr " << command << ": " << o.summary << "\n";
        return o.code;
    } catch (const Error& e) {
        inputs["jobs"] = jobs;
        report["inputs"] = inputs;
        report["error"] = {{"code", code_name(e.code())}, {"message", e.what()}};
        out << report.dump(2) << "\n";
        err << "tcr " << command << ": " << e.what() << "\n";
        return exit_code(e.code());
    } catch (const std::exception& e) {
        err << "tcr " << command << ": " << e.what() << "\n";
        return 1;
    }
}

}  // namespace tcr::cli
