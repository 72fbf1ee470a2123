#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tcr/augmentation.hpp"
#include "tcr/blueprint.hpp"
#include "tcr/extremal.hpp"
#include "tcr/hypergraph.hpp"
#include "tcr/matching.hpp"

namespace tcr {

using Json = nlohmann::ordered_json;

// ---- tcg text format ------------------------------------------------------

namespace detail {

struct Token {
    std::string text;
    int column;  // 1-based
};

inline std::vector<Token> split_tokens(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size()) break;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return out;
}

inline int parse_int(const Token& t, int line) {
    if (t.text.empty() || t.text.size() > 9 ||
        !std::all_of(t.text.begin(), t.text.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw ParseError(line, t.column, "expected a non-negative integer, got '" + t.text + "'");
    return std::stoi(t.text);
}

inline int parse_key(const Token& t, const std::string& key, int line) {
    if (t.text.rfind(key + "=", 0) != 0) throw ParseError(line, t.column, "expected " + key + "=<int>");
    return parse_int({t.text.substr(key.size() + 1), t.column + static_cast<int>(key.size()) + 1}, line);
}

}  // namespace detail

inline ColouredKGraph parse_coloured_hypergraph(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line_no = 0, stage = 0, k = 0, n = 0;
    std::vector<std::pair<Colour, Edge>> es;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') throw ParseError(line_no, static_cast<int>(raw.size()), "CR line ending");
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        auto toks = detail::split_tokens(raw);
        if (toks.empty()) continue;
        if (stage == 0) {
            if (toks.size() != 2 || toks[0].text != "tcg" || toks[1].text != "1")
                throw ParseError(line_no, toks[0].column, "expected header 'tcg 1'");
            stage = 1;
            continue;
        }
        if (stage == 1) {
            if (toks.size() != 2) throw ParseError(line_no, toks[0].column, "expected 'k=<int> n=<int>'");
            k = detail::parse_key(toks[0], "k", line_no);
            n = detail::parse_key(toks[1], "n", line_no);
            if (k < 1 || k > kMaxArity) throw ParseError(line_no, toks[0].column, "k must lie in [1, " + std::to_string(kMaxArity) + "]");
            if (n < 0 || n > 255) throw ParseError(line_no, toks[1].column, "n must lie in [0, 255]");
            stage = 2;
            continue;
        }
        const auto& c = toks[0];
        if (c.text != "R" && c.text != "B") throw ParseError(line_no, c.column, "colour must be R or B");
        if (static_cast<int>(toks.size()) != k + 1)
            throw ParseError(line_no, toks.back().column, "expected " + std::to_string(k) + " vertices, got " +
                                                              std::to_string(toks.size() - 1));
        std::vector<int> vs;
        for (std::size_t j = 1; j < toks.size(); ++j) {
            int v = detail::parse_int(toks[j], line_no);
            if (v < 1 || v > n) throw ParseError(line_no, toks[j].column, "vertex " + toks[j].text + " outside [1, n]");
            if (!vs.empty() && v <= vs.back()) throw ParseError(line_no, toks[j].column, "vertices must strictly increase");
            vs.push_back(v);
        }
        es.push_back({c.text == "R" ? Colour::Red : Colour::Blue, Edge::from_range(vs.begin(), vs.end())});
    }
    if (stage == 0) throw ParseError(line_no + 1, 1, "missing header 'tcg 1'");
    if (stage == 1) throw ParseError(line_no + 1, 1, "missing 'k=<int> n=<int>' line");
    return build(k, n, es);
}

inline std::string serialize_coloured_hypergraph(const ColouredKGraph& h) {
    std::string out = "tcg 1\nk=" + std::to_string(h.k()) + " n=" + std::to_string(h.n()) + "\n";
    for (std::size_t i = 0; i < h.size(); ++i) {
        out += colour_letter(h.colour(static_cast<int>(i)));
        for (Vertex v : h.edge(static_cast<int>(i))) out += " " + std::to_string(v);
        out += "\n";
    }
    return out;
}

inline std::string read_text(const std::string& path) {
    if (path == "-") {
        std::ostringstream s;
        s << std::cin.rdbuf();
        return s.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::Usage, "cannot open " + path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::Usage, "cannot write " + path);
    f << text;
}

// ---- JSON -----------------------------------------------------------------

inline Json to_json(const Rational& x) { return to_string(x); }

inline Rational rational_from_json(const Json& j) {
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("bad rational in report: ") + e.what());
    }
}

inline Json to_json(const Edge& e) {
    Json a = Json::array();
    for (Vertex v : e) a.push_back(static_cast<int>(v));
    return a;
}

inline Edge edge_from_json(const Json& j) {
    std::vector<int> vs = j.get<std::vector<int>>();
    return Edge::from_range(vs.begin(), vs.end());
}

inline Json edges_json(const std::vector<Edge>& es) {
    Json a = Json::array();
    for (const auto& e : es) a.push_back(to_json(e));
    return a;
}

inline Json to_json(const FractionalMatching& phi) {
    Json j;
    j["weight"] = to_json(phi.weight());
    if (phi.component) j["component"] = *phi.component;
    j["host_edges"] = phi.host.size();
    Json w = Json::array();
    for (const auto& [e, x] : phi.weights) w.push_back({{"edge", to_json(e)}, {"weight", to_json(x)}});
    j["weights"] = w;
    return j;
}

/// Weights only; the host is supplied by the caller.
inline FractionalMatching fractional_from_json(const Json& j) {
    try {
        FractionalMatching phi;
        for (const auto& w : j.at("weights")) phi.set(edge_from_json(w.at("edge")), rational_from_json(w.at("weight")));
        if (j.contains("component")) phi.component = j.at("component").get<int>();
        return phi;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("malformed fractional matching: ") + e.what());
    }
}

inline Json to_json(const MuEstimate& m) {
    return {{"value", to_json(m.value)}, {"exact", m.exact}, {"method", m.method}, {"components", m.components}};
}

inline Json to_json(const DensityReport& d) {
    Json j;
    j["mu"] = to_json(d.mu);
    j["alpha"] = to_json(d.alpha);
    j["pass"] = d.pass;
    Json lv = Json::array();
    for (const auto& l : d.per_level)
        lv.push_back({{"i", l.i},
                      {"total", l.total},
                      {"threshold", to_json(l.threshold)},
                      {"at_least", l.at_least},
                      {"zero", l.zero},
                      {"violating", l.violating}});
    j["levels"] = lv;
    return j;
}

inline Json to_json(const Blueprint& bp) {
    Json j;
    j["k"] = bp.k;
    j["n"] = bp.n;
    j["eps"] = to_json(bp.eps);
    j["vertices"] = bp.vertices;
    Json es = Json::array();
    for (std::size_t i = 0; i < bp.size(); ++i)
        es.push_back({{"edge", to_json(bp.edges[i])}, {"colour", colour_name(bp.colours[i])}, {"component", bp.assign[i]}});
    j["edges"] = es;
    Json om = Json::array();
    for (const auto& o : bp.omitted) om.push_back({{"edge", to_json(o.e)}, {"best_degree", o.best_degree}});
    j["omitted"] = om;
    return j;
}

inline Colour colour_from_name(const std::string& s) {
    if (s == "red") return Colour::Red;
    if (s == "blue") return Colour::Blue;
    throw Error(ErrorCode::ParseError, "unknown colour '" + s + "'");
}

inline Blueprint blueprint_from_json(const Json& j) {
    try {
        Blueprint bp;
        bp.k = j.at("k").get<int>();
        bp.n = j.at("n").get<int>();
        bp.eps = rational_from_json(j.at("eps"));
        bp.vertices = j.at("vertices").get<std::vector<int>>();
        for (const auto& e : j.at("edges")) {
            bp.edges.push_back(edge_from_json(e.at("edge")));
            bp.colours.push_back(colour_from_name(e.at("colour").get<std::string>()));
            bp.assign.push_back(e.at("component").get<int>());
        }
        if (j.contains("omitted"))
            for (const auto& o : j.at("omitted")) bp.omitted.push_back({edge_from_json(o.at("edge")), o.at("best_degree").get<int>()});
        bp.reindex();
        return bp;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("malformed blueprint: ") + e.what());
    }
}

inline Json to_json(const BlueprintCheck& c) { return {{"pass", c.pass}, {"violations", c.violations}}; }

inline Json to_json(const SearchStats& s) { return {{"nodes", s.nodes}, {"pruned", s.pruned}, {"support", s.support}}; }

inline Json to_json(const TightCycleWitness& w) {
    Json j{{"ordering", w.ordering}, {"length", w.length}, {"cyclic", w.cyclic}};
    if (w.colour) j["colour"] = colour_name(*w.colour);
    return j;
}

inline Json to_json(const ExtremalSpec& s) {
    return {{"form", form_name(s.form)}, {"k", s.k}, {"n", s.n}, {"i", s.i}, {"d", s.d},
            {"N", s.N}, {"X_size", s.x_size}, {"Y_size", s.y_size}};
}

inline Json to_json(const AbsenceCertificate& c) {
    Json j;
    j["k"] = c.k;
    j["length"] = c.length;
    j["absent"] = c.absent;
    Json comps = Json::array();
    for (const auto& ev : c.components) {
        Json e{{"component", ev.component}, {"colour", colour_name(ev.colour)}, {"edges", ev.edges},
               {"vertices", ev.vertices}, {"method", method_name(ev.method)}};
        if (ev.r1) e["r1"] = *ev.r1, e["r2"] = c.k - *ev.r1;
        if (ev.max_matching) e["max_matching"] = *ev.max_matching;
        if (ev.search) e["search"] = to_json(*ev.search);
        e["detail"] = ev.detail;
        comps.push_back(e);
    }
    j["components"] = comps;
    if (c.witness) j["witness"] = to_json(*c.witness);
    j["cross_checked"] = c.cross_checked;
    Json cc = Json::array();
    for (const auto& s : c.cross_check) cc.push_back(to_json(s));
    j["cross_check"] = cc;
    return j;
}

inline AbsenceMethod method_from_name(const std::string& s) {
    for (auto m : {AbsenceMethod::MatchingBound, AbsenceMethod::Divisibility, AbsenceMethod::Counting,
                   AbsenceMethod::VertexCount, AbsenceMethod::Exhaustive})
        if (s == method_name(m)) return m;
    throw Error(ErrorCode::ParseError, "unknown method '" + s + "'");
}

inline AbsenceCertificate certificate_from_json(const Json& j) {
    try {
        AbsenceCertificate c;
        c.k = j.at("k").get<int>();
        c.length = j.at("length").get<int>();
        c.absent = j.at("absent").get<bool>();
        for (const auto& e : j.at("components")) {
            ComponentEvidence ev;
            ev.component = e.at("component").get<int>();
            ev.colour = colour_from_name(e.at("colour").get<std::string>());
            ev.edges = e.at("edges").get<std::size_t>();
            ev.vertices = e.at("vertices").get<int>();
            ev.method = method_from_name(e.at("method").get<std::string>());
            if (e.contains("r1")) ev.r1 = e.at("r1").get<int>();
            if (e.contains("max_matching")) ev.max_matching = e.at("max_matching").get<int>();
            ev.detail = e.value("detail", "");
            c.components.push_back(ev);
        }
        if (j.contains("witness")) {
            const auto& w = j.at("witness");
            TightCycleWitness tw;
            tw.ordering = w.at("ordering").get<std::vector<int>>();
            tw.length = w.at("length").get<int>();
            tw.cyclic = w.at("cyclic").get<bool>();
            if (w.contains("colour")) tw.colour = colour_from_name(w.at("colour").get<std::string>());
            c.witness = tw;
        }
        c.cross_checked = j.value("cross_checked", false);
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("malformed certificate: ") + e.what());
    }
}

inline Json to_json(const Gadget& g) {
    return {{"origin", g.origin}, {"each", to_json(g.each)}, {"edges", edges_json(g.edges)}};
}

inline Json to_json(const AugmentationState& s) {
    Json g = Json::array();
    for (const auto& x : s.gadgets) g.push_back(to_json(x));
    return {{"component", s.component}, {"weight", to_json(s.weight())}, {"matching", edges_json(s.matching)}, {"gadgets", g}};
}

inline Json to_json(const StateCheck& c) {
    Json j{{"valid", c.valid}, {"single_component", c.single_component}, {"good", c.good}, {"min_weight_ok", c.min_weight_ok}};
    if (!c.violation.empty()) j["violation"] = c.violation;
    return j;
}

inline Json to_json(const StepReport& r) {
    Json j{{"status", step_status_name(r.status)}, {"hypothesis", hypothesis_name(r.hypothesis)},
           {"before", to_json(r.before)},          {"after", to_json(r.after)},
           {"stage", r.stage},                     {"trace", r.trace}};
    if (!r.failed_claim.empty()) j["failed_claim"] = r.failed_claim;
    j["state"] = to_json(r.state);
    return j;
}

inline Json to_json(const InitialResult& r) {
    return {{"status", initial_status_name(r.status)}, {"route", r.route}, {"claim_bound", r.claim_bound},
            {"size", r.state.matching.size()},         {"state", to_json(r.state)}, {"trace", r.trace}};
}

inline Json to_json(const DriverParams& p) {
    Json j{{"eps", to_json(p.eps)},     {"gamma", to_json(p.gamma)},        {"delta", to_json(p.delta)},
           {"eta", to_json(p.eta)},     {"c", to_json(p.c)},                {"seed", p.seed},
           {"max_iterations", p.max_iterations}, {"sample_retries", p.sample_retries}};
    if (p.n) j["n"] = *p.n;
    if (p.bp_eps) j["bp_eps"] = to_json(*p.bp_eps);
    return j;
}

inline Json to_json(const DriverReport& r) {
    Json j;
    j["status"] = driver_status_name(r.status);
    j["N"] = r.N;
    j["n"] = r.n;
    j["target"] = to_json(Rational(r.n, 4));
    j["blueprint"] = {{"eps", to_json(r.bp_eps)},
                      {"edges", r.blueprint_edges},
                      {"omitted", r.blueprint_omitted},
                      {"trimmed_vertices", r.trimmed_vertices},
                      {"spanning_colour", colour_name(r.spanning_colour)},
                      {"R", r.red}};
    j["initial"] = to_json(r.initial);
    Json steps = Json::array();
    for (const auto& s : r.steps) {
        Json x = to_json(s.report);
        x["iteration"] = s.iteration;
        steps.push_back(x);
    }
    j["steps"] = steps;
    j["weight"] = to_json(r.weight);
    j["colour"] = colour_name(r.colour);
    j["component"] = r.best.component;
    j["reached"] = r.reached;
    j["check"] = to_json(r.check);
    j["matching"] = to_json(r.matching());
    j["trace"] = r.trace;
    return j;
}

inline Json to_json(const MatchingCertificate& m) {
    return {{"size", m.size}, {"optimal", m.optimal}, {"states", m.states}, {"upper_bound", m.upper_bound}, {"edges", edges_json(m.edges)}};
}

}  // namespace tcr
