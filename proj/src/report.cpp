#include "sft/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sft/errors.hpp"

namespace sft {

namespace {

Json header(const std::string& command, const ShiftSpec& spec) {
    Json j;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    j["command"] = command;
    j["spec"] = spec_to_json(spec);
    return j;
}

std::vector<std::string> big_strings(const std::vector<mpz_class>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.get_str());
    return out;
}

std::vector<std::string> float_strings(const std::vector<double>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (double x : v) out.push_back(format_double(x));
    return out;
}

std::vector<std::string> exact_strings(const std::vector<mpq_class>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(to_exact_string(x));
    return out;
}

std::vector<std::string> rendered(const ShiftSpec& spec, const std::vector<Word>& words) {
    std::vector<std::string> out;
    for (const auto& w : words) out.push_back(spec.render(w));
    return out;
}

Json certificate_json(const RootCertificate& c) {
    Json j;
    j["lo"] = to_exact_string(c.lo);
    j["hi"] = to_exact_string(c.hi);
    j["exact"] = c.exact_integer ? Json(c.exact_integer->get_str()) : Json(nullptr);
    j["polynomial"] = poly_json(c.squarefree);
    return j;
}

Json vector_json(const std::vector<double>& v, const std::optional<std::vector<mpq_class>>& exact) {
    Json j;
    j["float"] = float_strings(v);
    j["exact"] = exact ? Json(exact_strings(*exact)) : Json(nullptr);
    return j;
}

Json measure_json(const MeasureReport& m) {
    return {{"route", to_string(m.route)},
            {"value", format_double(m.value)},
            {"exact", m.exact ? Json(to_exact_string(*m.exact)) : Json(nullptr)}};
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

std::string str(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_null()) return "-";
    return j.dump();
}

void table(std::ostringstream& out, const std::vector<std::string>& heads,
           const std::vector<std::vector<std::string>>& cols) {
    std::vector<std::size_t> width(heads.size());
    std::size_t rows = 0;
    for (std::size_t c = 0; c < heads.size(); ++c) {
        width[c] = heads[c].size();
        for (const auto& s : cols[c]) width[c] = std::max(width[c], s.size());
        rows = std::max(rows, cols[c].size());
    }
    for (std::size_t c = 0; c < heads.size(); ++c) out << (c ? "  " : "") << pad(heads[c], width[c]);
    out << "\n";
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < heads.size(); ++c)
            out << (c ? "  " : "") << pad(r < cols[c].size() ? cols[c][r] : "", width[c]);
        out << "\n";
    }
}

std::vector<std::string> column(const Json& arr) {
    std::vector<std::string> out;
    for (const auto& x : arr) out.push_back(str(x));
    return out;
}

void matrix_lines(std::ostringstream& out, const Json& adj) {
    const auto labels = column(adj["labels"]);
    std::vector<std::string> heads{""};
    std::vector<std::vector<std::string>> cols{labels};
    for (std::size_t c = 0; c < labels.size(); ++c) {
        heads.push_back(labels[c]);
        std::vector<std::string> col;
        for (const auto& row : adj["entries"]) col.push_back(str(row[c]));
        cols.push_back(col);
    }
    table(out, heads, cols);
}

}  // namespace

ShiftSpec spec_from_json(const Json& j) {
    if (!j.is_object()) throw SpecError({"spec must be a JSON object"});
    std::vector<std::string> alphabet;
    std::vector<std::string> forbidden;
    std::vector<std::pair<std::string, std::uint64_t>> repeated;
    try {
        if (!j.contains("alphabet")) throw SpecError({"missing \"alphabet\""});
        const auto& a = j.at("alphabet");
        if (a.is_string()) {
            for (char c : a.get<std::string>()) alphabet.emplace_back(1, c);
        } else {
            alphabet = a.get<std::vector<std::string>>();
        }
        if (j.contains("forbidden")) forbidden = j.at("forbidden").get<std::vector<std::string>>();
        if (j.contains("repeated")) {
            for (const auto& r : j.at("repeated")) {
                const auto& m = r.at("multiplicity");
                if (!m.is_number_integer() || m.get<long long>() < 0)
                    throw SpecError({"multiplicity must be a non-negative integer"});
                repeated.emplace_back(r.at("word").get<std::string>(), m.get<std::uint64_t>());
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw SpecError({std::string("malformed spec: ") + e.what()});
    }
    try {
        return make_spec(std::move(alphabet), forbidden, repeated);
    } catch (const SpecError&) {
        throw;
    } catch (const DomainError& e) {
        throw SpecError({e.what()});
    }
}

Json spec_to_json(const ShiftSpec& spec) {
    Json j;
    j["alphabet"] = spec.alphabet.tokens();
    j["forbidden"] = rendered(spec, spec.forbidden);
    Json reps = Json::array();
    for (const auto& r : spec.repeated)
        reps.push_back({{"word", spec.render(r.word)}, {"multiplicity", r.multiplicity}});
    j["repeated"] = reps;
    return j;
}

namespace {

Json parse_stream(std::istream& in, const std::string& origin) {
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError(origin + ": not valid JSON (" + e.what() + ")");
    }
}

Json parse_path(const std::string& path) {
    if (path == "-") return parse_stream(std::cin, "<stdin>");
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return parse_stream(in, path);
}

std::vector<mpz_class> counts_from_json(const Json& j) {
    std::vector<mpz_class> out;
    for (const auto& x : j) {
        if (x.is_number_unsigned() || x.is_number_integer())
            out.emplace_back(std::to_string(x.get<long long>()));
        else
            out.emplace_back(x.get<std::string>());
    }
    return out;
}

}  // namespace

ShiftSpec read_spec(std::istream& in, const std::string& origin) {
    return spec_from_json(parse_stream(in, origin));
}

ShiftSpec load_spec(const std::string& path) { return spec_from_json(parse_path(path)); }

SpecDocument spec_document_from_json(const Json& j) {
    SpecDocument doc;
    doc.spec = spec_from_json(j);
    try {
        doc.name = j.value("name", std::string());
        if (j.contains("expected")) {
            const auto& e = j.at("expected");
            if (e.contains("f")) doc.expected.f = counts_from_json(e.at("f"));
            if (e.contains("g"))
                for (const auto& [w, v] : e.at("g").items()) doc.expected.g[w] = counts_from_json(v);
            if (e.contains("fa"))
                for (const auto& [w, v] : e.at("fa").items()) doc.expected.fa[w] = counts_from_json(v);
        }
    } catch (const std::exception& e) {
        throw SpecError({std::string("malformed expected block: ") + e.what()});
    }
    return doc;
}

SpecDocument load_spec_document(const std::string& path) { return spec_document_from_json(parse_path(path)); }

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

Json poly_json(const Poly& p) {
    return {{"coefficients", p.to_strings()}, {"text", p.to_string()}};
}

Json ratfun_json(const RatFun& f) {
    return {{"num", f.num().to_strings()}, {"den", f.den().to_strings()}, {"text", f.to_string()}};
}

Json ratmat_json(const RatMat& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).to_string());
        rows.push_back(row);
    }
    return {{"rows", m.row_labels}, {"cols", m.col_labels}, {"entries", rows}};
}

Json adjacency_json(const ShiftSpec& spec, const AdjMatrix& A) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < A.size(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < A.size(); ++k) row.push_back(A.at(i, k));
        rows.push_back(row);
    }
    return {{"labels", rendered(spec, A.labels)}, {"entries", rows}};
}

Json enumerate_report(const ShiftSpec& spec, std::size_t max_n, std::uint64_t budget) {
    auto j = header("enumerate", spec);
    const auto o = oracle_counts(spec, max_n, budget);
    j["max_n"] = max_n;
    j["f"] = big_strings(o.f);
    Json g = Json::object();
    for (std::size_t k = 0; k < spec.repeated.size(); ++k) g[spec.render(spec.repeated[k].word)] = big_strings(o.g[k]);
    j["g"] = g;
    Json fa = Json::object();
    for (std::size_t k = 0; k < spec.forbidden.size(); ++k) fa[spec.render(spec.forbidden[k])] = big_strings(o.fa[k]);
    j["fa"] = fa;
    // Plain word counts |Lambda_n|, without multiplicity.
    std::vector<mpz_class> words;
    for (std::size_t n = 0; n <= max_n; ++n) words.push_back(enumerate_slice(n, spec, budget).entries.size());
    j["language_size"] = big_strings(words);
    return j;
}

Json genfun_report(const ShiftSpec& spec, std::size_t series_n) {
    auto j = header("genfun", spec);
    const auto sol = solve_F(spec);
    const auto sys = build_system(spec);
    j["mode"] = sol.mode == SystemMode::reduced ? "reduced" : "non_reduced";
    j["unknowns"] = sys.unknowns;
    j["system"] = ratmat_json(sys.matrix);
    j["F"] = ratfun_json(sol.F);
    Json g = Json::array();
    for (std::size_t k = 0; k < sol.G.size(); ++k)
        g.push_back({{"word", spec.render(spec.repeated[k].word)}, {"G", ratfun_json(sol.G[k])}});
    j["G"] = g;
    Json fa = Json::array();
    for (std::size_t k = 0; k < sol.Fa.size(); ++k)
        fa.push_back({{"word", spec.render(spec.forbidden[k])}, {"Fa", ratfun_json(sol.Fa[k])}});
    j["Fa"] = fa;
    j["R_of_z"] = ratfun_json(R_of_z(spec, sol));
    if (sol.mode == SystemMode::reduced) {
        Json rs = Json::array(), ss = Json::array();
        for (const auto& r : sol.R_sums) rs.push_back(ratfun_json(r));
        for (const auto& s : sol.S_sums) ss.push_back(ratfun_json(s));
        j["P"] = ratmat_json(build_P(spec));
        j["Q"] = ratmat_json(build_Q(spec));
        j["R_sums"] = rs;
        j["S_sums"] = ss;
    }
    j["series"] = exact_strings(series_coeffs(sol.F, series_n));
    return j;
}

Json perron_report(const ShiftSpec& spec) {
    auto j = header("perron", spec);
    const auto r = spectral_report(spec);
    j["A"] = adjacency_json(spec, r.A);
    j["theta"] = format_double(r.root.theta);
    j["certificate"] = certificate_json(r.root.certificate);
    j["route"] = r.root.route;
    j["theta_power"] = format_double(r.root.theta_power);
    j["route_agreement"] = format_double(r.root.route_agreement);
    j["entropy"] = format_double(r.entropy);
    j["entropy_estimate"] = {{"n", r.estimate_n}, {"value", format_double(r.entropy_estimate)}};
    j["labels"] = rendered(spec, r.vectors.labels);
    j["U"] = vector_json(r.vectors.U, r.vectors.U_exact);
    j["V"] = vector_json(r.vectors.V, r.vectors.V_exact);
    j["U_normalized"] = float_strings(r.vectors.U_normalized);
    j["V_normalized"] = float_strings(r.vectors.V_normalized);
    j["residuals"] = {{"right", format_double(r.residual_right)}, {"left", format_double(r.residual_left)}};
    Json norm;
    norm["dot"] = format_double(r.norm.dot);
    norm["formula"] = format_double(r.norm.formula);
    norm["formula_exact"] = r.norm.formula_exact ? Json(to_exact_string(*r.norm.formula_exact)) : Json(nullptr);
    norm["agree"] = r.norm.agree;
    norm["property_p"] = r.norm.property_p ? "witnessed" : "unknown";
    if (r.witness)
        norm["witness"] = {{"X", spec.render(r.witness->X)}, {"Y", spec.render(r.witness->Y)},
                           {"Z", spec.render(r.witness->Z)}, {"W", spec.render(r.witness->W)}};
    j["normalization"] = norm;
    j["R_of_z"] = ratfun_json(r.R);

    const auto At = build_tilde_adjacency(spec);
    Json tilde;
    tilde["A"] = adjacency_json(spec, At);
    if (is_irreducible(At)) {
        const auto rt = perron_root(At);
        tilde["theta"] = format_double(rt.theta);
        tilde["certificate"] = certificate_json(rt.certificate);
    } else {
        tilde["theta"] = nullptr;
    }
    j["tilde"] = tilde;
    return j;
}

Json measure_report(const ShiftSpec& spec, const std::string& cylinder,
                    const std::vector<MeasureRoute>& routes) {
    auto j = header("measure", spec);
    const auto d = parry_data(spec);
    const auto c = parse_cylinder(spec, d.A, cylinder);
    j["cylinder"] = render_cylinder(spec, d.A, c);
    j["kind"] = c.branches.empty() && c.vertices.size() > 1 ? "vertex" : "edge";
    j["theta"] = format_double(d.root.theta);
    j["theta_exact"] = d.root.certificate.exact_integer ? Json(d.root.certificate.exact_integer->get_str())
                                                        : Json(nullptr);
    j["labels"] = rendered(spec, d.A.labels);
    Json P = Json::array();
    for (std::size_t i = 0; i < d.P.size(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < d.P.size(); ++k)
            row.push_back(d.P.exact ? to_exact_string((*d.P.exact)[i * d.P.size() + k]) : format_double(d.P.at(i, k)));
        P.push_back(row);
    }
    j["shannon_parry"] = P;
    j["stationary"] = d.P.stationary_exact ? exact_strings(*d.P.stationary_exact) : float_strings(d.P.stationary);
    j["normalization_holds"] = d.norm.agree;
    j["property_p"] = d.norm.property_p ? "witnessed" : "unknown";

    const auto use = routes.empty()
                         ? std::vector<MeasureRoute>{MeasureRoute::parry, MeasureRoute::combinatorial,
                                                     MeasureRoute::markov}
                         : routes;
    Json out = Json::array();
    double lo = INFINITY, hi = -INFINITY;
    for (auto r : use) {
        const auto m = cylinder_measure(d, c, r);
        lo = std::min(lo, m.value);
        hi = std::max(hi, m.value);
        out.push_back(measure_json(m));
    }
    j["measures"] = out;
    j["route_spread"] = format_double(hi - lo);
    return j;
}

Json escape_report(const ShiftSpec& spec, const std::string& word, std::size_t max_n,
                   std::uint64_t budget) {
    auto j = header("escape", spec);
    const auto A = build_adjacency(spec);
    const auto W = parse_cylinder(spec, A, word);
    const auto r = escape_rate(spec, W, max_n, budget);
    j["hole"] = render_cylinder(spec, A, W);
    j["max_n"] = max_n;
    j["h"] = big_strings(r.h);
    j["log_lambda"] = format_double(r.log_lambda);
    j["theta"] = format_double(r.theta);
    j["rho"] = format_double(r.rho);
    j["w"] = spec.render(r.w);
    j["w_multiplicity"] = r.w_multiplicity.get_str();
    j["tau"] = r.tau ? Json(big_strings(*r.tau)) : Json(nullptr);
    j["log_theta_w"] = r.log_theta_w ? Json(format_double(*r.log_theta_w)) : Json(nullptr);
    j["tau_consistent"] = r.tau_consistent ? Json(*r.tau_consistent) : Json(nullptr);
    return j;
}

Json verify_report(const ShiftSpec& spec, const VerifyResult& result, const VerifyOptions& opt) {
    auto j = header("verify", spec);
    j["max_n"] = opt.max_n;
    j["expected_counts"] = !opt.expected.empty();
    Json checks = Json::array();
    for (const auto& c : result.checks)
        checks.push_back({{"name", c.name},
                          {"status", c.skipped ? "skipped" : c.passed ? "pass" : "fail"},
                          {"detail", c.detail}});
    j["checks"] = checks;
    j["passed"] = result.passed();
    return j;
}

std::string render_table(const Json& r) {
    std::ostringstream out;
    const auto cmd = r.value("command", std::string());
    out << kToolName << " " << kToolVersion << "  " << cmd << "\n";
    if (cmd == "enumerate") {
        std::vector<std::string> heads{"n", "f(n)", "|words|"};
        std::vector<std::vector<std::string>> cols(3);
        for (std::size_t n = 0; n < r["f"].size(); ++n) {
            cols[0].push_back(std::to_string(n));
            cols[1].push_back(str(r["f"][n]));
            cols[2].push_back(str(r["language_size"][n]));
        }
        for (const auto& [w, v] : r["g"].items()) {
            heads.push_back("g[" + w + "]");
            cols.push_back(column(v));
        }
        for (const auto& [w, v] : r["fa"].items()) {
            heads.push_back("fa[" + w + "]");
            cols.push_back(column(v));
        }
        table(out, heads, cols);
    } else if (cmd == "genfun") {
        out << "mode  " << str(r["mode"]) << "\n";
        out << "F     " << str(r["F"]["text"]) << "\n";
        for (const auto& g : r["G"]) out << "G[" << str(g["word"]) << "]  " << str(g["G"]["text"]) << "\n";
        for (const auto& f : r["Fa"]) out << "Fa[" << str(f["word"]) << "]  " << str(f["Fa"]["text"]) << "\n";
        out << "R(z)  " << str(r["R_of_z"]["text"]) << "\n";
        out << "series";
        for (const auto& s : r["series"]) out << " " << str(s);
        out << "\n";
    } else if (cmd == "perron") {
        matrix_lines(out, r["A"]);
        out << "theta    " << str(r["theta"]) << "  in [" << str(r["certificate"]["lo"]) << ", "
            << str(r["certificate"]["hi"]) << "]\n";
        out << "entropy  " << str(r["entropy"]) << "\n";
        table(out, {"label", "U", "V"},
              {column(r["labels"]), column(r["U"]["exact"].is_null() ? r["U"]["float"] : r["U"]["exact"]),
               column(r["V"]["exact"].is_null() ? r["V"]["float"] : r["V"]["exact"])});
        out << "U.V      " << str(r["normalization"]["dot"]) << "  formula "
            << str(r["normalization"]["formula"]) << "  property (P) " << str(r["normalization"]["property_p"])
            << "\n";
        out << "theta~   " << str(r["tilde"]["theta"]) << "\n";
    } else if (cmd == "measure") {
        out << "cylinder " << str(r["cylinder"]) << "\n";
        std::vector<std::vector<std::string>> cols(3);
        for (const auto& m : r["measures"]) {
            cols[0].push_back(str(m["route"]));
            cols[1].push_back(str(m["value"]));
            cols[2].push_back(str(m["exact"]));
        }
        table(out, {"route", "value", "exact"}, cols);
    } else if (cmd == "escape") {
        out << "hole " << str(r["hole"]) << "  w " << str(r["w"]) << "  m(w) " << str(r["w_multiplicity"])
            << "\n";
        std::vector<std::vector<std::string>> cols(3);
        for (std::size_t n = 0; n < r["h"].size(); ++n) {
            cols[0].push_back(std::to_string(n));
            cols[1].push_back(str(r["h"][n]));
            cols[2].push_back(r["tau"].is_null() || n >= r["tau"].size() ? "-" : str(r["tau"][n]));
        }
        table(out, {"n", "h_W(n)", "tau_w(n)"}, cols);
        out << "log lambda_W " << str(r["log_lambda"]) << "  log theta_w " << str(r["log_theta_w"])
            << "  rho " << str(r["rho"]) << "\n";
    } else if (cmd == "verify") {
        std::vector<std::vector<std::string>> cols(3);
        for (const auto& c : r["checks"]) {
            cols[0].push_back(str(c["name"]));
            cols[1].push_back(str(c["status"]));
            cols[2].push_back(str(c["detail"]));
        }
        table(out, {"check", "status", "detail"}, cols);
        out << (r["passed"].get<bool>() ? "all checks passed" : "verification FAILED") << "\n";
    } else {
        out << r.dump(2) << "\n";
    }
    return out.str();
}

}  // namespace sft
