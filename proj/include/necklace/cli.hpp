#pragma once

#include "necklace/algebra.hpp"
#include "necklace/deformation.hpp"
#include "necklace/dsl.hpp"
#include "necklace/io.hpp"
#include "necklace/quiver.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace necklace::cli {

enum class ExitCode : int { pass = 0, check_failed = 1, input_error = 2 };

// Every command reads its inputs as text (file contents); file handling is
// the caller's business.
struct CommandRequest {
    std::string command;
    std::vector<std::string> inputs;
    std::string variable;          // derive
    std::string selector = "gcan"; // cohomology
    std::vector<int> n = {1};      // cohomology
    std::optional<int> w_min;      // cohomology
    int w_max = 6;                 // cohomology
    unsigned threads = default_thread_count();
};

struct CommandOutcome {
    int exit_code = 0;
    json report;
};

enum class Format { json, text };

inline const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names{"check-master", "derive",  "bracket", "canonical",
                                                "cohomology",   "algebra", "classify"};
    return names;
}

namespace detail {

// Thrown inside command handlers for malformed or invalid input (exit 2).
struct InputError {
    json entry;
};

inline json failure(const std::string& kind, const std::string& message)
{
    return {{"kind", kind}, {"message", message}};
}

inline const std::string& input(const CommandRequest& req, std::size_t i)
{
    if (req.inputs.size() <= i)
        throw InputError{failure("missing_input", "command '" + req.command + "' needs " + std::to_string(i + 1) +
                                                      " input(s)")};
    return req.inputs[i];
}

inline bool looks_like_json(const std::string& text)
{
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n')
            continue;
        return c == '{';
    }
    return false;
}

inline PotentialDoc potential(const std::string& text)
{
    auto r = parse_potential(text);
    if (!r.ok()) {
        const auto& d = r.diagnostics.front();
        json e = failure("parse_error", d.message);
        e["code"] = d.code;
        e["line"] = d.line;
        e["col"] = d.col;
        throw InputError{e};
    }
    return std::move(*r.doc);
}

inline json parse_json(const std::string& text)
{
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw InputError{failure("parse_error", "input is not valid JSON")};
    return j;
}

inline SymmetricQuiver quiver(const std::string& text)
{
    try {
        return validate_quiver(raw_quiver_from_json(parse_json(text)));
    } catch (const QuiverError& e) {
        throw InputError{failure(e.code(), e.what())};
    }
}

// Either a quiver JSON (its canonical potential) or a potential in the DSL.
inline CyclicSeries potential_or_quiver(const std::string& text)
{
    if (looks_like_json(text)) {
        auto q = quiver(text);
        return canonical_potential(q);
    }
    return potential(text).series;
}

inline json run_check_master(const CommandRequest& req, json& failures)
{
    auto doc = potential(input(req, 0));
    auto residual = master_residual(doc.series);
    if (!residual.is_zero())
        failures.push_back(failure("master_equation", "{W,W} = " + residual.to_string()));
    return {{"residual_terms", residual.size()}, {"residual", residual.to_string()}};
}

inline json run_derive(const CommandRequest& req, json& failures)
{
    (void)failures;
    auto doc = potential(input(req, 0));
    auto z = doc.alphabet->find(req.variable);
    if (!z)
        throw InputError{failure("unknown_variable", "variable '" + req.variable + "' is not declared")};
    auto d = cyclic_derivative(doc.series, *z);
    return {{"variable", req.variable}, {"result", d.to_string()}, {"terms", d.size()}};
}

inline json run_bracket(const CommandRequest& req, json& failures)
{
    (void)failures;
    auto f = potential(input(req, 0));
    auto g = potential(input(req, 1));
    if (!same_alphabet(f.alphabet, g.alphabet))
        throw InputError{failure("alphabet_mismatch", "the two inputs declare different alphabets")};
    auto b = necklace_bracket(f.series, g.series);
    return {{"result", b.to_string()}, {"terms", b.size()}};
}

inline json run_canonical(const CommandRequest& req, json& failures)
{
    (void)failures;
    auto q = quiver(input(req, 0));
    auto W = canonical_potential(q);
    return {{"potential", print_potential(W)},
            {"series", W.to_string()},
            {"residual_terms", master_residual(W).size()}};
}

inline json run_cohomology(const CommandRequest& req, json& failures)
{
    auto sel = parse_selector(req.selector);
    if (!sel)
        throw InputError{failure("bad_selector", "selector must be one of gcan, g, ghat")};
    if (req.n.empty())
        throw InputError{failure("bad_range", "at least one --n value is required")};
    int w_min = 2;
    if (req.w_min) {
        w_min = *req.w_min;
    } else if (*sel != Selector::g_can) {
        w_min = 1 - *std::max_element(req.n.begin(), req.n.end());
    }
    if (req.w_max < w_min || req.w_max - w_min > 64)
        throw InputError{failure("bad_range", "weight range is empty or too large")};
    DeformationComplex complex(potential_or_quiver(input(req, 0)));
    auto report = complex.cohomology_scan(*sel, req.n, w_min, req.w_max, req.threads);
    for (const auto& b : report.blocks)
        if (*sel == Selector::g_can && b.n >= 1 && b.dim_H != 0)
            failures.push_back(failure("nonvanishing_cohomology", "dim H^" + std::to_string(b.n) + "_" +
                                                                      std::to_string(b.w) + "(gcan) = " +
                                                                      std::to_string(b.dim_H)));
    return to_json(report);
}

inline json run_algebra(const CommandRequest& req, json& failures)
{
    auto W = potential_or_quiver(input(req, 0));
    auto table = extract_algebra(W);
    auto ua = check_unit_assoc(table);
    auto cy = check_cy_pairing(table);
    for (const auto& f : ua.failures)
        failures.push_back(failure("unit_assoc", f));
    for (const auto& f : cy.failures)
        failures.push_back(failure("cy_pairing", f));
    json j = to_json(table);
    j["unit_assoc"] = to_json(ua);
    j["cy_pairing"] = to_json(cy);
    return j;
}

inline json run_classify(const CommandRequest& req, json& failures)
{
    json j = parse_json(input(req, 0));
    try {
        if (j.is_object() && j.contains("ext1_dim")) {
            auto e = ext_data_from_json(j);
            auto q = phi_from_ext(e);
            return {{"quiver", to_json(q)}, {"ext1_dim", ext_of(q).ext1_dim}};
        }
        auto raw = raw_quiver_from_json(j);
        auto q = validate_quiver(raw);
        return {{"quiver", to_json(q)}, {"ext1_dim", ext_of(q).ext1_dim}};
    } catch (const QuiverError& e) {
        if (e.code() == "bad_json")
            throw InputError{failure(e.code(), e.what())};
        failures.push_back(failure(e.code(), e.what()));
        return json::object();
    }
}

} // namespace detail

// Exit 0: every check passed. Exit 1: a mathematical check failed (the
// report lists it under "failures"). Exit 2: the input could not be parsed or
// validated.
inline CommandOutcome run_command(const CommandRequest& req)
{
    CommandOutcome out;
    json failures = json::array();
    json body = json::object();
    bool input_error = false;
    try {
        if (req.command == "check-master")
            body = detail::run_check_master(req, failures);
        else if (req.command == "derive")
            body = detail::run_derive(req, failures);
        else if (req.command == "bracket")
            body = detail::run_bracket(req, failures);
        else if (req.command == "canonical")
            body = detail::run_canonical(req, failures);
        else if (req.command == "cohomology")
            body = detail::run_cohomology(req, failures);
        else if (req.command == "algebra")
            body = detail::run_algebra(req, failures);
        else if (req.command == "classify")
            body = detail::run_classify(req, failures);
        else
            throw detail::InputError{detail::failure("unknown_command", "unknown command '" + req.command + "'")};
    } catch (const detail::InputError& e) {
        failures.push_back(e.entry);
        input_error = true;
    } catch (const AlphabetError& e) {
        failures.push_back(detail::failure(e.code(), e.what()));
        input_error = true;
    } catch (const PathError& e) {
        failures.push_back(detail::failure(e.code(), e.what()));
        input_error = true;
    } catch (const Error& e) {
        // precondition, subcomplex, and quiver failures discovered while computing
        failures.push_back(detail::failure(e.code(), e.what()));
    }
    if (!body.is_object())
        body = json::object();
    body["command"] = req.command;
    body["failures"] = failures;
    out.report = std::move(body);
    out.exit_code = input_error ? static_cast<int>(ExitCode::input_error)
                    : failures.empty() ? static_cast<int>(ExitCode::pass)
                                       : static_cast<int>(ExitCode::check_failed);
    return out;
}

namespace detail {
inline std::string render_text(const json& r)
{
    std::ostringstream out;
    const std::string cmd = r.value("command", "");
    for (const auto& f : r.at("failures"))
        out << "FAIL " << f.value("kind", "") << ": " << f.value("message", "") << "\n";
    if (!r.at("failures").empty() && !r.contains("residual") && !r.contains("blocks") && !r.contains("unit_assoc"))
        return out.str();
    if (cmd == "check-master") {
        if (r.at("residual_terms").get<std::size_t>() == 0)
            out << "OK: {W,W} = 0\n";
        else
            out << "{W,W} = " << r.at("residual").get<std::string>() << "\n";
    } else if (cmd == "derive") {
        out << "d/d" << r.at("variable").get<std::string>() << " = " << r.at("result").get<std::string>() << "\n";
    } else if (cmd == "bracket") {
        out << "{f,g} = " << r.at("result").get<std::string>() << "\n";
    } else if (cmd == "canonical") {
        out << r.at("potential").get<std::string>();
    } else if (cmd == "cohomology") {
        out << "selector " << r.at("selector").get<std::string>() << "\n";
        for (const auto& b : r.at("blocks"))
            out << "n=" << b.at("n") << " w=" << b.at("w") << " dim_domain=" << b.at("dim_domain")
                << " dim_ker=" << b.at("dim_ker") << " rank_in=" << b.at("rank_in") << " dim_H=" << b.at("dim_H")
                << "\n";
    } else if (cmd == "algebra") {
        out << "unit/associativity: " << (r.at("unit_assoc").at("pass").get<bool>() ? "pass" : "FAIL") << "\n";
        out << "pairing: " << (r.at("cy_pairing").at("pass").get<bool>() ? "pass" : "FAIL") << " (determinant "
            << r.at("cy_pairing").at("facts").value("determinant", "?") << ")\n";
    } else if (cmd == "classify") {
        out << "OK: symmetric quiver, Ext^1 dimensions " << r.at("ext1_dim").dump() << "\n";
    }
    return out.str();
}
} // namespace detail

// Deterministic: JSON objects keep sorted keys and series print in canonical order.
inline std::string render_report(const CommandOutcome& outcome, Format format)
{
    if (format == Format::json)
        return outcome.report.dump(2) + "\n";
    return detail::render_text(outcome.report);
}

} // namespace necklace::cli
