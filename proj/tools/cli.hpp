#pragma once

// Command-line front end. Kept in a header so tests can drive it in-process.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <variant>

#include "CLI11.hpp"

#include "fracture/fracture.hpp"

namespace fracture::cli {

enum Exit : int { ok = 0, failure = 1, usage = 2, budget_hit = 3, verify_failed = 4 };

using Artifact = std::variant<Coloring, BipartiteColoring>;

/// Rebuilds the coloring a recipe describes. Every construction checks its
/// own guarantee, so a successful rebuild is also a verified one.
inline Artifact build_recipe(const Json& recipe)
{
    const auto name = detail::field<std::string>(recipe, "name");
    auto num = [&](const char* key) { return detail::field<int>(recipe, key); };
    auto base = [&] { return base_registry(detail::field<std::string>(recipe, "base")); };
    if (name == "base")
        return base().coloring;
    if (name == "blowup")
        return blow_up(base(), num("n"));
    if (name == "nminus1")
        return coloring_nminus1(num("n"));
    if (name == "n")
        return coloring_n(num("n"));
    if (name == "tk2")
        return coloring_tk2(num("n"), num("k"));
    if (name == "baranyai-split")
        return coloring_baranyai_split(num("n"), num("r"), num("t"));
    if (name == "equitable")
        return coloring_equitable(num("n"), num("r"), num("k"));
    if (name == "bipartite-clique")
        return bipartite_from_clique(base().coloring);
    if (name == "bipartite-blowup")
        return bipartite_blow_up(base(), num("n"));
    fail(ErrorKind::unknown_name, "unknown recipe '" + name + "'");
}

/// Full construct output: the coloring, the recipe that made it and its report.
inline Json artifact_json(const Artifact& art, const Json& recipe)
{
    Json doc = std::visit([](const auto& c) { return to_json(c); }, art);
    if (!recipe.is_null())
        doc["recipe"] = recipe;
    doc["report"] = std::visit([](const auto& c) { return report_json(c); }, art);
    return doc;
}

inline Artifact artifact_from_json(const Json& doc)
{
    if (doc.is_object() && doc.value("bipartite", false))
        return bipartite_from_json(doc);
    return coloring_from_json(doc);
}

inline Json read_json(const std::string& path, std::istream& in)
{
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(in), {});
    } else {
        std::ifstream file(path);
        require(file.good(), ErrorKind::invalid_input, "cannot open '" + path + "'");
        text.assign(std::istreambuf_iterator<char>(file), {});
    }
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::invalid_input, std::string("malformed JSON: ") + e.what());
    }
}

inline int threads_from_env(int fallback)
{
    if (const char* env = std::getenv("FRACTURE_THREADS")) {
        try {
            int t = std::stoi(env);
            if (t >= 1)
                return t;
        } catch (const std::exception&) {
        }
    }
    return fallback;
}

/// Returns a description of what was checked, or fails with the first problem.
inline std::string verify_document(const Json& doc)
{
    require(doc.is_object(), ErrorKind::invalid_input, "artifact must be a JSON object");
    if (doc.contains("blocks")) {
        if (auto problem = check_design(design_from_json(doc)))
            fail(ErrorKind::infeasible, "design: " + *problem);
        return "design";
    }
    if (doc.contains("cycles")) {
        int n = detail::field<int>(doc, "n");
        if (auto problem = check_hamiltonian_decomposition(n, detail::field<std::vector<std::vector<Vertices>>>(doc, "cycles")))
            fail(ErrorKind::infeasible, "hamiltonian decomposition: " + *problem);
        return "hamiltonian decomposition";
    }
    if (doc.contains("k4minus")) {
        HypergraphShape shape(detail::field<int>(doc, "n"), 2);
        std::vector<int> cover(shape.m(), 0);
        for (const auto& graph : detail::field<std::vector<std::vector<Vertices>>>(doc, "k4minus")) {
            std::set<int> spanned;
            for (const auto& e : graph) {
                ++cover[edge_rank(e, shape).rank];
                spanned.insert(e.begin(), e.end());
            }
            require(graph.size() == 5 && spanned.size() == 4, ErrorKind::infeasible, "piece is not a K4 minus an edge");
        }
        for (int c : cover)
            require(c == 1, ErrorKind::infeasible, "pieces do not partition the edges");
        return "K4-minus-edge decomposition";
    }
    if (doc.contains("factors")) {
        if (auto problem = check_decomposition(decomposition_from_json(doc)))
            fail(ErrorKind::infeasible, "decomposition: " + *problem);
        return "matching decomposition";
    }
    if (doc.contains("objective")) {
        auto witness = coloring_from_json(detail::field<Json>(doc, "witness"));
        auto stats = class_stats(witness);
        Json value = detail::field<Json>(doc, "value");
        bool is_f = detail::field<std::string>(doc, "objective") == "f";
        Json expect = is_f ? Json(f_value(stats)) : Json(to_string(z_value(stats, witness.n())));
        require(value == expect, ErrorKind::infeasible, "search witness does not re-evaluate to the reported value");
        return "search result";
    }
    Artifact art = artifact_from_json(doc);
    if (doc.contains("recipe")) {
        Artifact rebuilt = build_recipe(doc["recipe"]);
        require(rebuilt == art, ErrorKind::infeasible, "coloring differs from its recipe");
    }
    if (doc.contains("report")) {
        Json report = std::visit([](const auto& c) { return report_json(c); }, art);
        require(report == doc["report"], ErrorKind::infeasible, "report does not match the coloring");
    }
    return doc.contains("recipe") ? "coloring against recipe" : "coloring";
}

inline Json design_artifact(const std::string& kind, int q, int n, int r)
{
    if (kind == "pg" || kind == "ag" || kind == "sqs" || kind == "inversive")
        return to_json(design_by_kind(kind, q));
    if (kind == "one-factorization")
        return to_json(one_factorization(n));
    if (kind == "near-one-factorization")
        return to_json(near_one_factorization(n));
    if (kind == "baranyai")
        return to_json(baranyai(n, r));
    if (kind == "hamiltonian")
        return Json{{"n", n}, {"cycles", hamiltonian_decomposition(n)}};
    if (kind == "k4minus")
        return Json{{"n", n}, {"k4minus", k4minus_decomposition(n)}};
    fail(ErrorKind::unknown_name, "unknown design kind '" + kind + "'");
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::istream& in)
{
    CLI::App app{"Max-min component edge colorings of complete hypergraphs"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "json";
    app.add_option("--format", format, "Output format for reports")->check(CLI::IsMember({"json", "text"}));

    auto* construct = app.add_subcommand("construct", "Build a coloring from a recipe");
    std::string recipe_name, base_name, out_path;
    int n = 0, r = 2, k = 0, t = 1;
    construct->add_option("--recipe", recipe_name, "blowup, base, nminus1, n, tk2, baranyai-split, equitable, "
                                                   "bipartite-clique, bipartite-blowup")
        ->required();
    construct->add_option("--base", base_name, "Base coloring name for blowup/base/bipartite recipes");
    construct->add_option("--n", n, "Vertex count");
    construct->add_option("--r", r, "Edge size");
    construct->add_option("--k", k, "Color count");
    construct->add_option("--t", t, "Matchings per Baranyai factor");
    construct->add_option("--out", out_path, "Write to file instead of stdout");

    auto* eval = app.add_subcommand("eval", "Report f, z and class statistics of a coloring file");
    std::string in_path = "-";
    eval->add_option("file", in_path, "Coloring JSON (default stdin)");

    auto* designs = app.add_subcommand("designs", "Emit a design or matching decomposition");
    std::string kind;
    int q = 2;
    designs->add_option("--kind", kind, "pg, ag, sqs, inversive, one-factorization, near-one-factorization, "
                                        "hamiltonian, baranyai, k4minus")
        ->required();
    designs->add_option("--q", q, "Order (plane designs) or dimension (sqs)");
    designs->add_option("--n", n, "Vertex count (decompositions)");
    designs->add_option("--r", r, "Edge size (baranyai)");

    auto* bounds = app.add_subcommand("bounds", "Lower and upper bounds on z and f");
    std::optional<int> bound_n;
    bounds->add_option("--k", k, "Color count")->required();
    bounds->add_option("--r", r, "Edge size");
    bounds->add_option("--n", bound_n, "Vertex count for integer f bounds");

    auto* table = app.add_subcommand("table", "Small-k bound table as CSV");
    int kmin = 3, kmax = 13;
    table->add_option("--kmin", kmin, "First row");
    table->add_option("--kmax", kmax, "Last row");

    auto* search = app.add_subcommand("search", "Exact or randomized search");
    std::string objective, method = "exact";
    std::uint64_t budget = SearchOptions{}.node_budget, seed = 1, iters = 20000;
    int threads = 1;
    bool no_symmetry = false;
    search->add_option("objective", objective, "f, z, or lemma")->required()->check(CLI::IsMember({"f", "z", "lemma"}));
    search->add_option("--n", n)->required();
    search->add_option("--k", k)->required();
    search->add_option("--r", r);
    search->add_option("--budget", budget, "Node budget")->check(CLI::PositiveNumber);
    search->add_option("--seed", seed, "Seed for --method random");
    search->add_option("--iters", iters, "Iterations for --method random");
    search->add_option("--threads", threads, "Worker threads (FRACTURE_THREADS overrides)")->check(CLI::PositiveNumber);
    search->add_option("--method", method)->check(CLI::IsMember({"exact", "random"}));
    search->add_flag("--no-symmetry", no_symmetry, "Disable first-use color ordering");

    auto* verify = app.add_subcommand("verify", "Re-check an emitted artifact");
    verify->add_option("file", in_path, "Artifact JSON (default stdin)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return usage;
    }

    const bool text = format == "text";
    try {
        if (*construct) {
            Json recipe{{"name", recipe_name}};
            if (!base_name.empty())
                recipe["base"] = base_name;
            for (auto [key, opt, value] : {std::tuple{"n", "--n", n}, {"r", "--r", r}, {"k", "--k", k}, {"t", "--t", t}})
                if (construct->count(opt) > 0)
                    recipe[key] = value;
            Json doc = artifact_json(build_recipe(recipe), recipe);
            if (out_path.empty()) {
                out << dump(doc);
            } else {
                std::ofstream file(out_path, std::ios::binary);
                file << dump(doc);
                require(file.good(), ErrorKind::invalid_input, "cannot write '" + out_path + "'");
            }
            return ok;
        }
        if (*eval) {
            Json input = read_json(in_path, in);
            Artifact art = artifact_from_json(input);
            Json doc = artifact_json(art, input.contains("recipe") ? input["recipe"] : Json());
            if (text)
                out << "f " << doc["report"]["f"].get<int>() << "\nz " << doc["report"]["z"].get<std::string>() << "\n";
            else
                out << dump(doc);
            return ok;
        }
        if (*designs) {
            out << dump(design_artifact(kind, q, n, r));
            return ok;
        }
        if (*bounds) {
            Json doc{{"k", k}, {"r", r}};
            if (bound_n)
                doc["n"] = *bound_n;
            Json records = Json::array();
            BoundRecord lower = z_lower_best(k, r), upper = z_upper_constructions(k, r);
            records.push_back(to_json(z_lower_lemma(k, r)));
            if (r == 2 && k >= 3)
                records.push_back(to_json(z_lower_sqrt(k)));
            records.push_back(to_json(lower));
            records.push_back(to_json(upper));
            if (bound_n) {
                records.push_back(to_json(f_lower_construction(*bound_n, k, r)));
                records.push_back(to_json(f_upper_record(*bound_n, k, r)));
            } else {
                Json fl{{"kind", "f_lower"}, {"k", k}, {"r", r}, {"per_n", true}, {"value", f_slope_lower(k, r).str()},
                        {"provenance", "construction(blowup:" + z_upper_source(k, r) + ")"}};
                Json fu{{"kind", "f_upper"}, {"k", k}, {"r", r}, {"per_n", true}, {"value", f_slope_upper(k, r).str()},
                        {"provenance", "eq1"}};
                records.push_back(fl);
                records.push_back(fu);
            }
            doc["records"] = records;
            doc["z_status"] = lower.value == upper.value ? "exact" : "unknown-exact";
            if (text) {
                for (const auto& rec : records)
                    out << rec["kind"].get<std::string>() << " " << rec["value"].get<std::string>() << " "
                        << rec["provenance"].get<std::string>() << "\n";
                out << "z_status " << doc["z_status"].get<std::string>() << "\n";
            } else {
                out << dump(doc);
            }
            return ok;
        }
        if (*table) {
            out << table1_csv(fracture::table1(kmin, kmax));
            return ok;
        }
        if (*search) {
            if (objective == "lemma") {
                bool holds = verify_k_le_r(n, k, r);
                Json doc{{"n", n}, {"k", k}, {"r", r}, {"holds", holds}};
                out << (text ? std::string(holds ? "holds\n" : "fails\n") : dump(doc));
                return holds ? ok : verify_failed;
            }
            SearchResult res;
            if (method == "random") {
                require(objective == "f", ErrorKind::invalid_input, "random search optimizes f only");
                res = randomized_improve(n, k, r, seed, iters);
            } else {
                SearchOptions opts;
                opts.node_budget = budget;
                opts.thread_hint = threads_from_env(threads);
                opts.symmetry = !no_symmetry;
                res = objective == "f" ? exact_f(n, k, r, opts) : exact_z(n, k, r, opts);
            }
            Json doc = to_json(res, n, k, r);
            if (text)
                out << "value " << (objective == "f" ? doc["value"].dump() : doc["value"].get<std::string>())
                    << "\nexhausted " << (res.exhausted ? "true" : "false") << "\n";
            else
                out << dump(doc);
            return method == "exact" && !res.exhausted ? budget_hit : ok;
        }
        if (*verify) {
            Json doc;
            try {
                doc = read_json(in_path, in);
                std::string what = verify_document(doc);
                out << (text ? "ok " + what + "\n" : dump(Json{{"ok", true}, {"checked", what}}));
                return ok;
            } catch (const Error& e) {
                out << (text ? std::string("rejected ") + e.what() + "\n"
                             : dump(Json{{"ok", false}, {"reason", e.what()}}));
                return verify_failed;
            }
        }
    } catch (const Error& e) {
        err << e.what() << "\n";
        switch (e.kind()) {
        case ErrorKind::invalid_input:
        case ErrorKind::unknown_name:
        case ErrorKind::precondition_failed: return usage;
        default: return failure;
        }
    }
    return usage;
}

} // namespace fracture::cli
