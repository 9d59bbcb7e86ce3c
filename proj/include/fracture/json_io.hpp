#pragma once

// JSON forms of colorings, designs, decompositions, reports and search results.
// Rationals are always written as "p/q" strings.

#include <string>

#include "json.hpp"

#include "fracture/bounds.hpp"
#include "fracture/constructions.hpp"
#include "fracture/core.hpp"
#include "fracture/designs.hpp"
#include "fracture/search.hpp"

namespace fracture {

using Json = nlohmann::ordered_json;

namespace detail {

template <typename T>
T field(const Json& doc, const char* key)
{
    require(doc.is_object() && doc.contains(key), ErrorKind::invalid_input, std::string("missing field '") + key + "'");
    try {
        return doc.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        fail(ErrorKind::invalid_input, std::string("field '") + key + "' has the wrong type");
    }
}

} // namespace detail

inline Json to_json(const Coloring& c)
{
    Json doc;
    doc["n"] = c.n();
    doc["r"] = c.r();
    doc["k"] = c.k();
    doc["colors"] = std::vector<Color>(c.colors().begin(), c.colors().end());
    return doc;
}

inline Coloring coloring_from_json(const Json& doc)
{
    HypergraphShape shape(detail::field<int>(doc, "n"), detail::field<int>(doc, "r"));
    return Coloring(shape, detail::field<int>(doc, "k"), detail::field<std::vector<Color>>(doc, "colors"));
}

inline Json to_json(const BipartiteColoring& b)
{
    Json doc;
    doc["bipartite"] = true;
    doc["n"] = b.n;
    doc["k"] = b.k;
    doc["colors"] = b.colors;
    return doc;
}

inline BipartiteColoring bipartite_from_json(const Json& doc)
{
    BipartiteColoring b{detail::field<int>(doc, "n"), detail::field<int>(doc, "k"),
                        detail::field<std::vector<Color>>(doc, "colors")};
    validate(b);
    return b;
}

inline Json to_json(const Design& d)
{
    Json doc;
    doc["v"] = d.v;
    doc["strength"] = d.strength;
    doc["block_size"] = d.block_size;
    doc["blocks"] = d.blocks;
    return doc;
}

inline Design design_from_json(const Json& doc)
{
    Design d;
    d.v = detail::field<int>(doc, "v");
    d.strength = detail::field<int>(doc, "strength");
    d.block_size = detail::field<int>(doc, "block_size");
    d.blocks = detail::field<std::vector<Vertices>>(doc, "blocks");
    return d;
}

inline Json to_json(const MatchingDecomposition& d)
{
    Json doc;
    doc["n"] = d.n;
    doc["r"] = d.r;
    doc["complete"] = d.complete;
    doc["factors"] = d.factors;
    return doc;
}

inline MatchingDecomposition decomposition_from_json(const Json& doc)
{
    MatchingDecomposition d;
    d.n = detail::field<int>(doc, "n");
    d.r = detail::field<int>(doc, "r");
    d.complete = detail::field<bool>(doc, "complete");
    d.factors = detail::field<std::vector<std::vector<Vertices>>>(doc, "factors");
    return d;
}

/// f, z and per-class statistics; `vertices` is the denominator of z.
inline Json report_json(const std::vector<ColorClassStats>& stats, int vertices)
{
    Json doc;
    doc["f"] = f_value(stats);
    doc["z"] = to_string(z_value(stats, vertices));
    Json classes = Json::array();
    for (const auto& s : stats)
        classes.push_back({{"color", s.color}, {"edges", s.edge_count}, {"components", s.components},
                           {"incident", s.incident_vertices}});
    doc["per_class"] = std::move(classes);
    return doc;
}

inline Json report_json(const Coloring& c) { return report_json(class_stats(c), c.n()); }
inline Json report_json(const BipartiteColoring& b) { return report_json(class_stats(b), 2 * b.n); }

inline Json to_json(const SearchResult& res, int n, int k, int r)
{
    Json doc;
    doc["objective"] = res.objective == Objective::f ? "f" : "z";
    doc["n"] = n;
    doc["k"] = k;
    doc["r"] = r;
    if (res.objective == Objective::f)
        doc["value"] = static_cast<std::int64_t>(floor_of(res.value));
    else
        doc["value"] = to_string(res.value);
    doc["exhausted"] = res.exhausted;
    if (res.witness)
        doc["witness"] = to_json(*res.witness);
    return doc;
}

inline Json to_json(const BoundRecord& rec)
{
    Json doc;
    doc["kind"] = to_string(rec.kind);
    doc["k"] = rec.k;
    doc["r"] = rec.r;
    if (rec.n)
        doc["n"] = *rec.n;
    doc["value"] = rec.value.str();
    doc["provenance"] = rec.provenance.str();
    return doc;
}

/// Pretty form used for every emitted artifact.
inline std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

} // namespace fracture
