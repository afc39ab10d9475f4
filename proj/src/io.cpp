#include "metricforge/io.hpp"

#include "metricforge/errors.hpp"
#include "metricforge/numbers.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace metricforge::io {

json space_to_json(const FiniteSemimetricSpace& space) {
    return json{{"points", space.labels()}, {"matrix", space.matrix().rows()}};
}

FiniteSemimetricSpace space_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("points") || !doc.contains("matrix"))
        throw ShapeError("space JSON must be an object with \"points\" and \"matrix\"");
    const json& points = doc.at("points");
    const json& matrix = doc.at("matrix");
    if (!points.is_array() || !matrix.is_array()) throw ShapeError("\"points\" and \"matrix\" must be arrays");

    std::vector<std::string> labels;
    for (const auto& p : points) {
        if (p.is_string()) labels.push_back(p.get<std::string>());
        else if (p.is_number()) labels.push_back(p.dump());
        else throw ShapeError("point labels must be strings");
    }
    std::vector<std::vector<double>> rows;
    for (const auto& row : matrix) {
        if (!row.is_array()) throw ShapeError("every matrix row must be an array");
        std::vector<double> values;
        for (const auto& v : row) {
            if (!v.is_number()) throw NonfiniteEntryError("matrix entries must be numbers, got " + v.dump());
            values.push_back(v.get<double>());
        }
        rows.push_back(std::move(values));
    }
    return FiniteSemimetricSpace::validate(std::move(labels), rows);
}

json parse_json_text(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
    }
}

FiniteSemimetricSpace read_space_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return space_from_json(parse_json_text(buffer.str()));
}

void write_space_file(const std::filesystem::path& path, const FiniteSemimetricSpace& space) {
    std::ofstream out(path);
    if (!out) throw PreconditionError("cannot write '" + path.string() + "'");
    out << space_to_json(space).dump(2) << '\n';
}

json number(double value) {
    if (std::isfinite(value)) return value;
    return format_number(value);
}

json profile_to_json(const RelaxationProfile& p) {
    return json{{"raw_b", number(p.raw_b)},       {"raw_strong", number(p.raw_strong)},
                {"raw_rpi", number(p.raw_rpi)},   {"k_b", number(p.k_b)},
                {"k_strong", number(p.k_strong)}, {"k_rpi", number(p.k_rpi)},
                {"is_ultrametric", p.is_ultrametric}, {"is_metric", p.is_metric},
                {"tol", p.tol}};
}

json grid_to_json(const Grid& grid) {
    const auto& c = grid.config();
    return json{{"step", c.step},         {"max", c.max},   {"ratio", c.ratio},
                {"geo_levels", c.geo_levels}, {"extra", c.extra}, {"size", grid.size()},
                {"min_value", grid.values().front()}, {"max_value", grid.values().back()}};
}

json verdict_to_json(const PropertyVerdict& v) {
    json out{{"property", v.property}, {"outcome", std::string(to_string(v.outcome))}, {"grid", grid_to_json(v.grid)}};
    json estimates = json::object();
    for (const auto& [name, value] : v.estimates) estimates[name] = number(value);
    out["estimates"] = estimates;
    if (v.outcome == Outcome::Counterexample) {
        json inputs = json::array(), values = json::array();
        for (double x : v.witness_inputs) inputs.push_back(number(x));
        for (double x : v.witness_values) values.push_back(number(x));
        out["witness"] = json{{"inputs", inputs}, {"values", values}};
    }
    return out;
}

json class_to_json(const ClassSpec& spec) {
    return json{{"axiom", std::string(to_string(spec.axiom))}, {"k", spec.k}};
}

json report_to_json(const PreservationReport& r) {
    json out{{"function", r.function},
             {"source", class_to_json(r.source)},
             {"target", std::string(to_string(r.target))},
             {"grid", grid_to_json(r.grid)},
             {"max_len", r.max_len},
             {"estimated_k2", number(r.estimated_k2)},
             {"estimate_kind", "estimate (lower bound)"},
             {"violation", r.violation},
             {"tuples_scanned", r.tuples_scanned}};
    json tuple = json::array(), image = json::array();
    for (double x : r.worst_tuple) tuple.push_back(number(x));
    for (double x : r.worst_image) image.push_back(number(x));
    out["worst_tuple"] = json{{"tuple", tuple}, {"image", image}};
    return out;
}

std::vector<double> tuple_from_json(const json& doc) {
    if (!doc.is_array()) throw ShapeError("expected a JSON array of numbers");
    std::vector<double> out;
    for (const auto& v : doc) {
        if (!v.is_number()) throw ShapeError("tuple entries must be numbers, got " + v.dump());
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<Triplet> triplets_from_json(const json& doc) {
    if (!doc.is_array()) throw ShapeError("expected a JSON array of triplets");
    std::vector<Triplet> out;
    for (const auto& t : doc) {
        const auto v = tuple_from_json(t);
        if (v.size() != 3) throw ShapeError("each triplet needs exactly 3 numbers, got " + t.dump());
        out.emplace_back(v[0], v[1], v[2]);
    }
    return out;
}

} // namespace metricforge::io
