#pragma once

#include "metricforge/functions.hpp"
#include "metricforge/preservers.hpp"
#include "metricforge/space.hpp"
#include "metricforge/triplets.hpp"

#include <json.hpp>

#include <filesystem>
#include <string_view>
#include <vector>

namespace metricforge::io {

using nlohmann::json;

/// {"points": [...], "matrix": [[...], ...]}. Doubles are written in
/// shortest round-trip form, so read(write(s)) == s bit for bit.
json space_to_json(const FiniteSemimetricSpace& space);
FiniteSemimetricSpace space_from_json(const json& doc);

FiniteSemimetricSpace read_space_file(const std::filesystem::path& path);
void write_space_file(const std::filesystem::path& path, const FiniteSemimetricSpace& space);

/// Parses JSON text; malformed input raises ParseError with the byte offset.
json parse_json_text(std::string_view text);

/// Finite numbers as JSON numbers, infinities as "inf" / "-inf".
json number(double value);

json profile_to_json(const RelaxationProfile& profile);
json grid_to_json(const Grid& grid);
json verdict_to_json(const PropertyVerdict& verdict);
json report_to_json(const PreservationReport& report);
json class_to_json(const ClassSpec& spec);

/// JSON array of numbers, e.g. "[120, 20, 10]".
std::vector<double> tuple_from_json(const json& doc);

/// JSON array of 3-element arrays.
std::vector<Triplet> triplets_from_json(const json& doc);

} // namespace metricforge::io
