#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"
#include "rangesched/schedule.h"
#include "rangesched/topology.h"

namespace rangesched {

// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

// CSV "node,x_m,y_m"; every node 0..N-1 exactly once, any row order.
// Parse errors throw InvalidInput as "<source>:<line>: <message>".
Topology read_topology_csv(std::istream& in, std::string_view source = "<input>");
void write_topology_csv(std::ostream& out, const Topology& topo);

/// CSV "i,j,d_m". Either the upper triangle or both orientations may be
/// given; diagonal rows are allowed if they are 0. Every off-diagonal pair
/// must appear at least once and the node count is max index + 1.
DistanceMatrix read_distance_csv(std::istream& in, std::string_view source = "<input>");
// Writes the upper triangle.
void write_distance_csv(std::ostream& out, const DistanceMatrix& d);

// CSV "node,delta_ns".
Schedule read_schedule_csv(std::istream& in, std::string_view source = "<input>");
void write_schedule_csv(std::ostream& out, const Schedule& s);

Topology load_topology(const std::filesystem::path& path);
DistanceMatrix load_distances(const std::filesystem::path& path);
Schedule load_schedule(const std::filesystem::path& path);

nlohmann::json to_json(const InterferenceReport& report);
nlohmann::json to_json(const Schedule& s);

} // namespace rangesched
