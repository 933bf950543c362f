#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <utility>

#include "fpairs/crystal.hpp"
#include "fpairs/grid.hpp"
#include "fpairs/nodes.hpp"

namespace fpairs::io {

using json = nlohmann::json;

/// Write content to path via a temp file and rename.
void atomic_write(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

/// FNV-1a 64-bit content hash, hex encoded.
std::string fnv1a_hex(const std::string& content);

/// Node-set pair file: { "p", "q", "lambda": [...], "mu": [...], "truncation_radius" }.
struct NodePair {
    NodeSequence lambda;
    NodeSequence mu;
};

json node_pair_to_json(const NodePair& pair);
NodePair node_pair_from_json(const json& j);
void write_node_pair(const std::string& path, const NodePair& pair, int indent = 2);
NodePair read_node_pair(const std::string& path);

/// GridFunction CSV, one side per file: header `x,re,im` (space) or
/// `xi,re,im` (frequency), 17 significant digits. The sidecar JSON carries
/// the grid geometry.
void write_grid_function_csv(const std::string& path, const GridFunction& f,
                             bool frequency_side);
json grid_sidecar(const Grid& g);
Grid grid_from_sidecar(const json& j);
/// Read one side back; the other side stays empty.
GridFunction read_grid_function_csv(const std::string& path, const Grid& g,
                                    bool frequency_side);

json measure_to_json(const DiscreteMeasure& m);
DiscreteMeasure measure_from_json(const json& j);

/// Format a double at full round-trip precision.
std::string full_precision(double v);

} // namespace fpairs::io
