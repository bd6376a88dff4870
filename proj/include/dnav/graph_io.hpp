#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "dnav/graph.hpp"

namespace dnav {

/// Canonical graph document: UTF-8 JSON, sorted keys, two-space indent,
/// trailing newline. Top-level keys: nodes, edges, rules, universalEdges,
/// entry, exitTarget (plus drillRule when it is not "drill").
nlohmann::json graph_to_json(const Graph& graph);
std::string serialize(const Graph& graph);

/// Throws ParseError (syntax or shape problems) or the Error raised by
/// build_graph for reference problems.
Graph graph_from_json(const nlohmann::json& document,
                      std::shared_ptr<const ResolverRegistry> resolvers = ResolverRegistry::builtin());
Graph deserialize(std::string_view text,
                  std::shared_ptr<const ResolverRegistry> resolvers = ResolverRegistry::builtin());

/// Parses JSON text, mapping syntax errors to ParseError with line/column.
nlohmann::json parse_json(std::string_view text);

/// Throws Error(IoError) when the file cannot be read.
std::string read_file(const std::filesystem::path& path);
nlohmann::json load_json_file(const std::filesystem::path& path);
Graph load_graph(const std::filesystem::path& path,
                 std::shared_ptr<const ResolverRegistry> resolvers = ResolverRegistry::builtin());
void write_file(const std::filesystem::path& path, std::string_view contents);

nlohmann::json node_to_json(const Node& node);
Node node_from_json(const std::string& id, const nlohmann::json& j);

}  // namespace dnav
