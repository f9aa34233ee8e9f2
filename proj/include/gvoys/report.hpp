#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "gvoys/engine.hpp"

namespace gvoys {

/// Shortest decimal that parses back to the same double.
std::string format_double(double x);

/// Header "provenance=<hex>,phi_1,...,phi_d", then "<graph_id>,<values>" per graph.
void write_embeddings(std::ostream& out, std::span<const GraphEmbedding> embeddings);
/// Header "graph_id,0,1,...", then one row per graph.
void write_square_matrix(std::ostream& out, std::size_t n, std::span<const double> values);

/// Comma-separated table with a header row.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& out) const;
};

std::string hex64(std::uint64_t x);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace gvoys
