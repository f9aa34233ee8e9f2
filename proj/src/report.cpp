#include "gvoys/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gvoys {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, x);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buffer, end);
}

std::string hex64(std::uint64_t x) {
  char buffer[17];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, x, 16);
  std::string digits(buffer, end);
  return std::string(16 - digits.size(), '0') + digits;
}

void write_embeddings(std::ostream& out, std::span<const GraphEmbedding> embeddings) {
  const std::size_t dim = embeddings.empty() ? 0 : embeddings.front().phi.size();
  out << "provenance=" << (embeddings.empty() ? hex64(0) : hex64(embeddings.front().provenance.hash()));
  for (std::size_t k = 1; k <= dim; ++k) out << ",phi_" << k;
  out << '\n';
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    out << i;
    for (double x : embeddings[i].phi) out << ',' << format_double(x);
    out << '\n';
  }
}

void write_square_matrix(std::ostream& out, std::size_t n, std::span<const double> values) {
  out << "graph_id";
  for (std::size_t j = 0; j < n; ++j) out << ',' << j;
  out << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    out << i;
    for (std::size_t j = 0; j < n; ++j) out << ',' << format_double(values[i * n + j]);
    out << '\n';
  }
}

void Table::write(std::ostream& out) const {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(header);
  for (const auto& row : rows) line(row);
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace gvoys
