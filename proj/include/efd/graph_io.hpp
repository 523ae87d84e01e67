#pragma once

#include <iosfwd>
#include <string>

#include "efd/graph.hpp"

namespace efd {

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Text format:
///
///   n m
///   u v          (m edge lines, 0-based vertex indices)
///   c v color    (optional; color is any token, interned through `palette`)
///   p v          (optional; pins in file order)
///
/// Blank lines and lines starting with '#' are ignored.
ColoredGraph read_graph(std::istream& in, Palette& palette);
ColoredGraph read_graph_file(const std::string& path, Palette& palette);

/// Deterministic: sorted edges, then colors by vertex and palette index, then pins.
void write_graph(std::ostream& out, const ColoredGraph& g, const Palette* palette = nullptr);
std::string to_text(const ColoredGraph& g, const Palette* palette = nullptr);

}  // namespace efd
