#include "efd/graph_io.hpp"

#include <fstream>
#include <sstream>

namespace efd {

namespace {

bool next_content_line(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

[[noreturn]] void fail(int line_no, const std::string& what) {
  throw FormatError("line " + std::to_string(line_no) + ": " + what);
}

long parse_int(const std::string& token, int line_no) {
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(token, &used);
  } catch (const std::exception&) {
    fail(line_no, "expected integer, got '" + token + "'");
  }
  if (used != token.size()) fail(line_no, "expected integer, got '" + token + "'");
  return value;
}

}  // namespace

ColoredGraph read_graph(std::istream& in, Palette& palette) {
  std::string line;
  int line_no = 0;
  if (!next_content_line(in, line, line_no)) throw FormatError("empty graph file");
  std::istringstream header(line);
  std::string a, b, extra;
  if (!(header >> a >> b) || (header >> extra)) fail(line_no, "header must be 'n m'");
  long n = parse_int(a, line_no);
  long m = parse_int(b, line_no);
  if (n < 0 || m < 0) fail(line_no, "negative counts in header");

  ColoredGraph g(static_cast<int>(n));
  long seen_edges = 0;
  while (next_content_line(in, line, line_no)) {
    std::istringstream row(line);
    std::vector<std::string> tok;
    for (std::string t; row >> t;) tok.push_back(t);
    try {
      if (tok[0] == "c") {
        if (tok.size() != 3) fail(line_no, "color line must be 'c v color'");
        g.add_color(static_cast<Vertex>(parse_int(tok[1], line_no)), palette.intern(tok[2]));
      } else if (tok[0] == "p") {
        if (tok.size() != 2) fail(line_no, "pin line must be 'p v'");
        g.add_pin(static_cast<Vertex>(parse_int(tok[1], line_no)));
      } else {
        if (tok.size() != 2) fail(line_no, "edge line must be 'u v'");
        if (++seen_edges > m) fail(line_no, "more edge lines than declared");
        g.add_edge(static_cast<Vertex>(parse_int(tok[0], line_no)),
                   static_cast<Vertex>(parse_int(tok[1], line_no)));
      }
    } catch (const ArgumentError& e) {
      fail(line_no, e.what());
    } catch (const CapError& e) {
      fail(line_no, e.what());
    }
  }
  if (seen_edges != m)
    throw FormatError("declared " + std::to_string(m) + " edges, found " + std::to_string(seen_edges));
  return g;
}

ColoredGraph read_graph_file(const std::string& path, Palette& palette) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open graph file '" + path + "'");
  try {
    return read_graph(in, palette);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_graph(std::ostream& out, const ColoredGraph& g, const Palette* palette) {
  auto edges = g.edges();
  out << g.order() << ' ' << edges.size() << '\n';
  for (auto [u, v] : edges) out << u << ' ' << v << '\n';
  for (Vertex v = 0; v < g.order(); ++v)
    for (int c = 0; c < kMaxColors; ++c)
      if (g.has_color(v, c)) {
        out << "c " << v << ' ';
        if (palette && c < palette->size())
          out << palette->name(c);
        else
          out << c;
        out << '\n';
      }
  for (Vertex p : g.pins()) out << "p " << p << '\n';
}

std::string to_text(const ColoredGraph& g, const Palette* palette) {
  std::ostringstream out;
  write_graph(out, g, palette);
  return out.str();
}

}  // namespace efd
