#include "dcenter/dot.hpp"

#include <sstream>

namespace dcenter::dot {

namespace {

std::string coord_id(int x) { return x < 0 ? "m" + std::to_string(-x) : std::to_string(x); }

std::string node_id(const model::Vertex& v) {
  return std::string(1, model::family_letter(v.family)) + std::to_string(v.i) + "_" +
         coord_id(v.coord.a) + "_" + coord_id(v.coord.b);
}

}  // namespace

std::string emit_ar_dot(const model::Model& m, model::Window w) {
  if (w.half_width < 0 || w.half_width > kMaxDotWindow)
    throw InvalidInput("dot output needs a window in [0, " + std::to_string(kMaxDotWindow) +
                       "], got " + std::to_string(w.half_width));
  const auto vertices = m.enumerate_vertices(w);
  std::ostringstream out;
  out << "digraph \"Lambda" << to_string(m.params()) << "\" {\n";
  out << "  node [shape=box, fontsize=10];\n";

  std::size_t k = 0;
  while (k < vertices.size()) {
    const auto family = vertices[k].family;
    const int i = vertices[k].i;
    const std::string cluster = std::string(1, model::family_letter(family)) + std::to_string(i);
    out << "  subgraph cluster_" << cluster << " {\n";
    out << "    label=\"" << cluster << "\";\n";
    for (; k < vertices.size() && vertices[k].family == family && vertices[k].i == i; ++k)
      out << "    " << node_id(vertices[k]) << " [label=\"(" << vertices[k].coord.a << ","
          << vertices[k].coord.b << ")\"];\n";
    out << "  }\n";
  }
  for (const auto& a : m.enumerate_arrows(w))
    out << "  " << node_id(a.source) << " -> " << node_id(a.target) << " [label=\""
        << model::kind_name(a.kind) << "/" << a.degree() << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace dcenter::dot
