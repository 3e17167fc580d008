#include "pnet/dot.hpp"

#include <sstream>

#include "pnet/switching.hpp"

namespace pnet {
namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string node_label(const Flat::Node& n) {
  switch (n.kind) {
    case Kind::Var: return n.name;
    case Kind::One: return "1@" + n.name;
    case Kind::Bot: return "bot@" + n.name;
    case Kind::Coweak: return "!0@" + n.name;
    case Kind::Weak: return "?0@" + n.name;
    case Kind::Tensor: return "tensor";
    case Kind::Par: return "par";
    case Kind::Bang: return "bang";
    case Kind::Quest: return "quest";
    case Kind::Port: return "port(" + n.name + "," + std::to_string(n.port) + ")";
  }
  return "?";
}

void emit_level(std::ostringstream& os, const Net& net, const std::string& prefix, const std::string& indent) {
  Flat f(net);
  auto id = [&](int v) { return quoted(prefix + addr_string(f.nodes[static_cast<std::size_t>(v)].addr)); };
  for (int v = 0; v < f.size(); ++v) {
    const auto& n = f.nodes[static_cast<std::size_t>(v)];
    os << indent << id(v) << " [label=" << quoted(node_label(n));
    if (n.parent < 0) os << ", shape=box";
    os << "];\n";
  }
  SwitchingGraph g = union_graph(f);
  for (const Edge& e : g.edges) {
    os << indent << id(e.a) << " -- " << id(e.b);
    switch (e.kind) {
      case EdgeKind::Jump: os << " [style=dashed]"; break;
      case EdgeKind::Cut: os << " [label=cut]"; break;
      case EdgeKind::Axiom: os << " [label=ax]"; break;
      case EdgeKind::Box: os << " [style=bold]"; break;
      default: break;
    }
    os << ";\n";
  }
}

void emit_mell(std::ostringstream& os, const MellNet& m, const std::string& prefix, const std::string& indent) {
  emit_level(os, m.net, prefix, indent);
  for (const Box& b : m.boxes) {
    std::string inner = prefix + b.id + "/";
    os << indent << "subgraph " << quoted("cluster_" + inner) << " {\n";
    os << indent << "  label=" << quoted("box " + b.id) << ";\n";
    os << indent << "  " << quoted(inner) << " [label=" << quoted(b.id + " arity " + std::to_string(b.arity))
       << ", shape=box3d];\n";
    emit_mell(os, b.content, inner, indent + "  ");
    os << indent << "}\n";
  }
}

}  // namespace

std::string export_dot(const Net& net) {
  std::ostringstream os;
  os << "graph net {\n";
  emit_level(os, net, "", "  ");
  os << "}\n";
  return os.str();
}

std::string export_dot(const MellNet& m) {
  std::ostringstream os;
  os << "graph net {\n";
  emit_mell(os, m, "", "  ");
  os << "}\n";
  return os.str();
}

}  // namespace pnet
