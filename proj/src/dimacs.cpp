#include "gibbscut/dimacs.hpp"

#include <charconv>
#include <sstream>

#include "gibbscut/error.hpp"

namespace gibbscut {

std::string write_dimacs(const FlowNetwork& net) {
  const BigInt scale = capacity_scale(net);
  std::ostringstream out;
  out << "c gibbscut min-cut network\n";
  out << "c vars " << net.var_nodes.size() << " aux " << net.aux_nodes.size() << "\n";
  out << "c scale " << scale.get_str() << "\n";
  out << "c offset " << to_string(net.offset) << "\n";
  out << "p max " << net.node_count << " " << net.arcs.size() << "\n";
  out << "n " << net.source() + 1 << " s\n";
  out << "n " << net.sink() + 1 << " t\n";
  for (const auto& a : net.arcs) {
    BigInt cap = a.capacity.get_num() * (scale / a.capacity.get_den());
    out << "a " << a.from + 1 << " " << a.to + 1 << " " << cap.get_str() << "\n";
  }
  return out.str();
}

DimacsNetwork parse_dimacs(const std::string& text) {
  DimacsNetwork out;
  std::istringstream in(text);
  std::string line;
  bool have_problem = false;
  std::size_t declared_arcs = 0;
  long source = -1, sink = -1;
  long declared_vars = -1, declared_aux = 0;
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, BigInt>> raw;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw InvalidInput("DIMACS line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "c") {
      std::string key, value;
      ls >> key >> value;
      if (key == "scale") {
        out.scale = BigInt(value, 10);
        if (out.scale <= 0) fail("scale must be positive");
      } else if (key == "offset") {
        out.network.offset = parse_rational(value);
      } else if (key == "vars") {
        std::string aux_key;
        long aux = 0;
        long vars = -1;
        auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), vars);
        if (ec != std::errc() || end != value.data() + value.size() || !(ls >> aux_key >> aux) ||
            aux_key != "aux" || vars < 0 || aux < 0)
          fail("bad vars comment");
        declared_vars = vars;
        declared_aux = aux;
      }
    } else if (tag == "p") {
      std::string kind;
      long n = 0;
      long m = 0;
      if (!(ls >> kind >> n >> m) || kind != "max" || n < 2 || m < 0) fail("bad problem line");
      out.network.node_count = static_cast<std::size_t>(n);
      declared_arcs = static_cast<std::size_t>(m);
      have_problem = true;
    } else if (tag == "n") {
      long id = 0;
      std::string role;
      if (!(ls >> id >> role)) fail("bad node line");
      if (role == "s")
        source = id;
      else if (role == "t")
        sink = id;
      else
        fail("unknown node role '" + role + "'");
    } else if (tag == "a") {
      long u = 0, v = 0;
      std::string cap;
      if (!have_problem) fail("arc before problem line");
      if (!(ls >> u >> v >> cap)) fail("bad arc line");
      if (u < 1 || v < 1 || static_cast<std::size_t>(u) > out.network.node_count ||
          static_cast<std::size_t>(v) > out.network.node_count)
        fail("arc endpoint out of range");
      raw.push_back({{static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 1)}, BigInt(cap, 10)});
    } else {
      fail("unknown line tag '" + tag + "'");
    }
  }
  if (!have_problem) throw InvalidInput("DIMACS: missing problem line");
  if (raw.size() != declared_arcs) throw InvalidInput("DIMACS: arc count does not match header");
  if (source != 1 || sink != static_cast<long>(out.network.node_count))
    throw InvalidInput("DIMACS: expected source 1 and sink N");
  if (declared_vars >= 0) {
    if (static_cast<std::size_t>(declared_vars + declared_aux) + 2 != out.network.node_count)
      throw InvalidInput("DIMACS: vars/aux comment does not match the node count");
    for (long v = 0; v < declared_vars; ++v) out.network.var_nodes.push_back(static_cast<NodeId>(v + 1));
    for (long a = 0; a < declared_aux; ++a)
      out.network.aux_nodes.push_back(static_cast<NodeId>(declared_vars + a + 1));
  }
  for (auto& [ends, cap] : raw) {
    Rational c(cap, out.scale);
    c.canonicalize();
    out.network.arcs.push_back({ends.first, ends.second, c});
  }
  return out;
}

}  // namespace gibbscut
