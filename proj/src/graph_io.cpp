#include "qpagerank/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "qpagerank/error.hpp"

namespace qpr {
namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n\v\f";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<std::uint64_t> parse_uint(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

template <class F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    f(line_no, text.substr(pos, end - pos));
    if (end == text.size()) break;
    pos = end + 1;
  }
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string slurp(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

constexpr std::uint64_t kMaxNodes = 1u << 26;

}  // namespace

DirectedGraph parse_edge_list(std::string_view text) {
  struct Pair {
    std::string_view src, dst;
    std::size_t line;
  };
  std::vector<Pair> pairs;
  std::optional<std::uint64_t> declared;

  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) {
      auto comment = split_ws(line.substr(hash + 1));
      if (trim(line.substr(0, hash)).empty() && comment.size() == 2 &&
          (comment[0] == "nodes" || comment[0] == "nodes:")) {
        auto n = parse_uint(comment[1]);
        if (!n) throw ParseError(ErrorKind::Parse, line_no, "bad node count directive");
        declared = *n;
      }
      line = line.substr(0, hash);
    }
    auto tokens = split_ws(line);
    if (tokens.empty()) return;
    if (tokens.size() != 2) {
      throw ParseError(ErrorKind::Parse, line_no,
                       "expected 'src dst', got " + std::to_string(tokens.size()) + " tokens");
    }
    pairs.push_back({tokens[0], tokens[1], line_no});
  });

  if (pairs.empty() && (!declared || *declared == 0)) {
    throw ParseError(ErrorKind::NoNodes, 0, "edge list contains no nodes");
  }
  if (declared && *declared > kMaxNodes) {
    throw ParseError(ErrorKind::Parse, 0, "declared node count too large");
  }

  const bool numeric = std::all_of(pairs.begin(), pairs.end(), [](const Pair& p) {
    return parse_uint(p.src).has_value() && parse_uint(p.dst).has_value();
  });

  std::vector<Arc> arcs;
  arcs.reserve(pairs.size());
  std::vector<std::string> labels;
  std::size_t node_count = 0;

  auto self_loop = [](const Pair& p) {
    throw ParseError(ErrorKind::Parse, p.line,
                     "self-loop '" + std::string(p.src) + " " + std::string(p.dst) + "'");
  };

  if (numeric) {
    std::uint64_t max_id = 0;
    for (const Pair& p : pairs) {
      const auto s = *parse_uint(p.src);
      const auto d = *parse_uint(p.dst);
      if (s >= kMaxNodes || d >= kMaxNodes) {
        throw ParseError(ErrorKind::Parse, p.line, "node id too large");
      }
      if (declared && (s >= *declared || d >= *declared)) {
        throw ParseError(ErrorKind::Parse, p.line,
                         "node id exceeds declared count " + std::to_string(*declared));
      }
      if (s == d) self_loop(p);
      max_id = std::max({max_id, s, d});
      arcs.push_back({static_cast<NodeId>(s), static_cast<NodeId>(d)});
    }
    if (declared) {
      node_count = *declared;
    } else {
      node_count = max_id + 1;
      std::vector<char> seen(node_count, 0);
      for (const Arc& a : arcs) seen[a.src] = seen[a.dst] = 1;
      auto gap = std::find(seen.begin(), seen.end(), 0);
      if (gap != seen.end()) {
        throw ParseError(ErrorKind::Parse, 0,
                         "node ids are not contiguous: " + std::to_string(gap - seen.begin()) +
                             " never appears");
      }
    }
  } else {
    std::unordered_map<std::string_view, NodeId> ids;
    auto intern = [&](std::string_view token) {
      auto [it, inserted] = ids.try_emplace(token, static_cast<NodeId>(labels.size()));
      if (inserted) labels.emplace_back(token);
      return it->second;
    };
    for (const Pair& p : pairs) {
      if (p.src == p.dst) self_loop(p);
      const NodeId s = intern(p.src);
      const NodeId d = intern(p.dst);
      arcs.push_back({s, d});
    }
    node_count = labels.size();
    if (declared && *declared != node_count) {
      throw ParseError(ErrorKind::Parse, 0,
                       "declared node count " + std::to_string(*declared) + " but " +
                           std::to_string(node_count) + " labels found");
    }
  }
  return DirectedGraph(node_count, std::move(arcs), std::move(labels));
}

DirectedGraph parse_edge_list(std::istream& in) { return parse_edge_list(slurp(in)); }

DirectedGraph parse_pajek(std::string_view text) {
  enum class Section { None, Vertices, Arcs };
  Section section = Section::None;
  std::optional<std::size_t> node_count;
  std::vector<std::string> labels;
  std::vector<char> declared_vertex;
  bool any_vertex_line = false;
  std::vector<Arc> arcs;

  auto vertex_id = [&](std::string_view token, std::size_t line_no) -> NodeId {
    auto id = parse_uint(token);
    if (!id) throw ParseError(ErrorKind::Parse, line_no, "bad vertex id '" + std::string(token) + "'");
    if (*id == 0 || *id > *node_count) {
      throw ParseError(ErrorKind::UndeclaredVertex, line_no,
                       "vertex " + std::string(token) + " not declared (N=" +
                           std::to_string(*node_count) + ")");
    }
    return static_cast<NodeId>(*id - 1);
  };

  for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
    const auto line = trim(raw);
    if (line.empty() || line.front() == '%') return;

    if (line.front() == '*') {
      const auto tokens = split_ws(line);
      const auto keyword = lower(tokens[0]);
      if (keyword == "*network") return;
      if (keyword == "*vertices") {
        if (node_count) throw ParseError(ErrorKind::Parse, line_no, "repeated *Vertices section");
        if (tokens.size() < 2) throw ParseError(ErrorKind::Parse, line_no, "*Vertices needs a count");
        auto n = parse_uint(tokens[1]);
        if (!n || *n == 0) throw ParseError(ErrorKind::NoNodes, line_no, "*Vertices count must be positive");
        if (*n > kMaxNodes) throw ParseError(ErrorKind::Parse, line_no, "*Vertices count too large");
        node_count = *n;
        labels.resize(*n);
        declared_vertex.assign(*n, 0);
        section = Section::Vertices;
        return;
      }
      if (keyword == "*arcs") {
        if (!node_count) throw ParseError(ErrorKind::MissingHeader, line_no, "*Arcs before *Vertices");
        section = Section::Arcs;
        return;
      }
      throw ParseError(ErrorKind::Parse, line_no, "unsupported section " + std::string(tokens[0]));
    }

    switch (section) {
      case Section::None:
        throw ParseError(ErrorKind::MissingHeader, line_no, "data before *Vertices header");
      case Section::Vertices: {
        const auto space = line.find_first_of(" \t");
        const auto id_token = line.substr(0, space);
        const NodeId v = vertex_id(id_token, line_no);
        if (declared_vertex[v]) {
          throw ParseError(ErrorKind::DuplicateVertex, line_no,
                           "vertex " + std::string(id_token) + " declared twice");
        }
        declared_vertex[v] = 1;
        any_vertex_line = true;
        std::string_view rest = space == std::string_view::npos ? std::string_view{} : trim(line.substr(space));
        if (!rest.empty() && rest.front() == '"') {
          const auto close = rest.find('"', 1);
          if (close == std::string_view::npos) {
            throw ParseError(ErrorKind::Parse, line_no, "unterminated vertex label");
          }
          labels[v] = std::string(rest.substr(1, close - 1));
        } else if (!rest.empty()) {
          labels[v] = std::string(split_ws(rest).front());
        } else {
          labels[v] = std::string(id_token);
        }
        return;
      }
      case Section::Arcs: {
        const auto tokens = split_ws(line);
        if (tokens.size() < 2 || tokens.size() > 3) {
          throw ParseError(ErrorKind::Parse, line_no, "expected 'src dst [weight]'");
        }
        const NodeId s = vertex_id(tokens[0], line_no);
        const NodeId d = vertex_id(tokens[1], line_no);
        if (s == d) throw ParseError(ErrorKind::Parse, line_no, "self-loop on vertex " + std::string(tokens[0]));
        arcs.push_back({s, d});
        return;
      }
    }
  });

  if (!node_count) throw ParseError(ErrorKind::MissingHeader, 0, "missing *Vertices header");
  if (!any_vertex_line) {
    labels.clear();
  } else {
    for (std::size_t v = 0; v < labels.size(); ++v)
      if (!declared_vertex[v]) labels[v] = std::to_string(v + 1);
  }
  return DirectedGraph(*node_count, std::move(arcs), std::move(labels));
}

DirectedGraph parse_pajek(std::istream& in) { return parse_pajek(slurp(in)); }

std::string to_edge_list(const DirectedGraph& g) {
  std::string out = "# nodes " + std::to_string(g.node_count()) + "\n";
  for (const Arc& a : g.arcs()) {
    out += std::to_string(a.src);
    out += ' ';
    out += std::to_string(a.dst);
    out += '\n';
  }
  return out;
}

std::string to_pajek(const DirectedGraph& g) {
  std::string out = "*Vertices " + std::to_string(g.node_count()) + "\n";
  if (g.has_labels()) {
    for (std::size_t v = 0; v < g.node_count(); ++v) {
      out += std::to_string(v + 1) + " \"" + g.labels()[v] + "\"\n";
    }
  }
  out += "*Arcs\n";
  for (const Arc& a : g.arcs()) {
    out += std::to_string(a.src + 1) + " " + std::to_string(a.dst + 1) + "\n";
  }
  return out;
}

DirectedGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  const auto ext = lower(path.extension().string());
  if (ext == ".net" || ext == ".paj") return parse_pajek(in);
  return parse_edge_list(in);
}

std::uint64_t graph_hash(const DirectedGraph& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  };
  feed(to_edge_list(g));
  for (const auto& label : g.labels()) {
    feed(label);
    feed("\n");
  }
  return h;
}

std::string graph_hash_hex(const DirectedGraph& g) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(graph_hash(g)));
  return buf;
}

}  // namespace qpr
