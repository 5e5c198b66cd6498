#include "tdlc/germ.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "tdlc/io.hpp"

namespace tdlc::germ {

namespace {

using Word = Address;

int parse_int(std::string_view s, std::string_view what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw InputError("germ", "bad integer '" + std::string(s) + "' in " + std::string(what));
  return value;
}

std::vector<int> parse_ints(std::string_view s, std::string_view what) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    if (comma == std::string_view::npos) comma = s.size();
    out.push_back(parse_int(s.substr(start, comma - start), what));
    start = comma + 1;
  }
  return out;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw InputError("germ", message);
}

// Free product of `degree` copies of C2: reduced words, no letter repeated twice in a row.
class RegularTree final : public GraphGerm {
 public:
  explicit RegularTree(int d) : d_(d) { require(d >= 2, "tree degree must be >= 2"); }
  Address root() const override { return {}; }
  std::vector<Address> neighbors(const Address& w) const override {
    std::vector<Address> out;
    for (int a = 0; a < d_; ++a) {
      Word n = w;
      if (!n.empty() && n.back() == a)
        n.pop_back();
      else
        n.push_back(a);
      out.push_back(std::move(n));
    }
    return out;
  }
  std::size_t degree_bound() const override { return static_cast<std::size_t>(d_); }
  std::string describe() const override { return "tree:" + std::to_string(d_); }

 private:
  int d_;
};

// Rooted at a vertex of degree d1; depth parity alternates the vertex type.
class BiregularTree final : public GraphGerm {
 public:
  BiregularTree(int d1, int d2) : d1_(d1), d2_(d2) {
    require(d1 >= 2 && d2 >= 2, "bitree degrees must be >= 2");
  }
  Address root() const override { return {}; }
  std::vector<Address> neighbors(const Address& w) const override {
    std::vector<Address> out;
    if (!w.empty()) out.emplace_back(w.begin(), w.end() - 1);
    int children = w.empty() ? d1_ : (w.size() % 2 == 0 ? d1_ - 1 : d2_ - 1);
    for (int c = 0; c < children; ++c) {
      Word n = w;
      n.push_back(c);
      out.push_back(std::move(n));
    }
    return out;
  }
  std::size_t degree_bound() const override { return static_cast<std::size_t>(std::max(d1_, d2_)); }
  std::string describe() const override {
    return "bitree:" + std::to_string(d1_) + "," + std::to_string(d2_);
  }

 private:
  int d1_, d2_;
};

class Grid final : public GraphGerm {
 public:
  explicit Grid(int m) : m_(m) { require(m >= 1, "grid dimension must be >= 1"); }
  Address root() const override { return Address(static_cast<std::size_t>(m_), 0); }
  std::vector<Address> neighbors(const Address& v) const override {
    std::vector<Address> out;
    for (std::size_t i = 0; i < v.size(); ++i)
      for (int step : {1, -1}) {
        Address n = v;
        n[i] += step;
        out.push_back(std::move(n));
      }
    return out;
  }
  std::size_t degree_bound() const override { return 2 * static_cast<std::size_t>(m_); }
  std::string describe() const override { return "grid:" + std::to_string(m_); }

 private:
  int m_;
};

// Letters 2i and 2i+1 are a_i and its inverse.
class FreeGroup final : public GraphGerm {
 public:
  explicit FreeGroup(int rank) : rank_(rank) { require(rank >= 1, "free group rank must be >= 1"); }
  Address root() const override { return {}; }
  std::vector<Address> neighbors(const Address& w) const override {
    std::vector<Address> out;
    for (int l = 0; l < 2 * rank_; ++l) {
      Word n = w;
      if (!n.empty() && n.back() == (l ^ 1))
        n.pop_back();
      else
        n.push_back(l);
      out.push_back(std::move(n));
    }
    return out;
  }
  std::size_t degree_bound() const override { return 2 * static_cast<std::size_t>(rank_); }
  std::string describe() const override { return "free:" + std::to_string(rank_); }

 private:
  int rank_;
};

// Vertex of a tree with a fixed end: climb `up` steps toward the end from
// the base point, then descend along `down` (child digits). Canonical when
// up == 0 or down is empty or down[0] != 0 (digit 0 retraces the climb).
struct TreePoint {
  std::int64_t up = 0;
  std::vector<std::int64_t> down;

  std::int64_t height() const { return up - static_cast<std::int64_t>(down.size()); }

  TreePoint parent() const {
    TreePoint p = *this;
    if (p.down.empty())
      ++p.up;
    else
      p.down.pop_back();
    return p;
  }

  TreePoint child(std::int64_t c) const {
    TreePoint p = *this;
    if (p.down.empty() && p.up > 0 && c == 0)
      --p.up;
    else
      p.down.push_back(c);
    return p;
  }

  void encode(Address& out) const {
    out.push_back(up);
    out.push_back(static_cast<std::int64_t>(down.size()));
    out.insert(out.end(), down.begin(), down.end());
  }

  static TreePoint decode(const Address& a, std::size_t& pos) {
    TreePoint p;
    p.up = a.at(pos++);
    auto n = static_cast<std::size_t>(a.at(pos++));
    p.down.assign(a.begin() + static_cast<std::ptrdiff_t>(pos),
                  a.begin() + static_cast<std::ptrdiff_t>(pos + n));
    pos += n;
    return p;
  }
};

// Pairs (x, y) with height(x) + height(y) = 0; each edge moves x one level up
// and y one level down or the reverse.
class DiestelLeader final : public GraphGerm {
 public:
  DiestelLeader(int p, int q) : p_(p), q_(q) { require(p >= 2 && q >= 2, "dl parameters must be >= 2"); }
  Address root() const override {
    Address a;
    TreePoint{}.encode(a);
    TreePoint{}.encode(a);
    return a;
  }
  std::vector<Address> neighbors(const Address& v) const override {
    std::size_t pos = 0;
    TreePoint x = TreePoint::decode(v, pos);
    TreePoint y = TreePoint::decode(v, pos);
    std::vector<Address> out;
    TreePoint xu = x.parent();
    for (int c = 0; c < q_; ++c) out.push_back(encode(xu, y.child(c)));
    TreePoint yu = y.parent();
    for (int c = 0; c < p_; ++c) out.push_back(encode(x.child(c), yu));
    return out;
  }
  std::size_t degree_bound() const override { return static_cast<std::size_t>(p_ + q_); }
  std::string describe() const override { return "dl:" + std::to_string(p_) + "," + std::to_string(q_); }

 private:
  static Address encode(const TreePoint& x, const TreePoint& y) {
    Address a;
    x.encode(a);
    y.encode(a);
    return a;
  }
  int p_, q_;
};

class FiniteGraph final : public GraphGerm {
 public:
  FiniteGraph(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges) : adj_(n) {
    require(n >= 1, "finite graph needs at least one vertex");
    for (auto [i, j] : edges) {
      require(i < n && j < n, "edge endpoint out of range");
      if (i == j) continue;
      adj_[i].push_back(j);
      adj_[j].push_back(i);
    }
    for (auto& a : adj_) {
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
      bound_ = std::max(bound_, a.size());
    }
    diameter_ = 0;
    for (std::size_t s = 0; s < n; ++s) {
      auto dist = bfs(s);
      for (std::size_t d : dist) {
        require(d != unreached, "finite graph is not connected");
        diameter_ = std::max(diameter_, d);
      }
    }
  }
  Address root() const override { return {0}; }
  std::vector<Address> neighbors(const Address& v) const override {
    std::vector<Address> out;
    for (std::size_t w : adj_.at(static_cast<std::size_t>(v.at(0))))
      out.push_back({static_cast<std::int64_t>(w)});
    return out;
  }
  std::size_t degree_bound() const override { return bound_; }
  std::string describe() const override { return "finite:" + std::to_string(adj_.size()); }
  std::optional<std::size_t> diameter() const override { return diameter_; }

 private:
  static constexpr std::size_t unreached = static_cast<std::size_t>(-1);
  std::vector<std::size_t> bfs(std::size_t s) const {
    std::vector<std::size_t> dist(adj_.size(), unreached);
    std::deque<std::size_t> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t w : adj_[u])
        if (dist[w] == unreached) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
    }
    return dist;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::size_t bound_ = 0;
  std::size_t diameter_ = 0;
};

// Cartesian product; address = [len(first), first..., second...].
class Product final : public GraphGerm {
 public:
  Product(GermPtr a, GermPtr b) : a_(std::move(a)), b_(std::move(b)) {
    require(a_ && b_, "product of null germs");
  }
  Address root() const override { return join(a_->root(), b_->root()); }
  std::vector<Address> neighbors(const Address& v) const override {
    auto n = static_cast<std::size_t>(v.at(0));
    Address x(v.begin() + 1, v.begin() + 1 + static_cast<std::ptrdiff_t>(n));
    Address y(v.begin() + 1 + static_cast<std::ptrdiff_t>(n), v.end());
    std::vector<Address> out;
    for (auto& xn : a_->neighbors(x)) out.push_back(join(xn, y));
    for (auto& yn : b_->neighbors(y)) out.push_back(join(x, yn));
    return out;
  }
  std::size_t degree_bound() const override { return a_->degree_bound() + b_->degree_bound(); }
  std::string describe() const override { return "product:" + a_->describe() + "|" + b_->describe(); }
  std::optional<std::size_t> diameter() const override {
    auto da = a_->diameter();
    auto db = b_->diameter();
    if (da && db) return *da + *db;
    return std::nullopt;
  }

 private:
  static Address join(const Address& x, const Address& y) {
    Address a{static_cast<std::int64_t>(x.size())};
    a.insert(a.end(), x.begin(), x.end());
    a.insert(a.end(), y.begin(), y.end());
    return a;
  }
  GermPtr a_, b_;
};

struct AddressHash {
  std::size_t operator()(const Address& a) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : a) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace

std::string format_address(const Address& a) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ')';
  return os.str();
}

GermPtr regular_tree(int degree) { return std::make_shared<RegularTree>(degree); }
GermPtr biregular_tree(int d1, int d2) { return std::make_shared<BiregularTree>(d1, d2); }
GermPtr grid(int dimension) { return std::make_shared<Grid>(dimension); }
GermPtr free_group(int rank) { return std::make_shared<FreeGroup>(rank); }
GermPtr diestel_leader(int p, int q) { return std::make_shared<DiestelLeader>(p, q); }
GermPtr finite_graph(std::size_t vertices, std::span<const std::pair<std::size_t, std::size_t>> edges) {
  return std::make_shared<FiniteGraph>(vertices, edges);
}
GermPtr product(GermPtr first, GermPtr second) {
  return std::make_shared<Product>(std::move(first), std::move(second));
}

GermPtr finite_graph_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("germ", std::string("invalid graph JSON: ") + e.what());
  }
  try {
    auto n = j.at("vertices").get<std::size_t>();
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& e : j.at("edges")) {
      require(e.is_array() && e.size() == 2, "edges must be [i, j] pairs");
      edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
    return finite_graph(n, edges);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("germ", std::string("malformed graph JSON: ") + e.what());
  }
}

GermPtr parse_germ(std::string_view spec) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw InputError("germ", "germ spec '" + std::string(spec) + "' lacks a kind prefix");
  std::string_view kind = spec.substr(0, colon);
  std::string_view args = spec.substr(colon + 1);
  auto expect = [&](std::size_t n) {
    auto v = parse_ints(args, spec);
    require(v.size() == n, "germ spec '" + std::string(spec) + "' expects " + std::to_string(n) +
                               " parameter(s)");
    return v;
  };
  if (kind == "tree") return regular_tree(expect(1)[0]);
  if (kind == "bitree") {
    auto v = expect(2);
    return biregular_tree(v[0], v[1]);
  }
  if (kind == "grid") return grid(expect(1)[0]);
  if (kind == "free") return free_group(expect(1)[0]);
  if (kind == "dl") {
    auto v = expect(2);
    return diestel_leader(v[0], v[1]);
  }
  if (kind == "product") {
    auto bar = args.find('|');
    require(bar != std::string_view::npos, "product spec needs two germs separated by '|'");
    return product(parse_germ(args.substr(0, bar)), parse_germ(args.substr(bar + 1)));
  }
  if (kind == "file") return finite_graph_from_json(io::read_text_file(std::string(args), "germ"));
  throw InputError("germ", "unknown germ kind '" + std::string(kind) + "'");
}

std::size_t Ball::prefix_within(std::size_t rad) const {
  return static_cast<std::size_t>(
      std::upper_bound(radius.begin(), radius.end(), rad) - radius.begin());
}

Ball ball(const GraphGerm& germ, std::size_t r, const Caps& caps) {
  if (auto d = germ.diameter()) r = std::min(r, *d);
  Ball b;
  b.r = r;
  std::unordered_map<Address, std::size_t, AddressHash> ids;
  auto root = germ.root();
  ids.emplace(root, 0);
  b.vertices.push_back(std::move(root));
  b.radius.push_back(0);
  for (std::size_t head = 0; head < b.vertices.size(); ++head) {
    if (b.radius[head] == r) continue;
    auto nbrs = germ.neighbors(b.vertices[head]);
    std::sort(nbrs.begin(), nbrs.end());
    for (auto& n : nbrs) {
      if (ids.count(n)) continue;
      if (b.vertices.size() >= caps.vertices)
        throw ResourceLimit("germ", "ball exceeds vertex cap of " + std::to_string(caps.vertices));
      ids.emplace(n, b.vertices.size());
      b.vertices.push_back(std::move(n));
      b.radius.push_back(b.radius[head] + 1);
    }
  }
  b.adjacency.resize(b.vertices.size());
  for (std::size_t u = 0; u < b.vertices.size(); ++u) {
    for (const auto& n : germ.neighbors(b.vertices[u])) {
      auto it = ids.find(n);
      if (it == ids.end() || it->second == u) continue;
      b.adjacency[u].push_back(it->second);
    }
    auto& a = b.adjacency[u];
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    for (std::size_t w : a)
      if (u < w) b.edges.emplace_back(u, w);
  }
  std::sort(b.edges.begin(), b.edges.end());
  return b;
}

std::size_t distance(const Ball& b, std::size_t u, std::size_t v) {
  if (u >= b.size() || v >= b.size())
    throw InputError("germ", "unknown vertex id " + std::to_string(std::max(u, v)));
  constexpr std::size_t unreached = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(b.size(), unreached);
  std::deque<std::size_t> queue{u};
  dist[u] = 0;
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    if (x == v) return dist[x];
    for (std::size_t w : b.adjacency[x])
      if (dist[w] == unreached) {
        dist[w] = dist[x] + 1;
        queue.push_back(w);
      }
  }
  throw InvariantViolation("germ", "ball is disconnected");
}

std::vector<std::vector<std::size_t>> neighborhoods(const Ball& b, std::size_t d) {
  constexpr std::size_t unreached = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> out(b.size());
  std::vector<std::size_t> dist(b.size(), unreached);
  std::vector<std::size_t> touched;
  for (std::size_t s = 0; s < b.size(); ++s) {
    touched.assign(1, s);
    dist[s] = 0;
    for (std::size_t head = 0; head < touched.size(); ++head) {
      std::size_t x = touched[head];
      if (dist[x] == d) continue;
      for (std::size_t w : b.adjacency[x])
        if (dist[w] == unreached) {
          dist[w] = dist[x] + 1;
          touched.push_back(w);
        }
    }
    out[s] = touched;
    std::sort(out[s].begin(), out[s].end());
    for (std::size_t x : touched) dist[x] = unreached;
  }
  return out;
}

std::string ball_to_json(const Ball& b) {
  std::ostringstream os;
  os << "{\"vertices\": " << b.size() << ", \"edges\": [";
  for (std::size_t i = 0; i < b.edges.size(); ++i)
    os << (i ? ", " : "") << '[' << b.edges[i].first << ", " << b.edges[i].second << ']';
  os << "]}\n";
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

std::vector<group::Permutation> read_perms(const nlohmann::json& j) {
  std::vector<group::Permutation> out;
  for (const auto& p : j) out.push_back(p.get<group::Permutation>());
  return out;
}

// Validates the wreath data and returns the graph {(h, x(h))} of the H
// action on X, as a permutation group on [nh] + [nx].
group::PermGroup wreath_action_graph(const WreathSpec& spec, const Caps& caps) {
  using group::Permutation;
  using group::PermGroup;
  require(spec.x_size >= 1, "wreath product needs a nonempty X");
  require(spec.x_action.size() == spec.h_generators.size(),
          "X action table needs one permutation per H generator");
  PermGroup b(spec.b_degree, spec.b_generators, caps.group_order);
  for (const auto& a : spec.a_generators)
    if (!b.contains(a)) throw InputError("germ", "A is not a subgroup of B: " + group::to_string(a));
  PermGroup h(spec.h_degree, spec.h_generators, caps.group_order);

  // The action table is an action iff the graph of h -> (h, x(h)) is a group
  // of the same order as H.
  const std::size_t nh = spec.h_degree;
  const std::size_t nx = spec.x_size;
  std::vector<Permutation> graph_gens;
  for (std::size_t i = 0; i < spec.h_generators.size(); ++i) {
    if (!group::is_permutation(spec.x_action[i], nx))
      throw InputError("germ", "X action entry is not a permutation of X");
    Permutation p(nh + nx);
    for (std::size_t k = 0; k < nh; ++k) p[k] = spec.h_generators[i][k];
    for (std::size_t k = 0; k < nx; ++k) p[nh + k] = static_cast<group::Point>(nh + spec.x_action[i][k]);
    graph_gens.push_back(std::move(p));
  }
  PermGroup graph(nh + nx, graph_gens, caps.group_order);
  if (graph.order() != h.order())
    throw InputError("germ", "X action table does not define an action of H");
  return graph;
}

}  // namespace

WreathSpec wreath_spec_from_json(std::string_view text, std::vector<group::Permutation>* u_generators) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("germ", std::string("invalid wreath JSON: ") + e.what());
  }
  try {
    WreathSpec s;
    s.b_degree = j.at("B").at("degree").get<std::size_t>();
    s.b_generators = read_perms(j.at("B").at("generators"));
    s.a_generators = j.contains("A") ? read_perms(j.at("A")) : std::vector<group::Permutation>{};
    s.h_degree = j.at("H").at("degree").get<std::size_t>();
    s.h_generators = read_perms(j.at("H").at("generators"));
    s.x_size = j.at("X").at("size").get<std::size_t>();
    s.x_action = read_perms(j.at("X").at("action"));
    if (u_generators)
      *u_generators = j.contains("U") ? read_perms(j.at("U")) : std::vector<group::Permutation>{};
    wreath_action_graph(s, Caps{});
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("germ", std::string("malformed wreath JSON: ") + e.what());
  }
}

Ball wreath_cayley_abels(const WreathSpec& spec, std::span<const group::Permutation> u_generators,
                         const Caps& caps) {
  using group::Permutation;
  using group::PermGroup;
  using group::Subgroup;

  const auto graph = wreath_action_graph(spec, caps);
  PermGroup h(spec.h_degree, spec.h_generators, caps.group_order);
  for (const auto& u : u_generators)
    if (!h.contains(u)) throw InputError("germ", "U is not a subgroup of H: " + group::to_string(u));
  const std::size_t nh = spec.h_degree;
  const std::size_t nx = spec.x_size;
  auto x_image = [&](const Permutation& hp) {
    for (const auto& e : graph.elements())
      if (std::equal(hp.begin(), hp.end(), e.begin()))
        return Permutation(e.begin() + static_cast<std::ptrdiff_t>(nh), e.end());
    throw InputError("germ", "element outside H");
  };

  // G acts faithfully on (X x [nb]) + [nh]: (f, h).(x, i) = (hx, f(hx)(i)).
  const std::size_t nb = spec.b_degree;
  const std::size_t degree = nx * nb + nh;
  auto embed_h = [&](const Permutation& hp) {
    Permutation xp = x_image(hp);
    for (auto& v : xp) v -= static_cast<group::Point>(nh);
    Permutation p(degree);
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t i = 0; i < nb; ++i) p[x * nb + i] = static_cast<group::Point>(xp[x] * nb + i);
    for (std::size_t i = 0; i < nh; ++i) p[nx * nb + i] = static_cast<group::Point>(nx * nb + hp[i]);
    return p;
  };
  auto embed_b = [&](const Permutation& bp, std::size_t at) {
    Permutation p = group::identity_permutation(degree);
    for (std::size_t i = 0; i < nb; ++i) p[at * nb + i] = static_cast<group::Point>(at * nb + bp[i]);
    return p;
  };

  // One coordinate per H-orbit of X.
  std::vector<std::size_t> orbit_reps;
  {
    std::vector<char> seen(nx, 0);
    for (std::size_t x = 0; x < nx; ++x) {
      if (seen[x]) continue;
      orbit_reps.push_back(x);
      std::vector<std::size_t> stack{x};
      seen[x] = 1;
      while (!stack.empty()) {
        std::size_t y = stack.back();
        stack.pop_back();
        for (const auto& xp : spec.x_action)
          if (!seen[xp[y]]) {
            seen[xp[y]] = 1;
            stack.push_back(xp[y]);
          }
      }
    }
  }

  std::vector<Permutation> gens;
  for (std::size_t x : orbit_reps)
    for (const auto& s : spec.b_generators) gens.push_back(embed_b(s, x));
  for (const auto& t : spec.h_generators) gens.push_back(embed_h(t));
  PermGroup g(degree, gens, caps.group_order);

  std::vector<Permutation> k_gens;
  for (std::size_t x = 0; x < nx; ++x)
    for (const auto& a : spec.a_generators) k_gens.push_back(embed_b(a, x));
  for (const auto& u : u_generators) k_gens.push_back(embed_h(u));
  Subgroup k = Subgroup::generated_by(g, k_gens);

  group::CosetTable cosets(g, k);
  if (cosets.size() > caps.vertices)
    throw ResourceLimit("germ", "coset graph exceeds vertex cap of " + std::to_string(caps.vertices));

  // Neighbors of the base coset: K S K / K.
  std::vector<std::size_t> steps;
  for (const auto& s : gens) {
    std::size_t si = g.require_index(s);
    for (std::size_t sv : {si, g.inverse(si)})
      for (std::size_t kk : k.elements()) steps.push_back(g.multiply(kk, sv));
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t c = 0; c < cosets.size(); ++c) {
    std::size_t rep = cosets.representative(c);
    for (std::size_t st : steps) {
      std::size_t d = cosets.coset_of(g.multiply(rep, st));
      if (d != c) edges.emplace_back(std::min(c, d), std::max(c, d));
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  FiniteGraph graph_germ(cosets.size(), edges);
  return ball(graph_germ, *graph_germ.diameter(), caps);
}

}  // namespace tdlc::germ
