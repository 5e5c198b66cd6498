#include "tdlc/inference.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "inference_internal.hpp"
#include "json.hpp"
#include "tdlc/error.hpp"

namespace tdlc::inference {

bool is_boolean(Attr a) {
  switch (a) {
    case Attr::Compact:
    case Attr::SigmaCompact:
    case Attr::CompactlyGenerated:
    case Attr::CompactlyPresented:
    case Attr::PolyCompactOpenByCyclic:
    case Attr::TypeF:
    case Attr::TypeFP_Z:
    case Attr::TypeFP_Q:
      return true;
    default:
      return false;
  }
}

namespace {

const std::vector<std::pair<std::string_view, RelationKind>>& kind_table() {
  static const std::vector<std::pair<std::string_view, RelationKind>> t = {
      {"extension", RelationKind::Extension},
      {"closed_cocompact_subgroup", RelationKind::ClosedCocompactSubgroup},
      {"open_finite_index", RelationKind::OpenFiniteIndex},
      {"uniform_lattice", RelationKind::UniformLattice},
      {"quasi_isometric", RelationKind::QuasiIsometric},
      {"quasi_retract", RelationKind::QuasiRetract},
      {"group_retract", RelationKind::GroupRetract},
      {"wreath", RelationKind::Wreath},
      {"normal_closed", RelationKind::NormalClosed},
  };
  return t;
}

std::size_t arity(RelationKind k) {
  return k == RelationKind::Extension || k == RelationKind::Wreath ? 3 : 2;
}

bool is_dimension(Attr a) { return a == Attr::Cd || a == Attr::Hd; }

std::string_view bool_name(Attr a) {
  switch (a) {
    case Attr::Compact: return "compact";
    case Attr::SigmaCompact: return "sigma_compact";
    case Attr::CompactlyGenerated: return "compactly_generated";
    case Attr::CompactlyPresented: return "compactly_presented";
    case Attr::PolyCompactOpenByCyclic: return "poly_compact_open_by_cyclic";
    case Attr::TypeF: return "type F";
    case Attr::TypeFP_Z: return "type FP over Z";
    case Attr::TypeFP_Q: return "type FP over Q";
    default: return "?";
  }
}

// (prefix, ring suffix) for graded properties.
std::pair<std::string_view, std::string_view> graded_name(Attr a) {
  switch (a) {
    case Attr::F: return {"F", ""};
    case Attr::K: return {"K", ""};
    case Attr::FP_Z: return {"FP", " over Z"};
    case Attr::FP_Q: return {"FP", " over Q"};
    case Attr::KP_Z: return {"KP", " over Z"};
    case Attr::KP_Q: return {"KP", " over Q"};
    default: return {"?", ""};
  }
}

class Parser {
 public:
  Parser(Database& db) : db_(db) {}

  void line(int number, std::string text) {
    line_ = number;
    if (auto hash = text.find('#'); hash != std::string::npos) text.resize(hash);
    std::istringstream in(text);
    std::vector<std::string> t;
    for (std::string w; in >> w;) t.push_back(w);
    if (t.empty()) return;
    const std::string head = t[0];
    t.erase(t.begin());
    if (head == "group") {
      if (t.size() != 1) fail("expected 'group NAME'");
      if (db_.index.count(t[0])) fail("group '" + t[0] + "' redeclared");
      db_.add_group(t[0]);
    } else if (head == "property") {
      property(t);
    } else if (head == "relation") {
      relation(t);
    } else if (head == "query") {
      query(t);
    } else {
      fail("unknown statement '" + head + "'");
    }
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("inference", "line " + std::to_string(line_) + ": " + msg);
  }

  std::size_t group(const std::string& name) const {
    auto it = db_.index.find(name);
    if (it == db_.index.end()) fail("unknown group '" + name + "'");
    return it->second;
  }

  int degree(const std::string& s) const {
    if (s == "inf") return db_.inf();
    int v = 0;
    std::size_t used = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      fail("expected a degree, got '" + s + "'");
    }
    if (used != s.size() || v < 0) fail("expected a degree, got '" + s + "'");
    if (v > db_.cap) fail("degree " + s + " exceeds the cap " + std::to_string(db_.cap));
    return v;
  }

  struct Prop {
    Attr attr = Attr::Compact;
    std::optional<int> degree;
    std::string comparison;  // "", "<=", ">=" for cd_Q / hd_Q
  };

  // PROP [ARGS] [over RING]; consumes tokens from `t`.
  Prop prop(std::vector<std::string>& t) {
    if (t.empty()) fail("missing property");
    std::string name = t[0];
    t.erase(t.begin());
    if (auto us = name.find('_'); us != std::string::npos) {
      const std::string stem = name.substr(0, us);
      if (stem == "F" || stem == "FP" || stem == "KP" || stem == "K") {
        t.insert(t.begin(), name.substr(us + 1));
        name = stem;
      }
    }
    std::optional<char> ring;
    if (t.size() >= 2 && t[t.size() - 2] == "over") {
      const std::string& r = t.back();
      if (r == "Z" || r == "z") ring = 'Z';
      else if (r == "Q" || r == "q") ring = 'Q';
      else fail("unknown ring '" + r + "' (expected Z or Q)");
      t.resize(t.size() - 2);
    }
    Prop p;
    static const std::map<std::string, Attr, std::less<>> booleans = {
        {"compact", Attr::Compact},
        {"sigma_compact", Attr::SigmaCompact},
        {"compactly_generated", Attr::CompactlyGenerated},
        {"compactly_presented", Attr::CompactlyPresented},
        {"poly_compact_open_by_cyclic", Attr::PolyCompactOpenByCyclic},
    };
    if (auto it = booleans.find(name); it != booleans.end()) {
      if (ring) fail("property '" + name + "' takes no ring");
      if (!t.empty()) fail("property '" + name + "' takes no arguments");
      p.attr = it->second;
      return p;
    }
    const bool q = ring && *ring == 'Q';
    if (name == "F" || name == "K") {
      if (ring) fail("property '" + name + "' takes no ring");
    }
    if (name == "F" || name == "FP" || name == "KP" || name == "K") {
      if (t.size() > 1) fail("too many arguments for '" + name + "'");
      if (t.empty()) {
        if (name == "F") p.attr = Attr::TypeF;
        else if (name == "FP") p.attr = q ? Attr::TypeFP_Q : Attr::TypeFP_Z;
        else fail("property '" + name + "' needs a degree");
        return p;
      }
      p.degree = degree(t[0]);
      t.clear();
      if (name == "F") p.attr = Attr::F;
      else if (name == "K") p.attr = Attr::K;
      else if (name == "FP") p.attr = q ? Attr::FP_Q : Attr::FP_Z;
      else p.attr = q ? Attr::KP_Q : Attr::KP_Z;
      return p;
    }
    if (name == "cd_Q" || name == "hd_Q") {
      if (ring) fail("property '" + name + "' takes no ring");
      p.attr = name == "cd_Q" ? Attr::Cd : Attr::Hd;
      if (!t.empty() && (t[0] == "<=" || t[0] == ">=")) {
        p.comparison = t[0];
        t.erase(t.begin());
        if (t.empty()) fail("missing bound after '" + p.comparison + "'");
      }
      if (t.size() > 1) fail("too many arguments for '" + name + "'");
      if (!t.empty()) p.degree = degree(t[0]);
      if (!p.comparison.empty() && p.degree == db_.inf() && p.comparison == "<=")
        fail("'<= inf' carries no information");
      return p;
    }
    fail("unknown property '" + name + "'");
  }

  void property(std::vector<std::string> t) {
    if (t.size() < 2) fail("expected 'property NAME PROP'");
    const std::size_t g = group(t[0]);
    t.erase(t.begin());
    std::optional<bool> value;
    if (t.size() >= 2 && t[t.size() - 2] == "=") {
      value = boolean(t.back());
      t.resize(t.size() - 2);
    } else if (!t.empty() && t.back().size() > 1 && t.back()[0] == '=') {
      value = boolean(t.back().substr(1));
      t.pop_back();
    }
    Prop p = prop(t);
    const Key k{false, g, p.attr, 0};
    if (is_dimension(p.attr)) {
      if (value) fail("cd_Q/hd_Q take bounds, not '= true|false'");
      if (!p.degree) fail("cd_Q/hd_Q need a value");
      if (p.comparison != "<=") db_.given.push_back({k, Side::Lo, *p.degree});
      if (p.comparison != ">=" && *p.degree < db_.inf()) db_.given.push_back({k, Side::Hi, *p.degree});
      return;
    }
    const bool truth = value.value_or(true);
    if (is_boolean(p.attr)) {
      db_.given.push_back(truth ? Fact{k, Side::Lo, 1} : Fact{k, Side::Hi, 0});
    } else {
      const int n = *p.degree;
      db_.given.push_back(truth ? Fact{k, Side::Lo, n} : Fact{k, Side::Hi, n >= db_.inf() ? db_.cap : n - 1});
    }
  }

  bool boolean(const std::string& s) const {
    if (s == "true") return true;
    if (s == "false") return false;
    fail("expected true or false, got '" + s + "'");
  }

  void relation(std::vector<std::string> t) {
    if (t.empty()) fail("expected 'relation KIND NAME+'");
    const auto& table = kind_table();
    auto it = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.first == t[0]; });
    if (it == table.end()) fail("unknown relation kind '" + t[0] + "'");
    Relation rel{it->second, {}, line_};
    std::size_t i = 1;
    for (; i < t.size() && t[i].find('=') == std::string::npos; ++i) rel.args.push_back(group(t[i]));
    if (rel.args.size() != arity(rel.kind))
      fail("relation '" + t[0] + "' takes " + std::to_string(arity(rel.kind)) + " groups, got " +
           std::to_string(rel.args.size()));
    const std::size_t r = db_.relations.size();
    db_.relations.push_back(rel);
    for (; i < t.size(); ++i) {
      if (rel.kind != RelationKind::Wreath) fail("relation '" + t[0] + "' takes no parameters");
      const auto eq = t[i].find('=');
      if (eq == std::string::npos) fail("expected key=value, got '" + t[i] + "'");
      const std::string key = t[i].substr(0, eq), value = t[i].substr(eq + 1);
      if (key == "orbits") {
        db_.given.push_back({{true, r, Attr::Orbits, 0}, Side::Lo, degree(value)});
      } else if (key == "orbits_infinite") {
        const int p = degree(value);
        if (p < 1 || p >= db_.inf()) fail("orbits_infinite needs a power p >= 1");
        db_.given.push_back({{true, r, Attr::Orbits, 0}, Side::Hi, p - 1});
      } else if (key == "stab") {
        const auto colon = value.find(':');
        if (colon == std::string::npos) fail("expected stab=P:K or stab=all:K");
        const std::string ps = value.substr(0, colon);
        const int p = ps == "all" ? 0 : degree(ps);
        if (ps != "all" && (p < 1 || p >= db_.inf())) fail("stabilizer power must be >= 1");
        db_.given.push_back({{true, r, Attr::Stab, p}, Side::Lo, degree(value.substr(colon + 1))});
      } else {
        fail("unknown wreath parameter '" + key + "'");
      }
    }
  }

  void query(std::vector<std::string> t) {
    if (t.size() < 2) fail("expected 'query NAME PROP'");
    Query q;
    q.line = line_;
    q.group = group(t[0]);
    t.erase(t.begin());
    Prop p = prop(t);
    if (!p.comparison.empty()) fail("queries take no comparison");
    q.attr = p.attr;
    q.degree = p.degree;
    db_.queries.push_back(q);
  }

  Database& db_;
  int line_ = 0;
};

std::string degree_text(const Database& db, int v) { return v >= db.inf() ? "inf" : std::to_string(v); }

std::string subject(const Database& db, const Key& k) {
  if (!k.relation) return db.groups.at(k.subject);
  const auto& rel = db.relations.at(k.subject);
  std::string s = std::string(kind_name(rel.kind)) + "(";
  for (std::size_t i = 0; i < rel.args.size(); ++i) s += (i ? ", " : "") + db.groups[rel.args[i]];
  return s + ")";
}

}  // namespace

std::string_view kind_name(RelationKind k) {
  for (const auto& [name, kind] : kind_table())
    if (kind == k) return name;
  return "?";
}

std::size_t Database::group(std::string_view name) const {
  auto it = index.find(name);
  if (it == index.end()) throw InputError("inference", "unknown group '" + std::string(name) + "'");
  return it->second;
}

std::size_t Database::add_group(const std::string& name) {
  if (index.count(name)) throw InputError("inference", "group '" + name + "' redeclared");
  index.emplace(name, groups.size());
  groups.push_back(name);
  return groups.size() - 1;
}

Database parse(std::string_view script, int cap) {
  if (cap < 1) throw InputError("inference", "cap must be positive");
  Database db;
  db.cap = cap;
  Parser p(db);
  std::istringstream in{std::string(script)};
  int number = 0;
  for (std::string text; std::getline(in, text);) p.line(++number, text);
  return db;
}

std::string describe(const Database& db, const Fact& f) {
  const Key& k = f.key;
  std::string s = subject(db, k) + ": ";
  if (is_boolean(k.attr)) return s + (f.side == Side::Hi ? "not " : "") + std::string(bool_name(k.attr));
  if (is_dimension(k.attr)) {
    const std::string name = k.attr == Attr::Cd ? "cd_Q" : "hd_Q";
    if (f.side == Side::Lo) return s + name + (f.value >= db.inf() ? " = inf" : " >= " + std::to_string(f.value));
    return s + name + " <= " + std::to_string(f.value);
  }
  if (k.attr == Attr::Orbits) {
    if (f.side == Side::Lo) return s + "finitely many orbits on X^p for p <= " + degree_text(db, f.value);
    return s + "infinitely many orbits on X^" + degree_text(db, f.value + 1);
  }
  if (k.attr == Attr::Stab) {
    const std::string where = k.param == 0 ? "every X^p" : "X^" + std::to_string(k.param);
    return s + "stabilizers on " + where + " of type FP_" + degree_text(db, f.value) + " over Z";
  }
  const auto [stem, ring] = graded_name(k.attr);
  if (f.side == Side::Lo) return s + std::string(stem) + "_" + degree_text(db, f.value) + std::string(ring);
  return s + "not " + std::string(stem) + "_" + degree_text(db, f.value + 1) + std::string(ring);
}

std::string describe(const Database& db, const Query& q) {
  std::string s = db.groups.at(q.group) + " ";
  if (is_boolean(q.attr)) return s + std::string(bool_name(q.attr));
  if (is_dimension(q.attr))
    return s + (q.attr == Attr::Cd ? "cd_Q" : "hd_Q") + (q.degree ? " = " + degree_text(db, *q.degree) : "");
  const auto [stem, ring] = graded_name(q.attr);
  return s + std::string(stem) + "_" + degree_text(db, q.degree.value_or(0)) + std::string(ring);
}

Bound Closure::bound(const Key& k) const {
  auto it = bounds_.find(k);
  return it == bounds_.end() ? Bound{0, db_->top(k.attr)} : it->second;
}

const Derivation* Closure::derivation(const Fact& f) const {
  auto it = by_fact_.find(f);
  return it == by_fact_.end() ? nullptr : &derivations_[it->second];
}

std::vector<const Derivation*> Closure::chain(const Fact& f) const {
  std::vector<const Derivation*> out;
  std::set<Fact> seen;
  // Iterative post-order walk over premises.
  std::vector<std::pair<Fact, bool>> stack{{f, false}};
  while (!stack.empty()) {
    auto [fact, expanded] = stack.back();
    stack.pop_back();
    const Derivation* d = derivation(fact);
    if (!d) continue;
    if (expanded) {
      out.push_back(d);
      continue;
    }
    if (!seen.insert(fact).second) continue;
    stack.push_back({fact, true});
    for (auto it = d->premises.rbegin(); it != d->premises.rend(); ++it)
      if (!seen.count(*it)) stack.push_back({*it, false});
  }
  return out;
}

std::vector<Contradiction> Closure::contradictions() const {
  std::vector<Contradiction> out;
  for (const auto& [k, b] : bounds_)
    if (b.lo > b.hi) out.push_back({k, {k, Side::Lo, b.lo}, {k, Side::Hi, b.hi}});
  return out;
}

class Engine {
 public:
  static Closure run(const Database& db, std::optional<std::uint64_t> seed) {
    Closure c;
    c.db_ = std::make_shared<const Database>(db);
    std::string rule = "given";
    std::size_t instance = 0;
    detail::Context ctx(db, c.bounds_, [&](const Fact& f, std::vector<Fact> premises) {
      std::vector<Fact> kept;
      for (const auto& p : premises) {
        const bool baseline = p.side == Side::Lo ? p.value <= 0 : p.value >= db.top(p.key.attr);
        if (!baseline && std::find(kept.begin(), kept.end(), p) == kept.end()) kept.push_back(p);
      }
      c.by_fact_.emplace(f, c.derivations_.size());
      c.derivations_.push_back({f, rule, citations().at(rule), std::move(kept), instance});
    });
    for (const auto& f : db.given) {
      if (f.side == Side::Lo) ctx.raise(f.key, f.value, {});
      else ctx.lower(f.key, f.value, {});
    }
    const auto instances = detail::instantiate(db);
    std::vector<std::size_t> order(instances.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed.value_or(0));
    do {
      ++c.passes_;
      ctx.changed = false;
      if (seed) std::shuffle(order.begin(), order.end(), rng);
      for (std::size_t i : order) {
        rule = instances[i].rule;
        instance = i;
        instances[i].fire(ctx);
      }
    } while (ctx.changed);
    return c;
  }

  static bool replay(const Closure& c, const Derivation& d) {
    const Database& db = c.database();
    if (d.rule == "given") return std::find(db.given.begin(), db.given.end(), d.fact) != db.given.end();
    const auto instances = detail::instantiate(db);
    if (d.instance >= instances.size() || instances[d.instance].rule != d.rule) return false;
    std::map<Key, Bound> bounds;
    detail::Context ctx(db, bounds, nullptr);
    for (const auto& p : d.premises) {
      if (p.side == Side::Lo) ctx.raise(p.key, p.value, {});
      else ctx.lower(p.key, p.value, {});
    }
    instances[d.instance].fire(ctx);
    return d.fact.side == Side::Lo ? ctx.lo(d.fact.key) >= d.fact.value : ctx.hi(d.fact.key) <= d.fact.value;
  }
};

Closure close(const Database& db, std::optional<std::uint64_t> seed) { return Engine::run(db, seed); }

bool replay(const Closure& c, const Derivation& d) { return Engine::replay(c, d); }

std::vector<std::string> rule_instances(const Database& db) {
  std::vector<std::string> out;
  for (const auto& r : detail::instantiate(db)) out.push_back(r.rule);
  return out;
}

std::string_view answer_name(Answer a) {
  switch (a) {
    case Answer::True: return "true";
    case Answer::False: return "false";
    case Answer::Unknown: return "unknown";
    case Answer::Contradictory: return "contradictory";
  }
  return "?";
}

QueryResult query(const Closure& c, const Query& q) {
  const Database& db = c.database();
  QueryResult r;
  r.query = q;
  const Key k{false, q.group, q.attr, 0};
  r.bound = c.bound(k);
  const Fact lo{k, Side::Lo, r.bound.lo}, hi{k, Side::Hi, r.bound.hi};
  bool yes = false, no = false;
  if (is_dimension(q.attr)) {
    if (q.degree) {
      yes = r.bound.lo == *q.degree && r.bound.hi == *q.degree;
      if (*q.degree >= db.inf()) yes = r.bound.lo >= db.inf();
      no = *q.degree < r.bound.lo || *q.degree > r.bound.hi;
    } else {
      yes = r.bound.lo == r.bound.hi || r.bound.lo >= db.inf();
    }
  } else {
    const int n = is_boolean(q.attr) ? 1 : q.degree.value_or(0);
    yes = r.bound.lo >= n;
    no = r.bound.hi < n;
  }
  r.answer = yes && no ? Answer::Contradictory : yes ? Answer::True : no ? Answer::False : Answer::Unknown;
  auto append = [&](const Fact& f) {
    for (const Derivation* d : c.chain(f))
      if (std::find(r.chain.begin(), r.chain.end(), d) == r.chain.end()) r.chain.push_back(d);
  };
  if (is_dimension(q.attr)) {
    append(lo);
    append(hi);
  } else {
    if (yes) append(lo);
    if (no) append(hi);
  }
  return r;
}

QueryResult query(const Closure& c, std::string_view group, Attr attr, std::optional<int> degree) {
  return query(c, Query{c.database().group(group), attr, degree, 0});
}

namespace {

std::string line_for(const Database& db, const Derivation& d) {
  std::string s = describe(db, d.fact) + "  [" + d.rule;
  if (!d.citation.empty()) s += ", " + d.citation;
  s += "]";
  if (!d.premises.empty()) {
    s += " from ";
    for (std::size_t i = 0; i < d.premises.size(); ++i) s += (i ? "; " : "") + describe(db, d.premises[i]);
  }
  return s;
}

std::string bound_text(const Database& db, const Bound& b) {
  return "[" + degree_text(db, b.lo) + ", " + degree_text(db, b.hi) + "]";
}

}  // namespace

std::string report_text(const Closure& c) {
  const Database& db = c.database();
  std::ostringstream out;
  out << "groups:";
  for (const auto& g : db.groups) out << ' ' << g;
  out << "\nderived:\n";
  std::size_t derived = 0;
  for (const auto& d : c.derivations())
    if (d.rule != "given") {
      out << "  " << line_for(db, d) << '\n';
      ++derived;
    }
  if (derived == 0) out << "  (nothing)\n";
  if (!db.queries.empty()) out << "queries:\n";
  for (const auto& q : db.queries) {
    const auto r = query(c, q);
    out << "  " << describe(db, q) << ": " << answer_name(r.answer);
    if (is_dimension(q.attr)) out << ' ' << bound_text(db, r.bound);
    out << '\n';
    for (const Derivation* d : r.chain) out << "    " << line_for(db, *d) << '\n';
  }
  const auto bad = c.contradictions();
  out << "contradictions: " << (bad.empty() ? "none" : std::to_string(bad.size())) << '\n';
  for (const auto& x : bad) {
    out << "  " << describe(db, x.lo) << " vs " << describe(db, x.hi) << '\n';
    std::vector<const Derivation*> both;
    for (const Fact& f : {x.lo, x.hi})
      for (const Derivation* d : c.chain(f))
        if (std::find(both.begin(), both.end(), d) == both.end()) both.push_back(d);
    for (const Derivation* d : both) out << "    " << line_for(db, *d) << '\n';
  }
  return out.str();
}

std::string report_json(const Closure& c) {
  using nlohmann::ordered_json;
  const Database& db = c.database();
  auto derivation = [&](const Derivation& d) {
    ordered_json j;
    j["fact"] = describe(db, d.fact);
    j["rule"] = d.rule;
    j["citation"] = d.citation;
    j["premises"] = ordered_json::array();
    for (const auto& p : d.premises) j["premises"].push_back(describe(db, p));
    return j;
  };
  ordered_json j;
  j["groups"] = db.groups;
  j["derived"] = ordered_json::array();
  for (const auto& d : c.derivations())
    if (d.rule != "given") j["derived"].push_back(derivation(d));
  j["queries"] = ordered_json::array();
  for (const auto& q : db.queries) {
    const auto r = query(c, q);
    ordered_json e;
    e["query"] = describe(db, q);
    e["answer"] = answer_name(r.answer);
    if (is_dimension(q.attr)) e["bounds"] = {degree_text(db, r.bound.lo), degree_text(db, r.bound.hi)};
    e["chain"] = ordered_json::array();
    for (const Derivation* d : r.chain) e["chain"].push_back(derivation(*d));
    j["queries"].push_back(e);
  }
  j["contradictions"] = ordered_json::array();
  for (const auto& x : c.contradictions()) {
    ordered_json e;
    e["lo"] = describe(db, x.lo);
    e["hi"] = describe(db, x.hi);
    for (const char* side : {"lo_chain", "hi_chain"}) {
      e[side] = ordered_json::array();
      for (const Derivation* d : c.chain(side[0] == 'l' ? x.lo : x.hi)) e[side].push_back(derivation(*d));
    }
    j["contradictions"].push_back(e);
  }
  return j.dump(2) + "\n";
}

}  // namespace tdlc::inference
