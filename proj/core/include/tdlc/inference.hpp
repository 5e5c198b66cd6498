#pragma once

// Forward-chaining inference over group diagrams.
//
// Every piece of knowledge is a bound on a key: lo <= v <= hi. A boolean
// property has v in {0, 1}; a graded property (F_n, FP_n, ...) has
// v = sup{n : the group has the property in degree n} in {0..cap, inf};
// cd_Q and hd_Q are their own values. Rules only tighten bounds, so the
// closure is the least fixpoint and does not depend on firing order. A
// contradiction is a key with lo > hi.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tdlc::inference {

inline constexpr int kDefaultCap = 64;

enum class Attr : std::uint8_t {
  Compact,
  SigmaCompact,
  CompactlyGenerated,
  CompactlyPresented,
  PolyCompactOpenByCyclic,
  TypeF,     // finite-length version of F_n
  TypeFP_Z,  // finite-length version of FP_n
  TypeFP_Q,
  F,
  FP_Z,
  FP_Q,
  KP_Z,
  KP_Q,
  K,
  Cd,
  Hd,
  Orbits,  // wreath relation: finitely many H-orbits on X^p for p <= v
  Stab,    // wreath relation: stabilizers on X^param have type FP_v over Z; param 0 = every p
};

bool is_boolean(Attr a);

enum class RelationKind : std::uint8_t {
  Extension,                // N G Q
  ClosedCocompactSubgroup,  // H G
  OpenFiniteIndex,          // H G
  UniformLattice,           // Gamma G
  QuasiIsometric,           // G H
  QuasiRetract,             // G G2: G is a quasi-retract of G2
  GroupRetract,             // H G
  Wreath,                   // G B H: G = B wr_X^A H
  NormalClosed,             // N G
};

std::string_view kind_name(RelationKind k);

struct Key {
  bool relation = false;  // subject indexes relations instead of groups
  std::size_t subject = 0;
  Attr attr = Attr::Compact;
  int param = 0;

  auto operator<=>(const Key&) const = default;
};

enum class Side : std::uint8_t { Lo, Hi };

struct Fact {
  Key key;
  Side side = Side::Lo;
  int value = 0;

  auto operator<=>(const Fact&) const = default;
};

struct Relation {
  RelationKind kind;
  std::vector<std::size_t> args;
  int line = 0;
};

struct Query {
  std::size_t group = 0;
  Attr attr = Attr::Compact;
  std::optional<int> degree;  // graded properties
  int line = 0;
};

struct Database {
  int cap = kDefaultCap;
  std::vector<std::string> groups;
  std::map<std::string, std::size_t, std::less<>> index;
  std::vector<Relation> relations;
  std::vector<Fact> given;
  std::vector<Query> queries;

  int inf() const { return cap + 1; }
  int top(Attr a) const { return is_boolean(a) ? 1 : inf(); }
  std::size_t group(std::string_view name) const;  // InputError if undeclared
  std::size_t add_group(const std::string& name);  // InputError on redeclaration
};

// Line-oriented DSL:
//   group NAME
//   property NAME PROP [ARGS] [over Z|Q] [= true|false]
//   relation KIND NAME+ [key=value ...]
//   query NAME PROP [ARGS] [over Z|Q]
// `#` starts a comment. Errors name the offending line.
Database parse(std::string_view script, int cap = kDefaultCap);

struct Derivation {
  Fact fact;
  std::string rule;  // "given" for declared facts
  std::string citation;
  std::vector<Fact> premises;
  std::size_t instance = 0;  // rule instance that fired; unused for given facts
};

struct Bound {
  int lo = 0;
  int hi = 0;
};

struct Contradiction {
  Key key;
  Fact lo;
  Fact hi;
};

class Closure {
 public:
  const Database& database() const { return *db_; }
  Bound bound(const Key& k) const;
  const std::map<Key, Bound>& bounds() const { return bounds_; }
  const std::vector<Derivation>& derivations() const { return derivations_; }
  // Derivation that established `f`, if any (baseline facts have none).
  const Derivation* derivation(const Fact& f) const;
  // Derivation of `f` and, transitively, of its premises; premises first.
  std::vector<const Derivation*> chain(const Fact& f) const;
  std::vector<Contradiction> contradictions() const;
  std::size_t passes() const { return passes_; }

 private:
  friend class Engine;
  std::shared_ptr<const Database> db_;  // a copy; closures outlive parse results
  std::map<Key, Bound> bounds_;
  std::vector<Derivation> derivations_;
  std::map<Fact, std::size_t> by_fact_;
  std::size_t passes_ = 0;
};

// Fixpoint of the rule catalogue. With a seed, rule instances fire in a
// pseudo-random order that is reshuffled every pass.
Closure close(const Database& db, std::optional<std::uint64_t> seed = std::nullopt);

// Re-fires the recorded rule on a database holding only the recorded
// premises and checks that the fact comes back.
bool replay(const Closure& c, const Derivation& d);

// Number of rule instances for `db` and their rule identifiers.
std::vector<std::string> rule_instances(const Database& db);

enum class Answer : std::uint8_t { True, False, Unknown, Contradictory };
std::string_view answer_name(Answer a);

struct QueryResult {
  Query query;
  Answer answer = Answer::Unknown;
  Bound bound;  // for cd_Q / hd_Q
  std::vector<const Derivation*> chain;
};

QueryResult query(const Closure& c, const Query& q);
QueryResult query(const Closure& c, std::string_view group, Attr attr, std::optional<int> degree = std::nullopt);

std::string describe(const Database& db, const Fact& f);
std::string describe(const Database& db, const Query& q);
std::string report_text(const Closure& c);
std::string report_json(const Closure& c);

// Rule identifier -> citation string.
const std::map<std::string, std::string>& citations();

}  // namespace tdlc::inference
