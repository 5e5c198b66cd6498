// The rule catalogue. Each rule reads bounds, tightens bounds, and names the
// facts it read as premises. Contrapositives are written out next to the
// rule they come from and carry its identifier.

#include <algorithm>
#include <map>
#include <set>

#include "inference_internal.hpp"

namespace tdlc::inference {

namespace {

using detail::Context;
using detail::RuleInstance;

constexpr Attr kGraded[] = {Attr::F, Attr::FP_Z, Attr::FP_Q};

Key gk(std::size_t g, Attr a) { return {false, g, a, 0}; }
Key rk(std::size_t r, Attr a, int p = 0) { return {true, r, a, p}; }

int inc(const Context& c, int v) { return v >= c.inf() ? v : std::min(v + 1, c.cap()); }

void copy_lo(Context& c, const Key& from, const Key& to) { c.raise(to, c.lo(from), {c.lo_fact(from)}); }
void copy_hi(Context& c, const Key& from, const Key& to) { c.lower(to, c.hi(from), {c.hi_fact(from)}); }

void equal(Context& c, const Key& a, const Key& b) {
  copy_lo(c, a, b);
  copy_lo(c, b, a);
  copy_hi(c, a, b);
  copy_hi(c, b, a);
}

bool is_true(const Context& c, const Key& k) { return c.lo(k) >= 1; }
bool is_false(const Context& c, const Key& k) { return c.hi(k) <= 0; }

// ---- per-group rules ----

void r0_compact(Context& c, std::size_t s) {
  const Key cpt = gk(s, Attr::Compact);
  if (is_true(c, cpt)) {
    for (Attr a : kGraded) c.raise(gk(s, a), c.inf(), {c.lo_fact(cpt)});
    // The point is a finite model.
    for (Attr a : {Attr::TypeF, Attr::TypeFP_Z, Attr::TypeFP_Q}) c.raise(gk(s, a), 1, {c.lo_fact(cpt)});
    c.lower(gk(s, Attr::Cd), 0, {c.lo_fact(cpt)});
    c.raise(gk(s, Attr::SigmaCompact), 1, {c.lo_fact(cpt)});
  }
  for (Attr a : kGraded)
    if (c.hi(gk(s, a)) < c.inf()) c.lower(cpt, 0, {c.hi_fact(gk(s, a))});
  if (c.lo(gk(s, Attr::Cd)) >= 1) c.lower(cpt, 0, {c.lo_fact(gk(s, Attr::Cd))});
  if (is_false(c, gk(s, Attr::SigmaCompact))) c.lower(cpt, 0, {c.hi_fact(gk(s, Attr::SigmaCompact))});
}

void r1_low_degrees(Context& c, std::size_t s) {
  const Key f = gk(s, Attr::F);
  const std::pair<int, Attr> pairs[] = {{1, Attr::CompactlyGenerated}, {2, Attr::CompactlyPresented}};
  for (const auto& [n, attr] : pairs) {
    const Key b = gk(s, attr);
    if (c.lo(f) >= n) c.raise(b, 1, {c.lo_fact(f)});
    if (is_true(c, b)) c.raise(f, n, {c.lo_fact(b)});
    if (c.hi(f) < n) c.lower(b, 0, {c.hi_fact(f)});
    if (is_false(c, b)) c.lower(f, n - 1, {c.hi_fact(b)});
  }
}

void definitional(Context& c, std::size_t s) {
  const std::pair<Attr, Attr> pairs[] = {
      {Attr::TypeF, Attr::F}, {Attr::TypeFP_Z, Attr::FP_Z}, {Attr::TypeFP_Q, Attr::FP_Q}};
  for (const auto& [type, graded] : pairs) {
    const Key t = gk(s, type), g = gk(s, graded);
    if (is_true(c, t)) c.raise(g, c.inf(), {c.lo_fact(t)});
    if (c.hi(g) < c.inf()) c.lower(t, 0, {c.hi_fact(g)});
  }
}

void r2_f_to_fp(Context& c, std::size_t s) {
  for (Attr fp : {Attr::FP_Z, Attr::FP_Q}) {
    copy_lo(c, gk(s, Attr::F), gk(s, fp));
    copy_hi(c, gk(s, fp), gk(s, Attr::F));
  }
}

void r3_presented(Context& c, std::size_t s) {
  const Key cp = gk(s, Attr::CompactlyPresented), f = gk(s, Attr::F), fp = gk(s, Attr::FP_Z);
  if (is_true(c, cp)) {
    c.raise(f, c.lo(fp), {c.lo_fact(fp), c.lo_fact(cp)});
    c.lower(fp, c.hi(f), {c.hi_fact(f), c.lo_fact(cp)});
  }
  if (c.lo(fp) > c.hi(f)) c.lower(cp, 0, {c.lo_fact(fp), c.hi_fact(f)});
}

void r4_kp(Context& c, std::size_t s) {
  equal(c, gk(s, Attr::FP_Z), gk(s, Attr::KP_Z));
  equal(c, gk(s, Attr::FP_Q), gk(s, Attr::KP_Q));
}

void r5_rings(Context& c, std::size_t s) {
  copy_lo(c, gk(s, Attr::FP_Z), gk(s, Attr::FP_Q));
  copy_hi(c, gk(s, Attr::FP_Q), gk(s, Attr::FP_Z));
  copy_lo(c, gk(s, Attr::TypeFP_Z), gk(s, Attr::TypeFP_Q));
  copy_hi(c, gk(s, Attr::TypeFP_Q), gk(s, Attr::TypeFP_Z));
}

void r16_dimensions(Context& c, std::size_t s) {
  const Key cd = gk(s, Attr::Cd), hd = gk(s, Attr::Hd);
  copy_hi(c, cd, hd);
  copy_lo(c, hd, cd);
  const Key sigma = gk(s, Attr::SigmaCompact);
  if (is_true(c, sigma)) {
    if (c.hi(hd) < c.inf()) c.lower(cd, c.hi(hd) + 1, {c.hi_fact(hd), c.lo_fact(sigma)});
    if (c.lo(cd) >= 1) c.raise(hd, c.lo(cd) >= c.inf() ? c.inf() : c.lo(cd) - 1, {c.lo_fact(cd), c.lo_fact(sigma)});
  }
  if (c.hi(hd) < c.inf() && c.lo(cd) > c.hi(hd) + 1) c.lower(sigma, 0, {c.lo_fact(cd), c.hi_fact(hd)});
  const Key fp = gk(s, Attr::FP_Q);
  if (c.lo(fp) >= c.inf()) {
    c.lower(cd, c.hi(hd), {c.hi_fact(hd), c.lo_fact(fp)});
    c.raise(hd, c.lo(cd), {c.lo_fact(cd), c.lo_fact(fp)});
  }
  if (c.lo(cd) > c.hi(hd)) c.lower(fp, c.cap(), {c.lo_fact(cd), c.hi_fact(hd)});
}

void r18_k(Context& c, std::size_t s) {
  copy_lo(c, gk(s, Attr::F), gk(s, Attr::K));
  copy_hi(c, gk(s, Attr::K), gk(s, Attr::F));
}

// ---- relation rules ----

void r6_extension(Context& c, std::size_t n_, std::size_t g_, std::size_t q_) {
  for (Attr a : kGraded) {
    const Key n = gk(n_, a), g = gk(g_, a), q = gk(q_, a);
    c.raise(g, std::min(c.lo(n), c.lo(q)), {c.lo_fact(n), c.lo_fact(q)});
    c.raise(q, std::min(inc(c, c.lo(n)), c.lo(g)), {c.lo_fact(n), c.lo_fact(g)});
    if (c.lo(n) > c.hi(g)) c.lower(q, c.hi(g), {c.lo_fact(n), c.hi_fact(g)});
    if (c.lo(q) > c.hi(g)) c.lower(n, c.hi(g), {c.lo_fact(q), c.hi_fact(g)});
    if (c.lo(g) > c.hi(q) && c.hi(q) >= 1) c.lower(n, c.hi(q) - 1, {c.lo_fact(g), c.hi_fact(q)});
    if (inc(c, c.lo(n)) > c.hi(q)) c.lower(g, c.hi(q), {c.lo_fact(n), c.hi_fact(q)});
  }
}

void r17_subadditive(Context& c, std::size_t n_, std::size_t g_, std::size_t q_) {
  for (Attr a : {Attr::Cd, Attr::Hd}) {
    const Key n = gk(n_, a), g = gk(g_, a), q = gk(q_, a);
    if (c.hi(n) < c.inf() && c.hi(q) < c.inf() && c.hi(n) + c.hi(q) <= c.cap())
      c.lower(g, c.hi(n) + c.hi(q), {c.hi_fact(n), c.hi_fact(q)});
    const std::pair<Key, Key> sides[] = {{n, q}, {q, n}};
    for (const auto& [target, other] : sides) {
      if (c.hi(other) >= c.inf() || c.lo(g) == 0) continue;
      int v = c.lo(g) >= c.inf() ? c.inf() : c.lo(g) - c.hi(other);
      if (v > 0) c.raise(target, v, {c.lo_fact(g), c.hi_fact(other)});
    }
  }
}

void r_equivalent(Context& c, std::size_t a, std::size_t b) {
  for (Attr attr : kGraded) equal(c, gk(a, attr), gk(b, attr));
}

void r9_quasi_retract(Context& c, std::size_t g_, std::size_t g2_) {
  for (Attr a : kGraded) {
    const Key g = gk(g_, a), g2 = gk(g2_, a);
    if (c.lo(g2) >= 2) c.raise(g, c.lo(g2), {c.lo_fact(g2)});
    if (c.hi(g) < c.inf()) c.lower(g2, std::max(c.hi(g), 1), {c.hi_fact(g)});
  }
}

void r11_group_retract(Context& c, std::size_t h_, std::size_t g_) {
  const Key h = gk(h_, Attr::CompactlyPresented), g = gk(g_, Attr::CompactlyPresented);
  if (is_true(c, g)) c.raise(h, 1, {c.lo_fact(g)});
  if (is_false(c, h)) c.lower(g, 0, {c.hi_fact(h)});
}

// Stabilizers on X^p have type FP_{stab(p)}.
int stab(const Context& c, std::size_t r, int p, std::set<Fact>* used) {
  const Key each = rk(r, Attr::Stab, p), all = rk(r, Attr::Stab, 0);
  const Key& best = c.lo(each) >= c.lo(all) ? each : all;
  if (used && c.lo(best) > 0) used->insert(c.lo_fact(best));
  return c.lo(best);
}

// stab(p) >= n - p for 1 <= p <= upto; n and upto may be inf.
bool stabilizers_ok(const Context& c, std::size_t r, int n, int upto, std::set<Fact>& used) {
  const int last = std::min(upto, c.cap());
  for (int p = 1; p <= last; ++p) {
    const int need = n >= c.inf() ? c.inf() : n - p;
    if (need <= 0) continue;
    if (stab(c, r, p, nullptr) < need) return false;
    stab(c, r, p, &used);
  }
  return true;
}

std::vector<Fact> with(std::vector<Fact> v, const std::set<Fact>& more) {
  v.insert(v.end(), more.begin(), more.end());
  return v;
}

void r12_wreath_sufficient(Context& c, std::size_t r, std::size_t g_, std::size_t b_, std::size_t h_) {
  const Key fb = gk(b_, Attr::F), fh = gk(h_, Attr::F), orb = rk(r, Attr::Orbits);
  const int bound = std::min({c.lo(fb), c.lo(fh), c.lo(orb)});
  for (int n = bound; n >= 1; n = n >= c.inf() ? c.cap() : n - 1) {
    std::set<Fact> used;
    if (!stabilizers_ok(c, r, n, n, used)) continue;
    c.raise(gk(g_, Attr::F), n, with({c.lo_fact(fb), c.lo_fact(fh), c.lo_fact(orb)}, used));
    return;
  }
}

void r13_wreath_necessary(Context& c, std::size_t r, std::size_t g_, std::size_t b_, std::size_t h_) {
  const Key orb = rk(r, Attr::Orbits);
  const std::pair<Attr, int> levels[] = {{Attr::CompactlyGenerated, 1}, {Attr::CompactlyPresented, 2}};
  for (const auto& [attr, n] : levels) {
    const Key g = gk(g_, attr), b = gk(b_, attr), h = gk(h_, attr);
    if (is_true(c, g)) {
      c.raise(b, 1, {c.lo_fact(g)});
      c.raise(h, 1, {c.lo_fact(g)});
      c.raise(orb, n, {c.lo_fact(g)});
      // compactly generated point stabilizers, recorded as FP_1 over Z
      if (n == 2) c.raise(rk(r, Attr::Stab, 1), 1, {c.lo_fact(g)});
    }
    if (is_false(c, b)) c.lower(g, 0, {c.hi_fact(b)});
    if (is_false(c, h)) c.lower(g, 0, {c.hi_fact(h)});
    if (c.hi(orb) < n) c.lower(g, 0, {c.hi_fact(orb)});
  }
}

void r14_wreath_higher(Context& c, std::size_t r, std::size_t g_, std::size_t b_, std::size_t h_) {
  const Key fg = gk(g_, Attr::F), orb = rk(r, Attr::Orbits);
  for (int n = c.lo(fg); n >= 1; n = n >= c.inf() ? c.cap() : n - 1) {
    std::set<Fact> used;
    if (!stabilizers_ok(c, r, n, n >= c.inf() ? c.inf() : n - 1, used)) continue;
    const auto premises = with({c.lo_fact(fg)}, used);
    c.raise(gk(b_, Attr::F), n, premises);
    c.raise(gk(h_, Attr::F), n, premises);
    c.raise(orb, n, premises);
    break;
  }
  for (const Key& k : {gk(b_, Attr::F), gk(h_, Attr::F), orb}) {
    if (c.hi(k) >= c.inf()) continue;
    const int n = c.hi(k) + 1;  // fails in degree n
    std::set<Fact> used;
    if (n >= 1 && stabilizers_ok(c, r, n, n - 1, used)) c.lower(fg, n - 1, with({c.hi_fact(k)}, used));
  }
}

void r15_poly_cyclic(Context& c, std::size_t r, std::size_t g_, std::size_t b_, std::size_t h_) {
  const Key poly = gk(h_, Attr::PolyCompactOpenByCyclic);
  if (!is_true(c, poly)) return;
  const Key fg = gk(g_, Attr::F), fb = gk(b_, Attr::F), orb = rk(r, Attr::Orbits);
  const Fact p = c.lo_fact(poly);
  c.raise(fg, std::min(c.lo(fb), c.lo(orb)), {c.lo_fact(fb), c.lo_fact(orb), p});
  c.raise(fb, c.lo(fg), {c.lo_fact(fg), p});
  c.raise(orb, c.lo(fg), {c.lo_fact(fg), p});
  c.lower(fg, c.hi(fb), {c.hi_fact(fb), p});
  c.lower(fg, c.hi(orb), {c.hi_fact(orb), p});
  if (c.lo(fb) > c.hi(fg)) c.lower(orb, c.hi(fg), {c.lo_fact(fb), c.hi_fact(fg), p});
  if (c.lo(orb) > c.hi(fg)) c.lower(fb, c.hi(fg), {c.lo_fact(orb), c.hi_fact(fg), p});
}

void presupposes_generation(Context& c, std::size_t a, std::size_t b) {
  c.raise(gk(a, Attr::CompactlyGenerated), 1, {});
  c.raise(gk(b, Attr::CompactlyGenerated), 1, {});
}

}  // namespace

const std::map<std::string, std::string>& citations() {
  static const std::map<std::string, std::string> table = {
      {"R0", "Sec ss:perm"},
      {"R1", "Prop prop:typeF2"},
      {"R2", "Sec s:comparison"},
      {"R3", "Prop prop:FvsFP"},
      {"R4", "Thm fpnkpn"},
      {"R5", "Sec s:comparison"},
      {"R6", "Thm thm:LHS"},
      {"R7", "Lem lem:cominvariant"},
      {"R8", "Cor cor:qi"},
      {"R9", "Thm thm:quasiretract"},
      {"R10", "Prop prop:ulattice"},
      {"R11", "Cor cor:retract"},
      {"R12", "Thm PeterA"},
      {"R13", "Thm F2necessary"},
      {"R14", "Thm PeterB"},
      {"R15", "Thm poly-(compact-open-by-cyclic) wreath"},
      {"R16", "Sec hdcd"},
      {"R17", "Prop hdcd subadditivity"},
      {"R18", "Thm thm:fnkn"},
      {"DEF", "Def s:comparison"},
      {"given", ""},
  };
  return table;
}

namespace detail {

std::vector<RuleInstance> instantiate(const Database& db) {
  std::vector<RuleInstance> out;
  for (std::size_t s = 0; s < db.groups.size(); ++s) {
    out.push_back({"R0", [s](Context& c) { r0_compact(c, s); }});
    out.push_back({"R1", [s](Context& c) { r1_low_degrees(c, s); }});
    out.push_back({"DEF", [s](Context& c) { definitional(c, s); }});
    out.push_back({"R2", [s](Context& c) { r2_f_to_fp(c, s); }});
    out.push_back({"R3", [s](Context& c) { r3_presented(c, s); }});
    out.push_back({"R4", [s](Context& c) { r4_kp(c, s); }});
    out.push_back({"R5", [s](Context& c) { r5_rings(c, s); }});
    out.push_back({"R16", [s](Context& c) { r16_dimensions(c, s); }});
    out.push_back({"R18", [s](Context& c) { r18_k(c, s); }});
  }
  for (std::size_t r = 0; r < db.relations.size(); ++r) {
    const auto& rel = db.relations[r];
    const auto& a = rel.args;
    switch (rel.kind) {
      case RelationKind::Extension:
        out.push_back({"R6", [n = a[0], g = a[1], q = a[2]](Context& c) { r6_extension(c, n, g, q); }});
        out.push_back({"R17", [n = a[0], g = a[1], q = a[2]](Context& c) { r17_subadditive(c, n, g, q); }});
        break;
      case RelationKind::ClosedCocompactSubgroup:
      case RelationKind::OpenFiniteIndex:
        out.push_back({"R7", [x = a[0], y = a[1]](Context& c) { r_equivalent(c, x, y); }});
        break;
      case RelationKind::UniformLattice:
        out.push_back({"R10", [x = a[0], y = a[1]](Context& c) { r_equivalent(c, x, y); }});
        break;
      case RelationKind::QuasiIsometric:
        out.push_back({"R8", [x = a[0], y = a[1]](Context& c) {
                         presupposes_generation(c, x, y);
                         r_equivalent(c, x, y);
                       }});
        break;
      case RelationKind::QuasiRetract:
        out.push_back({"R9", [x = a[0], y = a[1]](Context& c) {
                         presupposes_generation(c, x, y);
                         r9_quasi_retract(c, x, y);
                       }});
        break;
      case RelationKind::GroupRetract:
        out.push_back({"R11", [x = a[0], y = a[1]](Context& c) { r11_group_retract(c, x, y); }});
        break;
      case RelationKind::Wreath:
        out.push_back({"R12", [r, g = a[0], b = a[1], h = a[2]](Context& c) { r12_wreath_sufficient(c, r, g, b, h); }});
        out.push_back({"R13", [r, g = a[0], b = a[1], h = a[2]](Context& c) { r13_wreath_necessary(c, r, g, b, h); }});
        out.push_back({"R14", [r, g = a[0], b = a[1], h = a[2]](Context& c) { r14_wreath_higher(c, r, g, b, h); }});
        out.push_back({"R15", [r, g = a[0], b = a[1], h = a[2]](Context& c) { r15_poly_cyclic(c, r, g, b, h); }});
        break;
      case RelationKind::NormalClosed:
        break;
    }
  }
  return out;
}

}  // namespace detail
}  // namespace tdlc::inference
