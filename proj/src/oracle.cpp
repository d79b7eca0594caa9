#include "powemb/oracle.hpp"

#include <array>
#include <sstream>

namespace powemb {

namespace {

constexpr std::array<std::string_view, kRuleCount> kRuleNames = {
    "TRIVIAL_13",        "SUBCRITICAL_14",    "SHARP_15",     "F_SUFFICIENT_17", "H_CHAR_110",
    "PQ_SWAP_114",       "NEC_42",            "NEC_STRICT_45", "SANDWICH_BF",    "SANDWICH_HW",
    "JAWERTH_FRANKE_62", "JAWERTH_FRANKE_63", "LP_TARGET_71", "LP_TARGET_72",    "HOLDER_73",
    "Q_NECESSITY",       "F_SHARP_NEC_55",    "OPEN_REGIME",
};

bool is_hw(Family f) { return f == Family::BesselPotential || f == Family::Sobolev; }

// Both sides of a candidate embedding with their derived indices.
struct Pair {
  SpaceSpec src, tgt;
  DerivedIndices i0, i1;

  Pair(SpaceSpec a, SpaceSpec b) : src(std::move(a)), tgt(std::move(b)) {
    // ess sup is the same for every weight, so L^inf(|x|^g) = L^inf.
    if (src.p.is_infinite()) src.gamma = 0;
    if (tgt.p.is_infinite()) tgt.gamma = 0;
    i0 = indices(src);
    i1 = indices(tgt);
  }

  bool weight_ok() const { return i1.weight_index <= i0.weight_index; }
  bool dim_strict() const { return i1.dim_index < i0.dim_index; }
  bool dim_ok() const { return i1.dim_index <= i0.dim_index; }
  bool shifted_ge() const { return i0.shifted_smoothness >= i1.shifted_smoothness; }
  bool shifted_gt() const { return i0.shifted_smoothness > i1.shifted_smoothness; }
  bool shifted_eq() const { return i0.shifted_smoothness == i1.shifted_smoothness; }
  bool same_weight_and_p() const { return src.gamma == tgt.gamma && src.p == tgt.p; }
  bool p_swapped() const { return tgt.p < src.p; }
  bool q_le() const { return !src.q || !tgt.q || *src.q <= *tgt.q; }
  bool ap0() const { return !src.p.is_infinite() && in_ap_range(src.p, src.gamma, src.d); }
  bool ap1() const { return !tgt.p.is_infinite() && in_ap_range(tgt.p, tgt.gamma, tgt.d); }
};

std::string fmt_ineq(std::string_view lhs, const Rational& l, std::string_view op,
                     std::string_view rhs, const Rational& r, bool holds) {
  std::string out;
  out.reserve(64);
  out.append(lhs).append(" = ").append(rational_str(l)).append(" ").append(op).append(" ");
  out.append(rhs).append(" = ").append(rational_str(r)).append(holds ? " holds" : " fails");
  return out;
}

std::string weight_note(const Pair& x) {
  return fmt_ineq("g1/p1", x.i1.weight_index, "<=", "g0/p0", x.i0.weight_index, x.weight_ok());
}
std::string dim_note(const Pair& x, bool strict) {
  return fmt_ineq("(d+g1)/p1", x.i1.dim_index, strict ? "<" : "<=", "(d+g0)/p0", x.i0.dim_index,
                  strict ? x.dim_strict() : x.dim_ok());
}
std::string shifted_note(const Pair& x, std::string_view op) {
  bool holds = op == ">" ? x.shifted_gt() : op == "=" ? x.shifted_eq() : x.shifted_ge();
  return fmt_ineq("s0-(d+g0)/p0", x.i0.shifted_smoothness, op, "s1-(d+g1)/p1",
                  x.i1.shifted_smoothness, holds);
}
std::string q_note(const Pair& x) {
  std::ostringstream os;
  os << "q0 = " << (x.src.q ? x.src.q->str() : "-") << " <= q1 = "
     << (x.tgt.q ? x.tgt.q->str() : "-") << (x.q_le() ? " holds" : " fails");
  return os.str();
}
std::string join(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

// Remark on redundant conditions: p0 < p1 with the weight condition forces the
// strict dim-index inequality, and p1 < p0 with the strict dim-index
// inequality forces a strict weight inequality.
void audit_redundancy(const Pair& x) {
  if (x.src.p < x.tgt.p && x.weight_ok() && !x.dim_strict())
    throw std::logic_error("redundancy audit failed (p0 < p1): " + describe(x.src) + " -> " +
                           describe(x.tgt));
  if (x.tgt.p < x.src.p && x.dim_strict() && !(x.i1.weight_index < x.i0.weight_index))
    throw std::logic_error("redundancy audit failed (p1 < p0): " + describe(x.src) + " -> " +
                           describe(x.tgt));
}

bool trivial_13(const Pair& x) {
  if (!x.same_weight_and_p()) return false;
  if (x.src.s > x.tgt.s) return true;
  return x.src.s == x.tgt.s && x.q_le();
}

RuleCitation trivial_citation(const Pair& x) {
  std::ostringstream os;
  os << "g0 = g1 = " << rational_str(x.src.gamma) << ", p0 = p1 = " << x.src.p.str() << ", s0 = "
     << rational_str(x.src.s) << (x.src.s > x.tgt.s ? " > " : " = ") << "s1 = "
     << rational_str(x.tgt.s);
  if (x.src.s == x.tgt.s && x.src.q && x.tgt.q) os << ", " << q_note(x);
  return {Rule::TRIVIAL_13, os.str()};
}

// Necessary conditions valid for every pair of power weights: the shifted
// smoothness, dim-index and weight-index comparisons.
std::optional<RuleCitation> nec_42(const Pair& x) {
  if (!x.shifted_ge()) return RuleCitation{Rule::NEC_42, shifted_note(x, ">="), Violation::Shifted};
  if (!x.dim_ok()) return RuleCitation{Rule::NEC_42, dim_note(x, false), Violation::DimIndex};
  if (!x.weight_ok()) return RuleCitation{Rule::NEC_42, weight_note(x), Violation::WeightIndex};
  return std::nullopt;
}

// For p1 < p0 (p0 finite) equality of the dim indices is excluded.
std::optional<RuleCitation> nec_strict_45(const Pair& x) {
  if (x.p_swapped() && !x.src.p.is_infinite() && x.i1.dim_index == x.i0.dim_index) {
    return RuleCitation{Rule::NEC_STRICT_45, "p1 < p0 requires strict " + dim_note(x, true),
                        Violation::DimEqual};
  }
  return std::nullopt;
}

Verdict embeds(std::vector<RuleCitation> trace) { return {Outcome::Embeds, std::move(trace)}; }
Verdict fails(std::vector<RuleCitation> trace) { return {Outcome::DoesNotEmbed, std::move(trace)}; }
Verdict unknown(std::string note) { return {Outcome::Unknown, {{Rule::OPEN_REGIME, std::move(note)}}}; }

void require(const SpaceSpec& a, const SpaceSpec& b, Family fa, Family fb, std::string_view op) {
  if (a.family != fa || b.family != fb)
    throw FamilyError(std::string(op) + ": unexpected families " + describe(a) + " -> " +
                      describe(b));
  if (a.d != b.d) throw FamilyError(std::string(op) + ": dimension mismatch");
}

// Shared by H and W spaces, which obey the same decision table.
Verdict decide_hw_table(const Pair& x) {
  audit_redundancy(x);
  if (x.same_weight_and_p() && x.src.s == x.tgt.s) return embeds({trivial_citation(x)});

  if (x.ap0() && x.ap1()) {
    if (x.src.p <= x.tgt.p) {
      const std::string note = join({weight_note(x), shifted_note(x, ">=")});
      if (x.weight_ok() && x.shifted_ge()) return embeds({{Rule::H_CHAR_110, note}});
      auto nec = nec_42(x);
      if (!nec) throw std::logic_error("H table: (1.10) fails but no necessary condition does");
      return fails({*nec, {Rule::H_CHAR_110, note}});
    }
    const std::string note = join({dim_note(x, true), shifted_note(x, ">")});
    if (x.dim_strict() && x.shifted_gt()) return embeds({{Rule::PQ_SWAP_114, note}});
    if (auto nec = nec_42(x)) return fails({*nec, {Rule::PQ_SWAP_114, note}});
    if (auto nec = nec_strict_45(x)) return fails({*nec, {Rule::PQ_SWAP_114, note}});
    return fails({{Rule::PQ_SWAP_114, "sharp case excluded: " + note, Violation::SharpSwap}});
  }

  if (auto nec = nec_42(x)) return fails({*nec});
  if (x.p_swapped()) {
    if (auto nec = nec_strict_45(x)) return fails({*nec});
  }
  std::ostringstream os;
  os << "weight exponent outside the A_p range (g0 in A_p: " << (x.ap0() ? "yes" : "no")
     << ", g1 in A_p: " << (x.ap1() ? "yes" : "no")
     << "); necessary conditions hold but sufficiency is not characterized";
  return unknown(os.str());
}

bool is_zero_order_w(const SpaceSpec& x) { return x.family == Family::Sobolev && x.s == 0; }

SpaceSpec as_bessel(const SpaceSpec& x) {
  SpaceSpec y = x;
  y.family = Family::BesselPotential;
  y.q.reset();
  return y;
}

SpaceSpec as_triebel_q2(const SpaceSpec& x) {
  SpaceSpec y = x;
  y.family = Family::TriebelLizorkin;
  y.q = Extended(2);
  return y;
}

Extended ext_max(const Extended& a, const Extended& b) { return a < b ? b : a; }
Extended ext_min(const Extended& a, const Extended& b) { return a < b ? a : b; }

std::optional<SpaceSpec> upward_besov(const SpaceSpec& x) {
  switch (x.family) {
    case Family::Besov: return x;
    case Family::TriebelLizorkin:
      return SpaceSpec::besov(x.s, x.p, ext_max(x.p, *x.q), x.gamma, x.d);
    default:
      if (!x.p.is_infinite() && in_ap_range(x.p, x.gamma, x.d))
        return SpaceSpec::besov(x.s, x.p, Extended::infinity(), x.gamma, x.d);
      return std::nullopt;
  }
}

std::optional<SpaceSpec> downward_besov(const SpaceSpec& x) {
  switch (x.family) {
    case Family::Besov: return x;
    case Family::TriebelLizorkin:
      return SpaceSpec::besov(x.s, x.p, ext_min(x.p, *x.q), x.gamma, x.d);
    default:
      if (!x.p.is_infinite() && in_ap_range(x.p, x.gamma, x.d))
        return SpaceSpec::besov(x.s, x.p, Extended(1), x.gamma, x.d);
      return std::nullopt;
  }
}

Verdict prepend(RuleCitation first, Verdict v) {
  v.trace.insert(v.trace.begin(), std::move(first));
  return v;
}

// Stages shared by every cross-family pair once H/W spaces in the A_p range
// have been identified with F_{p,2}.
Verdict cross_stages(const Pair& x) {
  audit_redundancy(x);
  const auto up = upward_besov(x.src);
  const auto down = downward_besov(x.tgt);
  if (up && down) {
    Verdict inner = decide_besov(*up, *down);
    if (inner.embeds()) {
      Verdict out;
      out.outcome = Outcome::Embeds;
      out.trace.push_back({Rule::SANDWICH_BF, describe(x.src) + " -> " + describe(*up)});
      for (auto& c : inner.trace) out.trace.push_back(std::move(c));
      out.trace.push_back({Rule::SANDWICH_BF, describe(*down) + " -> " + describe(x.tgt)});
      return out;
    }
  }

  if (x.src.p < x.tgt.p && !x.tgt.p.is_infinite() && x.ap0() && x.ap1() && x.weight_ok() &&
      x.shifted_ge()) {
    const std::string cond = join({weight_note(x), shifted_note(x, ">=")});
    if (x.src.family == Family::Besov && x.tgt.family == Family::TriebelLizorkin &&
        *x.src.q <= x.tgt.p) {
      return embeds({{Rule::JAWERTH_FRANKE_62,
                      cond + "; q0 = " + x.src.q->str() + " <= p1 = " + x.tgt.p.str()}});
    }
    if (x.src.family == Family::TriebelLizorkin && x.tgt.family == Family::Besov &&
        *x.tgt.q >= x.src.p) {
      return embeds({{Rule::JAWERTH_FRANKE_63,
                      cond + "; q1 = " + x.tgt.q->str() + " >= p0 = " + x.src.p.str()}});
    }
  }

  if (auto nec = nec_42(x)) return fails({*nec});
  if (auto nec = nec_strict_45(x)) return fails({*nec});
  return unknown("cross-family pair " + describe(x.src) + " -> " + describe(x.tgt) +
                 ": necessary conditions hold, no sufficient rule applies");
}

}  // namespace

std::string_view rule_name(Rule r) { return kRuleNames[static_cast<std::size_t>(r)]; }

Rule rule_from_name(std::string_view name) {
  for (int i = 0; i < kRuleCount; ++i)
    if (kRuleNames[static_cast<std::size_t>(i)] == name) return static_cast<Rule>(i);
  throw ParseError("unknown rule id '" + std::string(name) + "'");
}

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Embeds: return "embeds";
    case Outcome::DoesNotEmbed: return "no";
    case Outcome::Unknown: return "unknown";
  }
  return "unknown";
}

const RuleCitation* Verdict::first_violation() const {
  for (const auto& c : trace)
    if (c.violation != Violation::None) return &c;
  return nullptr;
}

Verdict decide_besov(const SpaceSpec& src, const SpaceSpec& tgt) {
  require(src, tgt, Family::Besov, Family::Besov, "decide_besov");
  const Pair x(src, tgt);
  audit_redundancy(x);
  if (trivial_13(x)) return embeds({trivial_citation(x)});
  if (x.weight_ok() && x.dim_strict()) {
    if (x.shifted_gt())
      return embeds({{Rule::SUBCRITICAL_14,
                      join({weight_note(x), dim_note(x, true), shifted_note(x, ">")})}});
    if (x.shifted_eq() && x.q_le())
      return embeds({{Rule::SHARP_15, join({weight_note(x), dim_note(x, true),
                                            shifted_note(x, "="), q_note(x)})}});
  }
  if (auto nec = nec_42(x)) return fails({*nec});
  if (auto nec = nec_strict_45(x)) return fails({*nec});
  if (x.q_le()) throw std::logic_error("decide_besov: no violated condition found");
  return fails({{Rule::Q_NECESSITY, "on the sharp line " + q_note(x), Violation::Microscopic}});
}

Verdict decide_triebel(const SpaceSpec& src, const SpaceSpec& tgt) {
  require(src, tgt, Family::TriebelLizorkin, Family::TriebelLizorkin, "decide_triebel");
  const Pair x(src, tgt);
  audit_redundancy(x);
  if (x.src.p <= x.tgt.p) {
    if (trivial_13(x)) return embeds({trivial_citation(x)});
    if (x.weight_ok() && x.dim_strict() && x.shifted_ge())
      return embeds({{Rule::F_SUFFICIENT_17,
                      join({weight_note(x), dim_note(x, true), shifted_note(x, ">=")})}});
    if (auto nec = nec_42(x)) return fails({*nec});
    if (!x.same_weight_and_p() || x.src.s != x.tgt.s || x.q_le())
      throw std::logic_error("decide_triebel: no violated condition found");
    return fails({{Rule::Q_NECESSITY, "p0 = p1, g0 = g1, s0 = s1 requires " + q_note(x),
                   Violation::Microscopic}});
  }

  if (auto nec = nec_42(x)) return fails({*nec});
  if (auto nec = nec_strict_45(x)) return fails({*nec});
  if (x.shifted_gt()) {
    return embeds({{Rule::SANDWICH_BF, "F^{s0}_{p0,q0} -> B^{s0}_{p0,inf}"},
                   {Rule::SUBCRITICAL_14,
                    join({weight_note(x), dim_note(x, true), shifted_note(x, ">")})},
                   {Rule::SANDWICH_BF, "B^{s1}_{p1,1} -> F^{s1}_{p1,q1}"}});
  }
  const bool q_window = *x.src.q >= Extended(2) && *x.tgt.q <= Extended(2);
  if (q_window && x.ap0() && x.ap1()) {
    return fails({{Rule::F_SHARP_NEC_55,
                   "p1 < p0 on the sharp line with q0 >= 2, q1 <= 2 and both weights in A_p; " +
                       shifted_note(x, "="),
                   Violation::SharpSwap}});
  }
  return unknown("F spaces with p1 < p0 on the sharp line, q0 = " + x.src.q->str() +
                 ", q1 = " + x.tgt.q->str() + (x.ap0() && x.ap1() ? "" : ", weight outside A_p") +
                 ": not characterized");
}

Verdict decide_bessel(const SpaceSpec& src, const SpaceSpec& tgt) {
  require(src, tgt, Family::BesselPotential, Family::BesselPotential, "decide_bessel");
  return decide_hw_table(Pair(src, tgt));
}

Verdict decide_sobolev(const SpaceSpec& src, const SpaceSpec& tgt) {
  require(src, tgt, Family::Sobolev, Family::Sobolev, "decide_sobolev");
  if (!is_integer(src.s) || !is_integer(tgt.s))
    throw FamilyError("decide_sobolev: fractional orders must be canonicalized to Besov first");
  return decide_hw_table(Pair(src, tgt));
}

Verdict decide_cross(const SpaceSpec& src_in, const SpaceSpec& tgt_in) {
  if (src_in.family == Family::Holder || tgt_in.family == Family::Holder)
    throw FamilyError("decide_cross: use holder_embedding for Holder spaces");
  if (src_in.family == tgt_in.family)
    throw FamilyError("decide_cross: families coincide, use the same-family procedure");
  if (src_in.d != tgt_in.d) throw FamilyError("decide_cross: dimension mismatch");

  SpaceSpec src = src_in;
  SpaceSpec tgt = tgt_in;
  std::vector<RuleCitation> pre;
  for (SpaceSpec* side : {&src, &tgt}) {
    if (is_zero_order_w(*side)) {
      *side = as_bessel(*side);
      pre.push_back({Rule::SANDWICH_HW, "W^{0,p}(w) = H^{0,p}(w) = L^p(w)"});
    }
  }
  if (is_hw(src.family) && is_hw(tgt.family)) {
    const Pair x(src, tgt);
    if (src.family != tgt.family && !(x.ap0() && x.ap1())) {
      Verdict v = decide_hw_table(x);
      if (v.embeds()) v = unknown("W vs H outside the A_p range: only the identity case is known");
      for (auto it = pre.rbegin(); it != pre.rend(); ++it) v = prepend(*it, v);
      return v;
    }
    Verdict v = decide_hw_table(x);
    if (src.family != tgt.family)
      v = prepend({Rule::SANDWICH_HW, "W^{m,p}(w) = H^{m,p}(w) for w in A_p"}, v);
    for (auto it = pre.rbegin(); it != pre.rend(); ++it) v = prepend(*it, v);
    return v;
  }

  for (SpaceSpec* side : {&src, &tgt}) {
    if (is_hw(side->family) && in_ap_range(side->p, side->gamma, side->d)) {
      pre.push_back({Rule::SANDWICH_HW, std::string(family_tag(side->family)) +
                                            "^{s,p}(w) = F^s_{p,2}(w) for w in A_p"});
      *side = as_triebel_q2(*side);
    }
  }

  Verdict v;
  if (src.family == Family::TriebelLizorkin && tgt.family == Family::TriebelLizorkin) {
    v = decide_triebel(src, tgt);
  } else {
    v = cross_stages(Pair(src, tgt));
  }
  for (auto it = pre.rbegin(); it != pre.rend(); ++it) v = prepend(*it, v);
  return v;
}

HolderVerdict holder_embedding(const SpaceSpec& src_in) {
  const SpaceSpec src = validate(src_in);
  if (src.family == Family::Holder) throw FamilyError("holder_embedding: source is a Holder space");
  if (src.gamma < 0) throw RangeError("holder_embedding requires g0 >= 0");
  const auto idx = indices(src);
  HolderVerdict out{{}, idx.shifted_smoothness};
  const Rational& s1 = idx.shifted_smoothness;
  const std::string s1_text = rational_str(s1);
  if (src.p.is_infinite()) {
    out.verdict = unknown("HOLDER_73 requires p0 < inf");
    return out;
  }
  if (is_hw(src.family) && !in_ap_range(src.p, src.gamma, src.d)) {
    out.verdict = unknown("HOLDER_73 for H/W requires g0 < d(p0-1)");
    return out;
  }
  if (s1 > 0 && !is_integer(s1)) {
    out.verdict = embeds({{Rule::HOLDER_73, "s1 = s0-(d+g0)/p0 = " + s1_text +
                                                " > 0 is not an integer; target BUC^{" + s1_text + "}"}});
    return out;
  }
  if (s1 >= 0 && is_integer(s1) && src.family == Family::Besov && *src.q == Extended(1)) {
    out.verdict = embeds({{Rule::HOLDER_73, "m = s0-(d+g0)/p0 = " + s1_text +
                                                " is an integer and q0 = 1; target BUC^{" + s1_text + "}"}});
    return out;
  }
  out.verdict = unknown("HOLDER_73 is sufficiency-only; s1 = " + s1_text +
                        " outside its hypotheses for " + describe(src));
  return out;
}

Verdict lp_target(const SpaceSpec& src_in, const Extended& p1, const Rational& gamma1) {
  SpaceSpec src = validate(src_in);
  const SpaceSpec tgt = validate(SpaceSpec::lebesgue(p1, gamma1, src.d));
  if (src.family == Family::Holder) throw FamilyError("lp_target: Holder source");
  if (is_zero_order_w(src)) src = as_bessel(src);

  const Pair x(src, tgt);
  audit_redundancy(x);
  if (is_hw(src.family)) {
    Verdict v = src.family == Family::BesselPotential ? decide_bessel(src, tgt)
                                                      : decide_cross(src, tgt);
    if (v.outcome != Outcome::Unknown) return v;
  }

  const Rational rhs = -x.i1.dim_index;
  const bool shifted = x.i0.shifted_smoothness >= rhs;
  const std::string base = join({fmt_ineq("s0-(d+g0)/p0", x.i0.shifted_smoothness, ">=",
                                          "-(d+g1)/p1", rhs, shifted),
                                 weight_note(x)});
  if (src.family == Family::Besov && *src.q <= src.p && shifted && x.weight_ok() &&
      x.dim_strict() && (src.p <= tgt.p || *src.q == Extended(1))) {
    return embeds({{Rule::LP_TARGET_71, join({base, dim_note(x, true), "q0 = " + src.q->str()})}});
  }
  if (src.p <= tgt.p && shifted && x.weight_ok()) {
    if (src.family == Family::TriebelLizorkin) return embeds({{Rule::LP_TARGET_72, base}});
    if (is_hw(src.family) && x.ap0())
      return embeds({{Rule::SANDWICH_HW, describe(src) + " -> F^{s0}_{p0,inf}"},
                     {Rule::LP_TARGET_72, base}});
  }
  if (is_hw(src.family)) return decide_bessel(as_bessel(src), tgt);
  return decide_cross(src, tgt);
}

Verdict decide(const SpaceSpec& src_in, const SpaceSpec& tgt_in) {
  const SpaceSpec src = validate(src_in);
  const SpaceSpec tgt = validate(tgt_in);
  if (src.d != tgt.d) throw FamilyError("dimension mismatch: " + describe(src) + " -> " + describe(tgt));

  if (src.family == Family::Holder) {
    if (tgt.family != Family::Holder) throw FamilyError("Holder spaces are supported only as targets");
    if (src.s >= tgt.s)
      return embeds({{Rule::TRIVIAL_13, "BUC^{" + rational_str(src.s) + "} -> BUC^{" +
                                            rational_str(tgt.s) + "}"}});
    return unknown("Holder source with larger target smoothness");
  }

  if (tgt.family == Family::Holder) {
    // BUC^t sits inside the unweighted B^t_{inf,inf}, so the general necessary
    // conditions apply against that space.
    const SpaceSpec envelope = SpaceSpec::besov(tgt.s, Extended::infinity(), Extended::infinity(), 0, tgt.d);
    const Pair x(src, envelope);
    if (auto nec = nec_42(x))
      return fails({*nec, {Rule::HOLDER_73, "BUC^{t} -> B^{t}_{inf,inf} with t = " + rational_str(tgt.s)}});
    HolderVerdict hv = holder_embedding(src);
    if (hv.verdict.embeds()) {
      if (tgt.s <= hv.target_smoothness) {
        hv.verdict.trace.push_back({Rule::HOLDER_73, "BUC^{" + rational_str(hv.target_smoothness) +
                                                         "} -> BUC^{" + rational_str(tgt.s) + "}"});
        return hv.verdict;
      }
      return unknown("target smoothness exceeds the HOLDER_73 exponent " +
                     rational_str(hv.target_smoothness));
    }
    return hv.verdict;
  }

  if (tgt.family == Family::BesselPotential && tgt.s == 0 && src.family != Family::BesselPotential)
    return lp_target(src, tgt.p, tgt.gamma);

  if (src.family == tgt.family) {
    switch (src.family) {
      case Family::Besov: return decide_besov(src, tgt);
      case Family::TriebelLizorkin: return decide_triebel(src, tgt);
      case Family::BesselPotential: return decide_bessel(src, tgt);
      case Family::Sobolev: return decide_sobolev(src, tgt);
      default: break;
    }
  }
  return decide_cross(src, tgt);
}

EmbeddingMatrix embedding_matrix(const std::vector<SpaceSpec>& specs) {
  EmbeddingMatrix m;
  m.specs = specs;
  const std::size_t n = specs.size();
  m.cells.assign(n, std::vector<MatrixCell>(n));
  std::vector<std::string> invalid(n);
  for (std::size_t i = 0; i < n; ++i) {
    try {
      m.specs[i] = validate(specs[i]);
    } catch (const std::exception& e) {
      invalid[i] = e.what();
    }
  }
#pragma omp parallel for schedule(dynamic) collapse(2)
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      MatrixCell& cell = m.cells[i][j];
      if (!invalid[i].empty() || !invalid[j].empty()) {
        cell.diagnostic = "invalid spec: " + (invalid[i].empty() ? invalid[j] : invalid[i]);
        continue;
      }
      try {
        cell.verdict = decide(m.specs[i], m.specs[j]);
      } catch (const std::exception& e) {
        cell.diagnostic = e.what();
      }
    }
  }
  auto outcome = [&](std::size_t i, std::size_t j) -> std::optional<Outcome> {
    const auto& c = m.cells[i][j];
    if (!c.verdict) return std::nullopt;
    return c.verdict->outcome;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (outcome(a, b) != Outcome::Embeds) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (outcome(b, c) == Outcome::Embeds && outcome(a, c) == Outcome::DoesNotEmbed)
          m.violations.push_back({a, b, c});
    }
  return m;
}

}  // namespace powemb
