#include "bds/labeling.hpp"

#include <algorithm>

namespace bds {

const char* variant_name(VariantKind k) {
  switch (k) {
    case VariantKind::NoB30: return "no-b30";
    case VariantKind::Uncentered: return "uncentered";
    case VariantKind::Centered: return "centered";
  }
  return "?";
}

namespace {

// Clips a rest interval [gap_start, gap_start + rest] against the first
// `window` minutes of the shift and the `window` minutes before the shift-end
// anchor (infinite anchor on original nodes: no back clipping).
Minutes clip_rest(Minutes rest, Minutes span_before, Minutes gap_start, Minutes end_anchor,
                  Minutes window) {
  Minutes v = rest - std::max(window - span_before, 0);
  if (end_anchor < kInfTime) v -= std::max(gap_start + rest - (end_anchor - window), 0);
  return v;
}

} // namespace

std::optional<Label> extend_label(const Label& x, const PricingGraph& g, const PricingArc& arc,
                                  std::span<const double> duals, const GraphVariant& variant,
                                  const RulesConfig& rules) {
  const PricingNode& head = g.nodes[arc.to];
  const bool to_sink = arc.to == g.sink;
  const Minutes glen = arc.p.length;
  const Minutes drive_j = to_sink ? 0 : g.inst->legs[head.leg].drive();

  Label y;
  y.node = arc.to;

  // Drive-break bookkeeping: the whole gap (passive ride included) counts.
  bool reset = glen >= 30 || (glen >= 20 && x.b20 >= 1) || (glen >= 15 && x.b15 >= 2);
  if (reset) {
    y.b15 = 0;
    y.b20 = 0;
    y.block = drive_j;
  } else {
    y.b15 = x.b15 + (glen >= 15 ? 1 : 0);
    y.b20 = x.b20 + (glen >= 20 ? 1 : 0);
    y.block = x.block + drive_j;
  }
  y.drive = x.drive + drive_j;
  y.span = x.span + glen + drive_j;
  y.rest = std::min(x.rest + arc.p.rest, 45);
  y.b30 = x.b30 || arc.p.rest >= 30;

  const Minutes gap_start = arc.tail_leg >= 0 ? g.inst->legs[arc.tail_leg].end : 0;
  Minutes rest_unpaid =
      clip_rest(arc.p.rest, x.span, gap_start, head.end_time, rules.unpaid_edge_window);
  y.unpaid = rest_unpaid >= 15 ? std::min(x.unpaid + rest_unpaid, variant.unpaid_cap) : x.unpaid;
  Minutes rest_centered =
      clip_rest(arc.p.rest, x.span, gap_start, head.end_time, rules.centered_edge_window);
  y.bc30 = x.bc30 || rest_centered >= 30;

  y.work = x.work + (x.unpaid - y.unpaid) + arc.p.remain + arc.p.ride + drive_j;
  y.cost = x.cost + 2.0 * (x.unpaid - y.unpaid) + static_cast<double>(arc.p.cost) +
           static_cast<double>(head.node_cost) - (to_sink ? 0.0 : duals[head.leg]);
  y.pred = -1;

  if (y.drive > rules.max_driving) return std::nullopt;
  if (y.span > rules.max_span) return std::nullopt;
  if (y.block > rules.drive_block_max) return std::nullopt;
  if (y.work > rules.max_working) return std::nullopt;
  if (y.work >= 360 && y.rest < 15) return std::nullopt;
  // No path can satisfy the 30-minute rest requirement in the NoB30 case;
  // working time only grows.
  if (variant.kind == VariantKind::NoB30 && y.work >= 360) return std::nullopt;

  if (to_sink) {
    if (y.work > 540 && y.rest < 45) return std::nullopt;
    if (y.work >= 360 && !y.b30) return std::nullopt;
    if (!variant.sink_flags_ok(y.b30, y.bc30)) return std::nullopt;
  }
  return y;
}

bool dominates(const Label& a, const Label& b, DomMode mode) {
  if (a.drive > b.drive || a.span > b.span || a.block > b.block) return false;
  if (a.b15 < b.b15 || a.b20 < b.b20) return false;
  switch (mode) {
    case DomMode::NoB30:
      return a.work <= b.work && a.cost <= b.cost;
    case DomMode::Base:
      if (a.work + a.unpaid > b.work) return false;
      if (a.rest < b.rest) return false;
      if (!a.b30 && b.b30) return false;
      if (!a.bc30 && b.bc30) return false;
      return a.cost + 2.0 * a.unpaid <= b.cost;
    case DomMode::Strengthened:
      if (a.work > b.work || a.work + a.unpaid > b.work + b.unpaid) return false;
      if (a.rest < b.rest) return false;
      if (!a.b30 && b.b30) return false;
      if (!a.bc30 && b.bc30) return false;
      return a.cost <= b.cost && a.cost + 2.0 * a.unpaid <= b.cost + 2.0 * b.unpaid;
  }
  return false;
}

int dominance_dims(DomMode mode) {
  switch (mode) {
    case DomMode::NoB30: return 7;
    case DomMode::Base: return 10;
    case DomMode::Strengthened: return 12;
  }
  return 0;
}

void attack_key(const Label& l, DomMode mode, double* out) {
  out[0] = l.drive;
  out[1] = l.span;
  out[2] = l.block;
  out[3] = -l.b15;
  out[4] = -l.b20;
  switch (mode) {
    case DomMode::NoB30:
      out[5] = l.work;
      out[6] = l.cost;
      break;
    case DomMode::Base:
      out[5] = l.work + l.unpaid;
      out[6] = -l.rest;
      out[7] = l.b30 ? -1 : 0;
      out[8] = l.bc30 ? -1 : 0;
      out[9] = l.cost + 2.0 * l.unpaid;
      break;
    case DomMode::Strengthened:
      out[5] = l.work;
      out[6] = l.work + l.unpaid;
      out[7] = -l.rest;
      out[8] = l.b30 ? -1 : 0;
      out[9] = l.bc30 ? -1 : 0;
      out[10] = l.cost;
      out[11] = l.cost + 2.0 * l.unpaid;
      break;
  }
}

void defense_key(const Label& l, DomMode mode, double* out) {
  attack_key(l, mode, out);
  if (mode == DomMode::Base) {
    out[5] = l.work;
    out[9] = l.cost;
  }
}

} // namespace bds
