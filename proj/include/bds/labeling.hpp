#ifndef BDS_LABELING_HPP
#define BDS_LABELING_HPP

#include <optional>
#include <span>
#include <vector>

#include "bds/pricing_graph.hpp"

namespace bds {

// The pricing subproblem is split into three disjoint cases by the status of
// the 30-minute rest break, which fixes the unpaid-rest cap per case.
enum class VariantKind { NoB30 = 0, Uncentered = 1, Centered = 2 };

enum class DomMode { Base, Strengthened, NoB30 };

struct GraphVariant {
  VariantKind kind = VariantKind::NoB30;
  Minutes unpaid_cap = 0;
  DomMode dom = DomMode::NoB30;

  static GraphVariant make(VariantKind k, const RulesConfig& rules) {
    GraphVariant v;
    v.kind = k;
    switch (k) {
      case VariantKind::NoB30:
        v.unpaid_cap = 0;
        v.dom = DomMode::NoB30;
        break;
      case VariantKind::Uncentered:
        v.unpaid_cap = rules.unpaid_cap_uncentered;
        v.dom = DomMode::Strengthened;
        break;
      case VariantKind::Centered:
        v.unpaid_cap = rules.unpaid_cap_centered;
        v.dom = DomMode::Strengthened;
        break;
    }
    return v;
  }

  // NoB30 removes every arc carrying a rest break of 30 minutes or more.
  bool arc_allowed(const ArcProps& p) const {
    return kind != VariantKind::NoB30 || p.rest < 30;
  }

  bool sink_flags_ok(bool b30, bool bc30) const {
    switch (kind) {
      case VariantKind::NoB30: return !b30;
      case VariantKind::Uncentered: return b30 && !bc30;
      case VariantKind::Centered: return b30 && bc30;
    }
    return false;
  }
};

const char* variant_name(VariantKind k);

// Partial-path state: eleven resources plus the running reduced cost.
struct Label {
  int node = 0;
  int pred = -1; // arena index of the predecessor label
  Minutes drive = 0;     // d
  Minutes span = 0;      // s
  Minutes block = 0;     // dc, driving in the current drive block
  Minutes b15 = 0;       // break parts >= 15 in the current block
  Minutes b20 = 0;       // break parts >= 20 in the current block
  Minutes work = 0;      // w, assumes the accumulated unpaid rest stays unpaid
  Minutes rest = 0;      // r, rest credit capped at 45
  Minutes unpaid = 0;    // u, potential unpaid rest, capped per variant
  bool b30 = false;
  bool bc30 = false;
  double cost = 0;       // reduced cost so far (duals subtracted)
};

inline Label initial_label(int source_node) {
  Label l;
  l.node = source_node;
  return l;
}

// Reduced cost of a completed path: adds the minimum-working-time payment.
inline double final_cost(const Label& sink_label, const RulesConfig& rules) {
  return sink_label.cost +
         2.0 * std::max(rules.min_working - sink_label.work, 0);
}

// Applies the resource extension functions over one arc. `duals` are indexed
// by leg; rejection (a violated resource constraint, or unmet sink flags)
// returns nullopt.
std::optional<Label> extend_label(const Label& x, const PricingGraph& g, const PricingArc& arc,
                                  std::span<const double> duals, const GraphVariant& variant,
                                  const RulesConfig& rules);

bool dominates(const Label& a, const Label& b, DomMode mode);

// Coordinates for the dominance store, normalized so that smaller is better
// in every dimension. `a dominates b` iff attack(a) <= defense(b) holds
// componentwise; in the symmetric modes the two vectors coincide.
int dominance_dims(DomMode mode);
void attack_key(const Label& l, DomMode mode, double* out);
void defense_key(const Label& l, DomMode mode, double* out);

} // namespace bds

#endif
