#include "bds/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace bds {

namespace {

// Line-oriented tokenizer that skips blank lines and '#' comments.
class LineReader {
 public:
  LineReader(std::istream& in, std::string name) : in_(in), name_(std::move(name)) {}

  bool next(std::vector<std::string>* tokens) {
    tokens->clear();
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      size_t hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ss(line);
      tokens->clear();
      std::string tok;
      while (ss >> tok) tokens->push_back(tok);
      if (!tokens->empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(name_, line_no_, msg); }

  int line() const { return line_no_; }
  const std::string& name() const { return name_; }

 private:
  std::istream& in_;
  std::string name_;
  int line_no_ = 0;
};

long long parse_int(LineReader& r, const std::string& tok, const char* what) {
  try {
    size_t pos = 0;
    long long v = std::stoll(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    r.fail(std::string("expected integer for ") + what + ", got '" + tok + "'");
  }
}

Minutes parse_distance(LineReader& r, const std::string& tok) {
  if (tok == "M") return kNoTransfer;
  long long v = parse_int(r, tok, "distance");
  if (v < 0) r.fail("distance must be nonnegative");
  return static_cast<Minutes>(v);
}

const std::map<std::string, Minutes RulesConfig::*, std::less<>> kRuleFields = {
    {"max_driving", &RulesConfig::max_driving},
    {"max_span", &RulesConfig::max_span},
    {"max_working", &RulesConfig::max_working},
    {"min_working", &RulesConfig::min_working},
    {"drive_block_max", &RulesConfig::drive_block_max},
    {"split_threshold", &RulesConfig::split_threshold},
    {"unpaid_edge_window", &RulesConfig::unpaid_edge_window},
    {"centered_edge_window", &RulesConfig::centered_edge_window},
    {"unpaid_cap_centered", &RulesConfig::unpaid_cap_centered},
    {"unpaid_cap_uncentered", &RulesConfig::unpaid_cap_uncentered},
};

const std::map<std::string, int RulesConfig::*, std::less<>> kWeightFields = {
    {"weight_working", &RulesConfig::weight_working},
    {"weight_total", &RulesConfig::weight_total},
    {"weight_ride", &RulesConfig::weight_ride},
    {"weight_change", &RulesConfig::weight_change},
    {"weight_split", &RulesConfig::weight_split},
};

} // namespace

Instance parse_instance(std::istream& in, const std::string& name) {
  LineReader r(in, name);
  std::vector<std::string> t;
  Instance inst;

  if (!r.next(&t) || t.size() != 2 || t[0] != "bdsp-instance") {
    if (r.line() == 0) throw ParseError(name, 1, "empty instance file");
    r.fail("expected header 'bdsp-instance 1'");
  }
  if (t[1] != "1") r.fail("unsupported instance format version " + t[1]);

  if (!r.next(&t) || t.size() != 2 || t[0] != "positions") r.fail("expected 'positions <count>'");
  inst.position_count = static_cast<int>(parse_int(r, t[1], "position count"));
  if (inst.position_count <= 0) r.fail("position count must be positive");

  if (!r.next(&t) || t.size() != 1 || t[0] != "distances") r.fail("expected 'distances'");
  inst.dist.resize(static_cast<size_t>(inst.position_count) * inst.position_count);
  for (int p = 0; p < inst.position_count; ++p) {
    if (!r.next(&t)) r.fail("missing distance matrix row " + std::to_string(p));
    if (static_cast<int>(t.size()) != inst.position_count)
      r.fail("distance row " + std::to_string(p) + " needs " +
             std::to_string(inst.position_count) + " entries, got " + std::to_string(t.size()));
    for (int q = 0; q < inst.position_count; ++q)
      inst.dist[static_cast<size_t>(p) * inst.position_count + q] = parse_distance(r, t[q]);
  }

  if (!r.next(&t) || t.size() != 1 || t[0] != "work") r.fail("expected 'work'");
  inst.start_work.resize(inst.position_count);
  inst.end_work.resize(inst.position_count);
  for (int p = 0; p < inst.position_count; ++p) {
    if (!r.next(&t)) r.fail("missing work row for position " + std::to_string(p));
    if (t.size() != 2) r.fail("work row needs 'startWork endWork'");
    inst.start_work[p] = static_cast<Minutes>(parse_int(r, t[0], "startWork"));
    inst.end_work[p] = static_cast<Minutes>(parse_int(r, t[1], "endWork"));
  }

  while (r.next(&t) && t[0] == "rule") {
    if (t.size() != 3) r.fail("expected 'rule <name> <value>'");
    long long v = parse_int(r, t[2], "rule value");
    if (auto it = kRuleFields.find(t[1]); it != kRuleFields.end()) {
      inst.rules.*(it->second) = static_cast<Minutes>(v);
    } else if (auto jt = kWeightFields.find(t[1]); jt != kWeightFields.end()) {
      inst.rules.*(jt->second) = static_cast<int>(v);
    } else {
      r.fail("unknown rule '" + t[1] + "'");
    }
  }

  if (t.size() != 2 || t[0] != "legs") r.fail("expected 'legs <count>'");
  int n = static_cast<int>(parse_int(r, t[1], "leg count"));
  if (n < 0) r.fail("leg count must be nonnegative");
  inst.legs.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (!r.next(&t)) r.fail("missing leg record " + std::to_string(i));
    if (t.size() != 6) r.fail("leg record needs 'id tour startPos endPos start end'");
    BusLeg leg;
    leg.id = static_cast<int>(parse_int(r, t[0], "leg id"));
    leg.tour = static_cast<int>(parse_int(r, t[1], "tour"));
    leg.start_pos = static_cast<int>(parse_int(r, t[2], "startPos"));
    leg.end_pos = static_cast<int>(parse_int(r, t[3], "endPos"));
    leg.start = static_cast<Minutes>(parse_int(r, t[4], "start"));
    leg.end = static_cast<Minutes>(parse_int(r, t[5], "end"));
    inst.legs.push_back(leg);
  }

  std::stable_sort(inst.legs.begin(), inst.legs.end(), leg_before);
  if (std::string err = inst.validate(); !err.empty()) r.fail("invalid instance: " + err);
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open instance file: " + path);
  return parse_instance(f, path);
}

void write_instance(const Instance& inst, std::ostream& out) {
  out << "bdsp-instance 1\n";
  out << "positions " << inst.position_count << "\n";
  out << "distances\n";
  for (int p = 0; p < inst.position_count; ++p) {
    for (int q = 0; q < inst.position_count; ++q) {
      if (q) out << ' ';
      Minutes d = inst.distance(p, q);
      if (d >= kNoTransfer)
        out << 'M';
      else
        out << d;
    }
    out << "\n";
  }
  out << "work\n";
  for (int p = 0; p < inst.position_count; ++p)
    out << inst.start_work[p] << ' ' << inst.end_work[p] << "\n";
  RulesConfig def;
  for (const auto& [name, field] : kRuleFields)
    if (inst.rules.*field != def.*field) out << "rule " << name << ' ' << inst.rules.*field << "\n";
  for (const auto& [name, field] : kWeightFields)
    if (inst.rules.*field != def.*field) out << "rule " << name << ' ' << inst.rules.*field << "\n";
  out << "legs " << inst.leg_count() << "\n";
  for (const BusLeg& l : inst.legs)
    out << l.id << ' ' << l.tour << ' ' << l.start_pos << ' ' << l.end_pos << ' ' << l.start << ' '
        << l.end << "\n";
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  write_instance(inst, f);
}

ParsedSolution parse_solution(std::istream& in, const Instance& inst, const std::string& name) {
  LineReader r(in, name);
  std::vector<std::string> t;
  ParsedSolution sol;

  std::map<int, int> id_to_index;
  for (int i = 0; i < inst.leg_count(); ++i) id_to_index[inst.legs[i].id] = i;

  if (!r.next(&t) || t.size() != 2 || t[0] != "bdsp-solution") {
    if (r.line() == 0) throw ParseError(name, 1, "empty solution file");
    r.fail("expected header 'bdsp-solution 1'");
  }
  if (t[1] != "1") r.fail("unsupported solution format version " + t[1]);

  if (!r.next(&t) || t.size() != 2 || t[0] != "shifts") r.fail("expected 'shifts <count>'");
  int n = static_cast<int>(parse_int(r, t[1], "shift count"));
  for (int i = 0; i < n; ++i) {
    if (!r.next(&t)) r.fail("missing shift " + std::to_string(i));
    if (t.size() < 5 || t[0] != "shift" || t[2] != "cost" || t[4] != "legs")
      r.fail("expected 'shift <idx> cost <c> legs <id...>'");
    if (parse_int(r, t[1], "shift index") != i) r.fail("shift records out of order");
    sol.claimed_costs.push_back(parse_int(r, t[3], "shift cost"));
    std::vector<int> legs;
    for (size_t k = 5; k < t.size(); ++k) {
      int id = static_cast<int>(parse_int(r, t[k], "leg id"));
      auto it = id_to_index.find(id);
      if (it == id_to_index.end()) r.fail("unknown leg id " + std::to_string(id));
      legs.push_back(it->second);
    }
    if (legs.empty()) r.fail("shift " + std::to_string(i) + " has no legs");
    sol.shifts.push_back(std::move(legs));
  }

  if (!r.next(&t) || t.size() != 2 || t[0] != "objective") r.fail("expected 'objective <z>'");
  sol.claimed_objective = parse_int(r, t[1], "objective");
  return sol;
}

ParsedSolution load_solution(const std::string& path, const Instance& inst) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open solution file: " + path);
  return parse_solution(f, inst, path);
}

void write_solution(const Solution& sol, const Instance& inst, std::ostream& out) {
  out << "bdsp-solution 1\n";
  out << "shifts " << sol.shift_count() << "\n";
  for (int i = 0; i < sol.shift_count(); ++i) {
    out << "shift " << i << " cost " << sol.evals[i].cost << " legs";
    for (int l : sol.shifts[i]) out << ' ' << inst.legs[l].id;
    out << "\n";
    const ShiftEvaluation& e = sol.evals[i];
    out << "# D=" << e.driving << " T=" << e.span << " W=" << e.working << " W'=" << e.paid_working
        << " ride=" << e.ride << " changes=" << e.changes << " splits=" << e.splits
        << " unpaid=" << e.unpaid << "\n";
  }
  out << "objective " << sol.objective << "\n";
}

void save_solution(const Solution& sol, const Instance& inst, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  write_solution(sol, inst, f);
}

} // namespace bds
