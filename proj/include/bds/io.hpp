#ifndef BDS_IO_HPP
#define BDS_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "bds/evaluation.hpp"
#include "bds/instance.hpp"

namespace bds {

// Parse failure with a line-precise location.
struct ParseError : std::runtime_error {
  ParseError(const std::string& where, int line, const std::string& msg)
      : std::runtime_error(where + ":" + std::to_string(line) + ": " + msg), line_no(line) {}
  int line_no;
};

Instance parse_instance(std::istream& in, const std::string& name = "<stream>");
Instance load_instance(const std::string& path);
void write_instance(const Instance& inst, std::ostream& out);
void save_instance(const Instance& inst, const std::string& path);

// A solution file as written, before re-validation: shifts hold leg indices
// resolved against the instance, claimed costs come from the file.
struct ParsedSolution {
  std::vector<std::vector<int>> shifts;
  std::vector<Cost> claimed_costs;
  Cost claimed_objective = 0;
};

ParsedSolution parse_solution(std::istream& in, const Instance& inst,
                              const std::string& name = "<stream>");
ParsedSolution load_solution(const std::string& path, const Instance& inst);
void write_solution(const Solution& sol, const Instance& inst, std::ostream& out);
void save_solution(const Solution& sol, const Instance& inst, const std::string& path);

} // namespace bds

#endif
