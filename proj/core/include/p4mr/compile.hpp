#ifndef P4MR_COMPILE_HPP
#define P4MR_COMPILE_HPP

#include <string>
#include <string_view>

#include "p4mr/ast.hpp"
#include "p4mr/dag.hpp"
#include "p4mr/placement.hpp"
#include "p4mr/routing.hpp"
#include "p4mr/switch_config.hpp"
#include "p4mr/topology.hpp"

namespace p4mr {

// Everything the planner produces for one program on one network:
// parse -> DAG -> placement -> routing -> per-switch configs.
struct CompiledJob {
  Ast ast;
  DataflowDag dag;
  Topology topo;
  PlacementPlan plan;
  RoutingTables tables;
  std::vector<SwitchConfig> configs;
};

CompiledJob compile_job(std::string_view program_text, const Topology& topo);
CompiledJob compile_job(std::string_view program_text,
                        std::string_view topology_json);

}  // namespace p4mr

#endif
