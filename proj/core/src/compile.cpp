#include "p4mr/compile.hpp"

#include "p4mr/parser.hpp"

namespace p4mr {

CompiledJob compile_job(std::string_view program_text, const Topology& topo) {
  CompiledJob job;
  job.ast = parse(program_text);
  job.dag = build_dag(job.ast);
  job.topo = topo;
  job.plan = place(job.dag, job.topo);
  job.tables = route(job.plan, job.dag, job.topo);
  job.configs = emit_switch_configs(job.plan, job.tables, job.dag);
  return job;
}

CompiledJob compile_job(std::string_view program_text,
                        std::string_view topology_json) {
  return compile_job(program_text, load_topology(topology_json));
}

}  // namespace p4mr
