#include "p4mr/cost.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "p4mr/errors.hpp"

namespace p4mr {

const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::S1: return "S1";
    case Scenario::S2: return "S2";
    case Scenario::S3: return "S3";
  }
  return "?";
}

double equilibrium_rate(double capacity_bps) {
  if (!(capacity_bps > 0))
    throw Error(ErrKind::NonPositiveCapacity,
                "capacity must be positive, got " + std::to_string(capacity_bps));
  return capacity_bps / std::numbers::e;
}

double throughput_penalty(double capacity_bps) {
  if (!(capacity_bps > 0))
    throw Error(ErrKind::NonPositiveCapacity,
                "capacity must be positive, got " + std::to_string(capacity_bps));
  return capacity_bps * (1.0 - 1.0 / std::numbers::e);
}

namespace {

void validate(const CostParams& p) {
  if (!(p.capacity_bps > 0))
    throw Error(ErrKind::NonPositiveCapacity, "capacity must be positive");
  if (p.n < 1 || p.items < 0 || p.item_bytes < 1 || p.header_bytes < 1 ||
      p.cpu_map < 0 || p.cpu_reduce < 0)
    throw Error(ErrKind::InvalidParams, "cost parameters out of range");
  if (p.mtu < p.header_bytes + p.item_bytes)
    throw Error(ErrKind::InvalidParams,
                "mtu " + std::to_string(p.mtu) + " leaves no room for an item");
}

}  // namespace

double jct(const CostParams& p, Scenario scenario) {
  validate(p);
  double q = p.items / p.n;
  double unit_wire = q * (p.item_bytes + p.header_bytes) * 8 / p.capacity_bps;
  switch (scenario) {
    case Scenario::S1:
      return q * p.cpu_map + unit_wire + q * p.cpu_reduce;
    case Scenario::S2:
      return q * p.cpu_map + unit_wire;
    case Scenario::S3: {
      int k_max = (p.mtu - p.header_bytes) / p.item_bytes;
      double frames = std::ceil(q / k_max);
      double bytes = frames * p.header_bytes + q * p.item_bytes;
      return bytes * 8 / equilibrium_rate(p.capacity_bps);
    }
  }
  throw Error(ErrKind::InvalidParams, "unknown scenario");
}

double speedup(double j1, double j) {
  if (!(j > 0))
    throw Error(ErrKind::ZeroDenominator,
                "cannot divide by jct " + std::to_string(j));
  return j1 / j;
}

std::string model_sweep_csv(const CostParams& base, const std::vector<int>& ns,
                            const std::vector<double>& item_counts) {
  std::ostringstream out;
  out << "scenario,n,K,C,jct,speedup_vs_S1\n";
  out.precision(17);
  for (Scenario s : {Scenario::S1, Scenario::S2, Scenario::S3})
    for (int n : ns)
      for (double k : item_counts) {
        CostParams p = base;
        p.n = n;
        p.items = k;
        double j = jct(p, s);
        out << scenario_name(s) << ',' << n << ',' << k << ','
            << p.capacity_bps << ',' << j << ','
            << speedup(jct(p, Scenario::S1), j) << '\n';
      }
  return out.str();
}

}  // namespace p4mr
