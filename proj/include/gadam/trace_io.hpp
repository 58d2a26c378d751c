#pragma once

#include <iosfwd>
#include <vector>

#include "gadam/driver.hpp"

namespace gadam {

inline constexpr const char* kTraceHeader = "n,C,zeta_norm,m_norm,v_norm,err_w,triple_err,alpha_n";

/// Header plus one row per iteration, shortest round-trip decimals.
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows);

/// Inverse of write_trace_csv; throws std::invalid_argument on a bad header or row.
std::vector<TraceRow> read_trace_csv(std::istream& in);

}  // namespace gadam
