#include "gadam/trace_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "gadam/format.hpp"

namespace gadam {

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows) {
  out << kTraceHeader << '\n';
  for (const auto& r : rows) {
    out << r.n << ',' << format_double(r.C) << ',' << format_double(r.zeta_norm) << ','
        << format_double(r.m_norm) << ',' << format_double(r.v_norm) << ','
        << format_double(r.err_w) << ',' << format_double(r.triple_err) << ','
        << format_double(r.alpha_n) << '\n';
  }
}

std::vector<TraceRow> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("trace csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTraceHeader) throw std::invalid_argument("trace csv: unexpected header '" + line + "'");

  std::vector<TraceRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string_view> cells;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      cells.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (cells.size() != 8) {
      throw std::invalid_argument("trace csv line " + std::to_string(line_no) + ": expected 8 fields");
    }
    TraceRow r;
    const auto* end = cells[0].data() + cells[0].size();
    auto [ptr, ec] = std::from_chars(cells[0].data(), end, r.n);
    if (ec != std::errc() || ptr != end) {
      throw std::invalid_argument("trace csv line " + std::to_string(line_no) + ": bad n");
    }
    try {
      r.C = parse_double(cells[1]);
      r.zeta_norm = parse_double(cells[2]);
      r.m_norm = parse_double(cells[3]);
      r.v_norm = parse_double(cells[4]);
      r.err_w = parse_double(cells[5]);
      r.triple_err = parse_double(cells[6]);
      r.alpha_n = parse_double(cells[7]);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("trace csv line " + std::to_string(line_no) + ": " + e.what());
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace gadam
