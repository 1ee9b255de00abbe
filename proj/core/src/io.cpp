#include "pathforest/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace pathforest {

namespace {

using nlohmann::json;

std::vector<std::vector<double>> read_csv_rows(std::istream& in,
                                               std::size_t& columns) {
  std::vector<std::vector<double>> rows;
  std::string line;
  bool header_seen = false;
  columns = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      header_seen = true;  // first row is the header
      columns = static_cast<std::size_t>(
          std::count(line.begin(), line.end(), ',') + 1);
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        fail(Errc::io_error, "bad CSV cell: " + cell);
      }
    }
    if (row.size() != columns) fail(Errc::io_error, "ragged CSV row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(Errc::empty_input, "no data rows");
  return rows;
}

void write_double(std::ostream& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

json fit_to_json(const ScalingFit& fit) {
  return json{{"window", {fit.a_lo, fit.a_hi}},
              {"slope", fit.slope},
              {"intercept", fit.intercept},
              {"r2", fit.r2},
              {"estimate", fit.estimate},
              {"slope_l", fit.slope_l},
              {"estimate_l", fit.estimate_l},
              {"used_scales", fit.used_scales},
              {"valid", fit.valid}};
}

}  // namespace

SampledPath read_path_csv(std::istream& in) {
  std::size_t cols = 0;
  auto rows = read_csv_rows(in, cols);
  if (cols != 2) fail(Errc::io_error, "expected a t,value CSV");
  std::vector<std::pair<double, double>> knots;
  knots.reserve(rows.size());
  for (const auto& r : rows) knots.emplace_back(r[0], r[1]);
  return normalize(knots);
}

CadlagPath read_cadlag_csv(std::istream& in) {
  std::size_t cols = 0;
  auto rows = read_csv_rows(in, cols);
  if (cols != 3) fail(Errc::io_error, "expected a t,left,right CSV");
  std::vector<double> t, l, r;
  for (const auto& row : rows) {
    t.push_back(row[0]);
    l.push_back(row[1]);
    r.push_back(row[2]);
  }
  // rescale onto [0,1] like normalize() does for continuous paths
  const double t0 = t.front(), span = t.back() - t.front();
  if (!(span > 0)) fail(Errc::non_monotone_time, "degenerate time span");
  for (auto& x : t) x = (x - t0) / span;
  t.front() = 0.0;
  t.back() = 1.0;
  return CadlagPath::from_knots(std::move(t), std::move(l), std::move(r));
}

std::variant<SampledPath, CadlagPath> read_any_csv(std::istream& in) {
  std::stringstream buffered;
  buffered << in.rdbuf();
  std::string first_line;
  {
    std::stringstream probe(buffered.str());
    std::getline(probe, first_line);
  }
  const auto commas = std::count(first_line.begin(), first_line.end(), ',');
  std::stringstream replay(buffered.str());
  if (commas >= 2) return read_cadlag_csv(replay);
  return read_path_csv(replay);
}

void write_path_csv(std::ostream& out, const SampledPath& path) {
  out << "t,value\n";
  for (std::size_t i = 0; i < path.size(); ++i) {
    write_double(out, path.time(i));
    out << ',';
    write_double(out, path.value(i));
    out << '\n';
  }
}

void write_cadlag_csv(std::ostream& out, const CadlagPath& path) {
  out << "t,left,right\n";
  for (std::size_t i = 0; i < path.size(); ++i) {
    write_double(out, path.time(i));
    out << ',';
    write_double(out, path.left(i));
    out << ',';
    write_double(out, path.right(i));
    out << '\n';
  }
}

void write_profile_csv(std::ostream& out, const TrimProfile& profile) {
  out << "a,N,L\n";
  for (std::size_t k = 0; k < profile.scales.size(); ++k) {
    write_double(out, profile.scales[k]);
    out << ',' << profile.counts[k] << ',';
    write_double(out, profile.lengths[k]);
    out << '\n';
  }
}

std::string tree_json(const MergeTree& tree) {
  json nodes = json::array();
  for (const auto& n : tree.nodes()) {
    const char* kind = n.kind == NodeKind::root
                           ? "root"
                           : (n.kind == NodeKind::branch ? "branch" : "leaf");
    nodes.push_back(json{{"id", n.id},
                         {"level", n.level},
                         {"parent", n.parent},
                         {"kind", kind},
                         {"height", n.height},
                         {"tStart", n.t_start},
                         {"tEnd", n.t_end}});
  }
  json out{{"schema", 1},
           {"total_length", tree.total_length()},
           {"leaf_count", tree.leaf_count()},
           {"nodes", nodes}};
  return out.dump();
}

std::string trim_events_json(const TrimEvents& ev) {
  json out{{"schema", 1},      {"a", ev.scale},
           {"N", ev.count},    {"T", ev.T},
           {"S", ev.S},        {"U", ev.U},
           {"levels_T", ev.level_T}, {"levels_S", ev.level_S},
           {"used_extension", ev.used_extension}};
  return out.dump();
}

std::string variation_json(const VariationReport& rep) {
  json out{{"schema", 1}, {"p", rep.p}, {"lower", rep.lower},
           {"upper", rep.upper}};
  if (rep.exact) out["exact"] = *rep.exact;
  if (rep.lower_doubled) out["lower_doubled"] = *rep.lower_doubled;
  if (rep.index_fit) {
    out["index"] = rep.index_fit->estimate;
    out["index_fit"] = fit_to_json(*rep.index_fit);
  }
  return out.dump();
}

std::string dimension_json(const ScalingFit& fit) {
  json out = fit_to_json(fit);
  out["schema"] = 1;
  return out.dump();
}

std::string hurst_json(const HurstRatioFit& rf, double drawdown_stat,
                       double drawdown_scale) {
  json out{{"schema", 1},
           {"hurst_ratio",
            {{"window", {rf.a_lo, rf.a_hi}},
             {"median_ratio", rf.median_ratio},
             {"estimate", rf.h_median},
             {"estimate_fit", rf.h_fit},
             {"r2", rf.r2},
             {"used_scales", rf.used_scales}}}};
  if (std::isfinite(drawdown_stat)) {
    out["hurst_drawdown"] = {{"a", drawdown_scale},
                             {"statistic", drawdown_stat},
                             {"estimate", hurst_from_drawdown(drawdown_stat)}};
  }
  return out.dump();
}

std::string integral_json(const IntegralReport& rep) {
  json trace = json::array();
  for (const auto& te : rep.trace)
    trace.push_back(json{{"a", te.a},
                         {"flatten_value", te.flatten_value},
                         {"leaf_sum", te.leaf_sum}});
  json out{{"schema", 1},
           {"value", rep.value},
           {"route_values", {{"flatten", rep.route_a}, {"leaf_scan", rep.route_b}}},
           {"valley_term", rep.valley_term},
           {"trace", trace},
           {"error_bar", rep.error_bar},
           {"converged", rep.converged}};
  return out.dump();
}

std::string error_json(const std::string& code, const std::string& message) {
  return json{{"schema", 1}, {"error", code}, {"message", message}}.dump();
}

}  // namespace pathforest
