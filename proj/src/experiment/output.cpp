#include "fairsim/experiment/output.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fairsim::experiment {

std::string format_score(std::optional<double> score) {
  if (!score) {
    return "";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", *score);
  return buf;
}

void write_report_csv(std::ostream& out, const std::vector<RunResult>& results) {
  std::uint32_t clients = 0;
  for (const auto& r : results) clients = std::max(clients, r.topology.clients);

  out << "run_id,seed,n_c,n_p,m_p,n_o,f_o,infected_peers,infected_orderers,withhold_votes,fixed_delay,"
         "peer_delay_max,target_client,games,ledger_height";
  for (std::uint32_t c = 0; c < clients; ++c) out << ",score_c" << c;
  out << ",peer_receive,peer_block,peer_differential,orderer_receive,orderer_block,orderer_differential"
         ",refused_actions,goal_met\n";
  for (const auto& r : results) {
    const auto& t = r.topology;
    out << r.run_id << ',' << r.seed << ',' << t.clients << ',' << t.peers << ',' << t.endorsements << ','
        << t.orderers << ',' << t.orderer_faults << ',' << r.infected_peers << ',' << r.infected_orderers << ','
        << (r.withhold_votes ? 1 : 0) << ',' << r.fixed_delay << ',' << r.peer_delay_max << ',' << r.target_client
        << ',' << r.report.games << ',' << r.ledger_height;
    for (std::uint32_t c = 0; c < clients; ++c) {
      out << ',' << (c < t.clients ? format_score(r.report.score(c)) : "");
    }
    const auto& p = r.report.peers;
    const auto& o = r.report.orderers;
    out << ',' << p.receive << ',' << p.block << ',' << p.differential << ',' << o.receive << ',' << o.block << ','
        << o.differential << ',' << r.refused_actions << ',' << (r.goal_met ? 1 : 0) << '\n';
  }
}

void write_timeseries_csv(std::ostream& out, const RunResult& r) {
  out << "tick,games";
  for (std::uint32_t c = 0; c < r.topology.clients; ++c) out << ",score_c" << c;
  out << '\n';
  for (const auto& point : r.series) {
    out << point.at << ',' << point.games;
    for (std::uint32_t c = 0; c < r.topology.clients; ++c) {
      out << ',' << format_score(fairness::compute_score(point.wins.at(c), point.games, r.topology.clients));
    }
    out << '\n';
  }
}

void write_summary(std::ostream& out, const std::vector<RunResult>& results) {
  std::size_t met = 0;
  for (const auto& r : results) {
    met += r.goal_met ? 1 : 0;
    const auto score = r.report.score(r.target_client);
    out << r.run_id << ": games=" << r.report.games << " target=client/" << r.target_client
        << " score=" << (score ? format_score(score) : "n/a") << " refused=" << r.refused_actions
        << " budget_left=" << adversary::to_string(r.budget_left)
        << " verdict=" << (r.goal_met ? "attack succeeds" : "attack fails") << '\n';
  }
  out << "goal met in " << met << " of " << results.size() << " runs\n";
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& contents) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) {
      throw std::runtime_error("cannot write " + tmp.string());
    }
    f << contents;
    if (!f.flush()) {
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

void write_outputs(const std::filesystem::path& dir, const std::vector<RunResult>& results) {
  std::filesystem::create_directories(dir);
  for (const auto& r : results) {
    std::ostringstream ts;
    write_timeseries_csv(ts, r);
    write_file(dir / ("timeseries_" + r.run_id + ".csv"), ts.str());
  }
  std::ostringstream report;
  write_report_csv(report, results);
  write_file(dir / "report.csv", report.str());
  std::ostringstream summary;
  write_summary(summary, results);
  write_file(dir / "summary.txt", summary.str());
}

}  // namespace fairsim::experiment
