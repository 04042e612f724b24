#include "fairsim/fabric/topology.hpp"

namespace fairsim::fabric {

std::vector<std::string> Topology::problems() const {
  std::vector<std::string> out;
  if (clients < 1) {
    out.push_back("at least one client is required");
  }
  if (endorsements < 1 || endorsements > peers) {
    out.push_back("endorsement threshold m_p must satisfy 1 <= m_p <= n_p (m_p=" + std::to_string(endorsements) +
                  ", n_p=" + std::to_string(peers) + ")");
  }
  if (orderers != 3 * orderer_faults + 1) {
    out.push_back("orderer count must be 3*f_o+1 (n_o=" + std::to_string(orderers) +
                  ", f_o=" + std::to_string(orderer_faults) + ")");
  }
  return out;
}

}  // namespace fairsim::fabric
