#include "fairsim/core/ids.hpp"

#include <charconv>
#include <stdexcept>

namespace fairsim {

std::string to_string(Role role) {
  switch (role) {
    case Role::client: return "client";
    case Role::peer: return "peer";
    case Role::orderer: return "orderer";
  }
  return "unknown";
}

std::string to_string(NodeId node) { return to_string(node.role) + "/" + std::to_string(node.index); }

NodeId parse_node_id(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    throw std::invalid_argument("node id must look like role/index: '" + text + "'");
  }
  const std::string role = text.substr(0, slash);
  NodeId out;
  if (role == "client") {
    out.role = Role::client;
  } else if (role == "peer") {
    out.role = Role::peer;
  } else if (role == "orderer") {
    out.role = Role::orderer;
  } else {
    throw std::invalid_argument("unknown role '" + role + "'");
  }
  const char* first = text.data() + slash + 1;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out.index);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw std::invalid_argument("bad node index in '" + text + "'");
  }
  return out;
}

}  // namespace fairsim
