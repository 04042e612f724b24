#include "fairsim/adversary/models.hpp"

#include <stdexcept>

namespace fairsim::adversary {

std::optional<std::string> check(const CommunicationModel& model) {
  if (model.kind != CommunicationModel::Kind::asynchronous && model.delta == 0) {
    return "communication bound delta must be > 0";
  }
  return std::nullopt;
}

std::string to_string(FailureModel model) {
  switch (model) {
    case FailureModel::crash: return "crash";
    case FailureModel::omission: return "omission";
    case FailureModel::performance: return "performance";
    case FailureModel::byzantine: return "byzantine";
  }
  return "unknown";
}

std::string to_string(CommunicationModel::Kind kind) {
  switch (kind) {
    case CommunicationModel::Kind::synchronous: return "synchronous";
    case CommunicationModel::Kind::asynchronous: return "asynchronous";
    case CommunicationModel::Kind::eventually_synchronous: return "eventually-synchronous";
  }
  return "unknown";
}

FailureModel parse_failure_model(const std::string& text) {
  for (auto m : {FailureModel::crash, FailureModel::omission, FailureModel::performance, FailureModel::byzantine}) {
    if (to_string(m) == text) {
      return m;
    }
  }
  throw std::invalid_argument("unknown failure model '" + text + "'");
}

CommunicationModel::Kind parse_communication_kind(const std::string& text) {
  using K = CommunicationModel::Kind;
  for (auto k : {K::synchronous, K::asynchronous, K::eventually_synchronous}) {
    if (to_string(k) == text) {
      return k;
    }
  }
  throw std::invalid_argument("unknown communication model '" + text + "'");
}

}  // namespace fairsim::adversary
